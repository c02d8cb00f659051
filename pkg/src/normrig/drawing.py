"""Framework diagrams rendered through matplotlib.

Edges are colored by facet label when a coloring is supplied (black and gray
for the two classes of a quadrilateral ball, a palette beyond that); output
format follows the file extension.  Display only.
"""

from __future__ import annotations

from typing import Optional

EDGE_PALETTE = ["black", "darkgray", "tab:blue", "tab:red", "tab:green", "tab:orange"]


def _pyplot():
    import matplotlib
    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt
    return plt


def draw_framework(fw, colored=None, out=None, title: Optional[str] = None):
    plt = _pyplot()
    if fw.dim == 2:
        fig, ax = plt.subplots(figsize=(5, 5))
        for e in fw.graph.edges:
            color = "black"
            if colored is not None:
                color = EDGE_PALETTE[colored.labels[e] % len(EDGE_PALETTE)]
            xs = [float(fw.points[e[0]][0]), float(fw.points[e[1]][0])]
            ys = [float(fw.points[e[0]][1]), float(fw.points[e[1]][1])]
            ax.plot(xs, ys, color=color, linewidth=2, zorder=1)
        for v in fw.graph.vertices:
            x, y = (float(c) for c in fw.points[v])
            ax.scatter([x], [y], s=60, facecolor="white", edgecolor="black", zorder=2)
            ax.annotate(str(v), (x, y), textcoords="offset points", xytext=(5, 5), fontsize=8)
        ax.set_aspect("equal")
    elif fw.dim == 3:
        fig = plt.figure(figsize=(6, 6))
        ax = fig.add_subplot(projection="3d")
        for e in fw.graph.edges:
            color = "black"
            if colored is not None:
                color = EDGE_PALETTE[colored.labels[e] % len(EDGE_PALETTE)]
            pts = [tuple(float(c) for c in fw.points[w]) for w in e]
            ax.plot(*zip(*pts), color=color, linewidth=1.5)
        for v in fw.graph.vertices:
            x, y, z = (float(c) for c in fw.points[v])
            ax.scatter([x], [y], [z], s=30, color="white", edgecolor="black")
            ax.text(x, y, z, str(v), fontsize=7)
    else:
        raise ValueError("drawing supports dimensions 2 and 3")
    if title:
        ax.set_title(title)
    if out is not None:
        fig.savefig(out, bbox_inches="tight")
        plt.close(fig)
        return out
    return fig

"""Desk-scale evidence gathering for the sufficiency conjectures.

Enumerates small (2,2)-tight graphs carrying an action of a chosen point
group, then searches rational-grid symmetric placements for isostatic
witnesses.  Candidates whose conjectured-sufficient condition set fails are
skipped (a witness is provably impossible); candidates whose conditions hold
but yield no witness within the trial budget are flagged for manual study;
a witness violating a proven necessary condition would indicate a bug and is
flagged as refuting.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import numeric, pointgroups, polyhedral, sparsity
from .canon import canonical_pair_key
from .framework import VERDICT_ISOSTATIC, classify_rigidity, make_framework, well_positioned
from .graphs import Graph, make_graph
from .norms import NormSpec, linf
from .scalars import EXACT_CTX, UnsupportedError
from .symmetry import GroupAction, validate_symmetric_framework

MAX_VERTICES_CAP = 8

FLAG_POSSIBLE_COUNTEREXAMPLE = "POSSIBLE-COUNTEREXAMPLE"
FLAG_WOULD_REFUTE = "WOULD-REFUTE-NECESSITY"

SCAN_GROUPS = ("cs", "c2", "c4", "c2v", "c4v")


@dataclass(frozen=True)
class ScanConfig:
    group: str = "cs"
    max_vertices: int = 8
    trials: int = 200
    seed: int = 0
    norm: Optional[NormSpec] = None
    box: int = 1
    denominator: int = 64

    def __post_init__(self):
        if self.max_vertices > MAX_VERTICES_CAP:
            raise UnsupportedError(f"candidate enumeration capped at {MAX_VERTICES_CAP} vertices")
        if self.trials < 1 or self.denominator < 1 or self.box < 1:
            raise ValueError("trials, box and denominator must be positive")

    @property
    def norm_spec(self) -> NormSpec:
        return self.norm if self.norm is not None else linf(2)


@dataclass
class Candidate:
    id: str
    n: int
    graph: Graph
    action: GroupAction
    key: tuple = field(default=(), repr=False)


def _subgroups(elements, table, identity):
    found = set()
    els = list(elements)
    for mask in range(1 << len(els)):
        subset = frozenset(e for i, e in enumerate(els) if mask >> i & 1)
        if identity not in subset:
            continue
        if all(table[(a, b)] in subset for a in subset for b in subset):
            found.add(subset)
    return sorted(found, key=lambda s: (len(s), sorted(str(x) for x in s)))


def _core(subgroup, elements, table, inverse):
    core = set(subgroup)
    for g in elements:
        conj = {table[(table[(g, h)], inverse[g])] for h in subgroup}
        core &= conj
    return frozenset(core)


def _coset_spaces(parts):
    """Transitive actions of the group: left multiplication on coset spaces."""
    elements = list(parts["elements"])
    table = parts["table"]
    identity = next(e for e in elements
                    if all(table[(e, x)] == x for x in elements))
    inverse = {g: next(h for h in elements if table[(g, h)] == identity) for g in elements}
    spaces = []
    for sub in _subgroups(elements, table, identity):
        cosets = sorted({frozenset(table[(x, h)] for h in sub) for x in elements},
                        key=lambda c: sorted(str(x) for x in c))
        act = {g: {i: cosets.index(frozenset(table[(g, x)] for x in cosets[i]))
                   for i in range(len(cosets))} for g in elements}
        spaces.append({
            "subgroup": sub,
            "size": len(cosets),
            "action": act,
            "core": _core(sub, elements, table, inverse),
        })
    return elements, table, identity, spaces


def _vertex_structures(spaces, n, identity):
    """Multisets of coset spaces with sizes summing to n and trivial joint kernel."""
    results = []

    def rec(start, remaining, chosen):
        if remaining == 0:
            kernel = None
            for sp in chosen:
                kernel = sp["core"] if kernel is None else kernel & sp["core"]
            if kernel == frozenset({identity}):
                results.append(list(chosen))
            return
        for i in range(start, len(spaces)):
            if spaces[i]["size"] <= remaining:
                rec(i, remaining - spaces[i]["size"], chosen + [spaces[i]])

    rec(0, n, [])
    return results


def _theta_from_structure(structure, elements):
    theta = {g: {} for g in elements}
    offset = 0
    for sp in structure:
        for g in elements:
            for i in range(sp["size"]):
                theta[g][offset + i] = offset + sp["action"][g][i]
        offset += sp["size"]
    return theta, offset


def _pair_orbits(n, theta, elements):
    orbits = []
    seen = set()
    for pair in itertools.combinations(range(n), 2):
        if pair in seen:
            continue
        orbit = set()
        stack = [pair]
        while stack:
            (a, b) = stack.pop()
            key = (min(a, b), max(a, b))
            if key in orbit:
                continue
            orbit.add(key)
            for g in elements:
                stack.append((theta[g][key[0]], theta[g][key[1]]))
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits


def _tight_orbit_subsets(n, orbits, params):
    """DFS over edge-orbit subsets reaching exactly k n - l edges, pruned by
    an incrementally copied pebble game (supersets of non-sparse sets stay
    non-sparse)."""
    target = params.k * n - params.l
    sizes = [len(o) for o in orbits]
    suffix = [0] * (len(orbits) + 1)
    for i in range(len(orbits) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sizes[i]
    results = []

    def clone(game):
        g2 = sparsity._PebbleGame(range(n), params)
        g2.pebbles = dict(game.pebbles)
        g2.out = {v: set(s) for v, s in game.out.items()}
        return g2

    def rec(idx, count, chosen, game):
        if count == target:
            results.append(list(chosen))
            return
        if idx == len(orbits) or count + suffix[idx] < target:
            return
        if count + sizes[idx] <= target:
            g2 = clone(game)
            if all(g2.insert(u, v) for u, v in orbits[idx]):
                rec(idx + 1, count + sizes[idx], chosen + [idx], g2)
        rec(idx + 1, count, chosen, game)

    rec(0, 0, [], sparsity._PebbleGame(range(n), params))
    return results


def enumerate_candidates(cfg: ScanConfig) -> list:
    """All non-isomorphic (2,2)-tight graphs up to cfg.max_vertices carrying a
    faithful action of the group, one representative per (graph, action)
    equivalence class under relabeling."""
    parts = pointgroups.builtin_group(cfg.group)
    elements, table, identity, spaces = _coset_spaces(parts)
    params = sparsity.SparsityParams(2, 2)
    seen = set()
    candidates = []
    for n in range(2, cfg.max_vertices + 1):
        if 2 * n - 2 > n * (n - 1) // 2:
            continue
        for structure in _vertex_structures(spaces, n, identity):
            theta, total = _theta_from_structure(structure, elements)
            orbits = _pair_orbits(total, theta, elements)
            for subset in _tight_orbit_subsets(total, orbits, params):
                edges = [e for i in subset for e in orbits[i]]
                key = canonical_pair_key(total, edges, [theta[g] for g in elements])
                if key in seen:
                    continue
                seen.add(key)
                graph = make_graph(range(total), edges)
                action = GroupAction(tuple(elements), dict(table),
                                     {g: dict(theta[g]) for g in elements},
                                     dict(parts["tau"]), name=cfg.group)
                candidates.append(Candidate("", total, graph, action, key))
    candidates.sort(key=lambda c: (c.n, c.key))
    for i, cand in enumerate(candidates):
        cand.id = f"{cfg.group}-n{cand.n}-{i:03d}"
    return candidates


def _fixed_subspace_basis(action: GroupAction, v, dim):
    rows = []
    ident = numeric.identity(dim)
    for g in action.elements:
        if action.theta[g][v] == v:
            tau = numeric.as_matrix(action.tau[g])
            rows.extend(numeric.mat_sub(ident, tau))
    if not rows:
        return tuple(ident)
    _, kernel = numeric.rank_nullspace(rows, EXACT_CTX)
    return kernel


def _sample_placement(graph: Graph, action: GroupAction, cfg: ScanConfig, rng):
    dim = cfg.norm_spec.dim
    bound = cfg.box * cfg.denominator
    points = {}
    for v in graph.vertices:
        if v in points:
            continue
        basis = _fixed_subspace_basis(action, v, dim)
        coeffs = [Fraction(rng.randint(-bound, bound), cfg.denominator) for _ in basis]
        p = tuple(sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(dim))
        for g in action.elements:
            w = action.theta[g][v]
            if w not in points:
                points[w] = numeric.mat_vec(numeric.as_matrix(action.tau[g]), p)
    return points


def search_placement(graph: Graph, action: GroupAction, cfg: ScanConfig,
                     rng: Optional[random.Random] = None) -> dict:
    """Sample symmetric rational placements; stop at the first isostatic one.

    Fixed vertices are drawn from the fixed subspace of their stabilizer, free
    orbits from the grid, images propagated through tau.  Exact backend
    throughout, so verdicts carry no float ambiguity.
    """
    if rng is None:
        rng = random.Random(cfg.seed)
    norm = cfg.norm_spec
    stats = {"trials": 0, "well_positioned": 0, "distinct": 0, "max_rank": 0}
    for trial in range(cfg.trials):
        stats["trials"] += 1
        points = _sample_placement(graph, action, cfg, rng)
        try:
            fw = make_framework(graph, points, norm)
        except ValueError:
            continue
        stats["distinct"] += 1
        ok, _ = well_positioned(fw)
        if not ok:
            continue
        stats["well_positioned"] += 1
        verdict = classify_rigidity(fw)
        stats["max_rank"] = max(stats["max_rank"], verdict.rank)
        if verdict.verdict == VERDICT_ISOSTATIC:
            return {"status": "found", "framework": fw, "trial": trial, "stats": stats}
    return {"status": "not_found", "framework": None, "trial": None, "stats": stats}


def _b_set_entry(graph: Graph, action: GroupAction, norm: NormSpec):
    conditions = polyhedral.quadrilateral_conditions(graph, action, norm)
    for cond in conditions:
        if cond.id == "b-set":
            return cond, conditions
    raise RuntimeError("condition battery produced no b-set aggregate")


def conjecture_scan(cfg: ScanConfig) -> dict:
    """Run the candidate sweep and aggregate the evidence.

    Deterministic for a fixed config: candidate order is canonical and each
    candidate gets its own seeded generator, so reports are byte-identical
    across runs and systems.
    """
    norm = cfg.norm_spec
    if norm.dim != 2 or not norm.is_polyhedral or len(norm.facet_pairs) != 2:
        raise UnsupportedError("conjecture scan requires a 2D quadrilateral polyhedral norm")
    for g, mat in pointgroups.builtin_group(cfg.group)["tau"].items():
        if not norm.is_isometry(mat):
            raise UnsupportedError(
                f"group {cfg.group!r} is not realized by isometries of the norm ({g})")
    candidates = enumerate_candidates(cfg)
    entries = []
    found = 0
    b_passing = 0
    possible = []
    refuting = []
    for cand in candidates:
        b_cond, _ = _b_set_entry(cand.graph, cand.action, norm)
        entry = {
            "id": cand.id,
            "n": cand.n,
            "edges": [[int(u), int(v)] for u, v in cand.graph.edges],
            "theta": {g: [int(cand.action.theta[g][v]) for v in cand.graph.vertices]
                      for g in cand.action.elements},
            "b_set": b_cond.to_dict(),
            "flags": [],
        }
        if b_cond.status != "pass":
            entry["status"] = "filtered"
            entry["stats"] = None
            entry["witness"] = None
            entries.append(entry)
            continue
        b_passing += 1
        rng = random.Random(f"{cfg.seed}:{cand.id}")
        outcome = search_placement(cand.graph, cand.action, cfg, rng)
        entry["stats"] = outcome["stats"]
        if outcome["status"] == "found":
            fw = outcome["framework"]
            entry["status"] = "found"
            entry["witness"] = {
                "trial": outcome["trial"],
                "points": {str(v): [str(c) for c in fw.points[v]]
                           for v in fw.graph.vertices},
            }
            found += 1
            flags = _revalidate_witness(fw, cand.action, norm)
            entry["flags"] = flags
            if flags:
                refuting.append(cand.id)
        else:
            entry["status"] = "not_found"
            entry["witness"] = None
            entry["flags"] = [FLAG_POSSIBLE_COUNTEREXAMPLE]
            possible.append(cand.id)
        entries.append(entry)
    return {
        "config": {
            "group": cfg.group,
            "max_vertices": cfg.max_vertices,
            "trials": cfg.trials,
            "seed": cfg.seed,
            "norm": norm.label or norm.kind,
            "box": cfg.box,
            "denominator": cfg.denominator,
        },
        "summary": {
            "candidates": len(candidates),
            "b_passing": b_passing,
            "found": found,
            "possible_counterexamples": sorted(possible),
            "would_refute_necessity": sorted(refuting),
        },
        "candidates": entries,
    }


def _revalidate_witness(fw, action, norm):
    """A found witness must be isostatic, symmetric, and clean on every proven
    condition; anything else signals a bug in the pipeline."""
    flags = []
    verdict = classify_rigidity(fw)
    if verdict.verdict != VERDICT_ISOSTATIC:
        flags.append(FLAG_WOULD_REFUTE)
        return flags
    if not validate_symmetric_framework(fw, action).ok:
        flags.append(FLAG_WOULD_REFUTE)
        return flags
    conditions = polyhedral.quadrilateral_conditions(fw.graph, action, norm, fw.ctx)
    if any(c.failed_proven for c in conditions):
        flags.append(FLAG_WOULD_REFUTE)
    return flags


def default_scan(seed: int = 0, max_vertices: int = 6, trials: int = 200) -> dict:
    """The standard soundness sweep over the five planar point groups."""
    reports = {}
    for group in SCAN_GROUPS:
        cfg = ScanConfig(group=group, max_vertices=max_vertices, trials=trials, seed=seed)
        reports[group] = conjecture_scan(cfg)
    return {
        "seed": seed,
        "groups": reports,
        "would_refute_necessity": sorted(
            cid for rep in reports.values()
            for cid in rep["summary"]["would_refute_necessity"]),
    }

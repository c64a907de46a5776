"""Exhaustive isomorph-free generation of all graphs of a given order with no
cycle of a fixed length and independence number below a bound.

Growth is vertex by vertex: a level-k parent spawns children by attaching a
new vertex with a chosen neighborhood.  Both defining constraints survive
vertex deletion, so they are enforced at every level:

  * no C_m: a child stays C_m-free iff no two chosen neighbors are joined by
    a simple path of exactly m-2 edges in the parent (any new cycle must pass
    through the new vertex);
  * independence <= s: the neighborhood must hit every independent s-set of
    the parent, else the new vertex extends one to s+1.

A forward degree prune applies the forced min-degree bound for the target
order (order minus the known r(C_m, K_s)) whenever that Ramsey value is on
record: a vertex that can no longer reach the bound kills the branch.
Children are deduplicated per level by exact canonical form, so each
isomorphism class is carried (and finally emitted) exactly once.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import detect
from .canon import IsoCatalog, canonical_form_raw
from .graphs import Graph, bits

DEFAULT_NODE_BUDGET = 10**9
DEFAULT_TIME_BUDGET = 3600.0


@dataclass
class EnumSpec:
    """Search parameters: target order, forbidden cycle length, independence
    cap, and budgets."""

    order: int
    forbidden_cycle: int
    alpha_max: int
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: float = DEFAULT_TIME_BUDGET

    def __post_init__(self):
        if self.forbidden_cycle < 3:
            raise ValueError(f"forbidden cycle length must be >= 3, got {self.forbidden_cycle}")
        if not 1 <= self.alpha_max < self.order:
            raise ValueError(
                f"alpha_max must lie in 1..{self.order - 1}, got {self.alpha_max}"
            )
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")

    def describe(self) -> dict:
        return {
            "order": self.order,
            "forbidden_cycle": self.forbidden_cycle,
            "alpha_max": self.alpha_max,
            "node_budget": self.node_budget,
            "time_budget": self.time_budget,
        }


@dataclass
class ExhaustionRecord:
    """Evidence of how much of the search tree was traversed."""

    nodes_explored: int = 0
    prunes: dict = field(default_factory=dict)
    wall_time: float = 0.0
    completed: bool = False

    def add(self, other: "ExhaustionRecord") -> None:
        self.nodes_explored += other.nodes_explored
        for k, v in other.prunes.items():
            self.prunes[k] = self.prunes.get(k, 0) + v

    def to_dict(self) -> dict:
        # wall_time stays out: output files must be byte-identical across
        # reruns and worker counts; timings live in the run manifest
        return {
            "nodes_explored": self.nodes_explored,
            "prunes": dict(sorted(self.prunes.items())),
            "completed": self.completed,
        }


def _children_of(
    parent_adj: tuple[int, ...],
    k: int,
    spec: EnumSpec,
    delta_min: int | None,
) -> tuple[list[tuple[str, tuple[int, ...]]], ExhaustionRecord]:
    """All accepted (canonical form, adjacency) children of one parent."""
    rec = ExhaustionRecord()
    prunes = rec.prunes
    m, s, order = spec.forbidden_cycle, spec.alpha_max, spec.order
    future = order - k  # vertices still to add, counting the new one

    forced = 0
    if delta_min is not None:
        for v in range(k):
            room = parent_adj[v].bit_count() + future
            if room < delta_min:
                prunes["degree"] = prunes.get("degree", 0) + 1
                return [], rec
            if room == delta_min:
                forced |= 1 << v
        min_size = max(0, delta_min - (future - 1))
    else:
        min_size = 0

    conflict = detect.exact_path_pairs(k, parent_adj, m - 2)
    targets = detect.independent_sets(k, parent_adj, s)
    results: list[tuple[str, tuple[int, ...]]] = []
    nodes = 0

    # depth-first over vertices: each is either in the neighborhood or out
    def place(v: int, chosen: int, unhit: list[int]):
        nonlocal nodes
        nodes += 1
        if v == k:
            if unhit or chosen.bit_count() < min_size:
                prunes["independence" if unhit else "degree"] = (
                    prunes.get("independence" if unhit else "degree", 0) + 1
                )
                return
            bit = 1 << k
            child = tuple(
                row | bit if chosen >> u & 1 else row for u, row in enumerate(parent_adj)
            ) + (chosen,)
            results.append((canonical_form_raw(k + 1, child), child))
            return
        b = 1 << v
        remaining = -1 << (v + 1)  # undecided vertices after v
        # take v into the neighborhood unless it closes a forbidden cycle
        if not conflict[v] & chosen:
            place(v + 1, chosen | b, [t for t in unhit if not t & b])
        else:
            prunes["cycle"] = prunes.get("cycle", 0) + 1
        # leave v out unless it is degree-forced or orphans a target set
        if forced & b:
            prunes["degree"] = prunes.get("degree", 0) + 1
            return
        for t in unhit:
            if not t & remaining:
                prunes["independence"] = prunes.get("independence", 0) + 1
                return
        place(v + 1, chosen, unhit)

    place(0, 0, targets)
    rec.nodes_explored = nodes
    return results, rec


def _worker_children(args) -> tuple[list[tuple[str, tuple[int, ...]]], dict, int]:
    parents, k, spec_dict, delta_min = args
    spec = EnumSpec(**spec_dict)
    out: list[tuple[str, tuple[int, ...]]] = []
    rec = ExhaustionRecord()
    for adj in parents:
        res, r = _children_of(adj, k, spec, delta_min)
        out.extend(res)
        rec.add(r)
    return out, rec.prunes, rec.nodes_explored


def _make_catalog(spec: EnumSpec, complete: bool) -> IsoCatalog:
    return IsoCatalog(
        provenance={
            "method": "cycle_free_enumeration",
            "params": spec.describe(),
            "complete": complete,
            "assumptions": [],
        }
    )


def enumerate_cycle_free(
    spec: EnumSpec, workers: int = 1
) -> tuple[IsoCatalog, ExhaustionRecord]:
    """Catalog of every isomorphism class of graphs of spec.order with no
    C_{spec.forbidden_cycle} and independence number <= spec.alpha_max,
    together with the traversal record.  On budget exhaustion the partial
    catalog found so far is returned with completed=False."""
    start = time.monotonic()
    record = ExhaustionRecord()
    delta_min: int | None = None
    if detect.has_ramsey_value(spec.forbidden_cycle, spec.alpha_max):
        delta_min = spec.order - detect.ramsey_number(
            spec.forbidden_cycle, spec.alpha_max
        )
        if delta_min <= 0:
            delta_min = None

    source = f"enum(order={spec.order},C{spec.forbidden_cycle}-free,alpha<={spec.alpha_max})"
    level: list[tuple[int, ...]] = [(0,)]  # the one-vertex graph
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    exhausted = False
    try:
        for k in range(1, spec.order):
            produced: list[tuple[str, tuple[int, ...]]] = []
            if pool is None:
                for adj in level:
                    res, rec = _children_of(adj, k, spec, delta_min)
                    produced.extend(res)
                    record.add(rec)
                    if (
                        record.nodes_explored > spec.node_budget
                        or time.monotonic() - start > spec.time_budget
                    ):
                        exhausted = True
                        break
            else:
                chunk = max(1, (len(level) + workers - 1) // workers)
                tasks = [
                    (level[i : i + chunk], k, spec.describe(), delta_min)
                    for i in range(0, len(level), chunk)
                ]
                for out, prunes, nodes in pool.map(_worker_children, tasks):
                    produced.extend(out)
                    for key, val in prunes.items():
                        record.prunes[key] = record.prunes.get(key, 0) + val
                    record.nodes_explored += nodes
                if (
                    record.nodes_explored > spec.node_budget
                    or time.monotonic() - start > spec.time_budget
                ):
                    exhausted = True
            seen: dict[str, tuple[int, ...]] = {}
            for canon, adj in produced:
                if canon not in seen:
                    seen[canon] = adj
                else:
                    record.prunes["duplicate"] = record.prunes.get("duplicate", 0) + 1
            level = [seen[c] for c in sorted(seen)]
            if exhausted:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    record.wall_time = time.monotonic() - start
    if exhausted:
        catalog = _make_catalog(spec, complete=False)
        if len(level) and len(level[0]) == spec.order:
            for adj in level:
                catalog.insert(Graph._make(spec.order, adj), source=source)
        return catalog, record

    catalog = _make_catalog(spec, complete=True)
    for adj in level:
        g = Graph._make(spec.order, adj)
        # emitted graphs are re-checked against the independent kernels
        assert detect.is_cycle_free(g, spec.forbidden_cycle)
        assert not detect.has_independent_set(g, spec.alpha_max + 1)
        catalog.insert(g, source=source)
    record.completed = True
    return catalog, record


@dataclass
class RamseyNumberCertificate:
    """Outcome of certifying r(C_m, K_k) = r by double enumeration: a witness
    catalog must exist at order r-1 and none at order r."""

    m: int
    k: int
    claimed_r: int
    verdict: str  # "certified" | "refuted" | "budget-exhausted"
    lower_classes: int = 0
    lower_witness: str | None = None
    upper_record: dict | None = None
    lower_record: dict | None = None
    counterexample: str | None = None

    def to_dict(self) -> dict:
        return {
            "instance": {"cycle": self.m, "clique": self.k, "claimed": self.claimed_r},
            "verdict": self.verdict,
            "lower_classes": self.lower_classes,
            "lower_witness": self.lower_witness,
            "lower_record": self.lower_record,
            "upper_record": self.upper_record,
            "counterexample": self.counterexample,
        }


def verify_ramsey_number(
    m: int,
    k: int,
    claimed_r: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float = DEFAULT_TIME_BUDGET,
    workers: int = 1,
) -> RamseyNumberCertificate:
    """Certify r(C_m, K_k) = claimed_r by exhaustive enumeration on both
    sides of the threshold."""
    lower_spec = EnumSpec(claimed_r - 1, m, k - 1, node_budget, time_budget)
    lower_cat, lower_rec = enumerate_cycle_free(lower_spec, workers=workers)
    cert = RamseyNumberCertificate(m, k, claimed_r, "budget-exhausted")
    cert.lower_record = lower_rec.to_dict()
    if not lower_rec.completed:
        return cert
    cert.lower_classes = len(lower_cat)
    if len(lower_cat) == 0:
        cert.verdict = "refuted"  # r(C_m, K_k) <= claimed_r - 1
        return cert
    cert.lower_witness = lower_cat.canonical_forms()[0]
    upper_spec = EnumSpec(claimed_r, m, k - 1, node_budget, time_budget)
    upper_cat, upper_rec = enumerate_cycle_free(upper_spec, workers=workers)
    cert.upper_record = upper_rec.to_dict()
    if not upper_rec.completed:
        return cert
    if len(upper_cat) > 0:
        cert.verdict = "refuted"  # a good coloring exists at the claimed order
        cert.counterexample = upper_cat.canonical_forms()[0]
        return cert
    cert.verdict = "certified"
    return cert

"""Explicit colorings and critical-graph catalogs for cycle-versus-K5
instances: the unique order-13 critical graph of the C4 case, its star
extension, the parametric lower-bound coloring, and the four-clique
cross-edge catalogs of every critical graph at order 4(n-1).

A critical graph at order 4(n-1) always contains a spanning set of four
disjoint (n-1)-cliques, so each one is that union plus at most one "cross"
edge per clique pair (two cross edges between the same pair close a cycle of
every length up to 2n-2, in particular length n).  The catalog enumerator
walks all cross-edge patterns up to symmetry, keeps the C_n-free ones, and
deduplicates by exact canonical form.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable

from . import detect
from .canon import IsoCatalog, canonical_form
from .generate import EnumSpec, enumerate_cycle_free
from .graphs import (
    Graph,
    HostGraph,
    bits,
    complement_within,
    complete,
    disjoint_union,
    from_adjacency_lists,
    graph6_decode,
    graph6_encode,
    host_complete,
    host_minus_clique,
    host_minus_star,
    mask_of,
)

# provenance tag asserting that the catalog is complete provided every
# critical graph of its order contains a spanning union of four cliques
SPANNING_COVER_ASSUMPTION = "spanning-4-clique-cover"


@dataclass(frozen=True)
class Coloring:
    """A red/blue coloring of a host: the red subgraph is stored, blue is
    host-minus-red by definition."""

    host: HostGraph
    red: Graph

    def __post_init__(self):
        # raises EdgeOutsideHostError if red leaves the universe
        complement_within(self.red, self.host)

    @property
    def blue(self) -> Graph:
        return complement_within(self.red, self.host)

    def to_json(self) -> dict:
        return {
            "host": self.host.descriptor(),
            "red": graph6_encode(self.red),
            "red_adjacency": [sorted(bits(row)) for row in self.red.adj],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Coloring":
        host = HostGraph.from_descriptor(data["host"])
        if "red" in data:
            red = graph6_decode(data["red"])
        else:
            red = from_adjacency_lists(data["red_adjacency"])
        return cls(host, red)


def verify_coloring(coloring: Coloring, n: int, k: int) -> bool:
    """True iff the red graph has no C_n and the blue graph has no K_k."""
    return detect.is_cycle_free(coloring.red, n) and not detect.has_clique(
        coloring.blue, k
    )


# --- the C4 case ------------------------------------------------------------

_C4_CRITICAL_CACHE: Graph | None = None


def unique_c4_critical(workers: int = 1) -> Graph:
    """The unique graph of order 13 with no C4 and no independent 5-set (the
    red graph of the one critical coloring for the C4-versus-K5 instance),
    derived by exhaustive enumeration and cached."""
    global _C4_CRITICAL_CACHE
    if _C4_CRITICAL_CACHE is None:
        catalog, record = enumerate_cycle_free(EnumSpec(13, 4, 4), workers=workers)
        if not record.completed or len(catalog) != 1:
            raise RuntimeError(
                f"expected exactly one critical class at order 13, found "
                f"{len(catalog)} (completed={record.completed}); this would "
                f"refute the uniqueness the C4 case rests on"
            )
        _C4_CRITICAL_CACHE = catalog.graphs()[0]
    return _C4_CRITICAL_CACHE


def c4_star_witness(base: Graph | None = None, workers: int = 1) -> Coloring:
    """A good coloring of K13 plus a center joined to 12 of its vertices
    (the order-14 host that shows the C4 star-critical value exceeds 12).

    The center is attached to every base vertex except the one designated by
    the host, and a red star from the center is searched exhaustively until
    the coloring has no red C4 and no blue K5.  Smallest red star first, so
    the result is deterministic.
    """
    if base is None:
        base = unique_c4_critical(workers=workers)
    if base.n != 13:
        raise ValueError(f"base must have order 13, got {base.n}")
    host = host_minus_star(14, 1)  # center 13, non-neighbor pinned to 12
    center = 13
    attached = list(range(12))
    # the excluded vertex is index 12; try each base vertex in that seat
    for gap in range(13):
        perm = list(range(13))
        perm[gap], perm[12] = perm[12], perm[gap]
        placed = base.relabel(perm)
        for size in range(0, 5):
            for reds in itertools.combinations(attached, size):
                red = placed.with_vertex(0)
                for v in reds:
                    red = red.with_edge(center, v)
                coloring = Coloring(host, red)
                if verify_coloring(coloring, 4, 5):
                    return coloring
    raise RuntimeError(
        "no good star extension of the order-13 critical graph exists; this "
        "would refute the lower bound for the C4 case"
    )


# --- parametric lower-bound coloring ---------------------------------------

def lower_bound_coloring(n: int, host_kind: str = "star") -> Coloring:
    """The good coloring showing the star-critical value exceeds 3n-2 for
    n >= 5: four red (n-1)-cliques plus one red pendant edge from the extra
    center vertex into the fourth clique.

    host_kind "star" (the form the star-critical definition requires) embeds
    the center with exactly 3n-2 host neighbors: its host non-neighbors are
    n-2 vertices of the fourth clique avoiding the pendant endpoint.
    host_kind "clique" instead removes all edges inside a set of n-2
    vertices; for n <= 7 that set can dodge the red cliques (the center plus
    one vertex from each of the first n-3 blocks), for n >= 8 it cannot and
    the variant is rejected.  Verification of the clique variant is reported
    separately by the callers; it is not claimed good.
    """
    if n < 5:
        raise ValueError(f"parametric construction needs n >= 5, got {n}")
    order = 4 * n - 3
    if order > 64:
        raise ValueError(f"order {order} exceeds the 64-vertex cap")
    blocks = disjoint_union([complete(n - 1)] * 4)
    center = order - 1
    pendant = 3 * (n - 1)  # first vertex of the fourth block
    red = blocks.with_vertex(0).with_edge(center, pendant)
    if host_kind == "star":
        host = host_minus_star(order, n - 2)
        return Coloring(host, red)
    if host_kind == "clique":
        removed = [center]
        removed += [(i + 1) * (n - 1) - 1 for i in range(n - 3)]
        if len(removed) != n - 2 or n - 3 > 4:
            raise ValueError(
                f"the clique-removal host cannot contain the red cliques for n={n}: "
                f"a removed {n - 2}-set cannot avoid splitting a red block"
            )
        host = host_minus_clique(order, n - 2, designated=mask_of(removed))
        return Coloring(host, red)
    raise ValueError(f"unknown host kind {host_kind!r}")


# --- cross-edge patterns and critical catalogs ------------------------------

_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


@dataclass(frozen=True)
class CliquePattern:
    """Cross edges decorating a union of four (n-1)-cliques.

    Each entry is (clique_a, slot_a, clique_b, slot_b) with clique_a <
    clique_b; slots index vertices inside a block, so equal slots on one
    clique mean the cross edges share an endpoint.  At most one cross edge
    per clique pair.
    """

    n: int
    cross_edges: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        seen_pairs = set()
        for a, sa, b, sb in self.cross_edges:
            if not 0 <= a < b <= 3:
                raise ValueError(f"bad clique pair ({a},{b})")
            if (a, b) in seen_pairs:
                raise ValueError(f"two cross edges between cliques {a} and {b}")
            seen_pairs.add((a, b))
            if sa >= self.n - 1 or sb >= self.n - 1:
                raise ValueError("slot index outside the block")

    def realize(self) -> Graph:
        size = self.n - 1
        g = disjoint_union([complete(size)] * 4)
        for a, sa, b, sb in self.cross_edges:
            g = g.with_edge(a * size + sa, b * size + sb)
        return g

    def label(self) -> str:
        if not self.cross_edges:
            return "4-cliques"
        return "4-cliques+" + ",".join(
            f"{a}.{sa}-{b}.{sb}" for a, sa, b, sb in self.cross_edges
        )


def _slot_assignments(edge_subset: tuple[tuple[int, int], ...]) -> Iterable[dict]:
    """All ways of grouping each clique's incident cross edges by shared
    endpoint: maps (clique, edge index) -> slot, slots numbered per clique in
    first-appearance order."""
    per_clique: dict[int, list[int]] = {c: [] for c in range(4)}
    for idx, (a, b) in enumerate(edge_subset):
        per_clique[a].append(idx)
        per_clique[b].append(idx)

    def partitions(items: list[int]) -> Iterable[list[list[int]]]:
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for sub in partitions(rest):
            for i in range(len(sub)):
                yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
            yield [[first]] + sub

    choices = []
    for c in range(4):
        choices.append(list(partitions(per_clique[c])))
    for combo in itertools.product(*choices):
        slots: dict[tuple[int, int], int] = {}
        for c, groups in enumerate(combo):
            ordered = sorted(groups, key=min)
            for slot, group in enumerate(ordered):
                for idx in group:
                    slots[(c, idx)] = slot
        yield slots


def _pattern_key(edge_subset, slots) -> tuple:
    """Canonical key of a pattern under clique relabeling, for cheap dedup
    before graphs are built."""
    best = None
    for perm in itertools.permutations(range(4)):
        mapped = []
        for idx, (a, b) in enumerate(edge_subset):
            pa, pb = perm[a], perm[b]
            sa, sb = slots[(a, idx)], slots[(b, idx)]
            if pa > pb:
                pa, pb, sa, sb = pb, pa, sb, sa
            mapped.append((pa, pb, sa, sb))
        mapped.sort()
        # renumber slots per clique in order of appearance
        rename: dict[tuple[int, int], int] = {}
        normal = []
        for pa, pb, sa, sb in mapped:
            na = rename.setdefault((pa, sa), len([k for k in rename if k[0] == pa]))
            nb = rename.setdefault((pb, sb), len([k for k in rename if k[0] == pb]))
            normal.append((pa, pb, na, nb))
        key = tuple(normal)
        if best is None or key < best:
            best = key
    return best


def _all_patterns(n: int) -> list[CliquePattern]:
    """One representative per clique-relabeling class of cross-edge pattern."""
    out: list[CliquePattern] = []
    seen: set[tuple] = set()
    for r in range(len(_PAIRS) + 1):
        for subset in itertools.combinations(_PAIRS, r):
            for slots in _slot_assignments(subset):
                key = _pattern_key(subset, slots)
                if key in seen:
                    continue
                seen.add(key)
                edges = tuple(
                    (a, slots[(a, i)], b, slots[(b, i)])
                    for i, (a, b) in enumerate(subset)
                )
                out.append(CliquePattern(n, edges))
    return out


def pattern_allows_cycle(pattern: CliquePattern, length: int) -> bool:
    """Exact test for a cycle on ``length`` vertices in the realized graph,
    by arithmetic over closed cross-edge walks.

    Any such cycle alternates between within-clique segments and cross
    edges (a block holds only n-2 < length-1 internal path edges, so at
    least two cliques and hence at least three cross edges are involved).
    For a closed walk over k distinct cross edges the within-clique segment
    totals form a contiguous range, so the test reduces to interval checks.
    """
    edges = pattern.cross_edges
    size = pattern.n - 1
    if not edges:
        return length <= size and length >= 3
    # cycles inside one block
    if 3 <= length <= size:
        return True
    by_clique: dict[int, list[tuple[int, int, int]]] = {c: [] for c in range(4)}
    for i, (a, sa, b, sb) in enumerate(edges):
        by_clique[a].append((i, b, sa))  # (edge index, other clique, my slot)
        by_clique[b].append((i, a, sb))

    def feasible(visits: dict[int, list[tuple[int, int]]], k: int) -> bool:
        lo = hi = k
        for c, vlist in visits.items():
            slots_used: list[int] = []
            zero = moving = 0
            for entry, exit_ in vlist:
                if entry == exit_:
                    zero += 1
                    slots_used.append(entry)
                else:
                    moving += 1
                    slots_used.extend((entry, exit_))
            if len(slots_used) != len(set(slots_used)):
                return False
            c_lo = moving
            c_hi = size - len(vlist) if moving else 0
            if c_hi < c_lo:
                return False
            lo += c_lo
            hi += c_hi
        return lo <= length <= hi

    def ends(i: int, at: int) -> tuple[int, int, int]:
        """Traverse edge i leaving clique ``at``: (exit slot, next clique,
        entry slot there)."""
        a, sa, b, sb = edges[i]
        return (sa, b, sb) if a == at else (sb, a, sa)

    trail: list[tuple[int, int, int]] = []  # visits: (clique, entry, exit)

    def walk(start: tuple[int, int], cur_clique: int, cur_entry: int, used: int) -> bool:
        start_clique, start_exit = start
        for i, _other, _slot in by_clique[cur_clique]:
            if used >> i & 1:
                continue
            exit_slot, nxt, nxt_entry = ends(i, cur_clique)
            trail.append((cur_clique, cur_entry, exit_slot))
            k = (used | (1 << i)).bit_count()
            try:
                if nxt == start_clique and k >= 3:
                    visits: dict[int, list[tuple[int, int]]] = {}
                    for c, e_in, e_out in trail + [(start_clique, nxt_entry, start_exit)]:
                        visits.setdefault(c, []).append((e_in, e_out))
                    if feasible(visits, k):
                        return True
                if walk(start, nxt, nxt_entry, used | (1 << i)):
                    return True
            finally:
                trail.pop()
        return False

    for i0, (a, sa, b, sb) in enumerate(edges):
        # anchor each candidate walk on its lowest-indexed edge
        if walk((a, sa), b, sb, 1 << i0):
            return True
        by_clique[a] = [t for t in by_clique[a] if t[0] != i0]
        by_clique[b] = [t for t in by_clique[b] if t[0] != i0]
    return False


def critical_catalog(n: int, verify_members: bool = True) -> IsoCatalog:
    """Every critical graph for the cycle-n-versus-K5 instance at order
    4(n-1), as a canonical catalog.

    Enumerates cross-edge patterns over the spanning four-clique union,
    filters by C_n-freeness, and deduplicates by canonical form.  The
    catalog's completeness rests on the structure theorem that critical
    graphs contain the spanning clique union; that assumption is recorded in
    the provenance for downstream certificates to carry.
    """
    if n < 5:
        raise ValueError(f"pattern catalog needs n >= 5, got {n}")
    catalog = IsoCatalog(
        provenance={
            "method": "clique_pattern_catalog",
            "n": n,
            "order": 4 * (n - 1),
            "complete": True,
            "assumptions": [SPANNING_COVER_ASSUMPTION],
        }
    )
    for pattern in _all_patterns(n):
        if pattern_allows_cycle(pattern, n):
            continue
        g = pattern.realize()
        if verify_members:
            # independent confirmation by the generic kernels
            assert detect.is_cycle_free(g, n), pattern.label()
            assert not detect.has_independent_set(g, 5), pattern.label()
        catalog.insert(g, source=pattern.label())
    return catalog

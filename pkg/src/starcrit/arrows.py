"""Arrowing decisions and exact star-critical Ramsey computation.

A star host is the complete graph on r-1 vertices plus a center joined to
k of them.  Any good coloring of it restricts to a critical coloring of the
complete part, so given the complete catalog of critical red graphs the
decision reduces to: for each catalog member, each attachment set (up to
automorphisms), and each red/blue split of the center's edges, does a good
coloring appear?  The center split search is a hitting-set walk: the red
center-neighbors must hit every independent (k-1)-set inside the attachment
set (else a blue clique closes through the center) while avoiding pairs
joined by an (n-2)-edge path (else a red cycle closes through the center).

A tiny independent oracle (brute force over all 2^edges colorings with sound
incremental prunes) cross-checks the catalog route on small hosts.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from . import detect
from .canon import IsoCatalog, orbit_representatives_of_sets
from .constructions import Coloring, verify_coloring
from .generate import ExhaustionRecord
from .graphs import Graph, HostGraph, bits, host_complete, host_minus_star, mask_of

BRUTE_FORCE_EDGE_CAP = 28


class IncompleteCatalogError(ValueError):
    """Refusal to decide arrowing from a catalog without completeness
    provenance: the verdict would be unsound."""


@dataclass(frozen=True)
class RamseyInstance:
    """A cycle-versus-clique instance together with its Ramsey number."""

    n: int
    k: int
    r: int

    def __post_init__(self):
        if detect.has_ramsey_value(self.n, self.k):
            expected = detect.ramsey_number(self.n, self.k)
            if self.r != expected:
                raise ValueError(
                    f"r={self.r} disagrees with the recorded r(C_{self.n},K_{self.k})={expected}"
                )

    @classmethod
    def cycle_vs_k5(cls, n: int) -> "RamseyInstance":
        return cls(n, 5, detect.ramsey_number(n, 5))


@dataclass
class Certificate:
    """Machine-checkable arrowing verdict: a witness coloring proves
    does-not-arrow, an exhaustion record supports arrows."""

    verdict: str  # "arrows" | "does-not-arrow"
    instance: dict
    witness: Coloring | None = None
    exhaustion: ExhaustionRecord | None = None
    assumptions: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "instance": self.instance,
            "assumptions": self.assumptions,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.exhaustion is not None:
            out["exhaustion"] = self.exhaustion.to_dict()
        return out


def brute_force_arrows(host: HostGraph, n: int, k: int) -> Certificate:
    """Decide host -> (C_n, K_k) by walking every red subset of the host's
    edges.  Edges are assigned in a fixed order; a branch dies as soon as the
    red side closes a C_n or the blue side closes a K_k (both prunes are
    sound: supersets inherit the red cycle, and an edge once blue stays
    blue).  Reaching a full assignment therefore exhibits a good coloring.
    """
    uni = host.universe
    edges = list(uni.edges())
    if len(edges) > BRUTE_FORCE_EDGE_CAP:
        raise ValueError(
            f"brute force capped at {BRUTE_FORCE_EDGE_CAP} edges, host has {len(edges)}"
        )
    order = host.n
    record = ExhaustionRecord()
    instance = {"host": host.descriptor(), "cycle": n, "clique": k}

    red = [0] * order
    blue = [0] * order

    def red_closes_cycle(u: int, v: int) -> bool:
        # simple path of exactly n-1 red edges from u to v
        target = n - 1
        stack = [(u, 1 << u, 0)]
        while stack:
            cur, used, d = stack.pop()
            if d == target - 1:
                if red[cur] >> v & 1 and not used >> v & 1:
                    return True
                continue
            for w in bits(red[cur] & ~used & ~(1 << v)):
                stack.append((w, used | (1 << w), d + 1))
        return False

    def blue_closes_clique(u: int, v: int) -> bool:
        if k == 2:
            return True
        common = blue[u] & blue[v]
        if common.bit_count() < k - 2:
            return False
        sub = Graph._make(order, tuple(blue[x] & common for x in range(order)))
        return detect.has_clique(sub.induced(common), k - 2)

    witness_red: list[int] | None = None

    def assign(i: int) -> bool:
        nonlocal witness_red
        record.nodes_explored += 1
        if i == len(edges):
            witness_red = list(red)
            return True
        u, v = edges[i]
        red[u] |= 1 << v
        red[v] |= 1 << u
        if not red_closes_cycle(u, v):
            if assign(i + 1):
                return True
        else:
            record.prunes["red-cycle"] = record.prunes.get("red-cycle", 0) + 1
        red[u] &= ~(1 << v)
        red[v] &= ~(1 << u)
        blue[u] |= 1 << v
        blue[v] |= 1 << u
        if not blue_closes_clique(u, v):
            if assign(i + 1):
                return True
        else:
            record.prunes["blue-clique"] = record.prunes.get("blue-clique", 0) + 1
        blue[u] &= ~(1 << v)
        blue[v] &= ~(1 << u)
        return False

    start = time.monotonic()
    found = assign(0)
    record.wall_time = time.monotonic() - start
    if found:
        coloring = Coloring(host, Graph(order, witness_red))
        assert verify_coloring(coloring, n, k)
        return Certificate("does-not-arrow", instance, witness=coloring)
    record.completed = True
    return Certificate("arrows", instance, exhaustion=record)


def _split_search(
    s_mask: int,
    threats: list[int],
    conflict: list[int],
) -> int | None:
    """Find a red subset of s_mask hitting every threat mask while never
    containing a conflicting pair; returns the red mask or None."""

    def place(rest: int, chosen: int, unhit: list[int]) -> int | None:
        if not unhit:
            return chosen
        t = unhit[0]
        cands = t & rest
        while cands:
            low = cands & -cands
            v = low.bit_length() - 1
            cands ^= low
            if conflict[v] & chosen:
                continue
            got = place(
                rest & ~low,
                chosen | low,
                [x for x in unhit[1:] if not x & low],
            )
            if got is not None:
                return got
        return None

    return place(s_mask, 0, sorted(threats, key=lambda t: (t & s_mask).bit_count()))


def star_host_arrows(
    catalog: IsoCatalog, inst: RamseyInstance, k_star: int
) -> Certificate:
    """Decide whether the complete graph on r-1 vertices plus a center joined
    to k_star of them arrows (C_n, K_k), given the complete critical catalog
    at order r-1.

    Catalog members are taken in canonical order, attachment sets up to
    automorphism orbits, and the center split by the hitting-set search, so
    the first witness (and hence the certificate) is deterministic.
    """
    if not catalog.is_complete():
        raise IncompleteCatalogError(
            "refusing to decide arrowing from a catalog without completeness provenance"
        )
    base = inst.r - 1
    if not 0 <= k_star <= base:
        raise ValueError(f"k_star must lie in 0..{base}")
    host = host_minus_star(inst.r, base - k_star)
    instance = {
        "host": host.descriptor(),
        "cycle": inst.n,
        "clique": inst.k,
        "k_star": k_star,
        "catalog_classes": len(catalog),
    }
    record = ExhaustionRecord()
    start = time.monotonic()
    center = inst.r - 1
    gap = base - k_star

    for entry in catalog.entries():
        R = entry.graph
        if R.n != base:
            raise ValueError(f"catalog member has order {R.n}, expected {base}")
        # a catalog member admitting a blue clique outright would be a
        # non-critical intruder; the cycle side is asserted at catalog build
        assert not detect.has_independent_set(R, inst.k)
        conflict = detect.exact_path_pairs(R.n, R.adj, inst.n - 2)
        indep = detect.independent_sets(R.n, R.adj, inst.k - 1)
        comps = (
            [0]
            if gap == 0
            else orbit_representatives_of_sets(
                R, (mask_of(c) for c in itertools.combinations(range(base), gap))
            )
        )
        for comp in comps:
            record.nodes_explored += 1
            s_mask = ((1 << base) - 1) & ~comp
            threats = [t for t in indep if not t & comp]
            red_mask = _split_search(s_mask, threats, conflict)
            if red_mask is None:
                record.prunes["no-good-split"] = record.prunes.get("no-good-split", 0) + 1
                continue
            # relabel so the unattached vertices sit on the host's designated
            # indices (just below the center), then rebuild the coloring
            outside = sorted(bits(comp))
            inside = [v for v in range(base) if not comp >> v & 1]
            perm = [0] * base
            for pos, v in enumerate(inside):
                perm[v] = pos
            for pos, v in enumerate(outside):
                perm[v] = k_star + pos
            placed = R.relabel(perm)
            red = placed.with_vertex(0)
            for v in bits(red_mask):
                red = red.with_edge(center, perm[v])
            witness = Coloring(host, red)
            assert verify_coloring(witness, inst.n, inst.k)
            record.wall_time = time.monotonic() - start
            return Certificate(
                "does-not-arrow",
                instance,
                witness=witness,
                assumptions=catalog.assumptions(),
            )
    record.wall_time = time.monotonic() - start
    record.completed = True
    return Certificate(
        "arrows", instance, exhaustion=record, assumptions=catalog.assumptions()
    )


def star_critical(
    catalog: IsoCatalog,
    inst: RamseyInstance,
    k_lo: int,
    k_hi: int,
    certificates: list[Certificate] | None = None,
) -> int:
    """Least k in [k_lo, k_hi] for which the star host arrows, scanning
    linearly downward from k_hi so every intermediate certificate is
    retained.  Arrowing is monotone in k (restricting a good coloring of a
    larger star yields one of a smaller star), asserted along the scan."""
    if not 0 <= k_lo <= k_hi <= inst.r - 1:
        raise ValueError(f"need 0 <= k_lo <= k_hi <= {inst.r - 1}")
    top = star_host_arrows(catalog, inst, k_hi)
    if certificates is not None:
        certificates.append(top)
    if top.verdict != "arrows":
        raise ValueError(
            f"no arrowing point in range: k_hi={k_hi} does not arrow"
        )
    best = k_hi
    for k in range(k_hi - 1, k_lo - 1, -1):
        cert = star_host_arrows(catalog, inst, k)
        if certificates is not None:
            certificates.append(cert)
        if cert.verdict == "arrows":
            best = k
        else:
            break
    return best


def brute_force_critical_catalog(order: int, n: int, k: int) -> IsoCatalog:
    """All critical red graphs at the given order by sheer enumeration of
    red subsets of the complete graph; the synthetic-catalog generator for
    oracle agreement at toy scale."""
    host = host_complete(order)
    edges = list(host.universe.edges())
    if len(edges) > BRUTE_FORCE_EDGE_CAP:
        raise ValueError(f"synthetic catalogs capped at {BRUTE_FORCE_EDGE_CAP} edges")
    catalog = IsoCatalog(
        provenance={
            "method": "brute_force_critical",
            "params": {"order": order, "cycle": n, "clique": k},
            "complete": True,
            "assumptions": [],
        }
    )
    for bitsv in range(1 << len(edges)):
        adj = [0] * order
        for i, (u, v) in enumerate(edges):
            if bitsv >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        red = Graph._make(order, tuple(adj))
        if verify_coloring(Coloring(host, red), n, k):
            catalog.insert(red, source="brute-force")
    return catalog

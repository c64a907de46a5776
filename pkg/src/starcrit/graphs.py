"""Bitset graphs, named-family builders, edge-universe hosts, and graph6 I/O.

Every graph is a simple undirected graph on at most 64 vertices with dense
indices 0..n-1.  Adjacency is one Python int per vertex used as a bitmask, so
a neighborhood fits in a machine word and set algebra is plain integer
arithmetic.  Vertex sets throughout the package are ints under the same
convention.  Graphs are immutable values; builders are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_ORDER = 64


class OrderOverflowError(ValueError):
    """Requested graph order exceeds the 64-vertex representation cap."""


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the byte offset of the offending char."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def mask_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of a mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph: order ``n`` plus per-vertex neighbor bitmasks.

    Invariants (checked on construction): adjacency is symmetric and
    irreflexive, and no bits at positions >= n are set.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: Iterable[int]):
        adj = tuple(adj)
        if not 0 <= n <= MAX_ORDER:
            raise OrderOverflowError(f"order {n} outside 0..{MAX_ORDER}")
        if len(adj) != n:
            raise ValueError(f"adjacency has {len(adj)} rows for order {n}")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has neighbor bits beyond order {n}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v, row in enumerate(adj):
            for u in bits(row):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")
        self.n = n
        self.adj = adj
        self._hash = hash((n, adj))

    @classmethod
    def _make(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        """Unchecked constructor for hot paths that build valid adjacency."""
        g = object.__new__(cls)
        g.n = n
        g.adj = adj
        g._hash = hash((n, adj))
        return g

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            for u in bits(self.adj[v] >> (v + 1)):
                yield v, v + 1 + u

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError("self-loop")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph._make(self.n, tuple(adj))

    def with_vertex(self, neighbors: int = 0) -> "Graph":
        """Append vertex n adjacent to the masked existing vertices."""
        if self.n + 1 > MAX_ORDER:
            raise OrderOverflowError(f"order {self.n + 1} exceeds {MAX_ORDER}")
        if neighbors & ~((1 << self.n) - 1):
            raise ValueError("neighbor mask outside existing vertices")
        bit = 1 << self.n
        adj = [row | bit if neighbors >> v & 1 else row for v, row in enumerate(self.adj)]
        adj.append(neighbors)
        return Graph._make(self.n + 1, tuple(adj))

    def relabel(self, perm: Iterable[int]) -> "Graph":
        """Image under a permutation: new index perm[v] for old vertex v."""
        perm = list(perm)
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph._make(self.n, tuple(adj))

    def induced(self, mask: int) -> "Graph":
        """Induced subgraph on the masked vertices, reindexed densely."""
        keep = list(bits(mask))
        pos = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            row = 0
            for u in bits(self.adj[v] & mask):
                row |= 1 << pos[u]
            adj.append(row)
        return Graph._make(len(keep), tuple(adj))


def empty(n: int) -> Graph:
    if not 0 <= n <= MAX_ORDER:
        raise OrderOverflowError(f"order {n} outside 0..{MAX_ORDER}")
    return Graph._make(n, (0,) * n)


def complete(n: int) -> Graph:
    """K_n: every pair adjacent."""
    if not 0 <= n <= MAX_ORDER:
        raise OrderOverflowError(f"order {n} outside 0..{MAX_ORDER}")
    full = (1 << n) - 1
    return Graph._make(n, tuple(full ^ (1 << v) for v in range(n)))


def cycle(n: int) -> Graph:
    """C_n: edges {i, (i+1) mod n}."""
    if n < 3:
        raise ValueError(f"cycle needs order >= 3, got {n}")
    if n > MAX_ORDER:
        raise OrderOverflowError(f"order {n} exceeds {MAX_ORDER}")
    adj = [0] * n
    for v in range(n):
        adj[v] = (1 << ((v + 1) % n)) | (1 << ((v - 1) % n))
    return Graph._make(n, tuple(adj))


def disjoint_union(parts: Iterable[Graph]) -> Graph:
    """Block-diagonal union of graphs, components in argument order."""
    adj: list[int] = []
    offset = 0
    for part in parts:
        if offset + part.n > MAX_ORDER:
            raise OrderOverflowError(f"union order exceeds {MAX_ORDER}")
        adj.extend(row << offset for row in part.adj)
        offset += part.n
    return Graph._make(offset, tuple(adj))


# --- edge-universe hosts -------------------------------------------------

COMPLETE = "complete"
MINUS_STAR = "complete_minus_star"
MINUS_CLIQUE = "complete_minus_clique"


@dataclass(frozen=True)
class HostGraph:
    """An edge universe that red/blue colorings live inside.

    kind is one of COMPLETE, MINUS_STAR, MINUS_CLIQUE.  For MINUS_STAR the
    star center is pinned to the highest index and ``designated`` masks the
    center's non-neighbors; for MINUS_CLIQUE ``designated`` masks a set of
    pairwise non-adjacent vertices.  All builders are deterministic so any
    certificate that embeds a host is byte-reproducible.
    """

    kind: str
    n: int
    designated: int = 0
    universe: Graph = field(compare=False, default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.universe is None:
            object.__setattr__(self, "universe", self._build_universe())

    def _build_universe(self) -> Graph:
        g = complete(self.n)
        adj = list(g.adj)
        if self.kind == COMPLETE:
            if self.designated:
                raise ValueError("complete host takes no designated vertices")
        elif self.kind == MINUS_STAR:
            center = self.n - 1
            if self.designated >> center & 1 or self.designated >= 1 << self.n:
                raise ValueError("designated must be existing non-center vertices")
            adj[center] &= ~self.designated
            for v in bits(self.designated):
                adj[v] &= ~(1 << center)
        elif self.kind == MINUS_CLIQUE:
            if self.designated >= 1 << self.n:
                raise ValueError("designated vertices outside order")
            for v in bits(self.designated):
                adj[v] &= ~(self.designated & ~(1 << v))
        else:
            raise ValueError(f"unknown host kind {self.kind!r}")
        return Graph._make(self.n, tuple(adj))

    def descriptor(self) -> dict:
        return {"kind": self.kind, "order": self.n, "designated": sorted(bits(self.designated))}

    @classmethod
    def from_descriptor(cls, d: dict) -> "HostGraph":
        return cls(d["kind"], d["order"], mask_of(d.get("designated", [])))


def host_complete(n: int) -> HostGraph:
    return HostGraph(COMPLETE, n)


def host_minus_star(n: int, t: int) -> HostGraph:
    """K_{n-1} joined to a center adjacent to all but the t highest non-center
    vertices; equals K_{n-1} disjoint-plus-star K_{1,n-1-t}."""
    if not 0 <= t <= n - 1:
        raise ValueError(f"star removal size {t} outside 0..{n - 1}")
    designated = mask_of(range(n - 1 - t, n - 1))
    return HostGraph(MINUS_STAR, n, designated)


def host_minus_clique(n: int, c: int, designated: int | None = None) -> HostGraph:
    """K_n with all edges inside a c-set removed (the c highest indices unless
    a designated mask is supplied)."""
    if not 0 <= c <= n:
        raise ValueError(f"clique removal size {c} outside 0..{n}")
    if designated is None:
        designated = mask_of(range(n - c, n))
    elif designated.bit_count() != c:
        raise ValueError("designated mask size disagrees with c")
    return HostGraph(MINUS_CLIQUE, n, designated)


class EdgeOutsideHostError(ValueError):
    """A graph uses an edge the host universe lacks."""


def complement_within(g: Graph, host: HostGraph) -> Graph:
    """Edges of the host universe not in g; an involution on any fixed host."""
    if g.n != host.n:
        raise ValueError(f"order mismatch: graph {g.n} vs host {host.n}")
    uni = host.universe.adj
    for v in range(g.n):
        if g.adj[v] & ~uni[v]:
            u = next(bits(g.adj[v] & ~uni[v]))
            raise EdgeOutsideHostError(f"edge {v}-{u} not in host universe")
    return Graph._make(g.n, tuple(uni[v] & ~g.adj[v] for v in range(g.n)))


# --- graph6 interchange ---------------------------------------------------

def _g6_bytes(value: int, length: int) -> list[int]:
    return [(value >> (6 * (length - 1 - i))) & 0x3F for i in range(length)]


def graph6_encode(g: Graph) -> str:
    """Standard graph6: order prefix, then the upper triangle bit-packed
    column-major into 6-bit chunks offset by 63."""
    out: list[int] = []
    if g.n <= 62:
        out.append(g.n)
    else:
        out.append(126 - 63)  # '~'
        out.extend(_g6_bytes(g.n, 3))
    word = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            word = (word << 1) | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(word)
                word = 0
                nbits = 0
    if nbits:
        out.append(word << (6 - nbits))
    return "".join(chr(b + 63) for b in out)


def graph6_decode(text: str) -> Graph:
    """Inverse of graph6_encode; raises Graph6Error with the byte offset of
    the first offending character."""
    if text.startswith(">>graph6<<"):
        text = text[10:]
    data = []
    for off, ch in enumerate(text):
        code = ord(ch) - 63
        if not 0 <= code <= 63:
            raise Graph6Error(f"character {ch!r} outside graph6 range", off)
        data.append(code)
    if not data:
        raise Graph6Error("empty input", 0)
    if data[0] == 63:  # '~' long-form order
        if len(data) < 4:
            raise Graph6Error("truncated long-form order", len(text))
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body, body_off = data[4:], 4
    else:
        n = data[0]
        body, body_off = data[1:], 1
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds supported {MAX_ORDER}", 0)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise Graph6Error(
            f"body has {len(body)} chars, order {n} needs {need}", body_off + min(len(body), need)
        )
    stream = 0
    for code in body:
        stream = (stream << 6) | code
    pad = 6 * need - n * (n - 1) // 2
    if pad and stream & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", body_off + need - 1)
    stream >>= pad
    adj = [0] * n
    for j in range(n - 1, 0, -1):
        for i in range(j - 1, -1, -1):
            if stream & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            stream >>= 1
    return Graph._make(n, tuple(adj))


def adjacency_lists(g: Graph) -> list[list[int]]:
    """Plain adjacency lists, the JSON shape used in certificates."""
    return [sorted(bits(row)) for row in g.adj]


def from_adjacency_lists(lists: list[list[int]]) -> Graph:
    return Graph(len(lists), (mask_of(row) for row in lists))

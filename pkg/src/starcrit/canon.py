"""Canonical labeling, isomorphism tests, automorphism orbits, and
isomorphism-class catalogs.

Labeling is exact: iterative equitable refinement (cells split by neighbor
counts against splitter cells) plus backtracking individualization over the
first smallest non-singleton cell.  The canonical labeling is the one whose
row-major adjacency key is lexicographically least over all search leaves;
automorphisms discovered as equal-key leaves prune sibling branches.  Two
graphs get equal canonical forms iff they are isomorphic - this is relied on
for every catalog count, so no hashing shortcuts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .graphs import Graph, bits, graph6_decode, graph6_encode

_MAX_GENERATORS = 64


def _refine(adj: tuple[int, ...], cells: list[int]) -> list[int]:
    """Equitable refinement: split cells by neighbor count into each splitter
    cell until stable.  Fragment order is by ascending count, so the result
    is labeling-equivariant and deterministic."""
    cells = list(cells)
    queue = list(cells)
    while queue:
        splitter = queue.pop()
        i = 0
        while i < len(cells):
            cell = cells[i]
            if cell.bit_count() > 1:
                buckets: dict[int, int] = {}
                for v in bits(cell):
                    cnt = (adj[v] & splitter).bit_count()
                    buckets[cnt] = buckets.get(cnt, 0) | (1 << v)
                if len(buckets) > 1:
                    frags = [buckets[c] for c in sorted(buckets)]
                    cells[i : i + 1] = frags
                    # keep the partition equitable: all fragments but one
                    # largest must be used as future splitters
                    largest = max(range(len(frags)), key=lambda k: frags[k].bit_count())
                    try:
                        qi = queue.index(cell)
                        queue[qi : qi + 1] = frags
                    except ValueError:
                        queue.extend(f for k, f in enumerate(frags) if k != largest)
                    i += len(frags)
                    continue
            i += 1
    return cells


def _leaf_key(adj: tuple[int, ...], new_to_old: list[int]) -> tuple[int, ...]:
    """Row-major adjacency key of the relabeled graph, for leaf comparison."""
    n = len(new_to_old)
    old_to_new = [0] * n
    for i, v in enumerate(new_to_old):
        old_to_new[v] = i
    rows = []
    for v in new_to_old:
        row = 0
        m = adj[v]
        while m:
            low = m & -m
            row |= 1 << old_to_new[low.bit_length() - 1]
            m ^= low
        rows.append(row)
    return tuple(rows)


_NO_JUMP = 1 << 30


class _Search:
    """Individualization-refinement over equitable partitions.

    Leaves automorphic to the first or best leaf trigger a backjump to the
    depth where the two root paths diverge - without this, sibling subtrees
    of highly symmetric graphs (unions of cliques) are re-explored in full
    and the search degenerates to factorial time.
    """

    def __init__(self, n: int, adj: tuple[int, ...]):
        self.n = n
        self.adj = adj
        self.first_key: tuple[int, ...] | None = None
        self.first_path: list[int] = []
        self.first_perm: list[int] | None = None
        self.best_key: tuple[int, ...] | None = None
        self.best_path: list[int] = []
        self.best_perm: list[int] | None = None
        self.generators: list[tuple[int, ...]] = []

    def run(self):
        if self.n == 0:
            self.best_perm = []
            return
        self._node(_refine(self.adj, [(1 << self.n) - 1]), [])

    def _record_automorphism(self, pa: list[int], pb: list[int]):
        inv = [0] * self.n
        for v, i in enumerate(pa):
            inv[i] = v
        sigma = tuple(inv[pb[v]] for v in range(self.n))
        if sigma != tuple(range(self.n)) and sigma not in self.generators:
            if len(self.generators) < _MAX_GENERATORS:
                self.generators.append(sigma)

    def _orbit(self, v: int, prefix: list[int]) -> int:
        """Orbit mask of v under known generators that fix prefix pointwise."""
        gens = [s for s in self.generators if all(s[p] == p for p in prefix)]
        orbit = 1 << v
        frontier = [v]
        while frontier:
            u = frontier.pop()
            for s in gens:
                w = s[u]
                if not orbit >> w & 1:
                    orbit |= 1 << w
                    frontier.append(w)
        return orbit

    @staticmethod
    def _divergence(a: list[int], b: list[int]) -> int:
        d = 0
        for x, y in zip(a, b):
            if x != y:
                break
            d += 1
        return d

    def _leaf(self, cells: list[int], prefix: list[int]) -> int:
        new_to_old = [cell.bit_length() - 1 for cell in cells]
        key = _leaf_key(self.adj, new_to_old)
        perm_old_to_new = [0] * self.n
        for i, v in enumerate(new_to_old):
            perm_old_to_new[v] = i
        if self.first_key is None:
            self.first_key = key
            self.first_path = list(prefix)
            self.first_perm = perm_old_to_new
            self.best_key = key
            self.best_path = list(prefix)
            self.best_perm = perm_old_to_new
            return _NO_JUMP
        if key == self.first_key:
            self._record_automorphism(self.first_perm, perm_old_to_new)
            return self._divergence(prefix, self.first_path)
        if key < self.best_key:
            self.best_key = key
            self.best_path = list(prefix)
            self.best_perm = perm_old_to_new
            return _NO_JUMP
        if key == self.best_key:
            self._record_automorphism(self.best_perm, perm_old_to_new)
            return self._divergence(prefix, self.best_path)
        return _NO_JUMP

    def _node(self, cells: list[int], prefix: list[int]) -> int:
        """Returns the prefix length at which exploration should resume."""
        target = -1
        target_size = 1 << 30
        for i, cell in enumerate(cells):
            size = cell.bit_count()
            if 1 < size < target_size:
                target, target_size = i, size
        if target < 0:
            return self._leaf(cells, prefix)
        cell = cells[target]
        depth = len(prefix)
        covered = 0
        for v in bits(cell):
            if covered >> v & 1:
                continue
            child = list(cells)
            child[target : target + 1] = [1 << v, cell & ~(1 << v)]
            prefix.append(v)
            res = self._node(_refine(self.adj, child), prefix)
            prefix.pop()
            if res < depth:
                return res
            covered |= self._orbit(v, prefix)
        return _NO_JUMP


def _canonical_search(n: int, adj: tuple[int, ...]) -> _Search:
    s = _Search(n, adj)
    s.run()
    return s


def canonical_labeling(g: Graph) -> list[int]:
    """A relabeling permutation (old index -> canonical index) realizing the
    canonical form; invariant under any prior relabeling of g."""
    return _canonical_search(g.n, g.adj).best_perm


def canonical_form(g: Graph) -> str:
    """Canonical graph6 string: equal for two graphs iff they are isomorphic."""
    return graph6_encode(g.relabel(canonical_labeling(g)))


def canonical_form_raw(n: int, adj: tuple[int, ...]) -> str:
    """canonical_form for a raw (order, adjacency) pair; hot-loop entry."""
    s = _canonical_search(n, adj)
    return graph6_encode(Graph._make(n, adj).relabel(s.best_perm))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism test: cheap invariants first, canonical forms last."""
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return False
    if sorted(g1.degree(v) for v in range(g1.n)) != sorted(
        g2.degree(v) for v in range(g2.n)
    ):
        return False
    return canonical_form(g1) == canonical_form(g2)


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    return _canonical_search(g.n, g.adj).generators


def automorphism_orbits(g: Graph) -> list[list[int]]:
    """Partition of the vertices into automorphism orbits (exact: vertices
    share a cell iff some automorphism maps one to the other)."""
    gens = automorphism_generators(g)
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in gens:
        for v in range(g.n):
            a, b = find(v), find(s[v])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def orbit_representatives_of_sets(
    g: Graph, sets: Iterable[int]
) -> list[int]:
    """Reduce vertex-set masks to one representative per orbit under the
    automorphism group generated by the discovered generators.  Never merges
    sets without an explicit witness, so reduction is sound even if the
    generator list is not a full generating set (just less sharp)."""
    gens = automorphism_generators(g)
    seen: set[int] = set()
    reps: list[int] = []
    for mask in sets:
        if mask in seen:
            continue
        reps.append(mask)
        frontier = [mask]
        seen.add(mask)
        while frontier:
            cur = frontier.pop()
            for s in gens:
                img = 0
                for v in bits(cur):
                    img |= 1 << s[v]
                if img not in seen:
                    seen.add(img)
                    frontier.append(img)
    return reps


# --- isomorphism-class catalogs -------------------------------------------

@dataclass
class CatalogEntry:
    canon: str
    graph: Graph
    source: str
    count: int


class IsoCatalog:
    """Deduplicated, canonically-ordered collection of isomorphism classes.

    Insertion is idempotent (repeat inserts bump the discovery count);
    entries iterate in lexicographic canonical-form order.  ``provenance``
    records how the catalog was produced, including whether it is complete
    and under which assumptions - arrowing refuses catalogs without it.
    """

    def __init__(self, provenance: dict | None = None):
        self._by_canon: dict[str, CatalogEntry] = {}
        self.provenance = provenance or {}

    def __len__(self) -> int:
        return len(self._by_canon)

    def __contains__(self, canon: str) -> bool:
        return canon in self._by_canon

    def insert(self, g: Graph, source: str = "", canon: str | None = None) -> bool:
        """Add one graph; returns True when it starts a new class."""
        if canon is None:
            canon = canonical_form(g)
        entry = self._by_canon.get(canon)
        if entry is None:
            self._by_canon[canon] = CatalogEntry(canon, g, source, 1)
            return True
        entry.count += 1
        return False

    def entries(self) -> list[CatalogEntry]:
        return [self._by_canon[c] for c in sorted(self._by_canon)]

    def graphs(self) -> list[Graph]:
        return [e.graph for e in self.entries()]

    def canonical_forms(self) -> list[str]:
        return sorted(self._by_canon)

    def merge(self, other: "IsoCatalog") -> None:
        """Deterministic union: identical no matter the merge order."""
        for canon, entry in other._by_canon.items():
            mine = self._by_canon.get(canon)
            if mine is None:
                self._by_canon[canon] = CatalogEntry(
                    canon, entry.graph, entry.source, entry.count
                )
            else:
                mine.count += entry.count

    def is_complete(self) -> bool:
        return bool(self.provenance.get("complete"))

    def assumptions(self) -> list[str]:
        return list(self.provenance.get("assumptions", []))

    def save(self, path: str | Path) -> None:
        """Write sorted graph6 lines to ``path`` and metadata alongside."""
        path = Path(path)
        path.write_text("".join(c + "\n" for c in sorted(self._by_canon)))
        sidecar = {
            "provenance": self.provenance,
            "classes": len(self._by_canon),
            "entries": [
                {"canon": e.canon, "source": e.source, "count": e.count}
                for e in self.entries()
            ],
        }
        path.with_suffix(path.suffix + ".json").write_text(
            json.dumps(sidecar, indent=2, sort_keys=True) + "\n"
        )

    @classmethod
    def load(cls, path: str | Path) -> "IsoCatalog":
        path = Path(path)
        sidecar_path = path.with_suffix(path.suffix + ".json")
        meta = {}
        if sidecar_path.exists():
            meta = json.loads(sidecar_path.read_text())
        cat = cls(provenance=meta.get("provenance", {}))
        by_canon = {e["canon"]: e for e in meta.get("entries", [])}
        for line in path.read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            g = graph6_decode(line)
            info = by_canon.get(line, {})
            entry = CatalogEntry(line, g, info.get("source", ""), info.get("count", 1))
            cat._by_canon[line] = entry
        return cat

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries())

"""Canonical labeling, isomorphism, orbits, and catalogs, cross-checked by
permutation-search oracles."""

import itertools
import random

import pytest

from starcrit.canon import (
    IsoCatalog,
    are_isomorphic,
    automorphism_generators,
    automorphism_orbits,
    canonical_form,
    canonical_labeling,
)
from starcrit.graphs import (
    Graph,
    complement_within,
    complete,
    cycle,
    disjoint_union,
    empty,
    graph6_decode,
    host_complete,
)

from conftest import random_graph


def iso_oracle(g1: Graph, g2: Graph) -> bool:
    """Backtracking vertex-matching, independent of canonical labeling."""
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return False
    n = g1.n
    image = [-1] * n
    used = [False] * n

    def place(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or g1.degree(v) != g2.degree(w):
                continue
            ok = True
            for u in range(v):
                if g1.has_edge(v, u) != g2.has_edge(w, image[u]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                if place(v + 1):
                    return True
                used[w] = False
        return False

    return place(0)


def orbit_oracle(g: Graph) -> list[list[int]]:
    """Vertex orbits by direct search: u ~ v iff some automorphism maps u
    to v, decided by backtracking with the image of u pinned to v."""
    n = g.n

    def maps_u_to_v(u: int, v: int) -> bool:
        image = [-1] * n
        used = [False] * n
        image[u] = v
        used[v] = True

        order = [u] + [x for x in range(n) if x != u]

        def place(i: int) -> bool:
            if i == n:
                return True
            x = order[i]
            for w in range(n):
                if used[w] or g.degree(x) != g.degree(w):
                    continue
                ok = all(
                    g.has_edge(x, order[j]) == g.has_edge(w, image[order[j]])
                    for j in range(i)
                )
                if ok:
                    image[x] = w
                    used[w] = True
                    if place(i + 1):
                        return True
                    used[w] = False
                    image[x] = -1
            return False

        return place(1)

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(n):
        for v in range(u + 1, n):
            if find(u) != find(v) and maps_u_to_v(u, v):
                parent[find(u)] = find(v)
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def test_relabel_invariance_1000_trials():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randrange(1, 13)
        g = random_graph(rng, n, rng.random())
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_form(g) == canonical_form(g.relabel(perm))


def test_canonical_form_is_a_valid_relabeling():
    rng = random.Random(13)
    for _ in range(100):
        g = random_graph(rng, rng.randrange(1, 12), rng.random())
        perm = canonical_labeling(g)
        assert graph6_decode(canonical_form(g)) == g.relabel(perm)


def test_different_graphs_differ():
    assert canonical_form(disjoint_union([complete(4)] * 2)) != canonical_form(cycle(8))


def test_order4_and_order5_class_counts():
    # brute force over all labeled graphs; 11 and 34 classes are classical
    for n, want in ((4, 11), (5, 34)):
        pairs = list(itertools.combinations(range(n), 2))
        forms = set()
        for bitsv in range(1 << len(pairs)):
            adj = [0] * n
            for i, (a, b) in enumerate(pairs):
                if bitsv >> i & 1:
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
            forms.add(canonical_form(Graph(n, adj)))
        assert len(forms) == want


def test_canonical_equality_matches_oracle():
    rng = random.Random(23)
    graphs = [random_graph(rng, 7, rng.random()) for _ in range(60)]
    for g1, g2 in itertools.combinations(graphs, 2):
        assert (canonical_form(g1) == canonical_form(g2)) == iso_oracle(g1, g2)


def test_are_isomorphic_examples(c6free_order15):
    c5 = cycle(5)
    assert are_isomorphic(c5, complement_within(c5, host_complete(5)))
    three_k5 = disjoint_union([complete(5)] * 3)
    assert not are_isomorphic(three_k5, three_k5.with_edge(0, 5))
    # both of those order-15 graphs are in the catalog of the C6 instance
    forms = set(c6free_order15.canonical_forms())
    assert canonical_form(three_k5) in forms
    assert canonical_form(three_k5.with_edge(0, 5)) in forms


def test_are_isomorphic_random_relabels():
    rng = random.Random(29)
    for _ in range(1000):
        n = rng.randrange(1, 12)
        g = random_graph(rng, n, rng.random())
        perm = list(range(n))
        rng.shuffle(perm)
        assert are_isomorphic(g, g.relabel(perm))


def test_isomorphism_equivalence_relation_spot_checks():
    rng = random.Random(37)
    graphs = [random_graph(rng, 6, rng.random()) for _ in range(25)]
    for g in graphs:
        assert are_isomorphic(g, g)
    for g1, g2 in itertools.combinations(graphs, 2):
        assert are_isomorphic(g1, g2) == are_isomorphic(g2, g1)
    for g1, g2, g3 in itertools.combinations(graphs, 3):
        if are_isomorphic(g1, g2) and are_isomorphic(g2, g3):
            assert are_isomorphic(g1, g3)


def test_generators_are_automorphisms():
    rng = random.Random(43)
    cases = [
        complete(6),
        cycle(9),
        disjoint_union([complete(4)] * 4),
        disjoint_union([complete(3), complete(3), cycle(5)]),
    ]
    cases += [random_graph(rng, rng.randrange(2, 12)) for _ in range(40)]
    for g in cases:
        for sigma in automorphism_generators(g):
            assert sorted(sigma) == list(range(g.n))
            assert g.relabel(list(sigma)) == g


def test_orbits_examples():
    assert automorphism_orbits(complete(7)) == [list(range(7))]
    pendant = complete(4).with_vertex(0b0001)  # vertex 4 hangs off vertex 0
    assert automorphism_orbits(pendant) == [[0], [1, 2, 3], [4]]
    assert automorphism_orbits(disjoint_union([complete(4)] * 4)) == [list(range(16))]


def test_orbits_match_oracle():
    rng = random.Random(47)
    cases = [
        disjoint_union([complete(4)] * 2),
        disjoint_union([complete(3)] * 3),
        cycle(8),
        disjoint_union([cycle(4), complete(4)]),
    ]
    cases += [random_graph(rng, rng.randrange(1, 9)) for _ in range(60)]
    for g in cases:
        assert automorphism_orbits(g) == orbit_oracle(g), g.adj


# --- catalogs ---------------------------------------------------------------

def test_catalog_insert_idempotent():
    rng = random.Random(51)
    cat = IsoCatalog()
    g = random_graph(rng, 9)
    for _ in range(5):
        perm = list(range(9))
        rng.shuffle(perm)
        cat.insert(g.relabel(perm), source="copies")
    assert len(cat) == 1
    assert cat.entries()[0].count == 5


def test_catalog_sorted_and_merge_deterministic():
    rng = random.Random(53)
    graphs = [random_graph(rng, 7) for _ in range(30)]
    a, b = IsoCatalog(), IsoCatalog()
    for i, g in enumerate(graphs):
        (a if i % 2 else b).insert(g)
    ab = IsoCatalog()
    ab.merge(a)
    ab.merge(b)
    ba = IsoCatalog()
    ba.merge(b)
    ba.merge(a)
    assert ab.canonical_forms() == ba.canonical_forms()
    assert ab.canonical_forms() == sorted(ab.canonical_forms())


def test_catalog_save_load_roundtrip(tmp_path):
    rng = random.Random(59)
    cat = IsoCatalog(provenance={"method": "test", "complete": True, "assumptions": ["x"]})
    for _ in range(12):
        cat.insert(random_graph(rng, 8), source="rand")
    path = tmp_path / "cat.g6"
    cat.save(path)
    again = IsoCatalog.load(path)
    assert again.canonical_forms() == cat.canonical_forms()
    assert again.is_complete()
    assert again.assumptions() == ["x"]
    assert [e.source for e in again.entries()] == [e.source for e in cat.entries()]


def test_empty_and_singleton_graphs():
    assert canonical_form(empty(0)) == "?"
    assert canonical_form(empty(1)) == canonical_form(empty(1))
    assert automorphism_orbits(empty(0)) == []

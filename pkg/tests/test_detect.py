"""Decision kernels against independent oracles: permutation and subset-DP
cycle oracles, brute-force subset oracles for independence and cliques, and
the off-cycle structural rules."""

import itertools
import random

import pytest

from starcrit.detect import (
    MissingRamseyValueError,
    clique_partition,
    cycle_extension_violations,
    exact_path_pairs,
    find_cycle_of_length,
    has_clique,
    has_cycle_of_length,
    has_independent_set,
    independent_sets,
    is_cycle_free,
    min_degree_bound_holds,
    ramsey_number,
)
from starcrit.graphs import (
    Graph,
    bits,
    complement_within,
    complete,
    cycle,
    disjoint_union,
    empty,
    host_complete,
    mask_of,
)

from conftest import random_graph


def permutation_cycle_oracle(g: Graph, length: int) -> bool:
    """Naive oracle: try every vertex subset and every cyclic order."""
    for subset in itertools.combinations(range(g.n), length):
        for perm in itertools.permutations(subset[1:]):
            seq = (subset[0],) + perm
            if all(g.has_edge(seq[i], seq[(i + 1) % length]) for i in range(length)):
                return True
    return False


def dp_cycle_lengths(g: Graph) -> set[int]:
    """All cycle lengths at once by subset dynamic programming: for each
    anchor, reach[mask] is the endpoint set of simple paths from the anchor
    through exactly the masked higher vertices."""
    lengths: set[int] = set()
    n = g.n
    for a in range(n):
        higher = [v for v in range(a + 1, n)]
        avail = mask_of(higher)
        reach = {0: 1 << a}
        frontier = [0]
        while frontier:
            nxt = []
            for mask in frontier:
                ends = reach[mask]
                for e in bits(ends):
                    for w in bits(g.adj[e] & avail & ~mask):
                        m2 = mask | (1 << w)
                        prev = reach.get(m2, 0)
                        if not prev >> w & 1:
                            if m2 not in reach:
                                nxt.append(m2)
                            reach[m2] = prev | (1 << w)
            frontier = nxt
        for mask, ends in reach.items():
            size = mask.bit_count() + 1
            if size >= 3 and ends & g.adj[a]:
                lengths.add(size)
    return lengths


def all_classes_of_order(k: int) -> list[Graph]:
    """Every isomorphism class at order k, via the constrained enumerator
    with vacuous constraints (plus the empty graph it excludes)."""
    from starcrit.generate import EnumSpec, enumerate_cycle_free

    if k == 1:
        return [empty(1)]
    catalog, record = enumerate_cycle_free(EnumSpec(k, k + 1, k - 1))
    assert record.completed
    return catalog.graphs() + [empty(k)]


def test_cycle_examples():
    c8 = cycle(8)
    assert has_cycle_of_length(c8, 8)
    assert not has_cycle_of_length(c8, 7)
    assert not has_cycle_of_length(disjoint_union([complete(4), complete(4), complete(3)]), 5)
    assert not has_cycle_of_length(disjoint_union([complete(5)] * 3), 6)
    assert has_cycle_of_length(complete(6), 6)
    assert not has_cycle_of_length(complete(6), 7)
    with pytest.raises(ValueError):
        has_cycle_of_length(c8, 2)


def test_find_cycle_returns_valid_witness():
    rng = random.Random(3)
    for _ in range(200):
        g = random_graph(rng, rng.randrange(3, 12), rng.random())
        for length in range(3, g.n + 1):
            found = find_cycle_of_length(g, length)
            if found is not None:
                assert len(found) == length and len(set(found)) == length
                assert all(
                    g.has_edge(found[i], found[(i + 1) % length])
                    for i in range(length)
                )


def test_cycle_detector_vs_permutation_oracle_small():
    # the naive oracle verbatim on every class of order <= 6
    for k in range(3, 7):
        for g in all_classes_of_order(k):
            for length in range(3, k + 1):
                assert has_cycle_of_length(g, length) == permutation_cycle_oracle(
                    g, length
                ), (g.adj, length)


def test_cycle_oracles_agree_on_random_graphs():
    rng = random.Random(21)
    for _ in range(60):
        g = random_graph(rng, rng.randrange(4, 9), rng.random())
        dp = dp_cycle_lengths(g)
        for length in range(3, g.n + 1):
            perm = permutation_cycle_oracle(g, length)
            assert perm == (length in dp)
            assert perm == has_cycle_of_length(g, length)


def test_cycle_detector_all_orders_up_to_8():
    # exhaustive sweep of every isomorphism class, subset-DP as the oracle
    for k in range(1, 9):
        classes = all_classes_of_order(k)
        for g in classes:
            want = dp_cycle_lengths(g)
            got = {length for length in range(3, k + 1) if has_cycle_of_length(g, length)}
            assert got == want, g.adj


def test_is_cycle_free_examples(c4_critical, c6free_order15):
    assert is_cycle_free(c4_critical, 4)
    assert not is_cycle_free(complete(5), 4)
    from starcrit.constructions import lower_bound_coloring

    assert is_cycle_free(lower_bound_coloring(6).red, 6)


def test_independence_examples(c5free_order11):
    g16 = disjoint_union([complete(4)] * 4)
    assert has_independent_set(g16, 4)
    assert not has_independent_set(g16, 5)
    assert not has_independent_set(complete(14), 2)
    for entry in c5free_order11.entries():
        assert not has_independent_set(entry.graph, 4)


def test_clique_examples():
    assert has_clique(complete(5), 5)
    assert not has_clique(cycle(5), 3)
    from starcrit.constructions import c4_star_witness

    witness = c4_star_witness()
    assert not has_clique(witness.blue, 5)


def test_independence_clique_against_subset_oracle():
    rng = random.Random(31)
    for _ in range(150):
        g = random_graph(rng, rng.randrange(1, 11), rng.random())
        s = rng.randrange(1, g.n + 1)
        brute_ind = any(
            all(not g.has_edge(u, v) for u, v in itertools.combinations(c, 2))
            for c in itertools.combinations(range(g.n), s)
        )
        brute_clq = any(
            all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))
            for c in itertools.combinations(range(g.n), s)
        )
        assert has_independent_set(g, s) == brute_ind
        assert has_clique(g, s) == brute_clq


def test_independence_clique_duality():
    rng = random.Random(41)
    for _ in range(1000):
        n = rng.randrange(1, 17)
        g = random_graph(rng, n, rng.random())
        s = rng.randrange(1, n + 1)
        comp = complement_within(g, host_complete(n))
        assert has_independent_set(g, s) == has_clique(comp, s)


def test_min_degree_bound(c5free_order12):
    # bound is vacuous at order 12 for the C5/K4 pair: 12 - 13 < 0
    for entry in c5free_order12.entries():
        assert min_degree_bound_holds(entry.graph, 5, 5)
    assert min_degree_bound_holds(disjoint_union([complete(4)] * 4), 5, 5)
    assert min_degree_bound_holds(disjoint_union([complete(5)] * 4), 6, 5)
    with pytest.raises(MissingRamseyValueError):
        min_degree_bound_holds(complete(4), 7, 7)


def test_ramsey_table_values():
    assert ramsey_number(3, 3) == 6
    assert ramsey_number(5, 4) == 13
    assert ramsey_number(6, 4) == 16
    assert ramsey_number(5, 5) == 17
    assert ramsey_number(4, 5) == 14
    assert ramsey_number(8, 5) == 29
    with pytest.raises(MissingRamseyValueError):
        ramsey_number(5, 6)


def test_clique_partition():
    four = disjoint_union([complete(4)] * 4)
    parts = clique_partition(four, 4, 4)
    assert parts is not None and len(parts) == 4
    seen = 0
    for mask in parts:
        assert mask.bit_count() == 4
        assert not mask & seen
        seen |= mask
        members = list(bits(mask))
        assert all(four.has_edge(u, v) for u, v in itertools.combinations(members, 2))
    assert clique_partition(cycle(16), 4, 4) is None
    with pytest.raises(ValueError):
        clique_partition(complete(10), 4, 3)


def test_exact_path_pairs_against_dfs():
    rng = random.Random(53)

    def dfs_pairs(g: Graph, t: int) -> list[int]:
        pairs = [0] * g.n
        for v in range(g.n):
            stack = [(v, 1 << v, 0)]
            while stack:
                cur, used, d = stack.pop()
                if d == t:
                    pairs[v] |= 1 << cur
                    continue
                for u in bits(g.adj[cur] & ~used):
                    stack.append((u, used | (1 << u), d + 1))
            pairs[v] &= ~(1 << v)
        return pairs

    for _ in range(120):
        g = random_graph(rng, rng.randrange(2, 10), rng.random())
        for t in (1, 2, 3, 4):
            assert exact_path_pairs(g.n, g.adj, t) == dfs_pairs(g, t)


def test_independent_sets_enumeration():
    g = disjoint_union([complete(4)] * 2)
    sets = independent_sets(g.n, g.adj, 2)
    assert len(sets) == 16  # one vertex per clique
    assert independent_sets(g.n, g.adj, 3) == []


# --- off-cycle structural rules ---------------------------------------------

def test_rules_trivial_cases():
    for n in (5, 6, 8):
        g = disjoint_union([cycle(n - 1), empty(1)])
        cyc = list(range(n - 1))
        assert cycle_extension_violations(g, cyc, n) == []


def test_rule_a_fires_and_closes_cycle():
    n = 8
    g = cycle(7).with_vertex(mask_of([0, 1]))  # x adjacent to consecutive pair
    violations = cycle_extension_violations(g, list(range(7)), n)
    assert any(v["rule"] == "a" for v in violations)
    # the rule is exactly the obstruction: the witness closes an 8-cycle
    assert has_cycle_of_length(g, 8)


def test_rule_b_fires():
    # x adjacent to u0 and u2; adding edge u1-u3 closes an 8-cycle
    g = cycle(7).with_vertex(mask_of([0, 2])).with_edge(1, 3)
    violations = cycle_extension_violations(g, list(range(7)), 8)
    assert any(v["rule"] == "b" for v in violations)
    assert has_cycle_of_length(g, 8)


def test_rule_c_fires():
    # x at u0,u3; x' at u1,u5 closes an 8-cycle through both
    g = cycle(7).with_vertex(mask_of([0, 3])).with_vertex(mask_of([1, 5]))
    violations = cycle_extension_violations(g, list(range(7)), 8)
    assert any(v["rule"] == "c" for v in violations)
    assert has_cycle_of_length(g, 8)


def test_rules_validate_input():
    g = cycle(6)
    with pytest.raises(ValueError):
        cycle_extension_violations(g, [0, 1, 2, 3, 4], 6)  # not a cycle in g
    with pytest.raises(ValueError):
        cycle_extension_violations(g, [0, 1, 2], 6)  # wrong length
    g2 = disjoint_union([cycle(5), complete(2)])
    with pytest.raises(ValueError):
        cycle_extension_violations(g2, [0, 1, 2, 3, 4], 6, independent_set=[5, 6])


def _zero_violation_scan(catalog, n: int):
    """Members containing a cycle of length n-1 must satisfy rules a-c; with
    an off-cycle independent set of the right size, rule d as well."""
    scanned = 0
    for entry in catalog.entries():
        g = entry.graph
        cyc = find_cycle_of_length(g, n - 1)
        if cyc is None:
            continue
        scanned += 1
        violations = cycle_extension_violations(g, cyc, n)
        assert violations == [], (entry.canon, violations)
        outside = [v for v in range(g.n) if v not in set(cyc)]
        ind = None
        for trio in itertools.combinations(outside, 3):
            if all(not g.has_edge(u, v) for u, v in itertools.combinations(trio, 2)):
                ind = list(trio)
                break
        if ind is not None:
            violations = cycle_extension_violations(g, cyc, n, independent_set=ind)
            assert violations == [], (entry.canon, violations)
    return scanned


def test_rules_zero_violations_on_catalogs(
    c5free_order11, c5free_order12, c6free_order15
):
    assert _zero_violation_scan(c5free_order11, 5) > 0
    assert _zero_violation_scan(c5free_order12, 5) > 0
    assert _zero_violation_scan(c6free_order15, 6) > 0

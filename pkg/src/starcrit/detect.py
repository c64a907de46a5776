"""Exact decision kernels: fixed-length cycles, independence and clique
thresholds, degree bounds, spanning clique partitions, and the rules that
constrain vertices hanging off a near-maximal cycle.

Everything here is exact (no heuristics, no false negatives) and pure, so
callers may fan out across graphs freely.
"""

from __future__ import annotations

from .graphs import Graph, bits, mask_of


class MissingRamseyValueError(KeyError):
    """The static Ramsey lookup lacks a needed (cycle, clique) entry."""


def ramsey_number(m: int, k: int) -> int:
    """Known exact r(C_m, K_k) values used for pruning and certification.

    Static table of published values: r(C_3,K_3)=6 (Greenwood-Gleason),
    r(C_m,K_4)=3m-2 for m >= 4 (Jayawardene-Rousseau for m=4,5; Yang et al.
    for larger m), r(C_4,K_5)=14, and r(C_m,K_5)=4m-3 for m >= 5
    (Bollobas et al.; see Radziszowski's dynamic survey DS1 for the map).
    """
    if m == 3 and k == 3:
        return 6
    if k == 4 and m >= 4:
        return 3 * m - 2
    if k == 5 and m == 4:
        return 14
    if k == 5 and m >= 5:
        return 4 * m - 3
    raise MissingRamseyValueError(f"no stored value for r(C_{m}, K_{k})")


def has_ramsey_value(m: int, k: int) -> bool:
    try:
        ramsey_number(m, k)
        return True
    except MissingRamseyValueError:
        return False


def exact_path_pairs(k: int, adj: tuple[int, ...], t: int) -> list[int]:
    """pairs[v] = mask of u joined to v by a simple path of exactly t edges.

    Bit-parallel special cases for t <= 4 (the hot lengths), depth-first
    fallback otherwise.  The kernel behind incremental fixed-cycle checks:
    joining both v and u to one new vertex closes a (t+2)-cycle iff u is in
    pairs[v].
    """
    pairs = [0] * k
    if t > k:
        return pairs
    if t == 1:
        return list(adj)
    if t == 2:
        for v in range(k):
            m = 0
            for w in bits(adj[v]):
                m |= adj[w]
            pairs[v] = m & ~(1 << v)
        return pairs
    if t == 3:
        for a in range(k):
            for b in bits(adj[a]):
                ends = adj[b] & ~(1 << a)
                for v in bits(adj[a] & ~(1 << b)):
                    pairs[v] |= ends & ~(1 << v)
        return pairs
    if t == 4:
        for v in range(k):
            vbit = 1 << v
            for b in range(k):
                if b == v:
                    continue
                mids = adj[v] & adj[b] & ~vbit & ~(1 << b)
                if not mids:
                    continue
                for c in bits(adj[b] & ~vbit & ~(1 << b)):
                    ends = adj[c] & ~vbit & ~(1 << b) & ~(1 << c)
                    rest = mids & ~(1 << c)
                    if not rest:
                        continue
                    if rest.bit_count() >= 2:
                        pairs[v] |= ends
                    else:
                        pairs[v] |= ends & ~rest
        return pairs
    for v in range(k):
        stack = [(v, 1 << v, 0)]
        while stack:
            cur, used, d = stack.pop()
            if d == t:
                pairs[v] |= 1 << cur
                continue
            for u in bits(adj[cur] & ~used):
                stack.append((u, used | (1 << u), d + 1))
        pairs[v] &= ~(1 << v)
    return pairs


def independent_sets(k: int, adj: tuple[int, ...], s: int) -> list[int]:
    """All independent vertex sets of size exactly s, as masks, in
    lexicographic order of their lowest members."""
    out: list[int] = []

    def grow(start: int, chosen: int, banned: int, left: int):
        if left == 0:
            out.append(chosen)
            return
        for v in range(start, k - left + 1):
            b = 1 << v
            if banned & b:
                continue
            grow(v + 1, chosen | b, banned | adj[v], left - 1)

    grow(0, 0, 0, s)
    return out


def find_cycle_of_length(g: Graph, length: int) -> list[int] | None:
    """A cycle on exactly ``length`` vertices as an ordered vertex list, or
    None.  Cycles need not be induced.

    Depth-first path extension anchored at the lowest-indexed cycle vertex,
    restricted to higher indices, pruned by exact remaining length against
    BFS distance back to the anchor over still-unused vertices.
    """
    if length < 3:
        raise ValueError(f"cycle length must be >= 3, got {length}")
    n, adj = g.n, g.adj
    if length > n:
        return None
    for anchor in range(n - length + 1):
        allowed = ((1 << n) - 1) & ~((1 << (anchor + 1)) - 1)
        start = adj[anchor] & allowed
        if start.bit_count() < 2:
            continue
        # stack of (vertex, used-mask, path-so-far)
        stack = [(v, (1 << anchor) | (1 << v), (anchor, v)) for v in bits(start)]
        anchor_adj = adj[anchor]
        while stack:
            v, used, path = stack.pop()
            if len(path) == length:
                if anchor_adj >> v & 1:
                    return list(path)
                continue
            avail = allowed & ~used
            cands = adj[v] & avail
            if not cands:
                continue
            # BFS layers from the anchor over available vertices; a candidate
            # surviving must close back in exactly length-|path| more edges,
            # so its distance to the anchor must not exceed that.
            rem = length - len(path)
            reach = anchor_adj & (avail | cands)
            frontier = reach
            steps = 1
            while steps < rem and frontier and cands & ~reach:
                nxt = 0
                for u in bits(frontier):
                    nxt |= adj[u]
                frontier = nxt & avail & ~reach
                reach |= frontier
                steps += 1
            cands &= reach
            for u in bits(cands):
                stack.append((u, used | (1 << u), path + (u,)))
    return None


def has_cycle_of_length(g: Graph, length: int) -> bool:
    """True iff g contains a (not necessarily induced) cycle on exactly
    ``length`` vertices."""
    return find_cycle_of_length(g, length) is not None


def is_cycle_free(g: Graph, length: int) -> bool:
    """True iff g has no cycle on exactly ``length`` vertices."""
    return not has_cycle_of_length(g, length)


def has_independent_set(g: Graph, s: int) -> bool:
    """True iff the independence number of g is at least s.

    Branch and bound on the vertex of maximum residual degree: either it
    joins the set (dropping its closed neighborhood) or it is discarded.
    Early exit at the threshold; exact.
    """
    if s < 1:
        raise ValueError(f"independent set size must be >= 1, got {s}")
    if s > g.n:
        return False
    adj = g.adj
    full = (1 << g.n) - 1

    def grow(avail: int, need: int) -> bool:
        while True:
            cnt = avail.bit_count()
            if need <= 0:
                return True
            if cnt < need:
                return False
            best, best_deg = -1, -1
            m = avail
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                deg = (adj[v] & avail).bit_count()
                if deg > best_deg:
                    best, best_deg = v, deg
            if best_deg == 0:
                return True  # avail is itself independent and cnt >= need
            v = best
            if grow(avail & ~(adj[v] | (1 << v)), need - 1):
                return True
            avail &= ~(1 << v)  # discard branch continues the loop

    return grow(full, s)


def has_clique(g: Graph, s: int) -> bool:
    """True iff g contains a complete subgraph on s vertices.

    Direct max-clique branch and bound with a greedy coloring bound (not
    routed through the independence kernel, so the two stay independent
    cross-checks of one another).
    """
    if s < 1:
        raise ValueError(f"clique size must be >= 1, got {s}")
    if s > g.n:
        return False
    if s == 1:
        return g.n >= 1
    adj = g.adj

    def color_bound(avail: int) -> int:
        classes: list[int] = []
        for v in bits(avail):
            for i, cls in enumerate(classes):
                if not adj[v] & cls:
                    classes[i] |= 1 << v
                    break
            else:
                classes.append(1 << v)
        return len(classes)

    def extend(avail: int, size: int) -> bool:
        if size == s:
            return True
        if size + color_bound(avail) < s:
            return False
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail ^= low
            if extend(adj[v] & avail, size + 1):
                return True
        return False

    return extend((1 << g.n) - 1, 0)


def min_degree_bound_holds(g: Graph, m: int, n: int, lookup=ramsey_number) -> bool:
    """Check the forced min-degree inequality for a C_m-free graph with
    independence number at most n-1: every degree must reach
    order - r(C_m, K_{n-1})."""
    bound = g.n - lookup(m, n - 1)
    return g.min_degree() >= bound


def clique_partition(g: Graph, parts: int, size: int) -> list[int] | None:
    """Partition the vertices into ``parts`` cliques of ``size`` vertices
    each, returned as bitmasks, or None if impossible.  Exact backtracking:
    the lowest unassigned vertex seeds each next clique."""
    if parts * size != g.n:
        raise ValueError(f"{parts} parts of {size} vertices cannot cover order {g.n}")
    adj = g.adj

    def cliques_through(v: int, avail: int) -> list[int]:
        """All size-cliques containing v inside avail, as masks."""
        out: list[int] = []

        def ext(members: int, cands: int, count: int):
            if count == size:
                out.append(members)
                return
            need = size - count
            if cands.bit_count() < need:
                return
            m = cands
            while m:
                low = m & -m
                u = low.bit_length() - 1
                m ^= low
                cands ^= low
                ext(members | low, cands & adj[u], count + 1)

        ext(1 << v, adj[v] & avail, 1)
        return out

    chosen: list[int] = []

    def cover(avail: int) -> bool:
        if not avail:
            return True
        v = (avail & -avail).bit_length() - 1
        for cl in cliques_through(v, avail & ~(1 << v)):
            chosen.append(cl)
            if cover(avail & ~cl):
                return True
            chosen.pop()
        return False

    if cover((1 << g.n) - 1):
        return chosen
    return None


def cycle_extension_violations(
    g: Graph,
    cycle_vertices: list[int],
    n: int,
    independent_set: list[int] | None = None,
) -> list[dict]:
    """Check the structural rules that hold around a cycle of length n-1 in
    any graph with no cycle of length n, for every vertex off the cycle.

    Rules, with cycle (u_1, ..., u_{n-1}) and Y the off-cycle vertices:
      a. no x in Y is adjacent to two consecutive cycle vertices;
      b. if x in Y is adjacent to u_i and u_j then u_{i+1}u_{j+1} is a
         non-edge;
      c. if x in Y is adjacent to u_i and u_j then no other x' in Y is
         adjacent to both u_{i+1} and u_{j+2};
      d. when an (m-1)-element independent subset of Y is supplied and
         m <= (n+3)/2, none of its members is adjacent to m-2 or more
         cycle vertices.

    Returns a list of violation records (empty means all rules hold); each
    record has a rule id and the vertex indices involved, ready for JSON.
    """
    k = n - 1
    if len(cycle_vertices) != k or len(set(cycle_vertices)) != k:
        raise ValueError(f"expected {k} distinct cycle vertices")
    for i in range(k):
        u, v = cycle_vertices[i], cycle_vertices[(i + 1) % k]
        if not g.has_edge(u, v):
            raise ValueError(f"vertices do not form a cycle: missing edge {u}-{v}")
    cyc_mask = mask_of(cycle_vertices)
    outside = [x for x in range(g.n) if not cyc_mask >> x & 1]
    # position on the cycle -> vertex, with wraparound helpers
    at = cycle_vertices
    violations: list[dict] = []

    # cycle positions adjacent to each outside vertex
    hits = {x: [i for i in range(k) if g.has_edge(x, at[i])] for x in outside}

    for x in outside:
        hx = hits[x]
        hset = set(hx)
        for i in hx:
            if (i + 1) % k in hset:
                violations.append(
                    {"rule": "a", "x": x, "cycle": [at[i], at[(i + 1) % k]]}
                )
        for ai in range(len(hx)):
            for bi in range(ai + 1, len(hx)):
                i, j = hx[ai], hx[bi]
                if g.has_edge(at[(i + 1) % k], at[(j + 1) % k]):
                    violations.append(
                        {"rule": "b", "x": x, "cycle": [at[i], at[j]],
                         "edge": [at[(i + 1) % k], at[(j + 1) % k]]}
                    )
    for x in outside:
        hx = hits[x]
        for ai in range(len(hx)):
            for bi in range(len(hx)):
                if ai == bi:
                    continue
                i, j = hx[ai], hx[bi]
                for xp in outside:
                    if xp == x:
                        continue
                    if g.has_edge(xp, at[(i + 1) % k]) and g.has_edge(xp, at[(j + 2) % k]):
                        violations.append(
                            {"rule": "c", "x": x, "x_prime": xp,
                             "cycle": [at[i], at[j]],
                             "targets": [at[(i + 1) % k], at[(j + 2) % k]]}
                        )
    if independent_set is not None:
        m = len(independent_set) + 1
        ind_mask = mask_of(independent_set)
        if ind_mask & cyc_mask:
            raise ValueError("independent set must avoid the cycle")
        for a in independent_set:
            for b in independent_set:
                if a < b and g.has_edge(a, b):
                    raise ValueError(f"supplied set is not independent: edge {a}-{b}")
        if 2 * m <= n + 3:
            for x in independent_set:
                if len(hits[x]) >= m - 2:
                    violations.append(
                        {"rule": "d", "x": x, "cycle": [at[i] for i in hits[x]]}
                    )
    return violations

"""Independent reference computations used only by the tests."""
import itertools
from fractions import Fraction

import mpmath


def walk_return_probability(d: int, k: int) -> Fraction:
    """p_d(2k) by enumerating every one of the (2d)^(2k) walks."""
    steps = []
    for axis in range(d):
        for sign in (1, -1):
            v = [0] * d
            v[axis] = sign
            steps.append(tuple(v))
    back = 0
    total = 0
    for walk in itertools.product(steps, repeat=2 * k):
        total += 1
        if all(sum(s[i] for s in walk) == 0 for i in range(d)):
            back += 1
    return Fraction(back, total)


def catalan_constant(digits: int = 40) -> mpmath.mpf:
    """G = sum (-1)^k / (2k+1)^2, summed with Cohen-Rodriguez Villegas-Zagier acceleration."""
    with mpmath.workdps(digits + 10):
        n = int(1.31 * (digits + 10)) + 2
        d = (3 + mpmath.sqrt(8)) ** n
        d = (d + 1 / d) / 2
        b, c, s = mpmath.mpf(-1), -d, mpmath.mpf(0)
        for k in range(n):
            c = b - c
            s += c / mpmath.mpf(2 * k + 1) ** 2
            b = (k + n) * (k - n) * b / ((k + mpmath.mpf(1) / 2) * (k + 1))
        return +(s / d)


def h2_exact(digits: int = 40) -> mpmath.mpf:
    with mpmath.workdps(digits + 10):
        return 4 * catalan_constant(digits) / mpmath.pi


def leibniz_determinant(M) -> int:
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, j in enumerate(perm):
            prod *= M[i][j]
        total += -prod if inversions % 2 else prod
    return total


def expansion_coefficients(order: int) -> list[Fraction]:
    """c_j in sum_k p_d(2k)/(2k) = sum_j c_j d^-j, from exact walk counts.

    f(d, k) is a polynomial of degree k in d, so it is recovered by Lagrange
    interpolation on d = 1..k+1; term k then only feeds orders j >= k.
    """
    from treeentropy.walkcounts import build_counts

    tables = {d: build_counts(d, order) for d in range(1, order + 2)}
    coeffs = [Fraction(0)] * (order + 1)
    for k in range(1, order + 1):
        xs = list(range(1, k + 2))
        poly = [Fraction(0)] * (k + 1)  # poly[i] multiplies d^i
        for x in xs:
            basis = [Fraction(1)]
            denom = 1
            for y in xs:
                if y == x:
                    continue
                basis = [Fraction(0)] + basis
                for i in range(len(basis) - 1):
                    basis[i] -= y * basis[i + 1]
                denom *= x - y
            for i, b in enumerate(basis):
                poly[i] += tables[x][k] * b / denom
        for i, a in enumerate(poly):
            j = 2 * k - i
            if j <= order:
                coeffs[j] += a / (4**k * 2 * k)
    return coeffs[1:]


def deletion_contraction(n_vertices: int, edges) -> int:
    """tau(G) = tau(G - e) + tau(G / e) on a multigraph, loops discarded."""
    from functools import lru_cache

    def canon(vs, es):
        index = {v: i for i, v in enumerate(sorted(vs))}
        return len(vs), tuple(sorted(tuple(sorted((index[a], index[b]))) for a, b in es))

    @lru_cache(maxsize=None)
    def tau(n, es):
        if n == 1:
            return 1
        if not es:
            return 0
        (a, b), rest = es[0], es[1:]
        deleted = tau(n, rest)
        merged = [(a if u == b else u, a if v == b else v) for u, v in rest]
        merged = [(u, v) for u, v in merged if u != v]
        vs = [v for v in range(n) if v != b]
        return deleted + tau(*canon(vs, merged))

    return tau(*canon(range(n_vertices), [tuple(e) for e in edges]))


def induced(g, keep):
    index = {v: i for i, v in enumerate(keep)}
    return len(keep), [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]


def connected(n, edges):
    seen, stack = {0}, [0]
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def small_connected_grid_graphs():
    """Connected induced subgraphs of every cube with at most 9 vertices."""
    from treeentropy.kirchhoff import GridGraph

    hosts = [GridGraph(1, n) for n in range(1, 10)] + [GridGraph(2, 2), GridGraph(2, 3), GridGraph(3, 2)]
    for g in hosts:
        for r in range(1, g.vertex_count + 1):
            for keep in itertools.combinations(range(g.vertex_count), r):
                n, edges = induced(g, keep)
                if connected(n, edges):
                    yield n, edges

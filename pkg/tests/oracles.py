"""Independent reference computations used by the tests.

These deliberately avoid the engine's Gröbner code: reduction here is the
textbook one-term-at-a-time division written with plain polynomial
arithmetic.
"""

import itertools

from generic_tor.poly import Polynomial


def lead(f):
    return f.lead_monomial, f.lead_coeff


def naive_reduce(f: Polynomial, basis) -> Polynomial:
    ring = f.ring
    F = ring.field
    r = ring.zero()
    p = f
    while p:
        m, c = lead(p)
        for g in basis:
            gm, gc = lead(g)
            if all(a <= b for a, b in zip(gm, m)):
                q = ring.monomial(tuple(a - b for a, b in zip(m, gm)), F.normalize(c * F.inv(gc)))
                p = p - q * g
                break
        else:
            r = r + ring.monomial(m, c)
            p = p - ring.monomial(m, c)
    return r


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = f.ring
    F = ring.field
    fm, fc = lead(f)
    gm, gc = lead(g)
    l = tuple(max(a, b) for a, b in zip(fm, gm))
    a = ring.monomial(tuple(x - y for x, y in zip(l, fm)), F.inv(fc))
    b = ring.monomial(tuple(x - y for x, y in zip(l, gm)), F.inv(gc))
    return a * f - b * g


def is_groebner_basis(basis) -> bool:
    return all(not naive_reduce(s_polynomial(f, g), basis) for f, g in itertools.combinations(basis, 2))


def generates_same_ideal(basis, generators) -> bool:
    """Each generator reduces to 0 against ``basis`` and ``basis`` lies in the ideal.

    The second inclusion is checked by reducing against a Gröbner basis of
    the generators computed with this module's own naive Buchberger.
    """
    ref = naive_buchberger(generators)
    return all(not naive_reduce(g, basis) for g in generators) and all(not naive_reduce(b, ref) for b in basis)


def naive_buchberger(generators):
    G = [g for g in generators if g]
    pairs = list(itertools.combinations(range(len(G)), 2))
    while pairs:
        i, j = pairs.pop()
        r = naive_reduce(s_polynomial(G[i], G[j]), G)
        if r:
            G.append(r)
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    return G


def module_element_zero(columns, syz, ring) -> bool:
    """``sum_j syz_j * columns_j == 0`` componentwise with plain arithmetic."""
    rank = len(columns[0])
    total = [ring.zero() for _ in range(rank)]
    for s, col in zip(syz, columns):
        for i in range(rank):
            total[i] = total[i] + s * col[i]
    return all(not t for t in total)


def monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for a in range(d + 1):
        for rest in monomials_of_degree(nvars - 1, d - a):
            yield (a,) + rest


def hilbert_function_cyclic(ring, generators, d: int) -> int:
    """``dim_k (R/I)_d`` by counting standard monomials of a naive Gröbner basis."""
    if d < 0:
        return 0
    leads = [g.lead_monomial for g in naive_buchberger([g for g in generators if g])]
    return sum(
        1 for m in monomials_of_degree(ring.nvars, d)
        if not any(all(a <= b for a, b in zip(l, m)) for l in leads)
    )


def free_dim(nvars: int, d: int) -> int:
    from math import comb
    return comb(d + nvars - 1, nvars - 1) if d >= 0 else 0


def series_coeffs(tpoly, nvars: int, upto: int) -> list:
    """First coefficients of ``N(t) / (1 - t)^n``."""
    return [sum(c * free_dim(nvars, d - e) for e, c in tpoly.coeffs.items()) for d in range(upto)]


def evaluate(f, point):
    """Value of ``f`` at a point given as a sequence of field elements."""
    F = f.ring.field
    total = 0
    for m, c in f.coeffs.items():
        v = c
        for a, e in zip(point, m):
            v = v * pow(a, e) if e else v
        total = F.normalize(total + v)
    return total


def brute_matmul(F, A, B):
    n, k, m = len(A), len(B), len(B[0])
    return tuple(tuple(F.normalize(sum(A[i][l] * B[l][j] for l in range(k))) for j in range(m)) for i in range(n))


def brute_det(F, M):
    """Leibniz expansion; only for tiny matrices."""
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term = term * M[i][perm[i]]
        total = F.normalize(total + term)
    return total

"""Independent brute-force oracles shared by the tests.

Everything here is deliberately naive (dense lists, no precision tracking, no
reuse of the library's arithmetic kernels) so that derived expected values are
computed along a different path than the code under test.
"""

from modunits.unit_lattice import ExpVector, is_in_S


def dense_mul(a, b, cap):
    """Multiply dense coefficient lists (index = exponent numerator), truncated
    below exponent cap."""
    out = [0] * cap
    for i, x in enumerate(a[:cap]):
        if not x:
            continue
        for j, y in enumerate(b[: cap - i]):
            if y:
                out[i + j] += x * y
    return out


def dense_product_of_factors(exponents, cap):
    """Expand prod (1 - x^e) for e in exponents, truncated below cap."""
    out = [0] * cap
    out[0] = 1
    for e in exponents:
        factor = [0] * cap
        factor[0] = 1
        if e < cap:
            factor[e] = -1
        out = dense_mul(out, factor, cap)
    return out


def siegel_factor_exponents(k, N, cap):
    """All product-formula exponent numerators below cap for the (k/N, 0) series."""
    exps = [k] if k < cap else []
    n = 1
    while n * N - k < cap:
        exps.append(n * N - k)
        if n * N + k < cap:
            exps.append(n * N + k)
        n += 1
    return exps


def dense_h_star(k, N, cap):
    return dense_product_of_factors(siegel_factor_exponents(k, N, cap), cap)


def sylvester_resultant_in_C(f, g):
    """Resultant with respect to C of two polynomials in Z[B, C], as an element
    of Z[B] (a BivarPoly with deg_C = 0), via cofactor expansion of the
    Sylvester matrix.  Only suitable for small degrees."""
    from modunits.bivar_poly import BivarPoly, ZERO

    def c_coeffs(p):
        d = p.deg_C
        rows = [dict() for _ in range(d + 1)]
        for (i, j), c in p.terms.items():
            rows[j][(i, 0)] = c
        return [BivarPoly(r) for r in rows]

    fc = c_coeffs(f)
    gc = c_coeffs(g)
    n, m = len(fc) - 1, len(gc) - 1
    size = n + m
    mat = [[ZERO] * size for _ in range(size)]
    for r in range(m):
        for k, coeff in enumerate(reversed(fc)):
            mat[r][r + k] = coeff
    for r in range(n):
        for k, coeff in enumerate(reversed(gc)):
            mat[m + r][r + k] = coeff

    def det(rows):
        if len(rows) == 1:
            return rows[0][0]
        total = ZERO
        for col, top in enumerate(rows[0]):
            if top.is_zero:
                continue
            minor = [row[:col] + row[col + 1 :] for row in rows[1:]]
            term = top * det(minor)
            total = total + (term if col % 2 == 0 else -term)
        return total

    return det(mat)


def random_vector_in_S(rng, N, bound=5):
    """Rejection-sample an exponent vector in S with entries in [-bound, bound]."""
    m = N // 2
    while True:
        vec = ExpVector(N, tuple(rng.randint(-bound, bound) for _ in range(m)))
        if is_in_S(vec):
            return vec


def brute_force_membership(target, basis, box=80):
    """Solve target = x*b1 + y*b2 over Z by exhaustive search (rank-2 only)."""
    b1, b2 = basis
    for x in range(-box, box + 1):
        rest0 = target[0] - x * b1[0]
        rest1 = target[1] - x * b1[1]
        for y in range(-box, box + 1):
            if rest0 == y * b2[0] and rest1 == y * b2[1]:
                return x, y
    return None

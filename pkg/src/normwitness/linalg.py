"""Exact dense linear algebra over scalar domains and commutative rings.

Matrices are tuples of row tuples.  Determinants over integral domains use
fraction-free Bareiss elimination (every division is exact in the domain,
which keeps the local instance representable); determinants over rings
with zero divisors, and characteristic polynomials, use division-free
cofactor expansion — all our matrices are tiny.
"""

from .errors import ZeroDivisor


def identity(n, zero, one):
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def transpose(m):
    return tuple(zip(*m))


def mat_mul(a, b, zero):
    bt = transpose(b)
    return tuple(
        tuple(_dot(row, col, zero) for col in bt) for row in a
    )


def mat_vec(a, v, zero):
    return tuple(_dot(row, v, zero) for row in a)


def _dot(u, v, zero):
    acc = zero
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def det_bareiss(domain, rows):
    """Determinant over an integral domain by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return domain.one
    zero = domain.zero
    sign = 1
    prev = domain.one
    for k in range(n - 1):
        if a[k][k] == zero:
            for i in range(k + 1, n):
                if a[i][k] != zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = zero
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def det_cofactor(rows, zero, one):
    """Determinant by minor expansion; valid over any commutative ring."""
    n = len(rows)
    if n == 0:
        return one

    def minor_det(rs):
        k = len(rs)
        if k == 1:
            return rs[0][0]
        acc = zero
        for i in range(k):
            if rs[i][0] == zero:
                continue
            sub = [rs[r][1:] for r in range(k) if r != i]
            term = rs[i][0] * minor_det(sub)
            acc = acc - term if i % 2 else acc + term
        return acc

    return minor_det([list(r) for r in rows])


def det(domain, rows):
    """Determinant dispatch: Bareiss over fields, division-free cofactor
    expansion elsewhere (the local instance pays dearly for the exact
    divisions Bareiss makes; our matrices are tiny anyway)."""
    if domain.is_field and domain.is_integral:
        return det_bareiss(domain, rows)
    return det_cofactor(rows, domain.zero, domain.one)


def solve(domain, a, b):
    """Solve a·x = b for invertible-over-the-domain a; b is n x k.

    Over a field: Gauss-Jordan with nonzero pivots.  Over the local
    instance: Cramer's rule with division-free determinants, so fractions
    enter only through the final division by det(a).  Raises ZeroDivisor
    when a is not invertible over the domain.
    """
    n = len(a)
    if not domain.is_field:
        d = det_cofactor(a, domain.zero, domain.one)
        if not domain.is_unit(d):
            raise ZeroDivisor("matrix is not invertible over the base")
        dinv = domain.invert(d)
        k = len(b[0]) if n else 0
        cols = []
        for j in range(k):
            col = []
            for i in range(n):
                replaced = [
                    [
                        b[r][j] if c == i else a[r][c]
                        for c in range(n)
                    ]
                    for r in range(n)
                ]
                col.append(
                    det_cofactor(replaced, domain.zero, domain.one) * dinv
                )
            cols.append(col)
        return tuple(tuple(cols[j][i] for j in range(k)) for i in range(n))
    k = len(b[0]) if n else 0
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if domain.is_unit(aug[r][col]):
                piv = r
                break
        if piv is None:
            raise ZeroDivisor("matrix is not invertible over the base")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = domain.invert(aug[col][col])
        aug[col] = [inv * v for v in aug[col]]
        for r in range(n):
            if r == col:
                continue
            f = aug[r][col]
            if f == domain.zero:
                continue
            aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(aug[i][n:]) for i in range(n))


def inverse(domain, a):
    n = len(a)
    return solve(domain, a, identity(n, domain.zero, domain.one))

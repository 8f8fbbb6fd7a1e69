"""Quadratic spaces with a symmetric Gram matrix, 2 a unit throughout.

Conventions fixed here once and for all: q(v) = v^T G v, and the bilinear
pairing is the half-polarization <v, w> = v^T G w, so <v, v> = q(v) and
q(v + w) = q(v) + 2<v, w> + q(w).  Formulas needing the full polarization
write 2<v, w> explicitly.

The coordinate ring may be a scalar domain or an etale algebra (after
base_change); both expose the same protocol.  Vectors are plain tuples.
"""

from . import linalg
from .errors import IsotropicMirror, MathError


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


class QuadraticSpace:
    __slots__ = ("domain", "gram")

    def __init__(self, domain, gram, *, check=True):
        rows = tuple(tuple(domain.coerce(c) for c in row) for row in gram)
        m = len(rows)
        if m < 1 or any(len(r) != m for r in rows):
            raise ValueError("gram matrix must be square of rank >= 1")
        for i in range(m):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        self.domain = domain
        self.gram = rows
        if check:
            d = linalg.det(domain, rows)
            if not domain.is_unit(d):
                raise ValueError("gram determinant must be a unit (nondegenerate)")

    @property
    def rank(self):
        return len(self.gram)

    def _check_dim(self, v):
        if len(v) != self.rank:
            raise ValueError(f"vector length {len(v)} != rank {self.rank}")

    def bilinear(self, v, w):
        """<v, w> = v^T G w (half-polarization)."""
        self._check_dim(v)
        self._check_dim(w)
        acc = None
        for i, gi in enumerate(self.gram):
            row = None
            for j, g in enumerate(gi):
                term = g * w[j]
                row = term if row is None else row + term
            term = v[i] * row
            acc = term if acc is None else acc + term
        return acc

    def evaluate(self, v):
        """q(v) = v^T G v, exact."""
        return self.bilinear(v, v)

    def base_change(self, algebra):
        """The same form with coordinates in the algebra."""
        if algebra.base != self.domain:
            raise ValueError("algebra must extend the space's base")
        gram = tuple(
            tuple(algebra.from_base(c) for c in row) for row in self.gram
        )
        return QuadraticSpace(algebra, gram, check=False)

    def random_vector(self, sampler):
        return tuple(
            self.domain.sample(sampler.rng, sampler.height)
            for _ in range(self.rank)
        )

    def basis_vector(self, i):
        return tuple(
            self.domain.one if j == i else self.domain.zero
            for j in range(self.rank)
        )

    def diagonalize(self):
        """Orthogonal basis with unit values: returns (P, diag) with
        P^T G P = diag(d_1..d_m) exactly, P's columns the basis vectors."""
        dom = self.domain
        m = self.rank
        basis = [self.basis_vector(i) for i in range(m)]
        for k in range(m):
            pivot = None
            for i in range(k, m):
                if dom.is_unit(self.evaluate(basis[i])):
                    pivot = i
                    break
            if pivot is None:
                # all remaining vectors isotropic: mix in an off-diagonal
                # unit pairing (q(b_i + b_j) = q(b_i) + 2<b_i,b_j> + q(b_j),
                # a unit since 2 is)
                for i in range(k, m):
                    for j in range(k, m):
                        if i == j:
                            continue
                        cand = vec_add(basis[i], basis[j])
                        if dom.is_unit(self.evaluate(cand)):
                            basis[i] = cand
                            pivot = i
                            break
                    if pivot is not None:
                        break
            if pivot is None:
                raise MathError("cannot diagonalize: no unit pivot found")
            basis[k], basis[pivot] = basis[pivot], basis[k]
            bk = basis[k]
            dk_inv = dom.invert(self.evaluate(bk))
            for l in range(k + 1, m):
                c = self.bilinear(basis[l], bk) * dk_inv
                basis[l] = vec_sub(basis[l], vec_scale(c, bk))
        p = tuple(tuple(basis[j][i] for j in range(m)) for i in range(m))
        diag = tuple(self.evaluate(b) for b in basis)
        return p, diag

    def anisotropic_vector(self):
        """Some z with q(z) a unit (first diagonalization basis vector)."""
        p, _ = self.diagonalize()
        return tuple(p[i][0] for i in range(self.rank))

    def reflection(self, w, x):
        """tau_w(x) = x - (2<x, w>/q(w))·w; q(w) must be a unit."""
        qw = self.evaluate(w)
        if not self.domain.is_unit(qw):
            raise IsotropicMirror("mirror must have a unit q-value")
        b = self.bilinear(x, w)
        c = (b + b) * self.domain.invert(qw)
        return vec_sub(x, vec_scale(c, w))

    def reflection_matrix(self, w):
        cols = [self.reflection(w, self.basis_vector(j)) for j in range(self.rank)]
        return tuple(
            tuple(cols[j][i] for j in range(self.rank)) for i in range(self.rank)
        )

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticSpace)
            and other.domain == self.domain
            and other.gram == self.gram
        )

    def __hash__(self):
        return hash((self.domain, self.gram))

    def __repr__(self):
        return f"QuadraticSpace({self.domain!r}, {self.gram!r})"

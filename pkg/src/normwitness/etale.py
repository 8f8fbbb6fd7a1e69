"""Finite etale algebras base[t]/(f) with f monic separable.

Elements are canonical representatives of degree < n.  The algebra is not
assumed to be a field: when f is reducible there are zero divisors, and
every inversion failure is signalled as ZeroDivisor (callers in the
witness pipeline treat that as "resample", never as an abort).

Norms are multiplication-matrix determinants; the resultant route
``norm_via_resultant`` is kept as an independent oracle and never shares
code with the determinant route.  Minimal polynomials are characteristic
polynomials, valid at the only use site (primitive elements).

An EtaleAlgebra also satisfies the scalar-domain protocol (zero/one,
coerce, is_unit, invert, sample), so quadratic spaces can be base-changed
to it without special cases.
"""

from . import linalg
from .errors import AlgebraMismatch, NotPrimitive, ZeroDivisor
from .poly import Polynomial, xgcd


class EtaleAlgebra:
    is_field = False
    is_local = False
    is_integral = False  # reducible moduli give zero divisors

    def __init__(self, base, modulus, *, check=True):
        if not isinstance(modulus, Polynomial):
            modulus = Polynomial(base, modulus)
        if not modulus.is_monic or modulus.degree < 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if check and not modulus.is_separable():
            raise ValueError("modulus must be separable")
        self.base = base
        self.modulus = modulus

    @property
    def tag(self):
        return f"{self.base.tag}[t]/(deg {self.degree})"

    @property
    def degree(self):
        return self.modulus.degree

    def element(self, rep):
        if not isinstance(rep, Polynomial):
            rep = Polynomial(self.base, rep)
        if rep.degree >= self.degree:
            _, rep = rep.divmod_monic(self.modulus)
        return AlgebraElement(self, rep)

    @property
    def zero(self):
        return AlgebraElement(self, Polynomial.zero(self.base))

    @property
    def one(self):
        return AlgebraElement(self, Polynomial.one(self.base))

    def gen(self):
        """The class of t."""
        return self.element(Polynomial.variable(self.base))

    def from_base(self, s):
        return AlgebraElement(
            self, Polynomial.constant(self.base, self.base.coerce(s))
        )

    def from_int(self, k):
        return self.from_base(self.base.from_int(k))

    def coerce(self, v):
        if isinstance(v, AlgebraElement):
            if v.parent != self:
                raise AlgebraMismatch("element of a different algebra")
            return v
        return self.from_base(self.base.coerce(v))

    def is_unit(self, a):
        return self.coerce(a).is_unit()

    def invert(self, a):
        return self.coerce(a).inverse()

    def sample(self, rng, height):
        return self.element(
            [self.base.sample(rng, height) for _ in range(self.degree)]
        )

    def reduce_mod_maximal(self):
        """Residue algebra over the residue field plus the element map."""
        if not self.base.is_local:
            raise TypeError("base is not a local domain")
        res_domain = self.base.residue_domain
        res_alg = EtaleAlgebra(
            res_domain, self.modulus.map_coefficients(self.base.residue, res_domain)
        )

        def reduce_element(a):
            if a.parent != self:
                raise AlgebraMismatch("element of a different algebra")
            return res_alg.element(
                a.rep.map_coefficients(self.base.residue, res_domain)
            )

        return res_alg, reduce_element

    def expand_coordinates(self, vec):
        """n x m matrix of standard-basis coordinates (column j = vec[j])."""
        for a in vec:
            if a.parent != self:
                raise AlgebraMismatch("element of a different algebra")
        n = self.degree
        return tuple(
            tuple(a.rep.coefficient(i) for a in vec) for i in range(n)
        )

    def contract(self, matrix):
        """Inverse of expand_coordinates: columns back to polynomials."""
        m = len(matrix[0]) if matrix else 0
        return tuple(
            Polynomial(self.base, [row[j] for row in matrix]) for j in range(m)
        )

    def power_basis_coordinates(self, alpha, vec):
        """Coordinates of vec in the power basis 1, alpha, ..., alpha^(n-1).

        Solves P^T · y = x column-wise, where P is alpha's power-basis
        matrix; alpha must be primitive for the solve to have unit pivots.
        For alpha = t the power basis is the standard basis and no solve
        is needed.
        """
        std = self.expand_coordinates(vec)
        if alpha == self.gen():
            return std
        pbm = alpha.power_basis_matrix()
        return linalg.solve(self.base, linalg.transpose(pbm), std)

    def elements(self):
        """All elements; only sensible over a prime field."""
        import itertools

        pool = self.base.elements()
        return [
            self.element(list(cs))
            for cs in itertools.product(pool, repeat=self.degree)
        ]

    def __eq__(self, other):
        return (
            isinstance(other, EtaleAlgebra)
            and other.base == self.base
            and other.modulus.coeffs == self.modulus.coeffs
        )

    def __hash__(self):
        return hash((self.base, self.modulus.coeffs))

    def __repr__(self):
        return f"EtaleAlgebra({self.base!r}, {self.modulus!r})"


class AlgebraElement:
    __slots__ = ("parent", "rep")

    def __init__(self, parent, rep):
        self.parent = parent
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.parent != self.parent:
                raise AlgebraMismatch("elements of different algebras")
            return other
        try:
            return self.parent.from_base(self.parent.base.coerce(other))
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgebraElement(self.parent, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.parent, -self.rep)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgebraElement(self.parent, self.rep - other.rep)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.parent.element(self.rep * other.rep)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.parent.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            if other.parent != self.parent:
                return False
            return self.rep == other.rep
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.rep == coerced.rep

    def __hash__(self):
        return hash(self.rep.coeffs)

    def __bool__(self):
        return not self.rep.is_zero

    def __repr__(self):
        return f"[{self.rep!r}]"

    @property
    def is_zero(self):
        return self.rep.is_zero

    def multiplication_matrix(self):
        """n x n matrix M over the base with M·coords(x) = coords(self·x)."""
        n = self.parent.degree
        cols = []
        current = self.rep
        for _ in range(n):
            cols.append([current.coefficient(i) for i in range(n)])
            current = (current * Polynomial.variable(self.parent.base)).divmod_monic(
                self.parent.modulus
            )[1]
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def norm(self):
        """Determinant of the multiplication matrix."""
        return linalg.det(self.parent.base, self.multiplication_matrix())

    def norm_via_resultant(self):
        """Independent norm route: Res(modulus, representative)."""
        from .poly import resultant

        return resultant(self.parent.modulus, self.rep)

    def trace(self):
        m = self.multiplication_matrix()
        acc = self.parent.base.zero
        for i in range(len(m)):
            acc = acc + m[i][i]
        return acc

    def is_unit(self):
        if self.rep.is_zero:
            return False
        base = self.parent.base
        if base.is_field:
            from .poly import gcd

            return gcd(self.rep, self.parent.modulus).degree == 0
        if base.is_local:
            res_alg, red = self.parent.reduce_mod_maximal()
            return red(self).is_unit()
        raise TypeError("unsupported base")

    def inverse(self):
        """Inverse via extended gcd (field base) or a unit-pivot solve on
        the multiplication matrix (local base); ZeroDivisor on failure."""
        if self.rep.is_zero:
            raise ZeroDivisor("0 is not invertible")
        base = self.parent.base
        if base.is_field:
            g, s, _ = xgcd(self.rep, self.parent.modulus)
            if g.degree > 0:
                raise ZeroDivisor(f"{self!r} is a zero divisor")
            return self.parent.element(s)
        n = self.parent.degree
        e0 = tuple(
            (base.one,) if i == 0 else (base.zero,) for i in range(n)
        )
        cols = linalg.solve(base, self.multiplication_matrix(), e0)
        return self.parent.element([cols[i][0] for i in range(n)])

    def power_basis_matrix(self):
        """Row i = standard coordinates of self**i."""
        n = self.parent.degree
        rows = []
        acc = self.parent.one
        for _ in range(n):
            rows.append(tuple(acc.rep.coefficient(i) for i in range(n)))
            acc = acc * self
        return tuple(rows)

    def is_primitive(self):
        """True when 1, a, ..., a^(n-1) is a basis: the power-basis
        determinant is a unit in the base."""
        d = linalg.det(self.parent.base, self.power_basis_matrix())
        return self.parent.base.is_unit(d)

    def minimal_polynomial(self):
        """Characteristic polynomial of the multiplication matrix; only
        the primitive case is supported (the only one needed).  For the
        generator t it is the modulus itself."""
        if self == self.parent.gen():
            return self.parent.modulus
        if not self.is_primitive():
            raise NotPrimitive(f"{self!r} is not primitive")
        return charpoly(self.parent.base, self.multiplication_matrix())


def charpoly(base, matrix):
    """det(t·I - M) by division-free cofactor expansion over base[t]."""
    n = len(matrix)
    t = Polynomial.variable(base)
    entries = [
        [
            t - Polynomial.constant(base, matrix[i][j])
            if i == j
            else Polynomial.constant(base, -matrix[i][j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    return linalg.det_cofactor(entries, Polynomial.zero(base), Polynomial.one(base))

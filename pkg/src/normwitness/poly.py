"""Dense univariate polynomials over any scalar domain.

Coefficients are stored ascending with no trailing zeros; the empty tuple
is the zero polynomial, whose degree is -1.  Division is exact: monic
divisors work over every domain, non-monic divisors only over fields.
gcd and the extended variant require field coefficients.  Separability
over the local instance is decided on the residue reduction.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import linalg
from .errors import (
    NonMonicDivisor,
    UndefinedGcd,
    UndefinedSeparability,
)


def _int_cleared(coeffs):
    """(lcm of denominators, integer coefficient list)."""
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return lcm, [int(c.numerator * (lcm // c.denominator)) for c in coeffs]


class Polynomial:
    __slots__ = ("domain", "coeffs")

    def __init__(self, domain, coeffs=()):
        cs = [domain.coerce(c) for c in coeffs]
        while cs and cs[-1] == domain.zero:
            cs.pop()
        self.domain = domain
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, domain):
        return cls(domain, ())

    @classmethod
    def one(cls, domain):
        return cls(domain, (domain.one,))

    @classmethod
    def constant(cls, domain, c):
        return cls(domain, (c,))

    @classmethod
    def variable(cls, domain):
        return cls(domain, (domain.zero, domain.one))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            return self.domain.zero
        return self.coeffs[-1]

    @property
    def constant_term(self):
        if not self.coeffs:
            return self.domain.zero
        return self.coeffs[0]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.domain.one

    def coefficient(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        try:
            return Polynomial.constant(self.domain, self.domain.coerce(other))
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(self.domain, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.domain, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                s = self.domain.coerce(other)
            except TypeError:
                return NotImplemented
            return Polynomial(self.domain, [s * c for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return Polynomial.zero(self.domain)
        if (
            type(self.domain.zero) is Fraction
            and len(self.coeffs) + len(other.coeffs) > 12
        ):
            # clear denominators once and convolve plain integers; a
            # Fraction op per product term costs two integer gcds, which
            # dominates at the degrees the local pipeline reaches
            la, ia = _int_cleared(self.coeffs)
            lb, ib = _int_cleared(other.coeffs)
            out = [0] * (len(ia) + len(ib) - 1)
            for i, a in enumerate(ia):
                if a:
                    for j, b in enumerate(ib):
                        out[i + j] += a * b
            den = la * lb
            return Polynomial(self.domain, [Fraction(v, den) for v in out])
        zero = self.domain.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.domain, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        acc = Polynomial.one(self.domain)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, x):
        """Horner evaluation; x may live in any ring containing the base."""
        acc = x * self.domain.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_monic(self, divisor):
        """Exact division with remainder by a monic divisor.

        Over a field a non-monic divisor is normalized first; elsewhere it
        signals NonMonicDivisor.
        """
        if divisor.is_zero:
            raise NonMonicDivisor("division by the zero polynomial")
        if not divisor.is_monic:
            if not self.domain.is_field:
                raise NonMonicDivisor(
                    "monic divisor required outside field coefficients"
                )
            inv = self.domain.invert(divisor.leading)
            q, r = self.divmod_monic(divisor * inv)
            return q * inv, r
        zero = self.domain.zero
        dd = divisor.degree
        rem = list(self.coeffs)
        if len(rem) <= dd:
            return Polynomial.zero(self.domain), self
        qcoeffs = [zero] * (len(rem) - dd)
        for k in range(len(rem) - dd - 1, -1, -1):
            c = rem[k + dd]
            if c == zero:
                continue
            qcoeffs[k] = c
            for i, dcoef in enumerate(divisor.coeffs):
                rem[k + i] = rem[k + i] - c * dcoef
        return Polynomial(self.domain, qcoeffs), Polynomial(self.domain, rem[:dd])

    def monic(self):
        if self.is_zero:
            return self
        inv = self.domain.invert(self.leading)
        return self * inv

    def derivative(self):
        return Polynomial(
            self.domain,
            [self.domain.from_int(i) * c for i, c in enumerate(self.coeffs)][1:],
        )

    def map_coefficients(self, fn, domain):
        return Polynomial(domain, [fn(c) for c in self.coeffs])

    def is_separable(self):
        """Squarefree test: gcd with the derivative over a field, the
        residue reduction over the local instance."""
        if self.is_zero:
            raise UndefinedSeparability("zero polynomial")
        if self.domain.is_local:
            reduced = self.map_coefficients(
                self.domain.residue, self.domain.residue_domain
            )
            if reduced.degree != self.degree:
                return False
            return reduced.is_separable()
        return gcd(self, self.derivative()).degree == 0

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == self.domain.zero:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"({c})*t")
            else:
                parts.append(f"({c})*t^{i}")
        return " + ".join(parts)


def gcd(a, b):
    """Monic greatest common divisor over a field."""
    if a.is_zero and b.is_zero:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    if not a.domain.is_field:
        raise TypeError("polynomial gcd needs field coefficients")
    while not b.is_zero:
        _, r = a.divmod_monic(b)
        a, b = b, (r.monic() if not r.is_zero else r)
    return a.monic()


def xgcd(a, b):
    """Extended gcd over a field: returns (g, s, t) with s·a + t·b = g monic.

    Remainders are monic-normalized at every step (with the cofactors
    scaled to match); without this the Euclid chain's coefficients blow
    up combinatorially over Q.
    """
    if a.is_zero and b.is_zero:
        raise UndefinedGcd("gcd(0, 0) is undefined")
    if not a.domain.is_field:
        raise TypeError("polynomial gcd needs field coefficients")
    dom = a.domain
    r0, r1 = a, b
    s0, s1 = Polynomial.one(dom), Polynomial.zero(dom)
    t0, t1 = Polynomial.zero(dom), Polynomial.one(dom)
    while not r1.is_zero:
        q, r = r0.divmod_monic(r1)
        if not r.is_zero:
            inv = dom.invert(r.leading)
            r0, r1 = r1, r * inv
            s0, s1 = s1, (s0 - q * s1) * inv
            t0, t1 = t1, (t0 - q * t1) * inv
        else:
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
    lead = dom.invert(r0.leading)
    return r0 * lead, s0 * lead, t0 * lead


def resultant(f, g):
    """Sylvester determinant; for monic f it equals the product of g over
    the roots of f, i.e. the norm of g in domain[t]/(f)."""
    if not f.is_monic or f.degree < 1:
        raise NonMonicDivisor("resultant requires a monic nonconstant f")
    if g.is_zero:
        return f.domain.zero
    n, d = f.degree, g.degree
    zero = f.domain.zero
    size = n + d
    fdesc = list(reversed(f.coeffs))
    gdesc = list(reversed(g.coeffs))
    rows = []
    for i in range(d):
        rows.append([zero] * i + fdesc + [zero] * (size - i - n - 1))
    for i in range(n):
        rows.append([zero] * i + gdesc + [zero] * (size - i - d - 1))
    return linalg.det_bareiss(f.domain, rows)

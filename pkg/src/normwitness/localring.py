"""Rational functions regular at the origin: the local-domain instance.

Elements are reduced fractions num(x)/den(x) of polynomials over Q with
den(0) != 0 and den monic (constants normalize to denominator 1).  The
maximal ideal is the set of functions vanishing at 0, the residue field
is Q via evaluation at 0, and a fraction is a unit exactly when its
residue is nonzero.  Division is only allowed when the result is again
regular at the origin; otherwise NotAUnit is raised.

Following the design decision in the square-test contract, ``is_square``
on a unit compares the square class of the residue; every consumer of
square classes goes through the residue.
"""

import math
from fractions import Fraction

from .domains import QQ
from .errors import NotAUnit
from .poly import Polynomial


def _as_poly(v):
    if isinstance(v, Polynomial):
        if v.domain != QQ:
            raise TypeError("numerator/denominator must be polynomials over Q")
        return v
    if isinstance(v, (int, Fraction)):
        return Polynomial.constant(QQ, Fraction(v))
    if isinstance(v, (list, tuple)):
        return Polynomial(QQ, v)
    raise TypeError(f"cannot build a Q[x] polynomial from {v!r}")


_ONE = None  # set after class creation

# Fraction-of-polynomial reduction is the hot path of the local ring; a
# full rational-Euclid gcd per operation is ruinously slow.  Instead:
# certify the (generic) coprime case with one Euclid modulo a word prime
# (sound: for p not dividing either leading coefficient, the mod-p gcd
# degree bounds the rational one from above), and fall back to an integer
# primitive-PRS gcd when real cancellation shows up.

_PRIMES = (2147483647, 2147483629, 2147483587)


def _int_coeffs(p):
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c.numerator * (lcm // c.denominator)) for c in p.coeffs]


def _gcd_mod_is_const(a, b, p):
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = a[-1] * inv % p
            if c:
                off = len(a) - 1 - db
                for i in range(db):
                    a[off + i] = (a[off + i] - c * b[i]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) == 1


def _int_content_strip(v):
    g = 0
    for c in v:
        g = math.gcd(g, c)
        if g == 1:
            return v
    return [c // g for c in v]


def _int_prem(a, b):
    """Fraction-free remainder with minimal scaling: each step scales by
    lc(b)/gcd instead of lc(b), and content is stripped periodically to
    stop coefficient explosion inside long division chains."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    step = 0
    while r and len(r) - 1 >= db:
        c = r[-1]
        g = math.gcd(lb, c)
        scale, c2 = lb // g, c // g
        if scale == 1:
            r = r[:-1]
        else:
            r = [scale * v for v in r[:-1]]
        off = len(r) - db
        for i in range(db):
            r[off + i] -= c2 * b[i]
        while r and r[-1] == 0:
            r.pop()
        step += 1
        if step % 4 == 0 and r:
            r = _int_content_strip(r)
    return r


def _int_gcd_lists(a, b):
    a = _int_content_strip(a)
    b = _int_content_strip(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, (_int_content_strip(r) if r else [])
    return a


def poly_lcm(a, b):
    """lcm of two monic polynomials over Q (monic result)."""
    g = _poly_gcd(a, b)
    if g is None:
        return a * b
    q, _ = b.divmod_monic(g)
    return a * q


def denominator_lcm(values):
    """Monic lcm of the denominators of LocalFunction values."""
    acc = Polynomial.one(QQ)
    for v in values:
        if v.den.degree > 0:
            acc = poly_lcm(acc, v.den) if acc.degree > 0 else v.den
    return acc


def _poly_gcd(a, b):
    """Nonconstant gcd of two Q[x] polynomials, or None when coprime."""
    ia, ib = _int_coeffs(a), _int_coeffs(b)
    for p in _PRIMES:
        am = [v % p for v in ia]
        bm = [v % p for v in ib]
        if am[-1] == 0 or bm[-1] == 0:
            continue  # unlucky prime: leading coefficient vanished
        if _gcd_mod_is_const(am, bm, p):
            return None
        break
    g = _int_gcd_lists(ia, ib)
    if len(g) == 1:
        return None
    lead = g[-1]
    return Polynomial(QQ, [Fraction(c, lead) for c in g])


def _normalized(num, den):
    """Build a reduced LocalFunction from an already-coprime pair."""
    out = object.__new__(LocalFunction)
    if num.is_zero:
        out.num = num
        out.den = _ONE
        return out
    lead = den.leading
    if lead != QQ.one:
        inv = 1 / lead
        num = num * inv
        den = den * inv
    if den.constant_term == 0:
        raise NotAUnit(f"{num!r}/{den!r} is not regular at the origin")
    out.num = num
    out.den = den
    return out


def _cancel(a, b):
    """(a/g, b/g) for g = gcd(a, b); cheap when either side is constant."""
    if a.degree < 1 or b.degree < 1:
        return a, b
    g = _poly_gcd(a, b)
    if g is not None:
        a, _ = a.divmod_monic(g)
        b, _ = b.divmod_monic(g)
    return a, b


class LocalFunction:
    """One reduced fraction num/den with den(0) != 0, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        num, den = _cancel(num, den)
        built = _normalized(num, den)
        self.num = built.num
        self.den = built.den

    @staticmethod
    def _coerce(other):
        if isinstance(other, LocalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return LocalFunction(other)
        if isinstance(other, Polynomial) and other.domain == QQ:
            return LocalFunction(other)
        return None

    def residue(self):
        return self.num.constant_term / self.den.constant_term

    @property
    def is_zero(self):
        return self.num.is_zero

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d1, d2 = self.den, other.den
        if d1 == d2:
            num, den = _cancel(self.num + other.num, d1)
            return _normalized(num, den)
        # cancel the denominator gcd first (classic rational addition)
        g1, g2 = _cancel(d1, d2)  # d1/g, d2/g
        num = self.num * g2 + other.num * g1
        den = d1 * g2
        num, den = _cancel(num, den)
        return _normalized(num, den)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(LocalFunction)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        # cross-cancel before multiplying to keep gcd inputs small
        n1, d2 = _cancel(self.num, other.den)
        n2, d1 = _cancel(other.num, self.den)
        return _normalized(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero:
            raise ZeroDivisionError("division by zero")
        n1, n2 = _cancel(self.num, other.num)
        d1, d2 = _cancel(self.den, other.den)
        return _normalized(n1 * d2, d1 * n2)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e):
        if e < 0:
            return LocalFunction(self.den, self.num) ** (-e)
        out = object.__new__(LocalFunction)
        out.num = self.num**e
        out.den = self.den**e
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __bool__(self):
        return not self.num.is_zero

    def __repr__(self):
        if self.den == Polynomial.one(QQ):
            return f"({self.num!r})"
        return f"({self.num!r})/({self.den!r})"


class LocalFunctionRing:
    """Scalar domain for rational functions regular at 0."""

    is_field = False
    is_local = True
    is_integral = True
    tag = "Qx0"
    residue_domain = QQ

    zero = None  # set after class creation
    one = None

    def from_int(self, k):
        return LocalFunction(k)

    def coerce(self, v):
        if isinstance(v, LocalFunction):
            return v
        if isinstance(v, (int, Fraction, Polynomial)):
            return LocalFunction(v)
        raise TypeError(f"cannot coerce {v!r} into the local ring")

    def element(self, num, den=1):
        return LocalFunction(_as_poly(num), _as_poly(den))

    @property
    def x(self):
        return LocalFunction(Polynomial.variable(QQ))

    def residue(self, v):
        return self.coerce(v).residue()

    def lift(self, r):
        """Constant lift of a residue-field value."""
        return LocalFunction(Fraction(r))

    def is_unit(self, v):
        return self.coerce(v).residue() != 0

    def invert(self, v):
        v = self.coerce(v)
        if v.is_zero or v.residue() == 0:
            raise NotAUnit(f"{v!r} is not a unit (vanishes at the origin)")
        return LocalFunction(v.den, v.num)

    def is_square(self, v):
        """Square class of the residue; defined on units only."""
        v = self.coerce(v)
        if not self.is_unit(v):
            raise NotAUnit("is_square is defined on units of the local ring")
        return QQ.is_square(v.residue())

    def sample(self, rng, height):
        num = [rng.randint(-height, height) for _ in range(rng.randint(1, 3))]
        den = [rng.choice([k for k in range(-height, height + 1) if k])]
        den += [rng.randint(-height, height) for _ in range(rng.randint(0, 2))]
        f = LocalFunction(Polynomial(QQ, num), Polynomial(QQ, den))
        return f

    def __eq__(self, other):
        return isinstance(other, LocalFunctionRing)

    def __hash__(self):
        return hash("Qx0")

    def __repr__(self):
        return "LocalFunctionRing()"


_ONE = Polynomial.one(QQ)
LocalFunctionRing.zero = LocalFunction(0)
LocalFunctionRing.one = LocalFunction(1)

QX0 = LocalFunctionRing()

"""Exact scalar arithmetic: the rationals, odd prime fields, and sampling.

A *scalar domain* is a small object bundling what generic code needs to
know about one kind of exact scalar:

    zero, one          constants
    from_int(k)        embed a Python integer
    coerce(x)          accept ints and already-valid scalars
    is_unit(x)         invertibility test
    invert(x)          inverse of a unit (NotAUnit otherwise)
    is_square(x)       exact square test
    sample(rng, h)     draw a random scalar of height <= h
    is_field, is_local, is_integral   structure flags
    tag                short name used by the textual encodings

Scalar values carry arithmetic through the usual operators: rationals are
plain ``fractions.Fraction``, prime-field values are ``PrimeFieldElement``,
and the local instance (rational functions regular at the origin) lives in
``localring``.  All values are immutable; samplers are the only mutable
state and are single-owner.
"""

import math
import random
from fractions import Fraction

from .errors import NotAUnit, SamplingExhausted


def _is_prime(n):
    # deterministic Miller-Rabin, exact for n < 3.3e24
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rationals:
    """The field Q, with elements represented by ``fractions.Fraction``."""

    is_field = True
    is_local = False
    is_integral = True
    tag = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, k):
        return Fraction(k)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def is_unit(self, x):
        return x != 0

    def invert(self, x):
        if x == 0:
            raise NotAUnit("0 is not invertible in Q")
        return 1 / x

    def is_square(self, x):
        x = self.coerce(x)
        if x < 0:
            return False
        n, d = x.numerator, x.denominator
        return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d

    def sample(self, rng, height):
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


QQ = Rationals()


class PrimeFieldElement:
    """A residue modulo an odd prime, reduced to [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return PrimeFieldElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return PrimeFieldElement(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return PrimeFieldElement(v * pow(self.value, -1, self.p), self.p)

    def __pow__(self, e):
        if e < 0 and self.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return PrimeFieldElement(pow(self.value, e, self.p), self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __eq__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is None else self.value == v

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} mod {self.p}"


class PrimeField:
    """The field F_p for an odd prime p.  p = 2 is rejected."""

    is_field = True
    is_local = False
    is_integral = True

    def __init__(self, p):
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.tag = f"Fp:{p}"
        self.zero = PrimeFieldElement(0, p)
        self.one = PrimeFieldElement(1, p)

    def from_int(self, k):
        return PrimeFieldElement(k, self.p)

    def coerce(self, x):
        if isinstance(x, PrimeFieldElement):
            if x.p != self.p:
                raise ValueError(f"element of F_{x.p} is not in F_{self.p}")
            return x
        if isinstance(x, int):
            return PrimeFieldElement(x, self.p)
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def is_unit(self, x):
        return self.coerce(x).value != 0

    def invert(self, x):
        x = self.coerce(x)
        if x.value == 0:
            raise NotAUnit(f"0 is not invertible in F_{self.p}")
        return PrimeFieldElement(pow(x.value, -1, self.p), self.p)

    def is_square(self, x):
        v = self.coerce(x).value
        # Euler's criterion; 0 counts as a square by convention
        return v == 0 or pow(v, (self.p - 1) // 2, self.p) == 1

    def sample(self, rng, height):
        return PrimeFieldElement(rng.randrange(self.p), self.p)

    def elements(self):
        return [PrimeFieldElement(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class DeterministicSampler:
    """Seeded randomness with a height bound and a retry budget.

    The same seed and bounds reproduce the same stream.  ``trials`` yields
    up to ``max_retries`` attempts and raises SamplingExhausted past the
    budget; ``peak_trials`` records the longest rejection loop seen, which
    the acceptance suite inspects.
    """

    def __init__(self, seed, height=9, max_retries=1000):
        self.seed = seed
        self.height = max(1, height)
        self.max_retries = max_retries
        self.rng = random.Random(seed)
        self.peak_trials = 0

    def trials(self, what=""):
        for i in range(self.max_retries):
            if i + 1 > self.peak_trials:
                self.peak_trials = i + 1
            yield i
        raise SamplingExhausted(
            f"no {what or 'candidate'} found in {self.max_retries} draws"
        )

    def scalar(self, domain):
        return domain.sample(self.rng, self.height)

    def vector(self, domain, m):
        return tuple(domain.sample(self.rng, self.height) for _ in range(m))

    def coin(self):
        return self.rng.randrange(2)

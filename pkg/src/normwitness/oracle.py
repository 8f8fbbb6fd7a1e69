"""Brute-force ground truth over small prime fields.

Everything here is deliberately independent of the main code path: plain
integers mod p, tuple-encoded residue-ring elements, and a hand-rolled
Sylvester determinant for norms.  The oracle enumerates represented
values, the groups D_q / D0_q / D1_q, and checks both norm-principle
inclusions exhaustively; it also cross-checks witnesses at moderate p.

Exhaustive scope is capped by an explicit product-size guard, not by
hard-coded rank or degree constants.
"""

import itertools
from dataclasses import dataclass

from .errors import DomainTooLarge


# ----- integer polynomial helpers (coefficients ascending, mod p) -----


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a, f, p):
    # f monic
    a = list(a)
    df = len(f) - 1
    while len(a) > df:
        c = a[-1]
        if c:
            k = len(a) - 1 - df
            for i in range(df):
                a[k + i] = (a[k + i] - c * f[i]) % p
        a.pop()
    return _trim(a)


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        bm = tuple(c * inv % p for c in b)
        a, b = b, _pmod(a, bm, p)
    return a


def _pderiv(a, p):
    return _trim(tuple(i * a[i] % p for i in range(1, len(a))))


def _separable(f, p):
    g = _pgcd(f, _pderiv(f, p), p)
    return len(g) == 1


def _sylvester_norm(f, g, p):
    """Res(f, g) mod p for monic f: the norm of g in F_p[t]/(f)."""
    g = _trim(g)
    if not g:
        return 0
    n = len(f) - 1
    d = len(g) - 1
    size = n + d
    fdesc = list(reversed(f))
    gdesc = list(reversed(g))
    rows = []
    for i in range(d):
        rows.append([0] * i + fdesc + [0] * (size - i - n - 1))
    for i in range(n):
        rows.append([0] * i + gdesc + [0] * (size - i - d - 1))
    # gaussian elimination mod p with determinant tracking
    det = 1
    for col in range(size):
        piv = None
        for r in range(col, size):
            if rows[r][col] % p:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        pv = rows[col][col] % p
        det = det * pv % p
        inv = pow(pv, -1, p)
        for r in range(col + 1, size):
            fmul = rows[r][col] * inv % p
            if fmul:
                rows[r] = [
                    (x - fmul * y) % p for x, y in zip(rows[r], rows[col])
                ]
    return det % p


def monic_separable_moduli(p, degree):
    """All monic separable f of the given degree over F_p."""
    out = []
    for tail in itertools.product(range(p), repeat=degree):
        f = tuple(tail) + (1,)
        if _separable(f, p):
            out.append(f)
    return out


class ResidueRing:
    """F_p[t]/(f) with tuple-encoded elements and cached tables."""

    def __init__(self, p, f):
        self.p = p
        self.f = _trim(f)
        self.n = len(self.f) - 1
        self.one = (1,)
        self.elements = [
            _trim(c) for c in itertools.product(range(p), repeat=self.n)
        ]
        self._norms = {e: _sylvester_norm(self.f, e, p) for e in self.elements}
        self.units = frozenset(e for e, nv in self._norms.items() if nv)
        self._mul_cache = {}

    def mul(self, a, b):
        key = (a, b)
        out = self._mul_cache.get(key)
        if out is None:
            out = _pmod(_pmul(a, b, self.p), self.f, self.p)
            self._mul_cache[key] = out
        return out

    def add(self, a, b):
        p = self.p
        la, lb = len(a), len(b)
        return _trim(
            tuple(
            ((a[i] if i < la else 0) + (b[i] if i < lb else 0)) % p
            for i in range(max(la, lb))
            )
        )

    def norm(self, a):
        return self._norms[_trim(a)]

    def squares(self):
        return {self.mul(e, e) for e in self.elements}


def _space_to_int_gram(space):
    return [[c.value for c in row] for row in space.gram]


def enumerate_represented(space, algebra=None, guard=10**7):
    """Exact set {q(v) : q(v) a unit}, by full enumeration.

    Over the base field the result is a set of ints; over an etale
    algebra, a set of coefficient tuples.
    """
    p = space.domain.p
    gram = _space_to_int_gram(space)
    m = space.rank
    if algebra is None:
        if p**m > guard:
            raise DomainTooLarge(f"{p}^{m} vectors exceed the guard")
        out = set()
        for v in itertools.product(range(p), repeat=m):
            q = 0
            for i in range(m):
                for j in range(m):
                    q += gram[i][j] * v[i] * v[j]
            q %= p
            if q:
                out.add(q)
        return out
    ring = ResidueRing(p, tuple(c.value for c in algebra.modulus.coeffs))
    if len(ring.elements) ** m > guard:
        raise DomainTooLarge(
            f"{len(ring.elements)}^{m} vectors exceed the guard"
        )
    out = set()
    for v in itertools.product(ring.elements, repeat=m):
        q = ()
        for i in range(m):
            for j in range(m):
                if gram[i][j]:
                    term = ring.mul(v[i], v[j])
                    term = ring.mul((gram[i][j],), term)
                    q = ring.add(q, term)
        if q in ring.units:
            out.add(q)
    return out


def subgroup_closure(generators, mul):
    """Multiplicative closure; in a finite unit group this is the
    generated subgroup."""
    gens = list(generators)
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = mul(a, g)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


def _even_odd_products(rep, mul, one):
    """D0 (even products, with the empty product) and D1 (odd)."""
    pair_products = {mul(a, b) for a in rep for b in rep}
    d0 = subgroup_closure(pair_products, mul) if pair_products else set()
    d0.add(one)
    if rep:
        g = next(iter(rep))
        d1 = {mul(g, d) for d in d0}
    else:
        d1 = set()
    return d0, d1


def D0_D1(space, algebra=None, guard=10**7):
    """The even- and odd-product sets of represented units."""
    p = space.domain.p
    rep = enumerate_represented(space, algebra, guard)
    if algebra is None:
        mul = lambda a, b: a * b % p
        return _even_odd_products(rep, mul, 1)
    ring = ResidueRing(p, tuple(c.value for c in algebra.modulus.coeffs))
    return _even_odd_products(rep, ring.mul, ring.one)


@dataclass
class ValueSetReport:
    """Represented units and the D-groups of one (p, gram[, modulus])."""

    p: int
    gram: list
    modulus: object
    represented: set
    d_full: set
    d_even: set
    d_odd: set


def value_set_report(space, algebra=None, guard=10**7):
    rep = enumerate_represented(space, algebra, guard)
    d0, d1 = D0_D1(space, algebra, guard)
    return ValueSetReport(
        p=space.domain.p,
        gram=_space_to_int_gram(space),
        modulus=(
            None
            if algebra is None
            else [c.value for c in algebra.modulus.coeffs]
        ),
        represented=rep,
        d_full=d0 | d1,
        d_even=d0,
        d_odd=d1,
    )


def _represented_diagonal(diag, ring):
    """Fast path for diagonal forms: sumsets of scaled squares."""
    sq = ring.squares()
    acc = {()}
    for d in diag:
        scaled = {ring.mul((d,), s) for s in sq}
        acc = {ring.add(a, s) for a in acc for s in scaled}
    return {v for v in acc if v in ring.units}


def _represented_diagonal_base(diag, p):
    sq = {v * v % p for v in range(p)}
    acc = {0}
    for d in diag:
        scaled = {d * s % p for s in sq}
        acc = {(a + s) % p for a in acc for s in scaled}
    return {v for v in acc if v}


def exhaustive_norm_principle_check(p, max_rank, max_degree, guard=10**7):
    """Check N(D_q(E)) in D_q(F) and N(D0_q(E)) in D0_q(F) for every
    diagonal nondegenerate form and monic separable modulus up to the
    bounds.  Returns a JSON-able report with any counterexamples."""
    units = list(range(1, p))
    mul_base = lambda a, b: a * b % p
    report = {
        "p": p,
        "max_rank": max_rank,
        "max_degree": max_degree,
        "pairs_checked": 0,
        "violations": [],
        "ok": True,
    }

    def record(diag, f, e, nv, which):
        report["ok"] = False
        report["violations"].append(
            {
                "gram_diagonal": list(diag),
                "modulus": list(f),
                "element": list(e),
                "norm": nv,
                "inclusion": which,
            }
        )

    base_sets = {}
    for m in range(1, max_rank + 1):
        if p**m > guard:
            raise DomainTooLarge(f"{p}^{m} vectors exceed the guard")
        for diag in itertools.product(units, repeat=m):
            rep = _represented_diagonal_base(diag, p)
            if m >= 2 and rep != set(units):
                # classical universality of rank >= 2 forms over F_p
                raise AssertionError(
                    f"enumerator sanity check failed for diag {diag}"
                )
            d0, d1 = _even_odd_products(rep, mul_base, 1)
            base_sets[diag] = (d0 | d1, d0)

    for deg in range(1, max_degree + 1):
        if p ** (deg * max_rank) > guard:
            raise DomainTooLarge(
                f"|E|^m = {p}^{deg * max_rank} exceeds the guard"
            )
        for f in monic_separable_moduli(p, deg):
            ring = ResidueRing(p, f)
            scaled_squares = {
                d: {ring.mul((d,), s) for s in ring.squares()} for d in units
            }
            sums = {(): {()}}
            for m in range(1, max_rank + 1):
                for diag in itertools.product(units, repeat=m):
                    acc = {
                        ring.add(a, s)
                        for a in sums[diag[:-1]]
                        for s in scaled_squares[diag[-1]]
                    }
                    sums[diag] = acc
                    rep_ext = {v for v in acc if v in ring.units}
                    d0_ext, d1_ext = _even_odd_products(
                        rep_ext, ring.mul, ring.one
                    )
                    d_base, d0_base = base_sets[diag]
                    report["pairs_checked"] += 1
                    for e in d0_ext | d1_ext:
                        nv = ring.norm(e)
                        if nv not in d_base:
                            record(diag, f, e, nv, "D")
                    for e in d0_ext:
                        nv = ring.norm(e)
                        if nv not in d0_base:
                            record(diag, f, e, nv, "D0")
    return report

"""Spinor norms via Cartan-Dieudonne reflection decomposition.

An isometry of a nondegenerate space decomposes into at most 2m
reflections in unit-valued mirrors; the spinor norm is the product of the
mirror q-values, well defined modulo squares.  The transfer check runs
the norm-principle witness on every mirror value of a special-orthogonal
element over an extension and concatenates, giving a constructive
even-parity certificate for N(SN(g)) in D0_q of the base.

Decomposition works over fields, the local instance, and base-changed
etale spaces.  Over an algebra with zero divisors both q(Ae-e) and
q(Ae+e) can fail to be units at once; a sampler-driven detour through a
random mirror keeps the two-reflections-per-basis-vector bound.
"""

from . import linalg
from .errors import InternalInvariant, SamplingExhausted, ZeroDivisor
from .quadform import vec_add, vec_scale, vec_sub
from .witness import Witness, WitnessFactor, norm_principle_witness


class Isometry:
    """A matrix A with A^T G A = G exactly and det A in {1, -1}."""

    __slots__ = ("space", "matrix", "det")

    def __init__(self, space, matrix, *, check=True):
        dom = space.domain
        rows = tuple(tuple(dom.coerce(c) for c in row) for row in matrix)
        m = space.rank
        if len(rows) != m or any(len(r) != m for r in rows):
            raise ValueError("isometry matrix must match the space's rank")
        self.space = space
        self.matrix = rows
        det = linalg.det(dom, rows)
        self.det = det
        if check:
            gt = linalg.mat_mul(
                linalg.mat_mul(linalg.transpose(rows), space.gram, dom.zero),
                rows,
                dom.zero,
            )
            if gt != space.gram:
                raise ValueError("matrix does not preserve the form")
            if det != dom.one and det != -dom.one:
                raise ValueError("isometry determinant must be +-1")

    @classmethod
    def identity(cls, space):
        dom = space.domain
        return cls(
            space, linalg.identity(space.rank, dom.zero, dom.one), check=False
        )

    @classmethod
    def from_reflections(cls, space, mirrors):
        """Compose tau_{mirrors[0]} ∘ ... ∘ tau_{mirrors[-1]}."""
        out = cls.identity(space)
        for w in reversed(mirrors):
            refl = cls(space, space.reflection_matrix(w), check=False)
            out = refl.compose(out)
        return out

    def apply(self, v):
        return linalg.mat_vec(self.matrix, v, self.space.domain.zero)

    def compose(self, other):
        """self ∘ other."""
        return Isometry(
            self.space,
            linalg.mat_mul(self.matrix, other.matrix, self.space.domain.zero),
            check=False,
        )

    def __eq__(self, other):
        return isinstance(other, Isometry) and other.matrix == self.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"Isometry({self.matrix!r})"


def cartan_dieudonne(iso, sampler=None):
    """Mirrors w_1..w_r (r <= 2m) with iso = tau_{w_1} ∘ ... ∘ tau_{w_r}.

    Walks an orthogonal basis; each basis vector costs at most two
    mirrors.  When both one-mirror routes are available, a sampler coin
    picks one, so reseeded runs explore different decompositions.
    """
    space = iso.space
    dom = space.domain
    m = space.rank
    p, diag = space.diagonalize()
    basis = [tuple(p[i][j] for i in range(m)) for j in range(m)]
    mirrors = []
    current = iso

    def is_unit(x):
        return dom.is_unit(x)

    for k in range(m):
        e = basis[k]
        x = current.apply(e)
        if x == e:
            continue
        diff = vec_sub(x, e)
        summ = vec_add(x, e)
        one_ok = is_unit(space.evaluate(diff))
        two_ok = is_unit(space.evaluate(summ))
        if one_ok and two_ok and sampler is not None and sampler.coin():
            one_ok = False
        if one_ok:
            # tau_{x-e} swaps x and e
            taus = [diff]
        elif two_ok:
            # tau_{x+e} sends x to -e, then tau_e flips it back
            taus = [summ, e]
        else:
            # zero-divisor corner: detour through a random unit mirror in
            # the remaining orthogonal span, then swap
            if sampler is None:
                raise SamplingExhausted(
                    "decomposition needs a sampler for this input"
                )
            taus = None
            for _ in sampler.trials("detour mirror"):
                coeffs = [
                    dom.sample(sampler.rng, sampler.height)
                    for _ in range(m - k)
                ]
                r = vec_scale(coeffs[0], basis[k])
                for j in range(k + 1, m):
                    r = vec_add(r, vec_scale(coeffs[j - k], basis[j]))
                try:
                    if not is_unit(space.evaluate(r)):
                        continue
                    x2 = space.reflection(r, x)
                    d2 = vec_sub(x2, e)
                    if not is_unit(space.evaluate(d2)):
                        continue
                except ZeroDivisor:
                    continue
                taus = [r, d2]
                break
        # peel: current <- tau_{taus[-1]} ... tau_{taus[0]} ∘ current,
        # which fixes e; the inverse prefix appends taus in list order
        work = current
        for w in taus:
            refl = Isometry(space, space.reflection_matrix(w), check=False)
            work = refl.compose(work)
        if work.apply(e) != e:
            raise InternalInvariant("chosen mirrors do not fix the basis vector")
        current = work
        mirrors.extend(taus)
    if current != Isometry.identity(space):
        raise InternalInvariant("reflection peeling did not reach the identity")
    if len(mirrors) > 2 * m:
        raise InternalInvariant("mirror count exceeded 2m")
    return mirrors


def spinor_norm(iso, sampler=None):
    """Product of the mirror q-values: a square-class representative."""
    dom = iso.space.domain
    acc = dom.one
    for w in cartan_dieudonne(iso, sampler):
        acc = acc * iso.space.evaluate(w)
    return acc


def same_square_class(domain, a, b):
    """Exact square test on the ratio of two units."""
    return domain.is_square(a * domain.invert(b))


def transfer_check(space, algebra, iso, sampler):
    """Constructive transfer: witness that N(SN_E(g)) lies in D0_q(base).

    g must be special orthogonal over the extension; its spinor norm is an
    even product of represented values, each of which gets a witness; the
    concatenation has even parity and multiplies to N(SN_E(g)) exactly.
    Returns (witness, ok).
    """
    base = algebra.base
    space_ext = space.base_change(algebra)
    if iso.det != space_ext.domain.one:
        raise ValueError("transfer check needs det = 1")
    mirrors = cartan_dieudonne(iso, sampler)
    if len(mirrors) % 2 != 0:
        raise InternalInvariant("det-1 isometry decomposed into odd mirrors")
    sn = space_ext.domain.one
    factors = []
    for w in mirrors:
        sn = sn * space_ext.evaluate(w)
        wit = norm_principle_witness(space, algebra, w, sampler)
        factors.extend(wit.factors)
    product = base.one
    for fac in factors:
        product = product * fac.value
    norm_sn = sn.norm()
    combined = Witness(
        factors=tuple(factors),
        input_value=sn,
        norm=product,
        parity=len(factors) % 2,
        seed=sampler.seed,
    )
    ok = product == norm_sn and combined.parity == 0
    return combined, ok

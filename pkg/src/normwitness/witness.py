"""Constructive norm-principle witnesses.

Given a unit a = q_E(u) of an etale extension E = base[t]/(f), produce an
explicit list of base vectors w_k with  prod q(w_k) = N(a)  exactly and
factor count congruent to n = deg f mod 2.

The pipeline: rescale by a sampled b so that alpha = a^{-1} b^2 is
primitive and alpha·q(v) = 1 for v = u/b; sample a second point omega of
the quadric {alpha·q = 1} whose polynomial  Phi(t) = t·q(omega(t)) - 1
(coordinates taken in the power basis of alpha) is separable of degree
2n-1; over the local instance the point is sampled at the residue level
and lifted exactly with lambda = -h/(2u).  Dividing Phi by alpha's
minimal polynomial gives c·h with c represented by the top coordinate
row, and reducing the relation mod h restarts the problem in the algebra
base[t]/(h) of degree n-1.  Rank-1 forms bypass sampling via the closed
form N(d·u0^2) = d^n·N(u0)^2.

Everything is exact; every equality below is an identity in the base
structure, not an approximation.
"""

from dataclasses import dataclass

from .errors import (
    InternalInvariant,
    NonUnitInput,
    NonzeroRemainder,
    NotAUnit,
    RankOneUnsupported,
    UnitConditionViolated,
    ZeroDivisor,
)
from .etale import EtaleAlgebra
from .localring import denominator_lcm
from .poly import Polynomial
from .quadform import QuadraticSpace, vec_add, vec_scale, vec_sub


def _represent_by_alpha(algebra, alpha, v):
    """Isomorphic presentation S = R[s]/(f_alpha) with alpha the generator.

    One coordinate-change solve for the whole state, after which every
    power-basis expansion in the descent is diagonal.  Norms and q-values
    are preserved, so no witness compensation is needed.
    """
    from . import linalg

    f_alpha = alpha.minimal_polynomial()
    new_alg = EtaleAlgebra(algebra.base, f_alpha)
    pbm_t = linalg.transpose(alpha.power_basis_matrix())
    std = algebra.expand_coordinates(v)
    coords = linalg.solve(algebra.base, pbm_t, std)
    v_new = tuple(
        new_alg.element([row[j] for row in coords]) for j in range(len(v))
    )
    return new_alg, new_alg.gen(), v_new


def _clear_local_level(space, algebra, alpha, v):
    """Denominator-free presentation of a local-ring descent state.

    Substituting t -> s/g (g the lcm of the modulus coefficient
    denominators) is a norm-preserving R-algebra isomorphism that makes
    the modulus denominator-free, so the many reductions against it stop
    dragging fractions through every operation.  Scaling v by the lcm c
    of its coordinate denominators and moving alpha to alpha/c^2 keeps
    alpha·q(v) = 1; the caller compensates the witness product with a
    square factor pair worth c^(-2n).  Returns the new state and c (None
    when no scaling was needed).
    """
    base = algebra.base
    n = algebra.degree
    f = algebra.modulus
    g = denominator_lcm(f.coeffs)
    if g.degree > 0:
        glf = base.coerce(g)
        coeffs = [fi * glf ** (n - i) for i, fi in enumerate(f.coeffs)]
        algebra = EtaleAlgebra(base, Polynomial(base, coeffs))
        ginv = base.element(1, g)

        def remap(el):
            out = []
            power = base.one
            for a in el.rep.coeffs:
                out.append(a * power)
                power = power * ginv
            return algebra.element(out)

        alpha = remap(alpha)
        v = tuple(remap(c) for c in v)
    dens = [c for coord in v for c in coord.rep.coeffs]
    cpoly = denominator_lcm(dens)
    scale = None
    if cpoly.degree > 0:
        clf = base.coerce(cpoly)
        v = tuple(clf * coord for coord in v)
        alpha = alpha * (base.element(1, cpoly) ** 2)
        scale = clf
    return algebra, alpha, v, scale


@dataclass(frozen=True)
class WitnessFactor:
    """One represented value: a base vector and its q-value (a unit)."""

    vector: tuple
    value: object


@dataclass(frozen=True)
class Witness:
    """Ordered factors with the exact product claim prod q(w_k) = N(a)."""

    factors: tuple
    input_value: object
    norm: object
    parity: int
    seed: object = None


@dataclass(frozen=True)
class PhiPolynomial:
    """t·q(omega(t)) - 1 together with the coordinate matrix (rows are
    powers of alpha, columns the m coordinates) it was built from."""

    poly: Polynomial
    coords: tuple
    alpha: object


def phi_polynomial(space, algebra, alpha, omega):
    """Build Phi_omega in the power basis of the primitive element alpha."""
    base = algebra.base
    coords = algebra.power_basis_coordinates(alpha, omega)
    m = space.rank
    polys = [
        Polynomial(base, [row[j] for row in coords]) for j in range(m)
    ]
    qpoly = Polynomial.zero(base)
    for i in range(m):
        for j in range(m):
            qpoly = qpoly + space.gram[i][j] * (polys[i] * polys[j])
    phi = Polynomial.variable(base) * qpoly - Polynomial.one(base)
    return PhiPolynomial(poly=phi, coords=coords, alpha=alpha)


def make_primitive_scale(space, algebra, a, u, sampler):
    """Find b with alpha = a^{-1} b^2 primitive; return (b, alpha, u/b).

    Over the local instance b is sampled at the residue level and lifted
    coefficient-wise (any lift works).  Degree 1 needs no sampling: every
    unit is primitive there.
    """
    base = algebra.base
    space_ext = space.base_change(algebra)
    a_inv = a.inverse()
    if algebra.degree == 1:
        b = algebra.one
        alpha = a_inv
        v = u
    elif base.is_local:
        res_alg, red = algebra.reduce_mod_maximal()
        abar_inv = red(a_inv)
        b = None
        # cheap candidates first: b = a gives alpha = a itself (smallest
        # coefficients, which the descent's degree growth feeds on), b = 1
        # gives alpha = a^{-1}; random residue-level draws otherwise
        if red(a).is_primitive():
            b = a
        elif abar_inv.is_primitive():
            b = algebra.one
        else:
            for _ in sampler.trials("primitive rescaling b"):
                bbar = res_alg.sample(sampler.rng, sampler.height)
                if not bbar.is_unit():
                    continue
                if (abar_inv * bbar * bbar).is_primitive():
                    b = algebra.element(
                        bbar.rep.map_coefficients(base.lift, base)
                    )
                    break
        alpha = a_inv * b * b
        binv = b.inverse()
        v = tuple(c * binv for c in u)
    else:
        b = None
        if a.is_primitive():
            b = a
        elif a_inv.is_primitive():
            b = algebra.one
        else:
            for _ in sampler.trials("primitive rescaling b"):
                cand = algebra.sample(sampler.rng, sampler.height)
                if not cand.is_unit():
                    continue
                if (a_inv * cand * cand).is_primitive():
                    b = cand
                    break
        alpha = a_inv * b * b
        binv = b.inverse()
        v = tuple(c * binv for c in u)
    if not alpha.is_primitive():
        raise InternalInvariant("rescaled alpha is not primitive")
    if alpha * space_ext.evaluate(v) != algebra.one:
        raise InternalInvariant("alpha · q(v) != 1 after rescaling")
    return b, alpha, v


def sample_good_point(space, algebra, alpha, v, sampler, ring_mode=False):
    """Second quadric point omega' with separable Phi of degree 2n-1.

    Draws a direction u' with q(u') a unit and takes the second
    intersection of the line through v:  omega' = v - (2<v,u'>/q(u'))·u'
    (a reflection image of v, so alpha·q(omega') = 1 automatically).
    In ring_mode additionally requires <v, omega'> - 1 to be a unit for
    the bilinear form of alpha·q, which the exact lift needs.
    """
    if space.rank < 2:
        raise RankOneUnsupported("quadric sampling needs rank >= 2")
    n = algebra.degree
    base = algebra.base
    space_ext = space.base_change(algebra)
    one = algebra.one
    switch = max(1, sampler.max_retries // 2)
    for trial in sampler.trials("good quadric point"):
        if trial < switch:
            # base-coordinate directions first: q(u') is then a base
            # scalar, so no extension inverse enters and coefficients
            # stay small; genericity is verified per draw anyway
            direction = tuple(
                algebra.from_base(base.sample(sampler.rng, sampler.height))
                for _ in range(space.rank)
            )
        else:
            direction = space_ext.random_vector(sampler)
        try:
            qd = space_ext.evaluate(direction)
            if not qd.is_unit():
                continue
            pairing = space_ext.bilinear(v, direction)
            s = (pairing + pairing) * qd.inverse()
        except ZeroDivisor:
            continue
        omega = vec_sub(v, vec_scale(s, direction))
        if alpha * space_ext.evaluate(omega) != one:
            raise InternalInvariant("line intersection left the quadric")
        try:
            phi = phi_polynomial(space, algebra, alpha, omega)
        except ZeroDivisor:
            continue
        if phi.poly.degree != 2 * n - 1:
            continue
        if not phi.poly.is_separable():
            continue
        if ring_mode:
            unit_cond = alpha * space_ext.bilinear(v, omega) - one
            if not unit_cond.is_unit():
                continue
        return omega


def lift_point(space, ring, alpha, v, omega_prime, lift=None):
    """Exact lift of a residue-level quadric point (lifting lemma).

    ring is an etale algebra over the local instance, or the local
    instance itself; phi = alpha·q.  Any coefficient-wise lift works: with
    h = phi(lift) - 1 in the maximal ideal and u = <v, lift> - 1 a unit
    (for the bilinear form of phi), the corrected point is
    (lambda·v + lift)/(lambda + 1) with lambda = -h/(2u).
    """
    if isinstance(ring, EtaleAlgebra):
        base = ring.base
        _, red = ring.reduce_mod_maximal()
        lift_fn = lambda e: ring.element(
            e.rep.map_coefficients(base.lift, base)
        )
        space_ring = space.base_change(ring)
    else:
        red = ring.residue
        lift_fn = ring.lift
        space_ring = space
    one = ring.one
    if lift is None:
        lifted = tuple(lift_fn(c) for c in omega_prime)
    else:
        lifted = tuple(ring.coerce(c) for c in lift)
        if tuple(red(c) for c in lifted) != tuple(omega_prime):
            raise ValueError("provided lift does not reduce to omega'")
    h = alpha * space_ring.evaluate(lifted) - one
    if red(h) != red(ring.zero):
        raise InternalInvariant("phi(lift) - 1 is not in the maximal ideal")
    u = alpha * space_ring.bilinear(v, lifted) - one
    if not ring.is_unit(u):
        raise UnitConditionViolated("<v, lift> - 1 must be a unit")
    # (lambda·v + lift)/(lambda + 1) for lambda = -h/(2u), written with a
    # single extension inverse: (2u·lift - h·v)/(2u - h)
    u2 = u + u
    den_inv = ring.invert(u2 - h)
    omega = tuple(
        den_inv * c
        for c in vec_sub(vec_scale(u2, lifted), vec_scale(h, v))
    )
    if alpha * space_ring.evaluate(omega) != one:
        raise InternalInvariant("lifted point is not on the quadric")
    if tuple(red(c) for c in omega) != tuple(omega_prime):
        raise InternalInvariant("lifted point does not reduce to omega'")
    return omega


def factor_phi(phi, f_alpha):
    """Split Phi = c·h·f_alpha exactly; c is a unit, h monic separable of
    degree one less than f_alpha."""
    base = f_alpha.domain
    quotient, rem = phi.poly.divmod_monic(f_alpha)
    if not rem.is_zero:
        raise NonzeroRemainder("f_alpha does not divide Phi")
    c = quotient.leading
    if not base.is_unit(c):
        raise InternalInvariant("leading coefficient of Phi/f_alpha not a unit")
    h = quotient * base.invert(c)
    if not h.is_monic or h.degree != f_alpha.degree - 1:
        raise InternalInvariant("cofactor h has the wrong shape")
    if not h.is_separable():
        raise InternalInvariant("cofactor h is not separable")
    return c, h


def invert_factor(space, w):
    """Replace a factor by its inverse-valued scaling: q(w/q(w)) = 1/q(w)."""
    qw = space.evaluate(w)
    if not space.domain.is_unit(qw):
        raise NotAUnit("q(w) must be a unit")
    return vec_scale(space.domain.invert(qw), w)


def _descend(space, algebra, alpha, v, sampler):
    """Recursive core: witness for N(q(v)) given alpha·q(v) = 1 with alpha
    primitive.  Emits one factor per level plus an occasional square
    padding pair from denominator clearing, n factors mod 2 in total."""
    base = algebra.base
    n = algebra.degree
    scale = None
    if base.is_local and n > 1:
        is_gen_multiple = (
            len(alpha.rep.coeffs) == 2 and alpha.rep.coeffs[0] == base.zero
        )
        if not is_gen_multiple:
            # top ring level: re-present S as R[s]/(f_alpha) so that alpha
            # becomes the generator and power bases stay diagonal below
            algebra, alpha, v = _represent_by_alpha(algebra, alpha, v)
        algebra, alpha, v, scale = _clear_local_level(space, algebra, alpha, v)
    space_ext = space.base_change(algebra)
    if alpha * space_ext.evaluate(v) != algebra.one:
        raise InternalInvariant("descent invariant alpha·q(v) = 1 broke")
    if n == 1:
        vb = tuple(c.rep.constant_term for c in v)
        value = space.evaluate(vb)
        if not base.is_unit(value):
            raise InternalInvariant("degree-1 factor value is not a unit")
        return [WitnessFactor(vb, value)]
    f_alpha = alpha.minimal_polynomial()
    sign = base.one if n % 2 == 0 else -base.one
    if alpha.norm() != sign * f_alpha.constant_term:
        raise InternalInvariant("N(alpha) != (-1)^n f_alpha(0)")
    if base.is_local:
        res_alg, red = algebra.reduce_mod_maximal()
        res_space = QuadraticSpace(
            base.residue_domain,
            [[base.residue(g) for g in row] for row in space.gram],
            check=False,
        )
        omega_prime = sample_good_point(
            res_space,
            res_alg,
            red(alpha),
            tuple(red(c) for c in v),
            sampler,
            ring_mode=True,
        )
        omega = lift_point(space, algebra, alpha, v, omega_prime)
    else:
        omega = sample_good_point(space, algebra, alpha, v, sampler)
    phi = phi_polynomial(space, algebra, alpha, omega)
    if phi.poly.degree != 2 * n - 1:
        raise InternalInvariant("Phi degree dropped below 2n-1")
    if not phi.poly.evaluate(alpha).is_zero:
        raise InternalInvariant("Phi(alpha) != 0")
    c, h = factor_phi(phi, f_alpha)
    w_top = phi.coords[n - 1]
    if space.evaluate(w_top) != c:
        raise InternalInvariant("c is not the q-value of the top row")
    lower = EtaleAlgebra(base, h)
    omega_polys = algebra.contract(phi.coords)
    u_low = tuple(lower.element(p) for p in omega_polys)
    beta = lower.gen()
    space_low = space.base_change(lower)
    if beta * space_low.evaluate(u_low) != lower.one:
        raise InternalInvariant("(polrel) mod h failed: beta·q(u) != 1")
    factors = [WitnessFactor(w_top, c)]
    for fac in _descend(space, lower, beta, u_low, sampler):
        wv = invert_factor(space, fac.vector)
        factors.append(WitnessFactor(wv, space.evaluate(wv)))
    if scale is not None:
        # compensate the entry rescaling: q(z/c^n)·q(z)^{-1} = c^{-2n}
        z = space.anisotropic_vector()
        pad = vec_scale(base.invert(scale) ** n, z)
        factors.append(WitnessFactor(pad, space.evaluate(pad)))
        zinv = invert_factor(space, z)
        factors.append(WitnessFactor(zinv, space.evaluate(zinv)))
    return factors


def norm_principle_witness(space, algebra, u, sampler):
    """Main entry: witness for N(q_E(u)) with parity n mod 2."""
    base = algebra.base
    n = algebra.degree
    space_ext = space.base_change(algebra)
    u = tuple(algebra.coerce(c) for c in u)
    a = space_ext.evaluate(u)
    if not a.is_unit():
        raise NonUnitInput("q(u) must be a unit of the extension")
    norm_a = a.norm()
    if space.rank == 1:
        # closed form: a = d·u0^2, N(a) = d^n · N(u0)^2
        d = space.gram[0][0]
        nu0 = u[0].norm()
        factors = [
            WitnessFactor((base.one,), d) for _ in range(n)
        ]
        scaled = (nu0,)
        factors.append(WitnessFactor(scaled, space.evaluate(scaled)))
        inv = invert_factor(space, (base.one,))
        factors.append(WitnessFactor(inv, space.evaluate(inv)))
    else:
        b, alpha, v = make_primitive_scale(space, algebra, a, u, sampler)
        factors = _descend(space, algebra, alpha, v, sampler)
        nb = b.norm()
        z = space.anisotropic_vector()
        padded = vec_scale(nb, z)
        factors.append(WitnessFactor(padded, space.evaluate(padded)))
        zinv = invert_factor(space, z)
        factors.append(WitnessFactor(zinv, space.evaluate(zinv)))
    product = base.one
    for fac in factors:
        if not base.is_unit(fac.value):
            raise InternalInvariant("witness factor value is not a unit")
        product = product * fac.value
    if product != norm_a:
        raise InternalInvariant("witness product != N(a)")
    if len(factors) % 2 != n % 2:
        raise InternalInvariant("witness parity != n mod 2")
    return Witness(
        factors=tuple(factors),
        input_value=a,
        norm=norm_a,
        parity=len(factors) % 2,
        seed=sampler.seed,
    )


def verify_witness(space, algebra, u, witness):
    """Independent re-check; returns (ok, reason).

    Recomputes every factor value, the product, and the norm of the input
    by BOTH the multiplication-matrix determinant and the resultant.
    """
    base = algebra.base
    for fac in witness.factors:
        if space.evaluate(fac.vector) != fac.value:
            return False, "factor value mismatch"
        if not base.is_unit(fac.value):
            return False, "factor value not a unit"
    product = base.one
    for fac in witness.factors:
        product = product * fac.value
    if product != witness.norm:
        return False, "product differs from claimed norm"
    if witness.parity != len(witness.factors) % 2:
        return False, "parity field inconsistent with factor count"
    if u is not None:
        space_ext = space.base_change(algebra)
        if space_ext.evaluate(tuple(algebra.coerce(c) for c in u)) != witness.input_value:
            return False, "input value differs from q(u)"
    if witness.input_value.norm() != witness.norm:
        return False, "determinant norm differs from claimed norm"
    if witness.input_value.norm_via_resultant() != witness.norm:
        return False, "resultant norm differs from claimed norm"
    return True, None

"""Exact-arithmetic norm-principle witnesses for quadratic forms.

Given a value represented by a quadratic form over a finite etale
extension, this library constructs an explicit, exactly verifiable list
of base vectors whose q-values multiply to the norm of that value, with
parity bookkeeping.  It ships the three base structures (rationals, odd
prime fields, rational functions regular at the origin as a local
domain), dense polynomial and etale-algebra arithmetic, quadratic-space
tooling, spinor norms via reflection decompositions, brute-force oracles
over small prime fields, and a JSON command-line front end.
"""

from .domains import (
    QQ,
    DeterministicSampler,
    PrimeField,
    PrimeFieldElement,
    Rationals,
)
from .errors import (
    AlgebraMismatch,
    DomainTooLarge,
    InternalInvariant,
    IsotropicMirror,
    MathError,
    NonMonicDivisor,
    NonUnitInput,
    NonzeroRemainder,
    NotAUnit,
    NotPrimitive,
    ParseError,
    RankOneUnsupported,
    SamplingExhausted,
    UndefinedGcd,
    UndefinedSeparability,
    UnitConditionViolated,
    ZeroDivisor,
)
from .etale import AlgebraElement, EtaleAlgebra, charpoly
from .localring import QX0, LocalFunction, LocalFunctionRing
from .oracle import (
    D0_D1,
    ValueSetReport,
    enumerate_represented,
    exhaustive_norm_principle_check,
    monic_separable_moduli,
    subgroup_closure,
    value_set_report,
)
from .poly import Polynomial, gcd, resultant, xgcd
from .quadform import QuadraticSpace
from .spinor import (
    Isometry,
    cartan_dieudonne,
    same_square_class,
    spinor_norm,
    transfer_check,
)
from .witness import (
    PhiPolynomial,
    Witness,
    WitnessFactor,
    factor_phi,
    invert_factor,
    lift_point,
    make_primitive_scale,
    norm_principle_witness,
    phi_polynomial,
    sample_good_point,
    verify_witness,
)

__version__ = "0.1.0"

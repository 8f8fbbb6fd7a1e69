"""Textual and JSON encodings shared by the CLI.

Scalars: rationals as "p/q" or "p"; prime-field values as "v mod p";
local elements as "[n0,n1,...]/[d0,d1,...]" (numerator and denominator
coefficient lists, ascending, the "/[...]" suffix omitted for denominator
1; entries are rational strings).  Polynomials: ascending coefficient
arrays of scalar strings, e.g. t^2 - 2 as ["-2", "0", "1"].  Etale
elements: coefficient arrays; vectors over an extension: arrays of those.

Every parse failure raises ParseError with a message naming the field.
"""

from fractions import Fraction

from .domains import QQ, PrimeField, PrimeFieldElement, Rationals
from .errors import ParseError
from .etale import EtaleAlgebra
from .localring import QX0, LocalFunction, LocalFunctionRing
from .poly import Polynomial
from .quadform import QuadraticSpace
from .witness import Witness, WitnessFactor


def base_from_tag(tag):
    if tag == "Q":
        return QQ
    if tag == "Qx0":
        return QX0
    if tag.startswith("Fp:"):
        try:
            p = int(tag[3:])
        except ValueError:
            raise ParseError(f"bad prime in base tag {tag!r}") from None
        try:
            return PrimeField(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown base tag {tag!r} (expected Q, Fp:<p>, Qx0)")


def _parse_fraction(v, where):
    if isinstance(v, bool):
        raise ParseError(f"{where}: booleans are not scalars")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        raise ParseError(f"{where}: floats are rejected, use exact strings")
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: malformed rational {v!r}") from None
    raise ParseError(f"{where}: cannot read a rational from {v!r}")


def _format_fraction(x):
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _split_outside_brackets(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "/" and depth == 0:
            return s[:i], s[i + 1 :]
    return s, None


def _parse_bracket_list(s, where):
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"{where}: expected a [c0,c1,...] coefficient list")
    inner = s[1:-1].strip()
    if not inner:
        return []
    return [_parse_fraction(part.strip(), where) for part in inner.split(",")]


def _parse_local(v, where):
    if isinstance(v, bool):
        raise ParseError(f"{where}: booleans are not scalars")
    if isinstance(v, int):
        return LocalFunction(v)
    if isinstance(v, float):
        raise ParseError(f"{where}: floats are rejected, use exact strings")
    if not isinstance(v, str):
        raise ParseError(f"{where}: cannot read a local element from {v!r}")
    s = v.strip()
    if not s.startswith("["):
        return LocalFunction(_parse_fraction(s, where))
    num_s, den_s = _split_outside_brackets(s)
    num = Polynomial(QQ, _parse_bracket_list(num_s, where))
    if den_s is None:
        return LocalFunction(num)
    den = Polynomial(QQ, _parse_bracket_list(den_s.strip(), where))
    if den.is_zero:
        raise ParseError(f"{where}: zero denominator")
    if den.constant_term == 0:
        raise ParseError(f"{where}: denominator vanishes at the origin")
    return LocalFunction(num, den)


def _format_local(x):
    num = "[" + ",".join(_format_fraction(c) for c in x.num.coeffs) + "]"
    if x.num.is_zero:
        num = "[0]"
    if x.den == Polynomial.one(QQ):
        return num
    den = "[" + ",".join(_format_fraction(c) for c in x.den.coeffs) + "]"
    return f"{num}/{den}"


def parse_scalar(domain, v, where="scalar"):
    if isinstance(domain, Rationals):
        return _parse_fraction(v, where)
    if isinstance(domain, PrimeField):
        if isinstance(v, bool):
            raise ParseError(f"{where}: booleans are not scalars")
        if isinstance(v, int):
            return domain.from_int(v)
        if isinstance(v, str):
            s = v.strip()
            if " mod " in s:
                val, mod = s.split(" mod ", 1)
                try:
                    val, mod = int(val), int(mod)
                except ValueError:
                    raise ParseError(
                        f"{where}: malformed prime-field value {v!r}"
                    ) from None
                if mod != domain.p:
                    raise ParseError(
                        f"{where}: modulus {mod} does not match base F_{domain.p}"
                    )
                return domain.from_int(val)
            try:
                return domain.from_int(int(s))
            except ValueError:
                raise ParseError(
                    f"{where}: malformed prime-field value {v!r}"
                ) from None
        raise ParseError(f"{where}: cannot read a prime-field value from {v!r}")
    if isinstance(domain, LocalFunctionRing):
        return _parse_local(v, where)
    raise ParseError(f"{where}: unsupported base")


def format_scalar(domain, x):
    if isinstance(domain, Rationals):
        return _format_fraction(x)
    if isinstance(domain, PrimeField):
        return f"{x.value} mod {domain.p}"
    if isinstance(domain, LocalFunctionRing):
        return _format_local(x)
    raise TypeError("unsupported base")


def parse_poly(domain, arr, where="polynomial"):
    if not isinstance(arr, list):
        raise ParseError(f"{where}: expected a coefficient array")
    return Polynomial(
        domain, [parse_scalar(domain, c, f"{where}[{i}]") for i, c in enumerate(arr)]
    )


def format_poly(domain, poly):
    return [format_scalar(domain, c) for c in poly.coeffs]


def parse_gram(domain, obj, where="gram"):
    if isinstance(obj, str) and obj.startswith("I"):
        try:
            m = int(obj[1:])
        except ValueError:
            raise ParseError(f"{where}: bad identity shorthand {obj!r}") from None
        if m < 1:
            raise ParseError(f"{where}: rank must be >= 1")
        rows = [
            [domain.one if i == j else domain.zero for j in range(m)]
            for i in range(m)
        ]
        return QuadraticSpace(domain, rows)
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{where}: expected a matrix or I<rank>")
    rows = []
    for i, r in enumerate(obj):
        if not isinstance(r, list) or len(r) != len(obj):
            raise ParseError(f"{where}: not a square matrix")
        rows.append(
            [parse_scalar(domain, c, f"{where}[{i}][{j}]") for j, c in enumerate(r)]
        )
    for i in range(len(rows)):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ParseError(f"{where}: not symmetric at ({i},{j})")
    try:
        return QuadraticSpace(domain, rows)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def format_gram(domain, space):
    return [[format_scalar(domain, c) for c in row] for row in space.gram]


def parse_modulus(domain, arr, where="modulus"):
    poly = parse_poly(domain, arr, where)
    if poly.degree < 1:
        raise ParseError(f"{where}: degree must be >= 1")
    if not poly.is_monic:
        raise ParseError(f"{where}: not monic")
    try:
        return EtaleAlgebra(domain, poly)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_element(algebra, arr, where="element"):
    if not isinstance(arr, list):
        arr = [arr]
    if len(arr) > algebra.degree:
        raise ParseError(f"{where}: more coefficients than the degree allows")
    return algebra.element(
        [
            parse_scalar(algebra.base, c, f"{where}[{i}]")
            for i, c in enumerate(arr)
        ]
    )


def format_element(algebra, el):
    return [format_scalar(algebra.base, c) for c in el.rep.coeffs]


def parse_ext_vector(algebra, obj, rank, where="vector"):
    if not isinstance(obj, list) or len(obj) != rank:
        raise ParseError(f"{where}: expected {rank} coordinates")
    return tuple(
        parse_element(algebra, c, f"{where}[{i}]") for i, c in enumerate(obj)
    )


def format_ext_vector(algebra, vec):
    return [format_element(algebra, c) for c in vec]


def parse_base_vector(domain, obj, rank, where="vector"):
    if not isinstance(obj, list) or len(obj) != rank:
        raise ParseError(f"{where}: expected {rank} coordinates")
    return tuple(
        parse_scalar(domain, c, f"{where}[{i}]") for i, c in enumerate(obj)
    )


def format_base_vector(domain, vec):
    return [format_scalar(domain, c) for c in vec]


def parse_base_matrix(domain, obj, rank, where="matrix"):
    if not isinstance(obj, list) or len(obj) != rank:
        raise ParseError(f"{where}: expected a {rank}x{rank} matrix")
    return tuple(
        parse_base_vector(domain, row, rank, f"{where}[{i}]")
        for i, row in enumerate(obj)
    )


def parse_ext_matrix(algebra, obj, rank, where="matrix"):
    if not isinstance(obj, list) or len(obj) != rank:
        raise ParseError(f"{where}: expected a {rank}x{rank} matrix")
    return tuple(
        parse_ext_vector(algebra, row, rank, f"{where}[{i}]")
        for i, row in enumerate(obj)
    )


def witness_to_json(space, algebra, witness):
    domain = algebra.base
    return {
        "base": domain.tag,
        "gram": format_gram(domain, space),
        "modulus": format_poly(domain, algebra.modulus),
        "input": format_element(algebra, witness.input_value),
        "factors": [
            {
                "vector": format_base_vector(domain, f.vector),
                "value": format_scalar(domain, f.value),
            }
            for f in witness.factors
        ],
        "norm": format_scalar(domain, witness.norm),
        "parity": witness.parity,
        "seed": witness.seed,
    }


def witness_from_json(doc):
    if not isinstance(doc, dict):
        raise ParseError("witness document must be a JSON object")
    for key in ("base", "gram", "modulus", "input", "factors", "norm", "parity"):
        if key not in doc:
            raise ParseError(f"witness document misses field {key!r}")
    domain = base_from_tag(doc["base"])
    space = parse_gram(domain, doc["gram"])
    algebra = parse_modulus(domain, doc["modulus"])
    input_value = parse_element(algebra, doc["input"], "input")
    factors = []
    for i, f in enumerate(doc["factors"]):
        if not isinstance(f, dict) or "vector" not in f or "value" not in f:
            raise ParseError(f"factors[{i}]: expected vector and value")
        vec = parse_base_vector(
            domain, f["vector"], space.rank, f"factors[{i}].vector"
        )
        val = parse_scalar(domain, f["value"], f"factors[{i}].value")
        factors.append(WitnessFactor(vec, val))
    parity = doc["parity"]
    if parity not in (0, 1):
        raise ParseError("parity must be 0 or 1")
    witness = Witness(
        factors=tuple(factors),
        input_value=input_value,
        norm=parse_scalar(domain, doc["norm"], "norm"),
        parity=parity,
        seed=doc.get("seed"),
    )
    return space, algebra, witness

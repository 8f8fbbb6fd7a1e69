"""Command-line front door.

Subcommands: witness, verify, norm, spinor-norm, decompose,
transfer-check, oracle.  Payloads are JSON on the command line, output is
JSON on stdout (or --out), byte-identical for identical payload and seed.
Exit codes: 0 success, 2 parse error, 3 math error (non-units, exhausted
sampling, oversized domains, failed verification), 4 broken internal
invariant.
"""

import argparse
import json
import sys

from .domains import DeterministicSampler
from .encoding import (
    base_from_tag,
    format_base_vector,
    format_element,
    format_scalar,
    parse_base_matrix,
    parse_element,
    parse_ext_matrix,
    parse_ext_vector,
    parse_gram,
    parse_modulus,
    witness_from_json,
    witness_to_json,
)
from .errors import InternalInvariant, MathError, ParseError
from .oracle import exhaustive_norm_principle_check
from .spinor import Isometry, cartan_dieudonne, spinor_norm, transfer_check
from .witness import norm_principle_witness, verify_witness


def _load_json(text, where):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: invalid JSON ({exc})") from None


def _emit(doc, out_path):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sampler(args):
    return DeterministicSampler(
        args.seed, height=args.height, max_retries=args.retries
    )


def _parse_gram_arg(domain, text):
    s = text.strip()
    if s.startswith("I"):
        return parse_gram(domain, s)
    return parse_gram(domain, _load_json(text, "gram"))


def _add_common(sub, gram=True, modulus=False, seeded=True):
    sub.add_argument("--base", default="Q", help="Q, Fp:<p>, or Qx0")
    if gram:
        sub.add_argument(
            "--gram", required=True, help="JSON matrix or I<rank> shorthand"
        )
    if modulus:
        sub.add_argument(
            "--modulus", required=True, help="ascending coefficient array"
        )
    if seeded:
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--retries", type=int, default=1000)
        sub.add_argument("--height", type=int, default=9)
    sub.add_argument("--out", default=None, help="write JSON here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="normwitness",
        description="Exact norm-principle witnesses, spinor norms, and "
        "brute-force oracles for quadratic forms over etale extensions.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    w = subs.add_parser("witness", help="construct a norm-principle witness")
    _add_common(w, modulus=True)
    w.add_argument(
        "--vector", required=True, help="coordinates over the extension"
    )

    v = subs.add_parser("verify", help="re-check an emitted witness file")
    v.add_argument("path", help="witness JSON file")
    v.add_argument("--out", default=None)

    n = subs.add_parser("norm", help="norm of an extension element, both routes")
    n.add_argument("--base", default="Q")
    n.add_argument("--modulus", required=True)
    n.add_argument("--element", required=True)
    n.add_argument("--out", default=None)

    for name in ("spinor-norm", "decompose"):
        s = subs.add_parser(
            name,
            help="reflection decomposition"
            + (" and spinor norm" if name == "spinor-norm" else ""),
        )
        _add_common(s)
        s.add_argument("--matrix", required=True, help="row-major isometry")

    t = subs.add_parser(
        "transfer-check", help="norm of a spinor norm, witnessed over the base"
    )
    _add_common(t, modulus=True)
    t.add_argument("--matrix", required=True, help="isometry over the extension")

    o = subs.add_parser("oracle", help="exhaustive norm-principle sweep")
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--max-rank", type=int, default=3)
    o.add_argument("--max-degree", type=int, default=2)
    o.add_argument("--guard", type=int, default=10**7)
    o.add_argument("--out", default=None)
    return parser


def _cmd_witness(args):
    domain = base_from_tag(args.base)
    space = _parse_gram_arg(domain, args.gram)
    algebra = parse_modulus(domain, _load_json(args.modulus, "modulus"))
    u = parse_ext_vector(
        algebra, _load_json(args.vector, "vector"), space.rank
    )
    witness = norm_principle_witness(space, algebra, u, _sampler(args))
    return witness_to_json(space, algebra, witness)


def _cmd_verify(args):
    try:
        with open(args.path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {args.path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.path}: invalid JSON ({exc})") from None
    space, algebra, witness = witness_from_json(doc)
    ok, reason = verify_witness(space, algebra, None, witness)
    return {
        "ok": ok,
        "reason": reason,
        "norm": format_scalar(algebra.base, witness.norm),
        "parity": witness.parity,
        "factors": len(witness.factors),
    }, ok


def _cmd_norm(args):
    domain = base_from_tag(args.base)
    algebra = parse_modulus(domain, _load_json(args.modulus, "modulus"))
    el = parse_element(algebra, _load_json(args.element, "element"))
    via_det = el.norm()
    via_res = el.norm_via_resultant()
    if via_det != via_res:
        raise InternalInvariant("determinant and resultant norms disagree")
    return {
        "base": domain.tag,
        "element": format_element(algebra, el),
        "norm": format_scalar(domain, via_det),
        "norm_resultant": format_scalar(domain, via_res),
        "trace": format_scalar(domain, el.trace()),
    }


def _cmd_decompose(args, with_mirrors):
    domain = base_from_tag(args.base)
    space = _parse_gram_arg(domain, args.gram)
    matrix = parse_base_matrix(
        domain, _load_json(args.matrix, "matrix"), space.rank
    )
    try:
        iso = Isometry(space, matrix)
    except ValueError as exc:
        raise ParseError(f"matrix: {exc}") from None
    sampler = _sampler(args)
    mirrors = cartan_dieudonne(iso, sampler)
    sn = domain.one
    for w in mirrors:
        sn = sn * space.evaluate(w)
    doc = {
        "base": domain.tag,
        "seed": args.seed,
        "det": format_scalar(domain, iso.det),
        "mirror_count": len(mirrors),
        "spinor_norm": format_scalar(domain, sn),
    }
    if with_mirrors:
        doc["mirrors"] = [format_base_vector(domain, w) for w in mirrors]
    return doc


def _cmd_transfer(args):
    domain = base_from_tag(args.base)
    space = _parse_gram_arg(domain, args.gram)
    algebra = parse_modulus(domain, _load_json(args.modulus, "modulus"))
    space_ext = space.base_change(algebra)
    matrix = parse_ext_matrix(
        algebra, _load_json(args.matrix, "matrix"), space.rank
    )
    try:
        iso = Isometry(space_ext, matrix)
        if iso.det != algebra.one:
            raise ValueError("determinant must be 1 for the transfer check")
    except ValueError as exc:
        raise ParseError(f"matrix: {exc}") from None
    witness, ok = transfer_check(space, algebra, iso, _sampler(args))
    doc = witness_to_json(space, algebra, witness)
    doc["spinor_norm"] = format_element(algebra, witness.input_value)
    doc["ok"] = ok
    return doc, ok


def _cmd_oracle(args):
    return exhaustive_norm_principle_check(
        args.p, args.max_rank, args.max_degree, guard=args.guard
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    ok = True
    try:
        if args.command == "witness":
            doc = _cmd_witness(args)
        elif args.command == "verify":
            doc, ok = _cmd_verify(args)
        elif args.command == "norm":
            doc = _cmd_norm(args)
        elif args.command == "spinor-norm":
            doc = _cmd_decompose(args, with_mirrors=False)
        elif args.command == "decompose":
            doc = _cmd_decompose(args, with_mirrors=True)
        elif args.command == "transfer-check":
            doc, ok = _cmd_transfer(args)
        else:
            doc = _cmd_oracle(args)
            ok = doc["ok"]
    except ParseError as exc:
        _emit({"error": "ParseError", "message": str(exc)}, None)
        return 2
    except MathError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, None)
        return 3
    except InternalInvariant as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, None)
        return 4
    _emit(doc, args.out)
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())

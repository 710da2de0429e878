"""czv: renormalised conical zeta values from the command line."""
from __future__ import annotations

import argparse
import json
import os
import sys

from .arith import Lattice, fmt_rational, parse_rational
from .checks import SUITES, passed, run_suite
from .coalgebra import ColouredLatticeCone, coproduct_coloured, reduced_coproduct, render_tensor
from .cones import (
    LatticeCone, chen_cone, chen_transverse_closed_form, faces, is_strongly_convex,
    make_lattice_cone, open_face_cover, simplicial_subdivide, smooth_subdivide, transverse_cone,
)
from .errors import CzvError, InvalidDirectionError, InvalidInputError, UnsupportedConeError
from .germs import pi_plus
from .renormalise import (
    chen_direction_valid, compare_schemes, default_order, exp_integral, exp_sum_open, mzv_ren,
    zeta_ren, zeta_ren_univariate,
)


def parse_cone_source(source: str) -> LatticeCone:
    """'chen:k', 'orthant:k', a JSON file, or inline JSON."""
    source = source.strip()
    for prefix in ("chen:", "orthant:"):
        if source.startswith(prefix):
            try:
                k = int(source[len(prefix):])
            except ValueError:
                raise InvalidInputError(f"bad dimension in {source!r}") from None
            if k <= 0:
                raise InvalidInputError("dimension must be positive")
            if prefix == "chen:":
                return chen_cone(k)
            return make_lattice_cone([[int(i == j) for j in range(k)] for i in range(k)])
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"cone is neither chen:k, a file, nor JSON ({e.msg})") from None
    if isinstance(data, list):
        data = {"generators": data}
    if not isinstance(data, dict) or "generators" not in data:
        raise InvalidInputError("cone JSON needs a 'generators' array")
    try:
        gens = [[parse_rational(str(x)) for x in g] for g in data["generators"]]
        lattice = None
        if data.get("lattice") is not None:
            lattice = Lattice.generated_by([[parse_rational(str(x)) for x in v]
                                            for v in data["lattice"]])
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"malformed cone entry: {e}") from None
    if not gens:
        raise InvalidInputError("a cone needs at least one generator")
    return make_lattice_cone(gens, lattice)


def _ints(text: str, what: str):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InvalidInputError(f"{what} must be comma-separated integers, got {text!r}") from None


def _rationals(text: str, what: str):
    try:
        return [parse_rational(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InvalidInputError(f"{what} must be comma-separated rationals, got {text!r}") from None


def _colour(args):
    s = _ints(args.colour, "colour") if args.colour else []
    if any(v > 0 for v in s):
        raise InvalidInputError("colours are nonpositive integers")
    return s


def _convex(lc):
    if not is_strongly_convex(lc):
        raise UnsupportedConeError(f"cone {lc} contains a line")
    return lc


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(text)


def _direction(args, lc):
    if not args.direction:
        raise InvalidInputError("the univariate scheme needs --direction")
    a = _rationals(args.direction, "direction")
    if lc == chen_cone(lc.ambient) and not chen_direction_valid(a):
        raise InvalidDirectionError(
            f"direction {','.join(fmt_rational(x) for x in a)} must satisfy a1 < ... < ak < 0")
    return a


def cmd_zeta(args):
    lc = _convex(parse_cone_source(args.cone))
    s = _colour(args)
    if args.scheme == "univariate":
        a = _direction(args, lc)
        value = zeta_ren_univariate(lc, a, args.order, s)
    else:
        value = zeta_ren(lc, s, args.order)
    _emit(args, fmt_rational(value), {"cone": lc.to_json(), "colour": s, "scheme": args.scheme,
                                      "value": fmt_rational(value)})


def cmd_mzv(args):
    s = args.values
    if args.scheme == "univariate":
        lc = chen_cone(len(s))
        a = _direction(args, lc)
        if any(v > 0 for v in s):
            raise InvalidInputError("only nonpositive arguments are renormalised")
        value = zeta_ren_univariate(lc, a, args.order, s)
    else:
        value = mzv_ren(s, args.order)
    _emit(args, fmt_rational(value), {"arguments": s, "scheme": args.scheme,
                                      "value": fmt_rational(value)})


def cmd_germ(args):
    lc = _convex(parse_cone_source(args.cone))
    s = _colour(args)
    N = default_order(s) if args.order is None else args.order
    f = exp_sum_open(lc, N, s)
    if args.project:
        f = pi_plus(f)
    _emit(args, str(f), f.to_json())


def cmd_integral(args):
    lc = _convex(parse_cone_source(args.cone))
    f = exp_integral(lc, _colour(args))
    _emit(args, str(f), f.to_json())


def cmd_coproduct(args):
    lc = _convex(parse_cone_source(args.cone))
    x = ColouredLatticeCone(lc, tuple(_colour(args)))
    t = reduced_coproduct(x) if args.reduced else coproduct_coloured(x)
    payload = [{"left": a.to_json(), "right": b.to_json(), "coefficient": fmt_rational(c)}
               for (a, b), c in t.items()]
    _emit(args, render_tensor(t), payload)


def cmd_subdivide(args):
    lc = _convex(parse_cone_source(args.cone))
    sub = simplicial_subdivide(lc) if args.simplicial else smooth_subdivide(lc)
    lines = [f"piece {i + 1}: {p}  index {p.index}" for i, p in enumerate(sub.pieces)]
    cover = open_face_cover(sub) if lc.is_simplicial or not args.simplicial else ()
    lines += [f"open face: {F}" for F in cover]
    _emit(args, "\n".join(lines), {"pieces": [p.to_json() for p in sub.pieces],
                                   "open_faces": [F.to_json() for F in cover]})


def cmd_transverse(args):
    lc = _convex(parse_cone_source(args.cone))
    if not lc.is_simplicial:
        raise UnsupportedConeError("faces are enumerated for simplicial cones only")
    idx = _ints(args.face or "", "face")
    n = len(lc.generators)
    if any(not 1 <= i <= n for i in idx):
        raise InvalidInputError(f"face indices must lie in 1..{n}")
    rays = {lc.rays[i - 1] for i in idx}
    F = next(F for F in faces(lc) if set(F.rays) == rays)
    t = transverse_cone(lc, F)
    payload = {"face": F.to_json(), "transverse": t.to_json()}
    text = f"face: {F}\ntransverse: {t}"
    if lc == chen_cone(lc.ambient):
        closed = chen_transverse_closed_form(lc.ambient, idx)
        payload["closed_form"] = [[fmt_rational(x) for x in v] for v in closed]
        text += "\nclosed form: " + ", ".join("(" + ",".join(fmt_rational(x) for x in v) + ")"
                                             for v in closed)
    _emit(args, text, payload)


def cmd_compare(args):
    lc = _convex(parse_cone_source(args.cone))
    a = _direction(args, lc)
    report = compare_schemes(lc, a, args.order, _colour(args))
    print(json.dumps(report, ensure_ascii=False, indent=2))
    return 0 if passed(report) else 1


def cmd_check(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(n, args.order) for n in names]
    out = reports[0] if len(reports) == 1 else {"suite": "all", "reports": reports}
    print(json.dumps(out, ensure_ascii=False, indent=2, default=str))
    return 0 if all(passed(r) for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="czv", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, cone=True, colour=True):
        if cone:
            sp.add_argument("--cone", required=True,
                            help="chen:k, orthant:k, a JSON file, or inline JSON")
        if colour:
            sp.add_argument("--colour", "--color", default="",
                            help="comma-separated nonpositive integers, e.g. --colour=-1,0")
        sp.add_argument("--order", type=int, default=None, help="working jet order")
        sp.add_argument("--json", action="store_true", help="structured output")

    sp = sub.add_parser("zeta", help="renormalised conical zeta value")
    common(sp)
    sp.add_argument("--scheme", choices=("multivariate", "univariate"), default="multivariate")
    sp.add_argument("--direction", help="a1,...,ak for the univariate scheme")
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("mzv", help="renormalised multiple zeta value at nonpositive arguments")
    sp.add_argument("values", type=int, nargs="+")
    sp.add_argument("--scheme", choices=("multivariate", "univariate"), default="multivariate")
    sp.add_argument("--direction")
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_mzv)

    sp = sub.add_parser("germ", help="exponential sum S° as a jet")
    common(sp)
    sp.add_argument("--project", action="store_true", help="apply π₊")
    sp.set_defaults(func=cmd_germ)

    sp = sub.add_parser("integral", help="exponential integral I")
    common(sp)
    sp.set_defaults(func=cmd_integral)

    sp = sub.add_parser("coproduct", help="coproduct of a coloured lattice cone")
    common(sp)
    sp.add_argument("--reduced", action="store_true")
    sp.set_defaults(func=cmd_coproduct)

    sp = sub.add_parser("subdivide", help="smooth (or simplicial) subdivision")
    common(sp, colour=False)
    sp.add_argument("--simplicial", action="store_true")
    sp.set_defaults(func=cmd_subdivide)

    sp = sub.add_parser("transverse", help="transverse cone along a face")
    common(sp, colour=False)
    sp.add_argument("--face", default="", help="1-based generator indices, e.g. 1,3")
    sp.set_defaults(func=cmd_transverse)

    sp = sub.add_parser("compare", help="compare the univariate and multivariate schemes")
    common(sp)
    sp.add_argument("--direction", required=True)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("check", help="run a self-check suite")
    sp.add_argument("--suite", default="all", choices=["all"] + list(SUITES))
    sp.add_argument("--order", type=int, default=None)
    sp.set_defaults(func=cmd_check)
    return p


def _glue_negative_values(argv):
    """Let '--colour -1,0' through: argparse would read -1,0 as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--colour", "--color", "--direction") and i + 1 < len(argv) \
                and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        return args.func(args) or 0
    except CzvError as e:
        print(f"czv: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"czv: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

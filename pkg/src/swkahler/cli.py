"""Command-line front end.

Every subcommand parses its parameters, calls one library function and
prints the result. Exit status: 0 on success, 1 on a domain error, 2 on
malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from fractions import Fraction

from . import basic_classes, checks, elliptic, lattice, surface
from .errors import DomainError, MalformedInput


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(_fmt(v) for v in value) + ")"
    return str(value)


def _emit(out, fmt: str, records: list[dict], plain: str | None = None):
    """Machine format: key=value lines, records separated by blank lines.

    Table format: ``plain`` if given, else an aligned key/value listing.
    """
    if fmt == "machine":
        chunks = ["\n".join(f"{k}={_fmt(v)}" for k, v in rec.items()) for rec in records]
        out.write("\n\n".join(chunks) + "\n")
        return
    if plain is not None:
        out.write(plain + "\n")
        return
    for n, rec in enumerate(records):
        if n:
            out.write("\n")
        width = max((len(k) for k in rec), default=0)
        for k, v in rec.items():
            out.write(f"{k.ljust(width)}  {_fmt(v)}\n")


def _read_document(args, stdin):
    path = getattr(args, "input", None)
    try:
        if path is None or path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read input: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"input is not valid JSON: {exc}") from None


def _surface(args, stdin) -> surface.SurfaceInvariants:
    if args.pg is not None or args.q is not None or args.kmin_sq is not None:
        missing = [n for n in ("pg", "q", "kmin_sq") if getattr(args, n) is None]
        if missing:
            raise MalformedInput(f"missing flags: {', '.join('--' + m.replace('_', '-') for m in missing)}")
        return surface.SurfaceInvariants(
            args.pg, args.q, args.kmin_sq, args.torsion, args.n_exc
        )
    doc = _read_document(args, stdin)
    if isinstance(doc, dict) and "surface" in doc:
        doc = doc["surface"]
    return surface.SurfaceInvariants.from_dict(doc)


def _vector(doc, key):
    try:
        return lattice.as_vector(doc[key])
    except (KeyError, TypeError):
        raise MalformedInput(f"missing or malformed vector {key!r}") from None


def cmd_surface_info(args, out, stdin):
    dv = surface.derive(_surface(args, stdin))
    _emit(out, args.format, [asdict(dv)])


def cmd_kodaira(args, out, stdin):
    k = surface.kodaira_dimension(_surface(args, stdin))
    _emit(out, args.format, [{"kodaira": k}], str(k))


def cmd_plurigenus(args, out, stdin):
    p = surface.plurigenus(_surface(args, stdin), args.n)
    _emit(out, args.format, [{"n": args.n, "plurigenus": p}], str(p))


def cmd_vdim(args, out, stdin):
    v = surface.vdim_real(_surface(args, stdin), args.l_sq)
    _emit(out, args.format, [{"l_sq": args.l_sq, "vdim": v}], _fmt(v))


def cmd_swmult(args, out, stdin):
    if args.series:
        n = elliptic.sw_mult_series(args.chi, args.g, args.d)
    else:
        n = elliptic.sw_mult_closed(args.chi, args.g, args.d)
    _emit(out, args.format, [{"chi": args.chi, "g": args.g, "d": args.d, "n": n}], str(n))


def cmd_blowup(args, out, stdin):
    n = elliptic.sw_mult_blowup(args.chi, args.g, args.d, args.a)
    rec = {"chi": args.chi, "g": args.g, "d": args.d, "a": args.a, "n": n}
    _emit(out, args.format, [rec], str(n))


def cmd_divisibility(args, out, stdin):
    if args.p is None and args.q is None:
        surf = elliptic.EllipticSurface.from_dict(_read_document(args, stdin))
        d = elliptic.general_divisibility(surf)
        _emit(out, args.format, [{"d": d}], str(d))
        return
    if args.p is None or args.q is None:
        raise MalformedInput("--p and --q must be given together")
    d, d2 = elliptic.expected_divisibilities(args.p, args.q, args.pg)
    rec = {"p": args.p, "q": args.q, "p_g": args.pg, "d": d, "d2": d2}
    _emit(out, args.format, [rec])


def cmd_recover(args, out, stdin):
    data = elliptic.RecoveryInput(args.pg, args.gcd, args.d, args.d2)
    p, q = elliptic.recover_multiplicities(data)
    _emit(out, args.format, [{"p": p, "q": q}], f"({p},{q})")


def cmd_candidates(args, out, stdin):
    doc = _read_document(args, stdin)
    if not isinstance(doc, dict):
        raise MalformedInput("candidates input must be a mapping")
    try:
        inv = surface.SurfaceInvariants.from_dict(doc["surface"])
        lat = lattice.IntersectionLattice.from_dict(doc["lattice"])
        exceptionals = [lattice.as_vector(e) for e in doc.get("exceptionals", [])]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad candidates document: {exc}") from None
    cands = basic_classes.enumerate_candidates(inv, lat, _vector(doc, "kmin"), exceptionals)
    records = [
        {"lambda": c.lam, "signs": c.signs, "vector": c.vector, "square": c.square}
        for c in cands
    ]
    if args.format == "machine":
        _emit(out, args.format, [{"count": len(cands)}] + records)
    else:
        lines = [f"{len(cands)} candidates"]
        lines += [f"{_fmt(c.vector)}  lambda={_fmt(c.lam)}  square={c.square}" for c in cands]
        _emit(out, args.format, [], "\n".join(lines))


def cmd_reflect(args, out, stdin):
    doc = _read_document(args, stdin)
    if not isinstance(doc, dict) or "lattice" not in doc:
        raise MalformedInput("reflect input needs a 'lattice' record")
    lat = lattice.IntersectionLattice.from_dict(doc["lattice"])
    r = lattice.reflect_sphere(lat, _vector(doc, "v"), _vector(doc, "s"))
    _emit(out, args.format, [{"image": r}], _fmt(r))


def cmd_selftest(args, out, stdin):
    results = checks.run_all()
    failed = [name for name, ok in results if not ok]
    if args.format == "machine":
        _emit(out, args.format, [{name: ok for name, ok in results} | {"failed": len(failed)}])
    else:
        for name, ok in results:
            out.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")
        out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    if failed:
        raise DomainError(f"selftest failed: {', '.join(failed)}")


COMMANDS = {
    "surface-info": cmd_surface_info,
    "kodaira": cmd_kodaira,
    "plurigenus": cmd_plurigenus,
    "vdim": cmd_vdim,
    "swmult": cmd_swmult,
    "blowup": cmd_blowup,
    "divisibility": cmd_divisibility,
    "recover": cmd_recover,
    "candidates": cmd_candidates,
    "reflect": cmd_reflect,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="swkahler", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "machine"), default="table")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    def surface_flags(p):
        p.add_argument("input", nargs="?", help="JSON surface record (default: stdin)")
        p.add_argument("--pg", type=int)
        p.add_argument("--q", type=int)
        p.add_argument("--kmin-sq", type=int)
        p.add_argument("--torsion", type=int, default=0)
        p.add_argument("--n-exc", type=int, default=0)

    surface_flags(add("surface-info", "derived topological invariants"))
    surface_flags(add("kodaira", "Kodaira dimension"))
    p = add("plurigenus", "P_n of a surface of general type")
    surface_flags(p)
    p.add_argument("--n", type=int, required=True)
    p = add("vdim", "real virtual dimension for c_1(L)^2 = L_SQ")
    surface_flags(p)
    p.add_argument("--l-sq", type=int, required=True)

    p = add("swmult", "Seiberg-Witten multiplicity of a vertical bundle")
    for flag in ("--chi", "--g", "--d"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--series", action="store_true", help="use the Chern-class route")
    p = add("blowup", "multiplicity of L(aE) on a one-point blow-up")
    for flag in ("--chi", "--g", "--d", "--a"):
        p.add_argument(flag, type=int, required=True)

    p = add("divisibility", "divisibility of K_X")
    p.add_argument("input", nargs="?", help="JSON elliptic surface record, if --p/--q absent")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--pg", type=int, default=0)
    p = add("recover", "multiplicities (p,q) from p_g, |pi_1| and divisibilities")
    p.add_argument("--pg", type=int, required=True)
    p.add_argument("--gcd", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--d2", type=int)

    p = add("candidates", "candidate basic classes")
    p.add_argument("input", nargs="?")
    p = add("reflect", "reflect v in a (-1)- or (-2)-class s")
    p.add_argument("input", nargs="?")
    add("selftest", "run the oracle grid")
    return parser


def main(argv=None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, out, stdin)
    except MalformedInput as exc:
        err.write(f"error: malformed input: {exc}\n")
        return 2
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 0


def main_entry():
    sys.exit(main())

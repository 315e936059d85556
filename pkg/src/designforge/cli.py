"""Command-line front end.

Reports are ``key: value`` lines, or one JSON object with ``--json``.
Exit status: 0 success, 1 domain error, 2 input/parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import biplane as bpmod
from . import latin, optimality, sylvester
from .arrays import LetterArray, check_conditions, check_rank_inequalities, format_array, parse_array
from .designs import format_design, parse_design, read_design, shipped_biplane_design
from .errors import DesignError, ParseError

BIPLANE_NAMES = ("(7,4,2)", "(11,5,2)", "(16,6,2)", "(37,9,2)")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return " ".join(_fmt(v) for v in value)
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(report, sort_keys=False) + "\n")
    else:
        for key, value in report.items():
            out.write(f"{key}: {_fmt(value)}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path, out) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def _is_design_text(text: str) -> bool:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            return len(line.split()) == 2
    return False


def _load_biplane(args):
    d = read_design(args.file) if args.file else shipped_biplane_design(args.name)
    return bpmod.as_biplane(d)


# -- subcommands -------------------------------------------------------------


def cmd_construct_latin(args, out):
    phi1 = latin.parse_latin(_read_text(args.phi1)) if args.phi1 else latin.cyclic_latin(args.n)
    phi3 = latin.parse_latin(_read_text(args.phi3)) if args.phi3 else None
    if phi1.n != args.n:
        raise ParseError(f"phi1 has order {phi1.n}, expected {args.n}")
    arr = latin.construct_latin_sesqui(phi1, None, phi3)
    _write(format_array(arr), args.output, out)


def cmd_construct_sylvester(args, out):
    a0, b0 = args.edge if args.edge else (None, None)
    res = sylvester.sylvester_pipeline(a0, b0)
    array_text = format_array(res.delta, comments=[
        f"edge: {res.label.a0} {res.label.b0}",
        "rows: * then A; columns: A x B row-major",
    ])
    design_text = format_design(res.theta)
    _write(array_text, args.array_out, out)
    if args.design_out:
        _write(design_text, args.design_out, out)
    else:
        out.write("# theta\n" + design_text)


def cmd_construct_biplane(args, out):
    bp = _load_biplane(args)
    built = bpmod.construct_array(bp, args.block)
    rep = bpmod.block_chain_report(bp, args.block)
    comments = [
        f"biplane: V={bp.V} K={bp.K} block={args.block}",
        f"binary: {_fmt(built.binary)}",
        f"four_cycle_free: {_fmt(rep.four_cycle_free)}",
        f"all_triangles: {_fmt(rep.all_triangles)}",
    ]
    _write(format_array(built.array, comments), args.output, out)


def _classification_report(arr: LetterArray) -> dict:
    return check_conditions(arr).as_dict()


def cmd_verify(args, out):
    arr = parse_array(_read_text(args.file))
    _emit(_classification_report(arr), args.json, out)


def _spectrum_report(spec: optimality.EfficiencySpectrum, points: int, block_size: int) -> dict:
    rep = spec.as_dict()
    rep["sum_rule"] = optimality.spectrum_sum_check(spec, points, block_size)
    return rep


def cmd_analyze(args, out):
    text = _read_text(args.file)
    if _is_design_text(text):
        d = parse_design(text)
        spec = optimality.efficiency_spectrum(d)
        rep = {"object": "design", "points": d.v_points, "blocks": d.b}
        rep.update(_spectrum_report(spec, d.v_points, d.block_sizes[0]))
        _emit(rep, args.json, out)
        return
    arr = parse_array(text)
    rep = {"object": "array", "component": args.component}
    if args.component == "combined":
        res = optimality.combined_analysis(arr)
        rep.update(res.spectrum.as_dict())
        rep.update(res.em.as_dict())
        rep["general_balance"] = res.general_balance
    else:
        if args.component == "row":
            d = optimality.row_component(arr)
        else:
            d = optimality.column_component(arr)
        spec = optimality.efficiency_spectrum(d)
        rep.update(_spectrum_report(spec, d.v_points, d.block_sizes[0]))
    _emit(rep, args.json, out)


def _scan_line(bp, j) -> dict:
    scan = bpmod.scan_block(bp, j)
    rep = scan.report
    hist = " ".join(f"{bpmod.format_cycle_type(t)}x{n}" for t, n in rep.histogram.items())
    cls = scan.classification
    return {
        "block": j,
        "chains": hist,
        "four_cycle_free": rep.four_cycle_free,
        "all_triangles": rep.all_triangles,
        "classification": cls.kind.value if cls else None,
        "notation": cls.notation() if cls else None,
    }


def cmd_scan_biplane(args, out):
    bp = _load_biplane(args)
    blocks = range(bp.V)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            lines = list(pool.map(lambda j: _scan_line(bp, j), blocks))
    else:
        lines = [_scan_line(bp, j) for j in blocks]
    if args.json:
        out.write(json.dumps({"V": bp.V, "K": bp.K, "blocks": lines}) + "\n")
        return
    out.write(f"biplane: V={bp.V} K={bp.K}\n")
    for ln in lines:
        out.write(
            f"block {ln['block']}: chains={ln['chains']} four_cycle_free={_fmt(ln['four_cycle_free'])} "
            f"all_triangles={_fmt(ln['all_triangles'])} classification={_fmt(ln['classification'])}"
            + (f" {ln['notation']}" if ln["notation"] else "") + "\n"
        )


def cmd_rank(args, out):
    arr = parse_array(_read_text(args.file))
    _emit(check_rank_inequalities(arr).as_dict(), args.json, out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="designforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct-latin", help="(n+1) x n^2 sesqui-array from Latin squares")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--phi1", help="Latin square file of order n (default cyclic)")
    s.add_argument("--phi3", help="Latin square file of order n+1, 'inf' marks infinity")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct_latin)

    s = sub.add_parser("construct-sylvester", help="7 x 36 sesqui-array and the 36-point design")
    s.add_argument("--edge", type=int, nargs=2, metavar=("A0", "B0"))
    s.add_argument("--array-out")
    s.add_argument("--design-out")
    s.set_defaults(func=cmd_construct_sylvester)

    for name, func, helptext in (
        ("construct-biplane", cmd_construct_biplane, "K x (V-K) array from a biplane block"),
        ("scan-biplane", cmd_scan_biplane, "per-block Hussain chain report"),
    ):
        s = sub.add_parser(name, help=helptext)
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("--name", help=f"one of {', '.join(BIPLANE_NAMES)} or a file in $DESIGNFORGE_DATA")
        src.add_argument("--file", help="design file")
        if name == "construct-biplane":
            s.add_argument("--block", type=int, required=True)
            s.add_argument("-o", "--output")
        else:
            s.add_argument("--jobs", type=int, default=1)
            s.add_argument("--json", action="store_true")
        s.set_defaults(func=func)

    s = sub.add_parser("verify", help="classify an array file")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("analyze", help="efficiency factors of a design or array component")
    s.add_argument("file")
    s.add_argument("--component", choices=("row", "column", "combined"), default="column")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("rank", help="incidence ranks and rank inequalities")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_rank)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except DesignError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    except (ParseError, OSError) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

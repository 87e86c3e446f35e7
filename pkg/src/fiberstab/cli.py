"""Command-line front end.

Exit codes: 0 ok / Inside, 1 negative verdict / Outside, 2 Indeterminate,
3 OnWallBand, 64 usage error, 65 domain error, 70 internal error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import autgroup, dlp, exceptional, picard, walls
from .chamber import (
    ChamberKind,
    CentralCharge,
    QComplex,
    SlicePoint,
    classify_float,
    classify_image,
    in_geometric_chamber,
    projection_f,
)
from .errors import FiberStabError, OutOfWindow

EXIT_OK, EXIT_NEGATIVE, EXIT_INDETERMINATE, EXIT_WALL = 0, 1, 2, 3
EXIT_USAGE, EXIT_DOMAIN, EXIT_INTERNAL = 64, 65, 70

_VERDICT_EXIT = {
    ChamberKind.INSIDE: EXIT_OK,
    ChamberKind.OUTSIDE: EXIT_NEGATIVE,
    ChamberKind.INDETERMINATE: EXIT_INDETERMINATE,
    ChamberKind.ON_WALL_BAND: EXIT_WALL,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _qc(text: str) -> QComplex:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 're,im', got {text!r}")
    return QComplex(_rat(parts[0]), _rat(parts[1]))


def _fc(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 're,im', got {text!r}")
    try:
        return complex(float(Fraction(parts[0])), float(Fraction(parts[1])))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad complex number {text!r}") from exc


def _ints(text: str, n: int = 3) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected {n} integers, got {text!r}") from exc
    if len(vals) != n:
        raise UsageError(f"expected {n} integers, got {text!r}")
    return vals


def _scalars(text: str) -> tuple:
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            out.append(Fraction(part))
        except (ValueError, ZeroDivisionError):
            try:
                out.append(complex(part.replace("i", "j")))
            except ValueError as exc:
                raise UsageError(f"bad scalar {part!r}") from exc
    if len(out) != 3:
        raise UsageError(f"expected three scalars, got {text!r}")
    return tuple(out)


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _write_csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    """One JSON value per line for top-level lists, otherwise a single line."""
    if isinstance(obj, list):
        if not obj:
            return "[]\n"
        body = ",\n".join(" " + json.dumps(x, sort_keys=True, ensure_ascii=False) for x in obj)
        return "[\n" + body + "\n]\n"
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _model_around(order: int, x: Fraction) -> dlp.EnvelopeModel:
    k = math.floor(x)
    return dlp.EnvelopeModel.build(order, k, k + 1)


# --- subcommands -----------------------------------------------------------

def cmd_exceptional_enumerate(args) -> tuple[int, str]:
    lo = _rat(args.lo) if args.lo is not None else Fraction(0)
    hi = _rat(args.hi) if args.hi is not None else lo + 1
    classes = exceptional.enumerate_exceptional(args.max_rank, lo, hi)
    if args.format == "json":
        rows = [dict(zip(exceptional.CSV_COLUMNS, exceptional.csv_row(e))) for e in classes]
        return EXIT_OK, _dump(rows)
    return EXIT_OK, exceptional.to_csv(classes)


def cmd_dlp_eval(args) -> tuple[int, str]:
    mu = _rat(args.mu)
    order = args.order or args.max_rank
    val = dlp.delta_at(_model_around(order, mu), mu)
    if args.format == "json":
        return EXIT_OK, _dump({"mu": _fmt(mu), "delta": _fmt(val), "order": order})
    return EXIT_OK, f"{val}\n{float(val):.12f}\n"


def cmd_dlp_curve(args) -> tuple[int, str]:
    order = args.order or args.max_rank
    lo, hi, step = _rat(args.lo), _rat(args.hi), _rat(args.step)
    if step <= 0 or hi < lo:
        raise UsageError("need step > 0 and lo <= hi")
    m = dlp.EnvelopeModel.build(order, lo, hi)
    pts = dlp.curve(m, lo, hi, step)
    if args.format == "json":
        return EXIT_OK, _dump([{"mu": _fmt(x), "delta_N": _fmt(y), "N": order} for x, y in pts])
    return EXIT_OK, _write_csv(((_fmt(x), _fmt(y), order) for x, y in pts), ("mu", "delta_N", "N"))


def cmd_chamber_test(args) -> tuple[int, str]:
    if args.float_mode:
        a, b = _fc(args.a), _fc(args.b)
        if a.imag <= 0:
            raise _DomainExit(f"Im a must be positive, got {a}")
        B = -b.imag / a.imag + 0.0
        m = _model_around(args.max_rank, Fraction(math.floor(B)))
        verdict = classify_float(a, b, m)
        g = -b.real - B * a.real + B * B / 2
        image = f"B={B!r} g={g!r}"
    else:
        a, b = _qc(args.a), _qc(args.b)
        if a.im <= 0:
            raise _DomainExit(f"Im a must be positive, got a = {a}")
        p = SlicePoint(a, b)
        B, g = projection_f(p)
        verdict = in_geometric_chamber(p, _model_around(args.max_rank, B))
        image = f"B={_fmt(B)} g={_fmt(g)}"
    if args.format == "json":
        return _VERDICT_EXIT[verdict.kind], _dump({"verdict": str(verdict), "f_image": image})
    return _VERDICT_EXIT[verdict.kind], f"{verdict}\n{image}\n"


def cmd_chamber_slice(args) -> tuple[int, str]:
    x0, x1 = (_rat(t) for t in args.x.split(","))
    y0, y1 = (_rat(t) for t in args.y.split(","))
    nx, ny = args.nx, args.ny
    if nx < 1 or ny < 1 or x1 < x0 or y1 < y0:
        raise UsageError("bad slice rectangle")
    m = dlp.EnvelopeModel.build(args.max_rank, x0, x1)
    rows = []
    for i in range(nx + 1):
        x = x0 + (x1 - x0) * i / nx
        for j in range(ny + 1):
            y = y0 + (y1 - y0) * j / ny
            rows.append((_fmt(x), _fmt(y), str(classify_image(m, x, y))))
    for i in range(nx + 1):
        x = x0 + (x1 - x0) * i / nx
        rows.append((_fmt(x), _fmt(dlp.delta_at(m, x)), "curve"))
    for e in sorted(m.contributors, key=lambda e: e.mu):
        if x0 <= e.mu <= x1:
            rows.append((_fmt(e.mu), _fmt(e.delta), "exceptional"))
    return EXIT_OK, _write_csv(rows, ("x", "y", "verdict"))


def cmd_walls_crossings(args) -> tuple[int, str]:
    try:
        with open(args.path, encoding="utf-8") as fh:
            path = walls.PathSpec.from_json(json.load(fh))
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read path file: {exc}") from exc
    m = dlp.EnvelopeModel.build(args.max_rank, 0, 1)
    records = walls.detect_crossings(path, m)
    return EXIT_OK, _dump([r.to_json() for r in records])


def cmd_walls_normalize(args) -> tuple[int, str]:
    p = SlicePoint(_qc(args.a), _qc(args.b))
    z = CentralCharge.from_slice(p)
    gens = walls.default_generators(args.gen_rank)
    if args.apply:
        word = []
        for item in args.apply.split(","):
            slope_txt, _, exp_txt = item.partition(":")
            e = exceptional.exceptional_at_slope(_rat(slope_txt), max(args.gen_rank, args.max_rank))
            if e is None:
                raise _DomainExit(f"no exceptional class at slope {slope_txt}")
            word.append((e, int(exp_txt or 1)))
        z = walls.apply_word(z, word)
    m = dlp.EnvelopeModel.build(args.max_rank, 0, 1)
    word, q = walls.normalize_to_geometric(z, m, args.max_word, gens)
    out = {
        "word": [{"slope": _fmt(e.mu), "rank": e.rank, "exponent": k} for e, k in word],
        "a": [_fmt(q.a.re), _fmt(q.a.im)],
        "b": [_fmt(q.b.re), _fmt(q.b.im)],
    }
    return EXIT_OK, _dump(out)


def cmd_group_word(args) -> tuple[int, str]:
    mu = _rat(args.slope)
    e = exceptional.exceptional_at_slope(mu, max(args.max_rank, mu.denominator))
    if e is None:
        raise _DomainExit(f"no exceptional class at slope {mu}")
    w = autgroup.express_twist_as_word(e, args.max_len)
    if args.format == "json":
        return EXIT_OK, _dump(w.to_json())
    return EXIT_OK, w.word_str() + "\n"


def cmd_group_verify(args) -> tuple[int, str]:
    ok = autgroup.verify_braid_relation()
    return (EXIT_OK if ok else EXIT_NEGATIVE), ("(αβ)^3 = 1\n" if ok else "relation fails\n")


def _group_element(text: str) -> autgroup.GroupElement:
    try:
        obj = json.loads(text)
        gamma = autgroup.from_word(obj.get("word", ""))
        aut = autgroup.AutXElement(
            tuple(obj.get("perm", (1, 2, 3))),
            _scalars(",".join(str(s) for s in obj.get("scalars", (1, 1, 1)))),
        )
        return autgroup.GroupElement(int(obj.get("shift", 0)), gamma, aut)
    except (ValueError, TypeError, AttributeError) as exc:
        raise UsageError(f"bad group element {text!r}: {exc}") from exc


def cmd_group_compose(args) -> tuple[int, str]:
    prod = _group_element(args.x) * _group_element(args.y)
    return EXIT_OK, _dump(prod.to_json())


def _gluing(args) -> picard.GluingData:
    return picard.GluingData(_ints(args.n), _scalars(args.phi))


def cmd_pic_normalform(args) -> tuple[int, str]:
    return EXIT_OK, _dump(picard.normal_form(_gluing(args)).to_json())


def cmd_pic_glue(args) -> tuple[int, str]:
    m = picard.glue_on_X(args.deg0, _gluing(args))
    if args.format == "json":
        return (EXIT_OK if m is not None else EXIT_NEGATIVE), _dump({"degree": m})
    if m is None:
        return EXIT_NEGATIVE, "none\n"
    return EXIT_OK, f"{m}\n"


class _DomainExit(Exception):
    pass


# --- parser ----------------------------------------------------------------

def _globals(suppress: bool) -> argparse.ArgumentParser:
    kw = {"argument_default": argparse.SUPPRESS} if suppress else {}
    p = _Parser(add_help=False, **kw)
    p.add_argument("--max-rank", type=int, **({} if suppress else {"default": 34}))
    p.add_argument("--format", choices=("json", "csv"), **({} if suppress else {"default": "csv"}))
    p.add_argument("--exact", dest="float_mode", action="store_false",
                   **({} if suppress else {"default": False}))
    p.add_argument("--float", dest="float_mode", action="store_true")
    p.add_argument("--seed", type=int, **({} if suppress else {"default": 0}))
    p.add_argument("-o", dest="output", **({} if suppress else {"default": None}))
    return p


def build_parser() -> argparse.ArgumentParser:
    sub_globals = _globals(suppress=True)
    parser = _Parser(prog="fiberstab", parents=[_globals(suppress=False)],
                     description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def add(group, name, func, help_):
        sp = group.add_parser(name, parents=[sub_globals], help=help_)
        sp.set_defaults(func=func)
        return sp

    g = groups.add_parser("exceptional").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sp = add(g, "enumerate", cmd_exceptional_enumerate, "list exceptional classes")
    sp.add_argument("--lo")
    sp.add_argument("--hi")

    g = groups.add_parser("dlp").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sp = add(g, "eval", cmd_dlp_eval, "evaluate the envelope at one slope")
    sp.add_argument("--mu", required=True)
    sp.add_argument("--order", type=int)
    sp = add(g, "curve", cmd_dlp_curve, "sample the envelope")
    sp.add_argument("--order", type=int)
    sp.add_argument("--lo", default="0")
    sp.add_argument("--hi", default="1")
    sp.add_argument("--step", default="1/200")

    g = groups.add_parser("chamber").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sp = add(g, "test", cmd_chamber_test, "classify a slice point")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp = add(g, "slice", cmd_chamber_slice, "grid of verdicts over the (B, g) plane")
    sp.add_argument("--x", default="-1,1")
    sp.add_argument("--y", default="-1/2,3/2")
    sp.add_argument("--nx", type=int, default=40)
    sp.add_argument("--ny", type=int, default=40)

    g = groups.add_parser("walls").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sp = add(g, "crossings", cmd_walls_crossings, "walls crossed by a piecewise-linear path")
    sp.add_argument("--path", required=True)
    sp = add(g, "normalize", cmd_walls_normalize, "twist a charge back into the chamber")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--apply", help="twists applied first, e.g. '0:1,1/2:-1'")
    sp.add_argument("--max-word", type=int, default=4)
    sp.add_argument("--gen-rank", type=int, default=5)

    g = groups.add_parser("group").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sp = add(g, "word", cmd_group_word, "express a half twist as a word in α, β")
    sp.add_argument("--slope", required=True)
    sp.add_argument("--max-len", type=int, default=8)
    add(g, "verify-relation", cmd_group_verify, "check (αβ)^3 = 1")
    sp = add(g, "compose", cmd_group_compose, "multiply two elements of Z × Γ₁(3) × Aut(X)")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)

    g = groups.add_parser("pic").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sp = add(g, "normalform", cmd_pic_normalform, "normal form of gluing data")
    sp.add_argument("--n", required=True)
    sp.add_argument("--phi", default="1,1,1")
    sp = add(g, "glue", cmd_pic_glue, "glue O(deg0) on the plane to gluing data on W")
    sp.add_argument("--deg0", type=int, required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--phi", default="1,1,1")
    return parser


_NEG_VALUE = re.compile(r"^-[\d/.]")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--b -1/4,0`` into ``--b=-1/4,0`` so argparse takes it as a value."""
    out: list[str] = []
    for tok in argv:
        if out and _NEG_VALUE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
        if args.max_rank < 1:
            raise UsageError("--max-rank must be >= 1")
        code, text = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (_DomainExit, FiberStabError, OutOfWindow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Every subcommand loads a scene (a builtin name like ``p2`` or a scene file),
computes exactly, and prints a deterministic record: one ``key value...`` line
per fact, in a fixed order, with canonical element rendering.  Exit status is
0 on success, 1 when a verification or solvability check fails, and 2 on
malformed input.
"""

import argparse
import json
import sys

from . import descent, points
from .errors import InsufficientPrecision, NotInW, TubularError
from .laurent import Box
from .matrices import RMatrix, birkhoff, two_sided_factor
from .rings import Element, RingTag
from .scene import load_scene
from .textio import parse_element

#: Exit status for a failed verification / undecidable instance.
EXIT_CHECK = 1
#: Exit status for malformed input.
EXIT_INPUT = 2


class CheckFailure(Exception):
    """A computation ran but its verdict is a failure (exit status 1)."""


def _parse_box(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("box wants t_low:t_high:y_deg")
    return Box(int(parts[0]), int(parts[1]), int(parts[2]))


def _chart(scene, name):
    if name is None:
        return scene.cover.charts[0]
    return scene.cover.charts[scene.chart_index(name)]


def _box(scene, args):
    return _parse_box(args.box) if args.box else scene.box


def _prec(scene, args):
    return args.prec if args.prec is not None else scene.prec


def _gens(scene, chart, text):
    """Region generators (comma separated); defaults to the adic coordinate."""
    from .laurent import TLaurent
    if not text:
        return [TLaurent.t_power(chart, 1)]
    return [parse_element(t, chart) for t in text.split(",")]


def _load_matrix(scene, path, prec):
    """Read a matrix record {"tag", "chart", "entries"} (path or '-')."""
    data = sys.stdin.read() if path == "-" else open(path).read()
    obj = json.loads(data)
    tag = RingTag[obj["tag"]]
    chart = _chart(scene, obj.get("chart"))
    entries = []
    for row in obj["entries"]:
        parsed = []
        for text in row:
            val = parse_element(text, chart)
            if tag in (RingTag.XHAT, RingTag.W) and val.prec is None:
                val = val.truncate(prec)
            parsed.append(val)
        entries.append(tuple(parsed))
    return RMatrix(chart, tag, tuple(entries))


def _matrix_record(m):
    return json.dumps({"tag": str(m.tag), "chart": m.chart.name,
                       "entries": m.render_rows()}, sort_keys=True)


def _emit(out, *words):
    out.write(" ".join(str(w) for w in words) + "\n")


# -- subcommand bodies ------------------------------------------------------

def cmd_classify(args, out):
    scene = load_scene(args.scene)
    chart = _chart(scene, args.chart)
    p = points.parse_point(args.point, chart)
    gens = _gens(scene, chart, args.gens)
    _emit(out, "region", points.classify_region(p, gens))


def cmd_fiber(args, out):
    scene = load_scene(args.scene)
    chart = _chart(scene, args.chart)
    p = points.parse_point(args.point, chart)
    gens = _gens(scene, chart, args.gens)
    _emit(out, "fiber", points.fiber_coord(p, gens))


def cmd_power(args, out):
    scene = load_scene(args.scene)
    chart = _chart(scene, args.chart)
    p = points.parse_point(args.point, chart)
    _emit(out, "point", points.render_point(points.power_point(p, args.exponent)))


def cmd_chart_select(args, out):
    scene = load_scene(args.scene)
    chart = _chart(scene, args.chart)
    p = points.parse_point(args.point, chart)
    gens = _gens(scene, chart, args.gens)
    _emit(out, "chart", points.chart_select(p, gens))


def cmd_global_sections(args, out):
    scene = load_scene(args.scene)
    basis = descent.global_sections(scene.cover, args.tag, _box(scene, args))
    _emit(out, "dimension", basis.dimension)
    if args.basis:
        for i, vec in enumerate(basis.vectors):
            for chart, val in zip(scene.cover.charts, vec):
                _emit(out, "section", i, chart.name, val.render())


def cmd_global_units(args, out):
    scene = load_scene(args.scene)
    units = descent.global_units(scene.cover, args.tag, _box(scene, args))
    _emit(out, "count", len(units))
    for u in sorted(units, key=lambda u: u.key()):
        for chart, (d, e) in zip(scene.cover.charts, u.exps):
            from .laurent import TLaurent
            mono = TLaurent(chart, d, None, [{tuple(e): chart.field.one}])
            _emit(out, "unit", chart.name, mono.render())


def cmd_pic_kernel(args, out):
    scene = load_scene(args.scene)
    classes = descent.pic_kernel_classes(scene.cover, _box(scene, args))
    _emit(out, "classes", classes.count)
    chart0 = scene.cover.charts[0]
    from .laurent import TLaurent
    for d, e in classes.representatives():
        mono = TLaurent(chart0, d, None, [{tuple(e): chart0.field.one}])
        _emit(out, "representative", mono.render())


def cmd_birkhoff(args, out):
    scene = load_scene(args.scene)
    prec = _prec(scene, args)
    g = _load_matrix(scene, args.matrix, prec)
    fac = birkhoff(g)
    _emit(out, "split", *fac.split)
    _emit(out, "a_minus", _matrix_record(fac.a_minus))
    _emit(out, "a_plus", _matrix_record(fac.a_plus))


def cmd_factor(args, out):
    scene = load_scene(args.scene)
    prec = _prec(scene, args)
    g = _load_matrix(scene, args.matrix, prec)
    fac = two_sided_factor(g, prec)
    if fac.ok:
        _emit(out, "status", "factored")
        _emit(out, "h_xhat", _matrix_record(fac.h_xhat))
        _emit(out, "h_u", _matrix_record(fac.h_u))
    else:
        _emit(out, "status", "obstructed")
        _emit(out, "obstruction", *fac.obstruction)


def cmd_glue(args, out):
    scene = load_scene(args.scene)
    prec = _prec(scene, args)
    g = _load_matrix(scene, args.matrix, prec)
    verdict = descent.bl_glue_free(g, prec)
    _emit(out, "status", verdict.status)
    if verdict.status == descent.OBSTRUCTED:
        _emit(out, "obstruction", *verdict.obstruction)
    if verdict.status == descent.UNDECIDED:
        _emit(out, "reason", verdict.reason)
        raise CheckFailure("gluing undecided: %s" % verdict.reason)


def cmd_fiber_sections(args, out):
    scene = load_scene(args.scene)
    chart = _chart(scene, args.chart)
    prec = _prec(scene, args)
    val = parse_element(args.element, chart)
    if val.prec is None:
        val = val.truncate(prec)
    g = Element(chart, RingTag.W, val)
    basis = descent.fiber_product_sections(g, _box(scene, args), args.pad)
    _emit(out, "dimension", basis.dimension)
    if args.basis:
        for i, (u, v) in enumerate(basis.vectors):
            _emit(out, "pair", i, u.render(), ";", v.render())


def cmd_cocycle_check(args, out):
    scene = load_scene(args.scene)
    prec = _prec(scene, args)
    data = sys.stdin.read() if args.data == "-" else open(args.data).read()
    obj = json.loads(data)
    gmap = {}
    for key, rows in obj["g"].items():
        i, j = (int(x) for x in key.replace(",", " ").split())
        if (i, j) not in scene.cover.overlaps:
            raise ValueError("descent data on missing overlap (%d, %d)" % (i, j))
        chart = scene.cover.sub(i, j).src_overlap_chart
        entries = []
        for row in rows:
            parsed = []
            for text in row:
                v = parse_element(text, chart)
                parsed.append(v.truncate(prec) if v.prec is None else v)
            entries.append(tuple(parsed))
        gmap[(i, j)] = RMatrix(chart, RingTag.W, tuple(entries))
    report = descent.cocycle_check(scene.cover, gmap, prec)
    _emit(out, "cocycle", "ok" if report.ok else "fail")
    for kind, idx, detail in report.failures:
        _emit(out, "failure", kind, *idx, ":", detail)
    if not report.ok:
        raise CheckFailure(report.describe())


# -- argument parsing -------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="tubular",
        description="Exact computations on tubes: chart rings, descent data, "
                    "boxed section spaces and semivaluation points.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **help_):
        p = sub.add_parser(name, help=help_.get("help"))
        p.set_defaults(fn=fn)
        p.add_argument("--scene", default="p1",
                       help="builtin scene name (p1/p2/p3) or scene file path")
        p.add_argument("--format", choices=["record"], default="record",
                       help="output format (deterministic records)")
        return p

    def add_point(p):
        p.add_argument("--chart", help="chart name (default: first chart)")
        p.add_argument("--gens", default="",
                       help="comma-separated region generators "
                            "(default: the adic coordinate)")
        p.add_argument("point", help="point literal, e.g. 'mono: t=1/2'")

    p = add("classify", cmd_classify, help="classify a semivaluation point")
    add_point(p)
    p = add("fiber", cmd_fiber, help="fiber coordinate of a tube point")
    add_point(p)
    p = add("power", cmd_power, help="raise a point's radii to a power")
    p.add_argument("--chart", help="chart name (default: first chart)")
    p.add_argument("point")
    p.add_argument("exponent", type=int)
    p = add("chart-select", cmd_chart_select, help="pick the dominant generator")
    add_point(p)

    for name, fn in (("global-sections", cmd_global_sections),
                     ("global-units", cmd_global_units)):
        p = add(name, fn, help="boxed %s of a cover" % name.replace("-", " "))
        p.add_argument("--tag", choices=["A", "U", "XHAT", "W"], default="W")
        p.add_argument("--box", help="t_low:t_high:y_deg (default: scene box)")
        if name == "global-sections":
            p.add_argument("--basis", action="store_true",
                           help="also print a basis")

    p = add("pic-kernel", cmd_pic_kernel,
            help="boxed tube-unit classes modulo the two unit subgroups")
    p.add_argument("--box", help="t_low:t_high:y_deg (default: scene box)")

    for name, fn in (("birkhoff", cmd_birkhoff), ("factor", cmd_factor),
                     ("glue", cmd_glue)):
        p = add(name, fn, help="%s a loop matrix" % name)
        p.add_argument("--prec", type=int, help="working precision")
        p.add_argument("--matrix", required=True,
                       help="matrix record file, '-' for stdin")

    p = add("fiber-sections", cmd_fiber_sections,
            help="boxed sections of a scalar fiber product")
    p.add_argument("--chart", help="chart name (default: first chart)")
    p.add_argument("--prec", type=int, help="working precision")
    p.add_argument("--box", help="t_low:t_high:y_deg (default: scene box)")
    p.add_argument("--pad", type=int, default=0,
                   help="widen the unknown support window by this much")
    p.add_argument("--basis", action="store_true", help="also print a basis")
    p.add_argument("element", help="the gluing scalar, element text")

    p = add("cocycle-check", cmd_cocycle_check, help="verify descent data")
    p.add_argument("--prec", type=int, help="working precision")
    p.add_argument("--data", required=True,
                   help="JSON descent data file, '-' for stdin")
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.fn(args, out)
    except (CheckFailure, InsufficientPrecision, NotInW) as exc:
        print("check failed: %s" % exc, file=sys.stderr)
        return EXIT_CHECK
    except TubularError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":                              # pragma: no cover
    sys.exit(main())

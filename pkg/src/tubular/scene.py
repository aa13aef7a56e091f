"""Scene files: a small line-oriented description of a chart cover.

A scene fixes the ground field, a default precision, a default box, the
charts, the overlap substitutions and the triple overlaps.  The grammar is
documented in docs/formats.md; ``parse_scene`` and ``render_scene`` round-trip
bit-exactly on canonical output.

Builtin scenes ``p1`` / ``p2`` / ``p3`` are the standard covers of the tube
around a hyperplane center in projective space of dimension 1, 2 and 3.
"""

from dataclasses import dataclass

from . import poly
from .charts import Chart, MonomialImage, Substitution
from .descent import Cover
from .errors import SceneError
from .fields import QQ, field_from_descriptor
from .laurent import DEFAULT_PREC, Box
from .textio import parse_element


@dataclass(frozen=True)
class Scene:
    field: object
    prec: int
    box: Box
    cover: Cover

    def chart_index(self, name):
        for i, c in enumerate(self.cover.charts):
            if c.name == name:
                return i
        raise SceneError("no chart named %r in this scene" % name)


# -- parsing ----------------------------------------------------------------

def _split_box(text, lineno):
    parts = text.split(":")
    if len(parts) != 3:
        raise SceneError("box wants t_low:t_high:y_deg", lineno)
    try:
        return Box(int(parts[0]), int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise SceneError("bad box: %s" % exc, lineno)


def _image_from_text(text, dst_chart, lineno):
    """Parse a monomial image (an exact single-term element of the destination
    chart, negative exponents allowed everywhere; legality against the overlap
    widening is enforced by the Substitution constructor)."""
    try:
        val = parse_element(text, dst_chart, extra_invertible=dst_chart.y_vars)
    except Exception as exc:
        raise SceneError("bad monomial image %r: %s" % (text, exc), lineno)
    if val.prec is not None or len(val.coeffs) != 1:
        raise SceneError("image %r is not an exact monomial" % text, lineno)
    part = poly.punit_part(val.coeffs[0])
    if part is None:
        raise SceneError("image %r is not a single monomial" % text, lineno)
    c, e = part
    return MonomialImage(c, val.low, e)


def parse_scene(text):
    """Parse the scene grammar; raises SceneError with a 1-based line number."""
    field = QQ
    prec = DEFAULT_PREC
    box = None
    charts = []
    chart_by_name = {}
    overlap_blocks = []
    triples = []
    lines = text.splitlines()
    i = 0

    def fail(msg, lineno):
        raise SceneError(msg, lineno)

    while i < len(lines):
        lineno = i + 1
        line = lines[i].split("#", 1)[0].strip()
        i += 1
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "field":
            if len(words) != 2:
                fail("field wants one descriptor", lineno)
            field = field_from_descriptor(words[1])
        elif head == "prec":
            if len(words) != 2 or not words[1].lstrip("-").isdigit():
                fail("prec wants an integer", lineno)
            prec = int(words[1])
        elif head == "box":
            if len(words) != 2:
                fail("box wants t_low:t_high:y_deg", lineno)
            box = _split_box(words[1], lineno)
        elif head == "chart":
            if len(words) != 2:
                fail("chart wants a name", lineno)
            name = words[1]
            if name in chart_by_name:
                fail("duplicate chart %r" % name, lineno)
            t_var = None
            y_vars = []
            invertible = set()
            u_cone = None
            while i < len(lines):
                lineno = i + 1
                body = lines[i].split("#", 1)[0].strip()
                i += 1
                if not body:
                    continue
                bw = body.split()
                if bw[0] == "end":
                    break
                if bw[0] == "t" and len(bw) == 2:
                    t_var = bw[1]
                elif bw[0] == "var" and len(bw) in (2, 3):
                    y_vars.append(bw[1])
                    if len(bw) == 3:
                        if bw[2] != "invertible":
                            fail("var modifier must be 'invertible'", lineno)
                        invertible.add(bw[1])
                elif bw[0] == "ucone" and len(bw) == 2:
                    u_cone = bw[1]
                else:
                    fail("unknown chart line %r" % body, lineno)
            else:
                fail("chart %r missing 'end'" % name, lineno)
            if t_var is None:
                fail("chart %r declares no adic variable" % name, lineno)
            chart = Chart(name, t_var, tuple(y_vars), frozenset(invertible),
                          field, u_cone)
            chart_by_name[name] = len(charts)
            charts.append(chart)
        elif head == "overlap":
            if len(words) != 3:
                fail("overlap wants two chart names", lineno)
            body_lines = []
            while i < len(lines):
                lineno = i + 1
                body = lines[i].split("#", 1)[0].strip()
                i += 1
                if not body:
                    continue
                if body.split()[0] == "end":
                    break
                body_lines.append((body, lineno))
            else:
                fail("overlap missing 'end'", lineno)
            overlap_blocks.append((words[1], words[2], body_lines, lineno))
        elif head == "triple":
            if len(words) != 4:
                fail("triple wants three chart names", lineno)
            triples.append((words[1], words[2], words[3], lineno))
        else:
            fail("unknown directive %r" % head, lineno)

    overlaps = {}
    for src_name, dst_name, body_lines, blockno in overlap_blocks:
        for nm in (src_name, dst_name):
            if nm not in chart_by_name:
                fail("overlap references unknown chart %r" % nm, blockno)
        src = charts[chart_by_name[src_name]]
        dst = charts[chart_by_name[dst_name]]
        widen_src = set()
        widen_dst = set()
        images = {}
        for body, lineno in body_lines:
            bw = body.split()
            if bw[0] == "invert":
                if len(bw) < 3 or bw[1] not in ("src", "dst"):
                    fail("invert wants 'src'/'dst' and variable names", lineno)
                (widen_src if bw[1] == "src" else widen_dst).update(bw[2:])
            elif "->" in body:
                lhs, _, rhs = body.partition("->")
                images[lhs.strip()] = (rhs.strip(), lineno)
            else:
                fail("unknown overlap line %r" % body, lineno)
        if "t" not in images and src.t_var not in images:
            fail("overlap %s -> %s gives no t-image" % (src_name, dst_name),
                 blockno)
        t_text, t_line = images.pop("t", None) or images.pop(src.t_var)
        t_image = _image_from_text(t_text, dst, t_line)
        y_images = []
        for y in src.y_vars:
            if y not in images:
                fail("overlap %s -> %s gives no image for %r"
                     % (src_name, dst_name, y), blockno)
            txt, lineno = images.pop(y)
            y_images.append(_image_from_text(txt, dst, lineno))
        if images:
            fail("overlap %s -> %s maps unknown variables %s"
                 % (src_name, dst_name, sorted(images)), blockno)
        key = (chart_by_name[src_name], chart_by_name[dst_name])
        if key in overlaps:
            fail("duplicate overlap %s -> %s" % (src_name, dst_name), blockno)
        try:
            overlaps[key] = Substitution(src, dst, t_image, tuple(y_images),
                                         frozenset(widen_src),
                                         frozenset(widen_dst))
        except Exception as exc:
            raise SceneError("bad overlap %s -> %s: %s"
                             % (src_name, dst_name, exc), blockno)

    idx_triples = []
    for a, b, c, lineno in triples:
        for nm in (a, b, c):
            if nm not in chart_by_name:
                fail("triple references unknown chart %r" % nm, lineno)
        idx_triples.append((chart_by_name[a], chart_by_name[b],
                            chart_by_name[c]))

    if not charts:
        raise SceneError("scene declares no charts")
    if box is None:
        box = Box(-4, 5, max(c.nvars for c in charts))
    try:
        cover = Cover(tuple(charts), overlaps, tuple(idx_triples))
    except SceneError:
        raise
    except Exception as exc:
        raise SceneError("inconsistent cover: %s" % exc)
    return Scene(field, prec, box, cover)


# -- rendering --------------------------------------------------------------

def _render_image(img, chart):
    from .laurent import TLaurent
    val = TLaurent(chart, img.t_exp, None, [{tuple(img.y_exps): img.coef}])
    return val.render()


def render_scene(scene):
    """Canonical text form; parse_scene(render_scene(s)) reproduces s."""
    out = []
    out.append("field %s" % scene.field.name)
    out.append("prec %d" % scene.prec)
    out.append("box %d:%d:%d" % (scene.box.t_low, scene.box.t_high,
                                 scene.box.y_deg))
    for c in scene.cover.charts:
        out.append("chart %s" % c.name)
        out.append("t %s" % c.t_var)
        for y in c.y_vars:
            out.append("var %s%s" % (y, " invertible" if y in c.invertible else ""))
        if c.u_cone:
            out.append("ucone %s" % c.u_cone)
        out.append("end")
    for (i, j), sub in sorted(scene.cover.overlaps.items()):
        out.append("overlap %s %s" % (sub.src.name, sub.dst.name))
        out.append("t -> %s" % _render_image(sub.t_image, sub.dst_overlap_chart))
        for y, img in zip(sub.src.y_vars, sub.y_images):
            out.append("%s -> %s" % (y, _render_image(img, sub.dst_overlap_chart)))
        if sub.widen_src:
            out.append("invert src %s" % " ".join(sorted(sub.widen_src)))
        if sub.widen_dst:
            out.append("invert dst %s" % " ".join(sorted(sub.widen_dst)))
        out.append("end")
    for (a, b, c) in scene.cover.triples:
        out.append("triple %s %s %s" % (scene.cover.charts[a].name,
                                        scene.cover.charts[b].name,
                                        scene.cover.charts[c].name))
    return "\n".join(out) + "\n"


# -- builtin covers ---------------------------------------------------------

def build_projective(r, field=QQ, prec=DEFAULT_PREC, box=None):
    """Standard r-chart cover of the tube in projective r-space around the
    hyperplane center: chart i carries t_i = x0/x_i and y_ij = x_j/x_i."""
    if r not in (1, 2, 3):
        raise SceneError("builtin projective scenes cover r in {1, 2, 3}")
    charts = []
    for i in range(1, r + 1):
        y_vars = tuple("y%d%d" % (i, j) for j in range(1, r + 1) if j != i)
        charts.append(Chart("c%d" % i, "t%d" % i, y_vars, frozenset(),
                            field, "projective"))
    overlaps = {}
    for i in range(1, r + 1):
        for k in range(1, r + 1):
            if i == k:
                continue
            src = charts[i - 1]
            dst = charts[k - 1]
            pivot = dst.var_index("y%d%d" % (k, i))

            def exps(assign):
                e = [0] * dst.nvars
                for idx, a in assign:
                    e[idx] += a
                return tuple(e)

            t_image = MonomialImage(field.one, 1, exps([(pivot, -1)]))
            y_images = []
            for j in range(1, r + 1):
                if j == i:
                    continue
                if j == k:
                    y_images.append(MonomialImage(field.one, 0,
                                                  exps([(pivot, -1)])))
                else:
                    jdx = dst.var_index("y%d%d" % (k, j))
                    y_images.append(MonomialImage(field.one, 0,
                                                  exps([(jdx, 1), (pivot, -1)])))
            overlaps[(i - 1, k - 1)] = Substitution(
                src, dst, t_image, tuple(y_images),
                frozenset(("y%d%d" % (i, k),)), frozenset(("y%d%d" % (k, i),)))
    triples = ((0, 1, 2),) if r == 3 else ()
    if box is None:
        box = Box(-4, 5, max(2 * (r - 1), 1))
    cover = Cover(tuple(charts), overlaps, triples)
    return Scene(field, prec, box, cover)


BUILTIN_SCENES = {
    "p1": lambda: build_projective(1),
    "p2": lambda: build_projective(2),
    "p3": lambda: build_projective(3),
}


def load_scene(source):
    """Load a scene from a builtin name or a file path."""
    if source in BUILTIN_SCENES:
        return BUILTIN_SCENES[source]()
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise SceneError("cannot read scene %r: %s" % (source, exc))
    return parse_scene(text)

"""Descent data over a chart cover: cocycle verification, gluing of rank-r
data, and exact boxed section/unit computations.

A :class:`Cover` is a list of charts plus monomial overlap substitutions.
Sections and units are computed inside finite boxes (see
:class:`tubular.laurent.Box`), reducing every question to exact linear algebra
over the ground field; dimensions are therefore honest for the chosen box, not
asymptotic claims.
"""

from dataclasses import dataclass, field as dc_field

from . import linalg
from .charts import identity_substitution
from .errors import InsufficientPrecision, SceneError, Unsupported
from .laurent import (DEFAULT_PREC, TLaurent, addp, agree, box_basis)
from .matrices import (RMatrix, mat_agree, mat_identity, two_sided_factor)
from .rings import Element, RingTag, embed


# -- covers -----------------------------------------------------------------

def _image_monomial(sub, coef, t_exp, y_exps):
    """Image of a single monomial c * t^a * y^e under a monomial substitution,
    as (coef, t_exp, y_exps) in the destination chart's variables."""
    fld = sub.dst.field
    c = fld.mul(coef, fld.pow(sub.t_image.coef, t_exp))
    d = sub.t_image.t_exp * t_exp
    exps = [b * t_exp for b in sub.t_image.y_exps]
    for a, img in zip(y_exps, sub.y_images):
        if a == 0:
            continue
        c = fld.mul(c, fld.pow(img.coef, a))
        d += img.t_exp * a
        exps = [x + b * a for x, b in zip(exps, img.y_exps)]
    return c, d, tuple(exps)


def _compose_is_identity(first, second):
    """Is second o first the identity substitution (on monomials)?"""
    fld = first.src.field
    n = first.src.nvars
    img = _image_monomial(second, *_image_monomial(first, fld.one, 1, (0,) * n))
    if img != (fld.one, 1, (0,) * n):
        return False
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        if _image_monomial(second, *_image_monomial(first, fld.one, 0, e)) \
                != (fld.one, 0, e):
            return False
    return True


@dataclass(frozen=True)
class Cover:
    """Charts glued along monomial overlap substitutions.

    ``overlaps[(i, j)]`` maps chart i to chart j and must be present together
    with its inverse ``overlaps[(j, i)]``.  ``triples`` lists index triples
    (i, j, k) whose pairwise overlaps meet; they drive the cocycle test.
    """
    charts: tuple
    overlaps: dict = dc_field(default_factory=dict)
    triples: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "charts", tuple(self.charts))
        object.__setattr__(self, "triples",
                           tuple(tuple(t) for t in self.triples))
        fields = {c.field for c in self.charts}
        if len(fields) > 1:
            raise SceneError("all charts of a cover share one ground field")
        for (i, j), sub in self.overlaps.items():
            if i == j:
                raise SceneError("self-overlaps are implicit")
            if not (0 <= i < len(self.charts) and 0 <= j < len(self.charts)):
                raise SceneError("overlap (%d, %d) indexes a missing chart" % (i, j))
            if sub.src.name != self.charts[i].name or \
                    sub.dst.name != self.charts[j].name:
                raise SceneError(
                    "overlap (%d, %d) does not connect charts %r -> %r"
                    % (i, j, self.charts[i].name, self.charts[j].name))
            if (j, i) not in self.overlaps:
                raise SceneError("overlap (%d, %d) has no inverse" % (i, j))
            if not _compose_is_identity(sub, self.overlaps[(j, i)]):
                raise SceneError(
                    "overlaps (%d, %d) and (%d, %d) are not mutually inverse"
                    % (i, j, j, i))
        for (i, j, k) in self.triples:
            for pair in ((i, j), (j, k), (i, k)):
                if pair not in self.overlaps:
                    raise SceneError("triple %r needs overlap %r" % ((i, j, k), pair))

    @property
    def field(self):
        return self.charts[0].field

    def sub(self, i, j):
        return self.overlaps[(i, j)]


def mat_transport(m, sub, extra_dst_invertible=()):
    """Move a matrix over the source overlap ring to the destination chart."""
    entries = tuple(tuple(e.substitute(sub, extra_dst_invertible) for e in row)
                    for row in m.entries)
    chart = entries[0][0].chart if entries and entries[0] else \
        sub.dst_overlap_chart
    return RMatrix(chart, m.tag, entries)


# -- cocycle verification ---------------------------------------------------

@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    failures: tuple          # (kind, indices, detail) in discovery order

    def describe(self):
        if self.ok:
            return "cocycle conditions hold"
        return "; ".join("%s at %s: %s" % f for f in self.failures)


def cocycle_check(cover, gmap, prec=DEFAULT_PREC):
    """Verify descent data ``gmap[(i, j)]`` (a W-tagged matrix over chart i's
    overlap ring, acting by v_j = g_ij v_i).

    Checks, in order: any explicit diagonal entries are identity matrices;
    g_ji o g_ij = 1 on every overlap; and g_ik = g_jk o g_ij on every declared
    triple, after transporting everything to chart i with all destination
    variables treated as invertible on the triple overlap.
    """
    failures = []
    rank = None
    for g in gmap.values():
        rank = g.r if rank is None else rank
        if g.r != rank:
            return CocycleReport(False, (("rank", (), "mixed matrix ranks"),))
    for (i, j), g in sorted(gmap.items()):
        if i == j and not mat_agree(g, mat_identity(g.chart, g.tag, g.r,
                                                    g.min_prec())):
            failures.append(("diagonal", (i,), "g_%d%d is not the identity" % (i, j)))
    for (i, j) in sorted(gmap):
        if i >= j or (j, i) not in gmap:
            continue
        sub_ji = cover.sub(j, i)
        back = mat_transport(gmap[(j, i)], sub_ji)
        gij = _relabel_matrix(gmap[(i, j)], back.chart)
        prod = back * gij
        ident = mat_identity(prod.chart, prod.tag, prod.r, prod.min_prec())
        if not mat_agree(prod, ident):
            failures.append(("inverse", (i, j),
                             "g_%d%d o g_%d%d differs from the identity"
                             % (j, i, i, j)))
    for (i, j, k) in cover.triples:
        if not all(p in gmap for p in ((i, j), (j, k), (i, k))):
            failures.append(("triple", (i, j, k), "missing descent data"))
            continue
        extra = cover.charts[i].y_vars
        sub_ji = cover.sub(j, i)
        gjk = mat_transport(gmap[(j, k)], sub_ji, extra)
        gij = _relabel_matrix(gmap[(i, j)], gjk.chart)
        gik = _relabel_matrix(gmap[(i, k)], gjk.chart)
        if not mat_agree(gjk * gij, gik):
            failures.append(("triple", (i, j, k),
                             "g_%d%d o g_%d%d differs from g_%d%d"
                             % (j, k, i, j, i, k)))
    return CocycleReport(not failures, tuple(failures))


def _relabel_matrix(m, chart):
    return RMatrix(chart, m.tag,
                   tuple(tuple(e.with_chart(chart) for e in row)
                         for row in m.entries))


# -- forward images of polynomial data --------------------------------------

def forward_images(e, prec=DEFAULT_PREC):
    """All four tagged images of a polynomial (A-tagged) element.

    The two routes into the tube ring (through the localization and through
    the completion) are computed independently and compared; a mismatch is a
    library bug, so it raises.
    """
    if e.tag != RingTag.A:
        raise Unsupported("forward images start from the polynomial ring")
    u = embed(e, RingTag.U, prec)
    xh = embed(e, RingTag.XHAT, prec)
    w1 = embed(u, RingTag.W, prec)
    w2 = embed(xh, RingTag.W, prec)
    if not agree(w1.value, w2.value):
        raise AssertionError("embedding square failed to commute")
    return {RingTag.A: e, RingTag.U: u, RingTag.XHAT: xh, RingTag.W: w1}


# -- gluing of rank-r data --------------------------------------------------

FREE = "free"
OBSTRUCTED = "obstructed"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class GlueVerdict:
    status: str
    factorization: object = None       # TwoSidedFactorization when FREE
    obstruction: tuple = None          # splitting type when OBSTRUCTED
    reason: str = None                 # when UNDECIDED


def bl_glue_free(g, prec=DEFAULT_PREC, extra_invertible=()):
    """Decide whether single-overlap descent data glues to free data.

    The matrix glues freely exactly when it factors as (completion side) x
    (localization side); a balanced-failure splitting type is returned as the
    obstruction, and inputs outside the solver's reach come back UNDECIDED
    rather than wrongly classified.
    """
    try:
        fac = two_sided_factor(g, prec, extra_invertible)
    except InsufficientPrecision as exc:
        return GlueVerdict(UNDECIDED, reason=str(exc))
    except Unsupported as exc:
        return GlueVerdict(UNDECIDED, reason=str(exc))
    if fac.ok:
        return GlueVerdict(FREE, factorization=fac)
    return GlueVerdict(OBSTRUCTED, obstruction=fac.obstruction)


# -- boxed section spaces ---------------------------------------------------

@dataclass(frozen=True)
class SectionBasis:
    """An exact basis of a boxed section space; ``vectors`` holds one tuple of
    per-chart values for each basis element."""
    box: object
    dimension: int
    vectors: tuple


def _tag_basis(chart, tag, box):
    """Boxed monomial basis of the tagged chart ring."""
    if tag in (RingTag.A, RingTag.XHAT):
        return box_basis(chart, box, t_min=0)
    keys = box_basis(chart, box)
    if tag == RingTag.U:
        return [k for k in keys if chart.monomial_in_u_cone(k[0], k[1])]
    return keys


def fiber_product_sections(g, box, support_pad=0):
    """Boxed sections of the fiber product glued by g (a W-tagged element or
    matrix): pairs (u, v) with u over the localized ring, v over the completed
    ring, and g*u = v in the tube ring at every t-degree inside the box window.

    ``support_pad`` widens the t-window the unknowns live in while keeping the
    constraint window fixed, so section counts can be compared across
    different gluing data on equal footing.
    """
    scalar = not isinstance(g, RMatrix)
    entries = ((g.value,),) if scalar else g.entries
    rank = len(entries)
    chart = g.chart
    fld = chart.field
    sbox = box.pad(support_pad) if support_pad else box
    u_keys = box_basis(chart, sbox)
    v_keys = box_basis(chart, sbox, t_min=0)
    nu = len(u_keys)
    nv = len(v_keys)
    ncols = rank * (nu + nv)
    if u_keys:
        low_u = min(d for d, _ in u_keys)
        for row in entries:
            for val in row:
                prec = val.prec if not val.is_zero() else \
                    addp(val.prec, -low_u)
                if addp(prec, low_u) is not None and \
                        addp(prec, low_u) < box.t_high:
                    raise InsufficientPrecision(
                        "gluing data needs precision >= %d for this box"
                        % (box.t_high - low_u))
    rows = {}

    def add(key, col, c):
        if box.t_low <= key[1] < box.t_high:
            row = rows.setdefault(key, {})
            s = fld.add(row.get(col, fld.zero), c)
            if s == fld.zero:
                row.pop(col, None)
            else:
                row[col] = s

    for i in range(rank):
        for j in range(rank):
            gij = entries[i][j]
            if gij.is_zero():
                continue
            for col, (d, e) in enumerate(u_keys):
                prod = gij * TLaurent.from_term(chart, fld.one, d, e)
                for dd, p in prod.coeff_map().items():
                    for ee, c in p.items():
                        add((i, dd, ee), j * nu + col, c)
    for i in range(rank):
        for col, (d, e) in enumerate(v_keys):
            add((i, d, e), rank * nu + i * nv + col, fld.neg(fld.one))
    basis = linalg.nullspace([rows[k] for k in sorted(rows)], ncols, fld)
    vectors = []
    for vec in basis:
        us = tuple(_from_keys(chart, u_keys, vec[j * nu:(j + 1) * nu], fld)
                   for j in range(rank))
        off = rank * nu
        vs = tuple(_from_keys(chart, v_keys, vec[off + i * nv:off + (i + 1) * nv],
                              fld)
                   for i in range(rank))
        vectors.append((us[0], vs[0]) if scalar else (us, vs))
    return SectionBasis(box, len(basis), tuple(vectors))


def _from_keys(chart, keys, coords, fld):
    out = {}
    for (d, e), c in zip(keys, coords):
        if c == fld.zero:
            continue
        out.setdefault(d, {})[e] = c
    return TLaurent.from_coeff_map(chart, out)


def global_sections(cover, tag, box):
    """Boxed global sections of the tagged structure ring of a cover.

    Unknowns are boxed monomials on every chart; each directed overlap
    contributes one linear constraint per monomial observed in the overlap
    ring, equating the transported chart-i expansion with the chart-j one.
    """
    if isinstance(tag, str):
        tag = RingTag[tag]
    fld = cover.field
    bases = [_tag_basis(c, tag, box) for c in cover.charts]
    offsets = []
    total = 0
    for b in bases:
        offsets.append(total)
        total += len(b)
    rows = {}

    def add(key, col, c):
        row = rows.setdefault(key, {})
        s = fld.add(row.get(col, fld.zero), c)
        if s == fld.zero:
            row.pop(col, None)
        else:
            row[col] = s

    for (i, j), sub in sorted(cover.overlaps.items()):
        for col, (d, e) in enumerate(bases[i]):
            c, dd, ee = _image_monomial(sub, fld.one, d, e)
            add(((i, j), dd, ee), offsets[i] + col, c)
        for col, (d, e) in enumerate(bases[j]):
            add(((i, j), d, e), offsets[j] + col, fld.neg(fld.one))
    basis = linalg.nullspace([rows[k] for k in sorted(rows, key=repr)],
                             total, fld)
    vectors = []
    for vec in basis:
        parts = []
        for i, chart in enumerate(cover.charts):
            seg = vec[offsets[i]:offsets[i] + len(bases[i])]
            parts.append(_from_keys(chart, bases[i], seg, fld))
        vectors.append(tuple(parts))
    return SectionBasis(box, len(basis), tuple(vectors))


# -- global monomial units and the gluing-class quotient --------------------

@dataclass(frozen=True)
class GlobalUnit:
    """A global monomial unit, recorded as one (t_exp, y_exps) pair per chart
    (scalar factors are quotiented out)."""
    exps: tuple

    def key(self):
        return self.exps[0]


def _unit_monomial_ok(chart, tag, d, e):
    """Is t^d * y^e a unit of the tagged chart ring (with a legal inverse)?"""
    for i, a in enumerate(e):
        if a != 0 and chart.y_vars[i] not in chart.invertible:
            return False
    if tag == RingTag.A:
        return d == 0 and all(a == 0 for a in e)
    if tag == RingTag.XHAT:
        return d == 0
    if tag == RingTag.U:
        return (chart.monomial_in_u_cone(d, e)
                and chart.monomial_in_u_cone(-d, tuple(-a for a in e)))
    return True                                         # W


def _propagate_monomial(cover, d, e):
    """Transport the chart-0 monomial t^d * y^e to every chart, or None when
    the cover is disconnected or the images disagree."""
    fld = cover.field
    images = {0: (fld.one, d, e)}
    queue = [0]
    while queue:
        i = queue.pop()
        for (a, b), sub in cover.overlaps.items():
            if a != i:
                continue
            img = _image_monomial(sub, *images[i])
            if b in images:
                if images[b] != img:
                    return None
            else:
                images[b] = img
                queue.append(b)
    if len(images) != len(cover.charts):
        return None
    return images


def global_units(cover, tag, box):
    """Global monomial units of the tagged structure ring, enumerated from the
    boxed monomials of chart 0 (one :class:`GlobalUnit` per exponent class)."""
    if isinstance(tag, str):
        tag = RingTag[tag]
    out = []
    chart0 = cover.charts[0]
    for d, e in _tag_basis(chart0, tag, box):
        images = _propagate_monomial(cover, d, e)
        if images is None:
            continue
        if all(_unit_monomial_ok(cover.charts[i], tag, di, ei)
               for i, (_, di, ei) in images.items()):
            out.append(GlobalUnit(tuple((images[i][1], images[i][2])
                                        for i in range(len(cover.charts)))))
    return out


class PicKernelClasses:
    """Boxed global tube-ring unit monomials modulo the subgroup generated by
    the localization-side and completion-side unit monomials.

    Classes compose by adding exponents; the composite is reported only when
    its representative monomial stays inside the box.
    """

    def __init__(self, cover, box):
        self.cover = cover
        self.box = box
        self._w_units = {u.key(): u for u in global_units(cover, RingTag.W, box)}
        gens = set()
        for tag in (RingTag.U, RingTag.XHAT):
            for u in global_units(cover, tag, box):
                if any(x != 0 for x in _flat(u.key())):
                    gens.add(u.key())
        parent = {k: k for k in self._w_units}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in self._w_units:
            for g in gens:
                shifted = _shift_key(k, g)
                if shifted in self._w_units:
                    parent[find(k)] = find(shifted)
        classes = {}
        for k in self._w_units:
            classes.setdefault(find(k), []).append(k)
        self.classes = tuple(tuple(sorted(v)) for _, v in sorted(classes.items()))
        self._class_of = {k: idx for idx, group in enumerate(self.classes)
                          for k in group}

    @property
    def count(self):
        return len(self.classes)

    def representatives(self):
        return tuple(group[0] for group in self.classes)

    def class_of(self, key):
        return self._class_of.get(key)

    def compose(self, a, b):
        """Class of the product of representatives a and b, or None when the
        product monomial leaves the box."""
        ka = self.classes[a][0]
        kb = self.classes[b][0]
        return self.class_of(_shift_key(ka, kb))


def _flat(key):
    d, e = key
    return (d,) + tuple(e)


def _shift_key(key, by):
    return (key[0] + by[0], tuple(x + y for x, y in zip(key[1], by[1])))


def pic_kernel_classes(cover, box):
    return PicKernelClasses(cover, box)

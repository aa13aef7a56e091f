"""Coordinatized affine Cartier charts and monomial substitutions between them.

A chart fixes a distinguished adic variable t (cutting out the center) and a
list of coordinate variables y_1..y_m, each optionally flagged invertible.
Overlap identifications between charts are monomial substitutions; applying
them to series lives in :mod:`tubular.laurent`.
"""

from dataclasses import dataclass, field as dc_field

from .errors import FlagViolation, SceneError


@dataclass(frozen=True)
class Chart:
    name: str
    t_var: str
    y_vars: tuple
    invertible: frozenset
    field: object
    # Optional global-U membership rule: when "projective", a monomial
    # t^e * y^a belongs to O(U) iff every a_j >= 0 and e + sum(a) <= 0.
    u_cone: str = dc_field(default=None, compare=False)

    def __post_init__(self):
        names = (self.t_var,) + tuple(self.y_vars)
        if len(set(names)) != len(names):
            raise SceneError("duplicate variable names in chart %r" % self.name)
        if self.t_var in self.invertible:
            raise SceneError("the adic variable %r may not be flagged invertible"
                             % self.t_var)
        unknown = set(self.invertible) - set(self.y_vars)
        if unknown:
            raise SceneError("invertible flag on undeclared variables %s in chart %r"
                             % (sorted(unknown), self.name))

    @property
    def nvars(self):
        return len(self.y_vars)

    def var_index(self, name):
        return self.y_vars.index(name)

    def noninvertible_indices(self, extra_invertible=()):
        inv = self.invertible | frozenset(extra_invertible)
        return tuple(i for i, v in enumerate(self.y_vars) if v not in inv)

    def widen(self, names):
        """Overlap variant of this chart with extra variables flagged invertible."""
        names = frozenset(names)
        unknown = names - set(self.y_vars)
        if unknown:
            raise SceneError("cannot widen chart %r at unknown variables %s"
                             % (self.name, sorted(unknown)))
        return Chart(self.name, self.t_var, self.y_vars,
                     self.invertible | names, self.field, self.u_cone)

    def compatible_with(self, other):
        """Same chart up to invertibility widening (so values can be relabeled)."""
        return (self.name == other.name and self.t_var == other.t_var
                and self.y_vars == other.y_vars and self.field == other.field)

    def monomial_in_u_cone(self, t_exp, y_exps):
        """Does the monomial t^t_exp * y^y_exps extend to a global function on U?

        Without a declared cone this is just legality in the localized chart
        ring A_t (negative y-exponents only on invertible variables).
        """
        if self.u_cone == "projective":
            return all(a >= 0 for a in y_exps) and t_exp + sum(y_exps) <= 0
        for i, a in enumerate(y_exps):
            if a < 0 and self.y_vars[i] not in self.invertible:
                return False
        return True


@dataclass(frozen=True)
class MonomialImage:
    """A single-term image c * t^t_exp * prod(y_j^y_exps[j]) in a target chart."""
    coef: object
    t_exp: int
    y_exps: tuple


@dataclass(frozen=True)
class Substitution:
    """A monomial ring homomorphism from src chart to dst chart.

    t maps to c * t^d * (monomial in dst y's) with d >= 1; each source y maps
    to a t-degree-zero Laurent monomial in the dst y's.  ``widen_src`` /
    ``widen_dst`` list the variables that become invertible on the overlap.
    """
    src: Chart
    dst: Chart
    t_image: MonomialImage
    y_images: tuple          # one MonomialImage per src y-variable, t_exp == 0
    widen_src: frozenset = frozenset()
    widen_dst: frozenset = frozenset()

    def __post_init__(self):
        if self.src.field != self.dst.field:
            raise SceneError("substitution between charts over different fields")
        fld = self.src.field
        if self.t_image.coef == fld.zero:
            raise FlagViolation("t must map to a nonzero monomial")
        if self.t_image.t_exp < 1:
            raise FlagViolation("t-image must have t-degree >= 1, got %d"
                                % self.t_image.t_exp)
        if len(self.y_images) != self.src.nvars:
            raise SceneError("substitution must give an image for every source variable")
        dst_ok = self.dst.invertible | self.widen_dst
        for img in (self.t_image,) + tuple(self.y_images):
            if len(img.y_exps) != self.dst.nvars:
                raise SceneError("image exponent vector has wrong length")
            for i, a in enumerate(img.y_exps):
                if a < 0 and self.dst.y_vars[i] not in dst_ok:
                    raise FlagViolation(
                        "image inverts %r, not invertible on the overlap"
                        % self.dst.y_vars[i])
        for img in self.y_images:
            if img.t_exp != 0:
                raise FlagViolation("y-images must have t-degree zero")
            if img.coef == fld.zero:
                raise FlagViolation("y must map to a nonzero monomial")

    @property
    def src_overlap_chart(self):
        return self.src.widen(self.widen_src)

    @property
    def dst_overlap_chart(self):
        return self.dst.widen(self.widen_dst)

    def is_identity(self):
        if self.src.name != self.dst.name or self.src.y_vars != self.dst.y_vars:
            return False
        fld = self.src.field
        if self.t_image != MonomialImage(fld.one, 1, (0,) * self.dst.nvars):
            return False
        for i, img in enumerate(self.y_images):
            want = tuple(1 if j == i else 0 for j in range(self.dst.nvars))
            if img != MonomialImage(fld.one, 0, want):
                return False
        return True


def identity_substitution(chart):
    n = chart.nvars
    one = chart.field.one
    return Substitution(
        chart, chart,
        MonomialImage(one, 1, (0,) * n),
        tuple(MonomialImage(one, 0, tuple(1 if j == i else 0 for j in range(n)))
              for i in range(n)))

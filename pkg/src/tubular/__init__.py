"""Exact symbolic tubes: truncated Laurent series over sparse polynomial
coefficients, the four chart rings and their canonical maps, Birkhoff-style
loop factorization, descent over chart covers, boxed section spaces and
semivaluation points."""

__version__ = "0.1.0"

from .charts import Chart, MonomialImage, Substitution
from .descent import (Cover, bl_glue_free, cocycle_check,
                      fiber_product_sections, forward_images, global_sections,
                      global_units, pic_kernel_classes)
from .fields import QQ, PrimeField, Rationals, field_from_descriptor
from .laurent import DEFAULT_PREC, Box, TLaurent, agree, compare
from .matrices import RMatrix, birkhoff, two_sided_factor
from .points import (EvalVal, MonomialVal, chart_select, classify_region,
                     fiber_coord, parse_point, power_point, render_point,
                     sval_eval)
from .rings import Element, RingTag, chart_hom, element, embed, is_unit, ring_inv
from .scene import Scene, build_projective, load_scene, parse_scene, render_scene
from .textio import parse_element, render_element

__all__ = [
    "Box", "Chart", "Cover", "DEFAULT_PREC", "Element", "EvalVal",
    "MonomialImage", "MonomialVal", "PrimeField", "QQ", "RMatrix", "Rationals",
    "RingTag", "Scene", "Substitution", "TLaurent", "agree", "birkhoff",
    "bl_glue_free", "build_projective", "chart_hom", "chart_select",
    "classify_region", "cocycle_check", "compare", "element", "embed",
    "fiber_coord", "fiber_product_sections", "field_from_descriptor",
    "forward_images", "global_sections", "global_units", "is_unit",
    "load_scene", "parse_element", "parse_point", "parse_scene",
    "pic_kernel_classes", "power_point", "render_element", "render_point",
    "render_scene", "ring_inv", "sval_eval", "two_sided_factor",
]

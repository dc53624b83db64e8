"""Class polynomials of iterated Maass raisings of negative weight modular forms."""

from .quadforms import Discriminant, QuadForm, reduce, enumerate_reduced, class_number, cm_point
from .qseries import QSeries, eisenstein, delta, j_function, principal_part
from .formexpr import parse_form_expr, expand
from .evaluator import EvalConfig, raise_value, eval_qseries
from .classpoly import RationalPolynomial, class_polynomial, build_hhat, recognize_rational, hilbert_class_poly
from .bounds import BoundInputs, bound_report, theorem_criterion, corollary_criterion
from .irreducibility import irreducible_over_q, quadratic_splitting_field

__version__ = "0.1.0"

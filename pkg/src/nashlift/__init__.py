"""nashlift: iterated Nash blowups, arc lifting, and ladder valuations."""

from .algebra import (BlockElimination, GREVLEX, LEX, GrevLex, Lex,
                      Polynomial, RingContext, context, format_polynomial,
                      matrix_minors, parse_polynomial)
from .arcs import (Arc, CriterionReport, StableTransformReport,
                   TowerLiftReport, evaluate_on_arc,
                   function_valuation_along_arc, geometric_criterion_test,
                   ideal_valuation_along_arc, lift_into_chart,
                   lift_through_blowup, lift_through_tower,
                   stable_transform_probe)
from .errors import (ArcInCenterError, ArcInSingularLocusError,
                     ContextMismatchError, DegenerateFrameError,
                     DegenerateInputError, DegenerateLadderError,
                     HypothesisViolation, IndeterminatePullbackError,
                     InsufficientPrecisionError, NashliftError,
                     NonLiftableDivisionError, PolynomialSyntaxError)
from .geometry import (AffineChart, DifferentialFrame, chart_from_strings,
                       differential_frame, is_smooth, is_smooth_at_point,
                       jacobian, singular_locus)
from .groebner import Ideal
from .nash import (BlowupChart, FractionalIdeal, IdealLadder, TowerReport,
                   base_digits, blowup_charts, composite_entry,
                   gauss_minor_ideal, iterate_until_smooth, nash_blowup,
                   next_ladder_entry, principal_parts_wedge,
                   spanning_sections, unit_fractional_ideal,
                   wedge_via_connection)
from .ratfunc import RationalFunction
from .series import DEFAULT_TRUNC, TruncatedSeries

__version__ = "0.1.0"

"""Exact-arithmetic engine for graded nilpotent Lie algebras: weight-graded
cohomology, exponent-range classification and the contracted de Rham
complex on polynomial forms."""

from .rationals import Rat, rat
from .algebra import (LieAlgebra, Grading, validate, carnot_grading,
                      derivation_grading, NotStratified, IncompatibleGrading)
from .forms import (InvariantForm, d0, d0_matrix, delta0_matrix,
                    d0_pseudoinverse, e0_basis, pi_e0_matrix, hodge_star)
from .cohomology import (CohomologyTable, cohomology, check_duality,
                         check_eq9, render_weight_table)
from .poly import Poly
from .group import (GroupCalculus, PolyForm, VectorField, bch_product,
                    StepTooLarge, NotHomogeneous)
from .rumin import RuminEngine, NonStabilizing, Witness
from .ranges import (RangeQuery, Classification, classify, ws_lower_bound,
                     best_nonvanishing, lp_membership, pairing_gap_bound,
                     range_report, INF, InvalidExponents, UndefinedWeights,
                     VANISHES, DOES_NOT_VANISH, UNKNOWN)
from .specfile import parse_spec, serialize_spec, ParseError, SemanticError
from . import corpus

__version__ = "0.1.0"

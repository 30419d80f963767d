"""Truncated free Lie groups with exact rational arithmetic."""
from .evalmap import (EvalReport, MatrixTarget, check_homomorphism, eval_series, exp_vs_Exp,
                      heisenberg_preimage, heisenberg_target, matrix_exp, min_xi,
                      nilpotency_index)
from .hopf import (Certificate, TensorSeries, Violation, coproduct, is_grouplike,
                   is_grouplike_direct, is_primitive, shuffle_defect, tensor)
from .lie import (LieSeries, NotPrimitiveError, bch, lie_bracket, log_product_series,
                  lyndon_bracketing, project_to_lyndon)
from .ordexp import (NotGrouplikeError, PiecewiseConstPath, PolyPath, log_derivative_path,
                     ordered_exp_pc, ordered_exp_poly, volterra_solve)
from .series import (FLOAT, RATIONAL, GradedSeries, add, circ, exp, homogeneous_component,
                     inverse, ln, m_xi, mul, xi_norm)
from .words import concat, is_lyndon, lyndon_words, shuffles, subword, witt_dimension

__version__ = "0.1.0"

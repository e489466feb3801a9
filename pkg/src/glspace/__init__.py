"""Grand Lebesgue Space numerics.

Generating-function calculus, grid norms (Lp, weighted, Lorentz, mixed),
classical operators with their sharp-constant catalog, and a verification
harness that checks the inequalities numerically.

All public types are immutable after construction and every operation is a
pure function with fixed reduction order, so concurrent use and re-runs give
identical results.
"""

from .errors import ConfigurationError, DomainError, GlspaceError, InvariantViolation
from .grids import (GridFunction, TailProfile, TailTerm, WeightSpec,
                    anisotropic_norm, decreasing_rearrangement, lorentz_norm,
                    lp_norm, power_tail, weighted_lp_norm)
from .psi import (BoydIndices, ExponentMap, ProductPsi, PsiFunction,
                  boyd_indices, combined_constant, conjugate_exponent,
                  exponent_grid, fundamental_function, gls_norm,
                  interpolation_psi, psi_eval, theta_of_q, transform_moment)
from .operators import (KernelFactory, OperatorSpec, apply_operator, convolve,
                        dilate, fourier, fourier_at, fourier_inverse,
                        hilbert_transform, kernel_apply, kernel_norm_bound,
                        maximal_hl, weighted_fourier)
from .constants import (ConstantQuery, RadialPowerWeight, SampledWeight,
                        beckner_A, constant_regime, fractional_sobolev,
                        marcinkiewicz_factor, muckenhoupt_I,
                        okikiolu_constant, pbo_envelope, pichorides,
                        sharp_constant, stein_weiss_norm, young_convolution)
from .extremal import (NormEstimate, TestFamily, VerificationReport,
                       dilation_necessity_check, estimate_operator_norm,
                       hardy_image_tail, pbo_blowup_curve, pbo_counterexample,
                       pbo_log_growth_fit, verify_gls_transfer,
                       verify_interpolation)

__version__ = "0.1.0"

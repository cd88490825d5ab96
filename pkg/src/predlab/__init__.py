"""predlab: finite prediction errors of stationary sequences.

High-precision computation of the best linear one-step prediction error
sigma2_n from a spectral density, with desk-scale verification of its
asymptotics: exponential decay governed by the transfinite diameter of
the spectrum, power laws for densities with essential zeros, geometric
mean ratio laws, and extreme-eigenvalue bounds for the covariance
matrices.
"""

from .arcs import ArcSet, ArcSetError
from .capacity import (TauResult, fekete_points, fekete_preimage_tau,
                       robinson_bounds_tau, robinson_project_tau, tau_arcset,
                       tau_segment)
from .covariance import (CovarianceSequence, covariances_arcset,
                         covariances_arfima0d0, covariances_for,
                         covariances_ma1, covariances_quadrature)
from .eigen import (EigenRecord, dense_eigenvalues, eigen_distribution_check,
                    min_eigenvalue, min_eigenvalue_dense, sandwich_check)
from .geomean import (GeomeanResult, fejer_riesz, geometric_mean_closed,
                      geometric_mean_numeric, sigma2_infinite, szego_condition)
from .grammar import SpecParseError, parse_arcs, parse_density, parse_factor
from .models import (AbsAlgebraicPower, AbsTrigPower, ArcRestrictedDensity,
                     ArfimaDensity, ArmaDensity, ConstBound, ConstDensity,
                     EvaluationError, ExpOddSin, ExpZeroOriginDensity,
                     ExpZeroPiDensity, Factor, HatPollaczekDensity,
                     IntegrabilityError, Ma1Density, ModelError,
                     NegTrigPower, PollaczekDensity, ProductDensity,
                     RatioOfTrigPolys, SpectralDensity, TabulatedDensity,
                     describe, make_arc_restricted, multiply_factor)
from .precision import required_precision_bits
from .rates import (RateReport, analyze, power_fit, table1_constants,
                    verify_davisson, verify_eigen_rates, verify_hat_pollaczek,
                    verify_inoue, verify_ratio_theorem, verify_rosenblatt1,
                    verify_rosenblatt2, verify_table1)
from .runner import Scenario, run_config, run_scenario
from .toeplitz import (PredictionTrace, levinson, optimal_polynomial,
                       sigma2_via_determinants, toeplitz_quadratic_form)
from .trig import TrigPolynomial

__version__ = "0.1.0"

"""Exact decision-theory certificates at desk scale.

Subpackages by capability:

* :mod:`lcbayes.lcnum` - truncated Levi-Civita field: exact arithmetic
  with infinitesimals, standard parts, and the infinitely-larger order.
* :mod:`lcbayes.ratlp` - exact-rational simplex with verified optimality,
  infeasibility, and unboundedness certificates.
* :mod:`lcbayes.decision` - finite decision problems, randomized rules,
  exact risk and Bayes risk, mixtures and derandomization.
* :mod:`lcbayes.admissibility` - exact LP verdicts: domination, the
  maximal uniform improvement, admissibility.
* :mod:`lcbayes.priors` - witness-prior synthesis by zero-sum duality,
  epsilon-Bayes verification, pushdowns of Levi-Civita priors.
* :mod:`lcbayes.families` - closed-form location and boundary families,
  prior regularity, and grid-scoped admissibility certificates.
* :mod:`lcbayes.cli` - the ``lcbayes`` command.
"""

from .lcnum import (DEFAULT_ORDER, LCNumber, LCParseError, NotNearStandard,
                    approx_eq, compare, eps, evaluate, leq_approx,
                    much_greater, parse, refute_much_greater, st)
from .ratlp import (CertificateError, LPProblem, LPSolution, LPStatus,
                    MalformedProblem, check_certificate, solve_lp)
from .decision import (FiniteProblem, Prior, Procedure, bayes_risk,
                       convex_combine, derandomize, risk, risk_vector)
from .admissibility import (AdmissibilityVerdict, DominationQuery,
                            check_admissible, check_domination,
                            check_lc_domination, is_epsilon_dominated,
                            max_uniform_improvement)
from .priors import (ClassificationReport, GameAnalysis, LCPrior, classify,
                     minimal_bayes_risk, pushdown, pushdown_risk_consistency,
                     synthesize_prior, verify_epsilon_bayes)
from .families import (BernoulliBoundary, BlythCertificate, GaussianPrior,
                       NormalLocationLinear, RegularityVerdict,
                       bernoulli_boundary_report, blyth_certificate,
                       check_epsilon_regular_normal, normal_location_report)

__version__ = "0.1.0"

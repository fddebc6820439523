"""Closed-form risk evaluators generic over the scalar field.

Two built-in families; both evaluate risk on exact rationals and on
Levi-Civita numbers with the same code path:

* :class:`NormalLocationLinear` - estimating a d-dimensional location
  under squared error with linear shrinkage rules x -> c * x; the risk
  at parameter theta is  d*c^2 + (1-c)^2*||theta||^2  and the Bayes risk
  under a centered Gaussian prior with scale k is  d*(c^2 + (1-c)^2*k^2).

* :class:`BernoulliBoundary` - a coin with success probability g(t)
  where g(t) = t for t > 0 and g(0) = 1 (a jump at the boundary), loss
  (g(t) - a)^2.  The jump makes the risk discontinuous at 0, which the
  pushdown-consistency check is designed to detect.

Gaussian ball masses involve pi and exp; they are handled by enclosing
rational intervals and the bound exp(-u) >= 1 - u, so only valuations
and signs (which the enclosures pin down exactly) feed the
infinitely-larger test used for prior regularity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence, Tuple, Union

from .lcnum import LCNumber, eps, much_greater
from .priors import LCPrior

Scalar = Union[Fraction, LCNumber]

REGULAR = "Regular"
NOT_REGULAR = "NotRegular"
INDETERMINATE = "Indeterminate"


class NotInfinite(ValueError):
    """An infinite scale parameter was required but a finite one given."""


class BadProbe(ValueError):
    """Probe radius is nonpositive (or not a positive rational)."""


# ----------------------------------------------------------------------
# rational interval enclosures for the transcendental constants
# ----------------------------------------------------------------------

PI_LO = Fraction(3141592653589793, 10 ** 15)
PI_HI = Fraction(3141592653589794, 10 ** 15)

Interval = Tuple[Fraction, Fraction]


def _imul(a: Interval, b: Interval) -> Interval:
    # all intervals here are positive
    return (a[0] * b[0], a[1] * b[1])


def _iinv(a: Interval) -> Interval:
    return (1 / a[1], 1 / a[0])


def _isqrt_bounds(q: Fraction) -> Interval:
    """Rational l <= sqrt(q) <= u with l*l <= q <= u*u, q >= 0."""
    if q < 0:
        raise ValueError("sqrt of negative rational")
    scale = 10 ** 12
    n = q.numerator * q.denominator * scale * scale
    root = isqrt(n)
    lo = Fraction(root, q.denominator * scale)
    hi = Fraction(root if root * root == n else root + 1, q.denominator * scale)
    return (lo, hi)


def _isqrt_interval(a: Interval) -> Interval:
    return (_isqrt_bounds(a[0])[0], _isqrt_bounds(a[1])[1])


def ball_volume_interval(dim: int, radius: Fraction) -> Interval:
    """Enclosure of the volume of the d-ball of the given radius."""
    two_pi_r2 = _imul((2 * PI_LO, 2 * PI_HI), (radius * radius, radius * radius))
    if dim % 2 == 0:
        vol: Interval = (Fraction(1), Fraction(1))
        start = 2
    else:
        vol = (2 * radius, 2 * radius)
        start = 3
    for d in range(start, dim + 1, 2):
        vol = _imul(vol, (two_pi_r2[0] / d, two_pi_r2[1] / d))
    return vol


def gaussian_normalizer_interval(dim: int) -> Interval:
    """Enclosure of (2*pi)^(-dim/2)."""
    inv_two_pi = _iinv((2 * PI_LO, 2 * PI_HI))
    result: Interval = (Fraction(1), Fraction(1))
    for _ in range(dim // 2):
        result = _imul(result, inv_two_pi)
    if dim % 2 == 1:
        result = _imul(result, _isqrt_interval(inv_two_pi))
    return result


def _norm_upper_bound(center: Sequence[Fraction]) -> Fraction:
    sq = sum((c * c for c in center), Fraction(0))
    return _isqrt_bounds(sq)[1]


# ----------------------------------------------------------------------
# regularity of priors
# ----------------------------------------------------------------------

Probe = Tuple[Tuple[Fraction, ...], Fraction]  # (center coords, radius)


@dataclass(frozen=True)
class RegularityVerdict:
    verdict: str
    witness: Optional[Probe] = None
    interval: Optional[Tuple[LCNumber, LCNumber]] = None


def default_probes(dim: int) -> Tuple[Probe, ...]:
    origin = tuple(Fraction(0) for _ in range(dim))
    unit = tuple(Fraction(1 if i == 0 else 0) for i in range(dim))
    radii = (Fraction(1, 2), Fraction(1), Fraction(2))
    return tuple((center, r) for center in (origin, unit) for r in radii)


def _validate_probe(probe: Probe):
    center, radius = probe
    if not isinstance(radius, Fraction) or radius <= 0:
        raise BadProbe(f"probe radius must be a positive rational, got {radius!r}")


def _regularity_from_bounds(bounds, epsilon: LCNumber) -> RegularityVerdict:
    indeterminate = None
    for probe, (lower, upper) in bounds:
        if much_greater(lower, epsilon):
            continue
        if not much_greater(upper, epsilon):
            return RegularityVerdict(NOT_REGULAR, witness=probe,
                                     interval=(lower, upper))
        if indeterminate is None:
            indeterminate = RegularityVerdict(INDETERMINATE, witness=probe,
                                              interval=(lower, upper))
    return indeterminate if indeterminate is not None else RegularityVerdict(REGULAR)


# ----------------------------------------------------------------------
# normal location family
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianPrior:
    """Centered isotropic Gaussian prior with (possibly infinite) scale."""

    scale: LCNumber


class NormalLocationLinear:
    """d-dimensional location estimation with linear rules x -> c*x."""

    name = "normal-location"

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = dim

    def risk(self, shrinkage: Scalar, point) -> Scalar:
        """Risk of the rule x -> c*x at the location ``point``."""
        coords = point if isinstance(point, (tuple, list)) else (point,)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        c = shrinkage
        norm2 = None
        for t in coords:
            sq = t * t
            norm2 = sq if norm2 is None else norm2 + sq
        return self.dim * (c * c) + (1 - c) * (1 - c) * norm2

    def bayes_risk_gaussian(self, shrinkage: Scalar, scale: Scalar) -> Scalar:
        """Bayes risk of x -> c*x under the centered Gaussian with this scale."""
        c = shrinkage
        return self.dim * (c * c + (1 - c) * (1 - c) * (scale * scale))

    @staticmethod
    def optimal_shrinkage(scale: Scalar) -> Scalar:
        s2 = scale * scale
        return s2 / (s2 + 1)

    def ball_mass_bounds(self, center: Sequence[Fraction], radius: Fraction,
                         prior: GaussianPrior) -> Tuple[LCNumber, LCNumber]:
        """Exact-enclosure bounds on the prior mass of the ball B(center, radius).

        density <= (2 pi k^2)^(-d/2) everywhere, and on the ball
        density >= (2 pi k^2)^(-d/2) * (1 - R^2/(2 k^2)) with
        R = ||center|| + radius, via exp(-u) >= 1 - u.
        """
        _validate_probe((tuple(center), radius))
        scale = prior.scale
        vol = ball_volume_interval(self.dim, radius)
        norm = gaussian_normalizer_interval(self.dim)
        scale_term = scale.inverse() ** self.dim  # k^(-d), exact LC
        r_hi = _norm_upper_bound(center) + radius
        inv_scale_sq = scale.inverse() ** 2
        correction = 1 - Fraction(r_hi * r_hi, 2) * inv_scale_sq
        lower = (vol[0] * norm[0]) * scale_term * correction
        upper = (vol[1] * norm[1]) * scale_term
        return lower, upper


def check_epsilon_regular_normal(dim: int, scale: LCNumber, epsilon: LCNumber,
                                 probes: Optional[Sequence[Probe]] = None
                                 ) -> RegularityVerdict:
    """Does the centered Gaussian prior give every probe ball mass >> epsilon?

    ``Regular`` requires the lower mass bound infinitely larger than
    epsilon at every probe; ``NotRegular`` exhibits a probe whose upper
    bound already fails.  Because the interval endpoints differ only by
    positive rational constants, they share valuation and the verdict is
    never Indeterminate for monomial infinite scales.
    """
    family = NormalLocationLinear(dim)
    prior = GaussianPrior(scale)
    if probes is None:
        probes = default_probes(dim)
    for probe in probes:
        _validate_probe(probe)
    bounds = [(probe, family.ball_mass_bounds(probe[0], probe[1], prior))
              for probe in probes]
    return _regularity_from_bounds(bounds, epsilon)


DIM2_DISCREPANCY_NOTE = (
    "At dim = 2 the probe ball mass and the Bayes slack 1/(scale^2+1) share "
    "valuation, so the infinitely-larger test fails and this tool reports "
    "NotRegular; the classical expectation is that the flat Gaussian prior "
    "certifies admissibility of the sample mean in dimension 2.  Recorded "
    "as a known formalization discrepancy rather than forced to agree."
)


@dataclass(frozen=True)
class NormalLocationReport:
    dim: int
    order: int
    scale: LCNumber
    shrinkage: LCNumber
    shrinkage_st: Fraction
    shrinkage_bayes_risk: LCNumber
    sample_mean_bayes_risk: LCNumber
    gap: LCNumber
    gap_closed_form: str
    gap_is_infinitesimal: bool
    risk_constant_coefficient: LCNumber    # d * c^2 in  r(c, t) = d c^2 + (1-c)^2 |t|^2
    risk_norm_coefficient: LCNumber        # (1 - c)^2
    regularity_epsilon: LCNumber
    regularity: RegularityVerdict
    discrepancy_note: Optional[str] = None


def normal_location_report(dim: int, scale: Optional[LCNumber] = None,
                           order: int = 8) -> NormalLocationReport:
    """Exact report for the location family under an infinite prior scale."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    if scale is None:
        scale = eps(order).inverse()
    if not scale.is_infinite():
        raise NotInfinite(f"prior scale {scale} must be infinite (valuation < 0)")
    family = NormalLocationLinear(dim)
    s2 = scale * scale
    denom_inv = (s2 + 1).inverse()
    # all quantities below go through exact monomials and one inversion,
    # so every retained coefficient is exact; composing subtractions
    # instead (e.g. squaring 1 - shrinkage) would corrupt the last term
    denom_sq_inv = ((s2 + 1) ** 2).inverse()
    shrinkage = s2 * denom_inv
    shrink_bayes = dim * shrinkage
    mean_bayes = family.bayes_risk_gaussian(LCNumber(1, scale.order), scale)
    gap = dim * denom_inv
    epsilon = denom_inv
    regularity = check_epsilon_regular_normal(dim, scale, epsilon)
    if scale == eps(scale.order).inverse():
        prefix = "" if dim == 1 else f"{dim}*"
        closed = f"{prefix}eps^2/(1+eps^2)"
    else:
        closed = f"{dim}/(scale^2+1) with scale = {scale}"
    return NormalLocationReport(
        dim=dim,
        order=scale.order,
        scale=scale,
        shrinkage=shrinkage,
        shrinkage_st=shrinkage.standard_part(),
        shrinkage_bayes_risk=shrink_bayes,
        sample_mean_bayes_risk=mean_bayes,
        gap=gap,
        gap_closed_form=closed,
        gap_is_infinitesimal=gap.is_infinitesimal(),
        risk_constant_coefficient=dim * ((s2 * s2) * denom_sq_inv),
        risk_norm_coefficient=denom_sq_inv,
        regularity_epsilon=epsilon,
        regularity=regularity,
        discrepancy_note=DIM2_DISCREPANCY_NOTE if dim == 2 else None,
    )


# ----------------------------------------------------------------------
# Bernoulli boundary family
# ----------------------------------------------------------------------


class BernoulliBoundary:
    """Bernoulli(g(t)) with g(t) = t for t > 0 and g(0) = 1, squared loss.

    g is evaluated exactly: any t with t > 0 in the field order takes the
    identity branch - including positive infinitesimals, which is what
    makes the infinitesimal-point-prior Bayes risk an exact square.
    """

    name = "bernoulli-boundary"
    dim = 1

    @staticmethod
    def success_probability(t: Scalar) -> Scalar:
        if t > 0:
            return t
        if t == 0:
            return 1 - 0 * t  # exact one in t's field
        raise ValueError("parameter must lie in [0, 1]")

    def risk(self, params: Tuple[Scalar, Scalar], point) -> Scalar:
        """Risk of the rule (a on tails, b on heads) at parameter t."""
        t = point[0] if isinstance(point, (tuple, list)) else point
        a, b = params
        g = self.success_probability(t)
        return (1 - g) * (g - a) * (g - a) + g * (g - b) * (g - b)

    def bayes_risk(self, params, pairs) -> Scalar:
        """pairs: (parameter point, weight); weights sum to 1."""
        total = None
        for t, w in pairs:
            term = w * self.risk(params, t)
            total = term if total is None else total + term
        return total

    def optimal_rule(self, pairs) -> Tuple[Scalar, Scalar]:
        """Posterior means of g per observation; exact in the scalar field.

        An observation with posterior weight exactly zero is unreachable;
        its component is set to the prior mean of g (any action is
        optimal there).
        """
        prior_mean = None
        heads_num = heads_den = tails_num = tails_den = None
        for t, w in pairs:
            g = self.success_probability(t)
            wg = w * g
            prior_mean = wg if prior_mean is None else prior_mean + wg
            h_n, h_d = wg * g, wg                 # heads weight w*g
            t_d = w * (1 - g)                     # tails weight w*(1-g)
            t_n = t_d * g
            heads_num = h_n if heads_num is None else heads_num + h_n
            heads_den = h_d if heads_den is None else heads_den + h_d
            tails_num = t_n if tails_num is None else tails_num + t_n
            tails_den = t_d if tails_den is None else tails_den + t_d
        tails = prior_mean if tails_den == 0 else tails_num / tails_den
        heads = prior_mean if heads_den == 0 else heads_num / heads_den
        return (tails, heads)

    def optimal_bayes_risk(self, pairs) -> Scalar:
        return self.bayes_risk(self.optimal_rule(pairs), pairs)

    @staticmethod
    def ball_mass(prior: LCPrior, center: Fraction, radius: Fraction) -> LCNumber:
        """Exact mass a finite-support prior places on (center-r, center+r)."""
        total = None
        zero = None
        for point, w in zip(prior.support, prior.weights):
            t = point[0]
            zero = 0 * w if zero is None else zero
            if abs(t - center) < radius:
                total = w if total is None else total + w
        if total is None:
            return zero if zero is not None else LCNumber(0)
        return total


# ----------------------------------------------------------------------
# nonstandard Blyth certificate
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class BlythCertificate:
    """Admissibility certificate scoped to explicit challengers and probes.

    ``certified`` means: the candidate's Bayes risk under the supplied
    prior is within epsilon of every listed challenger's, and the prior
    gives every probe ball mass infinitely larger than epsilon.  The
    claim extends exactly as far as the challenger set and probe list.
    """

    certified: bool
    reason: Optional[str]
    candidate_bayes_risk: Scalar
    epsilon: LCNumber
    challenger_count: int
    probes: Tuple[Probe, ...]
    regularity: RegularityVerdict


def _prior_bayes_risk(family, params, prior_spec) -> Scalar:
    if isinstance(prior_spec, GaussianPrior):
        if not isinstance(family, NormalLocationLinear):
            raise TypeError("Gaussian conjugate prior applies to the location family")
        return family.bayes_risk_gaussian(params, prior_spec.scale)
    if isinstance(prior_spec, LCPrior):
        pairs = [(point, w) for point, w in zip(prior_spec.support, prior_spec.weights)]
        total = None
        for point, w in pairs:
            term = w * family.risk(params, point)
            total = term if total is None else total + term
        return total
    raise TypeError(f"unsupported prior specification {type(prior_spec).__name__}")


def _prior_regularity(family, prior_spec, epsilon: LCNumber,
                      probes: Sequence[Probe]) -> RegularityVerdict:
    if isinstance(prior_spec, GaussianPrior):
        return check_epsilon_regular_normal(family.dim, prior_spec.scale,
                                            epsilon, probes)
    # finite support: ball masses are exact, lower = upper
    bounds = []
    for probe in probes:
        _validate_probe(probe)
        center, radius = probe
        total = None
        for point, w in zip(prior_spec.support, prior_spec.weights):
            dist_sq = None
            for t, c in zip(point, center):
                d2 = (t - c) * (t - c)
                dist_sq = d2 if dist_sq is None else dist_sq + d2
            if dist_sq < radius * radius:
                total = w if total is None else total + w
        mass = total if total is not None else 0 * prior_spec.weights[0]
        bounds.append((probe, (mass, mass)))
    return _regularity_from_bounds(bounds, epsilon)


def blyth_certificate(family, params, prior_spec, epsilon: LCNumber,
                      challengers: Sequence, probes: Optional[Sequence[Probe]] = None
                      ) -> BlythCertificate:
    """Certify admissibility on a grid via near-Bayes plus prior regularity."""
    if probes is None:
        probes = default_probes(family.dim)
    challengers = list(challengers)
    candidate_risk = _prior_bayes_risk(family, params, prior_spec)
    regularity = _prior_regularity(family, prior_spec, epsilon, probes)
    for i, challenger in enumerate(challengers):
        challenger_risk = _prior_bayes_risk(family, challenger, prior_spec)
        if not (candidate_risk <= challenger_risk + epsilon):
            return BlythCertificate(
                certified=False,
                reason=f"candidate is not epsilon-Bayes against challenger {i}",
                candidate_bayes_risk=candidate_risk, epsilon=epsilon,
                challenger_count=len(challengers), probes=tuple(probes),
                regularity=regularity)
    if regularity.verdict != REGULAR:
        return BlythCertificate(
            certified=False,
            reason=f"prior regularity verdict is {regularity.verdict}",
            candidate_bayes_risk=candidate_risk, epsilon=epsilon,
            challenger_count=len(challengers), probes=tuple(probes),
            regularity=regularity)
    return BlythCertificate(
        certified=True, reason=None,
        candidate_bayes_risk=candidate_risk, epsilon=epsilon,
        challenger_count=len(challengers), probes=tuple(probes),
        regularity=regularity)


# ----------------------------------------------------------------------
# boundary example report
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class NonBayesEntry:
    prior_label: str
    optimal_rule: Tuple[Fraction, Fraction]
    optimal_bayes_risk: Fraction
    candidate_bayes_risk: Fraction
    excess: Fraction


@dataclass(frozen=True)
class BernoulliBoundaryReport:
    order: int
    lc_point: LCNumber
    lc_bayes_risk: LCNumber          # candidate (0,0) under the point prior at eps
    lc_bayes_risk_st: Fraction
    non_bayes: Tuple[NonBayesEntry, ...]
    dominators_found: Tuple[Tuple[Fraction, Fraction], ...]
    challenger_count: int
    state_count: int
    risk_at_half: Fraction
    risk_at_zero: Fraction


def bernoulli_boundary_report(order: int = 8,
                              prior_grid_size: int = 10,
                              challenger_step: int = 20,
                              state_count: int = 40) -> BernoulliBoundaryReport:
    """The admissible-but-not-Bayes boundary example, exactly.

    Three exhibits: (i) the candidate rule (0,0) has Bayes risk eps^2
    (an exact square, standard part 0) under the point prior at the
    infinitesimal eps; (ii) under every point prior on the interior grid
    (and at the boundary state 0, and under the uniform prior over the
    grid) the exact optimal rule has strictly positive components and
    beats (0,0) by a strictly positive rational; (iii) no rule on the
    challenger grid 0-dominates (0,0) across the state grid
    {1/n} union {0}.
    """
    family = BernoulliBoundary()
    zero_rule = (Fraction(0), Fraction(0))

    point = eps(order)
    lc_pairs = [(point, LCNumber(1, order))]
    lc_risk = family.bayes_risk(zero_rule, lc_pairs)

    grid = [Fraction(j, prior_grid_size) for j in range(1, prior_grid_size + 1)]
    priors = [(f"point t={t}", [(t, Fraction(1))]) for t in grid]
    priors.append(("point t=0", [(Fraction(0), Fraction(1))]))
    full = grid + [Fraction(0)]
    priors.append((f"uniform on grid+0",
                   [(t, Fraction(1, len(full))) for t in full]))
    non_bayes = []
    for label, pairs in priors:
        rule = family.optimal_rule(pairs)
        best = family.bayes_risk(rule, pairs)
        cand = family.bayes_risk(zero_rule, pairs)
        non_bayes.append(NonBayesEntry(
            prior_label=label, optimal_rule=rule, optimal_bayes_risk=best,
            candidate_bayes_risk=cand, excess=cand - best))

    states = [Fraction(1, n) for n in range(1, state_count + 1)] + [Fraction(0)]
    candidate_risks = [family.risk(zero_rule, t) for t in states]
    steps = [Fraction(j, challenger_step) for j in range(challenger_step + 1)]
    dominators = []
    for a in steps:
        for b in steps:
            if (a, b) == zero_rule:
                continue
            strictly_better_somewhere = False
            weakly_better_everywhere = True
            for t, cand in zip(states, candidate_risks):
                r = family.risk((a, b), t)
                if r > cand:
                    weakly_better_everywhere = False
                    break
                if r < cand:
                    strictly_better_somewhere = True
            if weakly_better_everywhere and strictly_better_somewhere:
                dominators.append((a, b))

    return BernoulliBoundaryReport(
        order=order,
        lc_point=point,
        lc_bayes_risk=lc_risk,
        lc_bayes_risk_st=lc_risk.standard_part(),
        non_bayes=tuple(non_bayes),
        dominators_found=tuple(dominators),
        challenger_count=(challenger_step + 1) ** 2 - 1,
        state_count=len(states),
        risk_at_half=family.risk(zero_rule, Fraction(1, 2)),
        risk_at_zero=family.risk(zero_rule, Fraction(0)),
    )

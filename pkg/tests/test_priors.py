"""Prior synthesis, epsilon-Bayes verification, and pushdown tests."""

from fractions import Fraction as F

import pytest

from lcbayes.decision import FiniteProblem, Prior, Procedure, bayes_risk, risk_vector
from lcbayes.lcnum import LCNumber, NotNearStandard, eps, st
from lcbayes.priors import (LCPrior, classify, minimal_bayes_risk, pushdown,
                            pushdown_risk_consistency, synthesize_prior,
                            verify_epsilon_bayes)
from lcbayes.admissibility import max_uniform_improvement
from lcbayes.families import BernoulliBoundary, NormalLocationLinear


def fp1():
    return FiniteProblem.build(["t1", "t2"], ["x1"], ["a1", "a2"],
                               model=[[1], [1]], loss=[[0, 1], [1, 0]])


def fp2():
    return FiniteProblem.build(["t1", "t2"], ["x1"], ["a1", "a2"],
                               model=[[1], [1]], loss=[[0, 1], [1, 2]])


def rule(p):
    return Procedure.randomized([[p, 1 - p]])


def grid_game_value(problem, procedure, steps=100):
    """Brute-force oracle: maximize the Bayes-risk gap over a prior grid."""
    best = None
    n = problem.n_states
    assert n == 2
    for j in range(steps + 1):
        prior = Prior((F(j, steps), F(steps - j, steps)))
        gap = minimal_bayes_risk(problem, prior) - bayes_risk(problem, procedure, prior)
        if best is None or gap > best:
            best = gap
    return best


# ----------------------------------------------------------------------
# synthesis
# ----------------------------------------------------------------------


def test_symmetric_rule_is_exactly_bayes():
    game = synthesize_prior(fp1(), rule(F(1, 2)))
    assert game.value == 0
    assert game.witness_prior.weights == (F(1, 2), F(1, 2))
    assert game.slack == 0
    assert not game.prior_possibly_nonunique
    # brute force over the 101-point prior grid agrees
    assert grid_game_value(fp1(), rule(F(1, 2))) == 0


def test_dominated_rule_has_negative_value():
    game = synthesize_prior(fp2(), Procedure.nonrandomized([1]))
    assert game.value == -1
    assert game.slack == 1
    assert game.prior_possibly_nonunique
    assert verify_epsilon_bayes(fp2(), Procedure.nonrandomized([1]),
                                game.witness_prior, game.slack)


def test_boundary_rule_supported_by_axis_prior():
    game = synthesize_prior(fp1(), rule(F(0)))  # risks (1, 0)
    assert game.value == 0
    assert verify_epsilon_bayes(fp1(), rule(F(0)), game.witness_prior, F(0))
    # the returned prior puts no mass where the candidate is beaten
    assert bayes_risk(fp1(), rule(F(0)), game.witness_prior) == \
        minimal_bayes_risk(fp1(), game.witness_prior)


def test_inner_best_responses_minimize():
    game = synthesize_prior(fp1(), rule(F(1, 2)))
    assert len(game.inner_best_responses) == 1
    # under the uniform prior both actions tie
    assert game.inner_best_responses[0] == (0, 1)


def test_duality_identity_against_uniform_improvement():
    for problem, procedure in [(fp1(), rule(F(1, 2))), (fp1(), rule(F(0))),
                               (fp2(), Procedure.nonrandomized([1])),
                               (fp2(), Procedure.nonrandomized([0]))]:
        estar, _ = max_uniform_improvement(problem, procedure)
        game = synthesize_prior(problem, procedure)
        assert game.value + estar == 0


# ----------------------------------------------------------------------
# epsilon-Bayes verification
# ----------------------------------------------------------------------


def test_symmetric_rule_exact_bayes_under_uniform():
    # minimum Bayes risk under the uniform prior is 1/2
    assert minimal_bayes_risk(fp1(), Prior.uniform(2)) == F(1, 2)
    assert verify_epsilon_bayes(fp1(), rule(F(1, 2)), Prior.uniform(2), F(0))


def test_extreme_rule_recomputed_by_oracle():
    # under the uniform prior every rule has Bayes risk exactly 1/2, so the
    # extreme rule is 0-Bayes there; under the point prior on the first
    # state its Bayes risk is 1 against a minimum of 0
    p0 = rule(F(0))
    assert bayes_risk(fp1(), p0, Prior.uniform(2)) == F(1, 2)
    assert verify_epsilon_bayes(fp1(), p0, Prior.uniform(2), F(0))
    point = Prior((F(1), F(0)))
    assert bayes_risk(fp1(), p0, point) == 1
    assert minimal_bayes_risk(fp1(), point) == 0
    assert not verify_epsilon_bayes(fp1(), p0, point, F(1, 2))
    assert verify_epsilon_bayes(fp1(), p0, point, F(1))


def test_levi_civita_point_prior_bayes():
    # prior (1 - eps, eps): the always-first-action rule has Bayes risk eps,
    # which is exactly the minimal Bayes risk, so it is 0-Bayes in the field
    e = eps()
    prior = Prior(weights=(LCNumber(1) - e, e))
    always_a1 = rule(F(1))
    assert bayes_risk(fp1(), always_a1, prior) == e
    assert minimal_bayes_risk(fp1(), prior) == e
    assert verify_epsilon_bayes(fp1(), always_a1, prior, LCNumber(0))


# ----------------------------------------------------------------------
# classification
# ----------------------------------------------------------------------


def test_classify_symmetric_rule():
    report = classify(fp1(), rule(F(1, 2)))
    assert report.admissible and report.extended_admissible
    assert report.epsilon_star == 0 and report.game_value == 0
    assert report.bayes_slack == 0
    assert report.witness is None


def test_classify_dominated_rule():
    report = classify(fp2(), Procedure.nonrandomized([1]))
    assert not report.admissible and not report.extended_admissible
    assert report.epsilon_star == 1 and report.game_value == -1
    assert report.bayes_slack == 1
    assert report.witness is not None


def test_classify_single_action():
    problem = FiniteProblem.build(["t"], ["x"], ["a"], model=[[1]], loss=[[1]])
    report = classify(problem, Procedure.nonrandomized([0]))
    assert report.admissible and report.extended_admissible
    assert report.epsilon_star == 0


def test_domination_inherits_bayes():
    # a rule that is exactly Bayes yet dominated: its dominator must be
    # exactly Bayes under the same witness prior
    problem = FiniteProblem.build(["t1", "t2"], ["x1"], ["a1", "a2"],
                                  model=[[1], [1]], loss=[[1, 1], [0, 1]])
    dominated = Procedure.nonrandomized([1])   # risks (1, 1)
    dominator = Procedure.nonrandomized([0])   # risks (1, 0)
    point = Prior((F(1), F(0)))
    assert verify_epsilon_bayes(problem, dominated, point, F(0))
    assert all(a <= b for a, b in zip(risk_vector(problem, dominator),
                                       risk_vector(problem, dominated)))
    assert verify_epsilon_bayes(problem, dominator, point, F(0))


# ----------------------------------------------------------------------
# pushdown
# ----------------------------------------------------------------------


def test_pushdown_standard_parts():
    e = eps()
    prior = LCPrior(support=((e,), (1 + e * e,)),
                    weights=(LCNumber(F(1, 2)), LCNumber(F(1, 2))))
    pushed = pushdown(prior)
    assert pushed.support == ((F(0),), (F(1),))
    assert pushed.weights == (F(1, 2), F(1, 2))


def test_pushdown_merges_monad_mates():
    e = eps()
    prior = LCPrior(support=((e,), (2 * e,)),
                    weights=(LCNumber(F(1, 3)), LCNumber(F(2, 3))))
    pushed = pushdown(prior)
    assert pushed.support == ((F(0),),)
    assert pushed.weights == (F(1),)


def test_pushdown_rejects_infinite_support():
    with pytest.raises(NotNearStandard):
        pushdown(LCPrior(support=((eps().inverse(),),), weights=(LCNumber(1),)))


def test_pushdown_preserves_mass_and_fixes_standard_priors():
    e = eps()
    prior = LCPrior(
        support=((LCNumber(F(1, 4)),), (LCNumber(F(3, 4)),)),
        weights=(LCNumber(F(2, 5)), LCNumber(F(3, 5))))
    pushed = pushdown(prior)
    assert sum(pushed.weights) == 1
    assert pushed.support == ((F(1, 4),), (F(3, 4),))
    assert pushed.weights == (F(2, 5), F(3, 5))
    # infinitesimal perturbations do not move the pushdown
    perturbed = LCPrior(
        support=((LCNumber(F(1, 4)) + e,), (LCNumber(F(3, 4)) - e * e,)),
        weights=(LCNumber(F(2, 5)) , LCNumber(F(3, 5))))
    assert pushdown(perturbed) == pushed


# ----------------------------------------------------------------------
# pushdown risk consistency
# ----------------------------------------------------------------------


def test_boundary_discontinuity_detected():
    # the jump of the success probability at 0 breaks the consistency flag
    family = BernoulliBoundary()
    prior = LCPrior.point((eps(),))
    lc_value, std_value, agree = pushdown_risk_consistency(
        family, (F(0), F(0)), prior)
    assert lc_value == eps() ** 2
    assert std_value == 1
    assert not agree


def test_interior_point_consistent():
    family = BernoulliBoundary()
    prior = LCPrior.point((LCNumber(F(1, 2)) + eps(),))
    lc_value, std_value, agree = pushdown_risk_consistency(
        family, (F(0), F(0)), prior)
    assert std_value == F(1, 4)
    assert st(lc_value) == F(1, 4)
    assert agree


def test_polynomial_location_risk_consistent():
    family = NormalLocationLinear(1)
    prior = LCPrior.point((1 + eps(),))
    lc_value, std_value, agree = pushdown_risk_consistency(family, F(1, 2), prior)
    assert agree
    assert std_value == family.risk(F(1, 2), (F(1),))

"""An admissible rule that no real prior makes Bayes.

A coin has success probability g(t), where g(t) = t for t > 0 but
g(0) = 1: a jump at the boundary.  Estimating g under squared error,
the constant rule (0, 0) is admissible over [0, 1] yet not Bayes for
any real prior, because every posterior mean of g is strictly positive.

In the larger field the story closes: a point prior at the infinitesimal
eps sits where no real prior can, and the Bayes risk of (0, 0) there is
exactly eps^2, an infinitesimal.  The rule is Bayes up to an
infinitesimal without being Bayes.

Run:  python demos/04_bernoulli_boundary.py
"""

from fractions import Fraction as F

from lcbayes import BernoulliBoundary, bernoulli_boundary_report, eps, st

family = BernoulliBoundary()
zero_rule = (F(0), F(0))

print("Pointwise risks of the constant rule (0, 0):")
for t in (F(1, 2), F(1, 10), F(0)):
    print(f"  at t = {t}:  {family.risk(zero_rule, t)}")
print(f"  at t = eps: {family.risk(zero_rule, eps())}   (standard part "
      f"{st(family.risk(zero_rule, eps()))})")
print()

report = bernoulli_boundary_report()
print(f"Bayes risk under the point prior at eps: {report.lc_bayes_risk} "
      f"(st = {report.lc_bayes_risk_st})")
print()

print("No real prior on the grid makes (0, 0) optimal: the exact optimal")
print("rule (posterior means of g) always has positive components and a")
print("strictly positive edge over (0, 0):")
for entry in report.non_bayes[:4]:
    print(f"  {entry.prior_label:<22} optimal {tuple(map(str, entry.optimal_rule))},"
          f" excess of (0,0): {entry.excess}")
print("  ...")
print()

print(f"Grid no-domination check: {report.challenger_count} challengers at "
      f"{report.state_count} states")
if report.dominators_found:
    print(f"  grid dominators found: {report.dominators_found}")
    print("  (an exact artifact of the stated grid: at the smallest state 1/40")
    print("  the challenger (1/20, 1/20) ties, since 1/40 = (1/20)/2, and wins")
    print("  elsewhere on the grid; one more state defeats it)")
deeper = bernoulli_boundary_report(state_count=41)
print(f"with states down to 1/41: dominators found = {list(deeper.dominators_found)}")

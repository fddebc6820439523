"""The location-estimation story with an infinite prior scale.

Linear rules x -> c*x estimate a d-dimensional location under squared
error.  Under a centered Gaussian prior of scale k, the Bayes-optimal
shrinkage is c = k^2/(k^2+1) with Bayes risk d*k^2/(k^2+1), while the
plain sample mean (c = 1) has Bayes risk d.

Taking the scale infinite (k = eps^-1) makes the gap d/(k^2+1) an exact
infinitesimal: the sample mean is Bayes up to an infinitesimal for a
"flat" prior no real prior realizes.  Whether that near-Bayes status
certifies admissibility depends on the prior giving every standard ball
non-negligible mass relative to the slack; the ball-mass valuation is d,
the slack valuation is 2, so the strict test passes only for d = 1.

Run:  python demos/03_normal_location_shrinkage.py
"""

from fractions import Fraction as F

from lcbayes import (GaussianPrior, LCNumber, NormalLocationLinear,
                     blyth_certificate, eps, normal_location_report)

for dim in (1, 2, 3):
    report = normal_location_report(dim)
    print(f"dimension {dim}")
    print(f"  shrinkage coefficient   {report.shrinkage}")
    print(f"  its standard part       {report.shrinkage_st}")
    print(f"  shrinkage Bayes risk    {report.shrinkage_bayes_risk}")
    print(f"  sample-mean Bayes risk  {report.sample_mean_bayes_risk}")
    print(f"  gap                     {report.gap}  = {report.gap_closed_form}")
    print(f"  gap infinitesimal?      {report.gap_is_infinitesimal}")
    print(f"  prior regularity        {report.regularity.verdict}")
    if report.discrepancy_note:
        print(f"  note: {report.discrepancy_note}")
    print()

print("Finite scales recover the classical closed forms (d=3, k=2):")
family = NormalLocationLinear(3)
c = NormalLocationLinear.optimal_shrinkage(F(2))
print(f"  optimal shrinkage {c}, Bayes risk {family.bayes_risk_gaussian(c, F(2))}, "
      f"sample-mean Bayes risk {family.bayes_risk_gaussian(F(1), F(2))}")
print()

print("Grid-scoped admissibility certificate for the sample mean (d = 1):")
scale = eps().inverse()
slack = (scale * scale + 1).inverse()
challengers = [F(j, 10) for j in range(11)]
cert = blyth_certificate(NormalLocationLinear(1), LCNumber(1),
                         GaussianPrior(scale), slack, challengers)
print(f"  certified: {cert.certified} against {cert.challenger_count} shrinkage "
      f"levels at {len(cert.probes)} probes")
cert3 = blyth_certificate(NormalLocationLinear(3), LCNumber(1),
                          GaussianPrior(scale), slack, challengers)
print(f"  in dimension 3: certified = {cert3.certified} ({cert3.reason})")

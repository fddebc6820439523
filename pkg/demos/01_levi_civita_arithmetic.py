"""A tour of exact infinitesimal arithmetic.

The field elements are finite series in a positive infinitesimal ``eps``
with rational coefficients and exponents.  Negative exponents give
infinite elements, so one generator covers both ends of the scale:
``eps`` is smaller than every positive real, ``eps^-1`` larger.

Run:  python demos/01_levi_civita_arithmetic.py
"""

from fractions import Fraction as F

from lcbayes import (LCNumber, approx_eq, eps, evaluate, much_greater,
                     refute_much_greater, st)


def show(label, value):
    print(f"  {label:<38} {value}")


print("Basic arithmetic is exact on all retained terms:")
e = eps()
show("(1 + eps) + (1 - eps)", (1 + e) + (1 - e))
show("(1 + eps) * (1 - eps)", (1 + e) * (1 - e))
show("1 / (1 + eps)", (1 + e).inverse())
show("eps * eps^-1", e * e.inverse())

print()
print("Division of rational functions in eps is long division:")
shrink = evaluate("(eps^-2)/(eps^-2 + 1)")
show("eps^-2 / (eps^-2 + 1)", shrink)
show("  its standard part", st(shrink))

print()
print("The order is non-Archimedean:")
show("eps < 1/10^9", e < F(1, 10 ** 9))
show("eps > 0", e > 0)
show("1 + eps > 1", 1 + e > 1)

print()
print("Valuation classifies magnitude; st takes the real shadow:")
for value in (3 * e * e, LCNumber(5) + e, e.inverse()):
    kind = ("infinitesimal" if value.is_infinitesimal() else
            "infinite" if value.is_infinite() else "appreciable")
    show(f"valuation({value})", f"{value.valuation()}  ({kind})")
show("st(2 + 3*eps - eps^2)", st(LCNumber(2) + 3 * e - e * e))

print()
print("Monadic relations ignore infinitesimal differences:")
show("1 + eps ~ 1", approx_eq(1 + e, LCNumber(1)))
show("1 + eps ~ 1.001", approx_eq(1 + e, LCNumber(F(1001, 1000))))

print()
print("x >> y means gamma*x > y for every positive real gamma.")
print("When it fails with x, y > 0, a witnessing gamma is produced:")
show("eps >> eps^2", much_greater(e, e * e))
show("2*eps >> eps", much_greater(2 * e, e))
gamma = refute_much_greater(2 * e, e)
show("  witness gamma", f"{gamma}  (gamma * 2*eps = {gamma * 2 * e} <= eps)")

"""Regenerates the Mill's ratio reference tables with mpmath at 40 digits.

m(x) = Phi(-x) / phi(x) = sqrt(pi/2) * exp(x^2/2) * erfc(x / sqrt(2)).
Abscissae are doubles; the reference is printed with 17 significant digits.
"""
import numpy as np
from mpmath import mp, mpf, erfc, exp, sqrt, pi, nstr

mp.dps = 40


def mills(x):
    x = mpf(float(x))
    return sqrt(pi / 2) * exp(x * x / 2) * erfc(x / sqrt(2))


def write(path, xs):
    with open(path, "w") as f:
        f.write("x,mills\n")
        for x in xs:
            f.write("%s,%s\n" % (repr(float(x)), nstr(mills(x), 17, strip_zeros=False)))


write("mills_0_600.csv", np.concatenate([[0.0], np.logspace(-4, np.log10(600.0), 99999)]))
write("mills_600_2000.csv", np.linspace(600.0, 2000.0, 2001))

"""Reference values for the acceptance physics checks, in 50-digit arithmetic.

Run with `python3 physics.py`; the printed literals are pasted into
tests/acceptance.rs.
"""

from mpmath import mp, mpf, exp

mp.dps = 50

A_S, B_S = mpf("5.275"), mpf("0.3")
A_W, B_W, C_W = mpf("7.47"), mpf("0.133"), mpf("0.55")
D_W, E_W, F_W, G_W = mpf("0.02526"), mpf("0.54"), mpf("0.715"), mpf("3.59e-4")


def phi_s(a, beta):
    return A_S * beta ** (-B_S) * a * a


def phi_w(u, sigma, beta_rel):
    c = A_W * exp(-B_W * sigma**C_W) * beta_rel ** (-D_W * exp(-E_W * sigma))
    b = F_W * sigma**G_W
    return c * u**b


print("phi_s(1, 0.005)         =", mp.nstr(phi_s(mpf(1), mpf("0.005")), 25))
print("phi_w(100, 2000, 1)     =", mp.nstr(phi_w(mpf(100), mpf(2000), mpf(1)), 25))

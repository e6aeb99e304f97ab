"""Which Gaussian states still admit a classical description?

A Gaussian state is non-classical exactly when some eigenvalue of its
covariance matrix drops below the vacuum level 1.  Thermal noise buys
headroom: a thermal state with occupation n tolerates squeezing up to
|zeta| = ln(2n+1)/2 before turning non-classical.
"""

import numpy as np

import cvsim as cv

print(__doc__)

print(f"{'n':>5} {'zeta_max':>9}")
for n in (0.0, 0.5, 1.0, 2.0, 4.0):
    print(f"{n:5.1f} {cv.max_classical_squeezing(n):9.4f}")

print()
n = 1.0
boundary = cv.max_classical_squeezing(n)
print(f"Squeezing a thermal state (n = {n}) across the boundary {boundary:.4f}:")
for zeta in (0.9 * boundary, boundary, 1.1 * boundary):
    st = cv.apply_symplectic(cv.thermal_state(n), cv.build_symplectic([cv.squeeze(0, zeta)], 1))
    verdict = cv.classicality_test(st.gamma)
    print(f"  zeta = {zeta:.4f}: min eigenvalue {verdict.min_gamma_eigenvalue:.6f}, "
          f"classical = {verdict.classical}")

print()
print("Characteristic function values, chi(lambda) = exp(-l^T G l/4 + i l^T Sigma k):")
st = cv.displace(cv.vacuum_state(1), [1.0, 0.0])
for lam in ([0.0, 0.0], [2.0, 0.0], [0.0, 2.0]):
    val = cv.characteristic_function(st, lam)
    print(f"  lambda = {lam}: chi = {val:.6f}")

print()
print("A two-mode squeezed vacuum is pure (both symplectic eigenvalues 1)")
print("but stays entangled for any nonzero squeezing:")
for zeta in (0.25, 0.75):
    gamma = cv.tmsv_state(zeta).gamma
    nus = cv.symplectic_eigenvalues(gamma)
    rep = cv.log_negativity(gamma)
    print(f"  zeta = {zeta}: symplectic eigenvalues {nus.round(10)}, E_N = {rep.e_n:.4f} (= 2 zeta)")

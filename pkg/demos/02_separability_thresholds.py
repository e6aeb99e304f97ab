"""When does fiber noise kill the entanglement completely?

At zero temperature absorption alone never makes a TMSV separable; with
thermal occupation n_th > 0 there is a critical value (and an equivalent
critical fiber length) beyond which the transmitted state is separable.
The thresholds below come from the closed form and are spot-checked by
driving the full separability test on the degraded covariance matrix.
"""

import math

import numpy as np

import cvsim as cv

print(__doc__)

print(f"{'zeta':>6} {'|T|^2':>7} {'n_th_crit':>11}")
for zeta in (0.2, 0.5, 1.0, 2.0):
    for t_sq in (0.3, 0.5, 0.7):
        n_crit = cv.fiber_separability_threshold(zeta, math.sqrt(t_sq))
        print(f"{zeta:6.2f} {t_sq:7.2f} {n_crit:11.5f}")

print()
print("Verify one threshold against the covariance-matrix separability test:")
zeta, t_sq = 0.5, 0.5
n_crit = cv.fiber_separability_threshold(zeta, math.sqrt(t_sq))
for n_th, label in ((0.9 * n_crit, "below"), (1.1 * n_crit, "above")):
    fiber = cv.FiberParams(t_mag=math.sqrt(t_sq), n_th=n_th)
    verdict = cv.is_separable(cv.degraded_tmsv(zeta, fiber, fiber))
    print(f"  n_th = {n_th:.5f} ({label} threshold): separable = {verdict.separable}")

print()
print("Separability length for Lambert-Beer fibers (units of l_A):")
print(f"{'zeta':>6} {'n_th':>6} {'l_S/l_A':>9}")
for zeta in (0.3, 0.8, 60.0):
    for n_th in (0.1, 0.5):
        l_s = cv.separability_length(zeta, n_th, 1.0)
        print(f"{zeta:6.1f} {n_th:6.2f} {l_s:9.4f}")
print()
print("n_th = 0 row: infinite separability length, entanglement always survives:")
print(f"  l_S = {cv.separability_length(0.8, 0.0, 1.0)}")

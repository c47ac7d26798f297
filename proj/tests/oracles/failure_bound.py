"""Reference values for the union-bound failure probability.

log B = ln 2 + ln C(N, n) + (N - n) ln(1 - C^-q), evaluated with 50-digit
mpmath arithmetic. The output is the table in ../failure_grid.hpp.
"""
import mpmath as mp

mp.mp.dps = 50

GRID = [
    (50, 2, 2, 4), (5000, 2, 2, 2), (10, 2, 2, 4), (20, 3, 2, 3), (40, 4, 2, 2),
    (100, 5, 3, 2), (160, 4, 2, 1.5), (640, 4, 3, 2), (1000, 10, 2, 2), (200, 20, 4, 1.3),
    (30, 3, 2.5, 2.5), (500, 5, 5, 1.2), (60, 6, 2, 4), (80, 8, 2, 3), (10000, 10, 3, 2),
    (120, 6, 6, 1.1), (12, 3, 2, 8), (7, 2, 2, 2), (2000, 50, 2, 1.5), (300, 30, 3, 1.7),
]

for N, n, q, C in GRID:
    # the double inputs the library sees, not their decimal spellings
    q, C = mp.mpf(float(q)), mp.mpf(float(C))
    value = mp.log(2) + mp.log(mp.binomial(N, n)) + (N - n) * mp.log(1 - C ** (-q))
    print(f"{{{N}, {n}, {mp.nstr(q, 3)}, {mp.nstr(C, 3)}, {mp.nstr(value, 20)}}},")

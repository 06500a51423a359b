"""Trapezoid intervals: membership, duration and the derived intervals."""

# %%
import numpy as np

from fuzzyallen import FuzzyInterval, after, before, duration, end, membership, start
from fuzzyallen.interval import membership_array

A = FuzzyInterval(1, 2, 5, 7)  # ramps up on [1,2], holds on [2,5], ramps down on [5,7]
print(A, "duration", duration(A))

# %%
# membership along a coarse grid
ts = np.arange(0, 8.5, 0.5)
for t, m in zip(ts, membership_array(A, ts)):
    print(f"{t:4.1f} {'#' * int(round(m * 20)):<20} {m:.2f}")

# %%
# everything before A starts and everything after it ends
print("Before", before(A))
print("After ", after(A))
print(membership(before(A), -1e6), membership(after(A), 1e6))

# %%
# start and end become narrow trapezoids centred on the edges;
# a crisp edge gets the minimum width
print("Start", start(A), "End", end(A))
print("crisp start", start(FuzzyInterval(2, 2, 4, 6), delta_min=0.1))

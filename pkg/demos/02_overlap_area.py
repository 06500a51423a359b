"""Overlap of two trapezoids as a convex polygon, checked against numeric integration."""

# %%
from fuzzyallen import FuzzyInterval, intersection_area, intersection_vertices, oracle_intersection_area

A = FuzzyInterval(0, 2, 5, 6)
B = FuzzyInterval(1, 4, 6, 9)

vs = intersection_vertices(A, B)
for v in vs:
    print(f"({v.x:.3f}, {v.y:.3f})")

# %%
exact = intersection_area(A, B)
numeric = oracle_intersection_area(A, B, grid_step=1e-4)
print(f"polygon {exact:.9f}  grid {numeric:.9f}  diff {abs(exact - numeric):.1e}")

# %%
# the polygon never has more than six corners
import random

rng = random.Random(0)
sizes = {}
for _ in range(5000):
    P = FuzzyInterval(*sorted(rng.uniform(0, 10) for _ in range(4)))
    Q = FuzzyInterval(*sorted(rng.uniform(0, 10) for _ in range(4)))
    n = len(intersection_vertices(P, Q))
    sizes[n] = sizes.get(n, 0) + 1
print(dict(sorted(sizes.items())))

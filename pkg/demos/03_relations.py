"""Allen-style relations as degrees of truth."""

# %%
from fuzzyallen import AllenRelations, FuzzyInterval, crisp_interval
from fuzzyallen.relations import RELATION_NAMES

rels = AllenRelations(delta_min=0.1)

pairs = {
    "[0,2] vs [2,4]": (crisp_interval(0, 2), crisp_interval(2, 4)),
    "[2,3] vs [0,5]": (crisp_interval(2, 3), crisp_interval(0, 5)),
    "[0,4] vs [2,6]": (crisp_interval(0, 4), crisp_interval(2, 6)),
}
print(" " * 16 + "".join(f"{r:>6}" for r in RELATION_NAMES))
for label, (A, B) in pairs.items():
    print(f"{label:<16}" + "".join(f"{rels(r, A, B):6.2f}" for r in RELATION_NAMES))

# %%
# fuzzy edges give intermediate values; slide B right and watch bf rise
A = FuzzyInterval(0, 1, 2, 3)
for shift in (0, 1, 2, 3, 4):
    B = FuzzyInterval(1 + shift, 2 + shift, 3 + shift, 4 + shift)
    print(f"shift {shift}: A bf B = {rels.bf(A, B):.3f}  A ol B = {rels.ol(A, B):.3f}")

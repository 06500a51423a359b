"""Exact values forward, softplus-shaped gradients backward."""

# %%
from fuzzyallen import FuzzyInterval, SmoothConfig, Tape, membership, smooth_membership, smooth_rel_in

A = FuzzyInterval(40, 45, 50, 55)

# far from the support the crisp membership is flat, so its gradient is zero;
# the surrogate still points x toward the interval
for beta, label in ((1.0, "beta = 1"), (0.01, "beta = 1/100")):
    cfg = SmoothConfig(beta)
    row = []
    for x in (-40.0, 0.0, 30.0, 47.0, 60.0, 140.0):
        tape = Tape()
        v = tape.variable(x)
        out = smooth_membership(A, v, cfg)
        row.append(f"x={x:g}: {out.value:.0f}/{tape.gradient(out, [v])[0]:+.2e}")
    print(label, "  ".join(row))
print("crisp value at 0:", membership(A, 0.0))

# %%
# containment of disjoint intervals: value 0, yet the right edge of one
# is pulled toward the left edge of the other
tape = Tape()
params = tape.variables([0, 1, 2, 3, 10, 11, 12, 13])
out = smooth_rel_in(FuzzyInterval(*params[:4]), FuzzyInterval(*params[4:]), SmoothConfig(0.1))
print("value", out.value, "partials", [f"{g:+.3f}" for g in tape.gradient(out, params)])

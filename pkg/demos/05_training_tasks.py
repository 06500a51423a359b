"""Fit interval parameters to temporal constraints with Adam."""

# %%
from fuzzyallen.interval import duration
from fuzzyallen.kb import TASKS, TrainConfig, parse_kb, task_text, train

for task_id, spec in TASKS.items():
    program = parse_kb(task_text(task_id))
    run = train(program, TrainConfig(lr=0.1, steps=spec.steps, target=spec.target))
    print(f"{task_id}: satisfaction {run.final.satisfaction:.4f} after {run.final.step} steps")
    for name, ev in run.events().items():
        print(f"    {name} = ({', '.join(f'{p:.2f}' for p in ev.interval.params)})")
    for name, x in run.scalars().items():
        print(f"    {name} = {x:.3f}")

# %%
# a custom knowledge base: B must meet A and last about 3
def meets(init):
    return parse_kb(f"""
horizon 20
event A fixed trapezoid(8, 9, 12, 13)
event B trainable init logits({init})
constraint B mt A
constraint duration(B) ~= 3
""")

# "meets" multiplies two containment degrees. If End(B) and Start(A) start out
# disjoint both are exactly 0, the product's gradient is 0 too, and nothing moves.
stuck = train(meets("0, 6, 1, 1, 1"), TrainConfig(steps=100))
print(f"disjoint start: satisfaction {stuck.final.satisfaction:.3f} after 100 steps")

# %%
# starting with the two edges overlapping a little is enough
run = train(meets("0, 5, 1, 1, 0.5"), TrainConfig(steps=300, target=0.98))
B = run.events()["B"].interval
print(f"B = {B}, duration {duration(B):.2f}, satisfaction {run.final.satisfaction:.3f} at step {run.final.step}")

# %%
# training past the optimum can hurt: the history shows the curve
run = train(parse_kb(task_text("T3")), TrainConfig(steps=400))
for rec in run.history[::50]:
    print(f"step {rec.step:4d}  satisfaction {rec.satisfaction:.4f}")

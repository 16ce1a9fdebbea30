"""
Deterministic and randomized eigenvector sweeps
===============================================

The classical sweep sorts vertices by the Fiedler vector and keeps the best
prefix. The randomized sweep instead includes vertex i independently with
probability (1 - 2 delta)/2 + v_i / (2 ||v||_inf) and keeps the best draw.
"""

# %%
import numpy as np

import cheegersweep as cs
from cheegersweep.bench import derive_seed

g = cs.generate("random_regular", seed=derive_seed(0, "sweeps"), n=20, d=3)
sd = cs.spectrum(g)
h, _ = cs.exact_cheeger(g)
print("n =", g.n, " lambda1 =", round(sd.lambda1, 4), " exact h =", round(h, 4))

# %%
classical = cs.classical_sweep(g, sd.fiedler)
print("classical sweep:", round(classical.best.ratio, 4), "from", classical.trials, "prefixes")

# %%
# Inclusion probabilities: the vertex with the largest |v_i| is decided for sure.
pv = cs.bernoulli_probabilities(sd.fiedler, delta=0.0)
print(np.round(pv.p, 3), " clamped:", pv.clamped)

# %%
# Best cut after n - 1 and n^2 draws. Draw t depends only on (seed, t), so the
# n^2 run contains the n - 1 run as a prefix and can never be worse.
for trials in (g.n - 1, g.n**2):
    res = cs.random_sweep(g, sd.fiedler, trials=trials, seed=7)
    print(f"{trials:4d} draws: best ratio {res.best.ratio:.4f} (draw {res.best_trial}), "
          f"discarded {res.discarded_trials}")

# %%
# The theorem setting uses delta = n^(-1/3), which biases S toward the smaller side.
delta = cs.theorem_delta(g.n)
res = cs.random_sweep(g, sd.fiedler, trials=g.n**2, delta=delta, seed=7)
print(f"delta = {delta:.3f}: best ratio {res.best.ratio:.4f}")

# %%
# Mixing several low eigenvectors: coefficients must have unit length and the
# combined vector must satisfy ||v||_inf <= 1/2.
c4 = cs.generate("cycle", n=4)
spec = cs.ArbitraryVectorSpec.from_coefficients(cs.spectrum(c4), [2**-0.5, 2**-0.5])
res = cs.arbitrary_vector_sweep(c4, spec, trials=16, seed=1)
print("C4 mixed vector:", res.best.vertices, res.best.ratio, " bound term", res.bound_term)

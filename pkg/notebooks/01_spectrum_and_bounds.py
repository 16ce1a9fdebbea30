"""
Spectra and Cheeger bounds of small graphs
==========================================

Build a few named graphs, look at their normalized Laplacian spectra and
compare the exact Cheeger constant with the quadratic and linear bounds.
"""

# %%
import numpy as np

import cheegersweep as cs

graphs = {
    "C4": cs.generate("cycle", n=4),
    "K4": cs.generate("complete", n=4),
    "Petersen": cs.generate("petersen"),
    "K1,3": cs.generate("star", k=3),
    "Q3": cs.generate("hypercube", dim=3),
    "P12": cs.generate("path", n=12),
}

# %%
# The spectrum lives in [0, 2]; lambda0 = 0 for every graph and lambda1 > 0
# exactly when the graph is connected.
for name, g in graphs.items():
    sd = cs.spectrum(g)
    print(f"{name:9s} eigenvalues {np.round(sd.eigenvalues, 4)}")

# %%
# The harmonic eigenvector v = D^(-1/2) u is normalized so that sum d_i v_i^2 = 1.
sd = cs.spectrum(graphs["Petersen"])
v = sd.fiedler
print("sum d v^2 =", graphs["Petersen"].degree @ v**2, " ||v||_inf =", sd.v_inf)

# %%
# Exact h versus the bounds. The linear lower bound coincides with lambda1/2;
# the linear upper term only sits above it when lambda1 <= 1 (complete graphs
# have lambda1 > 1 and there the order flips).
print(f"{'graph':9s} {'lam1':>7s} {'lam1/2':>7s} {'h':>7s} {'sqrt(2lam1)':>11s} {'lin up':>7s}")
for name, g in graphs.items():
    rep = cs.bounds_report(g)
    print(f"{name:9s} {rep.lambda1:7.4f} {rep.classical_lower:7.4f} {rep.h_value:7.4f} "
          f"{rep.classical_upper:11.4f} {rep.linear_upper_term:7.4f}")

# %%
# The optimal cut of the Petersen graph is its outer 5-cycle.
h, cut = cs.exact_cheeger(graphs["Petersen"])
print(h, cut.vertices, cut.boundary, cut.vol_s)

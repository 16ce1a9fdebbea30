"""Deterministic and randomized eigenvector sweeps.

The randomized sweep includes vertex ``i`` independently with probability
``(1 - 2δ)/2 + v_i / (2 ||v||_inf)`` and keeps the best of many draws. Draw
``t`` always comes from a generator seeded by ``(seed, t)``, so results do not
depend on batching or execution order, and the first ``k`` draws of a longer
run are exactly the draws of a ``k``-trial run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cheeger import Cut, cut_from_mask
from .graph import Graph

__all__ = [
    "SweepResult",
    "ProbabilityVector",
    "ArbitraryVectorSpec",
    "NoValidCutError",
    "SpecError",
    "theorem_delta",
    "classical_sweep",
    "bernoulli_probabilities",
    "trial_masks",
    "random_sweep",
    "arbitrary_vector_sweep",
    "expected_quadratic_form",
]

_BATCH = 1024
_SEED_MASK = 2**64 - 1


class NoValidCutError(RuntimeError):
    pass


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class SweepResult:
    best: Cut
    method: str
    trials: int
    seed: int | None = None
    delta: float | None = None
    discarded_trials: int = 0
    clamped: int = 0
    best_trial: int | None = None
    bound_term: float | None = None

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "trials": self.trials,
            "seed": self.seed,
            "delta": self.delta,
            "discarded_trials": self.discarded_trials,
            "clamped": self.clamped,
            "best_trial": self.best_trial,
            "bound_term": self.bound_term,
            "best": self.best.to_dict(),
        }


@dataclass(frozen=True)
class ProbabilityVector:
    p: np.ndarray
    clamped: int = 0

    def __post_init__(self):
        if np.any((self.p < 0) | (self.p > 1)):
            raise ValueError("probabilities must lie in [0, 1]")


def theorem_delta(n: int) -> float:
    """The shift ``δ = n^(-1/3)`` used to prove the linear upper bound."""
    return n ** (-1.0 / 3.0)


def classical_sweep(g: Graph, v) -> SweepResult:
    """Best prefix cut of the vertices ordered by ``v`` descending.

    Ties in ``v`` are broken by vertex index; ties in ratio keep the shortest
    prefix.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (g.n,):
        raise ValueError(f"vector has shape {v.shape}, expected ({g.n},)")
    n = g.n
    order = np.lexsort((np.arange(n), -v))
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    lo = np.minimum(pos[g.edges[:, 0]], pos[g.edges[:, 1]])
    hi = np.maximum(pos[g.edges[:, 0]], pos[g.edges[:, 1]])
    # edge crosses the prefix of size k iff lo < k <= hi
    diff = np.zeros(n + 1, dtype=np.int64)
    np.add.at(diff, lo + 1, 1)
    np.add.at(diff, hi + 1, -1)
    boundary = np.cumsum(diff)[1:n]
    vol = np.cumsum(g.degree[order])[: n - 1]
    ratios = boundary / np.minimum(vol, g.volume_total - vol)
    k = int(np.argmin(ratios)) + 1
    mask = np.zeros(n, dtype=bool)
    mask[order[:k]] = True
    return SweepResult(best=cut_from_mask(g, mask), method="classical", trials=n - 1)


def bernoulli_probabilities(v, delta: float = 0.0) -> ProbabilityVector:
    v = np.asarray(v, dtype=float)
    if not (0.0 <= delta < 0.5):
        raise ValueError(f"delta must lie in [0, 1/2), got {delta}")
    v_inf = float(np.max(np.abs(v))) if v.size else 0.0
    if v_inf == 0.0:
        raise ValueError("cannot seed probabilities from the zero vector")
    raw = (1.0 - 2.0 * delta) / 2.0 + v / (2.0 * v_inf)
    clamped = int(np.count_nonzero((raw < 0) | (raw > 1)))
    return ProbabilityVector(np.clip(raw, 0.0, 1.0), clamped)


def _trial_rng(seed, t):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed) & _SEED_MASK, t])))


def trial_masks(p, trials: int, seed: int, start: int = 0) -> np.ndarray:
    """Inclusion masks for draws ``start .. start + trials - 1``, one row each."""
    p = p.p if isinstance(p, ProbabilityVector) else np.asarray(p, dtype=float)
    out = np.empty((trials, p.size), dtype=bool)
    for row, t in enumerate(range(start, start + trials)):
        out[row] = _trial_rng(seed, t).random(p.size) < p
    return out


def _best_of_draws(g: Graph, probs: ProbabilityVector, trials: int, seed: int):
    u, w = g.edges[:, 0], g.edges[:, 1]
    deg = g.degree
    total = g.volume_total
    best_ratio, best_trial, best_mask = math.inf, None, None
    discarded = 0
    for start in range(0, trials, _BATCH):
        masks = trial_masks(probs, min(_BATCH, trials - start), seed, start)
        vol = masks @ deg
        valid = (vol > 0) & (vol < total)
        discarded += int(np.count_nonzero(~valid))
        if not valid.any():
            continue
        boundary = np.count_nonzero(masks[:, u] != masks[:, w], axis=1)
        denom = np.minimum(vol, total - vol)
        ratios = np.full(len(masks), np.inf)
        ratios[valid] = boundary[valid] / denom[valid]
        i = int(np.argmin(ratios))
        if ratios[i] < best_ratio:
            best_ratio, best_trial, best_mask = float(ratios[i]), start + i, masks[i].copy()
    if best_mask is None:
        raise NoValidCutError(f"all {trials} draws produced an empty or full set")
    return cut_from_mask(g, best_mask), best_trial, discarded


def random_sweep(g: Graph, v, trials: int, delta: float = 0.0, seed: int = 0) -> SweepResult:
    """Best of ``trials`` independent Bernoulli draws seeded by ``v``.

    Draws giving an empty or full set are discarded and counted. Raises
    :class:`NoValidCutError` when every draw is discarded.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    v = np.asarray(v, dtype=float)
    if v.shape != (g.n,):
        raise ValueError(f"vector has shape {v.shape}, expected ({g.n},)")
    probs = bernoulli_probabilities(v, delta)
    cut, best_trial, discarded = _best_of_draws(g, probs, trials, seed)
    return SweepResult(cut, "random_bernoulli", trials, seed, delta, discarded, probs.clamped, best_trial)


@dataclass(frozen=True)
class ArbitraryVectorSpec:
    """A unit combination ``v = Σ α_i v_i`` of harmonic eigenvectors ``v_1..v_k``."""

    coefficients: tuple[float, ...]
    v: np.ndarray
    k: int
    lambda_k: float
    degree: np.ndarray = field(repr=False)

    @classmethod
    def from_coefficients(cls, spectral, coefficients, tol: float = 1e-8) -> "ArbitraryVectorSpec":
        alpha = np.asarray(coefficients, dtype=float).ravel()
        k = alpha.size
        if k < 1 or k >= spectral.n:
            raise SpecError(f"need 1 <= k <= n - 1 coefficients, got {k}")
        v = spectral.harmonic[:, 1 : k + 1] @ alpha
        norm = float(np.sqrt(np.sum(spectral.degree * v * v)))
        if abs(norm - 1.0) > tol:
            raise SpecError(f"||D^(1/2) v||_2 = {norm:.10g}, coefficients must have unit norm")
        v_inf = float(np.max(np.abs(v)))
        if v_inf > 0.5:
            raise SpecError(f"||v||_inf = {v_inf:.6g} exceeds 1/2")
        return cls(tuple(alpha.tolist()), v, k, float(spectral.eigenvalues[k]), np.asarray(spectral.degree))

    @property
    def v_inf(self) -> float:
        return float(np.max(np.abs(self.v)))

    def bound_term(self) -> float:
        vol_g = int(self.degree.sum())
        return 0.5 - (1.0 - self.lambda_k) / (2.0 * self.v_inf**2 * vol_g)


def arbitrary_vector_sweep(g: Graph, spec: ArbitraryVectorSpec, trials: int,
                           delta: float = 0.0, seed: int = 0) -> SweepResult:
    r = random_sweep(g, spec.v, trials, delta, seed)
    return SweepResult(r.best, "random_arbitrary_vector", r.trials, r.seed, r.delta,
                       r.discarded_trials, r.clamped, r.best_trial, spec.bound_term())


def expected_quadratic_form(p, g: Graph) -> float:
    """``p^T A p``, the exact mean of ``E(S, S)`` when vertices join ``S`` independently."""
    p = p.p if isinstance(p, ProbabilityVector) else np.asarray(p, dtype=float)
    u, w = g.edges[:, 0], g.edges[:, 1]
    return float(2.0 * np.sum(p[u] * p[w]))

"""Cut ratios, exact Cheeger constants and the two families of spectral bounds."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .graph import Graph, as_mask, connected_components

__all__ = [
    "Cut",
    "BoundsReport",
    "InvalidCutError",
    "SizeLimitError",
    "DomainError",
    "EXACT_LIMIT",
    "cut_ratio",
    "cut_from_mask",
    "exact_cheeger",
    "classical_bounds",
    "linear_bounds",
    "bounds_report",
]

EXACT_LIMIT = 24
_CHUNK = 1 << 18


class InvalidCutError(ValueError):
    pass


class SizeLimitError(ValueError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Cut:
    """A vertex set ``S`` and its ratio ``E(S, S̄) / min(vol S, vol S̄)``."""

    vertices: tuple[int, ...]
    boundary: int
    vol_s: int
    vol_total: int
    ratio: float

    def mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, dtype=bool)
        m[list(self.vertices)] = True
        return m

    def to_dict(self) -> dict:
        return asdict(self) | {"vertices": list(self.vertices)}


def _ratio(boundary, vol_s, vol_total):
    return boundary / min(vol_s, vol_total - vol_s)


def cut_from_mask(g: Graph, mask: np.ndarray) -> Cut:
    u, w = g.edges[:, 0], g.edges[:, 1]
    boundary = int(np.count_nonzero(mask[u] != mask[w]))
    vol_s = int(g.degree[mask].sum())
    if vol_s == 0 or vol_s == g.volume_total:
        raise InvalidCutError("S must be a nonempty proper subset of V")
    return Cut(tuple(np.flatnonzero(mask).tolist()), boundary, vol_s, g.volume_total,
               _ratio(boundary, vol_s, g.volume_total))


def cut_ratio(g: Graph, s) -> Cut:
    return cut_from_mask(g, as_mask(g, s))


def _popcount(x):
    return np.bitwise_count(x).astype(np.int64)


def exact_cheeger(g: Graph, limit: int = EXACT_LIMIT) -> tuple[float, Cut]:
    """Exact Cheeger constant by enumerating every cut.

    Vertex 0 is kept outside ``S``, so each of the ``2**(n-1) - 1`` classes is
    visited once. The returned cut is the side of smaller volume (both sides when
    volumes tie), and among all minimizers the lexicographically least sorted
    vertex tuple. A disconnected graph gives ``h = 0`` with its smallest-volume
    component as the cut.
    """
    comps = connected_components(g)
    if len(comps) > 1:
        vols = [int(g.degree[list(c)].sum()) for c in comps]
        best = min(range(len(comps)), key=lambda i: (vols[i], comps[i]))
        return 0.0, cut_ratio(g, comps[best])
    n = g.n
    if n > limit:
        raise SizeLimitError(f"exact enumeration is limited to n <= {limit}, got n = {n}")

    # Bit i-1 of a mask stands for vertex i (vertex 0 is never in S).
    deg = g.degree
    lower_nbrs = np.zeros(n, dtype=np.uint64)
    for u, w in g.edges.tolist():
        if u > 0 and w > 0:
            lower_nbrs[max(u, w)] |= np.uint64(1 << (min(u, w) - 1))
    total = g.volume_total
    best_ratio = math.inf
    winners: list[np.ndarray] = []
    count = (1 << (n - 1)) - 1
    for start in range(1, count + 1, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, count + 1), dtype=np.uint64)
        vol = np.zeros(masks.size, dtype=np.int64)
        internal = np.zeros(masks.size, dtype=np.int64)
        for i in range(1, n):
            bit = ((masks >> np.uint64(i - 1)) & np.uint64(1)).astype(np.int64)
            vol += bit * deg[i]
            if lower_nbrs[i]:
                internal += bit * _popcount(masks & lower_nbrs[i])
        boundary = vol - 2 * internal
        ratios = boundary / np.minimum(vol, total - vol)
        low = ratios.min()
        if low < best_ratio:
            best_ratio = float(low)
            winners = [masks[ratios == low]]
        elif low == best_ratio:
            winners.append(masks[ratios == low])

    candidates = []
    for mask in np.concatenate(winners).tolist():
        inside = tuple(i for i in range(1, n) if mask >> (i - 1) & 1)
        outside = tuple(i for i in range(n) if not (i > 0 and mask >> (i - 1) & 1))
        v_in = int(deg[list(inside)].sum())
        if 2 * v_in <= total:
            candidates.append(inside)
        if 2 * v_in >= total:
            candidates.append(outside)
    return best_ratio, cut_ratio(g, min(candidates))


def classical_bounds(lambda1: float) -> tuple[float, float]:
    """``(λ₁/2, sqrt(2 λ₁))``."""
    if not (0.0 <= lambda1 <= 2.0):
        raise DomainError(f"lambda1 must lie in [0, 2], got {lambda1}")
    return lambda1 / 2.0, math.sqrt(2.0 * lambda1)


def linear_bounds(lambda1: float, v_inf: float, vol_g: int) -> tuple[float, float]:
    """Lower bound and bare upper term of the eigenvector-norm inequality.

    The upper term is ``1/2 - (1 - λ₁) / (2 v_inf² vol G)``; the asymptotic
    ``(1 + o(1))`` factor is not applied.
    """
    if not (0.0 <= lambda1 <= 2.0):
        raise DomainError(f"lambda1 must lie in [0, 2], got {lambda1}")
    if not v_inf > 0:
        raise DomainError("v_inf must be positive")
    if vol_g < 2:
        raise DomainError("vol G must be at least 2")
    lower = 0.5 - (1.0 - lambda1) / 2.0
    upper_term = 0.5 - (1.0 - lambda1) / (2.0 * v_inf**2 * vol_g)
    return lower, upper_term


@dataclass
class BoundsReport:
    lambda1: float
    v_inf: float
    vol_g: int
    max_degree: int
    n: int
    classical_lower: float
    classical_upper: float
    linear_lower: float
    linear_upper_term: float
    h_value: float
    h_provenance: str
    h_cut: Cut
    delta_over_vol: float
    n_pow_minus_two_thirds: float
    classical_lower_holds: bool
    classical_upper_holds: bool
    linear_lower_holds: bool
    linear_upper_status: str = "asymptotic, not asserted"
    sweep_trials: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["h_cut"] = self.h_cut.to_dict()
        return d


def bounds_report(g: Graph, spec=None, trials: int | None = None, seed: int = 0,
                  exact_limit: int = EXACT_LIMIT, tol: float = 1e-9) -> BoundsReport:
    """Spectrum, Cheeger constant and every bound for a connected graph.

    ``h_value`` is exact when ``n <= exact_limit``; otherwise it is the better of
    the classical sweep and a random sweep with ``trials`` draws (default
    ``min(n**2, 10_000)``), and ``h_provenance`` says which.
    """
    from .spectral import spectrum
    from .sweep import classical_sweep, random_sweep, NoValidCutError

    if len(connected_components(g)) != 1:
        raise DomainError("bounds_report needs a connected graph")
    sd = spec if spec is not None else spectrum(g)
    lam = min(max(sd.lambda1, 0.0), 2.0)
    v_inf = sd.v_inf
    c_lo, c_hi = classical_bounds(lam)
    l_lo, l_hi = linear_bounds(lam, v_inf, g.volume_total)

    sweep_trials = {}
    if g.n <= exact_limit:
        h, cut = exact_cheeger(g, limit=exact_limit)
        provenance = "exact"
    else:
        trials = trials if trials is not None else min(g.n**2, 10_000)
        cut = classical_sweep(g, sd.fiedler).best
        sweep_trials = {"classical": g.n - 1, "random": trials, "seed": seed}
        try:
            rand = random_sweep(g, sd.fiedler, trials=trials, delta=0.0, seed=seed).best
            if rand.ratio < cut.ratio:
                cut = rand
        except NoValidCutError:
            pass
        h = cut.ratio
        provenance = "best-found"

    return BoundsReport(
        lambda1=sd.lambda1,
        v_inf=v_inf,
        vol_g=g.volume_total,
        max_degree=g.max_degree,
        n=g.n,
        classical_lower=c_lo,
        classical_upper=c_hi,
        linear_lower=l_lo,
        linear_upper_term=l_hi,
        h_value=h,
        h_provenance=provenance,
        h_cut=cut,
        delta_over_vol=g.max_degree / g.volume_total,
        n_pow_minus_two_thirds=g.n ** (-2.0 / 3.0),
        classical_lower_holds=bool(c_lo - tol <= h),
        classical_upper_holds=bool(h <= c_hi + tol),
        linear_lower_holds=bool(l_lo - tol <= h),
        sweep_trials=sweep_trials,
    )

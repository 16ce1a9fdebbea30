import json
import math

import numpy as np
import pytest

from cheegersweep import (
    ConvergenceError,
    disjoint_union,
    edges_between,
    eig_sym,
    generate,
    normalized_laplacian,
    quadratic_form_edges,
    spectrum,
)
from cheegersweep.bench import verification_corpus


def test_laplacian_examples(c4, p3):
    k2 = generate("complete", n=2)
    assert normalized_laplacian(k2).tolist() == [[1.0, -1.0], [-1.0, 1.0]]
    lap = normalized_laplacian(c4)
    assert np.all(np.diag(lap) == 1.0)
    assert lap[0, 1] == lap[1, 0] == -0.5 and lap[0, 2] == 0.0
    lap = normalized_laplacian(p3)
    assert lap[0, 1] == pytest.approx(-1 / math.sqrt(2), abs=1e-15)
    assert lap[1, 2] == pytest.approx(-1 / math.sqrt(2), abs=1e-15)
    assert np.array_equal(lap, lap.T)


def test_eig_2x2():
    w, v = eig_sym(np.array([[1.0, -1.0], [-1.0, 1.0]]))
    assert w == pytest.approx([0.0, 2.0], abs=1e-14)


def test_eig_c4_closed_form_and_char_poly(c4):
    lap = normalized_laplacian(c4)
    w, _ = eig_sym(lap)
    closed = sorted(1 - math.cos(2 * math.pi * k / 4) for k in range(4))
    assert w == pytest.approx(closed, abs=1e-12)
    assert w == pytest.approx([0, 1, 1, 2], abs=1e-12)
    for lam in (0.0, 1.0, 2.0):
        assert abs(np.linalg.det(lap - lam * np.eye(4))) < 1e-12


def test_eig_p3_trace_and_known_vector(p3):
    lap = normalized_laplacian(p3)
    w, v = eig_sym(lap)
    assert w.sum() == pytest.approx(3.0, abs=1e-12)
    u = np.array([1.0, 0.0, -1.0]) / math.sqrt(2)
    assert lap @ u == pytest.approx(u, abs=1e-15)
    assert w == pytest.approx([0, 1, 2], abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 13, 40])
def test_eig_matches_lapack_oracle(n):
    rng = np.random.default_rng(n)
    m = rng.standard_normal((n, n))
    m = m + m.T
    w, q = eig_sym(m)
    assert np.all(np.diff(w) >= 0)
    assert w == pytest.approx(np.linalg.eigvalsh(m), abs=1e-10)
    fro = np.linalg.norm(m)
    assert np.linalg.norm(m - q @ np.diag(w) @ q.T) <= 1e-8 * max(1.0, fro)
    assert np.abs(q.T @ q - np.eye(n)).max() <= 1e-8


def test_eig_deterministic():
    rng = np.random.default_rng(7)
    m = rng.standard_normal((20, 20))
    m = m + m.T
    w1, q1 = eig_sym(m)
    w2, q2 = eig_sym(m)
    assert np.array_equal(w1, w2) and np.array_equal(q1, q2)


def test_eig_nonconvergence_reports_norm():
    rng = np.random.default_rng(0)
    m = rng.standard_normal((30, 30))
    m = m + m.T
    with pytest.raises(ConvergenceError) as info:
        eig_sym(m, max_sweeps=1)
    assert info.value.off_norm > 0 and info.value.sweeps == 1


def test_eig_rejects_asymmetric():
    with pytest.raises(ValueError):
        eig_sym(np.array([[1.0, 2.0], [0.0, 1.0]]))


@pytest.mark.parametrize("n", range(3, 9))
def test_complete_graph_lambda1(n):
    sd = spectrum(generate("complete", n=n))
    assert sd.lambda1 == pytest.approx(n / (n - 1), abs=1e-8)
    assert sd.eigenvalues[1:] == pytest.approx([n / (n - 1)] * (n - 1), abs=1e-8)


def test_petersen_from_adjacency_spectrum(petersen):
    # adjacency spectrum {3, 1^5, (-2)^4}; the graph is 3-regular
    adj = sorted(np.linalg.eigvalsh(petersen.adjacency()).round(8).tolist())
    assert adj == [-2.0] * 4 + [1.0] * 5 + [3.0]
    sd = spectrum(petersen)
    assert sd.lambda1 == pytest.approx(1 - 1 / 3, abs=1e-8)


def test_two_components_double_zero():
    k2 = generate("complete", n=2)
    sd = spectrum(disjoint_union(k2, k2))
    assert sd.zero_multiplicity() == 2


def test_spectral_invariants_on_corpus():
    for name, g in verification_corpus()[::3]:
        sd = spectrum(g)
        tol = 1e-9
        assert sd.eigenvalues[0] == pytest.approx(0, abs=tol), name
        assert np.all(sd.eigenvalues >= -tol) and np.all(sd.eigenvalues <= 2 + tol), name
        assert np.abs(sd.eigenvectors.T @ sd.eigenvectors - np.eye(g.n)).max() <= 1e-8, name
        assert sd.residuals.max() <= 1e-8, name
        assert sd.eigenvalues.sum() == pytest.approx(g.n, abs=1e-8), name
        d = g.degree.astype(float)
        # ||D^{1/2} v||_2 = 1 for every harmonic vector
        assert (d[:, None] * sd.harmonic**2).sum(axis=0) == pytest.approx(np.ones(g.n), abs=1e-10)
        # Fiedler harmonic vector is D-orthogonal to the constants
        assert abs(sd.fiedler @ d) <= 1e-8, name
        assert sd.zero_multiplicity() == 1


def test_sign_convention(petersen):
    sd = spectrum(petersen)
    for j in range(petersen.n):
        col = sd.eigenvectors[:, j]
        first = col[np.flatnonzero(np.abs(col) > 1e-12)[0]]
        assert first > 0


@pytest.mark.parametrize("kind, params", [
    ("cycle", {"n": 9}), ("hypercube", {"dim": 4}), ("petersen", {}),
    ("random_regular", {"n": 30, "d": 4}), ("complete", {"n": 7}),
])
def test_regular_graph_bridge(kind, params):
    g = generate(kind, seed=11, **params)
    d = g.degree[0]
    mu = np.sort(np.linalg.eigvalsh(g.adjacency()))[::-1]
    lam = spectrum(g).eigenvalues
    assert lam == pytest.approx(1 - mu / d, abs=1e-8)


def test_quadratic_form_examples(c4):
    k3 = generate("complete", n=3)
    assert quadratic_form_edges(c4, [0, 1], [2, 3]) == pytest.approx(2.0, abs=1e-12)
    assert quadratic_form_edges(k3, range(3), range(3)) == pytest.approx(6.0, abs=1e-12)
    assert quadratic_form_edges(c4, range(4), []) == 0.0


def test_quadratic_form_matches_edge_count_random():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        n = int(rng.integers(2, 13))
        g = generate("gnp", seed=int(rng.integers(2**63)), n=n, p=float(rng.uniform(0.3, 1.0)))
        s = rng.random(n) < 0.5
        t = rng.random(n) < 0.5
        assert abs(quadratic_form_edges(g, s, t) - edges_between(g, s, t)) <= 1e-9


def test_spectral_json(petersen):
    payload = json.loads(json.dumps(spectrum(petersen).to_dict()))
    assert set(payload) == {"eigenvalues", "lambda1", "v_inf_norm", "residual_max"}
    assert len(payload["eigenvalues"]) == 10

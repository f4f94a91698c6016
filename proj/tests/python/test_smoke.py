import math

import numpy as np
import pytest

import illreg


def test_problem_is_scaled():
    p = illreg.make_problem("shaw", 40)
    s = np.linalg.svd(p.A, compute_uv=False)
    assert s[0] ** 2 == pytest.approx(math.exp(-1), rel=1e-12)
    assert np.allclose(p.A @ p.x_true, p.y_exact)


def test_problem_json_roundtrip():
    p = illreg.make_problem("heat", 20)
    q = illreg.Problem.from_json(p.to_json())
    assert np.array_equal(p.A, q.A)
    assert np.array_equal(p.x_true, q.x_true)
    assert q.scale == p.scale


def test_filter_solve_matches_numpy_tikhonov():
    p = illreg.make_problem("baart", 30)
    alpha = 1e-4
    x = illreg.filter_solve(p.A, p.y_exact, "tik", alpha)
    n = p.A.shape[1]
    ref = np.linalg.solve(p.A.T @ p.A + alpha * np.eye(n), p.A.T @ p.y_exact)
    assert np.linalg.norm(x - ref) <= 1e-8 * np.linalg.norm(ref)


def test_nrm_generator_closed_form():
    lam, alpha = 0.1, 0.01
    expected = 1.0 / (lam + (1.0 - lam ** math.sqrt(alpha)) ** 2)
    assert illreg.g("nrm", alpha, lam) == pytest.approx(expected, rel=1e-14)
    assert illreg.r("nrm", alpha, lam) == pytest.approx(1.0 - lam * expected, rel=1e-12)


def test_domain_errors_raise():
    with pytest.raises(ValueError):
        illreg.g("nrm", 0.1, 1.5)
    with pytest.raises(ValueError):
        illreg.make_problem("nope", 10)


def test_cgls_reaches_least_squares_solution():
    A = np.diag([0.5, 0.3, 0.1])
    y = np.array([1.0, 1.0, 1.0])
    iterates, breakdown = illreg.cgls(A, y, 3)
    assert np.allclose(iterates[-1], y / np.diag(A), rtol=1e-8)


def test_noise_is_reproducible():
    y = np.ones(50)
    a, da = illreg.add_noise(y, 0.04, 7)
    b, db = illreg.add_noise(y, 0.04, 7)
    assert np.array_equal(a, b) and da == db
    assert da == pytest.approx(np.linalg.norm(a - y))


def test_rule_and_monte_carlo_smoke():
    p = illreg.make_problem("shaw", 32)
    y, _ = illreg.add_noise(p.y_exact, 0.04, 1)
    out = illreg.heuristic_select(p.A, y, "nrm", "lcv")
    assert out["param"] > 0 and out["trace"]
    assert illreg.heuristic_select(p.A, y, "cg", "gcv")["not_applicable"]
    rows = illreg.monte_carlo([p], ["nrm", "tik"], ["oracle", "lcv"], [0.04], reps=3, threads=1)
    assert len(rows) == 4
    for row in rows:
        assert row["e_min"] <= row["e_mean"] <= row["e_max"]


def test_lemma_checks_pass():
    rows = illreg.run_check("lemma1")
    assert rows and all(r["pass"] for r in rows)

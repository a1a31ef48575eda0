"""Acceptance suite: one test (or parametrised family) per criterion.

Each family is tagged with ``@pytest.mark.criterion`` so that the summary
hook in ``conftest.py`` prints a single PASS/FAIL line per criterion.
"""
import math
import time
from functools import lru_cache

import numpy as np
import pytest

from orbitact.actiondirect import kappa_direct
from orbitact.laxflow import solve_lax
from orbitact.orbit import coadjoint_apply
from orbitact.scenario import load_fixtures, run_scenario
from orbitact.weylrep import (TorusElement, corollary_check, kappa_character, kappa_weyl,
                              schur_bialternant, schur_character, schur_jacobi_trudi,
                              weyl_dimension)

from helpers import (cp1_curve, cp1_eta, dominant_weights, random_special_unitary,
                     rotating_curve, rotating_endpoint, s2_curve, s2_eta, schur_ssyt)

CP1_KS = (1, 2, 3, 4)
S2_AB = ((1, 0), (3, 4), (1, 1))
S2_NS = (-1, -2, -5)
S2_CASES = [(ab, n) for ab in S2_AB for n in S2_NS]


@lru_cache(maxsize=None)
def _fixtures():
    return {c.name: c for c in load_fixtures()}


@lru_cache(maxsize=None)
def _run(name):
    """Report and wall time for one built-in scenario (computed once per session)."""
    config = _fixtures()[name]
    start = time.perf_counter()
    report = run_scenario(config)
    return report, time.perf_counter() - start


def _s2_name(ab, n):
    return f"s2_a{ab[0]}_b{ab[1]}_n{n}"


def _line(criterion, label, ok, detail):
    print(f"[criterion {criterion}] {label}: {'PASS' if ok else 'FAIL'} ({detail})")


# -- 1 -----------------------------------------------------------------------

@pytest.mark.criterion(1, "CP1 suite: all routes give (-1)^k, each scenario < 1 s")
@pytest.mark.parametrize("k", CP1_KS)
def test_criterion_1_cp1(k):
    report, elapsed = _run(f"cp1_k{k}")
    expected = (-1) ** k
    cfg = _fixtures()[f"cp1_k{k}"]
    assert cfg.steps == 1024 and cfg.samples == 8192
    devs = {r: abs(res.value - expected) for r, res in report.results.items()}
    ok = (set(devs) == {"direct", "lax-character", "weyl"}
          and devs["lax-character"] <= 1e-9 and devs["weyl"] <= 1e-9
          and devs["direct"] <= 1e-6 and elapsed < 1.0)
    _line(1, f"k={k}", ok, f"devs={devs}, {elapsed:.3f} s")
    assert ok


# -- 2 -----------------------------------------------------------------------

@pytest.mark.criterion(2, "S2 suite: lax-character and weyl give (-1)^n")
@pytest.mark.parametrize("ab,n", S2_CASES)
def test_criterion_2_s2(ab, n):
    report, _ = _run(_s2_name(ab, n))
    expected = (-1) ** n
    lam = abs(report.results["lax-character"].value - expected)
    wey = abs(report.results["weyl"].value - expected)
    ok = lam <= 1e-8 and wey <= 1e-8
    _line(2, f"(a,b)={ab}, n={n}", ok, f"lax={lam:.2e}, weyl={wey:.2e}")
    assert ok


# -- 3 -----------------------------------------------------------------------

@pytest.mark.criterion(3, "SU(2) character table: dimension and chi(pi*)(-I)")
@pytest.mark.parametrize("n", [-1, -2, -3, -4, -5])
def test_criterion_3_character_table(n):
    mu = (-n, 0)
    dim = weyl_dimension(mu)
    minus_identity = TorusElement((math.pi, math.pi), np.eye(2))
    chi_dual = schur_character(mu, minus_identity).conjugate()
    err = abs(chi_dual - (-n + 1) * (-1) ** n)
    ok = dim == -n + 1 and isinstance(dim, int) and err <= 1e-10
    _line(3, f"n={n}", ok, f"dim={dim}, err={err:.2e}")
    assert ok


# -- 4 -----------------------------------------------------------------------

@pytest.mark.criterion(4, "integrator order slope <= -3.8 and drift <= 1e-10")
def test_criterion_4_order():
    w, a, b = 2.0, 0.8, -0.5
    exact = rotating_endpoint(w, a, b)
    curve = rotating_curve(w, a, b)
    steps = np.array([16, 32, 64, 128, 256])
    errors = [np.linalg.norm(solve_lax(curve, int(s)).final - exact) for s in steps]
    slope = np.polyfit(np.log(steps), np.log(errors), 1)[0]
    ok = slope <= -3.8
    _line(4, "order", ok, f"slope={slope:.3f}")
    assert ok


@pytest.mark.criterion(4, "integrator order slope <= -3.8 and drift <= 1e-10")
@pytest.mark.parametrize("case", ["rotating", "s2", "cp1"])
def test_criterion_4_drift(case):
    curve = {"rotating": rotating_curve(2.0, 0.8, -0.5), "s2": s2_curve(3, 4),
             "cp1": cp1_curve(4)}[case]
    drift = solve_lax(curve, 1024).unitarity_drift
    ok = drift <= 1e-10
    _line(4, f"drift {case}", ok, f"drift={drift:.2e}")
    assert ok


# -- 5 -----------------------------------------------------------------------

@pytest.mark.criterion(5, "corollary: rho_W(h1) = kappa I and trace = kappa dim")
@pytest.mark.parametrize("ab", S2_AB)
@pytest.mark.parametrize("n", [-1, -2, -3])
def test_criterion_5_corollary(ab, n):
    report = corollary_check(s2_curve(*ab), s2_eta(n))
    expected_trace = report["kappa"] * (-n + 1)
    ok = (report["operator_residual"] <= 1e-9
          and abs(report["trace"] - expected_trace) <= 1e-9 and report["N"] == -n)
    _line(5, f"(a,b)={ab}, n={n}", ok,
          f"op={report['operator_residual']:.2e}, tr={report['trace_residual']:.2e}")
    assert ok


# -- 6 -----------------------------------------------------------------------

@pytest.mark.criterion(6, "Schur consistency on 20 random SU(3) torus elements")
def test_criterion_6_schur():
    rng = np.random.default_rng(20260511)
    weights = dominant_weights(3, 6)
    worst_jt, worst_bi, compared_bi = 0.0, 0.0, 0
    for _ in range(20):
        theta = rng.uniform(-math.pi, math.pi, size=3)
        theta[2] = -theta[0] - theta[1]
        z = np.exp(1j * theta)
        separated = min(abs(z[i] - z[j]) for i in range(3) for j in range(i + 1, 3)) > 1e-3
        for mu in weights:
            oracle = schur_ssyt(mu, z)
            jt = schur_jacobi_trudi(mu, z)
            worst_jt = max(worst_jt, abs(jt - oracle))
            if separated:
                worst_bi = max(worst_bi, abs(schur_bialternant(mu, z) - oracle))
                compared_bi += 1
    ok = worst_jt <= 1e-10 and worst_bi <= 1e-10
    _line(6, "schur", ok, f"{len(weights)} weights, jt={worst_jt:.2e}, "
                          f"bialternant={worst_bi:.2e} over {compared_bi}")
    assert ok


# -- 7 -----------------------------------------------------------------------

_ROUTES = {
    "direct": lambda curve, eta, path: kappa_direct(curve, eta, path=path),
    "lax-character": lambda curve, eta, path: kappa_character(curve, eta, path=path),
    "weyl": lambda curve, eta, path: kappa_weyl(curve, eta, path=path),
}


@pytest.mark.criterion(7, "invariance: conjugation, q-independence, route agreement")
@pytest.mark.parametrize("route", list(_ROUTES))
@pytest.mark.parametrize("scenario", ["cp1_k3", "s2_a3_b4_n-5"])
def test_criterion_7_conjugation(route, scenario):
    if scenario.startswith("cp1"):
        curve, eta = cp1_curve(3), cp1_eta()
    else:
        curve, eta = s2_curve(3, 4), s2_eta(-5)
    rng = np.random.default_rng(7)
    base = _ROUTES[route](curve, eta, solve_lax(curve, 1024)).value
    worst = 0.0
    for _ in range(3):
        g = random_special_unitary(2, rng)
        moved_curve = curve.conjugated(g)
        value = _ROUTES[route](moved_curve, coadjoint_apply(g, eta),
                               solve_lax(moved_curve, 1024)).value
        worst = max(worst, abs(value - base))
    ok = worst <= 1e-8
    _line(7, f"conjugation {route} {scenario}", ok, f"max diff={worst:.2e}")
    assert ok


@pytest.mark.criterion(7, "invariance: conjugation, q-independence, route agreement")
@pytest.mark.parametrize("scenario", ["cp1_k1", "cp1_k4", "s2_a1_b1_n-2"])
def test_criterion_7_q_independence(scenario):
    if scenario.startswith("cp1"):
        k = int(scenario[-1])
        curve, eta = cp1_curve(k), cp1_eta()
    else:
        curve, eta = s2_curve(1, 1), s2_eta(-2)
    path = solve_lax(curve, 1024)
    rng = np.random.default_rng(5)
    values = [kappa_direct(curve, eta, q=coadjoint_apply(random_special_unitary(2, rng), eta),
                           path=path).value for _ in range(5)]
    spread = max(abs(v - w) for v in values for w in values)
    ok = spread <= 1e-6
    _line(7, f"q-independence {scenario}", ok, f"spread={spread:.2e}")
    assert ok


@pytest.mark.criterion(7, "invariance: conjugation, q-independence, route agreement")
@pytest.mark.parametrize("name", [f"cp1_k{k}" for k in CP1_KS]
                         + [_s2_name(ab, n) for ab, n in S2_CASES])
def test_criterion_7_route_agreement(name):
    report, _ = _run(name)
    values = [res.value for res in report.results.values()]
    worst = max(abs(a - b) for a in values for b in values)
    ok = len(values) == 3 and worst <= 1e-6 and report.verdict == "AGREE"
    _line(7, f"agreement {name}", ok, f"max pairwise={worst:.2e}")
    assert ok

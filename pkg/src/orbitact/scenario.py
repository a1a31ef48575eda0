"""Scenario configs, the three-route runner and its report.

Configs and reports are JSON; complex numbers are written as
``{"re": ..., "im": ...}``. A parsed config keeps its canonical dict form so
that serialising and reparsing is lossless.
"""
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

import numpy as np

from . import actiondirect, laxflow, weylrep
from .errors import ConfigError, IntegralityError, OrbitactError, RegularityError, RoleError
from .laxflow import CurveSpec, ScalarTimeFunction, Sinusoid
from .orbit import DualFunctional, integrality_residual, is_regular, weight_of
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "ROUTES",
    "ScenarioConfig",
    "Report",
    "parse_config",
    "load_config",
    "run_scenario",
    "verify_paper",
    "load_fixtures",
    "character_eval",
    "to_canonical",
]

ROUTES = ("direct", "lax-character", "weyl")
DEFAULT_SAMPLES = actiondirect.DEFAULT_SAMPLES

# per-route deviation from the expected value accepted by ``verify_paper``
VERIFY_TOLERANCE = {"direct": 1e-6, "lax-character": 1e-9, "weyl": 1e-9}


# -- JSON helpers -----------------------------------------------------------

def encode_complex(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _decode_complex(obj, where):
    if isinstance(obj, bool):
        raise ConfigError(where, "expected a number")
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, dict) and set(obj) <= {"re", "im"}:
        try:
            return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
        except (TypeError, ValueError):
            pass
    raise ConfigError(where, f"expected a number or {{'re', 'im'}} object, got {obj!r}")


def _real(obj, where):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ConfigError(where, f"expected a real number, got {obj!r}")
    if not math.isfinite(obj):
        raise ConfigError(where, "must be finite")
    return float(obj)


def _int(obj, where, minimum=None):
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise ConfigError(where, f"expected an integer, got {obj!r}")
    if minimum is not None and obj < minimum:
        raise ConfigError(where, f"must be >= {minimum}")
    return obj


def _matrix(obj, n, where):
    """Row-major flat list of ``n*n`` entries, or a nested list of rows."""
    if not isinstance(obj, list):
        raise ConfigError(where, "expected a list of matrix entries")
    if len(obj) == n and all(isinstance(r, list) for r in obj):
        obj = [e for row in obj for e in row]
    if len(obj) != n * n:
        raise ConfigError(where, f"expected {n * n} entries, got {len(obj)}")
    return np.array([_decode_complex(e, f"{where}[{i}]") for i, e in enumerate(obj)]).reshape(n, n)


def _round_sig(x, digits=12):
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits}g}")


def to_canonical(obj):
    """Recursively round floats to 12 significant digits and encode complex values."""
    if isinstance(obj, complex):
        return {"re": _round_sig(obj.real), "im": _round_sig(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return _round_sig(float(obj))
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): to_canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_canonical(v) for v in obj]
    return obj


# -- configs ----------------------------------------------------------------

def _parse_functional(obj, n, where):
    if not isinstance(obj, dict) or len(obj) != 1 or not set(obj) <= {"h_diag", "h_matrix"}:
        raise ConfigError(where, "expected exactly one of 'h_diag' or 'h_matrix'")
    if "h_diag" in obj:
        diag = obj["h_diag"]
        if not isinstance(diag, list) or len(diag) != n:
            raise ConfigError(f"{where}.h_diag", f"expected a list of {n} reals")
        values = [_real(v, f"{where}.h_diag[{i}]") for i, v in enumerate(diag)]
        return {"h_diag": values}, DualFunctional.from_diag(values)
    M = _matrix(obj["h_matrix"], n, f"{where}.h_matrix")
    try:
        eta = DualFunctional(M)
    except RoleError as exc:
        raise ConfigError(f"{where}.h_matrix", str(exc)) from None
    return {"h_matrix": [encode_complex(z) for z in M.ravel()]}, eta


def _parse_term(obj, n, where):
    if not isinstance(obj, dict) or "direction" not in obj:
        raise ConfigError(where, "expected an object with a 'direction'")
    unknown = set(obj) - {"direction", "poly", "fourier"}
    if unknown:
        raise ConfigError(where, f"unknown keys {sorted(unknown)}")
    D = _matrix(obj["direction"], n, f"{where}.direction")
    poly = obj.get("poly", [])
    if not isinstance(poly, list):
        raise ConfigError(f"{where}.poly", "expected a list of coefficients")
    poly = [_real(c, f"{where}.poly[{i}]") for i, c in enumerate(poly)]
    fourier = []
    for i, s in enumerate(obj.get("fourier", [])):
        w = f"{where}.fourier[{i}]"
        if not isinstance(s, dict) or not {"amp", "omega"} <= set(s) <= {"amp", "omega", "phase"}:
            raise ConfigError(w, "expected {'amp', 'omega', 'phase'}")
        fourier.append(Sinusoid(_real(s["amp"], f"{w}.amp"), _real(s["omega"], f"{w}.omega"),
                                _real(s.get("phase", 0.0), f"{w}.phase")))
    canonical = {
        "direction": [encode_complex(z) for z in D.ravel()],
        "poly": poly,
        "fourier": [{"amp": s.amp, "omega": s.omega, "phase": s.phase} for s in fourier],
    }
    return canonical, (D, ScalarTimeFunction(tuple(poly), tuple(fourier)))


@dataclass
class ScenarioConfig:
    name: str
    n: int
    eta: DualFunctional
    curve: CurveSpec
    q: DualFunctional = None
    steps: int = laxflow.DEFAULT_STEPS
    samples: int = DEFAULT_SAMPLES
    routes: tuple = ROUTES
    tolerances: Tolerances = DEFAULT
    expected: complex = None
    canonical: dict = field(default=None, repr=False)

    def to_dict(self):
        return json.loads(json.dumps(self.canonical))

    def with_options(self, steps=None, samples=None, routes=None):
        data = self.to_dict()
        if steps is not None:
            data["integrator"] = {"steps": steps}
        if samples is not None:
            data["quadrature"] = {"samples": samples}
        if routes is not None:
            data["routes"] = list(routes)
        return parse_config(data)


_TOP_KEYS = {"name", "group", "eta", "curve", "q", "integrator", "quadrature", "routes",
             "tolerances", "expected"}


def parse_config(data):
    """Validate a config dict and build the scenario objects.

    Raises:
        ConfigError: the first offending field, including a non-regular or
            non-integral eta.
    """
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError("<root>", f"unknown keys {sorted(unknown)}")
    for key in ("group", "eta", "curve"):
        if key not in data:
            raise ConfigError(key, "missing")
    group = data["group"]
    if not isinstance(group, dict) or group.get("type") != "SU":
        raise ConfigError("group.type", "only 'SU' is supported")
    n = _int(group.get("n"), "group.n", 2)
    if n > 8:
        raise ConfigError("group.n", "must be <= 8")

    eta_c, eta = _parse_functional(data["eta"], n, "eta")
    if not is_regular(eta):
        raise ConfigError("eta", f"not regular (spectrum {eta.spectrum.tolist()})")
    try:
        weight_of(eta)
    except (IntegralityError, RegularityError) as exc:
        raise ConfigError("eta", str(exc)) from None

    curve_obj = data["curve"]
    if not isinstance(curve_obj, dict) or not isinstance(curve_obj.get("terms", []), list):
        raise ConfigError("curve", "expected {'terms': [...]}")
    terms_c, terms = [], []
    for i, t in enumerate(curve_obj.get("terms", [])):
        c, term = _parse_term(t, n, f"curve.terms[{i}]")
        terms_c.append(c)
        terms.append(term)
    try:
        curve = CurveSpec(n, tuple(terms))
    except RoleError as exc:
        raise ConfigError("curve.terms", f"direction not in su({n}): {exc}") from None

    q_c, q = None, None
    if data.get("q") is not None:
        q_c, q = _parse_functional(data["q"], n, "q")
        if np.max(np.abs(q.spectrum - eta.spectrum)) > DEFAULT.orbit_spectrum:
            raise ConfigError("q", "point is not on the orbit of eta")

    steps = _int(data.get("integrator", {}).get("steps", laxflow.DEFAULT_STEPS),
                 "integrator.steps", 4)
    samples = _int(data.get("quadrature", {}).get("samples", DEFAULT_SAMPLES),
                   "quadrature.samples", 4)
    if samples % 2:
        raise ConfigError("quadrature.samples", "must be even")

    routes = data.get("routes", list(ROUTES))
    if not isinstance(routes, list) or not routes or not set(routes) <= set(ROUTES):
        raise ConfigError("routes", f"expected a non-empty subset of {list(ROUTES)}")
    routes = tuple(r for r in ROUTES if r in routes)

    tol_over = data.get("tolerances", {}) or {}
    if not isinstance(tol_over, dict):
        raise ConfigError("tolerances", "expected an object")
    try:
        tolerances = DEFAULT.updated(
            {k: _real(v, f"tolerances.{k}") for k, v in tol_over.items()})
    except KeyError as exc:
        raise ConfigError("tolerances", f"unknown tolerance {exc.args[0]}") from None

    expected = None
    if data.get("expected") is not None:
        expected = _decode_complex(data["expected"], "expected")

    name = data.get("name", "scenario")
    if not isinstance(name, str):
        raise ConfigError("name", "expected a string")

    canonical = {
        "name": name,
        "group": {"type": "SU", "n": n},
        "eta": eta_c,
        "curve": {"terms": terms_c},
        "q": q_c,
        "integrator": {"steps": steps},
        "quadrature": {"samples": samples},
        "routes": list(routes),
        "tolerances": {k: float(v) for k, v in sorted(tol_over.items())},
        "expected": None if expected is None else encode_complex(expected),
    }
    return ScenarioConfig(name, n, eta, curve, q, steps, samples, routes, tolerances,
                          expected, canonical)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON: {exc}") from None
    return parse_config(data)


# -- running ----------------------------------------------------------------

@dataclass
class Report:
    name: str
    results: dict
    skipped: dict
    disagreements: dict
    diagnostics: dict
    verdict: str
    expected: complex = None

    @property
    def exit_code(self):
        return 0 if self.verdict == "AGREE" else 1

    def to_dict(self):
        return to_canonical({
            "name": self.name,
            "verdict": self.verdict,
            "expected": self.expected,
            "routes": {
                r: {"value": res.value, "method": res.method,
                    "action_mod_one": res.action_mod_one, "residuals": res.residuals}
                for r, res in self.results.items()
            },
            "skipped": self.skipped,
            "disagreements": self.disagreements,
            "diagnostics": self.diagnostics,
        })

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def to_text(self):
        lines = [f"scenario {self.name}: {self.verdict}"]
        for r in ROUTES:
            if r in self.results:
                z = self.results[r].value
                lines.append(f"  {r:<14} kappa = {_fmt_complex(z)}")
            elif r in self.skipped:
                lines.append(f"  {r:<14} skipped: {self.skipped[r]}")
        for pair, d in self.disagreements.items():
            lines.append(f"  |{pair}| = {d:.3e}")
        return "\n".join(lines)


def _fmt_complex(z):
    return f"{z.real:+.12f} {z.imag:+.12f}i"


_ROUTE_FUNCS = {
    "direct": lambda cfg, path: actiondirect.kappa_direct(
        cfg.curve, cfg.eta, cfg.q, cfg.steps, cfg.samples, path, cfg.tolerances),
    "lax-character": lambda cfg, path: weylrep.kappa_character(
        cfg.curve, cfg.eta, cfg.steps, path, cfg.tolerances),
    "weyl": lambda cfg, path: weylrep.kappa_weyl(
        cfg.curve, cfg.eta, cfg.steps, path, cfg.tolerances),
}


def run_scenario(config):
    """Run every requested route on one scenario and compare them pairwise.

    Routes whose preconditions fail (the direct route outside SU(2), a
    non-closed isotopy, a chart exit) are skipped with the reason. The
    verdict is ``AGREE`` when at least one route ran and all pairwise
    differences are within ``tolerances.agreement``.
    """
    tol = config.tolerances
    path = laxflow.solve_lax(config.curve, config.steps, drift_tol=tol.drift)
    closure = laxflow.closure_check(path, config.eta, tol.closure)
    results, skipped = {}, {}
    for route in config.routes:
        if route == "direct" and config.n != 2:
            skipped[route] = f"direct route is implemented for SU(2) only (n = {config.n})"
            continue
        try:
            results[route] = _ROUTE_FUNCS[route](config, path)
        except OrbitactError as exc:
            skipped[route] = f"{type(exc).__name__}: {exc}"

    disagreements = {
        f"{a}|{b}": abs(results[a].value - results[b].value)
        for a, b in combinations([r for r in ROUTES if r in results], 2)
    }
    if not results:
        verdict = "INCONCLUSIVE"
    elif all(d <= tol.agreement for d in disagreements.values()):
        verdict = "AGREE"
    else:
        verdict = "DISAGREE"

    mu = weylrep.dominant_highest_weight(config.eta)
    diagnostics = {
        "unitarity_drift": path.unitarity_drift,
        "projections": path.projections,
        "closure_status": closure.status,
        "isotropy_residual": closure.isotropy_residual,
        "centrality_residual": closure.centrality_residual,
        "sampled_point_residual": closure.sampled_point_residual,
        "integrality_residual": integrality_residual(config.eta),
        "dominance_permutation": list(mu.permutation),
        "chart_retries": results["direct"].residuals["chart_retries"] if "direct" in results else None,
    }
    return Report(config.name, results, skipped, disagreements, diagnostics, verdict,
                  config.expected)


def load_fixtures():
    """Built-in reference scenarios, sorted by file name."""
    folder = resources.files("orbitact") / "fixtures"
    entries = sorted((p for p in folder.iterdir() if p.name.endswith(".json")),
                     key=lambda p: p.name)
    return [parse_config(json.loads(p.read_text(encoding="utf-8"))) for p in entries]


@dataclass
class VerifyRow:
    name: str
    expected: complex
    values: dict
    max_deviation: float
    passed: bool
    report: Report = field(repr=False)


def _verify_one(config):
    report = run_scenario(config)
    deviations = {r: abs(res.value - config.expected) for r, res in report.results.items()}
    passed = (report.verdict == "AGREE" and set(report.results) == set(config.routes)
              and all(d <= VERIFY_TOLERANCE[r] for r, d in deviations.items()))
    return VerifyRow(config.name, config.expected,
                     {r: res.value for r, res in report.results.items()},
                     max(deviations.values(), default=math.inf), passed, report)


def verify_paper(configs=None, steps=None, samples=None, routes=None, workers=1):
    """Run the built-in scenario suite; rows come back in input order."""
    configs = load_fixtures() if configs is None else configs
    if steps is not None or samples is not None or routes is not None:
        configs = [c.with_options(steps, samples, routes) for c in configs]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(_verify_one, configs))
    return [_verify_one(c) for c in configs]


def format_verify_table(rows):
    header = f"{'scenario':<24} {'expected':>10} " + " ".join(f"{r:>16}" for r in ROUTES) \
        + f" {'max dev':>10}  ok"
    lines = [header, "-" * len(header)]
    for row in rows:
        cells = []
        for r in ROUTES:
            z = row.values.get(r)
            cells.append(f"{'-':>16}" if z is None else f"{z.real:>+16.10f}")
        lines.append(f"{row.name:<24} {row.expected.real:>+10.4f} " + " ".join(cells)
                     + f" {row.max_deviation:>10.2e}  {'PASS' if row.passed else 'FAIL'}")
    return "\n".join(lines)


def character_eval(mu, phases, tol=1e-9):
    """Schur character and Weyl dimension of ``mu`` at the torus element with ``phases``.

    Raises:
        OrbitactError: non-dominant or mismatched weight, or phases not
            summing to a multiple of ``2 pi``.
    """
    mu = weylrep.HighestWeight(tuple(mu))
    phases = [float(p) for p in phases]
    if len(phases) != len(mu.mu):
        raise OrbitactError(f"{len(phases)} phases given for a weight of length {len(mu.mu)}")
    total = math.fsum(phases) / (2 * math.pi)
    if abs(total - round(total)) > tol:
        raise OrbitactError("phases must sum to a multiple of 2 pi")
    value = weylrep.schur_character(mu, phases)
    return value, weylrep.weyl_dimension(mu)

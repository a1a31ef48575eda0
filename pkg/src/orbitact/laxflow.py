"""Time-dependent curves in su(n) and the Lax equation ``h' h^{-1} = A(t)``, ``h(0) = I``.

The default integrator is the fourth-order commutator-free scheme with two
exponentials per step, sampled at the Gauss-Legendre nodes; a fourth-order
Magnus step (one exponential plus one commutator) is available as
``method="magnus4"``.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import matkit
from .errors import DimensionMismatch, OrbitactError
from .orbit import DualFunctional

__all__ = [
    "Sinusoid",
    "ScalarTimeFunction",
    "CurveSpec",
    "PathSolution",
    "ClosureDiagnostics",
    "sample",
    "solve_lax",
    "transport_point",
    "closure_check",
]

DEFAULT_STEPS = 1024
DRIFT_TOL = 1e-12
CLOSURE_TOL = 1e-8

_SQRT3 = math.sqrt(3.0)
GAUSS_NODES = (0.5 - _SQRT3 / 6, 0.5 + _SQRT3 / 6)
# weights of (A(c1), A(c2)) in the earlier and later exponential
CF4_FIRST = ((3 + 2 * _SQRT3) / 12, (3 - 2 * _SQRT3) / 12)
CF4_SECOND = ((3 - 2 * _SQRT3) / 12, (3 + 2 * _SQRT3) / 12)

_TIME_SLACK = 1e-12


@dataclass(frozen=True)
class Sinusoid:
    """``amp * cos(omega * t + phase)``."""

    amp: float
    omega: float
    phase: float = 0.0


@dataclass(frozen=True)
class ScalarTimeFunction:
    """Polynomial ``sum c_k t^k`` plus a sum of sinusoids."""

    poly: tuple = ()
    fourier: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "poly", tuple(float(c) for c in self.poly))
        object.__setattr__(self, "fourier", tuple(
            s if isinstance(s, Sinusoid) else Sinusoid(*s) for s in self.fourier))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for c in reversed(self.poly):
            out = out * t + c
        for s in self.fourier:
            out = out + s.amp * np.cos(s.omega * t + s.phase)
        return out

    def reparametrized(self, t0, length):
        """``length * f(t0 + length * s)`` as a function of ``s``."""
        poly = np.polynomial.Polynomial(self.poly or (0.0,))
        shifted = poly(np.polynomial.Polynomial([t0, length])) * length
        fourier = tuple(Sinusoid(s.amp * length, s.omega * length, s.omega * t0 + s.phase)
                        for s in self.fourier)
        return ScalarTimeFunction(tuple(shifted.coef), fourier)


@dataclass(frozen=True)
class CurveSpec:
    """``A(t) = sum_i f_i(t) D_i`` on ``[0, 1]`` with fixed directions ``D_i`` in su(n)."""

    n: int
    terms: tuple = ()

    def __post_init__(self):
        terms = []
        for direction, fn in self.terms:
            D = matkit.as_algebra(direction)
            if D.shape[0] != self.n:
                raise DimensionMismatch(f"direction of size {D.shape[0]} in su({self.n}) curve")
            if not isinstance(fn, ScalarTimeFunction):
                fn = ScalarTimeFunction(*fn)
            terms.append((D, fn))
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def constant(cls, A):
        A = np.asarray(A)
        return cls(A.shape[0], ((A, ScalarTimeFunction((1.0,))),))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    def samples(self, ts):
        """Stack of ``A(t)`` for every ``t`` in ``ts``, shape ``(len(ts), n, n)``."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        if not np.all(np.isfinite(ts)):
            raise OrbitactError("non-finite sample time")
        if ts.size and (ts.min() < -_TIME_SLACK or ts.max() > 1 + _TIME_SLACK):
            raise OrbitactError(f"sample time outside [0, 1]: [{ts.min()}, {ts.max()}]")
        out = np.zeros((ts.size, self.n, self.n), dtype=complex)
        with np.errstate(invalid="ignore", over="ignore"):
            for D, fn in self.terms:
                out += fn(ts)[:, None, None] * D
        if not np.all(np.isfinite(out)):
            raise OrbitactError("curve produced non-finite samples")
        return out

    def restricted(self, t0, t1):
        """Curve on ``[0, 1]`` generating the flow of this one over ``[t0, t1]``."""
        length = t1 - t0
        return CurveSpec(self.n, tuple((D, fn.reparametrized(t0, length)) for D, fn in self.terms))

    def reversed(self):
        """Generator of the time-reversed isotopy, ``-A(1 - t)``."""
        return CurveSpec(self.n, tuple((D, fn.reparametrized(1.0, -1.0)) for D, fn in self.terms))

    def conjugated(self, g):
        return CurveSpec(self.n, tuple((matkit.adjoint(g, D), fn) for D, fn in self.terms))


def sample(curve, t):
    """``A(t)`` for a single time ``t`` in ``[0, 1]``."""
    if not -_TIME_SLACK <= t <= 1 + _TIME_SLACK:
        raise OrbitactError(f"sample time {t} outside [0, 1]")
    return curve.samples([t])[0]


def _step_exponents(curve, t, dt, method):
    """Exponent matrices for steps starting at times ``t`` with sizes ``dt`` (arrays)."""
    c1, c2 = GAUSS_NODES
    A1 = curve.samples(t + c1 * dt)
    A2 = curve.samples(t + c2 * dt)
    d = dt[:, None, None]
    if method == "cf4":
        first = d * (CF4_FIRST[0] * A1 + CF4_FIRST[1] * A2)
        second = d * (CF4_SECOND[0] * A1 + CF4_SECOND[1] * A2)
        return first, second
    if method == "magnus4":
        omega = 0.5 * d * (A1 + A2) + (_SQRT3 / 12) * d**2 * (A2 @ A1 - A1 @ A2)
        return omega, None
    raise ValueError(f"unknown integrator {method!r}")


def _propagators(curve, t, dt, method):
    first, second = _step_exponents(curve, t, dt, method)
    P = matkit.expm(first)
    if second is not None:
        P = matkit.expm(second) @ P
    return P


@dataclass
class PathSolution:
    """Group path ``h(t_k)`` on a uniform grid, with the data needed for dense output."""

    times: np.ndarray
    group_points: np.ndarray
    unitarity_drift: float
    curve: CurveSpec = field(repr=False)
    method: str = "cf4"
    projections: int = 0

    @property
    def steps(self):
        return len(self.times) - 1

    @property
    def final(self):
        return self.group_points[-1]

    def at(self, ts):
        """Group elements at arbitrary times, advanced from the preceding grid node."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        dt_grid = 1.0 / self.steps
        k = np.clip(np.floor(ts / dt_grid).astype(int), 0, self.steps)
        base = self.times[k]
        delta = ts - base
        out = self.group_points[k].copy()
        moving = delta > 0
        if np.any(moving):
            P = _propagators(self.curve, base[moving], delta[moving], self.method)
            out[moving] = P @ out[moving]
        return out


def solve_lax(curve, steps=DEFAULT_STEPS, method="cf4", drift_tol=DRIFT_TOL):
    """Integrate ``h' = A(t) h`` from ``h(0) = I`` over ``[0, 1]`` in ``steps`` uniform steps.

    Each step is ``h <- exp(dt B2) exp(dt B1) h`` with ``B1, B2`` fixed
    combinations of ``A`` at the two Gauss nodes. Points are re-projected
    onto SU(n) whenever their unitarity drift exceeds ``drift_tol``.
    """
    steps = int(steps)
    if steps < 4:
        raise ValueError(f"steps must be >= 4, got {steps}")
    dt = 1.0 / steps
    times = np.linspace(0.0, 1.0, steps + 1)
    P = _propagators(curve, times[:-1], np.full(steps, dt), method)
    n = curve.n
    points = np.empty((steps + 1, n, n), dtype=complex)
    h = np.eye(n, dtype=complex)
    points[0] = h
    drift, projections = 0.0, 0
    for k in range(steps):
        h = P[k] @ h
        d = float(matkit.unitarity_drift(h))
        if d > drift_tol:
            h = matkit.project_special_unitary(h)
            projections += 1
            d = float(matkit.unitarity_drift(h))
        drift = max(drift, d)
        points[k + 1] = h
    return PathSolution(times, points, drift, curve, method, projections)


def transport_point(H_q, path):
    """Orbit point carried along the isotopy: ``H(t_k) = h_k H_q h_k^dagger``."""
    H_q = H_q if isinstance(H_q, DualFunctional) else DualFunctional(H_q)
    if H_q.n != path.group_points.shape[-1]:
        raise DimensionMismatch("orbit point and path have different dimensions")
    h = path.group_points
    stack = h @ H_q.H @ np.swapaxes(h.conj(), -1, -2)
    return [DualFunctional(H) for H in stack]


@dataclass(frozen=True)
class ClosureDiagnostics:
    isotropy_residual: float
    centrality_residual: float
    central_root: complex
    sampled_point_residual: float
    status: str

    @property
    def closed(self):
        return self.status == "closed"


def _probe_points(n):
    # deterministic spread of orbit-independent test directions
    probes = []
    for j in range(n):
        for k in range(j + 1, n):
            X = np.zeros((n, n), dtype=complex)
            X[j, k] = X[k, j] = 1.0
            probes.append(X)
            Y = np.zeros((n, n), dtype=complex)
            Y[j, k], Y[k, j] = -1j, 1j
            probes.append(Y)
    return probes


def closure_check(path, eta, tol=CLOSURE_TOL):
    """Classify the endpoint ``h_1`` of a Lax path.

    ``closed`` when ``h_1`` is within ``tol`` of a central element
    (``zeta I`` with ``zeta^n = 1``); ``eta-stabilizing only`` when it
    merely commutes with ``H``; ``open`` otherwise. The sampled-point
    residual moves a fixed set of Hermitian probes by ``h_1`` and reports
    the largest displacement.
    """
    h1 = path.final
    n = h1.shape[0]
    if eta.n != n:
        raise DimensionMismatch("eta and path have different dimensions")
    isotropy = float(np.linalg.norm(h1 @ eta.H - eta.H @ h1))
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    dists = [np.linalg.norm(h1 - z * np.eye(n)) for z in roots]
    j = int(np.argmin(dists))
    centrality = float(dists[j])
    sampled = max(float(np.linalg.norm(h1 @ X @ h1.conj().T - X)) for X in _probe_points(n))
    if centrality <= tol:
        status = "closed"
    elif isotropy <= tol:
        status = "eta-stabilizing only"
    else:
        status = "open"
    return ClosureDiagnostics(isotropy, centrality, complex(roots[j]), sampled, status)

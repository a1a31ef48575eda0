"""Direct evaluation of the action integral on SU(2) orbits (the sphere CP^1).

An orbit point ``H`` is charted by its top eigenvector ``(z0, z1)`` as
``x + iy = z1 / z0``. On an orbit with eigenvalue gap ``N`` the KKS form is
``N`` times the Fubini-Study form of total area one, which has the real
primitive ``beta = (1/2pi) (x dy - y dx) / (1 + x^2 + y^2)``. The surface
term of the action is therefore a loop integral of ``N beta`` taken modulo
one, and the Hamiltonian term integrates ``f_t = -h_{A_t}`` along the
trajectory.
"""
from typing import NamedTuple

import numpy as np

from . import laxflow
from .errors import ChartError, ClosureError, DimensionMismatch, OrbitactError
from .orbit import DualFunctional, coadjoint_apply, weight_of
from .tolerances import DEFAULT
from .weylrep import KappaResult

__all__ = [
    "ChartPoint",
    "CHART_ROTATION",
    "point_to_chart",
    "primitive_loop_integral",
    "hamiltonian_loop_integral",
    "kappa_direct",
    "simpson",
]

DEFAULT_SAMPLES = 8192
CHART_RADIUS = 1e3
ORBIT_TOL = 1e-9

# Fixed retry rotation: quarter turn about (1, -1, 0) on the Bloch sphere,
# sending (1, 1, 0)/sqrt(2) to the pole.
CHART_ROTATION = np.array([[1.0, (1 - 1j) / np.sqrt(2)],
                           [(-1 - 1j) / np.sqrt(2), 1.0]]) / np.sqrt(2)
CHART_ROTATION.setflags(write=False)


class ChartPoint(NamedTuple):
    x: float
    y: float


def simpson(values, h):
    """Composite Simpson rule on an odd number of equally spaced samples."""
    values = np.asarray(values)
    if values.shape[0] % 2 != 1 or values.shape[0] < 3:
        raise ValueError("Simpson's rule needs an even number of intervals")
    return h / 3.0 * (values[0] + values[-1] + 4.0 * values[1:-1:2].sum(axis=0)
                      + 2.0 * values[2:-1:2].sum(axis=0))


def _same_spectrum(H_p, eta, tol):
    if H_p.n != eta.n:
        raise DimensionMismatch("orbit point and eta have different dimensions")
    if np.max(np.abs(H_p.spectrum - eta.spectrum)) > tol:
        raise OrbitactError(
            f"point is not on the orbit of eta (spectrum {H_p.spectrum.tolist()} "
            f"vs {eta.spectrum.tolist()})")


def _top_vector(H_p):
    return H_p.eig()[1][:, 0]


def point_to_chart(H_p, eta, radius=CHART_RADIUS, tol=ORBIT_TOL):
    """Stereographic coordinates ``(x, y)`` of an orbit point.

    Raises:
        ChartError: the point is within the excluded neighbourhood of the
            antipode ``z0 = 0``.
    """
    if eta.n != 2:
        raise DimensionMismatch("the chart is only defined for SU(2) orbits")
    _same_spectrum(H_p, eta, tol)
    z0, z1 = _top_vector(H_p)
    if abs(z0) < 1.0 / np.sqrt(1.0 + radius**2):
        raise ChartError("point lies at the antipode of the chart")
    z = z1 / z0
    return ChartPoint(float(z.real), float(z.imag))


def _fd_derivative(values, h):
    """Fourth-order finite differences on a uniform grid (one-sided at the ends)."""
    v = np.asarray(values, dtype=float)
    d = np.empty_like(v)
    d[2:-2] = (v[:-4] - 8 * v[1:-3] + 8 * v[3:-1] - v[4:]) / (12 * h)
    for i in (0, 1):
        s = v[i:i + 5]
        d[i] = (-25 * s[0] + 48 * s[1] - 36 * s[2] + 16 * s[3] - 3 * s[4]) / (12 * h)
    for i in (-1, -2):
        s = v[len(v) + i - 4:len(v) + i + 1]
        d[i] = (25 * s[4] - 48 * s[3] + 36 * s[2] - 16 * s[1] + 3 * s[0]) / (12 * h)
    return d


def _beta_integral(x, y, dx, dy, N, h):
    integrand = (x * dy - y * dx) / (1.0 + x * x + y * y)
    return N * simpson(integrand, h) / (2.0 * np.pi)


def primitive_loop_integral(loop, N, velocities=None, radius=CHART_RADIUS):
    """Loop integral of ``N beta`` over a closed, uniformly parametrised loop.

    Args:
        loop: ``ChartPoint`` sequence sampled at equal parameter steps on
            ``[0, 1]``; first and last point coincide.
        N: eigenvalue gap of the orbit, so that the total area is ``N``.
        velocities: optional exact parameter derivatives ``(dx, dy)``; if
            omitted they are taken by fourth-order finite differences.

    Returns:
        The surface term of the action (meaningful modulo one).
    """
    pts = np.asarray(loop, dtype=float).reshape(-1, 2)
    if len(pts) < 5:
        raise ValueError("loop needs at least five samples")
    if np.linalg.norm(pts[0] - pts[-1]) > 1e-9:
        raise OrbitactError("loop is not closed")
    if np.max(np.abs(pts)) > radius:
        raise ChartError("loop leaves the chart bound")
    x, y = pts[:, 0], pts[:, 1]
    h = 1.0 / (len(pts) - 1)
    if velocities is None:
        dx, dy = _fd_derivative(x, h), _fd_derivative(y, h)
    else:
        dx, dy = (np.asarray(v, dtype=float) for v in velocities)
    return float(_beta_integral(x, y, dx, dy, N, h))


def hamiltonian_loop_integral(times, points, curve):
    """``int_0^1 f_t(psi_t(q)) dt`` with ``f_t = -h_{A_t}``, by Simpson's rule.

    ``points`` are the orbit points ``H(t)`` at the uniformly spaced
    ``times`` (``DualFunctional`` objects or a stack of matrices).
    """
    times = np.asarray(times, dtype=float)
    H = np.stack([getattr(p, "H", p) for p in points])
    if len(H) != len(times):
        raise ValueError("grid mismatch between loop points and sample times")
    h = np.diff(times)
    if len(h) == 0 or not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
        raise ValueError("sample times must be uniformly spaced")
    A = curve.samples(times)
    if A.shape[-2:] != H.shape[-2:]:
        raise DimensionMismatch("orbit points and curve have different dimensions")
    moment = (1j / (2 * np.pi) * np.einsum("kij,kji->k", H, A)).real
    return float(simpson(-moment, h[0]))


def _conjugated(g, curve, eta, q):
    return curve.conjugated(g), coadjoint_apply(g, eta), coadjoint_apply(g, q)


def _action(curve, eta, q, path, samples, radius):
    """Surface and Hamiltonian terms for one chart choice; raises ChartError on exit."""
    N = eta.spectrum[0] - eta.spectrum[1]
    times = np.linspace(0.0, 1.0, samples + 1)
    h = path.at(times)
    v = h @ _top_vector(q)
    w = curve.samples(times) @ v[:, :, None]
    v0, v1 = v[:, 0], v[:, 1]
    dv0, dv1 = w[:, 0, 0], w[:, 1, 0]
    if np.min(np.abs(v0)) < 1.0 / np.sqrt(1.0 + radius**2):
        raise ChartError("trajectory passes the antipode of the chart")
    z = v1 / v0
    if np.max(np.abs(np.concatenate([z.real, z.imag]))) > radius:
        raise ChartError("trajectory leaves the chart bound")
    dz = (dv1 * v0 - v1 * dv0) / v0**2
    step = times[1] - times[0]
    surface = _beta_integral(z.real, z.imag, dz.real, dz.imag, round(N), step)
    H = h @ q.H @ np.swapaxes(h.conj(), -1, -2)
    hamiltonian = hamiltonian_loop_integral(times, H, curve)
    return float(surface), hamiltonian, float(np.max(np.abs(z)))


def kappa_direct(curve, eta, q=None, steps=laxflow.DEFAULT_STEPS, samples=DEFAULT_SAMPLES,
                 path=None, tolerances=DEFAULT):
    """kappa from the action integral along the trajectory of ``q``.

    If the trajectory leaves the chart, the whole scenario (curve, eta, q)
    is conjugated once by ``CHART_ROTATION``; kappa is invariant under this.

    Raises:
        ClosureError: the isotopy is not closed.
        ChartError: the trajectory leaves the chart even after the retry.
    """
    if eta.n != 2 or curve.n != 2:
        raise DimensionMismatch("the direct route is implemented for SU(2) only")
    if samples % 2:
        raise ValueError("samples must be even")
    weight_of(eta, tolerances.integrality, tolerances.regularity_gap)
    q = eta if q is None else q
    _same_spectrum(q, eta, tolerances.orbit_spectrum)
    if path is None:
        path = laxflow.solve_lax(curve, steps, drift_tol=tolerances.drift)
    closure = laxflow.closure_check(path, eta, tolerances.closure)
    if not closure.closed:
        raise ClosureError(f"isotopy is not closed ({closure.status})")

    retries = 0
    try:
        surface, hamiltonian, zmax = _action(curve, eta, q, path, samples,
                                             tolerances.chart_radius)
    except ChartError:
        retries = 1
        g = CHART_ROTATION
        curve_g, eta_g, q_g = _conjugated(g, curve, eta, q)
        path_g = laxflow.PathSolution(
            path.times, g @ path.group_points @ g.conj().T, path.unitarity_drift,
            curve_g, path.method, path.projections)
        surface, hamiltonian, zmax = _action(curve_g, eta_g, q_g, path_g, samples,
                                             tolerances.chart_radius)

    action = (surface - hamiltonian) % 1.0
    value = complex(np.exp(2j * np.pi * action))
    residuals = {
        "unitarity_drift": path.unitarity_drift,
        "centrality_residual": closure.centrality_residual,
        "chart_retries": retries,
        "chart_max_radius": zmax,
        "surface_term": surface,
        "hamiltonian_term": hamiltonian,
    }
    return KappaResult(value, "direct", action_mod_one=float(action), residuals=residuals)

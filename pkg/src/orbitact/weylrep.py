"""Type-A characters and the two representation-theoretic routes to kappa.

``kappa_character`` evaluates the isotropy character Lambda at the endpoint
of the Lax path. ``kappa_weyl`` instead divides the (dual) character of the
irreducible representation with highest weight ``-2 pi i eta`` by its
dimension. Both need the endpoint written as a torus element in the
eigenbasis of ``H``, which is what ``torus_decompose`` provides.
"""
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import laxflow
from .errors import (ClosureError, DimensionMismatch, NumericalFault, OrbitactError,
                     RegularityError)
from .orbit import is_regular, weight_of
from .tolerances import DEFAULT

__all__ = [
    "TorusElement",
    "HighestWeight",
    "KappaResult",
    "torus_decompose",
    "character_lambda",
    "dominant_highest_weight",
    "weyl_dimension",
    "schur_character",
    "schur_jacobi_trudi",
    "schur_bialternant",
    "kappa_character",
    "kappa_weyl",
    "su2_sym_power",
    "su2_sym_power_algebra",
    "corollary_check",
]

COMMUTE_TOL = 1e-8
BIALTERNANT_SEPARATION = 1e-3
MAX_DIMENSION = 2**62
MAX_SYM_POWER = 60


@dataclass(frozen=True)
class TorusElement:
    """Diagonal element ``V diag(exp(i theta)) V^dagger`` with ``sum(theta)`` in ``2 pi Z``."""

    phases: tuple
    basis: np.ndarray = field(repr=False)

    @property
    def eigenvalues(self):
        return np.exp(1j * np.asarray(self.phases))

    def matrix(self):
        V = self.basis
        return (V * self.eigenvalues) @ V.conj().T


@dataclass(frozen=True)
class HighestWeight:
    """Dominant integer weight, ``mu[0] >= ... >= mu[-1] == 0``."""

    mu: tuple
    permutation: tuple = ()

    def __post_init__(self):
        mu = tuple(int(v) for v in self.mu)
        if any(a < b for a, b in zip(mu, mu[1:])):
            raise OrbitactError(f"weight {mu} is not dominant (must be non-increasing)")
        object.__setattr__(self, "mu", tuple(v - mu[-1] for v in mu))

    @property
    def size(self):
        return sum(self.mu)


@dataclass
class KappaResult:
    value: complex
    method: str
    action_mod_one: float = None
    residuals: dict = field(default_factory=dict)


def torus_decompose(g, eta, commute_tol=COMMUTE_TOL):
    """Eigenphases of ``g`` in the (descending) eigenbasis of a regular ``H``.

    Phases lie in ``(-pi, pi]``; the residual of their sum against the
    nearest multiple of ``2 pi`` is spread evenly over all entries.
    """
    g = np.asarray(g)
    if g.shape != (eta.n, eta.n):
        raise DimensionMismatch(f"group element of shape {g.shape} for su({eta.n}) functional")
    if not is_regular(eta):
        raise RegularityError("torus decomposition needs a regular eta")
    if np.linalg.norm(g @ eta.H - eta.H @ g) > commute_tol:
        raise OrbitactError("group element does not commute with H")
    _, V = eta.eig()
    d = np.diag(V.conj().T @ g @ V)
    theta = np.angle(d)
    theta = np.where(theta <= -np.pi + 1e-12, theta + 2 * np.pi, theta)
    total = theta.sum()
    theta = theta - (total - 2 * np.pi * round(total / (2 * np.pi))) / len(theta)
    return TorusElement(tuple(float(t) for t in theta), V)


def character_lambda(m, t):
    """Torus character ``exp(i sum m_j theta_j)``."""
    m = getattr(m, "m", m)
    if len(m) != len(t.phases):
        raise DimensionMismatch("weight and torus element have different rank")
    angle = math.fsum(mj * th for mj, th in zip(m, t.phases))
    return complex(math.cos(angle), math.sin(angle))


def dominant_highest_weight(eta):
    """Highest weight of the representation attached to ``eta``.

    Sorting the eigenvalues of ``H`` in descending order fixes the positive
    system; the result is ``mu_j = h_j - h_n``. ``permutation[j]`` is the
    standard-basis index carrying most of the ``j``-th sorted eigenvector.
    """
    m = weight_of(eta)
    _, V = eta.eig()
    perm = tuple(int(np.argmax(np.abs(V[:, j]))) for j in range(eta.n))
    return HighestWeight(tuple(-v for v in m.m), perm)


def weyl_dimension(mu):
    """``prod_{i<j} (mu_i - mu_j + j - i) / (j - i)`` in exact integer arithmetic."""
    mu = getattr(mu, "mu", mu)
    num = den = 1
    for i, j in combinations(range(len(mu)), 2):
        num *= mu[i] - mu[j] + j - i
        den *= j - i
    dim = num // den
    if dim > MAX_DIMENSION:
        raise OverflowError(f"dimension {dim} exceeds 2**62")
    return dim


def _complete_homogeneous(z, kmax):
    """``h_0 .. h_kmax`` of the variables ``z`` via Newton's identities."""
    p = [np.sum(z**k) for k in range(kmax + 1)]
    h = [1.0 + 0j]
    for k in range(1, kmax + 1):
        h.append(sum(p[i] * h[k - i] for i in range(1, k + 1)) / k)
    return h


def schur_jacobi_trudi(mu, z):
    """``s_mu(z) = det[h_{mu_i - i + j}]``, valid for coincident ``z``."""
    mu = getattr(mu, "mu", mu)
    parts = [m for m in mu if m > 0]
    if not parts:
        return 1.0 + 0j
    ell = len(parts)
    h = _complete_homogeneous(np.asarray(z, dtype=complex), parts[0] + ell)
    M = np.zeros((ell, ell), dtype=complex)
    for i in range(ell):
        for j in range(ell):
            k = parts[i] - i + j
            M[i, j] = h[k] if k >= 0 else 0.0
    return complex(np.linalg.det(M))


def schur_bialternant(mu, z):
    """Weyl's ratio ``det(z_i^{mu_j + n - j}) / det(z_i^{n - j})``; needs distinct ``z``."""
    mu = getattr(mu, "mu", mu)
    z = np.asarray(z, dtype=complex)
    n = len(z)
    if len(mu) != n:
        raise DimensionMismatch("weight and variables have different length")
    exps = [mu[j] + n - 1 - j for j in range(n)]
    num = np.linalg.det(z[:, None] ** np.array(exps)[None, :])
    den = np.linalg.det(z[:, None] ** np.arange(n - 1, -1, -1)[None, :])
    return complex(num / den)


def _min_separation(z):
    return min((abs(a - b) for a, b in combinations(z, 2)), default=math.inf)


def schur_character(mu, t, tol=DEFAULT.schur_agreement):
    """Character ``s_mu`` of the irreducible SU(n) representation at a torus element.

    Jacobi-Trudi is the value returned; when the eigenvalues are separated
    by more than 1e-3 the bialternant is evaluated too, and a mismatch
    beyond ``tol`` raises ``NumericalFault``.
    """
    mu = getattr(mu, "mu", mu)
    z = np.exp(1j * np.asarray(getattr(t, "phases", t), dtype=float))
    if len(mu) != len(z):
        raise DimensionMismatch("weight and torus element have different rank")
    value = schur_jacobi_trudi(mu, z)
    if _min_separation(z) > BIALTERNANT_SEPARATION:
        other = schur_bialternant(mu, z)
        if abs(other - value) > tol * max(1.0, abs(value)):
            raise NumericalFault(
                f"Schur character methods disagree: {value} vs {other} for mu={mu}")
    return value


def _closed_path(curve, eta, steps, path, tolerances):
    if curve.n != eta.n:
        raise DimensionMismatch("curve and eta live in different su(n)")
    if path is None:
        path = laxflow.solve_lax(curve, steps, drift_tol=tolerances.drift)
    closure = laxflow.closure_check(path, eta, tolerances.closure)
    if not closure.closed:
        raise ClosureError(
            f"isotopy is not closed ({closure.status}; centrality residual "
            f"{closure.centrality_residual:.3e})")
    return path, closure


def _residuals(path, closure):
    return {
        "unitarity_drift": path.unitarity_drift,
        "isotropy_residual": closure.isotropy_residual,
        "centrality_residual": closure.centrality_residual,
        "sampled_point_residual": closure.sampled_point_residual,
    }


def kappa_character(curve, eta, steps=laxflow.DEFAULT_STEPS, path=None, tolerances=DEFAULT):
    """kappa as the isotropy character evaluated at the endpoint of the Lax path."""
    m = weight_of(eta, tolerances.integrality, tolerances.regularity_gap)
    path, closure = _closed_path(curve, eta, steps, path, tolerances)
    torus = torus_decompose(path.final, eta, tolerances.closure)
    value = character_lambda(m, torus)
    res = _residuals(path, closure)
    res["weight"] = list(m.m)
    return KappaResult(value, "lax-character", residuals=res)


def kappa_weyl(curve, eta, steps=laxflow.DEFAULT_STEPS, path=None, tolerances=DEFAULT):
    """kappa as ``conj(chi_pi(h_1)) / dim(pi)`` for the highest weight of ``eta``."""
    mu = dominant_highest_weight(eta)
    path, closure = _closed_path(curve, eta, steps, path, tolerances)
    torus = torus_decompose(path.final, eta, tolerances.closure)
    chi = schur_character(mu, torus, tolerances.schur_agreement)
    dim = weyl_dimension(mu)
    value = chi.conjugate() / dim
    if abs(abs(value) - 1) > tolerances.unit_modulus:
        raise NumericalFault(
            f"|chi/dim| = {abs(value):.12g} is not 1; the isotopy is not closed for this eta")
    res = _residuals(path, closure)
    res.update({"highest_weight": list(mu.mu), "dimension": dim,
                "permutation": list(mu.permutation)})
    return KappaResult(complex(value), "weyl", residuals=res)


def _poly_pow(p, k):
    out = np.array([1.0 + 0j])
    for _ in range(k):
        out = np.convolve(out, p)
    return out


def su2_sym_power(g, N):
    """Matrix of ``p(z) -> p(g^{-1} z)`` on degree-``N`` binary forms.

    Basis ``z0^{N-k} z1^k`` for ``k = 0..N``; column ``k`` holds the
    image of the ``k``-th monomial. The map is a homomorphism of SU(2).
    """
    g = np.asarray(g, dtype=complex)
    if g.shape != (2, 2):
        raise DimensionMismatch("su2_sym_power needs a 2x2 group element")
    if not 0 <= N <= MAX_SYM_POWER:
        raise ValueError(f"N must lie in [0, {MAX_SYM_POWER}]")
    ginv = g.conj().T
    # substituted coordinates as polynomials in x = z1 / z0
    u0 = np.array([ginv[0, 0], ginv[0, 1]])
    u1 = np.array([ginv[1, 0], ginv[1, 1]])
    R = np.zeros((N + 1, N + 1), dtype=complex)
    for k in range(N + 1):
        R[:, k] = np.convolve(_poly_pow(u0, N - k), _poly_pow(u1, k))
    return R


def su2_sym_power_algebra(A, N):
    """Derivative of ``su2_sym_power`` along ``expm(tA)`` at ``t = 0``.

    Differentiating ``p(exp(-tA) z)`` gives ``-(grad p) . (A z)``, which is
    tridiagonal on the monomial basis.
    """
    A = np.asarray(A, dtype=complex)
    if A.shape != (2, 2):
        raise DimensionMismatch("su2_sym_power_algebra needs a 2x2 algebra element")
    if not 0 <= N <= MAX_SYM_POWER:
        raise ValueError(f"N must lie in [0, {MAX_SYM_POWER}]")
    R = np.zeros((N + 1, N + 1), dtype=complex)
    for k in range(N + 1):
        R[k, k] = -((N - k) * A[0, 0] + k * A[1, 1])
        if k < N:
            R[k + 1, k] = -(N - k) * A[0, 1]
        if k > 0:
            R[k - 1, k] = -k * A[1, 0]
    return R


def corollary_check(curve, eta, steps=laxflow.DEFAULT_STEPS, path=None, tolerances=DEFAULT,
                    tol=1e-9):
    """Check that ``h_1`` acts on the symmetric-power model of ``eta`` as ``kappa * I``.

    The model has degree ``N = h_1 - h_2`` (the eigenvalue gap), i.e. the
    dimension of the representation with the highest weight of ``eta``.
    """
    if eta.n != 2:
        raise DimensionMismatch("the symmetric-power model is only built for SU(2)")
    mu = dominant_highest_weight(eta)
    N = mu.mu[0]
    if path is None:
        path = laxflow.solve_lax(curve, steps, drift_tol=tolerances.drift)
    kappa = kappa_character(curve, eta, steps, path, tolerances).value
    rho = su2_sym_power(path.final, N)
    op_residual = float(np.linalg.norm(rho - kappa * np.eye(N + 1), 2))
    trace_residual = float(abs(np.trace(rho) - kappa * (N + 1)))
    return {
        "N": N,
        "kappa": kappa,
        "trace": complex(np.trace(rho)),
        "operator_residual": op_residual,
        "trace_residual": trace_residual,
        "passed": op_residual <= tol and trace_residual <= tol,
    }

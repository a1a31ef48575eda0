"""Coadjoint orbits of SU(n).

A dual functional is stored as a traceless Hermitian matrix ``H`` acting by
``eta(A) = (i / 2 pi) tr(H A)``. With this encoding the coadjoint action is
conjugation ``H -> g H g^dagger`` and an orbit is the set of Hermitian
matrices sharing the spectrum of ``H``.
"""
from dataclasses import dataclass

import numpy as np

from . import matkit
from .errors import DimensionMismatch, IntegralityError, RegularityError

__all__ = [
    "DualFunctional",
    "WeightVector",
    "eval_functional",
    "coadjoint_apply",
    "kks_form",
    "moment_hamiltonian",
    "isotropy_algebra_basis",
    "is_regular",
    "weight_of",
    "integrality_residual",
]

REGULARITY_GAP = 1e-9
INTEGRALITY_TOL = 1e-9


class DualFunctional:
    """A point of su(n)^*, represented by its traceless Hermitian matrix."""

    __slots__ = ("_H", "_eig")

    def __init__(self, H):
        H = np.array(matkit.as_hermitian(H))
        n = H.shape[0]
        H = 0.5 * (H + H.conj().T)
        H -= np.trace(H).real / n * np.eye(n)
        H.setflags(write=False)
        self._H = H
        self._eig = None

    @classmethod
    def from_diag(cls, values):
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def H(self):
        return self._H

    @property
    def n(self):
        return self._H.shape[0]

    def eig(self):
        """Cached ``hermitian_eig`` of ``H`` (descending eigenvalues)."""
        if self._eig is None:
            self._eig = matkit.hermitian_eig(self._H)
        return self._eig

    @property
    def spectrum(self):
        return self.eig()[0]

    def __call__(self, A):
        return eval_functional(self, A)

    def __repr__(self):
        return f"DualFunctional(spectrum={np.round(self.spectrum, 12).tolist()})"


@dataclass(frozen=True)
class WeightVector:
    """Integer exponent vector modulo the all-ones shift; canonical form has ``m[-1] == 0``."""

    m: tuple

    def __post_init__(self):
        m = tuple(int(v) for v in self.m)
        object.__setattr__(self, "m", tuple(v - m[-1] for v in m))

    def __len__(self):
        return len(self.m)


def _check_dims(eta, A):
    if np.shape(A)[-2:] != (eta.n, eta.n):
        raise DimensionMismatch(f"functional on su({eta.n}) applied to shape {np.shape(A)}")


def eval_functional(eta, A):
    """``eta(A) = (i / 2 pi) tr(H A)``; real for anti-Hermitian ``A``."""
    _check_dims(eta, A)
    return float((1j / (2 * np.pi) * np.trace(eta.H @ A)).real)


def coadjoint_apply(g, eta):
    """``(g . eta)(A) = eta(g^{-1} A g)``, i.e. ``H -> g H g^dagger``."""
    _check_dims(eta, g)
    return DualFunctional(matkit.adjoint(g, eta.H))


def kks_form(nu, A, B):
    """Kirillov-Kostant-Souriau form ``omega_nu(X_A, X_B) = nu([A, B])``."""
    return eval_functional(nu, matkit.bracket(A, B))


def moment_hamiltonian(A, nu):
    """Moment-map Hamiltonian ``h_A(nu) = nu(A)``."""
    return eval_functional(nu, A)


def _eigen_blocks(values, gap):
    blocks, start = [], 0
    for j in range(1, len(values) + 1):
        if j == len(values) or values[j - 1] - values[j] > gap:
            blocks.append(range(start, j))
            start = j
    return blocks


def isotropy_algebra_basis(eta, gap=REGULARITY_GAP):
    """Real basis of the stabiliser algebra ``{A in su(n) : [A, H] = 0}``.

    In the eigenbasis of ``H`` the commutant consists of block-diagonal
    anti-Hermitian matrices over clusters of equal eigenvalues; the result
    is rotated back to the standard basis.
    """
    values, V = eta.eig()
    n = eta.n
    local = []
    for block in _eigen_blocks(values, gap):
        idx = list(block)
        for a, j in enumerate(idx):
            for k in idx[a + 1:]:
                R = np.zeros((n, n), dtype=complex)
                R[j, k], R[k, j] = 1.0, -1.0
                S = np.zeros((n, n), dtype=complex)
                S[j, k] = S[k, j] = 1j
                local += [R, S]
    # The diagonal (Cartan) part is shared by every block decomposition.
    for j in range(n - 1):
        D = np.zeros((n, n), dtype=complex)
        D[j, j], D[j + 1, j + 1] = 1j, -1j
        local.append(D)
    return [V @ X @ V.conj().T for X in local]


def is_regular(eta, gap=REGULARITY_GAP):
    values = eta.spectrum
    return bool(np.all(values[:-1] - values[1:] > gap))


def integrality_residual(eta):
    """Worst distance of the eigenvalue differences ``h_j - h_n`` to an integer."""
    values = eta.spectrum
    diffs = values - values[-1]
    return float(np.max(np.abs(diffs - np.round(diffs))))


def weight_of(eta, tol=INTEGRALITY_TOL, gap=REGULARITY_GAP):
    """Exponents of the character Lambda of the isotropy torus of ``eta``.

    With eigenvalues ``h_1 >= ... >= h_n`` of ``H``, Lambda sends the torus
    element with eigenphases ``theta_j`` (in that eigenbasis) to
    ``exp(i sum m_j theta_j)`` where ``m = -(h_1, ..., h_n)`` shifted to
    ``m_n = 0``.

    Raises:
        RegularityError: repeated eigenvalues.
        IntegralityError: eigenvalue gaps are not integers.
    """
    if not is_regular(eta, gap):
        raise RegularityError(f"eta is not regular (spectrum {eta.spectrum.tolist()})")
    residual = integrality_residual(eta)
    if residual > tol:
        raise IntegralityError(
            f"eta is not integral: eigenvalue gaps miss integers by {residual:.3g}", residual)
    values = eta.spectrum
    return WeightVector(tuple(int(round(v)) for v in -(values - values[-1])))

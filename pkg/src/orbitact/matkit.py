"""Small dense complex-matrix kernel for su(n) / SU(n), 2 <= n <= 8.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The ``as_*``
helpers validate the role a matrix is supposed to play and return a
read-only copy; the arithmetic functions only check shapes.
"""
import math

import numpy as np

from .errors import DimensionMismatch, NumericalFault, RoleError

__all__ = [
    "as_algebra",
    "as_group",
    "as_hermitian",
    "bracket",
    "adjoint",
    "hermitian_eig",
    "expm",
    "su2_exp_closed",
    "project_special_unitary",
    "unitarity_drift",
    "su_basis",
    "SU2_A",
    "SU2_B",
]

MIN_DIM, MAX_DIM = 2, 8

ALGEBRA_TOL = 1e-12
GROUP_TOL = 1e-10
HERMITIAN_TOL = 1e-12

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 50

TAYLOR_DEGREE = 13
SCALING_NORM = 0.5

PROJECTION_MAX_COND = 1e6

# The two su(2) generators used in the worked examples.
SU2_A = np.array([[0, 1j], [1j, 0]])
SU2_B = np.array([[0, 1], [-1, 0]], dtype=complex)
SU2_A.setflags(write=False)
SU2_B.setflags(write=False)


def _square(M):
    M = np.array(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    if not MIN_DIM <= M.shape[0] <= MAX_DIM:
        raise DimensionMismatch(f"dimension {M.shape[0]} outside [{MIN_DIM}, {MAX_DIM}]")
    if not np.all(np.isfinite(M)):
        raise RoleError("matrix has non-finite entries")
    return M


def _frozen(M):
    M.setflags(write=False)
    return M


def _same_dim(*mats):
    shapes = {m.shape[-2:] for m in mats}
    if len(shapes) != 1:
        raise DimensionMismatch(f"incompatible shapes {sorted(shapes)}")


def as_algebra(M, tol=ALGEBRA_TOL):
    """Validate ``M`` as an element of su(n) (traceless anti-Hermitian)."""
    M = _square(M)
    scale = np.linalg.norm(M)
    if np.linalg.norm(M + M.conj().T) > tol * scale:
        raise RoleError("matrix is not anti-Hermitian")
    if abs(np.trace(M)) > tol * scale:
        raise RoleError("matrix is not traceless")
    return _frozen(M)


def as_group(M, tol=GROUP_TOL):
    """Validate ``M`` as an element of SU(n)."""
    M = _square(M)
    n = M.shape[0]
    if np.linalg.norm(M.conj().T @ M - np.eye(n)) > tol:
        raise RoleError("matrix is not unitary")
    if abs(np.linalg.det(M) - 1) > tol:
        raise RoleError("matrix does not have determinant one")
    return _frozen(M)


def as_hermitian(M, tol=HERMITIAN_TOL):
    M = _square(M)
    if np.linalg.norm(M - M.conj().T) > tol * np.linalg.norm(M):
        raise RoleError("matrix is not Hermitian")
    return _frozen(M)


def bracket(A, B):
    """Commutator ``AB - BA``."""
    A, B = np.asarray(A), np.asarray(B)
    _same_dim(A, B)
    return A @ B - B @ A


def adjoint(g, A):
    """Adjoint action ``g A g^dagger``."""
    g, A = np.asarray(g), np.asarray(A)
    _same_dim(g, A)
    return g @ A @ g.conj().T


def unitarity_drift(h):
    """Frobenius norm of ``h^dagger h - I`` (batched over leading axes)."""
    h = np.asarray(h)
    n = h.shape[-1]
    gram = np.swapaxes(h.conj(), -1, -2) @ h
    return np.linalg.norm(gram - np.eye(n), axis=(-2, -1))


def hermitian_eig(M):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with the eigenvalues sorted in descending
    order and eigenvectors as columns, each normalised so that its first
    nonzero component is real and positive.
    """
    M = _square(M)
    scale = np.linalg.norm(M)
    if np.linalg.norm(M - M.conj().T) > HERMITIAN_TOL * scale:
        raise RoleError("matrix is not Hermitian")
    n = M.shape[0]
    a = 0.5 * (M + M.conj().T)
    V = np.eye(n, dtype=complex)
    if scale == 0.0:
        return np.zeros(n), V

    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(a[p, q])
                if r == 0.0:
                    continue
                phase = a[p, q] / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] zeroes a[p, q].
                G = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ G
                a[idx, :] = G.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                V[:, idx] = V[:, idx] @ G
    else:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off > JACOBI_TOL * scale:
            raise NumericalFault(f"Jacobi sweeps did not converge (off-diagonal {off:.3e})")

    values = np.diag(a).real
    order = np.argsort(-values, kind="stable")
    values = values[order]
    V = V[:, order]
    for j in range(n):
        col = V[:, j]
        k = int(np.argmax(np.abs(col) > 1e-12))
        V[:, j] = col * (abs(col[k]) / col[k])
    return values, V


def expm(A):
    """Matrix exponential by scaling and squaring around a Taylor core.

    Accepts a single ``(n, n)`` matrix or a stack ``(..., n, n)``; a stack
    shares one scaling exponent chosen from its largest member.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2]:
        raise DimensionMismatch(f"expected square matrices, got shape {A.shape}")
    n = A.shape[-1]
    norm = float(np.max(np.abs(A).sum(axis=-2), initial=0.0))
    if not math.isfinite(norm):
        raise RoleError("matrix has non-finite entries")
    s = 0
    if norm > SCALING_NORM:
        s = int(math.ceil(math.log2(norm / SCALING_NORM)))
    X = A / 2.0**s
    eye = np.broadcast_to(np.eye(n, dtype=complex), A.shape)
    # Horner: I + X(I + X/2(I + X/3(...)))
    E = eye.copy()
    for k in range(TAYLOR_DEGREE, 0, -1):
        E = eye + (X @ E) / k
    for _ in range(s):
        E = E @ E
    return E


def su2_exp_closed(a, b, t):
    """Closed-form exponential of ``t (a A + b B)`` for the su(2) pair A, B.

    With ``c = t (b + a i)`` and ``eps = c/|c|`` the result is
    ``[[cos|c|, eps sin|c|], [-conj(eps) sin|c|, cos|c|]]``.
    """
    c = t * complex(b, a)
    r = abs(c)
    if r == 0.0:
        return np.eye(2, dtype=complex)
    eps = c / r
    return np.array([[math.cos(r), eps * math.sin(r)],
                     [-eps.conjugate() * math.sin(r), math.cos(r)]])


def project_special_unitary(M):
    """Nearest special unitary matrix: polar factor with the determinant phase removed.

    Raises:
        NumericalFault: if ``M`` is too close to singular (condition > 1e6).
    """
    M = _square(M)
    n = M.shape[0]
    s2, W = hermitian_eig(M.conj().T @ M)
    if s2[-1] <= 0.0 or math.sqrt(s2[0] / s2[-1]) > PROJECTION_MAX_COND:
        raise NumericalFault("matrix is too close to singular to project")
    U = M @ (W * (1.0 / np.sqrt(s2))) @ W.conj().T
    det = np.linalg.det(U)
    return U * np.exp(-1j * np.angle(det) / n)


def su_basis(n):
    """Real basis of su(n).

    Order: the ``n - 1`` diagonal elements, then for each ``j < k`` the
    real-antisymmetric and imaginary-symmetric off-diagonal pairs.
    """
    if not MIN_DIM <= n <= MAX_DIM:
        raise DimensionMismatch(f"dimension {n} outside [{MIN_DIM}, {MAX_DIM}]")
    basis = []
    for j in range(n - 1):
        D = np.zeros((n, n), dtype=complex)
        D[j, j], D[j + 1, j + 1] = 1j, -1j
        basis.append(D)
    for j in range(n):
        for k in range(j + 1, n):
            R = np.zeros((n, n), dtype=complex)
            R[j, k], R[k, j] = 1.0, -1.0
            S = np.zeros((n, n), dtype=complex)
            S[j, k] = S[k, j] = 1j
            basis += [R, S]
    return basis

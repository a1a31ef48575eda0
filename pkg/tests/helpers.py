"""Independent oracles and scenario builders shared by the tests.

Nothing here calls into the code paths it is used to check: random group
elements come from numpy's QR, Schur polynomials from explicit tableau
enumeration, and the rotating-frame curve has a closed-form Lax solution.
"""
import math
from itertools import combinations_with_replacement, product

import numpy as np

from orbitact.laxflow import CurveSpec
from orbitact.matkit import SU2_A, SU2_B, su2_exp_closed
from orbitact.orbit import DualFunctional


def random_algebra(n, rng, scale=1.0):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    A = 0.5 * (X - X.conj().T)
    A -= np.trace(A) / n * np.eye(n)
    return scale * A


def random_hermitian(n, rng):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (X + X.conj().T)


def random_special_unitary(n, rng):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(X)
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))
    return Q / np.linalg.det(Q) ** (1.0 / n)


# -- semistandard Young tableaux ----------------------------------------------

def ssyt(shape, n):
    """All semistandard tableaux of ``shape`` with entries ``0..n-1`` (rows weakly
    increasing, columns strictly increasing)."""
    shape = [p for p in shape if p > 0]
    rows = [list(combinations_with_replacement(range(n), length)) for length in shape]
    for choice in product(*rows):
        if all(choice[r][c] > choice[r - 1][c]
               for r in range(1, len(choice)) for c in range(len(choice[r]))):
            yield choice


def schur_ssyt(mu, z):
    z = np.asarray(z, dtype=complex)
    total = 0j
    for t in ssyt(mu, len(z)):
        term = 1.0 + 0j
        for row in t:
            for e in row:
                term *= z[e]
        total += term
    return total


def count_ssyt(mu, n):
    return sum(1 for _ in ssyt(mu, n))


def dominant_weights(n, max_size):
    """Canonical dominant weights (last entry 0) with ``|mu| <= max_size``."""
    out = []

    def rec(prefix, remaining, cap):
        if len(prefix) == n - 1:
            out.append(tuple(prefix) + (0,))
            return
        for v in range(min(cap, remaining), -1, -1):
            rec(prefix + [v], remaining - v, v)

    rec([], max_size, max_size)
    return out


# -- scenarios ---------------------------------------------------------------

def cp1_eta():
    return DualFunctional.from_diag([0.5, -0.5])


def cp1_curve(k, quadratic=False):
    """``A_t = diag(-i a'_t, i a'_t)`` with ``a_t = k pi t`` (or ``k pi t^2``)."""
    D = np.diag([-1j, 1j])
    poly = (0.0, 2 * k * math.pi) if quadratic else (k * math.pi,)
    return CurveSpec(2, ((D, (poly, ())),))


def s2_eta(n):
    return DualFunctional.from_diag([-n / 2, n / 2])


def s2_generator(a, b):
    return math.pi / math.hypot(a, b) * (a * SU2_A + b * SU2_B)


def s2_curve(a, b):
    return CurveSpec.constant(s2_generator(a, b))


def rotating_curve(w, a, b):
    """``A(t) = P + exp(tP) (aA + bB) exp(-tP)`` with ``P = diag(iw, -iw)``.

    Its Lax solution is ``exp(tP) exp(t(aA + bB))``, so at ``t = 1`` the
    endpoint is known in closed form.
    """
    P = np.diag([1j * w, -1j * w])
    # exp(tP) (aA+bB) exp(-tP) rotates the off-diagonal entry b + ai by exp(2iwt)
    terms = (
        (P, ((1.0,), ())),
        (SU2_A, ((), ((a, 2 * w, 0.0), (b, 2 * w, -math.pi / 2)))),
        (SU2_B, ((), ((b, 2 * w, 0.0), (-a, 2 * w, -math.pi / 2)))),
    )
    return CurveSpec(2, terms)


def rotating_endpoint(w, a, b):
    return np.diag([np.exp(1j * w), np.exp(-1j * w)]) @ su2_exp_closed(a, b, 1.0)

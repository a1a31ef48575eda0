"""Numerical thresholds used across the package.

The defaults are fixed; a scenario config may override individual fields
through its ``tolerances`` block.
"""
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    closure: float = 1e-8           # centrality / isotropy residual of h_1
    integrality: float = 1e-9       # eigenvalue gaps must be this close to integers
    regularity_gap: float = 1e-9    # minimum gap between eigenvalues of H
    orbit_spectrum: float = 1e-9    # q must share the spectrum of eta
    drift: float = 1e-12            # reproject onto SU(n) above this drift
    unit_modulus: float = 1e-8      # |kappa| - 1 for the Weyl route
    schur_agreement: float = 1e-9   # Jacobi-Trudi vs bialternant
    agreement: float = 1e-6         # pairwise route agreement for AGREE verdict
    chart_radius: float = 1e3       # |x|, |y| bound of the stereographic chart

    def updated(self, overrides):
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise KeyError(", ".join(sorted(unknown)))
        return replace(self, **{k: float(v) for k, v in overrides.items()})

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT = Tolerances()

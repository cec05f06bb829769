"""Conjugation map between the pseudo-vector spinor xi and the proper one eta.

    eta1 = (xi1 - conj(xi2)) / sqrt(2)     xi1 = (eta1 + conj(eta2)) / sqrt(2)
    eta2 = (conj(xi1) + xi2) / sqrt(2)     xi2 = (eta2 - conj(eta1)) / sqrt(2)

The map is real-linear but not complex-linear.  Evaluated on the fields it
sends ``xi(x)`` to ``eta(x)`` at every point, provided both use the same
gamma branch.

The compact matrix rendering ``(s - i sigma2 s*) / sqrt(2)`` does not agree
with these components under the usual sign of sigma2; the component form
is the one implemented.
"""

from __future__ import annotations

import math

from .algebra import Spinor

__all__ = ["xi_to_eta", "eta_to_xi"]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def xi_to_eta(s: Spinor) -> Spinor:
    x1, x2 = s.c1, s.c2
    return Spinor((x1 - x2.conjugate()) * _INV_SQRT2, (x1.conjugate() + x2) * _INV_SQRT2)


def eta_to_xi(s: Spinor) -> Spinor:
    e1, e2 = s.c1, s.c2
    return Spinor((e1 + e2.conjugate()) * _INV_SQRT2, (e2 - e1.conjugate()) * _INV_SQRT2)

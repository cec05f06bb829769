"""Extended unitary group SU(2) + J and its action on spinors and vectors.

A group element is stored as a unit quaternion ``(n0, n1, n2, n3)`` plus a
parity flag. The two representations are

    B(n) = n0 I - i sigma_j n_j                 (on spinors)
    O(n) = I + 2 [n0 N + N @ N],  N v = n x v    (on 3-vectors)

The cross-product matrix ``N`` is taken with the sign that makes the
hermitian square of a spinor covariant, ``herm(B s) = O herm(s)``.  With
this choice ``n = sin(t/2) u, n0 = cos(t/2)`` rotates vectors by ``+t``
about ``u`` (right-hand rule).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "Parity",
    "SpinorType",
    "Spinor",
    "GroupElement",
    "PAULI",
    "UNIT_TOL",
    "su2_matrix",
    "so3_matrix",
    "compose",
    "act_on_spinor",
    "act_on_vector",
    "parity_on_spinor",
]

UNIT_TOL = 1e-10
RENORM_DRIFT = 1e-14

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class Parity(enum.IntEnum):
    PROPER = 1
    REFLECTED = -1


class SpinorType(enum.Enum):
    """Spinor type under J: T1 maps J to +J, T2 maps J to -J."""

    T1 = 1
    T2 = 2


@dataclass(frozen=True, slots=True)
class Spinor:
    """Two complex components ``(c1, c2)``."""

    c1: complex
    c2: complex

    def __post_init__(self):
        c1, c2 = complex(self.c1), complex(self.c2)
        if not (cmath.isfinite(c1) and cmath.isfinite(c2)):
            raise ValidationError(f"non-finite spinor component: {c1!r}, {c2!r}")
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    @classmethod
    def from_array(cls, arr) -> "Spinor":
        return cls(complex(arr[0]), complex(arr[1]))

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2], dtype=complex)

    def __iter__(self):
        yield self.c1
        yield self.c2

    def __neg__(self) -> "Spinor":
        return Spinor(-self.c1, -self.c2)

    def __mul__(self, z) -> "Spinor":
        return Spinor(z * self.c1, z * self.c2)

    __rmul__ = __mul__

    def __add__(self, other: "Spinor") -> "Spinor":
        return Spinor(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "Spinor") -> "Spinor":
        return Spinor(self.c1 - other.c1, self.c2 - other.c2)

    def conj(self) -> "Spinor":
        return Spinor(self.c1.conjugate(), self.c2.conjugate())

    def norm2(self) -> float:
        return abs(self.c1) ** 2 + abs(self.c2) ** 2

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def distance(self, other: "Spinor") -> float:
        return max(abs(self.c1 - other.c1), abs(self.c2 - other.c2))


@dataclass(frozen=True, slots=True)
class GroupElement:
    """Element of SU(2) + J as a unit quaternion and a parity flag."""

    n0: float
    nvec: tuple[float, float, float]
    parity: Parity = Parity.PROPER

    def __post_init__(self):
        object.__setattr__(self, "n0", float(self.n0))
        object.__setattr__(self, "nvec", tuple(float(x) for x in self.nvec))
        if len(self.nvec) != 3:
            raise ValidationError("nvec must have three components")
        object.__setattr__(self, "parity", Parity(self.parity))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1.0, (0.0, 0.0, 0.0))

    @classmethod
    def from_axis_angle(cls, axis, angle: float, parity=Parity.PROPER) -> "GroupElement":
        """Element rotating vectors by ``angle`` about ``axis``."""
        u = np.asarray(axis, dtype=float)
        norm = np.linalg.norm(u)
        if norm == 0.0:
            raise ValidationError("rotation axis must be non-zero")
        s = math.sin(angle / 2) / norm
        return cls(math.cos(angle / 2), tuple(s * u), parity)

    @classmethod
    def random(cls, rng: np.random.Generator, parity=Parity.PROPER) -> "GroupElement":
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        return cls(q[0], tuple(q[1:]), parity)

    def quaternion(self) -> np.ndarray:
        return np.array((self.n0, *self.nvec))

    def unit_defect(self) -> float:
        return abs(self.n0**2 + sum(x * x for x in self.nvec) - 1.0)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.n0, tuple(-x for x in self.nvec), self.parity)

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.n0, tuple(-x for x in self.nvec), self.parity)


def _check_unit(g: GroupElement) -> None:
    if g.unit_defect() > UNIT_TOL:
        raise ValidationError(
            f"group element violates n0^2 + |n|^2 = 1 (defect {g.unit_defect():.3e})"
        )


def _cross_matrix(n) -> np.ndarray:
    return np.array(
        [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]]
    )


def su2_matrix(g: GroupElement) -> np.ndarray:
    """Return ``B(n) = n0 I - i sigma_j n_j``."""
    _check_unit(g)
    n1, n2, n3 = g.nvec
    return np.array(
        [[g.n0 - 1j * n3, -1j * n1 - n2], [-1j * n1 + n2, g.n0 + 1j * n3]],
        dtype=complex,
    )


def so3_matrix(g: GroupElement) -> np.ndarray:
    """Return the rotation ``O(n)`` covering ``B(n)``; ``O(-g) == O(g)`` bitwise."""
    _check_unit(g)
    # negation is exact in IEEE arithmetic, so n0*N and N@N are sign-blind
    N = _cross_matrix(g.nvec)
    return np.eye(3) + 2.0 * (g.n0 * N + N @ N)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Group product ``g h`` (so ``B(gh) = B(g) B(h)``); parities multiply."""
    a0, a = g.n0, np.array(g.nvec)
    b0, b = h.n0, np.array(h.nvec)
    q0 = a0 * b0 - a @ b
    q = a0 * b + b0 * a + np.cross(a, b)
    norm = math.sqrt(q0 * q0 + q @ q)
    if abs(norm - 1.0) > RENORM_DRIFT:
        q0, q = q0 / norm, q / norm
    return GroupElement(q0, tuple(q), Parity(g.parity * h.parity))


def parity_on_spinor(t: SpinorType, s: Spinor) -> Spinor:
    """Action of J: ``+i s`` for type T1, ``-i s`` for type T2."""
    return s * (1j if t is SpinorType.T1 else -1j)


def act_on_spinor(g: GroupElement, s: Spinor, spinor_type: SpinorType = SpinorType.T1) -> Spinor:
    """Return ``B(n) s``, followed by J when ``g`` is reflected."""
    out = Spinor.from_array(su2_matrix(g) @ s.as_array())
    if g.parity is Parity.REFLECTED:
        out = parity_on_spinor(spinor_type, out)
    return out


def act_on_vector(g: GroupElement, v) -> np.ndarray:
    """Return ``O(n) v``.

    The parity flag is ignored here: pseudo vectors are J-invariant and
    proper vectors flip, which is a property of the model, not the group.
    """
    return so3_matrix(g) @ np.asarray(v, dtype=float)

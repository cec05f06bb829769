"""Continuation of the spinor fields along paths that avoid the x3 axis.

The planar angle is lifted to a real function along the path by always
taking the translate of the next principal angle nearest to the current
lift.  The field is then evaluated with that lifted angle, so a closed
loop winding ``w`` times about the axis returns ``(-1)**w`` times the
starting spinor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import Spinor
from .calculus import Model, field_value
from .errors import PathResolutionError, SingularPathError, ValidationError
from .pseudo_model import DEFAULT_CONTEXT, TWO_PI, BranchContext, principal_angle

__all__ = [
    "Path",
    "TransportResult",
    "MAX_STEP",
    "continue_gamma",
    "transport_spinor",
    "winding",
    "circle_path",
]

# largest admissible angle increment between consecutive samples
MAX_STEP = math.pi / 2
FOUR_PI = 2.0 * TWO_PI


@dataclass(frozen=True)
class Path:
    """Ordered polyline in 3-space; a closed path returns to its first point."""

    points: np.ndarray
    closed: bool = False

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) == 0:
            raise ValidationError("a path needs at least one point with three coordinates")
        if not np.all(np.isfinite(pts)):
            raise ValidationError("path coordinates must be finite")
        if self.closed and not np.array_equal(pts[0], pts[-1]):
            pts = np.vstack([pts, pts[:1]])
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "closed", bool(self.closed))

    def __len__(self) -> int:
        return len(self.points)

    def __add__(self, other: "Path") -> "Path":
        """Concatenate; the second path must start where this one ends."""
        if not np.array_equal(self.points[-1], other.points[0]):
            raise ValidationError("paths are not composable")
        return Path(np.vstack([self.points, other.points[1:]]), self.closed and other.closed)

    def refined(self) -> "Path":
        """Insert the midpoint of every segment."""
        pts = self.points
        mids = 0.5 * (pts[:-1] + pts[1:])
        out = np.empty((2 * len(pts) - 1, 3))
        out[0::2] = pts
        out[1::2] = mids
        return Path(out, self.closed)


@dataclass(frozen=True)
class TransportResult:
    initial: Spinor
    final: Spinor
    gamma_start: float
    gamma_end: float
    winding: int | None
    sign_flip: bool
    lift: tuple[float, ...] = field(repr=False, default=())

    @property
    def sheet(self) -> int:
        """Sheet of the endpoint in the doubled space: 1 iff the lift mod 4pi is below 2pi."""
        return 1 if self.gamma_end % FOUR_PI < TWO_PI else 2


def _check_point(p: np.ndarray, ctx: BranchContext) -> None:
    rho = math.hypot(p[0], p[1])
    if not rho > ctx.axis_tolerance * (1.0 + float(np.linalg.norm(p))):
        raise SingularPathError(f"path point {tuple(p)} lies in the axis tube")


def continue_gamma(path: Path, ctx: BranchContext = DEFAULT_CONTEXT) -> list[float]:
    """Lifted planar angle at every path point.

    Raises :class:`SingularPathError` for points inside the axis tube and
    :class:`PathResolutionError` when consecutive samples are ``pi/2`` or
    more apart in angle.
    """
    pts = path.points
    for p in pts:
        _check_point(p, ctx)
    prev = principal_angle(pts[0][0], pts[0][1])
    lift = [prev]
    for i in range(1, len(pts)):
        step = math.atan2(pts[i][1], pts[i][0]) - math.atan2(pts[i - 1][1], pts[i - 1][0])
        step = math.remainder(step, TWO_PI)
        if abs(step) >= MAX_STEP:
            raise PathResolutionError(
                f"angle step {step:.3f} between points {i - 1} and {i} is too large; refine the path"
            )
        prev = prev + step
        lift.append(prev)
    return lift


def transport_spinor(
    path: Path, model: Model | str = Model.XI, ctx: BranchContext = DEFAULT_CONTEXT
) -> TransportResult:
    model = Model(model)
    lift = continue_gamma(path, ctx)
    start, end = path.points[0], path.points[-1]
    initial = field_value(model, start, ctx, gamma=lift[0])
    final = field_value(model, end, ctx, gamma=lift[-1])
    turns = (lift[-1] - lift[0]) / TWO_PI
    if path.closed:
        w = round(turns)
        flip = w % 2 == 1
    else:
        w = None
        offset = (lift[-1] - principal_angle(end[0], end[1])) / TWO_PI
        flip = round(offset) % 2 == 1
    return TransportResult(initial, final, lift[0], lift[-1], w, flip, tuple(lift))


def winding(path: Path) -> int:
    """Signed number of turns of the planar projection about the origin.

    Counted independently of the angle lift, by signed crossings of the
    positive x1 half-line.
    """
    if not path.closed:
        raise ValidationError("winding is defined for closed paths only")
    pts = path.points
    count = 0
    for (x0, y0, _), (x1, y1, _) in zip(pts[:-1], pts[1:]):
        if y0 < 0 <= y1 or y1 < 0 <= y0:
            cross_x = x0 + (0.0 - y0) * (x1 - x0) / (y1 - y0)
            if cross_x > 0:
                count += 1 if y1 > y0 else -1
    return count


def circle_path(
    radius: float = 1.0,
    turns: int = 1,
    samples: int = 100,
    center=(0.0, 0.0),
    height: float = 0.0,
    start_angle: float = 0.0,
) -> Path:
    """Closed circle traversed ``turns`` times (negative = clockwise) with ``samples`` segments."""
    if samples < 1:
        raise ValidationError("samples must be positive")
    t = start_angle + np.linspace(0.0, TWO_PI * turns, samples, endpoint=False)
    pts = np.column_stack(
        [center[0] + radius * np.cos(t), center[1] + radius * np.sin(t), np.full(samples, float(height))]
    )
    return Path(pts, closed=True)

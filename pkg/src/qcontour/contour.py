"""The two-branch time contour: contour times, ordering, branch propagators.

The contour doubles the physical time axis into a forward branch (traversed
chronologically) followed by a backward branch (traversed anti-chronologically).
A single piecewise-constant Hermitian schedule drives both branches, which is
what makes the dynamics time symmetric: the backward propagator between two
physical times is the adjoint of the forward propagator over the reversed
interval.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import StateVector, matrix_exponential, require_hermitian
from .errors import DimensionError, GridError


class Branch(enum.Enum):
    """Which half of the contour a time belongs to."""

    FORWARD = "f"
    BACKWARD = "b"


class ContourOrder(enum.IntEnum):
    BEFORE = -1
    EQUAL = 0
    AFTER = 1


@dataclass(frozen=True)
class ContourTime:
    """A physical time tagged with its branch."""

    t: float
    branch: Branch

    def __post_init__(self):
        if not math.isfinite(self.t):
            raise DimensionError("contour time must be finite")

    def _key(self) -> tuple[int, float]:
        # Forward times come first and increase along the contour; backward
        # times follow and decrease.
        if self.branch is Branch.FORWARD:
            return (0, self.t)
        return (1, -self.t)

    def __lt__(self, other: "ContourTime") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "ContourTime") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "ContourTime") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "ContourTime") -> bool:
        return self._key() >= other._key()


def contour_compare(z1: ContourTime, z2: ContourTime) -> ContourOrder:
    """Total order along the contour.

    All forward times precede all backward times; on the forward branch larger
    physical time is later, on the backward branch it is earlier.
    """
    k1, k2 = z1._key(), z2._key()
    if k1 < k2:
        return ContourOrder.BEFORE
    if k1 > k2:
        return ContourOrder.AFTER
    return ContourOrder.EQUAL


@dataclass(frozen=True, eq=False)
class HamiltonianSchedule:
    """Piecewise-constant Hermitian generator over a global time grid.

    Segment ``j`` applies on ``[grid[j], grid[j+1]]``.  One schedule serves
    both branches, structurally enforcing branch independence of the
    Hamiltonian.
    """

    grid: tuple[float, ...]
    segments: tuple[np.ndarray, ...]

    def __post_init__(self):
        grid = tuple(float(t) for t in self.grid)
        if len(grid) < 2:
            raise GridError("schedule needs at least two grid times")
        if not all(math.isfinite(t) for t in grid):
            raise GridError("grid times must be finite")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise GridError("grid must be strictly increasing")
        segments = tuple(require_hermitian(h) for h in self.segments)
        if len(segments) != len(grid) - 1:
            raise GridError(
                f"{len(segments)} segments for {len(grid)} grid times (need n-1)"
            )
        dims = {h.shape[0] for h in segments}
        if len(dims) != 1:
            raise DimensionError(f"segments have mixed dims {sorted(dims)}")
        for h in segments:
            h.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "segments", segments)

    @property
    def dim(self) -> int:
        return self.segments[0].shape[0]

    @property
    def t_start(self) -> float:
        return self.grid[0]

    @property
    def t_end(self) -> float:
        return self.grid[-1]

    def require_covered(self, t: float) -> None:
        if not (self.t_start <= t <= self.t_end):
            raise GridError(
                f"time {t} outside schedule span [{self.t_start}, {self.t_end}]"
            )

    def pieces(self, lo: float, hi: float) -> list[tuple[np.ndarray, float]]:
        """Chronological (generator, duration) pairs covering [lo, hi].

        Times strictly inside a segment split it analytically; the generator
        is constant on the partial interval.
        """
        out: list[tuple[np.ndarray, float]] = []
        if hi <= lo:
            return out
        for j, h in enumerate(self.segments):
            left = max(self.grid[j], lo)
            right = min(self.grid[j + 1], hi)
            if right > left:
                out.append((h, right - left))
        return out


def zero_schedule(dim: int, grid: tuple[float, ...]) -> HamiltonianSchedule:
    """Free evolution: every segment generator is the zero matrix."""
    zero = np.zeros((dim, dim), dtype=complex)
    return HamiltonianSchedule(tuple(grid), tuple(zero for _ in range(len(grid) - 1)))


def branch_propagator(
    sched: HamiltonianSchedule, t_from: float, t_to: float, branch: Branch = Branch.FORWARD
) -> np.ndarray:
    """Unitary mapping states at ``t_from`` to states at ``t_to`` on a branch.

    The contour-ordered product multiplies segment exponentials latest-leftmost
    when moving chronologically and earliest-leftmost (with conjugated phases)
    when moving anti-chronologically.  With the shared schedule this realizes
    ``branch_propagator(b, t1, t2) == branch_propagator(f, t2, t1)^dag``: the
    branch tag fixes the orientation semantics while the numbers depend only
    on the physical interval.
    """
    sched.require_covered(t_from)
    sched.require_covered(t_to)
    dim = sched.dim
    u = np.eye(dim, dtype=complex)
    if t_from == t_to:
        return u
    pieces = sched.pieces(min(t_from, t_to), max(t_from, t_to))
    if t_to > t_from:
        for h, dt in pieces:  # latest factor ends up leftmost
            u = matrix_exponential(h, dt) @ u
    else:
        for h, dt in reversed(pieces):  # earliest leftmost, reversed phases
            u = matrix_exponential(h, -dt) @ u
    return u


def evolve(
    sched: HamiltonianSchedule,
    v: StateVector,
    t_from: float,
    t_to: float,
    branch: Branch = Branch.FORWARD,
) -> StateVector:
    """Propagate a state along a branch; the norm is preserved within NORM_TOL."""
    if v.dim != sched.dim:
        raise DimensionError(f"state dim {v.dim} does not match schedule dim {sched.dim}")
    u = branch_propagator(sched, t_from, t_to, branch)
    return StateVector(u @ v.amplitudes, v.labels)


__all__ = [
    "Branch",
    "ContourOrder",
    "ContourTime",
    "HamiltonianSchedule",
    "branch_propagator",
    "contour_compare",
    "evolve",
    "zero_schedule",
]

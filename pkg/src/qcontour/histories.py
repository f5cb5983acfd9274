"""Fixed points, quantum histories, family consistency and measures of existence.

A fixed point is a time-stamped state whose forward- and backward-directed
temporal parts are equal; only one copy is stored and the backward part is
reconstructed as the conjugate where needed.  A history is an increasing
sequence of at least two fixed points connected by forward-branch propagators;
its weight is the squared modulus of the transition-amplitude chain, and the
measure of existence normalizes that weight over a mutually orthogonal family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Collection, Sequence

import numpy as np

from .contour import Branch, HamiltonianSchedule, branch_propagator
from .core import NORM_TOL, StateVector
from .errors import (
    DegenerateFamilyError,
    DimensionError,
    EmptyFamilyError,
    FamilyShapeError,
    NormalizationError,
)

CONSISTENCY_TOL = 1e-10
# A family whose total weight falls below this is treated as all-zero
# (every history forbidden); matches the 1e-12 degenerate-denominator rule
# used by the selection calculators, squared because weights are |amp|^2.
DEGENERATE_TOTAL = 1e-24

LabeledState = tuple[str, StateVector]
AllowedSpec = Collection[str] | Callable[[str], bool] | None


@dataclass(frozen=True)
class FixedPoint:
    """A state pinned at one time, with equal forward and backward parts."""

    t: float
    state: StateVector
    label: str = ""


@dataclass(frozen=True, eq=False)
class QuantumHistory:
    """An ordered sequence of N_t >= 2 fixed points at strictly increasing times."""

    points: tuple[FixedPoint, ...]

    def __post_init__(self):
        points = tuple(self.points)
        if len(points) < 2:
            raise FamilyShapeError("a history needs at least two fixed points")
        times = [p.t for p in points]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise FamilyShapeError("fixed-point times must be strictly increasing")
        dims = {p.state.dim for p in points}
        if len(dims) != 1:
            raise DimensionError(f"fixed points have mixed dims {sorted(dims)}")
        object.__setattr__(self, "points", points)

    @property
    def times(self) -> tuple[float, ...]:
        return tuple(p.t for p in self.points)

    @property
    def states(self) -> tuple[StateVector, ...]:
        return tuple(p.state for p in self.points)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.points)

    @property
    def dim(self) -> int:
        return self.points[0].state.dim


@dataclass(frozen=True, eq=False)
class HistoryFamily:
    """Histories on one shared time grid, driven by one schedule."""

    histories: tuple[QuantumHistory, ...]
    sched: HamiltonianSchedule

    def __post_init__(self):
        histories = tuple(self.histories)
        if not histories:
            raise EmptyFamilyError("a family needs at least one history")
        grid = histories[0].times
        for k, h in enumerate(histories):
            if h.times != grid:
                raise FamilyShapeError(
                    f"history {k} has times {h.times}, family grid is {grid}"
                )
            if h.dim != self.sched.dim:
                raise DimensionError(
                    f"history dim {h.dim} does not match schedule dim {self.sched.dim}"
                )
        for t in grid:
            self.sched.require_covered(t)
        object.__setattr__(self, "histories", histories)

    @property
    def times(self) -> tuple[float, ...]:
        return self.histories[0].times

    def __len__(self) -> int:
        return len(self.histories)


@dataclass(frozen=True)
class MeasureTable:
    """Measures of existence per history index, plus the family normalization."""

    entries: tuple[tuple[int, float], ...]
    normalization: float

    @property
    def measures(self) -> tuple[float, ...]:
        return tuple(m for _, m in self.entries)


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    # (index_l, index_k, overlap) for each pair violating <h_l|h_k> = delta_lk
    violating_pairs: tuple[tuple[int, int, complex], ...]


def amplitude_chain(
    states: Sequence[StateVector], times: Sequence[float], sched: HamiltonianSchedule
) -> complex:
    """Product of forward-branch transition amplitudes along a state sequence.

    Returns prod_i <s_{i+1}| U(t_{i+1}, t_i) |s_i>.  The backward branch
    contributes the complex conjugate of this chain; it enters measures only
    through the squared modulus and is never evaluated separately.
    """
    if len(states) != len(times):
        raise DimensionError(f"{len(states)} states for {len(times)} times")
    if len(states) < 2:
        raise DimensionError("amplitude chain needs at least two states")
    for s in states:
        if s.dim != sched.dim:
            raise DimensionError(
                f"state dim {s.dim} does not match schedule dim {sched.dim}"
            )
    amp = 1.0 + 0.0j
    for i in range(len(states) - 1):
        u = branch_propagator(sched, times[i], times[i + 1], Branch.FORWARD)
        amp *= complex(np.vdot(states[i + 1].amplitudes, u @ states[i].amplitudes))
    return amp


def history_amplitude(h: QuantumHistory, sched: HamiltonianSchedule) -> complex:
    """Forward-branch amplitude chain through the history's fixed points."""
    return amplitude_chain(h.states, h.times, sched)


def _family_weights(fam: HistoryFamily) -> list[float]:
    return [abs(history_amplitude(h, fam.sched)) ** 2 for h in fam.histories]


def measure_of_existence(h: QuantumHistory, fam: HistoryFamily) -> float:
    """Weight of ``h`` relative to the total weight of its family."""
    index = None
    for k, other in enumerate(fam.histories):
        if other is h:
            index = k
            break
    if index is None:
        for k, other in enumerate(fam.histories):
            if other.times == h.times and all(
                np.array_equal(a.amplitudes, b.amplitudes)
                for a, b in zip(other.states, h.states)
            ):
                index = k
                break
    if index is None:
        raise ValueError("history is not a member of the family")
    weights = _family_weights(fam)
    total = sum(weights)
    if total <= DEGENERATE_TOTAL:
        raise DegenerateFamilyError(
            "every history in the family carries zero weight; "
            "the fixed-point constraints are mutually exclusive"
        )
    return weights[index] / total


def vaidman_probabilities(fam: HistoryFamily) -> MeasureTable:
    """Measure of existence for every history; measures sum to one."""
    weights = _family_weights(fam)
    total = sum(weights)
    if total <= DEGENERATE_TOTAL:
        raise DegenerateFamilyError(
            "every history in the family carries zero weight; "
            "the fixed-point constraints are mutually exclusive"
        )
    entries = tuple((k, w / total) for k, w in enumerate(weights))
    return MeasureTable(entries=entries, normalization=total)


def check_family_consistency(fam: HistoryFamily) -> ConsistencyReport:
    """Verify pairwise orthogonality of histories on the shared grid.

    The overlap of two histories is the product over times of the same-time
    fixed-point inner products; distinct histories must give |overlap| <=
    CONSISTENCY_TOL and every history must overlap itself to within the same
    tolerance of one.
    """
    violations: list[tuple[int, int, complex]] = []
    n = len(fam.histories)
    for l in range(n):
        for k in range(l, n):
            overlap = 1.0 + 0.0j
            for pl, pk in zip(fam.histories[l].points, fam.histories[k].points):
                overlap *= complex(np.vdot(pl.state.amplitudes, pk.state.amplitudes))
            if l == k:
                if abs(overlap - 1.0) > CONSISTENCY_TOL:
                    violations.append((l, k, overlap))
            elif abs(overlap) > CONSISTENCY_TOL:
                violations.append((l, k, overlap))
    return ConsistencyReport(consistent=not violations, violating_pairs=tuple(violations))


def _as_predicate(allowed) -> Callable[[str], bool]:
    if allowed is None:
        return lambda label: True
    if callable(allowed):
        return allowed
    members = set(allowed)
    return lambda label: label in members


def _require_orthonormal(basis: Sequence[LabeledState], t: float) -> None:
    mat = np.column_stack([state.amplitudes for _, state in basis])
    gram = mat.conj().T @ mat
    dev = float(np.max(np.abs(gram - np.eye(len(basis)))))
    if dev > NORM_TOL:
        raise DimensionError(
            f"basis at t={t} deviates from orthonormality by {dev:.3e}"
        )


def enumerate_family(
    times: Sequence[float],
    bases: Sequence[Sequence[LabeledState]],
    allowed: Sequence[AllowedSpec] | None = None,
    *,
    sched: HamiltonianSchedule,
) -> HistoryFamily:
    """Materialize the Cartesian product of allowed basis labels per time.

    ``bases[i]`` lists (label, state) pairs forming an orthonormal set for
    ``times[i]``; ``allowed[i]`` is an optional label collection or predicate
    restricting that time.  The resulting family is consistent by
    construction, because any two distinct histories differ at some time where
    both draw orthogonal members of one basis.
    """
    if len(times) < 2:
        raise FamilyShapeError("a family needs at least two times")
    if len(bases) != len(times):
        raise DimensionError(f"{len(bases)} bases for {len(times)} times")
    if allowed is None:
        allowed = [None] * len(times)
    if len(allowed) != len(times):
        raise DimensionError(f"{len(allowed)} constraints for {len(times)} times")

    per_time: list[list[LabeledState]] = []
    for t, basis, spec in zip(times, bases, allowed):
        keep = _as_predicate(spec)
        choices = [(label, state) for label, state in basis if keep(label)]
        if not choices:
            raise EmptyFamilyError(f"no allowed fixed-point state at t={t}")
        _require_orthonormal(choices, t)
        per_time.append(choices)

    histories = []
    for combo in itertools.product(*per_time):
        points = tuple(
            FixedPoint(t=t, state=state, label=label)
            for t, (label, state) in zip(times, combo)
        )
        histories.append(QuantumHistory(points))
    return HistoryFamily(histories=tuple(histories), sched=sched)

"""Complex linear-algebra substrate: states, operators and their checks.

Conventions: hbar = 1 throughout, all Hilbert spaces are finite dimensional,
operators are plain complex numpy arrays and states are immutable
:class:`StateVector` values carrying opaque basis labels.  Everything here is
a pure function of its inputs, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, HermiticityError, NormalizationError

# Numerical tolerances (double precision leaves ample headroom at the
# dimensions this engine targets, <= ~64).
NORM_TOL = 1e-10
UNITARITY_TOL = 1e-10
HERMITICITY_TOL = 1e-10
COMPOSE_TOL = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_operator(m, dim: int | None = None) -> np.ndarray:
    """Coerce ``m`` to a square complex matrix, checking finiteness."""
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"operator must be square, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise DimensionError(f"operator has dim {a.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(a)):
        raise DimensionError("operator entries must be finite")
    return a


def default_labels(dim: int) -> tuple[str, ...]:
    return tuple(str(k) for k in range(dim))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized vector in a d-dimensional Hilbert space with basis labels.

    The amplitudes are stored as a read-only complex array; the labels are
    opaque strings the physics never depends on.  Construction fails unless
    the norm is within ``NORM_TOL`` of one; use :meth:`normalized` to rescale
    arbitrary data.
    """

    amplitudes: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 1:
            raise DimensionError("state vector needs dim >= 1")
        if not np.all(np.isfinite(amps)):
            raise NormalizationError("state amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"state norm {norm!r} violates unit-norm invariant")
        labels = tuple(self.labels) if self.labels else default_labels(amps.size)
        if len(labels) != amps.size:
            raise DimensionError(f"{len(labels)} labels for dim {amps.size}")
        object.__setattr__(self, "amplitudes", _readonly(amps))
        object.__setattr__(self, "labels", labels)

    @classmethod
    def normalized(cls, amplitudes, labels: tuple[str, ...] = ()) -> "StateVector":
        """Build a state from unnormalized amplitudes, rescaling to unit norm."""
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(amps))
        if norm == 0.0 or not np.isfinite(norm):
            raise NormalizationError("cannot normalize zero or non-finite vector")
        return cls(amps / norm, labels)

    @classmethod
    def basis_state(cls, dim: int, index: int, labels: tuple[str, ...] = ()) -> "StateVector":
        amps = np.zeros(dim, dtype=complex)
        amps[index] = 1.0
        return cls(amps, labels)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def phase_shifted(self, theta: float) -> "StateVector":
        """The same ray multiplied by exp(i*theta)."""
        return StateVector(np.exp(1j * theta) * self.amplitudes, self.labels)

    def conjugated(self) -> "StateVector":
        """Component-wise complex conjugate (backward-directed part)."""
        return StateVector(np.conj(self.amplitudes), self.labels)

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim}, amplitudes={self.amplitudes!r})"


def computational_basis(dim: int, labels: tuple[str, ...] = ()) -> list[StateVector]:
    """The standard orthonormal basis, one StateVector per axis."""
    labels = tuple(labels) if labels else default_labels(dim)
    return [StateVector.basis_state(dim, k, labels) for k in range(dim)]


def inner_product(bra: StateVector, ket: StateVector) -> complex:
    """<bra|ket> = sum_i conj(bra_i) * ket_i."""
    if bra.dim != ket.dim:
        raise DimensionError(f"inner product of dim {bra.dim} with dim {ket.dim}")
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def apply(op: np.ndarray, v: StateVector) -> np.ndarray:
    """Matrix-vector product ``op @ v``; the result may be unnormalized."""
    op = as_operator(op)
    if op.shape[0] != v.dim:
        raise DimensionError(f"operator dim {op.shape[0]} does not match state dim {v.dim}")
    return op @ v.amplitudes


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def require_hermitian(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    a = as_operator(m)
    dev = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if dev > tol:
        raise HermiticityError(f"matrix deviates from Hermiticity by {dev:.3e}")
    return a


def matrix_exponential(h: np.ndarray, dt: float) -> np.ndarray:
    """exp(-i * h * dt) for Hermitian ``h`` (hbar = 1).

    Evaluated through the spectral decomposition of the generator, which is
    exact up to the eigensolver's accuracy and guarantees a unitary result.

    Raises:
        HermiticityError: if ``h`` is not Hermitian within ``HERMITICITY_TOL``.
    """
    h = require_hermitian(h)
    if not np.isfinite(dt):
        raise DimensionError("time step must be finite")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * dt)) @ v.conj().T


def check_unitary(u: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    """True iff max |U^dag U - I| <= tol."""
    u = as_operator(u)
    dev = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    return float(dev) <= tol


# Common two-level operators, read-only.
SIGMA_X = _readonly(np.array([[0, 1], [1, 0]], dtype=complex))
SIGMA_Y = _readonly(np.array([[0, -1j], [1j, 0]], dtype=complex))
SIGMA_Z = _readonly(np.array([[1, 0], [0, -1]], dtype=complex))
HADAMARD = _readonly(np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0))

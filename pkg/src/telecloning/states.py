"""Dense complex state vectors over small labeled qubit registers.

Amplitude index i encodes the basis ket |b> where b is the big-endian bit
string of i over the register order (first label = most significant bit).
All operations are label-aware and pure: callers never do index math, and
nothing here mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

Label = str

X, P, A, C1, C2 = "X", "P", "A", "C1", "C2"
CHANNEL_REGISTER: tuple[Label, ...] = (P, A, C1, C2)
PROTOCOL_REGISTER: tuple[Label, ...] = (X, P, A, C1, C2)

ATOL = 1e-12          # deterministic linear algebra tolerance
EIGVAL_ATOL = 1e-10   # slack for density-matrix eigenvalue positivity
PROB_FLOOR = 1e-14    # measurement branches below this carry no post-state

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class PureState:
    """Immutable state vector over an ordered register of labeled qubits."""

    register: tuple[Label, ...]
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        register = tuple(self.register)
        if len(set(register)) != len(register):
            raise ValueError(f"duplicate qubit label in register {register}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2 ** len(register):
            raise ValueError(
                f"register {register} needs {2 ** len(register)} amplitudes, "
                f"got {amps.size}"
            )
        object.__setattr__(self, "register", register)
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def n_qubits(self) -> int:
        return len(self.register)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def axis(self, label: Label) -> int:
        try:
            return self.register.index(label)
        except ValueError:
            raise ValueError(f"unknown label {label!r} in register {self.register}") from None

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "PureState":
        nrm = self.norm()
        if nrm < 1e-150:
            raise ValueError("cannot normalize a zero state")
        return PureState(self.register, self.amplitudes / nrm)

    def with_phase_convention(self) -> "PureState":
        """Rephase so the first amplitude with magnitude above ATOL is real positive."""
        for a in self.amplitudes:
            if abs(a) > ATOL:
                return PureState(self.register, self.amplitudes * (np.conj(a) / abs(a)))
        return self

    def reorder(self, new_register: Sequence[Label]) -> "PureState":
        """Same state written over a permuted register."""
        new_register = tuple(new_register)
        if new_register == self.register:
            return self
        if sorted(new_register) != sorted(self.register):
            raise ValueError(f"{new_register} is not a permutation of {self.register}")
        perm = [self.register.index(label) for label in new_register]
        psi = self.amplitudes.reshape([2] * self.n_qubits).transpose(perm)
        return PureState(new_register, psi.reshape(-1))

    def relabel(self, new_register: Sequence[Label]) -> "PureState":
        """Rename the qubits without touching amplitudes."""
        new_register = tuple(new_register)
        if len(new_register) != self.n_qubits:
            raise ValueError("relabel must preserve the register size")
        return PureState(new_register, self.amplitudes)

    def density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(self.register, np.outer(self.amplitudes, self.amplitudes.conj()))

    def overlap(self, other: "PureState") -> complex:
        """<self|other>, reordering `other` onto this register if needed."""
        return complex(np.vdot(self.amplitudes, other.reorder(self.register).amplitudes))

    def isclose(self, other: "PureState", atol: float = ATOL) -> bool:
        """Bitwise amplitude comparison after register alignment (no phase freedom)."""
        other = other.reorder(self.register)
        return bool(np.max(np.abs(self.amplitudes - other.amplitudes)) <= atol)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator on a labeled register."""

    register: tuple[Label, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        register = tuple(self.register)
        mat = np.asarray(self.matrix, dtype=complex)
        dim = 2 ** len(register)
        if mat.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix for register {register}")
        if np.max(np.abs(mat - mat.conj().T)) > ATOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(mat).real - 1.0) > ATOL or abs(np.trace(mat).imag) > ATOL:
            raise ValueError("density matrix trace is not 1")
        if float(np.linalg.eigvalsh(mat).min()) < -EIGVAL_ATOL:
            raise ValueError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "register", register)
        object.__setattr__(self, "matrix", _frozen(mat))

    @property
    def n_qubits(self) -> int:
        return len(self.register)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def isclose(self, other: "DensityMatrix", atol: float = ATOL) -> bool:
        if sorted(other.register) != sorted(self.register):
            return False
        return bool(np.max(np.abs(self.matrix - _aligned_matrix(other, self.register))) <= atol)


def _aligned_matrix(rho: DensityMatrix, register: tuple[Label, ...]) -> np.ndarray:
    if rho.register == register:
        return rho.matrix
    n = rho.n_qubits
    perm = [rho.register.index(label) for label in register]
    t = rho.matrix.reshape([2] * (2 * n))
    t = t.transpose(perm + [p + n for p in perm])
    return t.reshape(2**n, 2**n)


class MeasurementBranch(NamedTuple):
    """One projective outcome: Born probability and normalized post-state.

    `state` is None when probability < PROB_FLOOR (post-state undefined).
    """

    probability: float
    state: "PureState | None"


def basis_state(register: Sequence[Label], bits: Union[str, int]) -> PureState:
    """Computational basis ket, bits given big-endian over the register order."""
    register = tuple(register)
    if isinstance(bits, str):
        if len(bits) != len(register) or set(bits) - {"0", "1"}:
            raise ValueError(f"bit string {bits!r} does not match register {register}")
        index = int(bits, 2) if bits else 0
    else:
        index = int(bits)
    amps = np.zeros(2 ** len(register), dtype=complex)
    amps[index] = 1.0
    return PureState(register, amps)


def qubit_state(alpha: complex, beta: complex, label: Label = X) -> PureState:
    """Single-qubit ket alpha|0> + beta|1>."""
    return PureState((label,), np.array([alpha, beta], dtype=complex))


def is_unitary(u: np.ndarray, atol: float = ATOL) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= atol)


def tensor_product(a: PureState, b: PureState) -> PureState:
    """Joint state over the concatenated register (a first)."""
    overlap = set(a.register) & set(b.register)
    if overlap:
        raise ValueError(f"duplicate qubit label: {sorted(overlap)}")
    return PureState(a.register + b.register, np.kron(a.amplitudes, b.amplitudes))


def apply_unitary(state: PureState, u: np.ndarray, targets: Sequence[Label]) -> PureState:
    """Apply `u` to the target sub-register, identity elsewhere."""
    targets = tuple(targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate qubit label in targets {targets}")
    axes = [state.axis(label) for label in targets]
    k = len(targets)
    u = np.asarray(u, dtype=complex)
    if u.shape != (2**k, 2**k):
        raise ValueError(f"unitary of shape {u.shape} does not fit {k} target qubit(s)")
    if not is_unitary(u):
        raise ValueError("matrix is not unitary")
    psi = state.amplitudes.reshape([2] * state.n_qubits)
    psi = np.moveaxis(psi, axes, range(k))
    shape = psi.shape
    psi = u @ psi.reshape(2**k, -1)
    psi = np.moveaxis(psi.reshape(shape), range(k), axes)
    return PureState(state.register, psi.reshape(-1))


def partial_trace(state: Union[PureState, DensityMatrix], keep: Sequence[Label]) -> DensityMatrix:
    """Reduced density matrix on `keep` (in the order given), tracing out the rest."""
    keep = tuple(keep)
    if not keep:
        raise ValueError("keep set must be non-empty")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate qubit label in keep {keep}")
    if isinstance(state, PureState):
        axes = [state.axis(label) for label in keep]
        k = len(keep)
        psi = state.amplitudes.reshape([2] * state.n_qubits)
        m = np.moveaxis(psi, axes, range(k)).reshape(2**k, -1)
        return DensityMatrix(keep, m @ m.conj().T)
    n = state.n_qubits
    axes = [state.register.index(label) if label in state.register else -1 for label in keep]
    if -1 in axes:
        missing = keep[axes.index(-1)]
        raise ValueError(f"unknown label {missing!r} in register {state.register}")
    letters = "abcdefghijklmnop"
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for ax in range(n):
        if ax not in axes:
            col[ax] = row[ax]
    out = "".join(row[ax] for ax in axes) + "".join(col[ax] for ax in axes)
    spec = "".join(row) + "".join(col) + "->" + out
    k = len(keep)
    reduced = np.einsum(spec, state.matrix.reshape([2] * (2 * n)))
    return DensityMatrix(keep, reduced.reshape(2**k, 2**k))


def measure_in_basis(
    state: PureState, basis: Iterable[PureState], targets: Sequence[Label]
) -> list[MeasurementBranch]:
    """Project the target qubits onto an orthonormal basis.

    Returns one branch per basis element, in basis order: the Born probability
    and the normalized post-measurement state of the remaining register
    (phase-fixed; None when the probability is below PROB_FLOOR). The basis
    must be orthonormal and span the full target subspace.
    """
    targets = tuple(targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate qubit label in targets {targets}")
    axes = [state.axis(label) for label in targets]
    k = len(targets)
    dim = 2**k

    rows = []
    for element in basis:
        if sorted(element.register) != sorted(targets):
            raise ValueError(
                f"basis element register {element.register} does not match targets {targets}"
            )
        rows.append(element.reorder(targets).amplitudes)
    b = np.array(rows)
    if b.shape[0] != dim:
        raise ValueError(f"basis has {b.shape[0]} elements, needs {dim} to span the subspace")
    if np.max(np.abs(b @ b.conj().T - np.eye(dim))) > ATOL:
        raise ValueError("basis not orthonormal")

    remaining = tuple(label for label in state.register if label not in targets)
    psi = state.amplitudes.reshape([2] * state.n_qubits)
    m = np.moveaxis(psi, axes, range(k)).reshape(dim, -1)
    projected = b.conj() @ m

    branches = []
    for row in projected:
        probability = float(np.real(np.vdot(row, row)))
        if probability < PROB_FLOOR:
            branches.append(MeasurementBranch(probability, None))
        else:
            post = PureState(remaining, row / np.sqrt(probability)).with_phase_convention()
            branches.append(MeasurementBranch(probability, post))
    return branches


def fidelity(rho: DensityMatrix, phi: PureState) -> float:
    """<phi|rho|phi> for a pure target, clamped to [0,1] only near the bounds."""
    if phi.register != rho.register:
        if sorted(phi.register) == sorted(rho.register):
            phi = phi.reorder(rho.register)
        else:
            raise ValueError(f"register mismatch: {rho.register} vs {phi.register}")
    value = complex(phi.amplitudes.conj() @ rho.matrix @ phi.amplitudes)
    if abs(value.imag) > ATOL:
        raise ValueError(f"fidelity has a non-real value {value}")
    f = value.real
    if -EIGVAL_ATOL <= f < 0.0:
        return 0.0
    if 1.0 < f <= 1.0 + EIGVAL_ATOL:
        return 1.0
    return f

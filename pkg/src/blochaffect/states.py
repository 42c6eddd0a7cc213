"""Pure states, ensembles, density matrices, and Bloch-ball geometry.

Everything here is exact dense linear algebra on a handful of qubits.
Values are immutable after construction and safe to share across tasks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 8            # desk scale; rejects accidental exponential blowup
ATOL = 1e-9               # construction / validation tolerance
ATOL_DERIVED = 1e-8       # derived equalities
ATOL_PURITY_LENGTH = 1e-6  # purity <-> Bloch-length equivalence


def _complex_vector(values, size: int | None = None) -> np.ndarray:
    vec = np.asarray(values, dtype=complex).reshape(-1)
    if size is not None and vec.size != size:
        raise ValueError(f"expected {size} amplitudes, got {vec.size}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("amplitudes must be finite")
    return vec


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized complex amplitude vector over ``n_qubits``.

    Basis indices read the ket label left to right, so the leftmost
    symbol is qubit 0 and the most significant bit (|10> is index 2).
    """

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.n_qubits, int) or not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be an integer in [1, {MAX_QUBITS}]")
        amps = _complex_vector(self.amplitudes, 2 ** self.n_qubits)
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > ATOL:
            raise ValueError(f"state not normalized: sum |a_i|^2 = {norm_sq!r}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def ket_label(self, index: int) -> str:
        return format(index, f"0{self.n_qubits}b")


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Statistical mixture of pure states with probability weights."""

    members: tuple[tuple[float, PureState], ...]

    def __post_init__(self) -> None:
        members = tuple((float(w), s) for w, s in self.members)
        if not members:
            raise ValueError("ensemble must have at least one member")
        sizes = {s.n_qubits for _, s in members}
        if len(sizes) != 1:
            raise ValueError("all ensemble members must have the same n_qubits")
        for w, _ in members:
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"weight {w!r} outside [0, 1]")
        total = sum(w for w, _ in members)
        if abs(total - 1.0) > ATOL:
            raise ValueError(f"weights must sum to 1, got {total!r}")
        object.__setattr__(self, "members", members)

    @property
    def n_qubits(self) -> int:
        return self.members[0][1].n_qubits


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    dim: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.dim < 2 or self.dim & (self.dim - 1):
            raise ValueError("dim must be a power of two, at least 2")
        mat = np.asarray(self.entries, dtype=complex)
        if mat.shape != (self.dim, self.dim):
            raise ValueError(f"entries must be {self.dim}x{self.dim}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("entries must be finite")
        if not np.allclose(mat, mat.conj().T, atol=ATOL, rtol=0.0):
            raise ValueError("density matrix must be Hermitian")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > ATOL:
            raise ValueError(f"density matrix must have trace 1, got {trace!r}")
        if float(np.min(np.linalg.eigvalsh(mat))) < -ATOL:
            raise ValueError("density matrix must be positive semidefinite")
        object.__setattr__(self, "entries", _frozen(mat))


@dataclass(frozen=True)
class BlochVector:
    """Point in the unit ball; surface points are pure states."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for v in (self.x, self.y, self.z):
            if not math.isfinite(v):
                raise ValueError("Bloch components must be finite")
        if self.length > 1.0 + ATOL:
            raise ValueError(f"Bloch vector length {self.length!r} exceeds 1")

    @property
    def length(self) -> float:
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)

    @property
    def theta(self) -> float:
        """Polar angle in [0, pi]; 0 at the origin by convention."""
        r = self.length
        if r == 0.0:
            return 0.0
        return math.acos(min(1.0, max(-1.0, self.z / r)))

    @property
    def phi(self) -> float:
        """Azimuth in [0, 2*pi); 0 whenever the xy-projection vanishes."""
        p = math.atan2(self.y, self.x)
        return p + 2.0 * math.pi if p < 0.0 else p


def basis_state(n_qubits: int, index: int) -> PureState:
    """Computational basis ket |index> on ``n_qubits`` qubits."""
    if not isinstance(index, int) or not 0 <= index < 2 ** n_qubits:
        raise ValueError(f"basis index {index!r} out of range for {n_qubits} qubit(s)")
    amps = np.zeros(2 ** n_qubits, dtype=complex)
    amps[index] = 1.0
    return PureState(n_qubits, amps)


def pure_from_angles(theta: float, phi: float) -> PureState:
    """Single-qubit surface point (cos(theta/2), e^{i*phi} sin(theta/2))."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta {theta!r} outside [0, pi]")
    if not 0.0 <= phi < 2.0 * math.pi:
        raise ValueError(f"phi {phi!r} outside [0, 2*pi)")
    amps = np.array(
        [math.cos(theta / 2.0), np.exp(1j * phi) * math.sin(theta / 2.0)],
        dtype=complex,
    )
    return PureState(1, amps)


def inner_product(bra_of: PureState, ket: PureState) -> complex:
    """<bra_of|ket>, conjugating the first argument."""
    if bra_of.n_qubits != ket.n_qubits:
        raise ValueError("inner product requires equal qubit counts")
    return complex(np.vdot(bra_of.amplitudes, ket.amplitudes))


def tensor(a: PureState, b: PureState) -> PureState:
    """Kronecker product; ``a`` supplies the most significant qubits."""
    n = a.n_qubits + b.n_qubits
    if n > MAX_QUBITS:
        raise ValueError(f"combined register of {n} qubits exceeds the {MAX_QUBITS}-qubit cap")
    return PureState(n, np.kron(a.amplitudes, b.amplitudes))


def density_from_pure(state: PureState) -> DensityMatrix:
    """Rank-1 projector |psi><psi|."""
    amps = state.amplitudes
    return DensityMatrix(state.dim, np.outer(amps, amps.conj()))


def mix(ensemble: Ensemble) -> DensityMatrix:
    """Weighted sum of member projectors."""
    dim = 2 ** ensemble.n_qubits
    rho = np.zeros((dim, dim), dtype=complex)
    for weight, state in ensemble.members:
        rho += weight * np.outer(state.amplitudes, state.amplitudes.conj())
    return DensityMatrix(dim, rho)


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2): 1 for pure states, 1/dim for the maximally mixed state."""
    return float(np.real(np.trace(rho.entries @ rho.entries)))


def eigen2(rho: DensityMatrix) -> tuple[tuple[float, float], tuple[PureState, PureState]]:
    """Closed-form spectral decomposition of a 2x2 density matrix.

    Returns eigenvalues in descending order with matching orthonormal
    eigenvectors.
    """
    if rho.dim != 2:
        raise ValueError("eigen2 is defined for single-qubit density matrices only")
    a = float(np.real(rho.entries[0, 0]))
    d = float(np.real(rho.entries[1, 1]))
    b = complex(rho.entries[0, 1])
    half_gap = math.sqrt(max(((a - d) / 2.0) ** 2 + abs(b) ** 2, 0.0))
    mean = (a + d) / 2.0
    lam_hi, lam_lo = mean + half_gap, mean - half_gap
    if abs(b) < 1e-15:
        # Already diagonal; eigenvectors are the basis kets.
        hi, lo = (0, 1) if a >= d else (1, 0)
        vecs = (basis_state(1, hi), basis_state(1, lo))
    else:
        v_hi = np.array([b, lam_hi - a], dtype=complex)
        v_lo = np.array([b, lam_lo - a], dtype=complex)
        vecs = (
            PureState(1, v_hi / np.linalg.norm(v_hi)),
            PureState(1, v_lo / np.linalg.norm(v_lo)),
        )
    return (lam_hi, lam_lo), vecs


def bloch_from_pure(state: PureState) -> BlochVector:
    """Surface point of a single-qubit pure state; global phase drops out."""
    if state.n_qubits != 1:
        raise ValueError("Bloch coordinates require a single qubit")
    alpha, beta = state.amplitudes
    cross = np.conj(alpha) * beta
    return BlochVector(
        2.0 * float(np.real(cross)),
        2.0 * float(np.imag(cross)),
        float(abs(alpha) ** 2 - abs(beta) ** 2),
    )


def bloch_from_density(rho: DensityMatrix) -> BlochVector:
    """Ball point (Tr(rho X), Tr(rho Y), Tr(rho Z)); interior means mixed."""
    if rho.dim != 2:
        raise ValueError("Bloch coordinates require a single qubit")
    off = complex(rho.entries[0, 1])
    return BlochVector(
        2.0 * off.real,
        -2.0 * off.imag,
        float(np.real(rho.entries[0, 0] - rho.entries[1, 1])),
    )


def reduced_qubit_density(state: PureState, qubit: int) -> DensityMatrix:
    """Partial trace of a register down to one qubit."""
    n = state.n_qubits
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit!r} out of range")
    psi = state.amplitudes.reshape((2,) * n)
    m = np.moveaxis(psi, qubit, 0).reshape(2, -1)
    return DensityMatrix(2, m @ m.conj().T)

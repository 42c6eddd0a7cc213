"""Gate library, circuit execution, and Born-rule measurement.

Gates and circuits are immutable and shareable; ``RandomSource`` is
single-owner mutable state (use one instance per concurrent task).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import ATOL, MAX_QUBITS, PureState, basis_state

_SQRT2_INV = 1.0 / math.sqrt(2.0)

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV
# Square root of NOT: V @ V equals X.
_V = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)
_VDAG = _V.conj().T
_CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=complex,
)
_CV = np.block(
    [[np.eye(2, dtype=complex), np.zeros((2, 2), dtype=complex)],
     [np.zeros((2, 2), dtype=complex), _V]]
)

STANDARD_GATE_NAMES = ("X", "H", "V", "Vdag", "CNOT", "CV")
ROTATION_GATE_NAMES = ("Rx", "Ry", "Rz")


@dataclass(frozen=True, eq=False)
class Gate:
    """Named unitary acting on ``arity`` qubits."""

    name: str
    arity: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        if self.arity not in (1, 2):
            raise ValueError("gate arity must be 1 or 2")
        mat = np.asarray(self.matrix, dtype=complex)
        dim = 2 ** self.arity
        if mat.shape != (dim, dim):
            raise ValueError(f"gate {self.name!r} matrix must be {dim}x{dim}")
        if not np.allclose(mat.conj().T @ mat, np.eye(dim), atol=ATOL, rtol=0.0):
            raise ValueError(f"gate {self.name!r} is not unitary")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)


_STANDARD = {
    "X": Gate("X", 1, _X),
    "H": Gate("H", 1, _H),
    "V": Gate("V", 1, _V),
    "Vdag": Gate("Vdag", 1, _VDAG),
    "CNOT": Gate("CNOT", 2, _CNOT),
    "CV": Gate("CV", 2, _CV),
}


def standard_gate(name: str) -> Gate:
    """Fixed gate by name; controlled gates treat targets[0] as the control."""
    try:
        return _STANDARD[name]
    except KeyError:
        raise ValueError(f"unknown gate {name!r}; expected one of {STANDARD_GATE_NAMES}") from None


def rotation_gate(axis: str, angle: float) -> Gate:
    """Bloch rotation by ``angle`` radians about the x, y, or z axis."""
    angle = float(angle)
    if not math.isfinite(angle):
        raise ValueError("rotation angle must be finite")
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    if axis == "x":
        mat = np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    elif axis == "y":
        mat = np.array([[c, -s], [s, c]], dtype=complex)
    elif axis == "z":
        mat = np.array([[np.exp(-0.5j * angle), 0], [0, np.exp(0.5j * angle)]], dtype=complex)
    else:
        raise ValueError(f"unknown rotation axis {axis!r}")
    return Gate(f"R{axis}", 1, mat)


@dataclass(frozen=True, eq=False)
class Circuit:
    """Ordered gate applications on a fixed-width register."""

    n_qubits: int
    steps: tuple[tuple[Gate, tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}]")
        steps = tuple((gate, tuple(int(t) for t in targets)) for gate, targets in self.steps)
        for gate, targets in steps:
            _check_targets(gate, targets, self.n_qubits)
        object.__setattr__(self, "steps", steps)


def _check_targets(gate: Gate, targets: tuple[int, ...], n_qubits: int) -> None:
    if len(targets) != gate.arity:
        raise ValueError(f"gate {gate.name!r} needs {gate.arity} target(s), got {len(targets)}")
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate targets {targets}")
    for t in targets:
        if not 0 <= t < n_qubits:
            raise ValueError(f"target {t} out of range for {n_qubits} qubit(s)")


def apply_gate(state: PureState, gate: Gate, targets) -> PureState:
    """Embed ``gate`` on the target qubits of the register.

    Targets are register positions (0 = leftmost); for controlled gates
    targets[0] is the control and targets[1] the target.
    """
    targets = tuple(int(t) for t in targets)
    _check_targets(gate, targets, state.n_qubits)
    n = state.n_qubits
    psi = state.amplitudes.reshape((2,) * n)
    op = gate.matrix.reshape((2,) * (2 * gate.arity))
    psi = np.tensordot(op, psi, axes=(tuple(range(gate.arity, 2 * gate.arity)), targets))
    psi = np.moveaxis(psi, tuple(range(gate.arity)), targets)
    amps = psi.reshape(-1)
    return PureState(n, amps / np.linalg.norm(amps))


def run_circuit(circuit: Circuit, input_state: PureState) -> PureState:
    """Left-fold of apply_gate over the circuit's steps."""
    if input_state.n_qubits != circuit.n_qubits:
        raise ValueError("input register width does not match the circuit")
    state = input_state
    for gate, targets in circuit.steps:
        state = apply_gate(state, gate, targets)
    return state


def epr_circuit() -> Circuit:
    """Two-qubit entangler: H on qubit 0, then CNOT from 0 to 1."""
    return Circuit(2, ((standard_gate("H"), (0,)), (standard_gate("CNOT"), (0, 1))))


def epr_map(input_state: PureState) -> PureState:
    """Bell state for a two-qubit computational basis input."""
    if input_state.n_qubits != 2:
        raise ValueError("epr_map expects a two-qubit register")
    mags = np.abs(input_state.amplitudes)
    hot = int(np.argmax(mags))
    rest = np.delete(mags, hot)
    if abs(input_state.amplitudes[hot] - 1.0) > ATOL or np.any(rest > ATOL):
        raise ValueError("epr_map expects a computational basis state; run the circuit directly instead")
    return run_circuit(epr_circuit(), input_state)


def probabilities(state: PureState) -> dict[int, float]:
    """Born distribution over basis indices; entries below 1e-12 are dropped."""
    probs = np.abs(state.amplitudes) ** 2
    return {int(i): float(p) for i, p in enumerate(probs) if p > 1e-12}


RNG_ALGORITHM = "pcg64"  # numpy PCG64 bit generator, fixed for reproducibility


class RandomSource:
    """Seeded deterministic uniform stream; identical seeds replay identically."""

    __slots__ = ("seed", "algorithm", "_gen")

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self.algorithm = RNG_ALGORITHM
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def uniform(self) -> float:
        """Next double in [0, 1)."""
        return float(self._gen.random())

    def uniforms(self, n: int) -> np.ndarray:
        """Next ``n`` doubles in [0, 1)."""
        return self._gen.random(int(n))


@dataclass(frozen=True, eq=False)
class MeasurementOperator:
    """Observable given by outcome values on a complete orthonormal basis."""

    dim: int
    outcomes: tuple[tuple[float, PureState], ...]

    def __post_init__(self) -> None:
        outcomes = tuple((float(v), s) for v, s in self.outcomes)
        if len(outcomes) != self.dim:
            raise ValueError("outcomes must form a complete basis (one per dimension)")
        if any(s.dim != self.dim for _, s in outcomes):
            raise ValueError("outcome states must match the operator dimension")
        basis = np.array([s.amplitudes for _, s in outcomes])
        if basis.shape != (self.dim, self.dim):
            raise ValueError("outcome states must match the operator dimension")
        gram = basis.conj() @ basis.T
        if not np.allclose(gram, np.eye(self.dim), atol=ATOL, rtol=0.0):
            raise ValueError("outcome states must be orthonormal")
        object.__setattr__(self, "outcomes", outcomes)


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    """One collapse event: sampled outcome, its Born probability, post state."""

    outcome_index: int
    value: float
    probability: float
    post_state: PureState


def _pick(cumulative: np.ndarray, u: float) -> int:
    # Zero-probability outcomes have empty intervals and are never drawn.
    return int(np.searchsorted(cumulative, u, side="right"))


def measure_qubit(state: PureState, qubit: int, rng: RandomSource) -> MeasurementRecord:
    """Computational-basis measurement of one qubit with collapse."""
    n = state.n_qubits
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit!r} out of range")
    psi = state.amplitudes.reshape((2,) * n)
    marginal = np.sum(np.abs(psi) ** 2, axis=tuple(i for i in range(n) if i != qubit))
    p0 = float(marginal[0])
    outcome = 0 if rng.uniform() < p0 else 1
    prob = p0 if outcome == 0 else float(marginal[1])
    keep = [slice(None)] * n
    keep[qubit] = 1 - outcome
    post = psi.copy()
    post[tuple(keep)] = 0.0
    post = post.reshape(-1) / math.sqrt(prob)
    return MeasurementRecord(outcome, float(outcome), prob, PureState(n, post))


def measure_operator(state: PureState, operator: MeasurementOperator, rng: RandomSource) -> MeasurementRecord:
    """Sample an operator outcome per the Born rule; collapses to its basis state."""
    if state.dim != operator.dim:
        raise ValueError("state and operator dimensions differ")
    probs = np.array([abs(np.vdot(s.amplitudes, state.amplitudes)) ** 2 for _, s in operator.outcomes])
    cum = np.cumsum(probs)
    cum /= cum[-1]
    k = _pick(cum, rng.uniform())
    value, post = operator.outcomes[k]
    return MeasurementRecord(k, value, float(probs[k]), post)


def sample_outcome_values(state: PureState, operator: MeasurementOperator, shots: int, rng: RandomSource) -> np.ndarray:
    """Vectorized Born sampling of operator outcome values."""
    if state.dim != operator.dim:
        raise ValueError("state and operator dimensions differ")
    probs = np.array([abs(np.vdot(s.amplitudes, state.amplitudes)) ** 2 for _, s in operator.outcomes])
    cum = np.cumsum(probs)
    cum /= cum[-1]
    idx = np.searchsorted(cum, rng.uniforms(shots), side="right")
    values = np.array([v for v, _ in operator.outcomes])
    return values[idx]


def sample_register(state: PureState, shots: int, rng: RandomSource) -> dict[int, int]:
    """Full-register Born sampling; returns basis index -> count.

    Equivalent to measuring every qubit of each shot in order; indices
    with zero probability can never appear.
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    probs = np.abs(state.amplitudes) ** 2
    cum = np.cumsum(probs)
    cum /= cum[-1]
    idx = np.searchsorted(cum, rng.uniforms(shots), side="right")
    values, counts = np.unique(idx, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def expectation(state: PureState, operator: MeasurementOperator) -> float:
    """<M> = sum_k |<k|psi>|^2 m_k."""
    if state.dim != operator.dim:
        raise ValueError("state and operator dimensions differ")
    total = 0.0
    for value, outcome_state in operator.outcomes:
        total += value * abs(np.vdot(outcome_state.amplitudes, state.amplitudes)) ** 2
    return float(total)


def zaxis_operator() -> MeasurementOperator:
    """+1 on |0>, -1 on |1>."""
    return MeasurementOperator(2, ((1.0, basis_state(1, 0)), (-1.0, basis_state(1, 1))))


def circuit_from_json(doc) -> Circuit:
    """Parse ``{"qubits": N, "ops": [{"gate", "targets", "angle"?}]}``."""
    if not isinstance(doc, dict):
        raise ValueError("circuit document must be a JSON object")
    qubits = doc.get("qubits")
    if not isinstance(qubits, int) or not 1 <= qubits <= MAX_QUBITS:
        raise ValueError(f'"qubits" must be an integer in [1, {MAX_QUBITS}]')
    ops = doc.get("ops", [])
    if not isinstance(ops, list):
        raise ValueError('"ops" must be a list')
    steps = []
    for i, op in enumerate(ops):
        if not isinstance(op, dict):
            raise ValueError(f"op {i} must be an object")
        name = op.get("gate")
        targets = op.get("targets")
        if not isinstance(targets, list) or not all(isinstance(t, int) for t in targets):
            raise ValueError(f"op {i}: \"targets\" must be a list of qubit indices")
        if name in _STANDARD:
            if "angle" in op:
                raise ValueError(f"op {i}: gate {name!r} takes no angle")
            gate = standard_gate(name)
        elif name in ROTATION_GATE_NAMES:
            angle = op.get("angle")
            if not isinstance(angle, (int, float)) or isinstance(angle, bool):
                raise ValueError(f"op {i}: gate {name!r} requires a numeric angle")
            gate = rotation_gate(name[1].lower(), float(angle))
        else:
            raise ValueError(f"op {i}: unknown gate {name!r}")
        steps.append((gate, tuple(targets)))
    return Circuit(qubits, tuple(steps))

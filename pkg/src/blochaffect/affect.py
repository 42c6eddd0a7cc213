"""Psychological semantics of the qubit axes and the appraisal circuits.

Axis meaning: the x expectation is reflection depth (deep vs shallow
thought), the y expectation is valence (upbeat vs down), and the z
expectation is the processing balance between the fast affective lane
(+1, the |0> pole) and the slow reflective lane (-1, the |1> pole).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .gates import (
    Circuit,
    MeasurementOperator,
    PureState,
    epr_map,
    expectation,
    probabilities,
    run_circuit,
    standard_gate,
)
from .states import ATOL, basis_state, pure_from_angles, tensor

_SQRT2_INV = 1.0 / math.sqrt(2.0)


def _ket(coeff0: complex, coeff1: complex) -> PureState:
    return PureState(1, np.array([coeff0, coeff1], dtype=complex))


PLUS_X = _ket(_SQRT2_INV, _SQRT2_INV)           # deep reflection
MINUS_X = _ket(_SQRT2_INV, -_SQRT2_INV)         # shallow reflection
PLUS_Y = _ket(_SQRT2_INV, 1j * _SQRT2_INV)      # positive valence
MINUS_Y = _ket(_SQRT2_INV, -1j * _SQRT2_INV)    # negative valence
# Half-satisfied output of a single controlled square-root-of-NOT.
IN_DOUBT_STATE = _ket(0.5 + 0.5j, 0.5 - 0.5j)


class ActionTendency(Enum):
    DO_NOTHING = "DoNothing"
    NEGATIVE_APPROACH = "NegativeApproach"
    POSITIVE_APPROACH = "PositiveApproach"
    AVOID = "Avoid"

    @property
    def description(self) -> str:
        return _TENDENCY_TEXT[self]


_TENDENCY_TEXT = {
    ActionTendency.DO_NOTHING: "Do nothing, sit still",
    ActionTendency.NEGATIVE_APPROACH: "Negative approach",
    ActionTendency.POSITIVE_APPROACH: "Positive approach",
    ActionTendency.AVOID: "Avoid",
}

# Tendency is keyed on the trait pair: (0,1) and (1,0) share the output
# bit but differ in tendency.
TRAIT_TENDENCIES = {
    (0, 0): ActionTendency.DO_NOTHING,
    (0, 1): ActionTendency.NEGATIVE_APPROACH,
    (1, 0): ActionTendency.POSITIVE_APPROACH,
    (1, 1): ActionTendency.AVOID,
}


class SatisfactionLabel(Enum):
    UNSATISFIED = "Unsatisfied"
    IN_DOUBT = "InDoubt"
    SATISFIED = "Satisfied"

    @property
    def description(self) -> str:
        return {"Unsatisfied": "Unsatisfied", "InDoubt": "In doubt", "Satisfied": "Satisfied"}[self.value]


class ReadoutLabel(Enum):
    DEEP_REFLECTION = "DeepReflection"
    SHALLOW_REFLECTION = "ShallowReflection"
    POSITIVE_VALENCE = "PositiveValence"
    NEGATIVE_VALENCE = "NegativeValence"
    AFFECTIVE = "Affective"
    REFLECTIVE = "Reflective"


@dataclass(frozen=True)
class PsychReadout:
    """Axis expectations plus the relevance split between the two lanes."""

    reflection_depth: float
    valence: float
    processing_balance: float
    relevance_affect: float
    relevance_reflection: float

    def __post_init__(self) -> None:
        for v in (self.reflection_depth, self.valence, self.processing_balance):
            if not -1.0 - ATOL <= v <= 1.0 + ATOL:
                raise ValueError(f"expectation {v!r} outside [-1, 1]")
        for v in (self.relevance_affect, self.relevance_reflection):
            if not -ATOL <= v <= 1.0 + ATOL:
                raise ValueError(f"relevance {v!r} outside [0, 1]")
        if abs(self.relevance_affect + self.relevance_reflection - 1.0) > ATOL:
            raise ValueError("relevance split must sum to 1")
        if abs(self.processing_balance - (self.relevance_affect - self.relevance_reflection)) > ATOL:
            raise ValueError("processing balance must equal the relevance difference")

    def as_dict(self) -> dict[str, float]:
        return {
            "reflection_depth": self.reflection_depth,
            "valence": self.valence,
            "processing_balance": self.processing_balance,
            "relevance_affect": self.relevance_affect,
            "relevance_reflection": self.relevance_reflection,
        }


@dataclass(frozen=True, eq=False)
class AxisOperators:
    """The +-1 measurement operators for the three labeled axes."""

    x_op: MeasurementOperator
    y_op: MeasurementOperator
    z_op: MeasurementOperator


_AXES = AxisOperators(
    x_op=MeasurementOperator(2, ((1.0, PLUS_X), (-1.0, MINUS_X))),
    y_op=MeasurementOperator(2, ((1.0, PLUS_Y), (-1.0, MINUS_Y))),
    z_op=MeasurementOperator(2, ((1.0, basis_state(1, 0)), (-1.0, basis_state(1, 1)))),
)


def axis_operators() -> AxisOperators:
    return _AXES


@dataclass(frozen=True, eq=False)
class SatisfactionVerdict:
    """Satisfaction qubit together with its table label."""

    label: SatisfactionLabel
    state: PureState

    def __post_init__(self) -> None:
        if _satisfaction_label(self.state) is not self.label:
            raise ValueError(f"label {self.label.value!r} inconsistent with the satisfaction state")


def _fidelity(a: PureState, b: PureState) -> float:
    return abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2


def _satisfaction_label(state: PureState) -> SatisfactionLabel:
    for label, ref in (
        (SatisfactionLabel.UNSATISFIED, basis_state(1, 0)),
        (SatisfactionLabel.SATISFIED, basis_state(1, 1)),
        (SatisfactionLabel.IN_DOUBT, IN_DOUBT_STATE),
    ):
        if abs(_fidelity(state, ref) - 1.0) < ATOL:
            return label
    raise ValueError("satisfaction state matches none of the table rows")


def state_from_relevance(relevance_affect: float, phi: float) -> PureState:
    """Surface point whose |0>-weight equals the affective relevance share."""
    if not 0.0 <= relevance_affect <= 1.0:
        raise ValueError(f"relevance {relevance_affect!r} outside [0, 1]")
    theta = 2.0 * math.acos(math.sqrt(relevance_affect))
    return pure_from_angles(theta, phi)


def readout(state: PureState) -> PsychReadout:
    """Axis expectations and relevance split of a single-qubit state."""
    if state.n_qubits != 1:
        raise ValueError("readout requires a single qubit")
    alpha, beta = state.amplitudes
    return PsychReadout(
        reflection_depth=expectation(state, _AXES.x_op),
        valence=expectation(state, _AXES.y_op),
        processing_balance=expectation(state, _AXES.z_op),
        relevance_affect=float(abs(alpha) ** 2),
        relevance_reflection=float(abs(beta) ** 2),
    )


def classify(psych: PsychReadout, threshold: float = 0.25) -> list[ReadoutLabel]:
    """Observable-effect labels for every axis component beyond the threshold."""
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie in (0, 1)")
    labels = []
    if psych.reflection_depth > threshold:
        labels.append(ReadoutLabel.DEEP_REFLECTION)
    elif psych.reflection_depth < -threshold:
        labels.append(ReadoutLabel.SHALLOW_REFLECTION)
    if psych.valence > threshold:
        labels.append(ReadoutLabel.POSITIVE_VALENCE)
    elif psych.valence < -threshold:
        labels.append(ReadoutLabel.NEGATIVE_VALENCE)
    if psych.processing_balance > threshold:
        labels.append(ReadoutLabel.AFFECTIVE)
    elif psych.processing_balance < -threshold:
        labels.append(ReadoutLabel.REFLECTIVE)
    return labels


def _check_bit(name: str, value: int) -> int:
    if value not in (0, 1):
        raise ValueError(f"{name} must be 0 or 1, got {value!r}")
    return int(value)


def traits_circuit() -> Circuit:
    """Good and bad traits each toggle the interaction qubit."""
    cnot = standard_gate("CNOT")
    return Circuit(3, ((cnot, (0, 2)), (cnot, (1, 2))))


def trait_appraisal(good: int, bad: int) -> tuple[int, ActionTendency]:
    """Interaction bit from the two-CNOT circuit plus the tendency for the pair."""
    good = _check_bit("good", good)
    bad = _check_bit("bad", bad)
    reg = tensor(tensor(basis_state(1, good), basis_state(1, bad)), basis_state(1, 0))
    out = run_circuit(traits_circuit(), reg)
    index = int(np.argmax(np.abs(out.amplitudes)))
    if abs(abs(out.amplitudes[index]) - 1.0) > ATOL:
        raise ValueError("trait circuit left the register outside the basis")
    return index & 1, TRAIT_TENDENCIES[(good, bad)]


def satisfaction_circuit() -> Circuit:
    """Involvement and distance each drive a controlled square-root-of-NOT."""
    cv = standard_gate("CV")
    return Circuit(3, ((cv, (0, 2)), (cv, (1, 2))))


def satisfaction(involvement: int, distance: int) -> SatisfactionVerdict:
    """Run the satisfaction circuit and label the resulting qubit."""
    involvement = _check_bit("involvement", involvement)
    distance = _check_bit("distance", distance)
    reg = tensor(tensor(basis_state(1, involvement), basis_state(1, distance)), basis_state(1, 0))
    out = run_circuit(satisfaction_circuit(), reg)
    # Controls stay in the basis, so the satisfaction qubit factors out.
    base = involvement * 4 + distance * 2
    qubit = PureState(1, np.array([out.amplitudes[base], out.amplitudes[base + 1]]))
    return SatisfactionVerdict(_satisfaction_label(qubit), qubit)


def hri_valence(human: int, robot: int) -> tuple[PureState, dict[int, float]]:
    """Entangle the |human robot> valence register and report its outcomes."""
    human = _check_bit("human", human)
    robot = _check_bit("robot", robot)
    entangled = epr_map(basis_state(2, human * 2 + robot))
    return entangled, probabilities(entangled)


def traits_table() -> list[dict]:
    """All four trait rows, regenerated from the circuit."""
    rows = []
    for good in (0, 1):
        for bad in (0, 1):
            interaction, tendency = trait_appraisal(good, bad)
            rows.append(
                {"good": good, "bad": bad, "interaction": interaction, "tendency": tendency}
            )
    return rows


def satisfaction_table() -> list[dict]:
    """All four satisfaction rows, regenerated from the circuit."""
    rows = []
    for involvement in (0, 1):
        for distance in (0, 1):
            verdict = satisfaction(involvement, distance)
            rows.append(
                {
                    "involvement": involvement,
                    "distance": distance,
                    "state": verdict.state,
                    "label": verdict.label,
                }
            )
    return rows


def hri_table() -> list[dict]:
    """All four valence-register rows, regenerated from the entangler."""
    rows = []
    for human in (0, 1):
        for robot in (0, 1):
            entangled, outcomes = hri_valence(human, robot)
            rows.append(
                {"human": human, "robot": robot, "state": entangled, "outcomes": outcomes}
            )
    return rows

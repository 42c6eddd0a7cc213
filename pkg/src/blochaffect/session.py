"""Joystick steering sessions, model trajectories, and path comparison.

A session owns a single steered qubit. Stick deflection rotates the
Bloch vector: the x-channel rotates about y (left-right flight over the
x-axis), the y-channel about x (forward-back over the y-axis), and the
rotation channel about z. Accumulated |rotation| past the threshold
commits a choice (a z-basis collapse).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .gates import MeasurementRecord, RandomSource, apply_gate, measure_qubit, rotation_gate
from .states import BlochVector, PureState, basis_state, bloch_from_pure

OMEGA_DEFAULT = math.pi / 2.0               # rad/s per unit stick deflection
COLLAPSE_THRESHOLD_DEFAULT = math.pi / 2.0  # accumulated |rotation| that commits a choice

HAND_MAPS = ("normal", "swapped")
COLLAPSE_MODES = ("born", "forced")

CSV_HEADER = ("t", "x", "y", "z", "collapsed")


@dataclass(frozen=True)
class JoystickInput:
    """One tick of stick deflection; channels are dimensionless in [-1, 1]."""

    dx: float
    dy: float
    rot: float
    dt: float

    def __post_init__(self) -> None:
        for name, v in (("dx", self.dx), ("dy", self.dy), ("rot", self.rot)):
            if not -1.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [-1, 1], got {v!r}")
        if not self.dt > 0.0:
            raise ValueError(f"dt must be positive, got {self.dt!r}")


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    x: float
    y: float
    z: float
    collapsed: int | None = None

    def __post_init__(self) -> None:
        if math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2) > 1.0 + 1e-9:
            raise ValueError("sample lies outside the Bloch ball")
        if self.collapsed not in (None, 0, 1):
            raise ValueError("collapsed must be empty, 0, or 1")


@dataclass(eq=False)
class SessionState:
    """Steered register plus its recorded flight.

    Owned by exactly one session; message handling must be serialized
    per session (the embedded RandomSource is mutable too). Mutate only
    through session_tick, trigger_collapse, and configure.
    """

    register: PureState
    trajectory: list[TrajectorySample]
    rng: RandomSource
    hand_map: str = "normal"
    collapse_mode: str = "born"
    rot_accumulator: float = 0.0
    rot_net: float = 0.0
    omega: float = OMEGA_DEFAULT
    collapse_threshold: float = COLLAPSE_THRESHOLD_DEFAULT

    def __post_init__(self) -> None:
        _check_hand_map(self.hand_map)
        _check_collapse_mode(self.collapse_mode)
        times = [s.t for s in self.trajectory]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("trajectory timestamps must be strictly increasing")

    @property
    def t(self) -> float:
        return self.trajectory[-1].t if self.trajectory else 0.0


def _check_hand_map(value: str) -> None:
    if value not in HAND_MAPS:
        raise ValueError(f"hand_map must be one of {HAND_MAPS}, got {value!r}")


def _check_collapse_mode(value: str) -> None:
    if value not in COLLAPSE_MODES:
        raise ValueError(f"collapse_mode must be one of {COLLAPSE_MODES}, got {value!r}")


def new_session(
    seed: int = 0,
    *,
    hand_map: str = "normal",
    collapse_mode: str = "born",
    omega: float = OMEGA_DEFAULT,
    collapse_threshold: float = COLLAPSE_THRESHOLD_DEFAULT,
) -> SessionState:
    """Fresh session at the affective pole |0> with one sample at t = 0."""
    register = basis_state(1, 0)
    point = bloch_from_pure(register)
    return SessionState(
        register=register,
        trajectory=[TrajectorySample(0.0, point.x, point.y, point.z)],
        rng=RandomSource(seed),
        hand_map=hand_map,
        collapse_mode=collapse_mode,
        omega=omega,
        collapse_threshold=collapse_threshold,
    )


def configure(
    session: SessionState,
    *,
    hand_map: str | None = None,
    collapse_mode: str | None = None,
    seed: int | None = None,
) -> SessionState:
    """Apply a config change; it takes effect from the next tick."""
    if hand_map is not None:
        _check_hand_map(hand_map)
        session.hand_map = hand_map
    if collapse_mode is not None:
        _check_collapse_mode(collapse_mode)
        session.collapse_mode = collapse_mode
    if seed is not None:
        session.rng = RandomSource(seed)
    return session


def session_tick(session: SessionState, joystick: JoystickInput) -> SessionState:
    """Advance one tick: rotate the register and append a sample.

    Rotations apply in the order Ry (x-channel), Rx (y-channel), Rz
    (rotation channel); with small dt the ordering effect is O(dt^2).
    The swapped hand map exchanges the dx and dy channel effects.
    Zero-deflection channels are skipped so the register stays
    bit-identical under zero input.
    """
    dx, dy = (joystick.dy, joystick.dx) if session.hand_map == "swapped" else (joystick.dx, joystick.dy)
    w, dt = session.omega, joystick.dt
    register = session.register
    if dx != 0.0:
        register = apply_gate(register, rotation_gate("y", w * dx * dt), (0,))
    if dy != 0.0:
        register = apply_gate(register, rotation_gate("x", -w * dy * dt), (0,))
    if joystick.rot != 0.0:
        register = apply_gate(register, rotation_gate("z", w * joystick.rot * dt), (0,))
    point = bloch_from_pure(register)
    session.register = register
    session.trajectory.append(TrajectorySample(session.t + dt, point.x, point.y, point.z))
    session.rot_accumulator += abs(w * joystick.rot * dt)
    session.rot_net += w * joystick.rot * dt
    return session


def trigger_collapse(session: SessionState) -> tuple[SessionState, MeasurementRecord]:
    """Commit the choice once enough rotation has accumulated.

    Born mode samples the z basis; forced mode projects to |0> for net
    counter-clockwise rotation and |1> for net clockwise (ties count as
    counter-clockwise). The newest sample is re-marked with the outcome
    at the post-measurement pole, and the accumulator resets.
    """
    if session.rot_accumulator < session.collapse_threshold:
        raise ValueError(
            f"collapse threshold not reached: {session.rot_accumulator!r} < {session.collapse_threshold!r}"
        )
    if session.collapse_mode == "born":
        record = measure_qubit(session.register, 0, session.rng)
    else:
        outcome = 0 if session.rot_net >= 0.0 else 1
        prob = float(abs(session.register.amplitudes[outcome]) ** 2)
        record = MeasurementRecord(outcome, float(outcome), prob, basis_state(1, outcome))
    point = bloch_from_pure(record.post_state)
    last = session.trajectory[-1]
    session.register = record.post_state
    session.trajectory[-1] = TrajectorySample(last.t, point.x, point.y, point.z, collapsed=record.outcome_index)
    session.rot_accumulator = 0.0
    session.rot_net = 0.0
    return session, record


@dataclass(frozen=True)
class DeviationReport:
    """Angular gap between a model path and a flown path, in radians."""

    mean_dev: float
    max_dev: float
    per_sample: tuple[float, ...]
    n: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.mean_dev <= self.max_dev <= math.pi + 1e-9:
            raise ValueError("deviations must satisfy 0 <= mean <= max <= pi")

    def as_dict(self) -> dict:
        return {"mean_dev": self.mean_dev, "max_dev": self.max_dev, "n": self.n}


def predict_trajectory(script, dt: float) -> list[TrajectorySample]:
    """Sample constant-speed great-circle arcs through the script targets.

    ``script`` is a list of (BlochVector on the surface, duration)
    pairs: each duration is the travel time to the next target, and the
    final duration is dwell at the last target. Sampling starts at the
    first target at t = 0 and steps by dt through the total duration.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    entries = list(script)
    if not entries:
        raise ValueError("script must contain at least one target")
    points, durations = [], []
    for target, duration in entries:
        v = np.array([target.x, target.y, target.z], dtype=float)
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"script target {target} does not lie on the sphere")
        if not duration > 0.0:
            raise ValueError("durations must be positive")
        points.append(v / norm)
        durations.append(float(duration))
    for a, b in zip(points, points[1:]):
        if float(a @ b) < -1.0 + 1e-9:
            raise ValueError("consecutive targets are antipodal; the great circle is not unique")
    starts = np.concatenate(([0.0], np.cumsum(durations)[:-1]))
    total = float(np.sum(durations))
    samples = []
    n_steps = int(math.floor(total / dt + 1e-9))
    for i in range(n_steps + 1):
        t = i * dt
        seg = min(int(np.searchsorted(starts, t, side="right")) - 1, len(entries) - 1)
        if seg == len(entries) - 1:
            pos = points[-1]  # trailing dwell at the final target
        else:
            u = (t - starts[seg]) / durations[seg]
            pos = _slerp(points[seg], points[seg + 1], min(u, 1.0))
        samples.append(TrajectorySample(t, float(pos[0]), float(pos[1]), float(pos[2])))
    return samples


def _slerp(p: np.ndarray, q: np.ndarray, u: float) -> np.ndarray:
    angle = math.acos(min(1.0, max(-1.0, float(p @ q))))
    if angle < 1e-12:
        return p
    return (math.sin((1.0 - u) * angle) * p + math.sin(u * angle) * q) / math.sin(angle)


def _angular_gap(a: np.ndarray, b: np.ndarray) -> float:
    la, lb = float(np.linalg.norm(a)), float(np.linalg.norm(b))
    if la < 1e-12 or lb < 1e-12:
        # Degenerate vectors: map chord length through the unit-sphere angle.
        d = float(np.linalg.norm(a - b))
        return math.acos(min(1.0, max(-1.0, 1.0 - d * d / 2.0)))
    return math.acos(min(1.0, max(-1.0, float(a @ b) / (la * lb))))


def compare_trajectories(model, human) -> DeviationReport:
    """Per-sample angular deviation after nearest-neighbor resampling.

    Human samples are resampled onto the model timestamps (nearest
    timestamp; earlier sample wins ties).
    """
    model = list(model)
    human = list(human)
    if not model or not human:
        raise ValueError("both trajectories must be non-empty")
    human_t = np.array([s.t for s in human])
    human_v = np.array([[s.x, s.y, s.z] for s in human])
    devs = []
    for sample in model:
        j = int(np.searchsorted(human_t, sample.t))
        if j >= len(human_t):
            j = len(human_t) - 1
        elif j > 0 and sample.t - human_t[j - 1] <= human_t[j] - sample.t:
            j -= 1
        devs.append(_angular_gap(np.array([sample.x, sample.y, sample.z]), human_v[j]))
    per_sample = tuple(devs)
    return DeviationReport(float(np.mean(per_sample)), float(np.max(per_sample)), per_sample, len(per_sample))


def write_trajectory_csv(samples, stream) -> None:
    """Rows of ``t,x,y,z,collapsed`` with full float precision."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in samples:
        collapsed = "" if s.collapsed is None else str(s.collapsed)
        writer.writerow([f"{s.t:.17g}", f"{s.x:.17g}", f"{s.y:.17g}", f"{s.z:.17g}", collapsed])


def trajectory_csv_text(samples) -> str:
    buffer = io.StringIO()
    write_trajectory_csv(samples, buffer)
    return buffer.getvalue()


def read_trajectory_csv(stream) -> list[TrajectorySample]:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
        raise ValueError(f"trajectory CSV must start with header {','.join(CSV_HEADER)!r}")
    samples = []
    for row in reader:
        if not row:
            continue
        if len(row) != 5:
            raise ValueError(f"trajectory row must have 5 fields, got {row!r}")
        t, x, y, z, collapsed = row
        samples.append(
            TrajectorySample(
                float(t), float(x), float(y), float(z),
                None if collapsed.strip() == "" else int(collapsed),
            )
        )
    return samples


def script_from_json(doc) -> list[tuple[BlochVector, float]]:
    """Parse ``{"targets": [{"x", "y", "z", "duration"}, ...]}``."""
    if not isinstance(doc, dict) or not isinstance(doc.get("targets"), list):
        raise ValueError('script document must be an object with a "targets" list')
    script = []
    for i, raw in enumerate(doc["targets"]):
        if not isinstance(raw, dict):
            raise ValueError(f"target {i} must be an object")
        try:
            point = BlochVector(float(raw["x"]), float(raw["y"]), float(raw["z"]))
            duration = float(raw["duration"])
        except KeyError as missing:
            raise ValueError(f"target {i} is missing {missing}") from None
        script.append((point, duration))
    return script

"""Behavioral state-transition networks with gate-labeled arcs.

Arcs carry either a gate name (applied to the leading qubits of the
network's register) or ``"noop"``, which leaves the register untouched.
A state is dangerous when it can sit on no-op transitions forever while
an already-too-high metric has no chance of changing.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations

from .gates import standard_gate, apply_gate
from .states import PureState, basis_state

NOOP = "noop"

DIMENSIONS = frozenset(
    {"Ethics", "Engagement", "UseIntentions", "AffectiveInteraction", "ReflectiveIntervention", "Idle"}
)

BUNDLED_NETWORKS = ("concurrent_appraisal", "affect_regulation", "affect_regulation_duplicate")


@dataclass(frozen=True)
class NetworkNode:
    id: str
    label: str
    active_dimensions: frozenset[str] = frozenset()
    metrics: tuple[tuple[str, float], ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("node id must be non-empty")
        unknown = set(self.active_dimensions) - DIMENSIONS
        if unknown:
            raise ValueError(f"unknown dimensions {sorted(unknown)} on node {self.id!r}")
        object.__setattr__(self, "metrics", tuple((str(k), float(v)) for k, v in dict(self.metrics).items()))

    def metric(self, name: str) -> float | None:
        for key, value in self.metrics:
            if key == name:
                return value
        return None


@dataclass(frozen=True)
class TransitionArc:
    source: str
    target: str
    operator: str = NOOP
    guard: str | None = None


@dataclass(frozen=True, eq=False)
class TransitionNetwork:
    nodes: tuple[NetworkNode, ...]
    arcs: tuple[TransitionArc, ...]
    start: str
    end: str | None = None
    register: PureState = basis_state(1, 0)

    def __post_init__(self) -> None:
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise ValueError("node ids must be unique")
        known = set(ids)
        for arc in self.arcs:
            if arc.source not in known or arc.target not in known:
                raise ValueError(f"arc {arc.source!r} -> {arc.target!r} references unknown nodes")
            if arc.operator != NOOP:
                gate = standard_gate(arc.operator)
                if gate.arity > self.register.n_qubits:
                    raise ValueError(
                        f"operator {arc.operator!r} needs {gate.arity} qubits but the register has "
                        f"{self.register.n_qubits}"
                    )
        if self.start not in known:
            raise ValueError(f"start node {self.start!r} does not exist")
        if self.end is not None and self.end not in known:
            raise ValueError(f"end node {self.end!r} does not exist")

    def node(self, node_id: str) -> NetworkNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise ValueError(f"no node {node_id!r}")

    def arcs_from(self, node_id: str) -> tuple[TransitionArc, ...]:
        return tuple(a for a in self.arcs if a.source == node_id)


@dataclass(frozen=True)
class DangerReport:
    flagged: tuple[tuple[str, str], ...]

    @property
    def flagged_ids(self) -> tuple[str, ...]:
        return tuple(node_id for node_id, _ in self.flagged)


def step(
    network: TransitionNetwork,
    current: str,
    arc: TransitionArc,
    register: PureState | None = None,
    satisfied_guards: set[str] | None = None,
) -> tuple[str, PureState]:
    """Follow one arc, returning the next node and the transformed register.

    ``satisfied_guards=None`` means the caller vouches for all guards;
    pass a set to have guarded arcs rejected when absent. Gate operators
    act on the leading qubits of the register; ``"noop"`` returns the
    register bit-identical.
    """
    if arc not in network.arcs:
        raise ValueError("arc does not belong to this network")
    if arc.source != current:
        raise ValueError(f"arc leaves {arc.source!r}, not the current node {current!r}")
    if arc.guard is not None and satisfied_guards is not None and arc.guard not in satisfied_guards:
        raise ValueError(f"guard {arc.guard!r} not satisfied")
    reg = network.register if register is None else register
    if arc.operator == NOOP:
        return arc.target, reg
    gate = standard_gate(arc.operator)
    return arc.target, apply_gate(reg, gate, tuple(range(gate.arity)))


def concurrent_activations(dimensions) -> list[frozenset[str]]:
    """Every non-empty combination, singletons first, full set last."""
    dims = sorted(set(dimensions))
    if not dims:
        raise ValueError("dimensions must be non-empty")
    out: list[frozenset[str]] = []
    for size in range(1, len(dims) + 1):
        out.extend(frozenset(c) for c in combinations(dims, size))
    return out


def detect_danger(network: TransitionNetwork, metric: str, threshold: float) -> DangerReport:
    """Flag nodes that can stagnate on no-ops while the metric is too high.

    A node is flagged when it has a no-op self-arc or exit, its metric
    exceeds the threshold, and every node reachable through no-op arcs
    alone carries the same metric value.
    """
    missing = [n.id for n in network.nodes if n.metric(metric) is None]
    if len(missing) == len(network.nodes):
        raise ValueError(f"unknown metric {metric!r}")
    if missing:
        raise ValueError(f"metric {metric!r} missing on nodes: {missing}")
    noop_out = {n.id: [a for a in network.arcs_from(n.id) if a.operator == NOOP] for n in network.nodes}
    flagged = []
    for node in network.nodes:
        if not noop_out[node.id]:
            continue
        value = node.metric(metric)
        if value <= threshold:
            continue
        if _noop_stagnant(network, node.id, metric, value, noop_out):
            flagged.append(
                (
                    node.id,
                    f"{metric}={value:g} exceeds {threshold:g} and cannot change along no-op transitions",
                )
            )
    return DangerReport(tuple(flagged))


def _noop_stagnant(network, start: str, metric: str, value: float, noop_out) -> bool:
    seen = {start}
    stack = [start]
    while stack:
        for arc in noop_out[stack.pop()]:
            if abs(network.node(arc.target).metric(metric) - value) > 1e-12:
                return False
            if arc.target not in seen:
                seen.add(arc.target)
                stack.append(arc.target)
    return True


def network_from_json(doc) -> TransitionNetwork:
    """Parse ``{"nodes": [...], "arcs": [...], "start": id}``.

    Optional keys: node ``"dimensions"`` (list of dimension names),
    top-level ``"end"`` and ``"qubits"`` (register width, default 1).
    """
    if not isinstance(doc, dict):
        raise ValueError("network document must be a JSON object")
    raw_nodes = doc.get("nodes")
    raw_arcs = doc.get("arcs")
    if not isinstance(raw_nodes, list) or not raw_nodes:
        raise ValueError('"nodes" must be a non-empty list')
    if not isinstance(raw_arcs, list):
        raise ValueError('"arcs" must be a list')
    nodes = []
    for i, raw in enumerate(raw_nodes):
        if not isinstance(raw, dict) or "id" not in raw:
            raise ValueError(f"node {i} must be an object with an \"id\"")
        metrics = raw.get("metrics", {})
        if not isinstance(metrics, dict):
            raise ValueError(f"node {raw['id']!r}: \"metrics\" must be an object")
        nodes.append(
            NetworkNode(
                id=str(raw["id"]),
                label=str(raw.get("label", raw["id"])),
                active_dimensions=frozenset(raw.get("dimensions", ())),
                metrics=tuple(metrics.items()),
            )
        )
    arcs = []
    for i, raw in enumerate(raw_arcs):
        if not isinstance(raw, dict) or "from" not in raw or "to" not in raw:
            raise ValueError(f"arc {i} must be an object with \"from\" and \"to\"")
        arcs.append(
            TransitionArc(
                source=str(raw["from"]),
                target=str(raw["to"]),
                operator=str(raw.get("operator", NOOP)),
                guard=raw.get("guard"),
            )
        )
    if "start" not in doc:
        raise ValueError('"start" is required')
    qubits = doc.get("qubits", 1)
    if not isinstance(qubits, int) or qubits < 1:
        raise ValueError('"qubits" must be a positive integer')
    return TransitionNetwork(
        nodes=tuple(nodes),
        arcs=tuple(arcs),
        start=str(doc["start"]),
        end=doc.get("end"),
        register=basis_state(qubits, 0),
    )


def load_network(path) -> TransitionNetwork:
    with open(path, encoding="utf-8") as handle:
        return network_from_json(json.load(handle))


def bundled_network(name: str) -> TransitionNetwork:
    """One of the networks shipped with the package, by name."""
    if name not in BUNDLED_NETWORKS:
        raise ValueError(f"unknown bundled network {name!r}; expected one of {BUNDLED_NETWORKS}")
    text = resources.files("blochaffect").joinpath(f"fixtures/{name}.json").read_text(encoding="utf-8")
    return network_from_json(json.loads(text))

"""Command-line interface.

Exit codes: 0 success, 1 domain error (malformed files, invariant
violations), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import affect, gates, network, session, states
from .server import DEFAULT_PORT, PORT_ENV_VAR, create_app


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2))


def _ket_string(state, precision: int = 12) -> str:
    """Amplitudes with explicit real and imaginary parts, e.g. 0.5+0.5i|0>."""
    parts = []
    for index, amp in enumerate(state.amplitudes):
        if abs(amp) <= 1e-12:
            continue
        re, im = float(amp.real), float(amp.imag)
        if abs(im) <= 1e-12:
            coeff = f"{re:.{precision}g}"
        elif abs(re) <= 1e-12:
            coeff = f"{im:.{precision}g}i"
        else:
            coeff = f"{re:.{precision}g}{im:+.{precision}g}i"
        parts.append(f"{coeff}|{state.ket_label(index)}>")
    return " + ".join(parts).replace("+ -", "- ")


def _amplitude_rows(state) -> list[dict]:
    return [
        {"ket": state.ket_label(i), "re": float(a.real), "im": float(a.imag)}
        for i, a in enumerate(state.amplitudes)
    ]


def cmd_bloch(args) -> int:
    state = states.pure_from_angles(args.theta, args.phi)
    point = states.bloch_from_pure(state)
    psych = affect.readout(state)
    labels = affect.classify(psych, args.threshold)
    _emit(
        {
            "theta": args.theta,
            "phi": args.phi,
            "x": point.x,
            "y": point.y,
            "z": point.z,
            "state": _ket_string(state),
            "readout": psych.as_dict(),
            "labels": [label.value for label in labels],
        }
    )
    return 0


def _parse_basis_label(label: str, n_qubits: int) -> int:
    if len(label) != n_qubits or any(c not in "01" for c in label):
        raise ValueError(f"input label {label!r} must be {n_qubits} bits of 0/1")
    return int(label, 2)


def cmd_circuit_run(args) -> int:
    with open(args.circuit, encoding="utf-8") as handle:
        circuit = gates.circuit_from_json(json.load(handle))
    label = args.input if args.input is not None else "0" * circuit.n_qubits
    input_state = states.basis_state(circuit.n_qubits, _parse_basis_label(label, circuit.n_qubits))
    final = gates.run_circuit(circuit, input_state)
    if args.shots is None:
        _emit(
            {
                "input": label,
                "state": _ket_string(final),
                "amplitudes": _amplitude_rows(final),
                "probabilities": {final.ket_label(i): p for i, p in sorted(gates.probabilities(final).items())},
            }
        )
        return 0
    rng = gates.RandomSource(args.seed)
    counts = gates.sample_register(final, args.shots, rng)
    _emit(
        {
            "input": label,
            "shots": args.shots,
            "seed": args.seed,
            "histogram": {final.ket_label(i): c for i, c in sorted(counts.items())},
        }
    )
    return 0


def cmd_table(args) -> int:
    if args.which == "traits":
        print(f"{'Good traits':<12}{'Bad traits':<12}{'Interaction':<13}Action tendency")
        for row in affect.traits_table():
            print(
                f"{'|%d>' % row['good']:<12}{'|%d>' % row['bad']:<12}"
                f"{'|%d>' % row['interaction']:<13}{row['tendency'].description}"
            )
    elif args.which == "satisfaction":
        print(f"{'Involvement':<13}{'Distance':<10}{'Satisfaction':<42}Remarks")
        for row in affect.satisfaction_table():
            print(
                f"{'|%d>' % row['involvement']:<13}{'|%d>' % row['distance']:<10}"
                f"{_ket_string(row['state']):<42}{row['label'].description}"
            )
    else:
        print(f"{'Human':<7}{'Robot':<7}{'Entangled state':<52}Outcomes")
        for row in affect.hri_table():
            outcomes = ", ".join(
                f"{format(i, '02b')}: {p:.2f}" for i, p in sorted(row["outcomes"].items())
            )
            print(f"{'|%d>' % row['human']:<7}{'|%d>' % row['robot']:<7}{_ket_string(row['state']):<52}{outcomes}")
    return 0


def cmd_network_check(args) -> int:
    if args.bundled:
        net = network.bundled_network(args.network)
    else:
        net = network.load_network(args.network)
    report = network.detect_danger(net, args.metric, args.threshold)
    _emit(
        {
            "metric": args.metric,
            "threshold": args.threshold,
            "flagged": [{"node": node_id, "reason": reason} for node_id, reason in report.flagged],
        }
    )
    return 0


def cmd_predict(args) -> int:
    with open(args.script, encoding="utf-8") as handle:
        script = session.script_from_json(json.load(handle))
    samples = session.predict_trajectory(script, args.dt)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            session.write_trajectory_csv(samples, handle)
    else:
        sys.stdout.write(session.trajectory_csv_text(samples))
    return 0


def cmd_compare(args) -> int:
    with open(args.model, encoding="utf-8", newline="") as handle:
        model = session.read_trajectory_csv(handle)
    with open(args.human, encoding="utf-8", newline="") as handle:
        human = session.read_trajectory_csv(handle)
    report = session.compare_trajectories(model, human)
    payload = report.as_dict()
    if args.per_sample:
        payload["per_sample"] = list(report.per_sample)
    _emit(payload)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    model = None
    if args.model:
        with open(args.model, encoding="utf-8") as handle:
            script = session.script_from_json(json.load(handle))
        model = session.predict_trajectory(script, args.dt)
    port = args.port
    if port is None:
        port = int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT))
    app = create_app(
        seed=args.seed,
        omega=args.omega,
        collapse_threshold=args.collapse_threshold,
        model=model,
        static_dir=args.static,
    )
    uvicorn.run(app, host=args.host, port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blochaffect", description="Affective-reflective qubit simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bloch = sub.add_parser("bloch", help="Bloch point, psychological readout, and labels for (theta, phi)")
    p_bloch.add_argument("--theta", type=float, required=True, help="polar angle in radians, [0, pi]")
    p_bloch.add_argument("--phi", type=float, required=True, help="azimuth in radians, [0, 2*pi)")
    p_bloch.add_argument("--threshold", type=float, default=0.25, help="classification threshold in (0, 1)")
    p_bloch.set_defaults(func=cmd_bloch)

    p_circuit = sub.add_parser("circuit", help="circuit operations")
    circuit_sub = p_circuit.add_subparsers(dest="circuit_command", required=True)
    p_run = circuit_sub.add_parser("run", help="run a JSON circuit on a basis input")
    p_run.add_argument("circuit", help="path to the circuit JSON file")
    p_run.add_argument("--input", help="basis input label such as 00 (default: all zeros)")
    p_run.add_argument("--shots", type=int, help="sample a histogram instead of printing the state")
    p_run.add_argument("--seed", type=int, default=0, help="sampling seed")
    p_run.set_defaults(func=cmd_circuit_run)

    p_table = sub.add_parser("table", help="print an appraisal table regenerated from its circuit")
    p_table.add_argument("which", choices=("traits", "satisfaction", "hri"))
    p_table.set_defaults(func=cmd_table)

    p_network = sub.add_parser("network", help="network operations")
    network_sub = p_network.add_subparsers(dest="network_command", required=True)
    p_check = network_sub.add_parser("check", help="flag dangerous stagnation states")
    p_check.add_argument("network", help="path to a network JSON file, or a bundled name with --bundled")
    p_check.add_argument("--bundled", action="store_true", help=f"use a bundled network: {', '.join(network.BUNDLED_NETWORKS)}")
    p_check.add_argument("--metric", default="dissatisfaction")
    p_check.add_argument("--threshold", type=float, default=0.5)
    p_check.set_defaults(func=cmd_network_check)

    p_predict = sub.add_parser("predict", help="sample a model trajectory from a waypoint script")
    p_predict.add_argument("script", help="path to the script JSON file")
    p_predict.add_argument("--dt", type=float, default=0.05, help="sampling interval in seconds")
    p_predict.add_argument("--out", help="write CSV here instead of stdout")
    p_predict.set_defaults(func=cmd_predict)

    p_compare = sub.add_parser("compare", help="angular deviation between two trajectory CSVs")
    p_compare.add_argument("model", help="model trajectory CSV")
    p_compare.add_argument("human", help="flown trajectory CSV")
    p_compare.add_argument("--per-sample", action="store_true", help="include per-sample deviations")
    p_compare.set_defaults(func=cmd_compare)

    p_serve = sub.add_parser("serve", help="start the websocket session service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=None, help=f"default {DEFAULT_PORT}; {PORT_ENV_VAR} overrides")
    p_serve.add_argument("--seed", type=int, default=0)
    p_serve.add_argument("--omega", type=float, default=math.pi / 2, help="rad/s per unit deflection")
    p_serve.add_argument("--collapse-threshold", type=float, default=math.pi / 2)
    p_serve.add_argument("--model", help="waypoint script JSON for finish-time scoring")
    p_serve.add_argument("--dt", type=float, default=0.05, help="model sampling interval")
    p_serve.add_argument("--static", help="directory of UI assets to serve at /")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def cli_dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        # TypeError covers malformed JSON payloads (null where a number
        # belongs) surfacing through float()/int() conversions.
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

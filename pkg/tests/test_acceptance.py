"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``)."""
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from blochaffect import (
    ActionTendency,
    BlochVector,
    Ensemble,
    JoystickInput,
    RandomSource,
    SatisfactionLabel,
    axis_operators,
    basis_state,
    bloch_from_density,
    bloch_from_pure,
    bundled_network,
    compare_trajectories,
    detect_danger,
    epr_map,
    expectation,
    mix,
    new_session,
    predict_trajectory,
    pure_from_angles,
    purity,
    reduced_qubit_density,
    sample_outcome_values,
    sample_register,
    session_tick,
    trajectory_csv_text,
    trigger_collapse,
)
from blochaffect.affect import satisfaction_table, traits_table

SQRT2_INV = 1.0 / math.sqrt(2.0)


@contextmanager
def criterion(name):
    try:
        yield
    except Exception:
        print(f"FAIL  {name}")
        raise
    print(f"PASS  {name}")


def test_table_traits_regeneration():
    with criterion("Trait-appraisal table regenerated from the circuit"):
        start = time.perf_counter()
        rows = traits_table()
        elapsed = time.perf_counter() - start
        expected = [
            (0, 0, 0, ActionTendency.DO_NOTHING),
            (0, 1, 1, ActionTendency.NEGATIVE_APPROACH),
            (1, 0, 1, ActionTendency.POSITIVE_APPROACH),
            (1, 1, 0, ActionTendency.AVOID),
        ]
        assert [(r["good"], r["bad"], r["interaction"], r["tendency"]) for r in rows] == expected
        for row in rows:  # interaction equals the XOR oracle on every row
            assert row["interaction"] == row["good"] ^ row["bad"]
        assert elapsed < 1.0


def test_table_satisfaction_regeneration():
    with criterion("Satisfaction table regenerated from the circuit"):
        start = time.perf_counter()
        rows = satisfaction_table()
        elapsed = time.perf_counter() - start
        assert [r["label"] for r in rows] == [
            SatisfactionLabel.UNSATISFIED,
            SatisfactionLabel.IN_DOUBT,
            SatisfactionLabel.IN_DOUBT,
            SatisfactionLabel.SATISFIED,
        ]
        assert np.max(np.abs(rows[0]["state"].amplitudes - np.array([1, 0]))) < 1e-12
        assert np.max(np.abs(rows[3]["state"].amplitudes - np.array([0, 1]))) < 1e-12
        in_doubt = np.array([0.5 + 0.5j, 0.5 - 0.5j])
        for row in (rows[1], rows[2]):
            assert np.max(np.abs(row["state"].amplitudes - in_doubt)) < 1e-12
            probs = np.abs(row["state"].amplitudes) ** 2
            assert probs == pytest.approx([0.5, 0.5], abs=1e-12)
        assert elapsed < 1.0


def test_bell_mappings():
    with criterion("Bell mappings with maximally mixed reductions"):
        expected = {
            0: np.array([SQRT2_INV, 0, 0, SQRT2_INV]),
            1: np.array([0, SQRT2_INV, SQRT2_INV, 0]),
            2: np.array([SQRT2_INV, 0, 0, -SQRT2_INV]),
            3: np.array([0, SQRT2_INV, -SQRT2_INV, 0]),
        }
        for index, amplitudes in expected.items():
            out = epr_map(basis_state(2, index))
            assert np.max(np.abs(out.amplitudes - amplitudes)) < 1e-12
            for qubit in (0, 1):
                assert abs(purity(reduced_qubit_density(out, qubit)) - 0.5) < 1e-9


def test_v_squared_equals_not():
    with criterion("V composed with V equals NOT"):
        from blochaffect import standard_gate

        v = standard_gate("V").matrix
        x = standard_gate("X").matrix
        assert np.max(np.abs(v @ v - x)) < 1e-12


def test_surface_geometry_grid():
    with criterion("Surface geometry over a 19x24 angle grid"):
        thetas = np.linspace(0.0, math.pi, 19)
        phis = np.linspace(0.0, 2 * math.pi, 24, endpoint=False)
        for theta in thetas:
            for phi in phis:
                point = bloch_from_pure(pure_from_angles(float(theta), float(phi)))
                expected = (
                    math.sin(theta) * math.cos(phi),
                    math.sin(theta) * math.sin(phi),
                    math.cos(theta),
                )
                assert (point.x, point.y, point.z) == pytest.approx(expected, abs=1e-9)
        # Poles: theta = 0 is the |0> ket, theta = pi the |1> ket.
        north = pure_from_angles(0.0, 0.0)
        assert np.allclose(north.amplitudes, [1, 0], atol=1e-12)
        for phi in phis:
            south = pure_from_angles(math.pi, float(phi))
            assert abs(abs(south.amplitudes[1]) - 1.0) < 1e-9
            point = bloch_from_pure(south)
            assert (point.x, point.y, point.z) == pytest.approx((0, 0, -1), abs=1e-9)


def test_mixed_state_diagnostics():
    with criterion("Mixed-state diagnostics over 1,000 random ensembles"):
        start = time.perf_counter()
        depolarized = mix(Ensemble(((0.5, basis_state(1, 0)), (0.5, basis_state(1, 1)))))
        point = bloch_from_density(depolarized)
        assert (point.x, point.y, point.z) == pytest.approx((0, 0, 0), abs=1e-12)
        assert purity(depolarized) == pytest.approx(0.5, abs=1e-12)

        rng = np.random.default_rng(42)
        for i in range(1000):
            first = pure_from_angles(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
            if i % 10 == 0:
                second = first  # exactly pure mixture, exercising the equivalence
            else:
                second = pure_from_angles(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
            w = float(rng.uniform(0, 1))
            rho = mix(Ensemble(((w, first), (1.0 - w, second))))
            p = purity(rho)
            length = bloch_from_density(rho).length
            assert p <= 1.0 + 1e-8
            assert length <= 1.0 + 1e-8
            assert (abs(p - 1.0) <= 1e-6) == (abs(length - 1.0) <= 1e-6)
        assert time.perf_counter() - start < 5.0


def test_measurement_statistics():
    with criterion("Measurement statistics: half-satisfied shots and Bell supports"):
        start = time.perf_counter()
        in_doubt = satisfaction_table()[1]["state"]
        counts = sample_register(in_doubt, 10_000, RandomSource(11))
        frequency = counts.get(0, 0) / 10_000
        assert 0.47 <= frequency <= 0.53

        allowed = {0: {0, 3}, 1: {1, 2}, 2: {0, 3}, 3: {1, 2}}
        for index, support in allowed.items():
            bell = epr_map(basis_state(2, index))
            counts = sample_register(bell, 10_000, RandomSource(100 + index))
            assert set(counts) == support  # both listed outcomes occur, nothing else
        assert time.perf_counter() - start < 5.0


def test_expectation_matches_monte_carlo():
    with criterion("Expectation equals Monte Carlo means within 3 sigma"):
        axes = axis_operators()
        rng_angles = np.random.default_rng(7)
        for i in range(20):
            state = pure_from_angles(
                float(rng_angles.uniform(0, math.pi)), float(rng_angles.uniform(0, 2 * math.pi))
            )
            for j, operator in enumerate((axes.x_op, axes.y_op, axes.z_op)):
                exact = expectation(state, operator)
                draws = sample_outcome_values(state, operator, 10_000, RandomSource(1000 + 3 * i + j))
                sigma = math.sqrt(max(1.0 - exact ** 2, 0.0) / 10_000)
                assert abs(float(draws.mean()) - exact) <= 3.0 * sigma + 1e-9


def test_danger_detection_fixtures():
    with criterion("Danger detection on the bundled regulation networks"):
        regulation = detect_danger(bundled_network("affect_regulation"), "dissatisfaction", 0.5)
        assert regulation.flagged_ids == ("freeze",)

        duplicate = detect_danger(bundled_network("affect_regulation_duplicate"), "dissatisfaction", 0.5)
        walk_out_path = {"reflective_intervention", "out_affective_frozen", "out_reflective_frozen"}
        assert set(duplicate.flagged_ids) == walk_out_path

        clean = detect_danger(bundled_network("concurrent_appraisal"), "dissatisfaction", 0.5)
        assert clean.flagged == ()


def test_session_determinism():
    with criterion("Session determinism over a 1,000-tick replay"):
        def replay():
            log = np.random.default_rng(2024)
            session = new_session(17)
            outcomes = []
            for _ in range(1000):
                session_tick(
                    session,
                    JoystickInput(
                        float(log.uniform(-1, 1)),
                        float(log.uniform(-1, 1)),
                        float(log.uniform(-1, 1)),
                        0.05,
                    ),
                )
                assert abs(np.linalg.norm(session.register.amplitudes) - 1.0) < 1e-8
                if session.rot_accumulator >= session.collapse_threshold:
                    _, record = trigger_collapse(session)
                    outcomes.append(record.outcome_index)
            return trajectory_csv_text(session.trajectory), outcomes

        first_csv, first_outcomes = replay()
        second_csv, second_outcomes = replay()
        assert first_csv == second_csv  # bit-identical CSV bytes
        assert first_outcomes == second_outcomes
        assert len(first_outcomes) > 0
        assert {0, 1} >= set(first_outcomes)


def test_trajectory_comparison_scores():
    with criterion("Trajectory comparison: identical, antipodal, orthogonal"):
        path = predict_trajectory(
            [(BlochVector(0.0, 0.0, 1.0), 1.0), (BlochVector(0.0, 1.0, 0.0), 1.0)], 0.1
        )
        identical = compare_trajectories(path, path)
        assert identical.mean_dev == pytest.approx(0.0, abs=1e-9)
        assert identical.max_dev == pytest.approx(0.0, abs=1e-9)

        def constant(x, y, z):
            from blochaffect import TrajectorySample

            return [TrajectorySample(i * 0.5, x, y, z) for i in range(5)]

        antipodal = compare_trajectories(constant(0, 0, 1), constant(0, 0, -1))
        assert antipodal.mean_dev == pytest.approx(math.pi, abs=1e-9)
        assert antipodal.max_dev == pytest.approx(math.pi, abs=1e-9)

        orthogonal = compare_trajectories(constant(0, 0, 1), constant(1, 0, 0))
        assert orthogonal.mean_dev == pytest.approx(math.pi / 2, abs=1e-9)
        assert orthogonal.max_dev == pytest.approx(math.pi / 2, abs=1e-9)

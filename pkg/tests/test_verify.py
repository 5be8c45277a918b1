import json
import math

import numpy as np
import pytest

from errors import BudgetExhausted, ConfigError, GridTooCoarse, PreconditionError, QuadratureNotConverged
from hyperfun.params import Lemma2Params
from settings.suites import SCENARIOS, SUITES
from verify import identities, lemma_checks
from verify.energy import EnergySides, PowerField, SolutionEnergyField, check_energy_identity, energy_sides
from verify.kernel_checks import check_fundamental_solution
from verify.lemma_checks import (check_lemma1_limit, check_lemma2_numeric, lemma1_battery, lemma1_sequence,
                                 lemma2_numeric)
from verify.neumann_checks import scenario_solution
from verify.oracles import (central_difference, loglog_slope, nested_quad, qmc_integrate, richardson,
                            semi_infinite_quad)
from verify.report import (CheckReport, failed_report, make_report, score_report, summary_table, to_jsonl,
                           within)
from verify.suite import build_tasks, check_rng, run_tasks, suite_passed


# ── Reports ────────────────────────────────────────────────────


def test_within_uses_relative_scale_above_one():
    assert within(100.5, 100.0, 0.01)
    assert not within(101.5, 100.0, 0.01)
    assert within(0.005, 0.0, 0.01)
    assert not within(math.nan, 0.0, 1.0)


def test_score_report_takes_worst_ratio():
    report = score_report("agg", {"a": 0.2, "b": 0.9})
    assert report.passed
    assert report.observed == 0.9
    assert report.details["scores"] == {"a": 0.2, "b": 0.9}
    assert not score_report("agg", {"a": 1.5}).passed


def test_failed_report_never_passes():
    report = failed_report("x", "boom")
    assert not report.passed
    assert report.details == {"error": "boom"}


def test_jsonl_is_sorted_and_omits_runtime():
    reports = [make_report("b", 1.0, 1.0, 1e-3, seed=42)._replace(runtime=1.5),
               failed_report("a", "boom")]
    lines = to_jsonl(reports).splitlines()
    first = json.loads(lines[0])
    assert list(first) == sorted(first)
    assert "runtime" not in first
    assert first["seed"] == 42
    assert json.loads(lines[1])["observed"] == "nan"
    assert "runtime" in json.loads(to_jsonl(reports, include_runtime=True).splitlines()[0])


def test_summary_table_counts_failures():
    reports = [make_report("ok", 1.0, 1.0, 1e-3), failed_report("bad", "boom"),
               make_report("ext", 2.0, 1.0, 1e-3, extended=True)]
    table = summary_table(reports)
    assert table.rstrip().endswith("3 checks, 2 failed")
    assert "FAIL (extended)" in table


def test_suite_passed_ignores_extended():
    reports = [make_report("ok", 1.0, 1.0, 1e-3), make_report("ext", 2.0, 1.0, 1e-3, extended=True)]
    assert suite_passed(reports)
    assert not suite_passed(reports + [failed_report("bad", "boom")])


# ── Oracles ────────────────────────────────────────────────────


def test_richardson_removes_leading_error():
    exact = 2.0
    coarse, fine = exact + 0.1 * 0.2, exact + 0.1 * 0.1
    assert richardson(coarse, fine, 2.0, 1.0) == pytest.approx(exact, rel=1e-14)
    with pytest.raises(PreconditionError):
        richardson(coarse, fine, 1.0, 1.0)


def test_central_difference_and_slope():
    assert central_difference(lambda x: x[0] ** 3, [2.0], 0, 1e-4) == pytest.approx(12.0, rel=1e-7)
    assert loglog_slope([0.1, 0.05, 0.025], [0.01, 0.0025, 0.000625]) == pytest.approx(2.0)


@pytest.mark.parametrize("transform", ["rational", "tangent"])
def test_nested_quad_exponential(transform):
    assert nested_quad(lambda x: math.exp(-x), 1, 200, transform) == pytest.approx(1.0, rel=1e-9)


def test_nested_quad_budget():
    with pytest.raises(BudgetExhausted):
        nested_quad(lambda x: x ** -0.999 * math.exp(-x), 1, 2)


def test_qmc_two_dimensions():
    value = qmc_integrate(lambda x: np.exp(-x.sum(axis=1)), 2, 1 << 14, "rational", seed=1)
    assert value == pytest.approx(1.0, rel=1e-2)


def test_semi_infinite_quad():
    assert semi_infinite_quad(lambda x: math.exp(-x), 1.0) == pytest.approx(math.exp(-1.0), rel=1e-10)


# ── Identity checks ────────────────────────────────────────────


@pytest.mark.parametrize("key, kwargs", [
    ("legendre_duplication", {"cases": 20, "tolerance": 1e-10}),
    ("pochhammer_doubling", {"cases": 20, "tolerance": 1e-12}),
    ("fa_reduction", {"points": 10, "tolerance": 1e-12}),
    ("fa_zero_slot", {"cases": 5, "tolerance": 1e-12}),
    ("fa_series_vs_integral", {"cases": 5, "max_n": 2, "tolerance": 1e-8}),
    ("fa_reflection", {"cases": 5, "max_n": 2, "tolerance": 1e-10}),
    ("fa_differentiation", {"cases": 5, "max_n": 2, "step": 1e-5, "tolerance": 1e-6}),
    ("fa_adjacent", {"cases": 5, "max_n": 3, "tolerance": 1e-10}),
    ("classical_integrals", {"cases": 3, "tolerance": 1e-8}),
])
def test_identity_checks_pass(key, kwargs):
    name = f"identity.{key}"
    report = identities.CHECKS[key](name, check_rng(42, name), seed=42, **kwargs)
    assert report.name == name
    assert report.passed, report


def test_identity_batteries_are_seed_stable():
    name = "identity.pochhammer_doubling"
    first = identities.check_pochhammer_doubling(name, check_rng(7, name), 10, 1e-12)
    second = identities.check_pochhammer_doubling(name, check_rng(7, name), 10, 1e-12)
    assert first.observed == second.observed


# ── Lemma checks ───────────────────────────────────────────────


def test_lemma2_nested_one_dimension():
    params = Lemma2Params((1.0,), (2.0,), (1.0,), 1.0, 0.0)
    assert lemma2_numeric(params, "nested", 200) == pytest.approx(math.pi / 2.0, rel=1e-8)
    assert check_lemma2_numeric(params, "nested", 200, 1e-6).passed


def test_lemma2_nested_two_dimensions():
    params = Lemma2Params((1.0, 1.0), (2.0, 2.0), (1.0, 1.0), 2.0, 0.0)
    report = check_lemma2_numeric(params, "nested", 200, 1e-5)
    assert report.passed, report
    assert report.details["closed_form"] == pytest.approx(math.pi / 4.0)


def test_lemma2_qmc_with_t():
    params = Lemma2Params((1.5,), (2.0,), (2.0,), 1.5, 0.25)
    report = check_lemma2_numeric(params, "qmc", 1 << 18, 1e-2, seed=5)
    assert report.passed, report


def test_lemma2_method_limits():
    params = Lemma2Params((1.0,) * 3, (2.0,) * 3, (1.0,) * 3, 2.0, 0.0)
    with pytest.raises(PreconditionError):
        lemma2_numeric(params, "nested", 50)
    with pytest.raises(PreconditionError):
        lemma2_numeric(params, "simpson", 50)


def test_lemma1_limit_one_variable():
    report = check_lemma1_limit(2.0, [0.5], [1.0], [1.0], [1e-2, 1e-3, 1e-4, 1e-5, 1e-6])
    assert report.passed, report
    assert report.details["closed_form"] == pytest.approx(0.5)


def test_lemma1_limit_needs_decreasing_errors(monkeypatch):
    errors = np.array([1e-3, 1e-4, 2e-4, 1e-7])
    monkeypatch.setattr(lemma_checks, "lemma1_sequence", lambda *args, **kwargs: 0.5 * (1.0 + errors))
    report = check_lemma1_limit(2.0, [0.5], [1.0], [1.0], [1e-2, 1e-3, 1e-4, 1e-5])
    assert abs(report.observed - 1.0) < 1e-3
    assert not report.details["monotone"]
    assert not report.passed


def test_lemma1_zero_b_sequence_is_one():
    values = lemma1_sequence(1.5, [0.0], [0.7], [1.0], [1e-2, 1e-4])
    assert values.tolist() == [1.0, 1.0]


def test_lemma1_varying_z_battery():
    battery = lemma1_battery(np.random.default_rng(0), 4, 2)
    assert [p["slope"] is None for p in battery] == [True, True, False, False]
    for p in battery[2:]:
        report = check_lemma1_limit(p["a"], p["b"], p["c"], p["z0"], [1e-3, 1e-4, 1e-5, 1e-6],
                                    p["slope"], 1e-3)
        assert report.passed, report


# ── Fundamental solution ───────────────────────────────────────


def test_fundamental_solution_three_dimensions(spec3):
    report = check_fundamental_solution(spec3, 2, np.random.default_rng(1), "fundamental.m3n1")
    assert report.passed, report
    assert set(report.details["scores"]) >= {"symmetry", "residual", "normal_derivative"}


# ── Energy identity ────────────────────────────────────────────


def test_power_field_energy_balances():
    field = PowerField(0.25)
    sides = energy_sides(field, 2.0, 0.25, (6, 6, 8))
    s = 0.5
    expected = s * 2.0 * math.pi * 2.0**2.5 / 2.5
    assert sides.volume == pytest.approx(expected, rel=1e-10)
    assert sides.sphere == pytest.approx(expected, rel=1e-10)
    assert sides.face == 0.0
    report = check_energy_identity(field, 2.0, 0.25, [(4, 4, 8), (6, 6, 8)], 0.05)
    assert report.passed and report.extended


def test_zero_field_energy():
    report = check_energy_identity(PowerField(0.25, amplitude=0.0), 3.0, 0.25, [(4, 4, 8), (5, 5, 8)])
    assert report.observed == 1.0
    assert report.passed


def test_energy_grid_too_coarse():
    with pytest.raises(GridTooCoarse):
        check_energy_identity(PowerField(0.1), 2.0, 0.1, [(2, 2, 4), (3, 3, 4)], 1e-12)


def test_energy_sides_boundary():
    assert EnergySides(1.0, 0.75, 0.25).boundary == 1.0


@pytest.mark.slow
def test_energy_identity_gaussian_bump():
    entry = SUITES["default"]["energy"][0]
    solution = scenario_solution(SCENARIOS[entry["scenario"]])
    field = SolutionEnergyField(solution, entry["radius"])
    report = check_energy_identity(field, entry["radius"], solution.spec.alpha[0], entry["grids"],
                                   entry["tolerance"])
    assert report.passed, report
    fine = report.details["sides"][-1]
    assert fine["volume"] == pytest.approx(fine["sphere"] + fine["face"], rel=entry["tolerance"])
    assert fine["face"] != 0.0


def test_solution_energy_field_needs_one_singular_axis(spec4):
    from neumann.quadrature import QuadratureSpec
    from neumann.solver import NeumannSolution
    with pytest.raises(PreconditionError):
        SolutionEnergyField(NeumannSolution([], spec4, QuadratureSpec()), 4.0)


# ── Suite assembly ─────────────────────────────────────────────


def test_check_rng_depends_on_seed_and_name():
    a = check_rng(42, "x").random()
    assert a == check_rng(42, "x").random()
    assert a != check_rng(42, "y").random()
    assert a != check_rng(43, "x").random()


def test_build_tasks_quick_suite():
    names = [name for name, _ in build_tasks("quick", 42)]
    assert "identity.legendre_duplication" in names
    assert "fundamental.m3n1" in names
    assert "neumann.zero-3d" in names
    assert not any(n.startswith("energy.") for n in names)
    assert len(names) == len(set(names))


def test_build_tasks_unknown_suite():
    with pytest.raises(ConfigError):
        build_tasks("nope", 42)


def test_run_tasks_isolates_failures_and_sorts():
    def boom():
        raise QuadratureNotConverged("no")

    tasks = [("z.ok", lambda: make_report("z.ok", 1.0, 1.0, 1e-3)),
             ("a.bad", boom),
             ("m.list", lambda: [make_report("m.one", 0.0, 0.0, 1.0), make_report("m.two", 0.0, 0.0, 1.0)])]
    reports = run_tasks(tasks, jobs=2, seed=9)
    assert [r.name for r in reports] == ["a.bad", "m.one", "m.two", "z.ok"]
    assert not reports[0].passed
    assert all(r.seed == 9 for r in reports)
    assert all(isinstance(r, CheckReport) and r.runtime >= 0.0 for r in reports)

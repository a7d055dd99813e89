"""Grading, averaging, and the diagnostic weighted means."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catbench.scoring import (
    RunScore,
    TaskScore,
    WeightTable,
    axis_average,
    build_run_score,
    diagnostic_scores,
    emit_report,
    grade,
    grade_submission,
    load_scorecard,
    total_average,
)
from catbench.taskgen import (
    EntityRef,
    NullField,
    OrderedList,
    Refutation,
    Scalar,
    Stat,
    gen_task,
)
from catbench.world import WorldConfig, generate_world


@pytest.fixture(scope="module")
def world():
    return generate_world(WorldConfig(seed=0))


class TestGrade:
    def test_exact_scalar_match(self, world):
        task = gen_task(world, 4, seed=1)
        assert grade(task, task.answer) == 1
        assert grade(task, Scalar(task.answer.value + 1)) == 0

    def test_scalar_tolerance(self, world):
        task = gen_task(world, 4, seed=1)
        loose = Scalar(task.answer.value, tolerance=Fraction(1, 10))
        relaxed = type(task)(**{**task.__dict__, "answer": loose})
        assert grade(relaxed, Scalar(task.answer.value + Fraction(1, 20))) == 1
        assert grade(relaxed, Scalar(task.answer.value + Fraction(1, 2))) == 0

    def test_entity_ref_is_rigid_code_match(self, world):
        task = gen_task(world, 9, seed=1)
        assert grade(task, task.answer) == 1
        assert grade(task, EntityRef("MGR-999")) == 0

    def test_adjacent_swap_fails_strict_order(self, world):
        task = gen_task(world, 10, seed=1)
        codes = list(task.answer.codes)
        codes[0], codes[1] = codes[1], codes[0]
        assert grade(task, OrderedList(tuple(codes))) == 0
        assert grade(task, task.answer) == 1

    def test_stat_requires_kind_and_value(self, world):
        task = gen_task(world, 11, seed=1)
        truth = task.answer
        other_kind = "mean" if truth.kind != "mean" else "range"
        assert grade(task, Stat(other_kind, truth.value)) == 0
        assert grade(task, Stat(truth.kind, truth.value + 1)) == 0

    def test_nullfield_rejects_any_fabricated_value(self, world):
        task = gen_task(world, 13, seed=1)
        truth = task.answer
        fabricated = tuple(
            (code, value if value is not None else "123.0000")
            for code, value in truth.cells
        )
        assert grade(task, NullField(truth.field, fabricated)) == 0
        assert grade(task, truth) == 1

    def test_phantom_answered_with_content_scores_zero(self, world):
        task = gen_task(world, 14, seed=1)
        assert grade(task, EntityRef("ANY")) == 0
        assert grade(task, Refutation("phantom", "wrong title")) == 0
        assert grade(task, task.answer) == 1

    def test_refutation_requires_matching_reason_and_witness(self, world):
        task = gen_task(world, 7, seed=1)
        assert grade(task, Refutation("risk-match", "RSK-999")) == 0
        assert grade(task, Refutation("phantom", task.answer.witness)) == 0

    def test_unparseable_submission_scores_zero_with_note(self, world):
        task = gen_task(world, 4, seed=1)
        score, note = grade_submission(task, {"type": "gibberish"})
        assert score == 0 and "parse failure" in note
        score, note = grade_submission(task, None)
        assert score == 0 and note


class TestAxisAverage:
    def test_all_zero_scores_give_zero_axes(self):
        scores = [TaskScore(f"t{k}", k, 0) for k in range(1, 16)]
        assert axis_average(scores) == {"I": 0.0, "II": 0.0, "III": 0.0, "IV": 0.0}

    def test_one_hit_in_65_type_one_samples(self):
        scores = [TaskScore(f"a{i}", 1, int(i == 0)) for i in range(25)]
        scores += [TaskScore(f"b{i}", 2, 0) for i in range(20)]
        scores += [TaskScore(f"c{i}", 3, 0) for i in range(20)]
        assert axis_average(scores)["I"] == 1.5

    def test_reference_type_four_row(self):
        # hits 0/16, 22/23, 1/10 across the three designed-absence kinds
        scores = [TaskScore(f"a{i}", 13, 0) for i in range(16)]
        scores += [TaskScore(f"b{i}", 14, int(i < 22)) for i in range(23)]
        scores += [TaskScore(f"c{i}", 15, int(i < 1)) for i in range(10)]
        assert axis_average(scores)["IV"] == 46.9

    def test_counts_override_supplies_sample_totals(self):
        scores = [TaskScore("a0", 1, 1)]
        out = axis_average(scores, counts={1: 25, 2: 20, 3: 20})
        assert out["I"] == 1.5

    def test_empty_axis_is_absent_not_zero(self):
        out = axis_average([TaskScore("a", 1, 1)])
        assert "I" in out and "IV" not in out

    def test_counts_below_scored_samples_rejected(self):
        with pytest.raises(ValueError):
            axis_average([TaskScore("a", 1, 1), TaskScore("b", 1, 0)], counts={1: 1})


class TestTotalAverage:
    def test_reference_rows(self):
        assert total_average({"I": 1.5, "II": 2.0, "III": 0.0, "IV": 46.9}) == 12.60
        assert total_average({"I": 1.5, "II": 4.9, "III": 26.3, "IV": 46.9}) == 19.90
        assert total_average({"I": 0.0, "II": 0.0, "III": 0.0, "IV": 0.0}) == 0.0

    def test_half_up_rounding_at_the_boundary(self):
        assert total_average({"I": 0.0, "II": 0.0, "III": 0.0, "IV": 26.5}) == 6.63
        assert total_average({"I": 3.1, "II": 0.0, "III": 6.3, "IV": 14.3}) == 5.93
        assert total_average({"I": 0.0, "II": 1.0, "III": 0.0, "IV": 4.1}) == 1.28

    def test_missing_axis_is_an_error(self):
        with pytest.raises(ValueError):
            total_average({"I": 1.0, "II": 2.0, "III": 3.0})

    def test_permuting_kinds_within_axis_leaves_totals_alone(self):
        a = [TaskScore("a", 13, 1), TaskScore("b", 14, 0), TaskScore("c", 15, 0)]
        b = [TaskScore("a", 15, 1), TaskScore("b", 13, 0), TaskScore("c", 14, 0)]
        assert axis_average(a)["IV"] == axis_average(b)["IV"]


class TestDiagnosticScores:
    def test_reference_reasoning_model_row(self):
        acc = {k: 0.0 for k in range(1, 16)}
        acc.update({1: 4.0, 4: 2.2, 9: 5.0, 14: 47.8})
        s, r = diagnostic_scores(acc)
        assert abs(s - 1.9) <= 0.1 and abs(r - 5.5) <= 0.1

    def test_all_zero_and_uniform_hundred(self):
        zeros = {k: 0.0 for k in range(1, 16)}
        assert diagnostic_scores(zeros) == (0.0, 0.0)
        full = {k: 100.0 for k in range(1, 16)}
        assert diagnostic_scores(full) == (100.0, 100.0)

    def test_weight_columns_total_655_and_845(self):
        table = WeightTable()
        assert sum(table.s_weights().values()) == 655
        assert sum(table.r_weights().values()) == 845

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 100), st.integers(1, 4))
    def test_constant_accuracy_gives_equal_scores(self, c, _):
        acc = {k: c for k in range(1, 16)}
        s, r = diagnostic_scores(acc)
        assert s == pytest.approx(c) and r == pytest.approx(c)

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(st.integers(0, 100), min_size=15, max_size=15),
        st.integers(0, 4),
    )
    def test_linearity_under_scaling(self, accs, lam):
        acc = {k: accs[k - 1] for k in range(1, 16)}
        scaled = {k: accs[k - 1] * lam for k in range(1, 16)}
        s, r = diagnostic_scores(acc)
        s2, r2 = diagnostic_scores(scaled)
        assert s2 == pytest.approx(s * lam) and r2 == pytest.approx(r * lam)

    def test_missing_kind_rejected(self):
        with pytest.raises(ValueError):
            diagnostic_scores({k: 0.0 for k in range(1, 15)})


class TestReports:
    def test_scorecard_roundtrip_and_markdown_agreement(self, tmp_path):
        scores = [TaskScore(f"k{k}-{i}", k, int((k + i) % 3 == 0))
                  for k in range(1, 16) for i in range(4)]
        run = build_run_score("probe", scores)
        scorecard, report = emit_report([run], tmp_path)
        loaded = load_scorecard(scorecard)
        assert loaded == [run]
        row = report.read_text().splitlines()[2]
        cells = [c.strip() for c in row.strip("|").split("|")]
        assert cells[0] == "probe"
        for axis, cell in zip(("I", "II", "III", "IV"), cells[1:5]):
            assert float(cell) == run.axis_avgs[axis]
        assert float(cells[5]) == run.total

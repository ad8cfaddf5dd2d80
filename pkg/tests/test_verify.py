import json
import math
import random

import pytest

from fwa import FuzzySet, Facaw, Facv, accept
from fwa import verify
from fwa.transforms import BudgetExceeded, gen_extend, retract
from fwa.verify import (
    CHECKS,
    GeneratorConfig,
    lemma2_closed_form,
    lemma3_closed_form,
    preserving_facw,
    random_facw,
    resolve_suite,
    run_check,
    run_checks,
    theorem1_rhs,
    theorem2_rhs,
)

FAST = GeneratorConfig(trials=15, seed=3)
STATES = ("q0", "q1", "q2")


class TestOracles:
    def test_theorem1_on_gas_cooker(self, cooker):
        assert theorem1_rhs(cooker, ["3"]) == 0.9
        assert accept(retract(cooker), ["3"]) == 0.9
        assert theorem1_rhs(cooker, []) == 0.1

    def test_theorem2_on_gas_cooker(self, cooker, S, S_almost):
        assert theorem2_rhs(cooker, [S]) == 0.2
        assert theorem2_rhs(cooker, [S_almost]) == math.sqrt(0.1)

    def test_lemma2_closed_form(self, cooker):
        row = lemma2_closed_form(cooker, "q0", ["3"])
        assert row == FuzzySet(STATES, {"q0": 0.1, "q1": 0.9, "q2": 0.1})

    def test_lemma3_closed_form(self, cooker, S_almost):
        row = lemma3_closed_form(cooker, "q0", [S_almost])
        assert row == FuzzySet(STATES, {"q0": 1.0, "q1": math.sqrt(0.1), "q2": 0.1})

    def test_budget(self, cooker, S):
        with pytest.raises(BudgetExceeded):
            theorem1_rhs(cooker, ["1"] * 4, budget=10)
        with pytest.raises(BudgetExceeded):
            theorem2_rhs(cooker, [S, S], budget=10)


class TestGenerators:
    def test_deterministic(self):
        a = random_facw(random.Random(5), GeneratorConfig())
        b = random_facw(random.Random(5), GeneratorConfig())
        assert a == b

    def test_preserving_generator(self):
        from fwa import is_delta_preserving
        for seed in range(30):
            assert is_delta_preserving(preserving_facw(random.Random(seed), GeneratorConfig()))


class TestRunner:
    def test_resolve_suite(self):
        assert resolve_suite("all") == list(CHECKS)
        assert resolve_suite("t1, P3,t1") == ["T1", "P3"]
        with pytest.raises(KeyError):
            resolve_suite("T9")

    @pytest.mark.parametrize("theorem", sorted(CHECKS))
    def test_each_check_passes(self, theorem):
        report = run_check(theorem, GeneratorConfig(trials=6, seed=11))
        assert report.complete, report.error
        assert report.passed, [f.to_dict() for f in report.failures[:1]]
        assert report.trials == 6
        assert report.comparisons > 0

    def test_reports_are_deterministic(self):
        a = [r.to_dict() for r in run_checks("T1,P3,PROD", FAST)]
        b = [r.to_dict() for r in run_checks("T1,P3,PROD", FAST)]
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
        assert "elapsed" not in a[0]

    def test_budget_marks_incomplete(self):
        report = run_check("T1", GeneratorConfig(trials=3, max_len=3), budget=1)
        assert not report.complete
        assert "budget" in report.error


def _broken_retract(M):
    # max instead of min when combining word grade and transition grade
    R = retract(M)
    delta = {}
    for q in M.states:
        for a in M.underlying_alphabet:
            row = {}
            for name, word in M.words.items():
                if word.get(a) == 0.0:
                    continue
                for t, g in M.step(q, name).items():
                    row[t] = max(row.get(t, 0.0), max(g, word.get(a)))
            delta[(q, a)] = row
    return Facv(R.states, R.alphabet, delta, R.initial, R.final)


def _broken_gen_extend(M):
    # ignores the given word and fires every rule at the word's own height
    good = gen_extend(M)

    def transition(q, given):
        out = FuzzySet.empty(M.states)
        for name, word in M.words.items():
            out = out | M.step(q, name).map_grades(lambda g, h=word.height(): min(g, h))
        return out

    return Facaw(good.states, good.alphabet, good.initial, good.final, transition, source=M)


class TestMutations:
    @pytest.mark.parametrize("theorem", ["T1", "L2", "RT"])
    def test_broken_retraction_is_caught(self, monkeypatch, theorem):
        monkeypatch.setattr(verify, "retract", _broken_retract)
        report = run_check(theorem, FAST)
        assert not report.passed
        first = report.failures[0].to_dict()
        assert set(first) >= {"trial", "automaton", "input", "lhs", "rhs"}

    @pytest.mark.parametrize("theorem", ["T2", "L3", "P2"])
    def test_broken_extension_is_caught(self, monkeypatch, theorem):
        monkeypatch.setattr(verify, "gen_extend", _broken_gen_extend)
        report = run_check(theorem, GeneratorConfig(trials=8, seed=3, fuzzy_tokens=4))
        assert not report.passed

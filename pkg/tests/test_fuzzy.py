import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fwa.fuzzy import (
    FuzzyError,
    FuzzySet,
    GradeError,
    UniverseMismatch,
    fuzzy_description,
    height,
    intersection,
    scale_product,
    singleton,
    support,
    union,
    zadeh_image,
)

from conftest import fuzzy_sets, grades

U = ("a", "b", "c")
SIGMA = ("1", "2", "3", "4", "5")
three = fuzzy_sets(U)


def fs(d, universe=U):
    return FuzzySet(universe, d)


def word_table(name):
    return {
        "S": fs({"1": 1.0, "2": 0.5, "3": 0.1}, SIGMA),
        "M": fs({"2": 0.2, "3": 1.0, "4": 0.2}, SIGMA),
        "L": fs({"3": 0.1, "4": 0.5, "5": 1.0}, SIGMA),
    }[name]


class TestConstruction:
    @pytest.mark.parametrize("bad", [1.5, -0.1, float("nan"), "0.3", True, None])
    def test_rejects_bad_grades(self, bad):
        with pytest.raises(GradeError):
            FuzzySet(U, {"a": bad})

    def test_rejects_foreign_element(self):
        with pytest.raises(UniverseMismatch):
            FuzzySet(U, {"z": 0.5})

    def test_rejects_duplicate_universe(self):
        with pytest.raises(FuzzyError):
            FuzzySet(("a", "a"), {})

    def test_zero_grades_are_not_stored(self):
        A = fs({"a": 0.0, "b": 0.4})
        assert A.as_dict() == {"b": 0.4}
        assert A == fs({"b": 0.4})

    def test_equality_ignores_universe_order(self):
        assert FuzzySet("abc", {"a": 0.2}) == FuzzySet("cba", {"a": 0.2})
        assert FuzzySet("abc", {"a": 0.2}) != FuzzySet("ab", {"a": 0.2})

    def test_immutable(self):
        with pytest.raises(AttributeError):
            fs({}).x = 1

    def test_empty_universe(self):
        E = FuzzySet(())
        assert height(E) == 0.0
        assert support(E) == frozenset()
        assert union(E, E) == E

    def test_isclose_tolerance(self):
        A = fs({"a": math.sqrt(0.1)})
        B = fs({"a": 0.3162})
        assert not A.isclose(B)
        assert A.isclose(B, tol=1e-4)


class TestOperations:
    def test_union_examples(self):
        assert union(fs({"a": 0.3}), fs({"a": 0.7})) == fs({"a": 0.7})
        A = fs({"a": 0.4, "c": 1.0})
        assert union(A, FuzzySet.empty(U)) == A
        X = ("1", "2", "3")
        assert union(fs({"1": 1.0, "2": 0.5}, X), fs({"2": 0.2, "3": 1.0}, X)) == fs(
            {"1": 1.0, "2": 0.5, "3": 1.0}, X
        )

    def test_intersection_examples(self):
        A = fs({"a": 0.4, "c": 1.0})
        assert intersection(A, FuzzySet.empty(U)) == FuzzySet.empty(U)
        assert intersection(fs({"a": 0.3}), fs({"a": 0.7})) == fs({"a": 0.3})
        # small & medium over flux levels 1..5
        assert intersection(word_table("S"), word_table("M")) == fs({"2": 0.2, "3": 0.1}, SIGMA)

    def test_universe_mismatch(self):
        with pytest.raises(UniverseMismatch):
            union(fs({}), FuzzySet("ab"))
        with pytest.raises(UniverseMismatch):
            intersection(fs({}), FuzzySet("ab"))

    def test_scale_product_examples(self):
        A = fs({"a": 1.0, "b": 0.3})
        assert scale_product(1.0, A) == A
        assert scale_product(0.0, A).is_empty()
        assert scale_product(0.5, A) == fs({"a": 0.5, "b": 0.3})
        with pytest.raises(GradeError):
            scale_product(2.0, A)

    def test_height_and_support(self):
        assert height(FuzzySet.empty(U)) == 0.0
        assert height(singleton(U, "b")) == 1.0
        assert height(word_table("S")) == 1.0
        assert support(FuzzySet.empty(U)) == frozenset()
        assert support(word_table("S")) == {"1", "2", "3"}
        assert support(scale_product(0.0, word_table("S"))) == frozenset()

    def test_getitem_outside_universe(self):
        with pytest.raises(UniverseMismatch):
            fs({})["z"]
        assert fs({}).get("z") == 0.0

    def test_zadeh_image_examples(self):
        A = FuzzySet("123", {"1": 0.4, "2": 0.9, "3": 0.2})
        assert zadeh_image({"1": "a", "2": "a", "3": "b"}, A) == FuzzySet("ab", {"a": 0.9, "b": 0.2})
        assert zadeh_image(lambda x: x, A) == A
        S = word_table("S")
        assert zadeh_image(lambda x: "c", S) == FuzzySet("c", {"c": 1.0})

    def test_zadeh_image_errors(self):
        A = FuzzySet("12", {"1": 0.4})
        with pytest.raises(FuzzyError):
            zadeh_image({"1": "a"}, A)
        with pytest.raises(UniverseMismatch):
            zadeh_image({"1": "a", "2": "b"}, A, codomain=["a"])

    def test_zadeh_image_with_codomain_keeps_unreached_points(self):
        A = FuzzySet("12", {"1": 0.4})
        img = zadeh_image({"1": "a", "2": "a"}, A, codomain="abc")
        assert img.universe == ("a", "b", "c")
        assert img == FuzzySet("abc", {"a": 0.4})

    def test_fuzzy_description_examples(self):
        meanings = {n: word_table(n) for n in "SML"}
        empty = FuzzySet.empty(SIGMA)
        assert fuzzy_description(meanings, empty) == FuzzySet("SML")
        S_almost = word_table("S").map_grades(math.sqrt)
        d = fuzzy_description(meanings, S_almost)
        assert d["S"] == 1.0
        assert d["M"] == math.sqrt(0.1)
        assert d["L"] == 0.1
        assert d.isclose(FuzzySet("SML", {"S": 1.0, "M": 0.3162, "L": 0.1}), tol=1e-4)
        assert fuzzy_description({"S": word_table("S")}, word_table("S")) == FuzzySet("S", {"S": 1.0})

    def test_fuzzy_description_universe_mismatch(self):
        with pytest.raises(UniverseMismatch):
            fuzzy_description({"S": word_table("S")}, fs({}))


class TestLatticeLaws:
    @given(three, three)
    def test_commutative(self, A, B):
        assert union(A, B) == union(B, A)
        assert intersection(A, B) == intersection(B, A)

    @given(three, three, three)
    def test_associative(self, A, B, C):
        assert union(union(A, B), C) == union(A, union(B, C))
        assert intersection(intersection(A, B), C) == intersection(A, intersection(B, C))

    @given(three, three)
    def test_idempotent_and_absorption(self, A, B):
        assert union(A, A) == A
        assert intersection(A, A) == A
        assert union(A, intersection(A, B)) == A
        assert intersection(A, union(A, B)) == A

    @given(three, three, grades)
    def test_grade_closure(self, A, B, lam):
        inputs = set(A.as_dict().values()) | set(B.as_dict().values()) | {lam}
        for out in (union(A, B), intersection(A, B), scale_product(lam, A)):
            assert set(out.as_dict().values()) <= inputs
        assert height(A) in inputs | {0.0}

    @given(three, three, three)
    def test_monotone(self, A, B, C):
        lo, hi = intersection(A, B), union(A, B)
        assert lo <= hi
        assert height(lo) <= height(hi)
        assert union(lo, C) <= union(hi, C)
        assert intersection(lo, C) <= intersection(hi, C)

    @given(three, grades)
    def test_scale_product_shrinks(self, A, lam):
        scaled = scale_product(lam, A)
        assert scaled <= A
        assert height(scaled) == min(lam, height(A))

    @given(st.dictionaries(st.sampled_from("pqr"), fuzzy_sets(U), min_size=1), st.sampled_from(U))
    def test_description_of_a_point(self, meanings, x):
        d = fuzzy_description(meanings, singleton(U, x))
        for label, M in meanings.items():
            assert d[label] == M[x]

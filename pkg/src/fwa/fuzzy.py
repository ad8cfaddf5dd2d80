"""Finite-universe fuzzy sets under max-min (Goedel) semantics.

Grades are plain floats in ``[0, 1]``.  Every operation here is built from
``min`` and ``max`` only, so no rounding happens after construction and
computed grades can be compared with ``==``.  The ``tol`` arguments exist for
matching decimally rounded reference tables and default to exact comparison.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from typing import Any

Grade = float
Element = Hashable


class FuzzyError(ValueError):
    """Base class for invalid fuzzy data."""


class GradeError(FuzzyError):
    pass


class UniverseMismatch(FuzzyError):
    pass


def check_grade(value: Any) -> Grade:
    """Return ``value`` as a float grade, rejecting anything outside [0, 1]."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise GradeError(f"grade must be a number, got {value!r}")
    g = float(value)
    if math.isnan(g) or g < 0.0 or g > 1.0:
        raise GradeError(f"grade {value!r} is outside [0, 1]")
    return g


def grades_close(a: Grade, b: Grade, tol: float = 0.0) -> bool:
    return a == b if tol == 0.0 else abs(a - b) <= tol


class FuzzySet:
    """An immutable fuzzy subset of an explicit, ordered, finite universe.

    Only nonzero grades are stored.  Two sets are equal when they have the
    same universe (as a set) and agree pointwise on it.

    >>> A = FuzzySet("abc", {"a": 0.3, "b": 1})
    >>> A["c"], A.height(), sorted(A.support())
    (0.0, 1.0, ['a', 'b'])
    """

    __slots__ = ("_universe", "_members", "_grades")

    def __init__(self, universe: Iterable[Element], grades: Mapping[Element, Any] | None = None):
        universe = tuple(universe)
        members = frozenset(universe)
        if len(members) != len(universe):
            raise FuzzyError(f"universe has duplicate elements: {universe!r}")
        stored: dict[Element, Grade] = {}
        for x, value in (grades or {}).items():
            if x not in members:
                raise UniverseMismatch(f"element {x!r} is not in the universe")
            g = check_grade(value)
            if g > 0.0:
                stored[x] = g
        object.__setattr__(self, "_universe", universe)
        object.__setattr__(self, "_members", members)
        object.__setattr__(self, "_grades", stored)

    def __setattr__(self, name, value):
        raise AttributeError("FuzzySet is immutable")

    @classmethod
    def _trusted(cls, universe: tuple, members: frozenset, grades: dict) -> FuzzySet:
        # grades already validated and nonzero
        obj = object.__new__(cls)
        object.__setattr__(obj, "_universe", universe)
        object.__setattr__(obj, "_members", members)
        object.__setattr__(obj, "_grades", grades)
        return obj

    @classmethod
    def empty(cls, universe: Iterable[Element]) -> FuzzySet:
        return cls(universe)

    @property
    def universe(self) -> tuple:
        return self._universe

    def __getitem__(self, x: Element) -> Grade:
        if x not in self._members:
            raise UniverseMismatch(f"element {x!r} is not in the universe")
        return self._grades.get(x, 0.0)

    def get(self, x: Element) -> Grade:
        """Grade of ``x``; 0 for elements outside the universe."""
        return self._grades.get(x, 0.0)

    def items(self) -> Iterator[tuple[Element, Grade]]:
        """Nonzero ``(element, grade)`` pairs in universe order."""
        for x in self._universe:
            g = self._grades.get(x)
            if g is not None:
                yield x, g

    def as_dict(self) -> dict[Element, Grade]:
        return dict(self.items())

    def support(self) -> frozenset:
        return frozenset(self._grades)

    def height(self) -> Grade:
        return max(self._grades.values(), default=0.0)

    def is_empty(self) -> bool:
        return not self._grades

    def same_universe(self, other: FuzzySet) -> bool:
        return self._members == other._members

    def _require_same_universe(self, other: FuzzySet) -> None:
        if not self.same_universe(other):
            raise UniverseMismatch(
                f"universes differ: {list(self._universe)!r} vs {list(other._universe)!r}"
            )

    def issubset(self, other: FuzzySet) -> bool:
        self._require_same_universe(other)
        return all(g <= other._grades.get(x, 0.0) for x, g in self._grades.items())

    __le__ = issubset

    def __or__(self, other: FuzzySet) -> FuzzySet:
        return union(self, other)

    def __and__(self, other: FuzzySet) -> FuzzySet:
        return intersection(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FuzzySet):
            return NotImplemented
        return self._members == other._members and self._grades == other._grades

    def __hash__(self) -> int:
        return hash((self._members, frozenset(self._grades.items())))

    def isclose(self, other: FuzzySet, tol: float = 0.0) -> bool:
        if not self.same_universe(other):
            return False
        return all(grades_close(self.get(x), other.get(x), tol) for x in self._universe)

    def restrict(self, universe: Iterable[Element]) -> FuzzySet:
        """Project onto a sub-universe, dropping grades outside it."""
        universe = tuple(universe)
        members = frozenset(universe)
        if not members <= self._members:
            raise UniverseMismatch("restriction target is not a sub-universe")
        kept = {x: g for x, g in self._grades.items() if x in members}
        return FuzzySet._trusted(universe, members, kept)

    def map_grades(self, fn: Callable[[Grade], Any]) -> FuzzySet:
        """Apply ``fn`` to every grade (including zeros), validating the result."""
        return FuzzySet(self._universe, {x: fn(self.get(x)) for x in self._universe})

    def __repr__(self) -> str:
        body = " + ".join(f"{g!r}/{x}" for x, g in self.items()) or "0"
        return f"FuzzySet({body})"


def singleton(universe: Iterable[Element], x: Element) -> FuzzySet:
    """The crisp singleton ``1/x``."""
    return FuzzySet(universe, {x: 1.0})


def union(A: FuzzySet, B: FuzzySet) -> FuzzySet:
    A._require_same_universe(B)
    merged = dict(A._grades)
    for x, g in B._grades.items():
        if g > merged.get(x, 0.0):
            merged[x] = g
    return FuzzySet._trusted(A._universe, A._members, merged)


def intersection(A: FuzzySet, B: FuzzySet) -> FuzzySet:
    A._require_same_universe(B)
    small, big = (A, B) if len(A._grades) <= len(B._grades) else (B, A)
    out = {}
    for x, g in small._grades.items():
        h = big._grades.get(x)
        if h is not None:
            out[x] = g if g < h else h
    return FuzzySet._trusted(A._universe, A._members, out)


def scale_product(lam: Grade, A: FuzzySet) -> FuzzySet:
    """``lam . A``: pointwise ``min(lam, A(x))``."""
    lam = check_grade(lam)
    if lam == 0.0:
        return FuzzySet._trusted(A._universe, A._members, {})
    out = {x: (g if g < lam else lam) for x, g in A._grades.items()}
    return FuzzySet._trusted(A._universe, A._members, out)


def height(A: FuzzySet) -> Grade:
    return A.height()


def support(A: FuzzySet) -> frozenset:
    return A.support()


def zadeh_image(f: Mapping[Element, Element] | Callable[[Element], Element],
                A: FuzzySet, codomain: Iterable[Element] | None = None) -> FuzzySet:
    """Image of ``A`` under a crisp map via the extension principle.

    ``f(A)(y)`` is the largest grade of any preimage of ``y``.  When
    ``codomain`` is omitted the universe of the result is the image of A's
    universe, in first-seen order.
    """
    if isinstance(f, Mapping):
        mapping = f

        def apply(x):
            try:
                return mapping[x]
            except KeyError:
                raise FuzzyError(f"map is undefined on {x!r}") from None
    else:
        apply = f

    images = {x: apply(x) for x in A.universe}
    if codomain is None:
        codomain = tuple(dict.fromkeys(images.values()))
    else:
        codomain = tuple(codomain)
    target = set(codomain)
    for x, y in images.items():
        if y not in target:
            raise UniverseMismatch(f"image {y!r} of {x!r} is outside the codomain")
    grades: dict[Element, Grade] = {}
    for x, g in A.items():
        y = images[x]
        if g > grades.get(y, 0.0):
            grades[y] = g
    return FuzzySet(codomain, grades)


def fuzzy_description(meanings: Mapping[Any, FuzzySet], A: FuzzySet) -> FuzzySet:
    """Upper fuzzy description of ``A`` in terms of named fuzzy meanings.

    The grade of label ``l`` is ``height(meanings[l] & A)``: how possibly the
    input ``A`` is described by ``l``.
    """
    out = {}
    for label, meaning in meanings.items():
        out[label] = intersection(meaning, A).height()
    return FuzzySet(tuple(meanings), out)

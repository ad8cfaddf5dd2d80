"""Max-min fuzzy automata over values, words, and all words.

Three flavors share one evaluation path.  Each exposes ``states``,
``initial``, ``final`` and a one-step transition ``step(q, token)``; the
string semantics in :func:`extended_delta` and :func:`accept` only use that
interface.

* :class:`Facv` reads crisp symbols.
* :class:`Facw` reads named words, i.e. fuzzy subsets of an underlying
  symbol alphabet.
* :class:`Facaw` reads arbitrary fuzzy subsets of the underlying alphabet.
  Its transition is a function evaluated on demand and never tabulated.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from types import MappingProxyType
from typing import Any, Union

from .fuzzy import (
    FuzzyError,
    FuzzySet,
    Grade,
    UniverseMismatch,
    intersection,
    scale_product,
    singleton,
    union,
)

State = Hashable
Symbol = Hashable


class AutomatonError(FuzzyError):
    pass


class UnknownToken(AutomatonError, KeyError):
    """An input token is not in the automaton's alphabet."""

    def __init__(self, token):
        super().__init__(token)
        self.token = token

    def __str__(self):
        return f"unknown input token {self.token!r}"


def _ordered(items: Iterable, what: str) -> tuple:
    items = tuple(items)
    if len(set(items)) != len(items):
        raise AutomatonError(f"duplicate {what}: {items!r}")
    return items


def _as_final(states: tuple, final) -> FuzzySet:
    if isinstance(final, FuzzySet):
        if final.universe != states and set(final.universe) != set(states):
            raise AutomatonError("final set must be a fuzzy subset of the states")
        return FuzzySet(states, final.as_dict())
    return FuzzySet(states, final or {})


def _build_delta(states: tuple, inputs: tuple, delta: Mapping, what: str) -> Mapping:
    qs, ins = set(states), set(inputs)
    rows = {}
    for key, row in delta.items():
        try:
            q, a = key
        except (TypeError, ValueError):
            raise AutomatonError(f"delta key must be a (state, {what}) pair, got {key!r}") from None
        if q not in qs:
            raise AutomatonError(f"delta row from unknown state {q!r}")
        if a not in ins:
            raise AutomatonError(f"delta row on unknown {what} {a!r}")
        row = _as_final(states, row)
        if not row.is_empty():
            rows[(q, a)] = row
    return MappingProxyType(rows)


class _TableAutomaton:
    """Common storage for the two tabulated flavors.

    Missing delta rows are the empty fuzzy set; empty rows are dropped on
    construction so that equality does not depend on how sparse the input
    was.
    """

    _input_kind = "symbol"

    def _init_common(self, states, initial, final):
        states = _ordered(states, "states")
        if initial not in set(states):
            raise AutomatonError(f"initial state {initial!r} is not a state")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "_state_set", frozenset(states))
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "final", _as_final(states, final))
        object.__setattr__(self, "_empty", FuzzySet.empty(states))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def inputs(self) -> tuple:
        raise NotImplementedError

    def step(self, q: State, token) -> FuzzySet:
        """``delta(q, token)``; unknown tokens raise :class:`UnknownToken`."""
        row = self.delta.get((q, token))
        if row is not None:
            return row
        if token not in self._input_set:
            raise UnknownToken(token)
        if q not in self._state_set:
            raise AutomatonError(f"unknown state {q!r}")
        return self._empty

    def grades(self) -> set[Grade]:
        """Every grade stored in the automaton."""
        out = set(self.final.as_dict().values())
        for row in self.delta.values():
            out.update(row.as_dict().values())
        return out


class Facv(_TableAutomaton):
    """Fuzzy automaton over a finite alphabet of crisp symbols.

    ``delta`` maps ``(state, symbol)`` to a fuzzy subset of the states (or a
    plain ``{state: grade}`` dict).  ``final`` is the fuzzy set of final
    states.
    """

    def __init__(self, states: Iterable[State], alphabet: Iterable[Symbol],
                 delta: Mapping, initial: State, final):
        self._init_common(states, initial, final)
        alphabet = _ordered(alphabet, "symbols")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "_input_set", frozenset(alphabet))
        object.__setattr__(self, "delta", _build_delta(self.states, alphabet, delta, "symbol"))

    @property
    def inputs(self) -> tuple:
        return self.alphabet

    def __eq__(self, other):
        if not isinstance(other, Facv):
            return NotImplemented
        return (set(self.states) == set(other.states)
                and set(self.alphabet) == set(other.alphabet)
                and self.initial == other.initial
                and self.final == other.final
                and dict(self.delta) == dict(other.delta))

    __hash__ = None

    def __repr__(self):
        return (f"Facv(states={list(self.states)!r}, alphabet={list(self.alphabet)!r}, "
                f"initial={self.initial!r}, {len(self.delta)} rows)")


class Facw(_TableAutomaton):
    """Fuzzy automaton whose inputs are named words over ``underlying_alphabet``.

    ``words`` maps a word name to its fuzzy subset of the underlying
    alphabet; distinct names must denote distinct fuzzy sets.  Transitions
    are keyed by word name.
    """

    _input_kind = "word"

    def __init__(self, states: Iterable[State], underlying_alphabet: Iterable[Symbol],
                 words: Mapping[Any, FuzzySet | Mapping], delta: Mapping,
                 initial: State, final):
        self._init_common(states, initial, final)
        sigma = _ordered(underlying_alphabet, "symbols")
        built: dict[Any, FuzzySet] = {}
        seen: dict[FuzzySet, Any] = {}
        for name, word in words.items():
            if isinstance(word, FuzzySet):
                if set(word.universe) != set(sigma):
                    raise AutomatonError(f"word {name!r} is not over the underlying alphabet")
                word = FuzzySet(sigma, word.as_dict())
            else:
                word = FuzzySet(sigma, word)
            if word in seen:
                raise AutomatonError(f"words {seen[word]!r} and {name!r} denote the same fuzzy set")
            seen[word] = name
            built[name] = word
        object.__setattr__(self, "underlying_alphabet", sigma)
        object.__setattr__(self, "words", MappingProxyType(built))
        object.__setattr__(self, "_input_set", frozenset(built))
        object.__setattr__(self, "delta", _build_delta(self.states, tuple(built), delta, "word"))

    @property
    def inputs(self) -> tuple:
        return tuple(self.words)

    def __eq__(self, other):
        if not isinstance(other, Facw):
            return NotImplemented
        return (set(self.states) == set(other.states)
                and set(self.underlying_alphabet) == set(other.underlying_alphabet)
                and dict(self.words) == dict(other.words)
                and self.initial == other.initial
                and self.final == other.final
                and dict(self.delta) == dict(other.delta))

    __hash__ = None

    def __repr__(self):
        return (f"Facw(states={list(self.states)!r}, words={list(self.words)!r}, "
                f"initial={self.initial!r}, {len(self.delta)} rows)")


class Facaw:
    """Fuzzy automaton over *all* fuzzy subsets of ``alphabet``.

    ``transition(q, A)`` is called on demand; ``source`` records the
    automaton it was derived from.
    """

    def __init__(self, states: Sequence[State], alphabet: Sequence[Symbol], initial: State,
                 final: FuzzySet, transition: Callable[[State, FuzzySet], FuzzySet],
                 source: Any = None):
        self.states = tuple(states)
        self.alphabet = tuple(alphabet)
        self.initial = initial
        self.final = final
        self.source = source
        self._transition = transition
        self._alphabet_set = frozenset(self.alphabet)

    def step(self, q: State, word: FuzzySet) -> FuzzySet:
        if not isinstance(word, FuzzySet):
            raise UnknownToken(word)
        if set(word.universe) != self._alphabet_set:
            raise UniverseMismatch("input word is not a fuzzy subset of the underlying alphabet")
        return self._transition(q, word)

    def __repr__(self):
        return f"Facaw(states={list(self.states)!r}, alphabet={list(self.alphabet)!r})"


Automaton = Union[Facv, Facw, Facaw]


def extended_delta(M: Automaton, p: State, w: Iterable) -> FuzzySet:
    """Fuzzy set of states reachable from ``p`` by reading the string ``w``.

    Starts from ``1/p``; each token ``a`` maps the current distribution ``D``
    to the union over ``q`` of ``D(q) . step(q, a)``.
    """
    if p not in M.states:
        raise AutomatonError(f"unknown state {p!r}")
    current = singleton(M.states, p)
    for token in w:
        nxt = FuzzySet.empty(M.states)
        for q, g in current.items():
            nxt = union(nxt, scale_product(g, M.step(q, token)))
        current = nxt
    return current


def accept(M: Automaton, w: Iterable) -> Grade:
    """Degree to which ``M`` accepts the string ``w``."""
    return intersection(extended_delta(M, M.initial, w), M.final).height()


def is_complete(M: Facw) -> bool:
    """True when every underlying symbol has positive grade in some word."""
    covered = set()
    for word in M.words.values():
        covered |= word.support()
    return covered >= set(M.underlying_alphabet)


def lift_facv(M: Facv) -> Facw:
    """View a symbol automaton as a word automaton via singleton words.

    The word for symbol ``a`` is ``1/a`` and is named ``a``.
    """
    words = {a: singleton(M.alphabet, a) for a in M.alphabet}
    return Facw(M.states, M.alphabet, words, dict(M.delta), M.initial, M.final)

"""Products, subautomata and homomorphisms of fuzzy automata.

Everything here works uniformly on :class:`~fwa.automata.Facv` and
:class:`~fwa.automata.Facw` (for the latter the input alphabet is the set of
word names).  Homomorphism checks also accept a lazy
:class:`~fwa.automata.Facaw` when the caller supplies the inputs to test.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .automata import AutomatonError, Facaw, Facv, Facw
from .fuzzy import FuzzySet


@dataclass(frozen=True)
class StateMap:
    """A total map between two finite state sets."""

    source: tuple
    target: tuple
    mapping: Mapping = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        mapping = dict(self.mapping)
        missing = [q for q in self.source if q not in mapping]
        if missing:
            raise AutomatonError(f"state map is undefined on {missing!r}")
        extra = [q for q in mapping if q not in set(self.source)]
        if extra:
            raise AutomatonError(f"state map has unknown source states {extra!r}")
        targets = set(self.target)
        bad = {q: v for q, v in mapping.items() if v not in targets}
        if bad:
            raise AutomatonError(f"state map sends states outside the target: {bad!r}")
        object.__setattr__(self, "mapping", MappingProxyType(mapping))

    @classmethod
    def identity(cls, states: Iterable) -> StateMap:
        states = tuple(states)
        return cls(states, states, {q: q for q in states})

    def __call__(self, q):
        return self.mapping[q]

    def image(self) -> tuple:
        """``f(Q1)``, in target order."""
        hit = set(self.mapping.values())
        return tuple(q for q in self.target if q in hit)


def _inputs(M) -> tuple:
    return M.inputs


def _same_alphabet(M1, M2) -> bool:
    if type(M1) is not type(M2):
        return False
    if isinstance(M1, Facw):
        return (set(M1.underlying_alphabet) == set(M2.underlying_alphabet)
                and dict(M1.words) == dict(M2.words))
    return set(M1.alphabet) == set(M2.alphabet)


def _require_same_alphabet(M1, M2) -> None:
    if not _same_alphabet(M1, M2):
        raise AutomatonError("automata must share the same input alphabet")


def pair_name(p: Hashable, q: Hashable) -> str:
    return f"({p},{q})"


def product(M1: Facv | Facw, M2: Facv | Facw,
            name: Callable[[Hashable, Hashable], Hashable] = pair_name):
    """Synchronous product with ``min`` on transitions and final grades.

    Product states are named by ``name(p, q)``; the default renders
    ``"(p,q)"`` and the names must come out distinct.
    """
    _require_same_alphabet(M1, M2)
    pairs = [(p, q) for p in M1.states for q in M2.states]
    names = {pq: name(*pq) for pq in pairs}
    if len(set(names.values())) != len(names):
        raise AutomatonError("product state names collide; pass a different name function")
    states = [names[pq] for pq in pairs]
    final = {}
    for (p, q), n in names.items():
        g = min(M1.final.get(p), M2.final.get(q))
        if g > 0.0:
            final[n] = g
    delta = {}
    for sigma in _inputs(M1):
        for p1, q1 in pairs:
            r1 = M1.step(p1, sigma)
            r2 = M2.step(q1, sigma)
            if r1.is_empty() or r2.is_empty():
                continue
            row = {}
            for p2, g1 in r1.items():
                for q2, g2 in r2.items():
                    row[names[(p2, q2)]] = g1 if g1 < g2 else g2
            delta[(names[(p1, q1)], sigma)] = row
    initial = names[(M1.initial, M2.initial)]
    if isinstance(M1, Facw):
        return Facw(states, M1.underlying_alphabet, dict(M1.words), delta, initial, final)
    return Facv(states, M1.alphabet, delta, initial, final)


def homomorphism_violations(f: StateMap, M1, M2, inputs: Iterable | None = None) -> list[str]:
    """Describe every way ``f`` fails to be a homomorphism from ``M1`` to ``M2``.

    An empty list means ``f`` is a homomorphism.  ``inputs`` overrides the
    tokens checked in the transition condition; it is required for lazy
    automata, whose alphabet is infinite.
    """
    if set(f.source) != set(M1.states) or not set(f.target) <= set(M2.states):
        raise AutomatonError("state map does not go from M1's states to M2's states")
    if inputs is None:
        if isinstance(M1, Facaw) or isinstance(M2, Facaw):
            raise AutomatonError("lazy automata need an explicit list of inputs to check")
        _require_same_alphabet(M1, M2)
        inputs = _inputs(M1)
    inputs = list(inputs)
    problems = []
    if f(M1.initial) != M2.initial:
        problems.append(f"condition 1: f({M1.initial!r}) = {f(M1.initial)!r} is not the initial state {M2.initial!r}")
    fibers: dict = {}
    for r in M1.states:
        fibers.setdefault(f(r), []).append(r)
    for sigma in inputs:
        for p in M1.states:
            row1 = M1.step(p, sigma)
            row2 = M2.step(f(p), sigma)
            for y, fiber in fibers.items():
                lhs = row2.get(y)
                rhs = max(row1.get(r) for r in fiber)
                if lhs != rhs:
                    problems.append(
                        f"condition 2: delta2({f(p)!r}, {sigma!r})({y!r}) = {lhs!r} "
                        f"but the fiber maximum from {p!r} is {rhs!r}"
                    )
    for q in M1.states:
        if M1.final.get(q) > M2.final.get(f(q)):
            problems.append(f"condition 3: F1({q!r}) = {M1.final.get(q)!r} > F2({f(q)!r}) = {M2.final.get(f(q))!r}")
    return problems


def is_homomorphism(f: StateMap, M1, M2, inputs: Iterable | None = None) -> bool:
    return not homomorphism_violations(f, M1, M2, inputs)


def restrict(M: Facv | Facw, states: Iterable):
    """The subautomaton of ``M`` on ``states``; rows are projected onto them."""
    states = tuple(states)
    keep = set(states)
    if M.initial not in keep:
        raise AutomatonError("restriction must keep the initial state")
    delta = {
        (q, a): row.restrict(states)
        for (q, a), row in M.delta.items()
        if q in keep
    }
    final = M.final.restrict(states)
    if isinstance(M, Facw):
        return Facw(states, M.underlying_alphabet, dict(M.words), delta, M.initial, final)
    return Facv(states, M.alphabet, delta, M.initial, final)


def hom_image(f: StateMap, M1: Facv | Facw, M2: Facv | Facw):
    """``f(M1)``: ``M2`` restricted to the image of ``f``.

    Raises :class:`AutomatonError` if ``f`` is not a homomorphism.
    """
    problems = homomorphism_violations(f, M1, M2)
    if problems:
        raise AutomatonError("not a homomorphism: " + "; ".join(problems))
    return restrict(M2, f.image())


def is_subautomaton(M1: Facv | Facw, M2: Facv | Facw) -> bool:
    """``M1 <= M2``: shared alphabet, ``Q1`` inside ``Q2``, same initial state,
    ``F1`` below ``F2``, and ``M1``'s transitions are ``M2``'s restricted to ``Q1``."""
    if not _same_alphabet(M1, M2):
        return False
    q1 = set(M1.states)
    if not q1 <= set(M2.states) or M1.initial != M2.initial:
        return False
    if any(g > M2.final.get(q) for q, g in M1.final.items()):
        return False
    return all(
        M1.step(q, a) == M2.step(q, a).restrict(M1.states)
        for q in M1.states
        for a in _inputs(M1)
    )


def image_facaw(f: StateMap, E2: Facaw) -> Facaw:
    """Lazy automaton ``E2`` restricted to ``f(Q1)``."""
    states = f.image()

    def transition(q, word: FuzzySet) -> FuzzySet:
        return E2.step(q, word).restrict(states)

    return Facaw(states, E2.alphabet, E2.initial, E2.final.restrict(states), transition, source=E2)

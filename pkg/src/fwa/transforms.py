"""Retraction (words to values) and generalized extension (words to all words).

Both constructions come from a fuzzy-rule reading of a word automaton: each
pair ``(p, A)`` with a nonempty ``delta(p, A)`` is a rule *if the state is p
and the input is A then the next state is delta(p, A)*.  Matching a crisp or
fuzzy input against every rule and taking the max of the implied sets
collapses to the closed forms below.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

from .automata import Facaw, Facv, Facw, accept
from .fuzzy import FuzzySet, Grade, UniverseMismatch, intersection, scale_product, union


class BudgetExceeded(RuntimeError):
    """An enumeration would visit more tuples than the configured budget."""


DEFAULT_BUDGET = 10**6


def retract(M: Facw) -> Facv:
    """Word automaton -> symbol automaton.

    ``delta_down(q, a)(q') = max over words A of min(A(a), delta(q, A)(q'))``.
    States, initial state and final set are copied unchanged.
    """
    sigma = M.underlying_alphabet
    delta = {}
    for q in M.states:
        for a in sigma:
            row: dict = {}
            for name, word in M.words.items():
                lam = word.get(a)
                if lam == 0.0:
                    continue
                for target, g in M.step(q, name).items():
                    v = g if g < lam else lam
                    if v > row.get(target, 0.0):
                        row[target] = v
            if row:
                delta[(q, a)] = row
    return Facv(M.states, sigma, delta, M.initial, M.final)


def _matching_degree(word: FuzzySet, given: FuzzySet) -> Grade:
    # height(word & given) over the underlying alphabet
    best = 0.0
    for a, g in word.items():
        h = given.get(a)
        v = g if g < h else h
        if v > best:
            best = v
    return best


def gen_extend(M: Facw) -> Facaw:
    """Word automaton -> automaton over all fuzzy words.

    For an arbitrary fuzzy input ``A'``::

        delta_up(q, A')(q') = max over A in words, a in Sigma of
                              min(A(a), A'(a), delta(q, A)(q'))

    The transition is evaluated lazily on every call.
    """
    words = M.words
    states = M.states

    def transition(q, given: FuzzySet) -> FuzzySet:
        row: dict = {}
        for name, word in words.items():
            lam = _matching_degree(word, given)
            if lam == 0.0:
                continue
            for target, g in M.step(q, name).items():
                v = g if g < lam else lam
                if v > row.get(target, 0.0):
                    row[target] = v
        return FuzzySet(states, row)

    return Facaw(states, M.underlying_alphabet, M.initial, M.final, transition, source=M)


def extend_facv(M: Facv) -> Facaw:
    """Symbol automaton -> automaton over all fuzzy words, by Zadeh extension.

    ``delta_hat(p, A)`` is the union over symbols ``a`` of ``A(a) . delta(p, a)``.
    """
    states = M.states

    def transition(p, given: FuzzySet) -> FuzzySet:
        out = FuzzySet.empty(states)
        for a, g in given.items():
            out = union(out, scale_product(g, M.step(p, a)))
        return out

    return Facaw(states, M.alphabet, M.initial, M.final, transition, source=M)


def word_accept(E: Facaw, W: Sequence[FuzzySet]) -> Grade:
    """Acceptance degree of a string of fuzzy words by a lazy automaton."""
    for word in W:
        if not isinstance(word, FuzzySet) or set(word.universe) != set(E.alphabet):
            raise UniverseMismatch("every input word must be a fuzzy subset of the alphabet")
    return accept(E, W)


def is_delta_preserving(M: Facw) -> bool:
    """True when the generalized extension agrees with ``M`` on its own words."""
    ext = gen_extend(M)
    return all(
        ext.step(p, word) == M.step(p, name)
        for p in M.states
        for name, word in M.words.items()
    )


def prop3_conditions(M: Facw) -> bool:
    """Syntactic test equivalent to :func:`is_delta_preserving`.

    For every ``p, q`` and word ``A`` with ``t = delta(p, A)(q)``:

    1. some symbol has ``A(a) >= t`` (vacuous when ``t == 0``);
    2. for every symbol with ``A(a) > t`` and every other word ``A2``,
       ``A2(a) <= t`` or ``delta(p, A2)(q) <= t``.
    """
    sigma = M.underlying_alphabet
    for p in M.states:
        for q in M.states:
            for name, word in M.words.items():
                t = M.step(p, name).get(q)
                if t > 0.0 and not any(word.get(a) >= t for a in sigma):
                    return False
                for a in sigma:
                    if word.get(a) <= t:
                        continue
                    for other, other_word in M.words.items():
                        if other == name:
                            continue
                        if other_word.get(a) > t and M.step(p, other).get(q) > t:
                            return False
    return True


@dataclass(frozen=True)
class IndependenceReport:
    """Bounded-horizon lower bound on the independence degree.

    ``bound`` is the largest ``|L_up(W) - L(W)|`` over word strings ``W`` of
    length at most ``max_len``; ``witness`` is the first string (shortest,
    then in word order) attaining it.
    """

    max_len: int
    bound: Grade
    witness: tuple
    word_value: Grade
    extension_value: Grade
    strings_checked: int


def _check_budget(n_words: int, max_len: int, budget: int) -> None:
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    total = n_words ** max_len
    if total > budget:
        raise BudgetExceeded(
            f"enumeration needs |words|^max_len = {n_words}^{max_len} = {total} strings, "
            f"budget is {budget}"
        )


def _advance(step, dist: FuzzySet, token) -> FuzzySet:
    out = FuzzySet.empty(dist.universe)
    for q, g in dist.items():
        out = union(out, scale_product(g, step(q, token)))
    return out


def independence_degree(M: Facw, max_len: int, budget: int = DEFAULT_BUDGET) -> IndependenceReport:
    """Exact maximum deviation between ``M`` and its generalized extension on
    all word strings of length ``<= max_len``.

    This is a lower bound on the supremum over all lengths.
    """
    names = tuple(M.words)
    _check_budget(len(names), max_len, budget)
    ext = gen_extend(M)
    # delta_up restricted to the word alphabet, tabulated once
    up_rows = {(q, n): ext.step(q, M.words[n]) for q in M.states for n in names}

    def up_step(q, n):
        return up_rows[(q, n)]

    start = FuzzySet(M.states, {M.initial: 1.0})
    frontier = [((), start, start)]
    best = None
    checked = 0
    for length in range(max_len + 1):
        nxt = []
        for string, d_word, d_up in frontier:
            lw = intersection(d_word, M.final).height()
            lu = intersection(d_up, M.final).height()
            checked += 1
            diff = abs(lu - lw)
            if best is None or diff > best[0]:
                best = (diff, string, lw, lu)
            if length < max_len:
                for n in names:
                    nxt.append((string + (n,), _advance(M.step, d_word, n), _advance(up_step, d_up, n)))
        frontier = nxt
    diff, witness, lw, lu = best
    return IndependenceReport(max_len, diff, witness, lw, lu, checked)


def is_consistent(M: Facw, max_len: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether ``M`` and its generalized extension agree on every word string
    up to ``max_len``.

    ``False`` is definitive.  ``True`` only covers the checked horizon.
    """
    return independence_degree(M, max_len, budget).bound == 0.0


def all_strings(alphabet: Sequence, max_len: int):
    """Every string over ``alphabet`` of length 0..max_len, shortest first."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)

"""Brute-force oracles and randomized checks for the retraction and
generalized-extension identities.

The ``*_rhs`` and ``*_closed_form`` functions evaluate the sums over every
tuple of words (and symbols) literally.  They share nothing with the
automaton folds in :mod:`fwa.transforms` beyond the word automaton's own
string semantics, which is what makes them useful as oracles.

:func:`run_checks` drives named suites over seeded random instances.  Grades
are drawn from a small pool so ties in ``min``/``max`` are common, and every
comparison is exact.
"""

from __future__ import annotations

import itertools
import random
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from . import jsonio
from .algebra import StateMap, hom_image, homomorphism_violations, image_facaw, product
from .automata import Facv, Facw, accept, extended_delta, lift_facv
from .fuzzy import FuzzySet, Grade
from .transforms import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    all_strings,
    extend_facv,
    gen_extend,
    is_delta_preserving,
    prop3_conditions,
    retract,
    word_accept,
)

GRADE_POOL: tuple[float, ...] = tuple(i / 10 for i in range(11))


def _require_budget(count: int, budget: int, what: str) -> None:
    if count > budget:
        raise BudgetExceeded(f"{what} would enumerate {count} tuples; budget is {budget}")


def _word_paths(M: Facw, p, n: int):
    """Yield ``(A1..An, delta(p, A1..An))`` for every word string of length n."""
    names = tuple(M.words)
    for string in itertools.product(names, repeat=n):
        yield string, extended_delta(M, p, string)


def theorem1_rhs(M: Facw, w: Sequence, budget: int = DEFAULT_BUDGET) -> Grade:
    """Acceptance degree of the symbol string ``w`` computed from words only.

    ``max over A1..An of min(L_w(M)(A1..An), A1(a1), ..., An(an))``
    """
    w = tuple(w)
    _require_budget(len(M.words) ** len(w), budget, "theorem1_rhs")
    best = 0.0
    for string in itertools.product(tuple(M.words), repeat=len(w)):
        v = accept(M, string)
        for name, a in zip(string, w):
            v = min(v, M.words[name][a])
        best = max(best, v)
    return best


def theorem2_rhs(M: Facw, W: Sequence[FuzzySet], budget: int = DEFAULT_BUDGET) -> Grade:
    """Acceptance degree of a string of arbitrary fuzzy words, from words only.

    ``max over A1..An, a1..an of
    min(L_w(M)(A1..An), A1(a1), ..., An(an), A'1(a1), ..., A'n(an))``
    """
    W = tuple(W)
    n = len(W)
    sigma = M.underlying_alphabet
    _require_budget((len(M.words) * len(sigma)) ** n, budget, "theorem2_rhs")
    symbol_strings = list(itertools.product(sigma, repeat=n))
    best = 0.0
    for string in itertools.product(tuple(M.words), repeat=n):
        lw = accept(M, string)
        if lw <= best:
            continue
        words = [M.words[name] for name in string]
        for symbols in symbol_strings:
            v = lw
            for A, Ap, a in zip(words, W, symbols):
                v = min(v, A[a], Ap[a])
            best = max(best, v)
    return best


def lemma2_closed_form(M: Facw, p, w: Sequence, budget: int = DEFAULT_BUDGET) -> FuzzySet:
    """``delta_down(p, w)`` as a sum over word strings.

    ``q -> max over A1..An of min(delta(p, A1..An)(q), A1(a1), ..., An(an))``
    """
    w = tuple(w)
    _require_budget(len(M.words) ** len(w), budget, "lemma2_closed_form")
    out = {q: 0.0 for q in M.states}
    for string, dist in _word_paths(M, p, len(w)):
        alpha = 1.0
        for name, a in zip(string, w):
            alpha = min(alpha, M.words[name][a])
        for q, g in dist.items():
            out[q] = max(out[q], min(g, alpha))
    return FuzzySet(M.states, out)


def lemma3_closed_form(M: Facw, p, W: Sequence[FuzzySet], budget: int = DEFAULT_BUDGET) -> FuzzySet:
    """``delta_up(p, W)`` as a sum over word strings and symbol strings."""
    W = tuple(W)
    n = len(W)
    sigma = M.underlying_alphabet
    _require_budget((len(M.words) * len(sigma)) ** n, budget, "lemma3_closed_form")
    symbol_strings = list(itertools.product(sigma, repeat=n))
    out = {q: 0.0 for q in M.states}
    for string, dist in _word_paths(M, p, n):
        if dist.is_empty():
            continue
        words = [M.words[name] for name in string]
        alpha = 0.0
        for symbols in symbol_strings:
            v = 1.0
            for A, Ap, a in zip(words, W, symbols):
                v = min(v, A[a], Ap[a])
            alpha = max(alpha, v)
        for q, g in dist.items():
            out[q] = max(out[q], min(g, alpha))
    return FuzzySet(M.states, out)


# ---------------------------------------------------------------------------
# random instances


@dataclass(frozen=True)
class GeneratorConfig:
    """Bounds for random instances.

    ``max_len`` bounds symbol strings; ``word_len`` bounds strings of fuzzy
    words, which are far more expensive to enumerate.
    """

    trials: int = 100
    seed: int = 0
    max_q: int = 4
    max_sigma: int = 3
    max_words: int = 3
    max_len: int = 3
    word_len: int = 2
    fuzzy_tokens: int = 20
    samples: int = 5
    pool: tuple = GRADE_POOL


def random_word(rng: random.Random, sigma: Sequence, pool: Sequence = GRADE_POOL) -> FuzzySet:
    return FuzzySet(sigma, {a: rng.choice(pool) for a in sigma})


def _random_row(rng, states, pool, density=0.6):
    return {q: rng.choice(pool) for q in states if rng.random() < density}


def _sizes(rng, cfg: GeneratorConfig):
    return rng.randint(1, cfg.max_q), rng.randint(1, cfg.max_sigma)


def random_facv(rng: random.Random, cfg: GeneratorConfig, n_states=None, n_symbols=None) -> Facv:
    nq, ns = _sizes(rng, cfg)
    states = [f"q{i}" for i in range(n_states or nq)]
    alphabet = [chr(ord("a") + i) for i in range(n_symbols or ns)]
    delta = {(q, a): _random_row(rng, states, cfg.pool) for q in states for a in alphabet}
    return Facv(states, alphabet, delta, states[0], _random_row(rng, states, cfg.pool))


def random_words(rng: random.Random, sigma: Sequence, count: int, pool=GRADE_POOL) -> dict:
    """Up to ``count`` pairwise distinct random words named W0, W1, ..."""
    words: dict[str, FuzzySet] = {}
    seen = set()
    for _ in range(20 * count):
        if len(words) == count:
            break
        word = random_word(rng, sigma, pool)
        if word not in seen:
            seen.add(word)
            words[f"W{len(words)}"] = word
    return words


def random_facw(rng: random.Random, cfg: GeneratorConfig, words: dict | None = None,
                sigma: Sequence | None = None, n_states=None) -> Facw:
    nq, ns = _sizes(rng, cfg)
    if sigma is None:
        sigma = [chr(ord("a") + i) for i in range(ns)]
    if words is None:
        words = random_words(rng, sigma, rng.randint(1, cfg.max_words), cfg.pool)
    states = [f"q{i}" for i in range(n_states or nq)]
    delta = {(q, n): _random_row(rng, states, cfg.pool) for q in states for n in words}
    return Facw(states, sigma, words, delta, states[0], _random_row(rng, states, cfg.pool))


def preserving_facw(rng: random.Random, cfg: GeneratorConfig) -> Facw:
    """A random word automaton whose extension agrees with it on its words.

    Words get pairwise disjoint supports and each reaches 1, so no word can
    fire another word's rule and every transition grade is matched.
    """
    nq, ns = _sizes(rng, cfg)
    n_words = rng.randint(1, min(cfg.max_words, ns))
    sigma = [chr(ord("a") + i) for i in range(max(ns, n_words))]
    blocks: list[list[str]] = [[] for _ in range(n_words)]
    for i, a in enumerate(sigma):
        blocks[i if i < n_words else rng.randrange(n_words)].append(a)
    words = {}
    for i, block in enumerate(blocks):
        grades = {a: rng.choice(cfg.pool) for a in block}
        grades[rng.choice(block)] = 1.0
        words[f"W{i}"] = grades
    states = [f"q{i}" for i in range(nq)]
    delta = {(q, n): _random_row(rng, states, cfg.pool) for q in states for n in words}
    return Facw(states, sigma, words, delta, states[0], _random_row(rng, states, cfg.pool))


def split_states(rng: random.Random, M2, surjective: bool = False, tight_final: bool = False):
    """Build ``M1`` and a homomorphism ``f: M1 -> M2`` by splitting states.

    Every state ``y`` kept in the image gets one or two copies.  The
    canonical copy ``y.0`` carries ``M2``'s grade into ``y`` exactly and other
    copies carry a random grade no larger, so the fiber maximum always
    matches ``M2``.  Returns ``(M1, f, g)`` where ``g`` sends each image state
    to its canonical copy.  With ``surjective`` and ``tight_final`` the map
    ``g`` is a homomorphism back from ``M2``.
    """
    image = [q for q in M2.states if surjective or q == M2.initial or rng.random() < 0.7]
    copies = {y: [f"{y}.{k}" for k in range(rng.randint(1, 2))] for y in image}
    f_map = {c: y for y, cs in copies.items() for c in cs}
    states1 = list(f_map)
    delta = {}
    for x in states1:
        for sigma in M2.inputs:
            row2 = M2.step(f_map[x], sigma)
            row = {}
            for y, cs in copies.items():
                v = row2.get(y)
                row[cs[0]] = v
                for c in cs[1:]:
                    row[c] = rng.choice([g for g in GRADE_POOL if g <= v])
            delta[(x, sigma)] = row
    final = {}
    for x in states1:
        top = M2.final.get(f_map[x])
        final[x] = top if tight_final else rng.choice([g for g in GRADE_POOL if g <= top])
    initial = copies[M2.initial][0]
    if isinstance(M2, Facw):
        M1 = Facw(states1, M2.underlying_alphabet, dict(M2.words), delta, initial, final)
    else:
        M1 = Facv(states1, M2.alphabet, delta, initial, final)
    f = StateMap(states1, M2.states, f_map)
    g = StateMap(image, states1, {y: cs[0] for y, cs in copies.items()})
    return M1, f, g


def strict_product_pair() -> tuple[Facw, Facw]:
    """Two one-state automata over overlapping words whose product's
    retraction accepts strictly less than both retractions do."""
    words = {"A": {"a": 1.0}, "B": {"a": 1.0, "b": 0.5}}
    M1 = Facw(["x"], ["a", "b"], words, {("x", "A"): {"x": 1.0}}, "x", {"x": 1.0})
    M2 = Facw(["y"], ["a", "b"], words, {("y", "B"): {"y": 1.0}}, "y", {"y": 1.0})
    return M1, M2


# ---------------------------------------------------------------------------
# reports


@dataclass
class Failure:
    trial: int
    automaton: dict
    input: object
    lhs: object
    rhs: object
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "automaton": self.automaton,
            "input": self.input,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "detail": self.detail,
        }


@dataclass
class CheckReport:
    """Outcome of one named check.  ``passed`` iff there are no failures."""

    theorem: str
    trials: int = 0
    comparisons: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0
    complete: bool = True
    stats: dict = field(default_factory=dict)
    error: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "description": CHECKS[self.theorem][0] if self.theorem in CHECKS else "",
            "trials": self.trials,
            "comparisons": self.comparisons,
            "passed": self.passed,
            "complete": self.complete,
            "failures": [f.to_dict() for f in sorted(self.failures, key=lambda f: f.trial)],
            "stats": dict(sorted(self.stats.items())),
        }
        if self.error:
            out["error"] = self.error
        if timing:
            out["elapsed"] = self.elapsed
        return out


def _doc(M) -> dict:
    return jsonio.to_document(M)


def _fmt_string(s) -> list:
    return [x if isinstance(x, str) else jsonio._grade_doc(x) for x in s]


class _Recorder:
    def __init__(self, report: CheckReport, trial: int):
        self.report = report
        self.trial = trial

    def equal(self, lhs, rhs, automaton, inp, detail=""):
        self.report.comparisons += 1
        if lhs != rhs:
            self._fail(lhs, rhs, automaton, inp, detail)

    def leq(self, lhs, rhs, automaton, inp, detail=""):
        self.report.comparisons += 1
        if not lhs <= rhs:
            self._fail(lhs, rhs, automaton, inp, detail)

    def true(self, cond: bool, automaton, inp, detail=""):
        self.report.comparisons += 1
        if not cond:
            self._fail(False, True, automaton, inp, detail)

    def _fail(self, lhs, rhs, automaton, inp, detail):
        def render(v):
            return jsonio._grade_doc(v) if isinstance(v, FuzzySet) else v
        self.report.failures.append(
            Failure(self.trial, automaton if isinstance(automaton, dict) else _doc(automaton),
                    inp, render(lhs), render(rhs), detail)
        )


def _fuzzy_tokens(rng, M: Facw, count: int) -> list[FuzzySet]:
    return list(M.words.values()) + [random_word(rng, M.underlying_alphabet) for _ in range(count)]


def _check_t1(rng, cfg, rec, budget):
    M = random_facw(rng, cfg)
    R = retract(M)
    for w in all_strings(M.underlying_alphabet, cfg.max_len):
        rec.equal(accept(R, w), theorem1_rhs(M, w, budget), M, list(w))


def _check_t2(rng, cfg, rec, budget):
    M = random_facw(rng, cfg)
    E = gen_extend(M)
    tokens = _fuzzy_tokens(rng, M, cfg.fuzzy_tokens)
    for W in all_strings(tokens, cfg.word_len):
        rec.equal(word_accept(E, W), theorem2_rhs(M, W, budget), M, _fmt_string(W))


def _check_l2(rng, cfg, rec, budget):
    M = random_facw(rng, cfg)
    R = retract(M)
    for p in M.states:
        for w in all_strings(M.underlying_alphabet, cfg.max_len):
            rec.equal(lemma2_closed_form(M, p, w, budget), extended_delta(R, p, w), M, [p, *w])


def _check_l3(rng, cfg, rec, budget):
    M = random_facw(rng, cfg)
    E = gen_extend(M)
    p = rng.choice(M.states)
    tokens = _fuzzy_tokens(rng, M, 1)
    for W in all_strings(tokens, cfg.max_len):
        rec.equal(lemma3_closed_form(M, p, W, budget), extended_delta(E, p, W), M,
                  [p, *_fmt_string(W)])


def _check_p1(rng, cfg, rec, budget):
    M = random_facv(rng, cfg)
    hat, up = extend_facv(M), gen_extend(lift_facv(M))
    for _ in range(cfg.samples):
        p = rng.choice(M.states)
        A = random_word(rng, M.alphabet)
        rec.equal(hat.step(p, A), up.step(p, A), M, [p, *_fmt_string([A])])


def _check_p2(rng, cfg, rec, budget):
    M = random_facw(rng, cfg)
    R = retract(M)
    direct, via_lift, via_hat = gen_extend(M), gen_extend(lift_facv(R)), extend_facv(R)
    for _ in range(cfg.samples):
        A = random_word(rng, M.underlying_alphabet)
        for p in M.states:
            expected = direct.step(p, A)
            rec.equal(via_lift.step(p, A), expected, M, [p, *_fmt_string([A])], "lift route")
            rec.equal(via_hat.step(p, A), expected, M, [p, *_fmt_string([A])], "zadeh route")


def _check_p3(rng, cfg, rec, budget):
    kind = rec.trial % 3
    if kind == 0:
        M = random_facw(rng, cfg)
    elif kind == 1:
        M = lift_facv(random_facv(rng, cfg))
    else:
        M = preserving_facw(rng, cfg)
    semantic = is_delta_preserving(M)
    syntactic = prop3_conditions(M)
    key = "preserving" if semantic else "not_preserving"
    rec.report.stats[key] = rec.report.stats.get(key, 0) + 1
    rec.equal(syntactic, semantic, M, [], "syntactic conditions vs direct evaluation")


def _check_p4(rng, cfg, rec, budget):
    if rec.trial == 0:
        M1, M2 = strict_product_pair()
    else:
        M1 = random_facw(rng, cfg)
        M2 = random_facw(rng, cfg, words=dict(M1.words), sigma=M1.underlying_alphabet)
    P = product(M1, M2)
    R, R1, R2 = retract(P), retract(M1), retract(M2)
    pair = {"m1": _doc(M1), "m2": _doc(M2)}
    strict = 0
    for w in all_strings(M1.underlying_alphabet, cfg.max_len):
        lhs, rhs = accept(R, w), min(accept(R1, w), accept(R2, w))
        rec.leq(lhs, rhs, pair, list(w), "retraction of product")
        strict += lhs < rhs
    E, E1, E2 = gen_extend(P), gen_extend(M1), gen_extend(M2)
    tokens = _fuzzy_tokens(rng, M1, 2)
    for W in all_strings(tokens, cfg.word_len):
        lhs, rhs = word_accept(E, W), min(word_accept(E1, W), word_accept(E2, W))
        rec.leq(lhs, rhs, pair, _fmt_string(W), "extension of product")
        strict += lhs < rhs
    rec.report.stats["strict_instances"] = rec.report.stats.get("strict_instances", 0) + (strict > 0)


def _check_p5(rng, cfg, rec, budget):
    M2 = random_facw(rng, cfg)
    M1, f, _ = split_states(rng, M2)
    pair = {"m1": _doc(M1), "m2": _doc(M2), "map": dict(f.mapping)}
    rec.equal(homomorphism_violations(f, M1, M2), [], pair, [], "f on word automata")
    R1, R2 = retract(M1), retract(M2)
    rec.equal(homomorphism_violations(f, R1, R2), [], pair, [], "f on retractions")
    rec.equal(hom_image(f, R1, R2), retract(hom_image(f, M1, M2)), pair, [],
              "image of retraction vs retraction of image")
    E1, E2 = gen_extend(M1), gen_extend(M2)
    samples = _fuzzy_tokens(rng, M2, cfg.samples)
    rec.equal(homomorphism_violations(f, E1, E2, inputs=samples), [], pair,
              _fmt_string(samples), "f on extensions")
    left, right = image_facaw(f, E2), gen_extend(hom_image(f, M1, M2))
    for A in samples:
        for q in f.image():
            rec.equal(left.step(q, A), right.step(q, A), pair, [q, *_fmt_string([A])],
                      "image of extension vs extension of image")


def _check_l1(rng, cfg, rec, budget):
    base = random_facw(rng, cfg) if rec.trial % 2 else random_facv(rng, cfg)
    M1, f, _ = split_states(rng, base)
    pair = {"m1": _doc(M1), "m2": _doc(base), "map": dict(f.mapping)}
    rec.equal(homomorphism_violations(f, M1, base), [], pair, [], "constructed homomorphism")
    for w in all_strings(M1.inputs, cfg.max_len):
        rec.leq(accept(M1, w), accept(base, w), pair, list(w))


def _check_c1(rng, cfg, rec, budget):
    M2 = random_facw(rng, cfg)
    M1, f, g = split_states(rng, M2, surjective=True, tight_final=True)
    pair = {"m1": _doc(M1), "m2": _doc(M2), "map": dict(f.mapping)}
    rec.equal(homomorphism_violations(f, M1, M2), [], pair, [], "f: M1 -> M2")
    rec.equal(homomorphism_violations(g, M2, M1), [], pair, [], "g: M2 -> M1")
    R1, R2 = retract(M1), retract(M2)
    for w in all_strings(M2.underlying_alphabet, cfg.max_len):
        rec.equal(accept(R1, w), accept(R2, w), pair, list(w), "retraction languages")
    E1, E2 = gen_extend(M1), gen_extend(M2)
    for W in all_strings(_fuzzy_tokens(rng, M2, 2), cfg.word_len):
        rec.equal(word_accept(E1, W), word_accept(E2, W), pair, _fmt_string(W), "extension languages")


def _check_prod(rng, cfg, rec, budget):
    if rec.trial % 2:
        M1 = random_facw(rng, cfg)
        M2 = random_facw(rng, cfg, words=dict(M1.words), sigma=M1.underlying_alphabet)
    else:
        M1 = random_facv(rng, cfg)
        M2 = random_facv(rng, cfg, n_symbols=len(M1.alphabet))
    P = product(M1, M2)
    pair = {"m1": _doc(M1), "m2": _doc(M2)}
    for w in all_strings(M1.inputs, cfg.max_len):
        rec.equal(accept(P, w), min(accept(M1, w), accept(M2, w)), pair, list(w))


def _check_rt(rng, cfg, rec, budget):
    M = random_facv(rng, cfg)
    rec.equal(retract(lift_facv(M)), M, M, [], "retract(lift(M)) == M")


CHECKS: dict[str, tuple[str, Callable]] = {
    "T1": ("symbol acceptance of the retraction equals the sum over word strings", _check_t1),
    "T2": ("word acceptance of the extension equals the sum over word and symbol strings", _check_t2),
    "L2": ("retraction's extended transition equals its closed form", _check_l2),
    "L3": ("extension's extended transition equals its closed form", _check_l3),
    "P1": ("Zadeh extension of a symbol automaton equals extension of its singleton lift", _check_p1),
    "P2": ("extending the retraction equals extending directly", _check_p2),
    "P3": ("delta-preservation equals its syntactic characterization", _check_p3),
    "P4": ("retraction/extension of a product is below the intersection", _check_p4),
    "P5": ("homomorphisms carry over to retractions and extensions, and commute with images", _check_p5),
    "L1": ("a homomorphism implies language inclusion", _check_l1),
    "C1": ("mutual homomorphisms give equal retraction and extension languages", _check_c1),
    "PROD": ("product language is the intersection of languages", _check_prod),
    "RT": ("retraction of the singleton lift is the identity", _check_rt),
}


def resolve_suite(suite: str | Iterable[str]) -> list[str]:
    """Expand ``"all"`` / comma lists into known check ids, in canonical order."""
    if isinstance(suite, str):
        suite = [s.strip() for s in suite.split(",") if s.strip()]
    ids = []
    for s in suite:
        s = s.upper()
        if s == "ALL":
            ids.extend(CHECKS)
        elif s in CHECKS:
            ids.append(s)
        else:
            raise KeyError(f"unknown check {s!r}; known: {', '.join(CHECKS)}")
    return list(dict.fromkeys(ids))


def run_check(theorem: str, cfg: GeneratorConfig = GeneratorConfig(),
              budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Run one check over ``cfg.trials`` seeded instances.

    Each trial draws from its own RNG seeded by ``(seed, theorem, trial)``,
    so reports do not depend on trial order.  An enumeration that would
    exceed ``budget`` stops the check and marks the report incomplete.
    """
    _, body = CHECKS[theorem]
    report = CheckReport(theorem)
    start = time.perf_counter()
    for trial in range(cfg.trials):
        rng = random.Random(f"{cfg.seed}:{theorem}:{trial}")
        try:
            body(rng, cfg, _Recorder(report, trial), budget)
        except BudgetExceeded as exc:
            report.complete = False
            report.error = f"trial {trial}: {exc}"
            break
        report.trials += 1
    report.elapsed = time.perf_counter() - start
    return report


def run_checks(suite: str | Iterable[str] = "all", cfg: GeneratorConfig = GeneratorConfig(),
               budget: int = DEFAULT_BUDGET) -> list[CheckReport]:
    return [run_check(t, cfg, budget) for t in resolve_suite(suite)]


def format_table(reports: Sequence[CheckReport], timing: bool = False) -> str:
    rows = []
    for r in reports:
        status = "PASS" if r.passed and r.complete else ("INCOMPLETE" if r.passed else "FAIL")
        line = f"{r.theorem:<5} {status:<10} trials={r.trials:<4} comparisons={r.comparisons:<7} failures={len(r.failures)}"
        if timing:
            line += f" elapsed={r.elapsed:.2f}s"
        rows.append(line)
    return "\n".join(rows)

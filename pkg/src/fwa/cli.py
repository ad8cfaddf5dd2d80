"""Command-line interface.

Exit codes: 0 on success or when a checked property holds, 1 when a checked
property fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import algebra, automata, fixtures, jsonio, transforms, verify
from .automata import AutomatonError, Facv, Facw, UnknownToken
from .fuzzy import FuzzyError, FuzzySet, fuzzy_description

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class CliError(Exception):
    pass


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _pos_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _grade(g: float, digits: int | None):
    return g if digits is None else round(g, digits)


def _fuzzy_out(fs: FuzzySet, digits: int | None) -> dict:
    return {str(x): _grade(g, digits) for x, g in fs.items()}


def _emit(args, value, text: str | None = None) -> None:
    if args.json or text is None:
        print(jsonio.dumps_json(value))
    else:
        print(text)


def _write(out: str, data: bytes) -> None:
    if out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _load(path: str):
    return jsonio.load(path)


def _word_alphabet(M) -> tuple:
    return M.underlying_alphabet if isinstance(M, Facw) else M.alphabet


def _extension(M):
    return transforms.gen_extend(M) if isinstance(M, Facw) else transforms.extend_facv(M)


def cmd_accept(args) -> int:
    M = _load(args.automaton)
    tokens = args.input.split()
    if args.word_file and not args.extended:
        raise CliError("--word-file requires --extended")
    if args.extended:
        sigma = _word_alphabet(M)
        W = []
        for tok in tokens:
            if tok.startswith("@"):
                W.append(jsonio.load_word(tok[1:], sigma))
            elif isinstance(M, Facw) and tok in M.words:
                W.append(M.words[tok])
            else:
                raise UnknownToken(tok)
        W.extend(jsonio.load_word(p, sigma) for p in args.word_file)
        grade = transforms.word_accept(_extension(M), W)
    else:
        grade = automata.accept(M, tokens)
    g = _grade(grade, args.digits)
    _emit(args, {"input": tokens, "grade": g}, repr(g))
    return EXIT_OK


def cmd_retract(args) -> int:
    M = _load(args.input)
    if not isinstance(M, Facw):
        raise CliError("retract needs a facw document")
    if not automata.is_complete(M):
        print("warning: word set is not complete; some symbols have empty rows", file=sys.stderr)
    _write(args.output, jsonio.dump(transforms.retract(M)))
    return EXIT_OK


def cmd_lift(args) -> int:
    M = _load(args.input)
    if not isinstance(M, Facv):
        raise CliError("lift needs a facv document")
    _write(args.output, jsonio.dump(automata.lift_facv(M)))
    return EXIT_OK


def cmd_extend_eval(args) -> int:
    M = _load(args.automaton)
    word = jsonio.load_word(args.word_file, _word_alphabet(M))
    if args.state not in M.states:
        raise CliError(f"unknown state {args.state!r}")
    row = _extension(M).step(args.state, word)
    out = _fuzzy_out(row, args.digits)
    print(json.dumps(out))
    return EXIT_OK


def cmd_describe(args) -> int:
    M = _load(args.automaton)
    if not isinstance(M, Facw):
        raise CliError("describe needs a facw document")
    word = jsonio.load_word(args.word_file, M.underlying_alphabet)
    print(json.dumps(_fuzzy_out(fuzzy_description(M.words, word), args.digits)))
    return EXIT_OK


def cmd_product(args) -> int:
    M1, M2 = _load(args.m1), _load(args.m2)
    _write(args.output, jsonio.dump(algebra.product(M1, M2)))
    return EXIT_OK


def _state_map(args, M1, M2):
    return jsonio.load_state_map(args.map, M1.states, M2.states)


def cmd_hom_check(args) -> int:
    M1, M2 = _load(args.m1), _load(args.m2)
    f = _state_map(args, M1, M2)
    problems = algebra.homomorphism_violations(f, M1, M2)
    text = "homomorphism" if not problems else "not a homomorphism\n" + "\n".join(problems)
    _emit(args, {"homomorphism": not problems, "violations": problems}, text)
    return EXIT_OK if not problems else EXIT_FAIL


def cmd_hom_image(args) -> int:
    M1, M2 = _load(args.m1), _load(args.m2)
    f = _state_map(args, M1, M2)
    problems = algebra.homomorphism_violations(f, M1, M2)
    if problems:
        print("not a homomorphism\n" + "\n".join(problems), file=sys.stderr)
        return EXIT_FAIL
    _write(args.output, jsonio.dump(algebra.hom_image(f, M1, M2)))
    return EXIT_OK


def cmd_subautomaton(args) -> int:
    ok = algebra.is_subautomaton(_load(args.m1), _load(args.m2))
    _emit(args, {"subautomaton": ok}, "subautomaton" if ok else "not a subautomaton")
    return EXIT_OK if ok else EXIT_FAIL


def _facw(path):
    M = _load(path)
    if not isinstance(M, Facw):
        raise CliError("this command needs a facw document")
    return M


def cmd_independence(args) -> int:
    M = _facw(args.automaton)
    rep = transforms.independence_degree(M, args.max_len, args.budget)
    value = {
        "max_len": rep.max_len,
        "bound": _grade(rep.bound, args.digits),
        "witness": list(rep.witness),
        "word_value": _grade(rep.word_value, args.digits),
        "extension_value": _grade(rep.extension_value, args.digits),
        "strings_checked": rep.strings_checked,
        "lower_bound": True,
    }
    text = (f"independence degree >= {value['bound']!r} "
            f"(witness: {' '.join(rep.witness) or 'ε'}; strings up to length {rep.max_len})")
    _emit(args, value, text)
    return EXIT_OK


def cmd_consistency(args) -> int:
    M = _facw(args.automaton)
    rep = transforms.independence_degree(M, args.max_len, args.budget)
    consistent = rep.bound == 0.0
    value = {
        "consistent": consistent,
        "horizon": args.max_len,
        "definitive": not consistent,
        "witness": None if consistent else list(rep.witness),
    }
    if consistent:
        text = f"consistent on all word strings up to length {args.max_len} (bounded check)"
    else:
        text = f"inconsistent: witness {' '.join(rep.witness) or 'ε'} deviates by {rep.bound!r}"
    _emit(args, value, text)
    return EXIT_OK if consistent else EXIT_FAIL


def cmd_preserving(args) -> int:
    M = _facw(args.automaton)
    direct = transforms.is_delta_preserving(M)
    syntactic = transforms.prop3_conditions(M)
    value = {"delta_preserving": direct, "conditions_hold": syntactic}
    _emit(args, value, "delta-preserving" if direct else "not delta-preserving")
    return EXIT_OK if direct else EXIT_FAIL


def cmd_complete(args) -> int:
    ok = automata.is_complete(_facw(args.automaton))
    _emit(args, {"complete": ok}, "complete" if ok else "incomplete")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check(args) -> int:
    cfg = verify.GeneratorConfig(
        trials=args.trials, seed=args.seed, max_q=args.max_q, max_sigma=args.max_sigma,
        max_words=args.max_words, max_len=args.max_len, word_len=args.word_len,
        fuzzy_tokens=args.fuzzy_tokens,
    )
    try:
        ids = verify.resolve_suite(args.suite)
    except KeyError as exc:
        raise CliError(exc.args[0]) from None
    reports = verify.run_checks(ids, cfg, args.budget)
    ok = all(r.passed and r.complete for r in reports)
    if args.json:
        print(jsonio.dumps_json({
            "passed": ok,
            "config": {k: v for k, v in vars(cfg).items() if k != "pool"},
            "budget": args.budget,
            "reports": [r.to_dict(args.timing) for r in reports],
        }))
    else:
        print(verify.format_table(reports, args.timing))
    return EXIT_OK if ok else EXIT_FAIL


FIXTURES = {
    "gas-cooker": lambda: jsonio.dump(fixtures.gas_cooker(), fixtures.gas_cooker_meta()),
    "small": lambda: jsonio.dump_word(fixtures.small()),
    "almost-small": lambda: jsonio.dump_word(fixtures.almost_small()),
}


def cmd_fixture(args) -> int:
    _write(args.output, FIXTURES[args.name]())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fwa", description="Max-min fuzzy automata for computing with words.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help, description=help)
        p.set_defaults(func=func)
        return p

    def digits(p):
        p.add_argument("--digits", type=_nonneg_int, default=None,
                       help="round printed grades to this many decimals")

    def as_json(p):
        p.add_argument("--json", action="store_true", help="print JSON")

    p = add("accept", cmd_accept, "acceptance degree of an input string")
    p.add_argument("automaton")
    p.add_argument("--input", default="", help="whitespace-separated tokens")
    p.add_argument("--extended", action="store_true",
                   help="read fuzzy words: tokens are word names or @word-file paths")
    p.add_argument("--word-file", action="append", default=[],
                   help="append a fuzzy word from a file (with --extended); repeatable")
    digits(p)
    as_json(p)

    p = add("retract", cmd_retract, "retraction of a facw to a facv")
    p.add_argument("input")
    p.add_argument("output", nargs="?", default="-")

    p = add("lift", cmd_lift, "view a facv as a facw over singleton words")
    p.add_argument("input")
    p.add_argument("output", nargs="?", default="-")

    p = add("extend-eval", cmd_extend_eval, "evaluate the generalized extension at one state and word")
    p.add_argument("automaton")
    p.add_argument("--state", required=True)
    p.add_argument("--word-file", required=True)
    digits(p)

    p = add("describe", cmd_describe, "fuzzy description of a word in terms of the automaton's words")
    p.add_argument("automaton")
    p.add_argument("--word-file", required=True)
    digits(p)

    p = add("product", cmd_product, "product automaton")
    p.add_argument("m1")
    p.add_argument("m2")
    p.add_argument("output", nargs="?", default="-")

    p = add("hom-check", cmd_hom_check, "check a state map is a homomorphism")
    p.add_argument("m1")
    p.add_argument("m2")
    p.add_argument("map")
    as_json(p)

    p = add("hom-image", cmd_hom_image, "homomorphic image of m1 inside m2")
    p.add_argument("m1")
    p.add_argument("m2")
    p.add_argument("map")
    p.add_argument("output", nargs="?", default="-")

    p = add("subautomaton", cmd_subautomaton, "check m1 is a subautomaton of m2")
    p.add_argument("m1")
    p.add_argument("m2")
    as_json(p)

    for name, func, help in (
        ("independence", cmd_independence, "lower bound on the independence degree"),
        ("consistency", cmd_consistency, "bounded consistency check of the generalized extension"),
    ):
        p = add(name, func, help)
        p.add_argument("automaton")
        p.add_argument("--max-len", type=_nonneg_int, required=True)
        p.add_argument("--budget", type=_pos_int, default=transforms.DEFAULT_BUDGET)
        if name == "independence":
            digits(p)
        as_json(p)

    p = add("preserving", cmd_preserving, "does the generalized extension agree with the facw on its words")
    p.add_argument("automaton")
    as_json(p)

    p = add("complete", cmd_complete, "does every symbol occur in some word")
    p.add_argument("automaton")
    as_json(p)

    p = add("check", cmd_check, "run randomized identity checks")
    p.add_argument("--suite", default="all", help=f"comma list of {', '.join(verify.CHECKS)} or 'all'")
    p.add_argument("--trials", type=_nonneg_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-q", type=_pos_int, default=4)
    p.add_argument("--max-sigma", type=_pos_int, default=3)
    p.add_argument("--max-words", type=_pos_int, default=3)
    p.add_argument("--max-len", type=_nonneg_int, default=3)
    p.add_argument("--word-len", type=_nonneg_int, default=2)
    p.add_argument("--fuzzy-tokens", type=_nonneg_int, default=20)
    p.add_argument("--budget", type=_pos_int, default=transforms.DEFAULT_BUDGET)
    p.add_argument("--timing", action="store_true", help="include elapsed times (not deterministic)")
    as_json(p)

    p = add("fixture", cmd_fixture, "write a bundled example document")
    p.add_argument("name", choices=sorted(FIXTURES))
    p.add_argument("output", nargs="?", default="-")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownToken as exc:
        print(f"error: unknown token {exc.token!r}", file=sys.stderr)
    except (CliError, jsonio.FormatError, FuzzyError, AutomatonError,
            transforms.BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

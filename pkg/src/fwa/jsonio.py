"""Canonical JSON documents for automata, words and state maps.

Every document carries ``"format": "fwa/1"`` and a ``"kind"``:

``facv`` / ``facw``
    An automaton.  States, symbols and word names are strings; grade maps
    are sparse (zero grades omitted); ``delta`` is a list of
    ``{"from", "on", "to"}`` rows.
``word``
    A single fuzzy subset of an alphabet: ``{"grades": {...}}`` plus an
    optional ``"alphabet"``.
``state_map``
    ``{"mapping": {source: target}}``.

:func:`dump` is canonical: keys and lists are sorted and grades are written
as shortest round-trip decimals, so ``dump(load(dump(M)))`` is byte-stable.
"""

from __future__ import annotations

import json
import os
from collections.abc import Iterable, Mapping
from typing import Any

import jsonschema

from .algebra import StateMap
from .automata import AutomatonError, Facv, Facw
from .fuzzy import FuzzyError, FuzzySet

FORMAT = "fwa/1"


class FormatError(ValueError):
    """A document does not match the fwa/1 schema."""


_grade = {"type": "number", "minimum": 0, "maximum": 1}
_grade_map = {"type": "object", "additionalProperties": _grade}
_ids = {"type": "array", "items": {"type": "string"}}

_common = {
    "format": {"const": FORMAT},
    "meta": {"type": "object"},
}

_delta = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["from", "on", "to"],
        "additionalProperties": False,
        "properties": {"from": {"type": "string"}, "on": {"type": "string"}, "to": _grade_map},
    },
}

SCHEMAS: dict[str, dict] = {
    "facv": {
        "type": "object",
        "required": ["format", "kind", "states", "initial", "final", "alphabet", "delta"],
        "additionalProperties": False,
        "properties": {
            **_common,
            "kind": {"const": "facv"},
            "states": _ids,
            "initial": {"type": "string"},
            "final": _grade_map,
            "alphabet": _ids,
            "delta": _delta,
        },
    },
    "facw": {
        "type": "object",
        "required": ["format", "kind", "states", "initial", "final",
                     "underlying_alphabet", "words", "delta"],
        "additionalProperties": False,
        "properties": {
            **_common,
            "kind": {"const": "facw"},
            "states": _ids,
            "initial": {"type": "string"},
            "final": _grade_map,
            "underlying_alphabet": _ids,
            "words": {"type": "object", "additionalProperties": _grade_map},
            "delta": _delta,
        },
    },
    "word": {
        "type": "object",
        "required": ["format", "kind", "grades"],
        "additionalProperties": False,
        "properties": {**_common, "kind": {"const": "word"}, "alphabet": _ids, "grades": _grade_map},
    },
    "state_map": {
        "type": "object",
        "required": ["format", "kind", "mapping"],
        "additionalProperties": False,
        "properties": {
            **_common,
            "kind": {"const": "state_map"},
            "mapping": {"type": "object", "additionalProperties": {"type": "string"}},
        },
    },
}


def _parse(source: Any) -> Any:
    if isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    elif isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    elif isinstance(source, Mapping):
        return source
    else:
        raise TypeError(f"cannot load from {type(source).__name__}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"$: invalid JSON: {exc}") from None


def validate(doc: Any, kind: str | Iterable[str] | None = None) -> str:
    """Check ``doc`` against its schema and return its kind."""
    if not isinstance(doc, Mapping):
        raise FormatError("$: document must be a JSON object")
    if doc.get("format") != FORMAT:
        raise FormatError(f"$.format: expected {FORMAT!r}, got {doc.get('format')!r}")
    found = doc.get("kind")
    allowed = (kind,) if isinstance(kind, str) else tuple(kind or SCHEMAS)
    if found not in allowed:
        raise FormatError(f"$.kind: expected one of {list(allowed)!r}, got {found!r}")
    validator = jsonschema.Draft202012Validator(SCHEMAS[found])
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise FormatError(f"{err.json_path}: {err.message}")
    return found


def _check_ids(path: str, ids: list, what: str) -> set:
    seen = set()
    for i, x in enumerate(ids):
        if x in seen:
            raise FormatError(f"{path}[{i}]: duplicate {what} {x!r}")
        seen.add(x)
    return seen


def _check_keys(path: str, grades: Mapping, known: set, what: str) -> None:
    for x in grades:
        if x not in known:
            raise FormatError(f"{path}.{x}: unknown {what} {x!r}")


def _automaton_from_doc(doc: Mapping):
    kind = validate(doc, ("facv", "facw"))
    states = _check_ids("$.states", doc["states"], "state")
    if doc["initial"] not in states:
        raise FormatError(f"$.initial: unknown state {doc['initial']!r}")
    _check_keys("$.final", doc["final"], states, "state")
    if kind == "facv":
        inputs = _check_ids("$.alphabet", doc["alphabet"], "symbol")
    else:
        sigma = _check_ids("$.underlying_alphabet", doc["underlying_alphabet"], "symbol")
        inputs = set(doc["words"])
        seen: dict = {}
        for name, grades in doc["words"].items():
            _check_keys(f"$.words.{name}", grades, sigma, "symbol")
            key = frozenset((a, float(g)) for a, g in grades.items() if g > 0)
            if key in seen:
                raise FormatError(f"$.words.{name}: same fuzzy set as word {seen[key]!r}")
            seen[key] = name
    delta = {}
    for i, row in enumerate(doc["delta"]):
        path = f"$.delta[{i}]"
        if row["from"] not in states:
            raise FormatError(f"{path}.from: unknown state {row['from']!r}")
        if row["on"] not in inputs:
            raise FormatError(f"{path}.on: unknown input {row['on']!r}")
        _check_keys(f"{path}.to", row["to"], states, "state")
        key = (row["from"], row["on"])
        if key in delta:
            raise FormatError(f"{path}: duplicate row for ({row['from']!r}, {row['on']!r})")
        delta[key] = row["to"]
    try:
        if kind == "facv":
            return Facv(doc["states"], doc["alphabet"], delta, doc["initial"], doc["final"])
        return Facw(doc["states"], doc["underlying_alphabet"], doc["words"], delta,
                    doc["initial"], doc["final"])
    except FuzzyError as exc:  # pragma: no cover - schema checks should catch these first
        raise FormatError(f"$: {exc}") from None


def load(source: Any) -> Facv | Facw:
    """Read an automaton from a path, JSON bytes/text, or an already parsed dict."""
    return _automaton_from_doc(_parse(source))


def load_meta(source: Any) -> dict:
    """The free-form ``meta`` object of a document (empty if absent)."""
    return dict(_parse(source).get("meta", {}))


def _require_str(x, what: str) -> str:
    if not isinstance(x, str):
        raise AutomatonError(f"{what} {x!r} is not a string; fwa/1 documents use string ids")
    return x


def _grade_doc(fs: FuzzySet) -> dict:
    return {_require_str(x, "element"): g for x, g in sorted(fs.items(), key=lambda kv: kv[0])}


def to_document(M: Facv | Facw, meta: Mapping | None = None) -> dict:
    for q in M.states:
        _require_str(q, "state")
    for a in M.inputs:
        _require_str(a, "input")
    doc: dict = {
        "format": FORMAT,
        "kind": "facw" if isinstance(M, Facw) else "facv",
        "states": sorted(M.states),
        "initial": M.initial,
        "final": _grade_doc(M.final),
    }
    if isinstance(M, Facw):
        doc["underlying_alphabet"] = sorted(_require_str(a, "symbol") for a in M.underlying_alphabet)
        doc["words"] = {name: _grade_doc(M.words[name]) for name in sorted(M.words)}
    else:
        doc["alphabet"] = sorted(M.alphabet)
    doc["delta"] = [
        {"from": q, "on": a, "to": _grade_doc(row)}
        for (q, a), row in sorted(M.delta.items(), key=lambda kv: kv[0])
    ]
    if meta:
        doc["meta"] = dict(meta)
    return doc


def _encode(doc: Mapping) -> bytes:
    return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def dump(M: Facv | Facw, meta: Mapping | None = None) -> bytes:
    return _encode(to_document(M, meta))


def save(M: Facv | Facw, path: str | os.PathLike, meta: Mapping | None = None) -> None:
    with open(path, "wb") as fh:
        fh.write(dump(M, meta))


def load_word(source: Any, alphabet: Iterable | None = None) -> FuzzySet:
    """Read a word document as a fuzzy subset of ``alphabet``.

    ``alphabet`` defaults to the document's own ``"alphabet"`` entry.
    """
    doc = _parse(source)
    validate(doc, "word")
    if alphabet is None:
        if "alphabet" not in doc:
            raise FormatError("$.alphabet: required when no alphabet is supplied")
        alphabet = doc["alphabet"]
    alphabet = tuple(alphabet)
    _check_keys("$.grades", doc["grades"], set(alphabet), "symbol")
    if "alphabet" in doc and set(doc["alphabet"]) != set(alphabet):
        raise FormatError("$.alphabet: does not match the automaton's underlying alphabet")
    return FuzzySet(alphabet, doc["grades"])


def dump_word(word: FuzzySet) -> bytes:
    return _encode({
        "format": FORMAT,
        "kind": "word",
        "alphabet": sorted(_require_str(a, "symbol") for a in word.universe),
        "grades": _grade_doc(word),
    })


def load_state_map(source: Any, source_states: Iterable, target_states: Iterable) -> StateMap:
    doc = _parse(source)
    validate(doc, "state_map")
    try:
        return StateMap(tuple(source_states), tuple(target_states), doc["mapping"])
    except AutomatonError as exc:
        raise FormatError(f"$.mapping: {exc}") from None


def dump_state_map(f: StateMap) -> bytes:
    return _encode({
        "format": FORMAT,
        "kind": "state_map",
        "mapping": {_require_str(q, "state"): _require_str(f(q), "state") for q in sorted(f.source)},
    })


def dumps_json(obj: Any) -> str:
    """Deterministic JSON text for reports and CLI output."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)

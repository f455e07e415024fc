"""Reading and writing the line-oriented automaton format and its JSON mirror.

Text form::

    states: 4
    alphabet: a b
    initial: 0
    final: 0
    a: 1 2 3 0
    b: 2 2 0 0

Blank lines and ``#`` comments are ignored.  The JSON mirror carries the keys
``states``, ``alphabet``, ``initial``, ``final`` and ``transitions`` (a map
from letter name to its row).
"""

from __future__ import annotations

import json
from pathlib import Path

from csfa.automata import Automaton, AutomatonError, validate

HEADER = ("states", "alphabet", "initial", "final")


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise AutomatonError(f"{what}: {token!r} is not an integer") from None


def parse_text(text: str) -> Automaton:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise AutomatonError(f"line {lineno}: expected 'key: value', got {raw!r}")
        key, value = line.split(":", 1)
        lines.append((lineno, key.strip(), value.split()))
    if len(lines) < 4:
        raise AutomatonError("truncated file: expected states, alphabet, initial and final lines")
    for (lineno, key, _), want in zip(lines, HEADER):
        if key != want:
            raise AutomatonError(f"line {lineno}: expected '{want}:', got '{key}:'")
    states_v, alphabet_v, initial_v, final_v = (v for _, _, v in lines[:4])
    if len(states_v) != 1:
        raise AutomatonError("states: expected a single integer")
    if len(initial_v) != 1:
        raise AutomatonError("initial: expected a single state index")
    rows = {}
    for lineno, key, value in lines[4:]:
        if key in rows:
            raise AutomatonError(f"line {lineno}: second row for letter {key!r}")
        rows[key] = [_int(tok, f"row {key}") for tok in value]
    return validate({
        "states": _int(states_v[0], "states"),
        "alphabet": alphabet_v,
        "initial": _int(initial_v[0], "initial"),
        "final": [_int(tok, "final") for tok in final_v],
        "rows": rows,
    })


def parse_json(text: str) -> Automaton:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AutomatonError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise AutomatonError("JSON automaton must be an object")
    final = data.get("final", [])
    if isinstance(final, int):
        final = [final]
    return validate({
        "states": data.get("states"),
        "alphabet": data.get("alphabet") or [],
        "initial": data.get("initial"),
        "final": final,
        "rows": data.get("transitions") or {},
    })


def load(path) -> Automaton:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise AutomatonError(f"cannot read {path}: {exc}") from None
    if path.suffix.lower() == ".json":
        return parse_json(text)
    return parse_text(text)


def dumps(aut: Automaton) -> str:
    out = [
        f"states: {aut.n}",
        "alphabet: " + " ".join(aut.alphabet),
        f"initial: {aut.initial}",
        "final: " + " ".join(str(q) for q in sorted(aut.finals)),
    ]
    for name, row in zip(aut.alphabet, aut.delta):
        out.append(f"{name}: " + " ".join(str(p) for p in row))
    return "\n".join(out) + "\n"


def dumps_json(aut: Automaton) -> str:
    return json.dumps({
        "states": aut.n,
        "alphabet": list(aut.alphabet),
        "initial": aut.initial,
        "final": sorted(aut.finals),
        "transitions": {name: list(row) for name, row in zip(aut.alphabet, aut.delta)},
    }, indent=2) + "\n"


def save(aut: Automaton, path) -> None:
    path = Path(path)
    text = dumps_json(aut) if path.suffix.lower() == ".json" else dumps(aut)
    path.write_text(text, encoding="utf-8")

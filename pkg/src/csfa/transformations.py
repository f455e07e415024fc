"""Total functions on a finite state set ``{0, ..., n-1}``.

Functions are written on the right of their argument: ``q * t`` is the image
of state ``q`` under ``t`` and ``compose(s, t)`` applies ``s`` first.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class Transformation(tuple):
    """Image array of a total function; ``t[q]`` is the image of state ``q``."""

    __slots__ = ()

    def __new__(cls, image: Iterable[int]):
        return super().__new__(cls, image)

    @property
    def n(self) -> int:
        return len(self)

    def then(self, other: "Transformation") -> "Transformation":
        return compose(self, other)

    def __repr__(self):
        return f"Transformation({format_image(self)})"

    def __str__(self):
        return format_image(self)


def identity(n: int) -> Transformation:
    return Transformation(range(n))


def constant(n: int, q: int) -> Transformation:
    return Transformation([q] * n)


def check(t: Sequence[int], n: int | None = None) -> Transformation:
    """Validate an image array and return it as a Transformation."""
    size = len(t) if n is None else n
    if len(t) != size:
        raise ValueError(f"expected {size} entries, got {len(t)}")
    for q, p in enumerate(t):
        if not isinstance(p, int) or not 0 <= p < size:
            raise ValueError(f"image of state {q} is {p!r}, outside [0, {size})")
    return Transformation(t)


def compose(s: Sequence[int], t: Sequence[int]) -> Transformation:
    """Return ``s`` followed by ``t``."""
    if len(s) != len(t):
        raise ValueError(f"dimension mismatch: {len(s)} vs {len(t)}")
    return Transformation([t[p] for p in s])


def power(t: Sequence[int], k: int) -> Transformation:
    result = identity(len(t))
    base = Transformation(t)
    while k > 0:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def image(t: Sequence[int]) -> frozenset:
    return frozenset(t)


def rank(t: Sequence[int]) -> int:
    return len(set(t))


def is_idempotent(t: Sequence[int]) -> bool:
    return all(t[p] == p for p in t)


def is_permutation(t: Sequence[int]) -> bool:
    return rank(t) == len(t)


def is_circular_permutation(t: Sequence[int]) -> bool:
    """True iff ``t`` is a single cycle through every state."""
    n = len(t)
    if n == 0 or not is_permutation(t):
        return False
    q, steps = t[0], 1
    while q != 0:
        q = t[q]
        steps += 1
    return steps == n


def complement(t: Sequence[int]) -> Transformation:
    """Swap the two image values of a rank-two function pointwise."""
    values = sorted(set(t))
    if len(values) != 2:
        raise ValueError(f"complement is defined only for rank 2, got rank {len(values)}")
    i, j = values
    return Transformation([j if p == i else i for p in t])


def format_image(t: Sequence[int]) -> str:
    return "[" + " ".join(str(p) for p in t) + "]"


def format_two_row(t: Sequence[int], labels: Sequence[str] | None = None) -> str:
    """Two-row notation: states on top, their images underneath."""
    names = list(labels) if labels is not None else [str(q) for q in range(len(t))]
    top = [names[q] for q in range(len(t))]
    bottom = [names[p] for p in t]
    width = max(len(s) for s in top + bottom)
    row = lambda cells: "( " + " ".join(c.rjust(width) for c in cells) + " )"
    return row(top) + "\n" + row(bottom)


def parse_image(text: str) -> Transformation:
    """Parse the one-line form ``[1 2 0]`` (commas are tolerated)."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"expected a bracketed image list, got {text!r}")
    tokens = body[1:-1].replace(",", " ").split()
    try:
        values = [int(tok) for tok in tokens]
    except ValueError:
        raise ValueError(f"non-integer entry in {text!r}") from None
    return check(values)


def induced(aut, word: Iterable[int]) -> Transformation:
    """Function induced on ``aut``'s states by a word of letter indices.

    The empty word induces the identity; letters act left to right.
    """
    states = list(range(aut.n))
    for letter in word:
        row = aut.delta[letter]
        states = [row[q] for q in states]
    return Transformation(states)

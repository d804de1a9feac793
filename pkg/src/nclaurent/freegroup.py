"""Reduced words in the free group on two generators x and y.

A word is stored run-length encoded as a tuple of syllables ``(gen, exp)``
with ``gen`` in ``{"x", "y"}`` and ``exp`` a nonzero int.  Adjacent syllables
always carry distinct generators, and ``()`` is the identity.  Plain tuples
are used on purpose: they hash and compare in C, and words are the keys of
every polynomial dictionary.
"""

from __future__ import annotations

import re
from typing import Iterable, Tuple

Syllable = Tuple[str, int]
Word = Tuple[Syllable, ...]

GENERATORS = ("x", "y")
ONE: Word = ()
X: Word = (("x", 1),)
Y: Word = (("y", 1),)

# letter codes for the shortlex tie-break: x < x^-1 < y < y^-1
_LETTER = {("x", 1): 0, ("x", -1): 1, ("y", 1): 2, ("y", -1): 3}


def reduce(raw: Iterable[Syllable]) -> Word:
    """Freely reduce a sequence of ``(gen, exp)`` pairs."""
    out: list[Syllable] = []
    for gen, exp in raw:
        if gen not in GENERATORS:
            raise ValueError(f"unknown generator {gen!r}")
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            e = out[-1][1] + exp
            if e:
                out[-1] = (gen, e)
            else:
                out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


def mul(a: Word, b: Word) -> Word:
    if not a:
        return b
    if not b:
        return a
    i = len(a)
    j = 0
    nb = len(b)
    while i and j < nb:
        ga, ea = a[i - 1]
        gb, eb = b[j]
        if ga != gb:
            break
        e = ea + eb
        if e:
            return a[: i - 1] + ((ga, e),) + b[j + 1 :]
        i -= 1
        j += 1
    return a[:i] + b[j:]


def inv(a: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(a))


def power(a: Word, n: int) -> Word:
    if n < 0:
        a, n = inv(a), -n
    out = ONE
    for _ in range(n):
        out = mul(out, a)
    return out


def length(a: Word) -> int:
    """Total number of letters, i.e. the sum of ``|exp|``."""
    return sum(abs(e) for _, e in a)


def sort_key(a: Word) -> tuple[int, tuple[int, ...]]:
    letters: list[int] = []
    for g, e in a:
        code = _LETTER[(g, 1 if e > 0 else -1)]
        letters.extend([code] * abs(e))
    return (len(letters), tuple(letters))


def compare(a: Word, b: Word) -> int:
    """Shortlex comparison; returns -1, 0 or 1."""
    ka, kb = sort_key(a), sort_key(b)
    return (ka > kb) - (ka < kb)


def degree(a: Word) -> tuple[int, int]:
    """Exponent sums ``(deg_x, deg_y)``: the image in the abelianization."""
    dx = dy = 0
    for g, e in a:
        if g == "x":
            dx += e
        else:
            dy += e
    return dx, dy


def format_word(a: Word) -> str:
    if not a:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in a)


_FACTOR = re.compile(r"^([xy])(?:\^([+-]?\d+))?$")


def parse_word(text: str) -> Word:
    """Parse whitespace separated factors such as ``x^2 y^-1 x^-1``.

    ``1`` factors are accepted and ignored; the input need not be reduced.
    """
    raw: list[Syllable] = []
    tokens = text.split()
    if not tokens:
        raise ValueError("empty word")
    for tok in tokens:
        if tok == "1":
            continue
        m = _FACTOR.match(tok)
        if m is None:
            raise ValueError(f"bad factor {tok!r} in word {text!r}")
        raw.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
    return reduce(raw)

"""Noncommutative Laurent polynomials: integer combinations of reduced words.

>>> x, y = NCPoly.gens()
>>> C = x * y * x.inv_unit() * y.inv_unit()
>>> str(C * NCPoly.parse("y x y^-1"))
'x'
"""

from __future__ import annotations

import json
import re
from typing import Dict, Iterable, Iterator, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from nclaurent import freegroup as fg
from nclaurent.commpoly import CommPoly, QPoly
from nclaurent.freegroup import Word

__all__ = [
    "NCPoly",
    "CommPoly",
    "QPoly",
    "NotAUnit",
    "NoSolutionInSupport",
    "NonIntegerSolution",
    "right_divide",
]


class NotAUnit(ArithmeticError):
    """The polynomial is not a single term with coefficient +1 or -1."""


class NoSolutionInSupport(ArithmeticError):
    pass


class NonIntegerSolution(ArithmeticError):
    pass


_fgmul = fg.mul


def _star_word(w: Word) -> Word:
    raw: list[tuple[str, int]] = []
    for g, e in reversed(w):
        if g == "x":
            # x -> (y x) y (y x)^-1
            raw += [("y", 1), ("x", 1), ("y", e), ("x", -1), ("y", -1)]
        else:
            # y -> y x y^-1
            raw += [("y", 1), ("x", e), ("y", -1)]
    return fg.reduce(raw)


def _q_normal(w: Word) -> tuple[int, int, int]:
    k = a = b = 0
    for g, e in w:
        if g == "x":
            k -= b * e
            a += e
        else:
            b += e
    return k, a, b


class NCPoly:
    """Finite map from reduced words to nonzero ints.

    Values are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Word, int] | None = None):
        self.terms: Dict[Word, int] = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: Dict[Word, int]) -> "NCPoly":
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls._raw({fg.ONE: 1})

    @classmethod
    def const(cls, c: int) -> "NCPoly":
        return cls({fg.ONE: c})

    @classmethod
    def monomial(cls, w: Word | str, c: int = 1) -> "NCPoly":
        if isinstance(w, str):
            w = fg.parse_word(w)
        return cls({w: c})

    @classmethod
    def gens(cls) -> tuple["NCPoly", "NCPoly"]:
        return cls._raw({fg.X: 1}), cls._raw({fg.Y: 1})

    # ------------------------------------------------------------------ ring

    def __eq__(self, other):
        if isinstance(other, int):
            other = NCPoly.const(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, int]]:
        return iter(self.terms.items())

    def coeff(self, w: Word | str) -> int:
        if isinstance(w, str):
            w = fg.parse_word(w)
        return self.terms.get(w, 0)

    def __add__(self, other):
        if isinstance(other, int):
            other = NCPoly.const(other)
        elif not isinstance(other, NCPoly):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                del out[w]
        return NCPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = NCPoly.const(other)
        elif not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, n: int) -> "NCPoly":
        if not n:
            return NCPoly.zero()
        return NCPoly._raw({w: c * n for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        out: Dict[Word, int] = {}
        get = out.get
        right = list(other.terms.items())
        for wa, ca in self.terms.items():
            for wb, cb in right:
                w = _fgmul(wa, wb)
                out[w] = get(w, 0) + ca * cb
        return NCPoly._raw({w: c for w, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "NCPoly":
        if n < 0:
            raise ValueError("pow needs a nonnegative exponent; use inv_unit for units")
        out = NCPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())) in (1, -1)

    def inv_unit(self) -> "NCPoly":
        if not self.is_unit():
            raise NotAUnit(f"not a unit: {self}")
        (w, c), = self.terms.items()
        return NCPoly._raw({fg.inv(w): c})

    # ----------------------------------------------------------- structure

    def star(self) -> "NCPoly":
        """The anti-automorphism x -> y x y x^-1 y^-1, y -> y x y^-1."""
        return NCPoly._raw({_star_word(w): c for w, c in self.terms.items()})

    def is_positive(self) -> bool:
        return all(c >= 1 for c in self.terms.values())

    def is_zero_one(self) -> bool:
        return all(c == 1 for c in self.terms.values())

    def max_coeff(self) -> int:
        return max(self.terms.values(), default=0)

    def abelianize(self) -> CommPoly:
        out: Dict[tuple[int, int], int] = {}
        for w, c in self.terms.items():
            k = fg.degree(w)
            out[k] = out.get(k, 0) + c
        return CommPoly(out)

    def q_specialize(self) -> QPoly:
        """Image in the quantum torus ``x y = q y x``, normal ordered x-left."""
        out: Dict[tuple[int, int, int], int] = {}
        for w, c in self.terms.items():
            k = _q_normal(w)
            out[k] = out.get(k, 0) + c
        return QPoly(out)

    def degree_span(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """``((min_x, max_x), (min_y, max_y))`` over the abelianized exponents."""
        if not self.terms:
            return (0, 0), (0, 0)
        degs = [fg.degree(w) for w in self.terms]
        xs = [d[0] for d in degs]
        ys = [d[1] for d in degs]
        return (min(xs), max(xs)), (min(ys), max(ys))

    # ------------------------------------------------------------ text/json

    def sorted_terms(self) -> list[tuple[Word, int]]:
        return sorted(self.terms.items(), key=lambda wc: fg.sort_key(wc[0]))

    def __str__(self):
        parts = []
        for w, c in self.sorted_terms():
            a = abs(c)
            if not w:
                body = str(a)
            else:
                body = fg.format_word(w) if a == 1 else f"{a}*{fg.format_word(w)}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts) or "0"

    def __repr__(self):
        return f"NCPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "NCPoly":
        """Inverse of ``str``: terms separated by `` + `` / `` - ``."""
        text = text.strip()
        if not text:
            raise ValueError("empty polynomial")
        pieces = re.split(r"\s+([+-])\s+", text)
        signs = ["+"] + pieces[1::2]
        out: Dict[Word, int] = {}
        for sign, term in zip(signs, pieces[0::2]):
            term = term.strip()
            neg = sign == "-"
            if term.startswith("-"):
                neg = not neg
                term = term[1:].strip()
            if "*" in term:
                cs, ws = term.split("*", 1)
                c, w = int(cs), fg.parse_word(ws)
            elif re.fullmatch(r"\d+", term):
                c, w = int(term), fg.ONE
            else:
                c, w = 1, fg.parse_word(term)
            out[w] = out.get(w, 0) + (-c if neg else c)
        return cls(out)

    def to_json(self) -> list:
        return [
            {"coeff": str(c), "word": [[g, e] for g, e in w]}
            for w, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable | str) -> "NCPoly":
        if isinstance(data, str):
            data = json.loads(data)
        out: Dict[Word, int] = {}
        for item in data:
            w = fg.reduce((g, int(e)) for g, e in item["word"])
            out[w] = out.get(w, 0) + int(item["coeff"])
        return cls(out)


# candidate words beyond this make the exact linear system too large to solve
MAX_SUPPORT = 200_000


def right_divide(p: NCPoly, q: NCPoly, support_rounds: int = 1, max_support: int = MAX_SUPPORT) -> NCPoly:
    """Return ``s`` with ``s * q == p``.

    Experimental: the quotient is searched for on a finite candidate support,
    seeded with ``{w m^-1 : w in supp(p), m in supp(q)}`` and widened
    ``support_rounds`` times by ``s -> s m m'^-1`` for distinct ``m, m'`` in
    ``supp(q)``.  The coefficients solve an exact linear system over Q.
    A candidate set larger than ``max_support`` gives up with
    :class:`NoSolutionInSupport`.
    """
    if not q:
        raise ZeroDivisionError("right_divide by zero")
    if not p:
        return NCPoly.zero()
    if q.is_unit():
        return p * q.inv_unit()
    qs = list(q.terms.items())
    qinv = [fg.inv(m) for m, _ in qs]
    if len(p) * len(qs) > max_support:
        raise NoSolutionInSupport(f"support of {len(p)} x {len(qs)} words exceeds {max_support}")
    cand = {_fgmul(w, mi) for w in p.terms for mi in qinv}
    for _ in range(support_rounds):
        if len(cand) * len(qs) * len(qs) > max_support:
            raise NoSolutionInSupport(f"support growth past {max_support} words")
        grown = set(cand)
        for s in cand:
            for m, _ in qs:
                sm = _fgmul(s, m)
                for (m2, _), mi2 in zip(qs, qinv):
                    if m2 != m:
                        grown.add(_fgmul(sm, mi2))
        cand = grown
    cols = sorted(cand, key=fg.sort_key)
    rows: Dict[Word, int] = {w: i for i, w in enumerate(p.terms)}
    entries: Dict[int, Dict[int, object]] = {}
    for j, s in enumerate(cols):
        for m, c in qs:
            w = _fgmul(s, m)
            i = rows.setdefault(w, len(rows))
            entries.setdefault(i, {})[j] = QQ(c)
    ncol = len(cols)
    for w, c in p.terms.items():
        entries.setdefault(rows[w], {})[ncol] = QQ(c)
    aug = DomainMatrix(entries, (len(rows), ncol + 1), QQ)
    reduced, pivots = aug.rref()
    if ncol in pivots:
        raise NoSolutionInSupport(f"no quotient of ({p}) by ({q}) on {ncol} candidate words")
    sol = reduced.to_sdm()
    out: Dict[Word, int] = {}
    for r, j in enumerate(pivots):
        v = sol.get(r, {}).get(ncol, QQ(0))
        if v:
            if v.denominator != 1:
                raise NonIntegerSolution(f"rational quotient of ({p}) by ({q})")
            out[cols[j]] = int(v.numerator)
    s = NCPoly(out)
    if s * q != p:
        raise NoSolutionInSupport("candidate quotient failed the multiplication check")
    return s

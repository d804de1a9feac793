"""Laurent polynomials in two commuting variables, and in two q-commuting ones.

Kept free of any noncommutative code so the commutative oracle built on top
of :class:`CommPoly` is a genuinely independent check.
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

Exp2 = Tuple[int, int]
Exp3 = Tuple[int, int, int]


class DivisionNotExact(ArithmeticError):
    pass


def _prune(d):
    return {k: c for k, c in d.items() if c}


def _mono(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def _join(parts: Iterable[Tuple[int, str]]) -> str:
    out = []
    for c, body in parts:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not body:
            text = str(a)
        elif a == 1:
            text = body
        else:
            text = f"{a}*{body}"
        if not out:
            out.append(text if c > 0 else "-" + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out) or "0"


class CommPoly:
    """``sum c * x^a * y^b`` with integer coefficients, ``a, b`` in Z."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Exp2, int] | None = None):
        self.terms: Dict[Exp2, int] = _prune(terms or {})

    @classmethod
    def one(cls) -> "CommPoly":
        return cls({(0, 0): 1})

    @classmethod
    def var(cls, name: str) -> "CommPoly":
        return cls({(1, 0): 1} if name == "x" else {(0, 1): 1})

    @classmethod
    def const(cls, c: int) -> "CommPoly":
        return cls({(0, 0): c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = CommPoly.const(other)
        if not isinstance(other, CommPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        if isinstance(other, int):
            other = CommPoly.const(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return CommPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return CommPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = CommPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CommPoly({k: c * other for k, c in self.terms.items()})
        out: Dict[Exp2, int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return CommPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = CommPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def exact_div(self, d: "CommPoly") -> "CommPoly":
        """Exact Laurent division; raises :class:`DivisionNotExact` otherwise.

        Leading-term division in lex order on exponent pairs.  The quotient of
        an exact division has its exponents inside the box spanned by the
        extreme exponents of ``self`` and ``d``, which bounds the loop.
        """
        if not d:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return CommPoly()
        lead_d = max(d.terms)
        cd = d.terms[lead_d]
        ax = [a for a, _ in self.terms]
        ay = [b for _, b in self.terms]
        dx = [a for a, _ in d.terms]
        dy = [b for _, b in d.terms]
        lo = (min(ax) - min(dx), min(ay) - min(dy))
        hi = (max(ax) - max(dx), max(ay) - max(dy))
        rem = dict(self.terms)
        quot: Dict[Exp2, int] = {}
        while rem:
            lead = max(rem)
            c = rem[lead]
            t = (lead[0] - lead_d[0], lead[1] - lead_d[1])
            if not (lo[0] <= t[0] <= hi[0] and lo[1] <= t[1] <= hi[1]) or c % cd:
                raise DivisionNotExact(f"{self} is not divisible by {d}")
            qc = c // cd
            quot[t] = qc
            for (a, b), cc in d.terms.items():
                k = (a + t[0], b + t[1])
                v = rem.get(k, 0) - qc * cc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return CommPoly(quot)

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: (abs(kv[0][0]) + abs(kv[0][1]), kv[0]))
        return _join((c, " ".join(p for p in (_mono("x", a), _mono("y", b)) if p)) for (a, b), c in items)

    def __repr__(self):
        return f"CommPoly({self})"

    def to_json(self) -> list:
        return [{"coeff": str(c), "x": a, "y": b} for (a, b), c in sorted(self.terms.items())]


class QPoly:
    """``sum c * q^k x^a y^b`` in the quantum torus ``x y = q y x``.

    Terms are kept x-left normal ordered.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Exp3, int] | None = None):
        self.terms: Dict[Exp3, int] = _prune(terms or {})

    @classmethod
    def one(cls) -> "QPoly":
        return cls({(0, 0, 0): 1})

    @classmethod
    def q(cls, k: int = 1) -> "QPoly":
        return cls({(k, 0, 0): 1})

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return QPoly(out)

    def __neg__(self):
        return QPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QPoly({k: c * other for k, c in self.terms.items()})
        out: Dict[Exp3, int] = {}
        for (k1, a1, b1), c1 in self.terms.items():
            for (k2, a2, b2), c2 in other.terms.items():
                # y^b1 x^a2 = q^(-b1*a2) x^a2 y^b1
                key = (k1 + k2 - b1 * a2, a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return QPoly(out)

    __rmul__ = __mul__

    def __str__(self):
        items = sorted(self.terms.items())
        return _join(
            (c, " ".join(p for p in (_mono("q", k), _mono("x", a), _mono("y", b)) if p))
            for (k, a, b), c in items
        )

    def __repr__(self):
        return f"QPoly({self})"

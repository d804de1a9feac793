"""Noncommutative rank-2 recursions for the affine cases (2,2), (1,4), (4,1).

Forward evolution runs on the linear recursions with constant coefficients
``C`` and ``K``; the nonlinear exchange relation

    R_{n+1} C R_{n-1} = 1 + R_n^b   (n odd)
                      = 1 + R_n^c   (n even)

is only ever checked, by multiplication.  Negative indices come from the
``star`` anti-automorphism, never from backward iteration.

Initial data is fixed by ``C R_0 = x`` and ``R_1 = y`` (so ``R_0 = y x y^-1``),
or, for the ``XY`` flavour of (1,4), by ``C R_1 = X`` and ``R_2 = Y``.  The
``X, Y`` variables are represented by the generators ``x, y`` themselves.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

from nclaurent import freegroup as fg
from nclaurent.kernel import compare_sums
from nclaurent.ncpoly import NCPoly, NoSolutionInSupport, NotAUnit, right_divide
from nclaurent.report import VerifyReport


class IndexUnavailable(LookupError):
    pass


class PositivityViolation(AssertionError):
    pass


class CaseTag(str, enum.Enum):
    B22 = "22"
    B14_xy = "14xy"
    B14_XY = "14XY"
    B41_xy = "41xy"
    B41_XY = "41XY"

    @property
    def bc(self) -> tuple[int, int]:
        return {"2": (2, 2), "1": (1, 4), "4": (4, 1)}[self.value[0]]

    @property
    def flavor(self) -> str:
        return "xy" if self is CaseTag.B22 else self.value[2:]

    @classmethod
    def parse(cls, text: str) -> "CaseTag":
        key = text.strip().replace(",", "").replace("(", "").replace(")", "")
        for tag in cls:
            if key in (tag.value, tag.name, tag.name.lower()):
                return tag
        if key in ("14", "41"):
            return cls(key + "xy")
        raise ValueError(f"unknown case {text!r}; expected one of {[t.value for t in cls]}")


X, Y = NCPoly.gens()
X_INV, Y_INV = X.inv_unit(), Y.inv_unit()
C = X * Y * X_INV * Y_INV
C_INV = C.inv_unit()


def commutator() -> NCPoly:
    return C


def exponent(b: int, c: int, n: int) -> int:
    """Power of ``R_n`` on the right side of the exchange relation centred at n."""
    return b if n % 2 else c


def conserved_k(case: CaseTag) -> NCPoly:
    """Closed form of the second conserved quantity for the given initial data."""
    case = CaseTag(case)
    if case is CaseTag.B22:
        # y1 + y2 + y3 with y1 = y^2 x^-1 y^-1, y2 = x^-1 y^-1, y3 = x y^-1
        return Y * Y * X_INV * Y_INV + X_INV * Y_INV + X * Y_INV
    if case.flavor == "xy":
        t = (1 + Y) * X_INV
        return (X * X + t * t) * Y_INV
    t = (1 + X) * Y_INV
    return (Y * Y + t * t) * Y * X_INV * Y_INV


def initial_u(flavor: str) -> tuple[NCPoly, NCPoly]:
    """``(u_0, u_1)`` for the (1,4) system, ``u_n = R_{2n}``."""
    if flavor == "xy":
        return Y * X * Y_INV, (1 + Y) * X_INV
    # R_2 C R_0 = 1 + R_1 with R_1 = Y X Y^-1, R_2 = Y gives u_0 = C^-1 (1 + X) Y^-1
    return C_INV * (1 + X) * Y_INV, Y


@dataclass(frozen=True)
class Trajectory:
    """Memoized solution of one system.

    ``r`` maps n to ``R_n``; ``u`` maps n to ``u_n = R_{2n}`` for the (1,4)
    systems and is empty otherwise.
    """

    case: CaseTag
    r: Dict[int, NCPoly]
    K: NCPoly
    C: NCPoly = field(default_factory=lambda: C)
    u: Dict[int, NCPoly] = field(default_factory=dict)

    @property
    def bc(self) -> tuple[int, int]:
        return self.case.bc

    @property
    def indices(self) -> range:
        return range(min(self.r), max(self.r) + 1)

    def R(self, n: int) -> NCPoly:
        try:
            return self.r[n]
        except KeyError:
            raise IndexUnavailable(f"R_{n} not computed for {self.case.value}") from None

    def U(self, n: int) -> NCPoly:
        try:
            return self.u[n]
        except KeyError:
            raise IndexUnavailable(f"u_{n} not computed for {self.case.value}") from None

    def variables(self):
        for n in sorted(self.r):
            yield f"R_{n}", self.r[n]
        for n in sorted(self.u):
            yield f"u_{n}", self.u[n]

    def assert_positive(self) -> None:
        for name, p in self.variables():
            if not p.is_positive():
                raise PositivityViolation(f"{self.case.value}: {name} = {p} is not positive")


def _extend_linear(seq: Dict[int, NCPoly], K: NCPoly, upto: int) -> None:
    # s_{n+1} = K s_n - C s_{n-1}
    n = max(seq)
    while n < upto:
        seq[n + 1] = K * seq[n] - C * seq[n - 1]
        n += 1


def seq_22(n_max: int, K: Optional[NCPoly] = None, check_positive: bool = True) -> Trajectory:
    """R_0 .. R_{n_max} of the (2,2) system from the (x, y) data."""
    r = {0: Y * X * Y_INV, 1: Y}
    K = conserved_k(CaseTag.B22) if K is None else K
    if n_max > 1:
        _extend_linear(r, K, n_max)
    traj = Trajectory(CaseTag.B22, r, K)
    if check_positive:
        traj.assert_positive()
    return traj


def _odd_from_u(u: Dict[int, NCPoly], m: int) -> NCPoly:
    # R_{2m+1} = u_m u_{m+1} - C^-1
    return u[m] * u[m + 1] - C_INV


def seq_14(data: str, n_max: int, K: Optional[NCPoly] = None, check_positive: bool = True) -> Trajectory:
    """R_0 .. R_{n_max} of the (1,4) system for ``data`` in {"xy", "XY"}.

    For ``XY`` the variables are ``g_n(X, Y)``: the same system written in the
    seed ``(C R_1, R_2)``.
    """
    if data not in ("xy", "XY"):
        raise ValueError(f"data must be 'xy' or 'XY', got {data!r}")
    case = CaseTag.B14_xy if data == "xy" else CaseTag.B14_XY
    u0, u1 = initial_u(data)
    u = {0: u0, 1: u1}
    K = conserved_k(case) if K is None else K
    _extend_linear(u, K, max(1, n_max // 2 + 1))
    r: Dict[int, NCPoly] = {}
    for n in range(n_max + 1):
        r[n] = u[n // 2] if n % 2 == 0 else _odd_from_u(u, n // 2)
    traj = Trajectory(case, r, K, u=u)
    if check_positive:
        traj.assert_positive()
    return traj


def extend(traj: Trajectory, n_max: int) -> Trajectory:
    """Return a longer trajectory, reusing every stored value."""
    if n_max <= max(traj.r):
        return traj
    if traj.case is CaseTag.B22:
        r = dict(traj.r)
        _extend_linear(r, traj.K, n_max)
        return replace(traj, r=r)
    if traj.case in (CaseTag.B14_xy, CaseTag.B14_XY):
        u = dict(traj.u)
        _extend_linear(u, traj.K, n_max // 2 + 1)
        r = dict(traj.r)
        for n in range(max(r) + 1, n_max + 1):
            r[n] = u[n // 2] if n % 2 == 0 else _odd_from_u(u, n // 2)
        return replace(traj, r=r, u=u)
    raise ValueError(f"cannot extend a derived {traj.case.value} trajectory; extend its source")


# ------------------------------------------------------------------ mutation


def mutation_T(a: int, pair: tuple[NCPoly, NCPoly], support_rounds: int = 1) -> tuple[NCPoly, NCPoly]:
    """``(A, B) -> (A B A^-1, (1 + B^a) A^-1)``.

    ``A`` is inverted directly when it is a unit and otherwise divided out with
    :func:`right_divide`.  The result is checked by multiplying back.
    """
    A, B = pair
    top = A * B
    bottom = 1 + B**a
    if A.is_unit():
        Ai = A.inv_unit()
        A2, B2 = top * Ai, bottom * Ai
    else:
        try:
            A2 = right_divide(top, A, support_rounds)
            B2 = right_divide(bottom, A, support_rounds)
        except NoSolutionInSupport as exc:
            raise NotAUnit(f"cannot invert {A}: {exc}") from exc
    if A2 * A != top or B2 * A != bottom:
        raise ArithmeticError("mutation failed its multiplication check")
    return A2, B2


# ----------------------------------------------------------- verification


def _expect(rep: VerifyReport, name: str, n: int, lhs, rhs) -> bool:
    # sides are lists of polynomials or (A, B) products, see compare_sums
    ok, detail = compare_sums(lhs, rhs)
    return rep.expect(name, n, ok, **(detail or {}))


def _power_terms(p: NCPoly, e: int) -> list:
    # p^e as a single two-factor product, halves expanded
    if e == 0:
        return [NCPoly.one()]
    if e == 1:
        return [p]
    h = p ** (e // 2)
    return [(h, p ** (e - e // 2))]


def verify_nonlinear(traj: Trajectory, report: Optional[VerifyReport] = None) -> VerifyReport:
    rep = report if report is not None else VerifyReport()
    b, c = traj.bc
    name = f"nonlinear[{traj.case.value}]"
    rep.declare(name)
    for n in sorted(traj.r):
        if n - 1 in traj.r and n + 1 in traj.r:
            lhs = [(traj.r[n + 1], traj.C * traj.r[n - 1])]
            rhs = [NCPoly.one()] + _power_terms(traj.r[n], exponent(b, c, n))
            _expect(rep, name, n, lhs, rhs)
    return rep


def verify_conserved(traj: Trajectory, report: Optional[VerifyReport] = None) -> VerifyReport:
    """Division-free forms of the conservation laws at every available index."""
    rep = report if report is not None else VerifyReport()
    tag = traj.case.value
    r, u, K, Cc = traj.r, traj.u, traj.K, traj.C
    Ci = Cc.inv_unit()

    name = f"qcomm[{tag}]"
    rep.declare(name)
    for n in sorted(r):
        if n + 1 in r:
            _expect(rep, name, n, [(r[n + 1], Cc * r[n])], [(r[n], r[n + 1])])

    if traj.case is CaseTag.B22:
        for name in (f"recur[{tag}]", f"recul[{tag}]"):
            rep.declare(name)
        for n in sorted(r):
            if n - 1 in r and n + 1 in r:
                _expect(rep, f"recur[{tag}]", n, [(r[n + 1], Cc), r[n - 1]], [(r[n], K)])
                _expect(rep, f"recul[{tag}]", n, [r[n + 1], (Cc, r[n - 1])], [(K, r[n])])
        return rep

    if not u:
        return rep
    names = ("qcomu", "newnc", "rear", "linonefour", "secrec")
    for nm in names:
        rep.declare(f"{nm}[{tag}]")
    for n in sorted(u):
        if n + 1 not in u:
            continue
        a, b_ = u[n], u[n + 1]
        one = NCPoly.one()
        _expect(rep, f"qcomu[{tag}]", n, [(b_, Cc * a)], [(a, b_), one, -Ci])
        # w = u_{n+1} C u_n - 1; expanded once, it is a single variable's size
        w = b_ * (Cc * a) - 1
        _expect(rep, f"rear[{tag}]", n, [(w, Cc)], [(a, b_ * Cc), -one])
        if n + 2 in u:
            d = u[n + 2]
            _expect(rep, f"newnc[{tag}]", n, [(d, Cc * w)], _power_terms(b_, 3) + [Cc * a])
            _expect(rep, f"linonefour[{tag}]", n, [(d, Cc), a], [(b_, K)])
            _expect(rep, f"secrec[{tag}]", n, [d, (Cc, a)], [(K, b_)])
    return rep


def verify_positive(traj: Trajectory, report: Optional[VerifyReport] = None, zero_one: bool = False) -> VerifyReport:
    rep = report if report is not None else VerifyReport()
    tag = traj.case.value
    rep.declare(f"positive[{tag}]")
    for n in sorted(traj.r):
        p = traj.r[n]
        rep.expect(f"positive[{tag}]", n, p.is_positive(), R=p)
        if zero_one:
            rep.expect(f"zero_one[{tag}]", n, p.is_zero_one(), R=p)
    for n in sorted(traj.u):
        p = traj.u[n]
        rep.expect(f"positive_u[{tag}]", n, p.is_positive(), u=p)
    return rep


# --------------------------------------------------------------- symmetry


def negative_index(n: int, other: Trajectory) -> NCPoly:
    """``f^{(c,b)}_{-n} = (f^{(b,c)}_{n+1})^*`` from the partner system."""
    p = other.R(n + 1).star()
    if not p.is_positive():
        raise PositivityViolation(f"star image of R_{n + 1} is not positive")
    return p


def translate_41(n: int, sys14_XY: Trajectory) -> NCPoly:
    """``f^{(4,1)}_{n-1}(x, y) = g^{(1,4)}_n(x, y)``."""
    if sys14_XY.case is not CaseTag.B14_XY:
        raise ValueError("translate_41 reads the XY-data (1,4) trajectory")
    return sys14_XY.R(n)


def shifted(traj: Trajectory, case: CaseTag, shift: int) -> Trajectory:
    """Reindex ``traj`` as the trajectory of ``case``: new R_m = old R_{m+shift}."""
    return Trajectory(case, {n - shift: p for n, p in traj.r.items()}, traj.K, traj.C)


class Systems:
    """All five families, for every integer index, from two base runs.

    Keeps one (2,2) trajectory and the two (1,4) trajectories; everything
    else is read off them through index translation and ``star``:

    * ``f41(n) = g14(n + 1)``, ``g41(n) = f14(n - 1)``
    * ``f14(-n) = f41(n + 1)^*``, ``f41(-n) = f14(n + 1)^*``, ``f22(-n) = f22(n + 1)^*``
    """

    # beyond these the next odd variable has millions of terms
    LIMITS = {"22": 15, "14xy": 10, "14XY": 11}

    def __init__(self, n_max: int = 8):
        self._t22 = seq_22(max(1, min(n_max, self.LIMITS["22"])))
        self._t14 = seq_14("xy", max(1, min(n_max, self.LIMITS["14xy"])))
        self._t14b = seq_14("XY", max(1, min(n_max, self.LIMITS["14XY"])))

    def _base(self, which: str, n: int) -> NCPoly:
        attr = {"22": "_t22", "14xy": "_t14", "14XY": "_t14b"}[which]
        traj = getattr(self, attr)
        if n > self.LIMITS[which]:
            raise IndexUnavailable(f"R_{n} of the {which} data is past the supported index {self.LIMITS[which]}")
        if n > max(traj.r):
            traj = extend(traj, n)
            setattr(self, attr, traj)
        return traj.R(n)

    def trajectory(self, which: str) -> Trajectory:
        return {"22": self._t22, "14xy": self._t14, "14XY": self._t14b}[which]

    def f22(self, n: int) -> NCPoly:
        return self._base("22", n) if n >= 0 else self._base("22", 1 - n).star()

    def f14(self, n: int) -> NCPoly:
        return self._base("14xy", n) if n >= 0 else self.f41(1 - n).star()

    def g14(self, n: int) -> NCPoly:
        return self._base("14XY", n) if n >= 0 else self.f41(n - 1)

    def f41(self, n: int) -> NCPoly:
        return self._base("14XY", n + 1) if n >= -1 else self.f14(1 - n).star()

    def g41(self, n: int) -> NCPoly:
        return self.f14(n - 1)

    def R(self, case: CaseTag, n: int) -> NCPoly:
        case = CaseTag(case)
        return {
            CaseTag.B22: self.f22,
            CaseTag.B14_xy: self.f14,
            CaseTag.B14_XY: self.g14,
            CaseTag.B41_xy: self.f41,
            CaseTag.B41_XY: self.g41,
        }[case](n)

    def u(self, case: CaseTag, n: int) -> NCPoly:
        """``u_n``: the even (1,4) variables, or the odd (4,1) ones."""
        case = CaseTag(case)
        if case in (CaseTag.B14_xy, CaseTag.B14_XY):
            return self.R(case, 2 * n)
        if case in (CaseTag.B41_xy, CaseTag.B41_XY):
            return self.R(case, 2 * n + 1)
        raise ValueError("u_n is only defined for the (1,4) and (4,1) systems")

    def trajectory_range(self, case: CaseTag, lo: int, hi: int) -> Trajectory:
        case = CaseTag(case)
        r = {n: self.R(case, n) for n in range(lo, hi + 1)}
        K = conserved_k(case) if case is not CaseTag.B41_xy and case is not CaseTag.B41_XY else NCPoly.zero()
        return Trajectory(case, r, K)


# ---------------------------------------------------------- finite type


@dataclass
class ProbeResult:
    b: int
    c: int
    r: Dict[int, NCPoly]
    report: VerifyReport
    period: Optional[int] = None
    conjugation: Optional[int] = None
    complete: bool = True


def _abelian_period(r: Dict[int, NCPoly]) -> Optional[int]:
    ab = {n: p.abelianize() for n, p in r.items()}
    top = max(ab)
    for p in range(1, top // 2 + 1):
        if all(ab[n + p] == ab[n] for n in range(0, top - p + 1)):
            return p
    return None


def finite_type_probe(b: int, c: int, n_max: Optional[int] = None, support_rounds: int = 2) -> ProbeResult:
    """Iterate the nonlinear relation by exact right division.

    For finite type the variables are expected to be periodic up to
    conjugation by a power of ``C`` and to have all coefficients equal to 1.
    The conjugation exponent is searched over ``|k| <= 4`` and reported, not
    asserted.  A division that fails within the support budget stops the
    probe and marks the report as skipped.
    """
    if n_max is None:
        n_max = {1: 10, 2: 12, 3: 16}.get(c, 10)
    rep = VerifyReport()
    r: Dict[int, NCPoly] = {0: Y * X * Y_INV, 1: Y}
    complete = True
    for n in range(1, n_max):
        num = 1 + r[n] ** exponent(b, c, n)
        den = C * r[n - 1]
        quot = None
        for rounds in range(support_rounds + 1):
            try:
                quot = right_divide(num, den, rounds)
                break
            except (NoSolutionInSupport, ArithmeticError):
                continue
        if quot is None:
            rep.skip(f"probe[{b},{c}]", f"division failed at n={n + 1} within {support_rounds} rounds")
            complete = False
            break
        r[n + 1] = quot
    name = f"probe[{b},{c}]"
    rep.declare(name)
    for n, p in sorted(r.items()):
        rep.expect(f"{name}.positive", n, p.is_positive(), R=p)
        rep.expect(f"{name}.zero_one", n, p.is_zero_one(), R=p)
    for n in sorted(r):
        if n - 1 in r and n + 1 in r:
            rep.expect_equal(f"{name}.nonlinear", n, r[n + 1] * C * r[n - 1], 1 + r[n] ** exponent(b, c, n))
    period = _abelian_period(r) if complete else None
    conj = None
    if period:
        for k in sorted(range(-4, 5), key=abs):
            Ck, Cmk = C ** abs(k), C_INV ** abs(k)
            left, right = (Ck, Cmk) if k >= 0 else (Cmk, Ck)
            if all(r[n + period] == left * r[n] * right for n in r if n + period in r):
                conj = k
                break
        rep.declare(f"{name}.period", f"abelian period {period}, conjugation k={conj}")
    return ProbeResult(b, c, r, rep, period, conj, complete)

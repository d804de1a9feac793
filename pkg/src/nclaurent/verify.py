"""Independent oracles and the aggregated property suite.

The commutative oracle runs the classical rank-2 exchange relation
``R_{n+1} R_{n-1} = 1 + R_n^{b or c}`` with exact Laurent division on
:class:`CommPoly` only, so it shares no code with the noncommutative engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from nclaurent import freegroup as fg
from nclaurent.commpoly import CommPoly, DivisionNotExact, QPoly
from nclaurent.report import VerifyReport


@dataclass
class CommTrajectory:
    b: int
    c: int
    r: Dict[int, CommPoly] = field(default_factory=dict)


def comm_oracle(b: int, c: int, n_max: int, n_min: int = 0) -> CommTrajectory:
    """Commutative solution with ``(R_0, R_1) = (x, y)`` on ``n_min..n_max``.

    Indices below 0 come from the same relation solved for ``R_{n-1}``.
    """
    x, y = CommPoly.var("x"), CommPoly.var("y")
    r = {0: x, 1: y}

    def power(n):
        return b if n % 2 else c

    for n in range(1, n_max):
        r[n + 1] = (1 + r[n] ** power(n)).exact_div(r[n - 1])
    for n in range(0, n_min, -1):
        r[n - 1] = (1 + r[n] ** power(n)).exact_div(r[n + 1])
    for n, p in r.items():
        if not p.is_positive():
            raise DivisionNotExact(f"commutative R_{n} = {p} has a negative coefficient")
    return CommTrajectory(b, c, {n: p for n, p in r.items() if n_min <= n <= n_max})


# Every noncommutative family, abelianized, is a commutative (b, c) solution
# read with an index shift: abelianize(R_n) = comm(b, c).r[n + shift].
ORACLE_OF = {
    "22": ((2, 2), 0),
    "14xy": ((1, 4), 0),
    "14XY": ((4, 1), -1),
    "41xy": ((4, 1), 0),
    "41XY": ((1, 4), -1),
}


def check_abelianization(traj, comm: Optional[CommTrajectory] = None, report: Optional[VerifyReport] = None) -> VerifyReport:
    rep = report if report is not None else VerifyReport()
    tag = traj.case.value
    (b, c), shift = ORACLE_OF[tag]
    lo, hi = min(traj.r), max(traj.r)
    if comm is None:
        comm = comm_oracle(b, c, hi + shift, min(0, lo + shift))
    if (comm.b, comm.c) != (b, c):
        raise ValueError(f"{tag} abelianizes to the ({b},{c}) system, oracle is ({comm.b},{comm.c})")
    name = f"abelian[{tag}]"
    rep.declare(name)
    for n in sorted(traj.r):
        if n + shift in comm.r:
            ab = traj.r[n].abelianize()
            rep.expect(name, n, ab == comm.r[n + shift], abelianized=ab, oracle=comm.r[n + shift])
    return rep


def check_quantum(traj, report: Optional[VerifyReport] = None) -> VerifyReport:
    """``R_n R_{n+1} = q R_{n+1} R_n`` once C is specialized to a central q.

    ``q_specialize`` is a ring homomorphism, so the products are formed
    after specializing; the homomorphism itself is tested separately.
    """
    rep = report if report is not None else VerifyReport()
    tag = traj.case.value
    name = f"quantum[{tag}]"
    rep.declare(name)
    rep.expect_equal(f"quantum.C=q[{tag}]", None, traj.C.q_specialize(), QPoly.q(1))
    q = QPoly.q(1)
    spec = {n: p.q_specialize() for n, p in traj.r.items()}
    for n in sorted(spec):
        if n + 1 in spec:
            lhs = spec[n] * spec[n + 1]
            rhs = q * (spec[n + 1] * spec[n])
            rep.expect(name, n, lhs == rhs, lhs=lhs, rhs=rhs)
    return rep


def coefficient_in_product(a, b, w) -> int:
    """Coefficient of the word ``w`` in ``a * b`` without forming the product."""
    total = 0
    for u, c in a.terms.items():
        d = b.terms.get(fg.mul(fg.inv(u), w))
        if d:
            total += c * d
    return total


def _witness_xy(n: int):
    w = fg.parse_word
    y1, y2, y3, u0 = w("y x^-1 y x^-1 y^-1"), w("x^2 y^-1 x^-1 y x^-1 y^-1"), w("x^2 y^-1"), w("y x y^-1")
    left = fg.mul(fg.power(y1, n), u0)
    right = fg.mul(fg.mul(fg.power(y3, n - 1), y2), u0)
    return left, right


def _witness_XY(n: int):
    w = fg.parse_word
    left = fg.mul(fg.mul(w("y"), fg.power(w("y^2 x^-1"), n)), w("y^-1"))
    right = fg.mul(fg.mul(w("y"), fg.power(w("x y^-2"), n - 1)), w("x y^-2 x y^-1 x^-1 y^-1 y"))
    return left, right


def check_c_inverse_term(traj, report: Optional[VerifyReport] = None) -> VerifyReport:
    """u_n u_{n+1} contains C^-1, so R_{2n+1} = u_n u_{n+1} - C^-1 stays positive."""
    rep = report if report is not None else VerifyReport()
    tag = traj.case.value
    c_inv = next(iter(traj.C.inv_unit().terms))
    name = f"c_inverse[{tag}]"
    rep.declare(name)
    u = traj.u
    for n in sorted(u):
        if n + 1 not in u:
            continue
        k = coefficient_in_product(u[n], u[n + 1], c_inv)
        rep.expect(name, n, k >= 1, coefficient=k)
        if 2 * n + 1 in traj.r:
            odd = traj.r[2 * n + 1]
            rep.expect(f"{name}.odd_positive", 2 * n + 1, odd.is_positive(), R=odd)
        if n >= 1:
            left, right = (_witness_xy if traj.case.flavor == "xy" else _witness_XY)(n)
            ok = fg.mul(left, right) == c_inv
            if traj.case.flavor == "xy":
                # the retained terms really occur in u_n and u_{n+1}
                ok = ok and u[n].coeff(left) >= 1 and u[n + 1].coeff(right) >= 1
            rep.expect(f"{name}.witness", n, ok, left=fg.format_word(left), right=fg.format_word(right))
    return rep


def direct_oracle(b: int, c: int, n_max: int, support_rounds: int = 0):
    """R_0..R_k of the (b, c) system by exact right division, stopping early.

    Iterates ``R_{n+1} = (1 + R_n^e) (C R_{n-1})^-1`` directly, which is only
    feasible while the divisions stay small.  Returns the computed values.
    """
    from nclaurent.dynamics import C, X_INV, X, Y, Y_INV, exponent
    from nclaurent.ncpoly import NoSolutionInSupport, NonIntegerSolution, right_divide

    r = {0: Y * X * Y_INV, 1: Y}
    for n in range(1, n_max):
        try:
            r[n + 1] = right_divide(1 + r[n] ** exponent(b, c, n), C * r[n - 1], support_rounds)
        except (NoSolutionInSupport, NonIntegerSolution):
            break
    return r


def full_suite(n_max: int, inject_fault: bool = False, neg_depth: Optional[int] = None, budget: Optional[int] = None) -> VerifyReport:
    """Every check across all five families to depth ``n_max``.

    Negative indices go down to ``-neg_depth`` (default ``min(n_max, 6)``).
    ``inject_fault`` runs the (2,2) system with a wrong K, so the suite is
    seen to fail.
    """
    from nclaurent import dynamics as dyn
    from nclaurent import pathmodel as pm

    neg = min(n_max, 6) if neg_depth is None else neg_depth
    rep = VerifyReport()
    rep.expect_equal("seed.C*R0=x", None, dyn.C * (dyn.Y * dyn.X * dyn.Y_INV), dyn.X)
    rep.expect_equal("seed.star(C)=C", None, dyn.C.star(), dyn.C)
    rep.expect_equal("seed.q(C)=q", None, dyn.C.q_specialize(), QPoly.q(1))

    systems = dyn.Systems(max(n_max, 1))
    if inject_fault:
        from nclaurent.faults import wrong_k_22

        systems._t22 = wrong_k_22(max(n_max, 1))

    base = {
        "22": systems.trajectory("22"),
        "14xy": systems.trajectory("14xy"),
        "14XY": systems.trajectory("14XY"),
    }
    for tag, traj in base.items():
        traj = dyn.Trajectory(traj.case, {n: p for n, p in traj.r.items() if n <= n_max}, traj.K, traj.C,
                              {n: p for n, p in traj.u.items() if 2 * n <= n_max + 2})
        dyn.verify_nonlinear(traj, rep)
        dyn.verify_conserved(traj, rep)
        dyn.verify_positive(traj, rep, zero_one=(tag == "22"))
        check_abelianization(traj, report=rep)
        check_quantum(traj, report=rep)
        if tag != "22":
            check_c_inverse_term(traj, rep)

    # derived ranges: the (4,1) families in full, the others across the seam
    # into negative indices (their positive side is checked above)
    for case in dyn.CaseTag:
        tag = case.value
        derived = case in (dyn.CaseTag.B41_xy, dyn.CaseTag.B41_XY)
        hi = n_max if derived else min(n_max, 2)
        if not derived and not neg:
            continue
        traj = systems.trajectory_range(case, -neg, hi)
        dyn.verify_positive(traj, rep)
        dyn.verify_nonlinear(traj, rep)
        if derived:
            dyn.verify_conserved(traj, rep)
        check_abelianization(traj, report=rep)
        for n in sorted(traj.r):
            rep.expect(f"star_involution[{tag}]", n, traj.r[n].star().star() == traj.r[n])

    # the (4,1) family by direct division, where that is feasible
    direct = direct_oracle(4, 1, n_max)
    for n, p in sorted(direct.items()):
        rep.expect(f"direct_division[41xy]", n, p == systems.f41(n), direct=p, translated=systems.f41(n))

    for case in (dyn.CaseTag.B22, dyn.CaseTag.B14_xy, dyn.CaseTag.B14_XY):
        model = pm.build_model(case)
        pm.weight_identities(model, rep)
        depth = n_max if case is not dyn.CaseTag.B14_XY else max(n_max - 1, 0)
        pm.three_way(model, min(depth, 8), budget, rep)
        pm.series_multiply_check(model, pm.continued_fraction_series(model, min(depth, 8) + 1), rep)
        traj = base[case.value]
        name = f"paths_vs_recursion[{case.value}]"
        rep.declare(name)
        for n in range(min(depth, 8) + 1):
            expect = traj.r[n] if case is dyn.CaseTag.B22 else traj.u.get(n if case is dyn.CaseTag.B14_xy else n + 1)
            if expect is None:
                continue
            rep.expect_equal(name, n, pm.variable(model, n), expect)

    # term count law for (2,2): one monomial per path
    model = pm.build_model(dyn.CaseTag.B22)
    r0_inv = base["22"].r[0].inv_unit()
    for n in range(min(n_max, 8) + 1):
        terms = len(base["22"].r[n] * r0_inv)
        try:
            paths = sum(1 for _ in pm.enumerate_paths(model, 2 * n, budget))
        except pm.BudgetExceeded:
            break
        rep.expect("term_count=path_count[22]", n, terms == paths, terms=terms, paths=paths)
    return rep

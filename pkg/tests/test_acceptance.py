"""The eight acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (visible even
without ``-s``) and then asserts.  The deep multiplication checks of
criteria 3 and 4 take a few minutes on one core; they are marked ``slow``
but run by default.
"""

import pytest

from nclaurent import dynamics as dyn
from nclaurent import pathmodel as pm
from nclaurent import verify as vf
from nclaurent.commpoly import QPoly
from nclaurent.dynamics import C, CaseTag
from nclaurent.ncpoly import NCPoly
from nclaurent.report import VerifyReport

P = NCPoly.parse

R3 = P("y^2 x^-1 y x^-1 + y^2 x^-1 y^-1 x^-1 + x^-1 y x^-1 + x^-1 y^-1 x^-1 + x y^-1 x^-1")
NEG = 6


@pytest.fixture
def announce(capsys):
    def emit(number, title, rep):
        with capsys.disabled():
            status = "PASS" if rep.overall else "FAIL"
            print(f"\ncriterion {number}: {status}  {title}")
            if not rep.overall:
                print(rep.to_text())
        assert rep.overall, rep.to_text()

    return emit


@pytest.fixture(scope="module")
def deep():
    """(2,2) to R_13 and both (1,4) data flavours to R_9."""
    return {
        "22": dyn.seq_22(13),
        "14xy": dyn.seq_14("xy", 9),
        "14XY": dyn.seq_14("XY", 9),
    }


@pytest.fixture(scope="module")
def systems():
    return dyn.Systems(9)


def test_criterion_1_r3_three_ways(announce):
    rep = VerifyReport()
    seg = pm.build_model(CaseTag.B22)
    rep.expect_equal("linear_recursion", 3, dyn.seq_22(3).r[3], R3)
    rep.expect_equal("transfer_matrix", 3, pm.partition_fn_matrix(seg, 6) * seg.base, R3)
    rep.expect_equal("continued_fraction", 3, pm.continued_fraction_series(seg, 4)[3] * seg.base, R3)
    rep.expect_equal("enumeration", 3, pm.partition_fn_enumerate(seg, 6) * seg.base, R3)
    rep.expect("five_terms", 3, len(R3) == 5)
    announce(1, "(2,2) R_3 from recursion, transfer matrix and continued fraction", rep)


def test_criterion_2_barbell(announce):
    rep = VerifyReport()
    bar = pm.build_model(CaseTag.B14_xy)
    y1, y2, y3 = bar.y
    u = dyn.seq_14("xy", 4).u
    rep.expect_equal("u2_u0inv", 2, u[2] * u[0].inv_unit(), y1 * y1 + y2)
    paths = list(pm.enumerate_paths(bar, 3))
    rep.expect("length3_count", 3, len(paths) == 4, count=len(paths))
    rep.expect_equal("length3_weights", 3, sorted(str(w) for _, w in paths),
                     sorted(str(w) for w in (y1 * y1 * y1, y1 * y2, y2 * y1, y3 * y2)))
    rep.expect_equal("length3_labels", 3, sorted(pm.symbolic_weight(bar, v) for v, _ in paths),
                     ["y1 y1 y1", "y1 y2", "y2 y1", "y3 y2"])
    announce(2, "(1,4) u_2 u_0^-1 = y1^2 + y2 and the four length-3 paths", rep)


@pytest.mark.slow
def test_criterion_3_nonlinear(announce, deep):
    rep = VerifyReport()
    for tag, top in (("22", 12), ("14xy", 8), ("14XY", 8)):
        t = deep[tag]
        part = dyn.verify_nonlinear(t)
        e = part.entries[f"nonlinear[{tag}]"]
        rep.expect(f"depth[{tag}]", top, e.hi is not None and e.hi >= top, reached=e.hi)
        rep.merge(part)
    announce(3, "R_{n+1} C R_{n-1} = 1 + R_n^e for (2,2) n<=12 and (1,4) n<=8", rep)


@pytest.mark.slow
def test_criterion_4_conservation(announce, deep):
    rep = VerifyReport()
    for t in deep.values():
        dyn.verify_conserved(t, rep)
    for case in (CaseTag.B22, CaseTag.B14_xy, CaseTag.B14_XY):
        pm.weight_identities(pm.build_model(case), rep)
    needed = ["qcomm[22]", "recur[22]", "recul[22]"] + [
        f"{name}[{tag}]" for tag in ("14xy", "14XY") for name in ("qcomm", "qcomu", "newnc", "rear")
    ]
    for name in needed:
        rep.expect(f"ran.{name}", None, rep.entries.get(name) is not None and rep.entries[name].count > 0)
    announce(4, "conservation laws and weight identities at every computed index", rep)


def test_criterion_5_positivity(announce, deep, systems):
    rep = VerifyReport()
    for tag, t in deep.items():
        dyn.verify_positive(t, rep, zero_one=(tag == "22"))
    for case in CaseTag:
        lo_t = systems.trajectory_range(case, -NEG, 0)
        dyn.verify_positive(lo_t, rep, zero_one=case is CaseTag.B22)
    seg = pm.build_model(CaseTag.B22)
    r0_inv = deep["22"].r[0].inv_unit()
    counts = []
    for n in range(9):
        terms = len(deep["22"].r[n] * r0_inv)
        paths = sum(1 for _ in pm.enumerate_paths(seg, 2 * n))
        counts.append(paths)
        rep.expect("terms=paths[22]", n, terms == paths, terms=terms, paths=paths)
    rep.expect_equal("first_counts[22]", None, counts[:5], [1, 1, 2, 5, 13])
    announce(5, "positivity down to n=-6, (2,2) 0/1 coefficients and term count = path count", rep)


def test_criterion_6_oracles(announce, deep):
    rep = VerifyReport()
    for tag, top in (("22", 10), ("14xy", 8), ("14XY", 8)):
        t = deep[tag]
        cut = dyn.Trajectory(t.case, {n: p for n, p in t.r.items() if n <= top}, t.K, t.C)
        vf.check_abelianization(cut, report=rep)
        vf.check_quantum(cut, report=rep)
    rep.expect_equal("q(C)=q", None, C.q_specialize(), QPoly.q(1))
    announce(6, "abelianization matches the commutative oracle; quantum specialization q-commutes", rep)


def test_criterion_7_symmetry(announce, systems):
    rep = VerifyReport()
    for n in range(-NEG, 7):
        rep.expect_equal("f41(n-1)=g14(n)", n, systems.f41(n - 1), systems.g14(n))
    for n in range(0, 7):
        rep.expect_equal("f14(-n)=star(f41(n+1))", n, systems.f14(-n), systems.f41(n + 1).star())
    # the translated and starred values are the solutions themselves: right
    # seeds, and the (b,c) relation holds across the whole range
    for case in CaseTag:
        t = systems.trajectory_range(case, -NEG, 7)
        if case.flavor == "xy" or case is CaseTag.B22:
            rep.expect(f"seeds[{case.value}]", 0, C * t.r[0] == dyn.X and t.r[1] == dyn.Y)
        else:
            rep.expect(f"seeds[{case.value}]", 1, C * t.r[1] == dyn.X and t.r[2] == dyn.Y)
        dyn.verify_nonlinear(t, rep)
        if case is not CaseTag.B22:
            dyn.verify_positive(t, rep)
    direct = vf.direct_oracle(4, 1, 6)
    rep.expect("direct_division_depth", None, max(direct) >= 5, reached=max(direct))
    for n, p in direct.items():
        rep.expect_equal("direct_division[41xy]", n, p, systems.f41(n))
    announce(7, "(4,1) by translation and negative (1,4) by star, all four families positive", rep)


def test_criterion_8_finite_type(announce, capsys):
    res = dyn.finite_type_probe(1, 1)
    if not res.complete:
        skipped = [e.note for e in res.report.entries.values() if e.skipped]
        with capsys.disabled():
            print(f"\ncriterion 8: SKIP  finite-type probe did not finish: {skipped}")
        pytest.skip(f"finite-type probe did not finish: {skipped}")
    rep = VerifyReport().merge(res.report)
    rep.expect("abelian_period", None, res.period == 5, period=res.period)
    rep.expect("zero_one", None, all(p.is_zero_one() for p in res.r.values()))
    announce(8, f"(1,1) probe: abelian period {res.period}, conjugation by C^{res.conjugation}, 0/1 coefficients", rep)

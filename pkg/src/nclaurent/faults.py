"""Deliberate corruptions, so the checks can be seen to fail."""

from __future__ import annotations

from dataclasses import replace

from nclaurent import dynamics as dyn
from nclaurent.ncpoly import NCPoly


def flip_coefficient(p: NCPoly, delta: int = 1) -> NCPoly:
    """Add ``delta`` to the coefficient of the first term in canonical order."""
    w, c = p.sorted_terms()[0]
    return p + NCPoly.monomial(w, delta)


def corrupt(traj: dyn.Trajectory, n: int, delta: int = 1) -> dyn.Trajectory:
    """Copy of ``traj`` with one coefficient of ``R_n`` changed."""
    r = dict(traj.r)
    r[n] = flip_coefficient(r[n], delta)
    return replace(traj, r=r)


def wrong_k_22(n_max: int) -> dyn.Trajectory:
    """(2,2) evolved with ``K + x`` instead of K; R_2 is the first wrong value."""
    return dyn.seq_22(n_max, K=dyn.conserved_k(dyn.CaseTag.B22) + dyn.X, check_positive=False)

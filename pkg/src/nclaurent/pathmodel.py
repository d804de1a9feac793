"""Path models: weighted graphs whose closed walks add up to the cluster variables.

Two graphs are used.  For (2,2) it is the segment [0, 3] with steps
i -> i+1 of weight 1 and i -> i-1 of weight y_i; R_n is the sum over the
2n-step walks from 0 back to 0, times R_0.  For (1,4) it is the barbell
(loops y_1 at 0 and y_3 at 1, 0 -> 1 of weight 1, 1 -> 0 of weight y_2), and
u_n is the sum over n-step walks from 0 to 0, times u_0.

A walk's weight is the product of its step weights from left to right in
visit order, so matrix powers always multiply the newest step on the right.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from nclaurent.dynamics import C, X, X_INV, Y, Y_INV, CaseTag, conserved_k
from nclaurent.ncpoly import NCPoly
from nclaurent.report import VerifyReport

DEFAULT_BUDGET = 10**6


class UnsupportedCase(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    env = os.environ.get("NCL_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class ModelSpec:
    case: CaseTag
    vertices: int
    weights: Dict[Tuple[int, int], NCPoly]
    base: NCPoly
    y: Tuple[NCPoly, ...]
    start_vertex: int = 0

    @property
    def shape(self) -> str:
        return "segment" if self.case is CaseTag.B22 else "barbell"

    @property
    def steps_per_index(self) -> int:
        """Walk length per unit of the variable index (2 on the segment)."""
        return 2 if self.shape == "segment" else 1

    @property
    def K(self) -> NCPoly:
        """Sum of the weights: the second conserved quantity."""
        if self.shape == "segment":
            return self.y[0] + self.y[1] + self.y[2]
        return self.y[0] + self.y[2]


def build_model(case) -> ModelSpec:
    case = CaseTag(case)
    if case is CaseTag.B22:
        y1 = Y * Y * X_INV * Y_INV
        y2 = X_INV * Y_INV
        y3 = X * Y_INV
        w = {(0, 1): NCPoly.one(), (1, 2): NCPoly.one(), (2, 3): NCPoly.one(), (1, 0): y1, (2, 1): y2, (3, 2): y3}
        return ModelSpec(case, 4, w, Y * X * Y_INV, (y1, y2, y3))
    if case is CaseTag.B14_xy:
        a = (1 + Y) * X_INV
        y1 = a * Y * X_INV * Y_INV
        y2 = (X * X + (1 + Y) * X_INV * X_INV * (1 + Y)) * Y_INV * X_INV * Y * X_INV * Y_INV
        y3 = (X**3 + a) * X_INV * Y_INV
        base = Y * X * Y_INV
    elif case is CaseTag.B14_XY:
        b = (1 + X) * Y_INV
        y1 = (Y**3 + b) * X_INV * Y_INV
        y2 = (Y + b * Y_INV * b) * X_INV * Y_INV
        y3 = b * Y_INV
        base = Y
    else:
        raise UnsupportedCase(f"no path model for {case.value}; use the (1,4) model through the index shift")
    w = {(0, 0): y1, (0, 1): NCPoly.one(), (1, 0): y2, (1, 1): y3}
    return ModelSpec(case, 2, w, base, (y1, y2, y3))


def transfer_matrix(model: ModelSpec) -> List[List[NCPoly]]:
    n = model.vertices
    zero = NCPoly.zero()
    return [[model.weights.get((i, j), zero) for j in range(n)] for i in range(n)]


def mat_mul(A: List[List[NCPoly]], B: List[List[NCPoly]]) -> List[List[NCPoly]]:
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = NCPoly.zero()
            for l in range(k):
                if A[i][l] and B[l][j]:
                    acc = acc + A[i][l] * B[l][j]
            row.append(acc)
        out.append(row)
    return out


def mat_pow(T: List[List[NCPoly]], n: int) -> List[List[NCPoly]]:
    size = len(T)
    out = [[NCPoly.one() if i == j else NCPoly.zero() for j in range(size)] for i in range(size)]
    for _ in range(n):
        out = mat_mul(out, T)
    return out


def partition_fn_matrix(model: ModelSpec, steps: int) -> NCPoly:
    """``(T^steps)_{s,s}``: closed walks of the given length, without the base."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    T = transfer_matrix(model)
    s = model.start_vertex
    # row vector e_s T^k; new steps go on the right
    row = [NCPoly.one() if j == s else NCPoly.zero() for j in range(model.vertices)]
    for _ in range(steps):
        row = [
            sum((row[i] * T[i][j] for i in range(model.vertices) if row[i] and T[i][j]), NCPoly.zero())
            for j in range(model.vertices)
        ]
    return row[s]


def path_count(model: ModelSpec, steps: int) -> int:
    """Number of closed walks, from the 0/1 adjacency matrix."""
    s = model.start_vertex
    row = [1 if j == s else 0 for j in range(model.vertices)]
    for _ in range(steps):
        row = [sum(row[i] for i in range(model.vertices) if (i, j) in model.weights) for j in range(model.vertices)]
    return row[s]


def enumerate_paths(model: ModelSpec, steps: int, budget: Optional[int] = None) -> Iterator[Tuple[Tuple[int, ...], NCPoly]]:
    """Depth-first listing of closed walks as (vertex sequence, weight)."""
    budget = default_budget() if budget is None else budget
    total = path_count(model, steps)
    if total > budget:
        raise BudgetExceeded(f"{total} paths of length {steps} exceed the budget of {budget}")
    out = {}
    for (i, j) in model.weights:
        out.setdefault(i, []).append(j)
    for i in out:
        out[i].sort()
    s = model.start_vertex

    def walk(path, weight):
        if len(path) == steps + 1:
            if path[-1] == s:
                yield tuple(path), weight
            return
        for j in out.get(path[-1], ()):
            path.append(j)
            yield from walk(path, weight * model.weights[(path[-2], j)])
            path.pop()

    yield from walk([s], NCPoly.one())


def step_label(model: ModelSpec, i: int, j: int) -> str:
    """``y1``, ``y2``, ``y3`` or ``1`` for the step i -> j."""
    if model.shape == "segment":
        return f"y{i}" if j == i - 1 else "1"
    return {(0, 0): "y1", (1, 0): "y2", (1, 1): "y3"}.get((i, j), "1")


def symbolic_weight(model: ModelSpec, path) -> str:
    labels = [step_label(model, a, b) for a, b in zip(path, path[1:])]
    return " ".join(l for l in labels if l != "1") or "1"


def partition_fn_enumerate(model: ModelSpec, steps: int, budget: Optional[int] = None) -> NCPoly:
    return sum((w for _, w in enumerate_paths(model, steps, budget)), NCPoly.zero())


# ------------------------------------------------------------------ series


class SeriesNC:
    """Truncated power series in a central variable t with NCPoly coefficients."""

    def __init__(self, coeffs, order: int):
        coeffs = list(coeffs)[:order]
        self.coeffs = coeffs + [NCPoly.zero()] * (order - len(coeffs))
        self.order = order

    @classmethod
    def const(cls, p, order: int) -> "SeriesNC":
        return cls([NCPoly.const(p) if isinstance(p, int) else p], order)

    def __getitem__(self, n: int) -> NCPoly:
        return self.coeffs[n]

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, SeriesNC) and self.coeffs == other.coeffs

    def __add__(self, other: "SeriesNC") -> "SeriesNC":
        return SeriesNC([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "SeriesNC") -> "SeriesNC":
        return SeriesNC([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other) -> "SeriesNC":
        if isinstance(other, (NCPoly, int)):
            return SeriesNC([a * other for a in self.coeffs], self.order)
        out = []
        for n in range(self.order):
            acc = NCPoly.zero()
            for k in range(n + 1):
                if self.coeffs[k] and other.coeffs[n - k]:
                    acc = acc + self.coeffs[k] * other.coeffs[n - k]
            out.append(acc)
        return SeriesNC(out, self.order)

    def __rmul__(self, p) -> "SeriesNC":
        return SeriesNC([p * a for a in self.coeffs], self.order)

    def shift(self, k: int = 1) -> "SeriesNC":
        """Multiply by t^k."""
        return SeriesNC([NCPoly.zero()] * k + self.coeffs, self.order)

    def geometric(self) -> "SeriesNC":
        """``(1 - self)^-1``; needs a zero constant term.

        Solved as ``G = 1 + self * G`` one coefficient at a time.
        """
        if self.coeffs and self.coeffs[0]:
            raise ValueError("geometric series needs a zero constant term")
        g = [NCPoly.one()]
        for n in range(1, self.order):
            acc = NCPoly.zero()
            for k in range(1, n + 1):
                if self.coeffs[k] and g[n - k]:
                    acc = acc + self.coeffs[k] * g[n - k]
            g.append(acc)
        return SeriesNC(g, self.order)

    def __repr__(self):
        return f"SeriesNC({[str(c) for c in self.coeffs]})"


def continued_fraction_series(model: ModelSpec, order: int) -> SeriesNC:
    """Coefficients of the finite continued fraction, base factor excluded.

    Segment: ``F_k = (1 - t F_{k+1} y_k)^-1`` from ``F_4 = 1`` down to ``F_1``.
    Barbell: ``(1 - t y_1 - t^2 (1 - t y_3)^-1 y_2)^-1``.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    y1, y2, y3 = model.y
    if model.shape == "segment":
        F = SeriesNC.const(1, order)
        for yk in (y3, y2, y1):
            F = (F * yk).shift(1).geometric()
        return F
    inner = (SeriesNC.const(y3, order).shift(1)).geometric()
    A = SeriesNC.const(y1, order).shift(1) + (inner * y2).shift(2)
    return A.geometric()


def series_multiply_check(model: ModelSpec, series: SeriesNC, report: Optional[VerifyReport] = None) -> VerifyReport:
    """``(1 - tK + t^2 C) F base = (1 - t(K - y_1)) base`` coefficientwise."""
    rep = report if report is not None else VerifyReport()
    name = f"series[{model.case.value}]"
    rep.declare(name)
    K = conserved_k(model.case)
    F = series * model.base
    lhs = F - (K * F).shift(1) + (C * F).shift(2)
    rhs = SeriesNC([model.base, -((K - model.y[0]) * model.base)], series.order)
    for n in range(series.order):
        rep.expect_equal(name, n, lhs[n], rhs[n])
    return rep


def weight_identities(model: ModelSpec, report: Optional[VerifyReport] = None) -> VerifyReport:
    rep = report if report is not None else VerifyReport()
    tag = model.case.value
    y1, y2, y3 = model.y
    if model.shape == "segment":
        rep.expect_equal(f"weights.y3y1=C[{tag}]", None, y3 * y1, C)
    else:
        rep.expect_equal(f"weights.y2=y3y1-C[{tag}]", None, y2, y3 * y1 - C)
    rep.expect_equal(f"weights.sum=K[{tag}]", None, model.K, conserved_k(model.case))
    for i, w in enumerate(model.y, 1):
        rep.expect(f"weights.positive[{tag}]", i, w.is_positive(), weight=w)
    return rep


def three_way(model: ModelSpec, n_max: int, budget: Optional[int] = None, report: Optional[VerifyReport] = None) -> VerifyReport:
    """Matrix power, path enumeration and continued fraction agree up to index n_max.

    Indices whose enumeration exceeds the budget are compared two ways only.
    """
    rep = report if report is not None else VerifyReport()
    tag = model.case.value
    name = f"three_way[{tag}]"
    rep.declare(name)
    series = continued_fraction_series(model, n_max + 1)
    k = model.steps_per_index
    for n in range(n_max + 1):
        mat = partition_fn_matrix(model, k * n)
        rep.expect_equal(name, n, mat, series[n])
        rep.expect(f"paths.positive[{tag}]", n, mat.is_positive(), Z=mat)
        try:
            enum = partition_fn_enumerate(model, k * n, budget)
        except BudgetExceeded as exc:
            rep.declare(f"{name}.enumerate", f"stopped at n={n}: {exc}")
            continue
        rep.expect_equal(f"{name}.enumerate", n, mat, enum)
    if k == 2:
        for steps in range(1, 2 * n_max + 1, 2):
            rep.expect(f"odd_steps_vanish[{tag}]", steps, not partition_fn_matrix(model, steps))
    return rep


def variable(model: ModelSpec, n: int) -> NCPoly:
    """R_n (segment), u_n (barbell, xy data) or u_{n+1} (barbell, XY data)."""
    return partition_fn_matrix(model, model.steps_per_index * n) * model.base

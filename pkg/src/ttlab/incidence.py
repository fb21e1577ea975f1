"""Incidence matrices of track morphisms and their Perron data.

M(e, e') counts occurrences of e' (either direction) in the image of e; the
row index runs over source edges, sorted by label.  Composition is exact on
matrices as long as substitution does not cancel, which smooth images along
smooth paths guarantee:

    M(f . g) = M(g) M(f)

All certification arithmetic is exact: the dilatation is bracketed by
Collatz-Wielandt quotients of an integer iteration vector, so `lower` and
`upper` are true rational bounds, not floating point estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import networkx as nx

from .errors import NoConvergence, NotIrreducible, NotPrimitive
from .morphism import TrackMorphism

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class IncidenceMatrix:
    rows: tuple[str, ...]  # source edges
    cols: tuple[str, ...]  # target edges
    data: Matrix

    def entry(self, row_label: str, col_label: str) -> int:
        return self.data[self.rows.index(row_label)][self.cols.index(col_label)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def diagonal(self) -> tuple[int, ...]:
        if not self.is_square:
            raise NotPrimitive("diagonal needs a square matrix")
        return tuple(self.data[i][i] for i in range(len(self.rows)))

    def row(self, label: str) -> dict[str, int]:
        r = self.data[self.rows.index(label)]
        return {c: r[j] for j, c in enumerate(self.cols)}

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]


def incidence_matrix(m: TrackMorphism) -> IncidenceMatrix:
    rows = tuple(sorted(m.source.edges))
    cols = tuple(sorted(m.target.edges))
    col_at = {lab: j for j, lab in enumerate(cols)}
    data = []
    for lab in rows:
        counts = [0] * len(cols)
        for lt, _ in m.mapping[lab]:
            counts[col_at[lt]] += 1
        data.append(tuple(counts))
    return IncidenceMatrix(rows, cols, tuple(data))


def mat_mult(a: Matrix, b: Matrix) -> Matrix:
    """Exact integer product; small sizes, plain Python is plenty."""
    if any(len(r) != len(b) for r in a):
        raise ValueError("shape mismatch")
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def matrices_multiply(ms) -> Matrix:
    ms = list(ms)
    out = ms[0]
    for m in ms[1:]:
        out = mat_mult(out, m)
    return out


def fixed_edge_points(m: TrackMorphism) -> tuple[tuple[str, int], ...]:
    """Edges whose image runs over themselves; each such edge pins at least
    one fixed point of the map, so an empty result is what a fixed point
    free certificate needs."""
    mat = incidence_matrix(m)
    if not mat.is_square:
        return ()
    diag = mat.diagonal()
    return tuple(
        (lab, d) for lab, d in zip(mat.rows, diag) if d > 0
    )


# ----------------------------------------------------------------------


@dataclass(frozen=True)
class IrreducibilityReport:
    irreducible: bool
    witness: tuple[str, ...]  # out-closed proper edge set, empty when irreducible
    scc_count: int


def irreducibility(mat: IncidenceMatrix) -> IrreducibilityReport:
    """Strong connectivity of the digraph e -> e' when M(e, e') > 0.

    On failure the witness is a sink strongly connected component of the
    condensation: a proper edge set whose images stay inside it.
    """
    if not mat.is_square:
        raise NotIrreducible("irreducibility needs a self map matrix")
    g = nx.DiGraph()
    g.add_nodes_from(mat.rows)
    for i, r in enumerate(mat.rows):
        for j, c in enumerate(mat.cols):
            if mat.data[i][j] > 0:
                g.add_edge(r, c)
    sccs = [tuple(sorted(s)) for s in nx.strongly_connected_components(g)]
    if len(sccs) == 1:
        return IrreducibilityReport(True, (), 1)
    cond = nx.condensation(g, scc=[set(s) for s in sccs])
    sinks = [sccs[n] for n in cond.nodes if cond.out_degree(n) == 0]
    witness = min(sinks)  # deterministic pick
    return IrreducibilityReport(False, witness, len(sccs))


@dataclass(frozen=True)
class PrimitivityReport:
    primitive: bool
    exponent: int | None  # least k with M^k positive, when primitive
    bound: int  # Wielandt bound that was checked up to


def primitivity(mat: IncidenceMatrix) -> PrimitivityReport:
    """Boolean power test up to the Wielandt bound (n-1)^2 + 1."""
    if not mat.is_square:
        raise NotPrimitive("primitivity needs a self map matrix")
    n = len(mat.rows)
    bound = (n - 1) * (n - 1) + 1 if n > 1 else 1
    base = [[bool(x) for x in row] for row in mat.data]
    cur = base
    for k in range(1, bound + 1):
        if all(all(row) for row in cur):
            return PrimitivityReport(True, k, bound)
        nxt = [
            [any(cur[i][t] and base[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        cur = nxt
    return PrimitivityReport(False, None, bound)


# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PerronData:
    value: float
    lower: Fraction
    upper: Fraction
    iterations: int
    weights: tuple[float, ...]  # unit-sum eigenvector of the transpose

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def _cw_bounds(a: Matrix, v: list[int]) -> tuple[Fraction, Fraction, list[int]]:
    w = [sum(x * y for x, y in zip(row, v)) for row in a]
    quots = [Fraction(wi, vi) for wi, vi in zip(w, v)]
    return min(quots), max(quots), w


def _shrink(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else v


def dilatation(mat: IncidenceMatrix, tol: float = 1e-10,
               max_iterations: int = 20000) -> PerronData:
    """Certified Perron root of an irreducible incidence matrix.

    Integer power iteration; at every step the Collatz-Wielandt quotients
    of the exact vector give true lower and upper bounds.  Stops when the
    bracket is narrower than `tol`.
    """
    rep = irreducibility(mat)
    if not rep.irreducible:
        raise NotIrreducible(
            "dilatation bracket needs an irreducible matrix",
            witness=list(rep.witness),
        )
    a = mat.data
    n = len(a)
    tol_f = Fraction(tol)  # binary floats are exact rationals

    def bracket(matrix: Matrix) -> tuple[Fraction, Fraction, list[int], int]:
        v = [1] * n
        lo_best, hi_best = Fraction(0), None
        for it in range(1, max_iterations + 1):
            lo, hi, w = _cw_bounds(matrix, v)
            if lo > lo_best:
                lo_best = lo
            if hi_best is None or hi < hi_best:
                hi_best = hi
            if hi_best - lo_best < tol_f and lo_best > 0:
                return lo_best, hi_best, v, it
            v = _shrink(w)
        raise NoConvergence(
            f"dilatation bracket did not reach tol={tol} in {max_iterations} steps"
        )

    lower, upper, _, iters = bracket(a)
    at = tuple(zip(*a))
    lo_t, hi_t, vt, _ = bracket(at)
    # the transpose shares the Perron root; take the common refinement
    lower = max(lower, lo_t)
    upper = min(upper, hi_t)
    if lower > upper:
        raise NoConvergence("transpose bracket disagrees, tolerance too loose")
    total = sum(vt)
    weights = tuple(x / total for x in vt)
    value = float((lower + upper) / 2)
    return PerronData(value, lower, upper, iters, weights)

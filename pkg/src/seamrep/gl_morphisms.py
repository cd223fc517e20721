"""Morphisms between cellular modules at a root of unity: the forest order
on the links of a diagram, Stanley's Laurent polynomial, the intertwiner
between mirror-pair modules, sign determination, and image checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from seamrep import diagrams as dg
from seamrep.cell_modules import CellBasis, ExactMatrix, action_matrix, gram_matrix
from seamrep.diagrams import Diagram
from seamrep.qscalar import LaurentPoly, laurent_divexact, qnum_poly
from seamrep.seam_algebra import SeamContext, delta_set, seam_generators
from seamrep.structure_theory import dims, orbit_info


class NotMirrorPair(ValueError):
    """(s,t) is not an adjacent mirror pair in Delta."""


class NoConsistentSigns(RuntimeError):
    """No +-1 assignment makes the candidate map a module morphism."""


class AmbiguousSigns(RuntimeError):
    """More than one sign orbit solves the intertwining constraints."""


class NotDivisible(ArithmeticError):
    """The q-factorial failed to divide; would indicate an implementation bug."""


# ---------------------------------------------------------------------------
# The forest order and Stanley's polynomial
# ---------------------------------------------------------------------------


@dataclass
class LinkForest:
    """The links of a diagram ordered by convex-hull containment."""

    intervals: list[tuple[int, int]]
    h: list[int]

    def __len__(self):
        return len(self.intervals)


def link_forest(w: Diagram) -> LinkForest:
    """Build the containment order on links of a (t,s)-diagram.

    Unrolling the boundary (left side bottom-up, then right side top-down)
    turns every link into an interval; x <= y iff the interval of x lies
    inside that of y, and h_y counts the links below y inclusively.
    """
    intervals = []
    for a, b in w.pairs:
        pts = []
        for p in (a, b):
            side, i = w.point(p)
            pts.append(w.left - i + 1 if side == "L" else w.left + i)
        pts.sort()
        intervals.append((pts[0], pts[1]))
    intervals.sort()
    h = []
    for lo, hi in intervals:
        h.append(
            sum(1 for lo2, hi2 in intervals if lo <= lo2 and hi2 <= hi)
        )
    # sanity: the containment order on a noncrossing family is a forest
    for i, (lo, hi) in enumerate(intervals):
        above = [
            j
            for j, (lo2, hi2) in enumerate(intervals)
            if lo2 <= lo and hi <= hi2 and i != j
        ]
        for x in above:
            for y in above:
                a1, b1 = intervals[x]
                a2, b2 = intervals[y]
                assert (a1 <= a2 and b2 <= b1) or (a2 <= a1 and b1 <= b2)
    return LinkForest(intervals, h)


def stanley_H(forest: LinkForest) -> LaurentPoly:
    """[n]! divided by the product of [h_y]; always a Laurent polynomial."""
    num = LaurentPoly.one()
    for j in range(1, len(forest) + 1):
        num = num * qnum_poly(j)
    den = LaurentPoly.one()
    for hy in forest.h:
        den = den * qnum_poly(hy)
    try:
        return laurent_divexact(num, den)
    except ValueError as exc:
        raise NotDivisible(str(exc)) from exc


# ---------------------------------------------------------------------------
# The restricted morphism
# ---------------------------------------------------------------------------


def is_mirror_pair(ctx: SeamContext, s: int, t: int) -> bool:
    order = ctx.backend.order
    if order is None:
        return False
    ell = order.ell
    delta = delta_set(ctx.n, ctx.k)
    return (
        s in delta
        and t in delta
        and t < s < t + 2 * ell
        and (s + t + 2) % (2 * ell) == 0
    )


def mirror_pairs(ctx: SeamContext) -> list[tuple[int, int]]:
    """All adjacent mirror pairs (s,t) with t = s^- in Delta."""
    order = ctx.backend.order
    if order is None:
        return []
    delta = delta_set(ctx.n, ctx.k)
    out = []
    for t in delta:
        info = orbit_info(t, delta, order.ell)
        if not info.critical and info.d_plus is not None:
            out.append((info.d_plus, t))
    return out


@dataclass
class MorphismData:
    ctx: SeamContext
    s: int
    t: int
    ws: list[Diagram]
    h_polys: list[LaurentPoly]
    signs: dict[Diagram, int]
    matrix: ExactMatrix

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "links": [
                {
                    "w": w.to_text(),
                    "H": str(h),
                    "sign": self.signs.get(w),
                }
                for w, h in zip(self.ws, self.h_polys)
            ],
            "matrix": self.matrix.to_json(),
        }


def _generator_actions(ctx: SeamContext, d: int) -> list[ExactMatrix]:
    basis = CellBasis(ctx, d)
    gens = seam_generators(ctx)
    return [action_matrix(basis, gens[j]) for j in sorted(g for g in gens if g != "id")]


def theta_restricted(ctx: SeamContext, s: int, t: int) -> MorphismData:
    """The morphism S^s -> S^t as a matrix over the canonical bases.

    Candidate columns come from right-concatenation with the monic (s,t)
    diagrams, weighted by Stanley polynomials specialized at q; the signs
    are solved from the intertwining constraints and are unique up to one
    global flip.
    """
    if not is_mirror_pair(ctx, s, t):
        raise NotMirrorPair(f"(s,t)=({s},{t}) is not an adjacent mirror pair")
    backend = ctx.backend
    basis_s = CellBasis(ctx, s)
    basis_t = CellBasis(ctx, t)
    ws = dg.enumerate_monic(s, t)
    h_polys = [stanley_H(link_forest(w)) for w in ws]
    zero = backend.zero()
    candidates = []  # (w, H(q) * A_w) with A_w the concatenation matrix
    for w, h in zip(ws, h_polys):
        hval = backend.from_laurent(h)
        if hval.is_zero():
            continue
        cols = []
        nonzero = False
        for x in basis_s.diagrams:
            y, loops = dg.compose(x, w)
            assert loops == 0, "monic-monic concatenation closed a loop"
            col = [zero] * len(basis_t)
            if y.is_monic():
                idx = basis_t._index.get(y)
                if idx is not None:
                    col[idx] = hval
                    nonzero = True
            cols.append(col)
        if nonzero:
            mat = ExactMatrix(
                [[cols[j][i] for j in range(len(basis_s))] for i in range(len(basis_t))],
                backend,
            )
            candidates.append((w, mat))
    if not candidates:
        raise NoConsistentSigns("no contributing diagrams; the map vanishes")
    acts_s = _generator_actions(ctx, s)
    acts_t = _generator_actions(ctx, t)
    # intertwining constraints, linear in the unknown signs
    rows = []
    for g_s, g_t in zip(acts_s, acts_t):
        comm = [(g_t @ mat) for _, mat in candidates]
        comm2 = [(mat @ g_s) for _, mat in candidates]
        for i in range(len(basis_t)):
            for j in range(len(basis_s)):
                row = [a.rows[i][j] - b.rows[i][j] for a, b in zip(comm, comm2)]
                if any(not c.is_zero() for c in row):
                    rows.append(row)
    if rows:
        kernel = ExactMatrix(rows, backend).kernel()
    else:
        # unconstrained: every assignment works; ambiguity is caught below
        kernel = [
            [backend.one() if i == j else zero for j in range(len(candidates))]
            for i in range(len(candidates))
        ]
    if not kernel:
        raise NoConsistentSigns("intertwining constraints admit only zero")
    if len(kernel) > 1:
        raise AmbiguousSigns(f"{len(kernel)} independent sign solutions")
    vec = kernel[0]
    first = next(i for i, c in enumerate(vec) if not c.is_zero())
    scale = vec[first].inverse()
    vec = [c * scale for c in vec]
    one = backend.one()
    signs: dict[Diagram, int] = {}
    for (w, _), c in zip(candidates, vec):
        if c == one:
            signs[w] = 1
        elif c == -one:
            signs[w] = -1
        else:
            raise NoConsistentSigns(f"solved coefficient {c} is not a sign")
    total = None
    for (w, mat) in candidates:
        m = mat if signs[w] == 1 else mat.scale(-one)
        total = m if total is None else ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(total.rows, m.rows)
            ],
            backend,
        )
    if total.is_zero():
        raise NoConsistentSigns("assembled morphism is zero")
    return MorphismData(ctx, s, t, list(ws), h_polys, signs, total)


def verify_image_is_radical(ctx: SeamContext, s: int, t: int, data: MorphismData | None = None):
    """Check image-in-radical, the expected rank, and intertwining."""
    if data is None:
        data = theta_restricted(ctx, s, t)
    backend = ctx.backend
    basis_t = CellBasis(ctx, t)
    g_t = gram_matrix(basis_t)
    in_radical = (g_t @ data.matrix).is_zero()
    # t outside Delta0 has Rad = Cell, which the recursion already yields
    expected = dims(ctx.n, ctx.k, backend.order)[t][1]
    rank_ok = data.matrix.rank() == expected
    acts_s = _generator_actions(ctx, s)
    acts_t = _generator_actions(ctx, t)
    intertwines = all(
        (gt @ data.matrix) == (data.matrix @ gs) for gs, gt in zip(acts_s, acts_t)
    )
    return {
        "image_in_radical": in_radical,
        "rank": data.matrix.rank(),
        "expected_rank": expected,
        "rank_ok": rank_ok,
        "intertwines": intertwines,
        "ok": in_radical and rank_ok and intertwines,
    }
"""The boundary seam algebra B(n,k) realized inside TL(n+k).

The seam algebra is the corner algebra P_k TL(n+k) P_k, with the projector
acting on the bottom k of the n+k strands.  Those k points are the boundary
points; the top n are bulk points.
"""

from __future__ import annotations

from math import comb

from seamrep import diagrams as dg
from seamrep.diagrams import Diagram
from seamrep.qscalar import GENERIC, Backend, Scalar
from seamrep.tl_algebra import Element, ProjectorCache, generator_element, wenzl_jones


class SeamContext:
    """Parameters (n, k, backend) plus the prebuilt projector expansion.

    The public constraint is n >= 1, k >= 2 and ell > k at a root of unity;
    k in {0, 1} is accepted for internal use, where B(n,0) = TL(n) and
    B(n,1) = TL(n+1) serve as oracle substrates.
    """

    __slots__ = ("n", "k", "backend", "projector", "_gens", "_generic_twin")

    def __init__(self, n: int, k: int, backend: Backend = GENERIC, *, strict: bool = True):
        if n < 0 or k < 0:
            raise ValueError(f"invalid seam parameters n={n}, k={k}")
        if strict and (k < 2 or n < 1):
            raise ValueError("seam algebras require n >= 1 and k >= 2")
        if backend.order is not None and backend.order.ell <= k:
            from seamrep.qscalar import QNumberVanishes

            raise QNumberVanishes(
                f"ell = {backend.order.ell} must exceed k = {k}"
            )
        self.n = n
        self.k = k
        self.backend = backend
        if k >= 1:
            self.projector = wenzl_jones(n + k, k, backend)
        else:
            self.projector = ProjectorCache(n, 0, Element.unit(n, backend))
        self._gens = None
        self._generic_twin = None

    @property
    def strands(self) -> int:
        return self.n + self.k

    def generic_twin(self) -> SeamContext:
        """The same (n, k) over the generic backend."""
        if self.backend is GENERIC:
            return self
        if self._generic_twin is None:
            self._generic_twin = SeamContext(self.n, self.k, GENERIC, strict=False)
        return self._generic_twin

    def is_boundary(self, point: int) -> bool:
        return point > self.n

    def __repr__(self):
        return f"SeamContext(n={self.n}, k={self.k}, backend={self.backend!r})"


def has_boundary_arc(d: Diagram, n: int) -> bool:
    """True when some left arc ties two boundary points (both labels > n)."""
    return any(a > n for a, b in d.left_arcs())


def seam_generators(ctx: SeamContext) -> dict:
    """The unit and the generators e_1..e_n of B(n,k) as TL(n+k) Elements.

    e_j = P E_j P for j < n, while e_n carries an extra factor [k].
    """
    if ctx._gens is not None:
        return dict(ctx._gens)
    p = ctx.projector.expansion
    gens = {"id": p}
    N = ctx.strands
    top = ctx.n if ctx.k >= 1 else ctx.n - 1  # k = 0 is plain TL(n)
    for j in range(1, top + 1):
        e = p * generator_element(N, j, ctx.backend) * p
        if j == ctx.n and ctx.k >= 1:
            e = e.scale(ctx.backend.qnum(ctx.k))
        gens[j] = e
    ctx._gens = dict(gens)
    return gens


def _y_elements(ctx: SeamContext, upto: int) -> list[Element]:
    """The recursively defined elements y_0..y_upto entering the tower
    relation; y_0 = [k] id and y_1 = e_n.

    (-1)^t [k-t] y_{t+1} is the defect of the level-t relation:
    (e_n...e_{n-t}) y_t minus the alternating sum of tail products; at
    t = k the defect is forced to vanish, which is the relation itself.
    """
    gens = seam_generators(ctx)
    n, k = ctx.n, ctx.k
    backend = ctx.backend
    ys = [gens["id"].scale(backend.qnum(k)), gens[n]]
    for t in range(1, upto):
        prod = gens[n]
        for j in range(1, t + 1):
            prod = prod * gens[n - j]
        rhs = prod * ys[t]
        for i in range(0, t):
            chain = gens["id"]
            for j in range(i + 2, t + 1):
                chain = chain * gens[n - j]
            coeff = backend.qnum(k - i)
            if i % 2 == 0:
                coeff = -coeff
            rhs = rhs + (chain * ys[t]).scale(coeff)
        coeff = backend.qnum(k - t)
        if t % 2:
            coeff = -coeff
        ys.append(rhs.scale(coeff.inverse()))
    return ys


def check_relations(ctx: SeamContext) -> list[tuple[str, bool]]:
    """Verify the defining relations of B(n,k), including the tower relation
    on y_k when n > k."""
    gens = seam_generators(ctx)
    n, k = ctx.n, ctx.k
    backend = ctx.backend
    beta = backend.beta()
    ident = gens["id"]
    report: list[tuple[str, bool]] = []
    report.append(("id^2 = id", ident * ident == ident))
    for i in range(1, n + 1):
        e = gens[i]
        report.append(
            (f"id e_{i} = e_{i} id = e_{i}", ident * e == e and e * ident == e)
        )
    for i in range(1, n):
        e = gens[i]
        report.append((f"e_{i}^2 = beta e_{i}", e * e == e.scale(beta)))
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            report.append(
                (f"e_{i} e_{j} = e_{j} e_{i}", gens[i] * gens[j] == gens[j] * gens[i])
            )
    for i in range(1, n - 1):
        e, f = gens[i], gens[i + 1]
        report.append((f"e_{i} e_{i+1} e_{i} = e_{i}", e * f * e == e))
    for i in range(2, n):
        e, f = gens[i], gens[i - 1]
        report.append((f"e_{i} e_{i-1} e_{i} = e_{i}", e * f * e == e))
    en = gens[n]
    report.append((f"e_{n}^2 = [k+1] e_{n}", en * en == en.scale(backend.qnum(k + 1))))
    if n >= 2:
        em = gens[n - 1]
        report.append(
            (
                f"e_{n-1} e_{n} e_{n-1} = [k] e_{n-1}",
                em * en * em == em.scale(backend.qnum(k)),
            )
        )
    if n > k >= 1:
        report.append(("tower relation on y_k", tower_relation_holds(ctx)))
    return report


def tower_relation_holds(ctx: SeamContext) -> bool:
    """The extra relation satisfied by y_k when n > k."""
    gens = seam_generators(ctx)
    n, k = ctx.n, ctx.k
    backend = ctx.backend
    yk = _y_elements(ctx, k)[k]
    lhs = gens[n]
    for j in range(1, k + 1):
        lhs = lhs * gens[n - j]
    lhs = lhs * yk
    rhs = Element.zero(ctx.strands, ctx.strands, backend)
    for i in range(0, k):
        chain = gens["id"]
        for j in range(i + 2, k + 1):
            chain = chain * gens[n - j]
        coeff = backend.qnum(k - i)
        if i % 2:
            coeff = -coeff
        rhs = rhs + (chain * yk).scale(coeff)
    return lhs == rhs


def seam_dimension(n: int, k: int) -> int:
    """dim B(n,k) = C(2n,n) - C(2n,n-k-1), with out-of-range binomials zero."""
    second = comb(2 * n, n - k - 1) if n - k - 1 >= 0 else 0
    return comb(2 * n, n) - second


def cell_dimension(n: int, k: int, d: int) -> int:
    """Dimension of the cellular module S^d over B(n,k) (closed form)."""
    if d < 0 or (n + k - d) % 2:
        return 0
    top = (n + k - d) // 2
    first = comb(n, top) if 0 <= top <= n else 0
    bot2 = (n - k - d - 2) // 2
    second = comb(n, bot2) if 0 <= bot2 <= n else 0
    return first - second


def delta_set(n: int, k: int) -> list[int]:
    """The poset Delta_{n,k}, in increasing order."""
    return [
        d
        for d in range(n + k + 1)
        if (n + k - d) % 2 == 0 and n + d >= k
    ]


class CellDatum:
    """The cell datum of B(n,k): the poset and the per-d basis diagrams."""

    __slots__ = ("n", "k", "delta", "bases")

    def __init__(self, n: int, k: int, delta: list[int], bases: dict[int, list[Diagram]]):
        self.n = n
        self.k = k
        self.delta = delta
        self.bases = bases

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "delta": list(self.delta),
            "bases": {str(d): [w.to_text() for w in ws] for d, ws in self.bases.items()},
        }

    def __repr__(self):
        return f"CellDatum(n={self.n}, k={self.k}, delta={self.delta})"


def cell_diagrams(n: int, k: int, d: int) -> list[Diagram]:
    """Monic (n+k,d)-diagrams without boundary-boundary arcs, canonical order."""
    return [
        w for w in dg.enumerate_monic(n + k, d) if not has_boundary_arc(w, n)
    ]


def cell_datum(ctx: SeamContext) -> CellDatum:
    delta = delta_set(ctx.n, ctx.k)
    bases = {}
    for d in delta:
        ws = cell_diagrams(ctx.n, ctx.k, d)
        assert len(ws) == cell_dimension(ctx.n, ctx.k, d)
        bases[d] = ws
    return CellDatum(ctx.n, ctx.k, delta, bases)


def _sparse_rank(rows: list[dict], backend: Backend) -> int:
    """Rank of sparse rows (diagram -> Scalar) by exact elimination."""
    pivots: dict[Diagram, dict] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            key = min(row, key=lambda t: (t.pairs))
            piv = pivots.get(key)
            if piv is None:
                inv = row[key].inverse()
                row = {d: c * inv for d, c in row.items()}
                pivots[key] = row
                rank += 1
                break
            factor = row[key]
            for d, c in piv.items():
                cur = row.get(d, backend.zero()) - factor * c
                if cur.is_zero():
                    row.pop(d, None)
                else:
                    row[d] = cur
        # empty row: linearly dependent, contributes nothing
    return rank


def _span_rows(ctx: SeamContext):
    datum = cell_datum(ctx)
    p = ctx.projector.expansion
    rows = []
    for d in datum.delta:
        for s in datum.bases[d]:
            left = p * Element.from_diagram(s, ctx.backend)
            for t in datum.bases[d]:
                elem = left * Element.from_diagram(dg.reflect(t), ctx.backend) * p
                if elem.is_zero():
                    return None
                rows.append(dict(elem.terms))
    return rows


def span_check(ctx: SeamContext) -> bool:
    """Enumerate the nonzero P C(s,t) P over the cell datum and confirm they
    are linearly independent with total count dim B(n,k).

    Over the generic backend the rank is first certified by exact evaluation
    at q = 2 (a ring homomorphism, so the specialized rank bounds the generic
    one from below); only an inconclusive certificate falls back to rational
    function arithmetic.
    """
    expected = seam_dimension(ctx.n, ctx.k)
    if ctx.backend is GENERIC:
        from seamrep.qscalar import QRationalBackend

        fast = SeamContext(ctx.n, ctx.k, QRationalBackend(2), strict=False)
        rows = _span_rows(fast)
        if (
            rows is not None
            and len(rows) == expected
            and _sparse_rank(rows, fast.backend) == expected
        ):
            return True
    rows = _span_rows(ctx)
    if rows is None or len(rows) != expected:
        return False
    return _sparse_rank(rows, ctx.backend) == expected

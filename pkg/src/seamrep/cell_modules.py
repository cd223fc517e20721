"""Cellular modules over B(n,k): the module action, the invariant bilinear
form and its Gram matrices, exact determinant/rank/kernel computations, the
closed determinant formula, and the block change of basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from seamrep import diagrams as dg
from seamrep.diagrams import Diagram, ShapeMismatch
from seamrep.qscalar import (
    GENERIC,
    Backend,
    GenericScalar,
    LaurentPoly,
    RootBackend,
    Scalar,
    qnum_poly,
    qnum_pretty,
    scalar_to_json,
    specialize,
)
from seamrep.seam_algebra import (
    SeamContext,
    cell_diagrams,
    cell_dimension,
    delta_set,
    has_boundary_arc,
)
from seamrep.tl_algebra import Element, wenzl_jones


class CriticalD(ArithmeticError):
    """Raised when [d+1] = 0 makes the change-of-basis lemma inapplicable."""


# ---------------------------------------------------------------------------
# Bases and vectors
# ---------------------------------------------------------------------------


class CellBasis:
    """An ordered basis of the cellular module S^d over B(n,k)."""

    __slots__ = ("ctx", "d", "diagrams", "_index")

    def __init__(self, ctx: SeamContext, d: int, diagrams=None):
        if d not in delta_set(ctx.n, ctx.k):
            raise ValueError(f"d={d} not in Delta for (n,k)=({ctx.n},{ctx.k})")
        self.ctx = ctx
        self.d = d
        if diagrams is None:
            diagrams = cell_diagrams(ctx.n, ctx.k, d)
        self.diagrams = tuple(diagrams)
        assert len(self.diagrams) == cell_dimension(ctx.n, ctx.k, d)
        self._index = {w: i for i, w in enumerate(self.diagrams)}

    def __len__(self):
        return len(self.diagrams)

    def index(self, w: Diagram) -> int:
        return self._index[w]

    def vector(self, i: int) -> ModuleVector:
        coeffs = [self.ctx.backend.zero()] * len(self)
        coeffs[i] = self.ctx.backend.one()
        return ModuleVector(self, coeffs)

    def coords(self, elem: Element) -> list[Scalar]:
        """Express an (n+k,d) Element in this basis.

        Terms that lost monicity are zero in the cellular quotient; monic
        terms with a boundary-boundary arc are annihilated by the projector.
        """
        zero = self.ctx.backend.zero()
        out = [zero] * len(self)
        for w, c in elem.terms.items():
            if not w.is_monic():
                continue
            idx = self._index.get(w)
            if idx is None:
                assert has_boundary_arc(w, self.ctx.n), f"unknown basis diagram {w}"
                continue
            out[idx] = out[idx] + c
        return out

    def __repr__(self):
        return f"CellBasis(n={self.ctx.n}, k={self.ctx.k}, d={self.d}, dim={len(self)})"


class ModuleVector:
    """A vector in a cellular module, as coefficients over a CellBasis."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: CellBasis, coeffs):
        self.basis = basis
        self.coeffs = tuple(coeffs)
        assert len(self.coeffs) == len(basis)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: ModuleVector) -> ModuleVector:
        assert self.basis is other.basis
        return ModuleVector(
            self.basis, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def scale(self, c: Scalar) -> ModuleVector:
        return ModuleVector(self.basis, [v * c for v in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, ModuleVector)
            and self.basis is other.basis
            and self.coeffs == other.coeffs
        )

    def to_element(self) -> Element:
        """The underlying (n+k,d) Element (without the projector factor)."""
        ctx = self.basis.ctx
        terms = {
            w: c for w, c in zip(self.basis.diagrams, self.coeffs) if not c.is_zero()
        }
        return Element(ctx.strands, self.basis.d, terms, ctx.backend)

    def __repr__(self):
        return f"ModuleVector({[str(c) for c in self.coeffs]})"


def act(g: Element, v: ModuleVector) -> ModuleVector:
    """Action of an algebra element (a TL(n+k) Element in P TL P) on v."""
    basis = v.basis
    if g.right != basis.ctx.strands:
        raise ShapeMismatch(f"cannot act by shape ({g.left},{g.right})")
    result = g * v.to_element()
    return ModuleVector(basis, basis.coords(result))


def action_matrix(basis: CellBasis, g: Element) -> "ExactMatrix":
    cols = []
    for w in basis.diagrams:
        res = g * Element.from_diagram(w, basis.ctx.backend)
        cols.append(basis.coords(res))
    rows = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
    return ExactMatrix(rows, basis.ctx.backend)


# ---------------------------------------------------------------------------
# The bilinear form
# ---------------------------------------------------------------------------


def gram_entry(basis: CellBasis, v: Diagram, w: Diagram) -> Scalar:
    """<P v, P w>: the factor of the monic (d,d)-diagram in v* P w.

    One projector expansion suffices since P is idempotent.
    """
    ctx = basis.ctx
    backend = ctx.backend
    beta = backend.beta()
    ident = dg.identity(basis.d)
    rv = dg.reflect(v)
    total = backend.zero()
    for t, c in ctx.projector.expansion.terms.items():
        x, l1 = dg.compose(rv, t)
        y, l2 = dg.compose(x, w)
        if y == ident:
            for _ in range(l1 + l2):
                c = c * beta
            total = total + c
    return total


def mdrr_pairing(basis: CellBasis, v: Diagram, w: Diagram):
    """Fast path for <P v, P w> via the loop identity beta^i [k+1]/[k-j+1].

    Returns (applicable, value).  The identity applies only to the nested
    configuration: every closed loop of v* w crossing the projector strip is
    one arc of v glued to the equal arc of w, and every open strand visits
    at most one boundary point; bulk loops contribute beta each.  Outside
    that configuration the caller falls back to full projector expansion.
    """
    ctx = basis.ctx
    backend = ctx.backend
    n, k = ctx.n, ctx.k
    pv: dict[int, int] = {}
    for a, b in v.left_arcs():
        pv[a] = b
        pv[b] = a
    pw: dict[int, int] = {}
    for a, b in w.left_arcs():
        pw[a] = b
        pw[b] = a

    seen: set[int] = set()
    i_loops = 0
    j_loops = 0
    # cycles in the union of the two arc systems are the closed loops
    for start in range(1, n + k + 1):
        if start in seen or start not in pv or start not in pw:
            continue
        pts = {start}
        cur, side = start, "v"
        cycle = False
        while True:
            step = pv if side == "v" else pw
            if cur not in step:
                break
            cur = step[cur]
            side = "w" if side == "v" else "v"
            if cur == start and side == "v":
                cycle = True
                break
            pts.add(cur)
        if not cycle:
            continue
        seen.update(pts)
        boundary_pts = [p for p in pts if p > n]
        if not boundary_pts:
            i_loops += 1
        elif len(pts) == 2:
            j_loops += 1
        else:
            return False, None
    # open strands: walk from each free end; one strip visit at most
    for start in range(1, n + k + 1):
        if start in seen:
            continue
        in_v, in_w = start in pv, start in pw
        if in_v and in_w:
            continue  # interior point, reached from an end
        pts = {start}
        cur, side = start, ("v" if in_v else "w")
        while cur in (pv if side == "v" else pw):
            cur = (pv if side == "v" else pw)[cur]
            pts.add(cur)
            side = "w" if side == "v" else "v"
        seen.update(pts)
        if sum(1 for p in pts if p > n) > 1:
            return False, None
    ident = dg.identity(basis.d)
    bare, _ = dg.compose(dg.reflect(v), w)
    if bare != ident:
        # value 0 is NOT implied here: the projector may still contribute
        return False, None
    value = backend.qnum(k + 1) / backend.qnum(k - j_loops + 1)
    beta = backend.beta()
    for _ in range(i_loops):
        value = value * beta
    return True, value


_generic_gram_cache: dict[tuple[int, int, int], "ExactMatrix"] = {}


def gram_matrix(basis: CellBasis, jobs: int = 1) -> "ExactMatrix":
    """The Gram matrix of the bilinear form over the ordered basis.

    Root-of-unity matrices are obtained by specializing the generic one
    entrywise; the interior coefficients only divide by [j] with j <= k < ell
    so specialization never fails.
    """
    ctx = basis.ctx
    if isinstance(ctx.backend, RootBackend):
        gen = _generic_gram_for(ctx, basis)
        rows = [
            [specialize(c, ctx.backend) for c in row] for row in gen.rows
        ]
        return ExactMatrix(rows, ctx.backend)
    return _gram_direct(basis, jobs)


def _generic_gram_for(ctx: SeamContext, basis: CellBasis) -> "ExactMatrix":
    twin = ctx.generic_twin()
    canonical = tuple(cell_diagrams(ctx.n, ctx.k, basis.d))
    if basis.diagrams == canonical:
        key = (ctx.n, ctx.k, basis.d)
        cached = _generic_gram_cache.get(key)
        if cached is None:
            cached = _gram_direct(CellBasis(twin, basis.d))
            _generic_gram_cache[key] = cached
        return cached
    return _gram_direct(CellBasis(twin, basis.d, basis.diagrams))


def _gram_entry_rows(basis: CellBasis, row_indices):
    ws = basis.diagrams
    out = []
    for i in row_indices:
        out.append([gram_entry(basis, ws[i], ws[j]) for j in range(len(ws))])
    return out


def _gram_direct(basis: CellBasis, jobs: int = 1) -> "ExactMatrix":
    m = len(basis)
    if jobs > 1 and m >= 8:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [list(range(m))[i::jobs] for i in range(jobs)]
        rows: list = [None] * m
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk, res in zip(
                chunks, pool.map(_gram_entry_rows, [basis] * jobs, chunks)
            ):
                for i, row in zip(chunk, res):
                    rows[i] = row
        return ExactMatrix(rows, basis.ctx.backend)
    rows = _gram_entry_rows(basis, range(m))
    return ExactMatrix(rows, basis.ctx.backend)


def gram_det(basis: CellBasis) -> Scalar:
    return gram_matrix(basis).det()


def det_formula(n: int, k: int, d: int, backend: Backend = GENERIC) -> Scalar:
    """The closed product formula for det G^d_{n,k}, evaluated exactly.

    With a root-of-unity backend the generic value is specialized, which
    raises DenominatorVanishes when a factor's denominator hits zero.
    """
    out = GENERIC.one()
    for j in range(1, k // 2 + 1):
        e = cell_dimension(n, k - 2 * j, d)
        ratio = GENERIC.qnum(j) / GENERIC.qnum(k - j + 1)
        for _ in range(e):
            out = out * ratio
    for j in range(1, (n + k - d) // 2 + 1):
        e = cell_dimension(n, k, d + 2 * j)
        ratio = GENERIC.qnum(d + j + 1) / GENERIC.qnum(j)
        for _ in range(e):
            out = out * ratio
    if isinstance(backend, RootBackend):
        return specialize(out, backend)
    return out


def radical_basis(basis: CellBasis) -> list[ModuleVector]:
    """An exact basis of the kernel of the bilinear form."""
    g = gram_matrix(basis)
    return [ModuleVector(basis, col) for col in g.kernel()]


def rank(basis: CellBasis) -> int:
    return gram_matrix(basis).rank()


def renormalized_gram(basis: CellBasis, divisor: GenericScalar, order) -> "ExactMatrix":
    """Divide the generic Gram matrix by a common factor, then specialize."""
    if divisor.is_zero():
        raise ZeroDivisionError("renormalizing by zero")
    ctx = basis.ctx
    gen = _generic_gram_for(ctx, basis)
    backend = order if isinstance(order, RootBackend) else None
    if backend is None:
        from seamrep.qscalar import root_backend

        backend = root_backend(order.N if hasattr(order, "N") else int(order))
    rows = [
        [specialize(c / divisor, backend) for c in row] for row in gen.rows
    ]
    return ExactMatrix(rows, backend)


# ---------------------------------------------------------------------------
# Change of basis (the block form of the Gram matrix)
# ---------------------------------------------------------------------------


def _delete_top_through(w: Diagram) -> Diagram:
    """Remove the through line at left point 1 of a monic diagram."""
    links = []
    for (sa, ia), (sb, ib) in (
        (w.point(a), w.point(b)) for a, b in w.pairs
    ):
        if (sa, ia) == ("L", 1):
            assert sb == "R" and ib == 1
            continue
        na = (sa, ia - 1) if sa == "L" else (sa, ia - 1)
        nb = (sb, ib - 1) if sb == "L" else (sb, ib - 1)
        links.append((na, nb))
    return dg.from_links(w.left - 1, w.right - 1, links)


def _open_top_arc(w: Diagram) -> Diagram:
    """Turn the arc at left point 1 into a new top through line.

    Inverse of closing the top defect; maps Fam_2 of the (n,k,d) basis into
    the (n-1,k,d+1) basis.
    """
    partner = None
    links = []
    for (sa, ia), (sb, ib) in ((w.point(a), w.point(b)) for a, b in w.pairs):
        if (sa, ia) == ("L", 1) or (sb, ib) == ("L", 1):
            other = (sb, ib) if (sa, ia) == ("L", 1) else (sa, ia)
            assert other[0] == "L"
            partner = other[1]
            continue
        links.append(((sa, ia), (sb, ib)))
    assert partner is not None

    def shift(pt):
        s, i = pt
        if s == "L":
            return (s, i - 1)
        return (s, i + 1)

    links = [(shift(a), shift(b)) for a, b in links]
    links.append((("L", partner - 1), ("R", 1)))
    return dg.from_links(w.left - 1, w.right + 1, links)


def _close_top(w: Diagram) -> Diagram:
    """Bend the top right point over into a new top left point."""
    links = []
    for (sa, ia), (sb, ib) in ((w.point(a), w.point(b)) for a, b in w.pairs):
        def mv(pt):
            s, i = pt
            if s == "L":
                return ("L", i + 1)
            if i == 1:
                return ("L", 1)
            return ("R", i - 1)

        links.append((mv((sa, ia)), mv((sb, ib))))
    return dg.from_links(w.left + 1, w.right - 1, links)


def change_of_basis(basis: CellBasis):
    """The unitriangular U with U^T G U block-diagonal, and the two blocks.

    The first block is the Gram matrix of (n-1,k,d-1); the second is
    [d+2]/[d+1] times the Gram matrix of (n-1,k,d+1).
    """
    ctx = basis.ctx
    d = basis.d
    if d < 1:
        raise ValueError("the change of basis requires d >= 1")
    if ctx.backend.order is not None and (d + 1) % ctx.backend.order.ell == 0:
        raise CriticalD(f"[{d + 1}] = 0 at ell = {ctx.backend.order.ell}")
    n, k = ctx.n, ctx.k
    backend = ctx.backend

    fam1 = [w for w in basis.diagrams if (1, 1) in w.through_pairs()]
    fam2 = [w for w in basis.diagrams if (1, 1) not in w.through_pairs()]
    # align Fam_1 with the canonical (n-1,k,d-1) basis
    small1 = cell_diagrams(n - 1, k, d - 1) if d - 1 in delta_set(n - 1, k) else []
    fam1.sort(key=lambda w: small1.index(_delete_top_through(w)))
    assert len(fam1) == len(small1)
    # align Fam_2 with the canonical (n-1,k,d+1) basis via the opened arc
    small2 = cell_diagrams(n - 1, k, d + 1) if d + 1 in delta_set(n - 1, k) else []
    fam2.sort(key=lambda w: small2.index(_open_top_arc(w)))
    assert len(fam2) == len(small2)

    ordered = CellBasis(ctx, d, fam1 + fam2)
    m = len(ordered)
    cols = []
    for i in range(len(fam1)):
        cols.append([backend.one() if j == i else backend.zero() for j in range(m)])
    if fam2:
        proj = wenzl_jones(d + 1, d + 1, backend).expansion
        for idx, x in enumerate(small2):
            prod = Element.from_diagram(x, backend) * proj
            terms: dict[Diagram, Scalar] = {}
            for t, c in prod.terms.items():
                ct = _close_top(t)
                if not ct.is_monic():
                    continue
                prev = terms.get(ct)
                terms[ct] = c if prev is None else prev + c
            closed = Element(ctx.strands, d, terms, backend)
            col = ordered.coords(closed)
            assert not col[len(fam1) + idx].is_zero()
            cols.append(col)
    u = ExactMatrix(
        [[cols[j][i] for j in range(m)] for i in range(m)], backend
    )
    assert u.is_unitriangular()
    g = gram_matrix(ordered)
    transformed = u.transpose() @ g @ u
    twin1 = SeamContext(n - 1, k, backend, strict=False) if small1 else None
    block1 = (
        gram_matrix(CellBasis(twin1, d - 1))
        if small1
        else ExactMatrix([], backend)
    )
    if small2:
        twin2 = SeamContext(n - 1, k, backend, strict=False)
        ratio = backend.qnum(d + 2) / backend.qnum(d + 1)
        block2 = gram_matrix(CellBasis(twin2, d + 1)).scale(ratio)
    else:
        block2 = ExactMatrix([], backend)
    expected = ExactMatrix.block_diag(block1, block2, backend)
    if transformed != expected:
        raise AssertionError("change of basis failed to block-diagonalize")
    return u, (block1, block2)


# ---------------------------------------------------------------------------
# Exact matrices
# ---------------------------------------------------------------------------


class ExactMatrix:
    """A dense matrix of Scalars with exact determinant/rank/kernel."""

    __slots__ = ("rows", "backend", "nrows", "ncols")

    def __init__(self, rows, backend: Backend):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        assert all(len(r) == self.ncols for r in self.rows)
        self.backend = backend

    @classmethod
    def identity(cls, n: int, backend: Backend) -> ExactMatrix:
        one, zero = backend.one(), backend.zero()
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)], backend
        )

    @classmethod
    def block_diag(cls, a: ExactMatrix, b: ExactMatrix, backend: Backend) -> ExactMatrix:
        zero = backend.zero()
        n = a.nrows + b.nrows
        m = a.ncols + b.ncols
        rows = []
        for i in range(n):
            row = []
            for j in range(m):
                if i < a.nrows and j < a.ncols:
                    row.append(a.rows[i][j])
                elif i >= a.nrows and j >= a.ncols:
                    row.append(b.rows[i - a.nrows][j - a.ncols])
                else:
                    row.append(zero)
            rows.append(row)
        return cls(rows, backend)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.backend,
        )

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        assert self.ncols == other.nrows
        zero = self.backend.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for t in range(self.ncols):
                    a = self.rows[i][t]
                    b = other.rows[t][j]
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ExactMatrix(out, self.backend)

    def scale(self, c: Scalar) -> ExactMatrix:
        return ExactMatrix(
            [[v * c for v in row] for row in self.rows], self.backend
        )

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.rows for v in row)

    def is_unitriangular(self) -> bool:
        if self.nrows != self.ncols:
            return False
        one = self.backend.one()
        for i in range(self.nrows):
            if self.rows[i][i] != one:
                return False
            for j in range(i):
                if not self.rows[i][j].is_zero():
                    return False
        return True

    # -- elimination

    def _echelon(self):
        """Row echelon over the coefficient field; returns (rows, pivots)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            piv = None
            for i in range(r, self.nrows):
                if not rows[i][c].is_zero():
                    piv = i
                    break
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = rows[r][c].inverse()
            rows[r] = [v * inv for v in rows[r]]
            for i in range(self.nrows):
                if i != r and not rows[i][c].is_zero():
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return rows, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def kernel(self) -> list[list[Scalar]]:
        """A basis of the right kernel, one column vector per free column."""
        rows, pivots = self._echelon()
        free = [c for c in range(self.ncols) if c not in pivots]
        zero, one = self.backend.zero(), self.backend.one()
        out = []
        for fc in free:
            vec = [zero] * self.ncols
            vec[fc] = one
            for r, pc in enumerate(pivots):
                vec[pc] = -rows[r][fc]
            out.append(vec)
        return out

    def det(self) -> Scalar:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if self.nrows == 0:
            return self.backend.one()
        if self.backend is GENERIC and self.nrows > 8:
            try:
                return self._det_beta_bareiss()
            except _NotBetaExpressible:
                pass
        return self._det_field()

    def _det_field(self) -> Scalar:
        """Fraction-free Bareiss elimination over the scalar field."""
        n = self.nrows
        rows = [list(r) for r in self.rows]
        sign = 1
        prev = self.backend.one()
        for r in range(n):
            piv = None
            for i in range(r, n):
                if not rows[i][r].is_zero():
                    piv = i
                    break
            if piv is None:
                return self.backend.zero()
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
                sign = -sign
            for i in range(r + 1, n):
                for j in range(r + 1, n):
                    num = rows[r][r] * rows[i][j] - rows[i][r] * rows[r][j]
                    rows[i][j] = num / prev
                rows[i][r] = self.backend.zero()
            prev = rows[r][r]
        out = rows[n - 1][n - 1]
        return out if sign == 1 else -out

    def _det_beta_bareiss(self) -> Scalar:
        """Exact determinant via evaluation-interpolation in beta = q + 1/q.

        Gram entries are symmetric Laurent polynomials in q, hence rational
        in beta.  After clearing denominators rowwise the determinant is an
        integer polynomial in beta of bounded degree; it is recovered from
        integer fraction-free Bareiss eliminations at integer sample points
        followed by exact Newton interpolation.
        """
        entries = []
        for row in self.rows:
            erow = []
            for s in row:
                # num/den is bar-invariant for Gram entries, but the reduced
                # num and den individually carry q-shifts; multiplying both
                # by bar(den) symmetrizes them.
                bden = s.den.bar()
                nb = _laurent_to_beta(s.num * bden)
                db = _laurent_to_beta(s.den * bden)
                if nb is None or db is None:
                    raise _NotBetaExpressible
                erow.append((nb, db))
            entries.append(erow)
        divisor = GENERIC.one()
        int_rows = []
        degree_bound = 0
        for erow in entries:
            lcm = [Fraction(1)]
            for _, db in erow:
                g = _bpoly_gcd(lcm, db)
                lcm = _bpoly_mul(lcm, _bpoly_divexact_q(db, g))
            cleared = [
                _bpoly_mul(nb, _bpoly_divexact_q(lcm, db)) for nb, db in erow
            ]
            denoms = 1
            for p in cleared:
                for c in p:
                    denoms = denoms * (c.denominator // gcd(denoms, c.denominator))
            int_rows.append([[int(c * denoms) for c in p] for p in cleared])
            degree_bound += max((len(p) - 1 for p in cleared if p), default=0)
            factor = GENERIC.from_laurent(_beta_to_laurent(lcm)) * GENERIC.from_fraction(
                Fraction(denoms)
            )
            divisor = divisor * factor
        points = list(range(1, degree_bound + 2))
        values = []
        for x in points:
            mat = [
                [_ipoly_eval(p, x) for p in row] for row in int_rows
            ]
            values.append(_int_bareiss_det(mat))
        det_poly = _newton_interpolate(points, values)
        num = GENERIC.from_laurent(_beta_to_laurent(det_poly))
        return num / divisor

    # -- output

    def to_json(self):
        return [[scalar_to_json(c) for c in row] for row in self.rows]

    def to_text(self, pretty: bool = True) -> str:
        if not self.rows:
            return "( )"
        cells = [
            [qnum_pretty(c) if pretty else str(c) for c in row] for row in self.rows
        ]
        widths = [
            max(len(cells[i][j]) for i in range(self.nrows))
            for j in range(self.ncols)
        ]
        lines = []
        for row in cells:
            lines.append(
                "[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]"
            )
        return "\n".join(lines)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"


class _NotBetaExpressible(Exception):
    pass


# -- beta-polynomial helpers (coefficient lists, ascending powers of beta)


def _laurent_to_beta(p: LaurentPoly):
    """Write a bar-invariant Laurent polynomial in beta = q + 1/q, or None."""
    if p.is_zero():
        return []
    if p.bar() != p:
        return None
    work = dict(p.coeffs)
    zcoeffs: dict[int, Fraction] = {}
    while work:
        e = max(work)
        if e < 0:
            return None
        v = work.pop(e)
        if e == 0:
            zcoeffs[0] = v
            continue
        zcoeffs[e] = v
        w = work.get(-e, Fraction(0)) - v
        if w:
            work[-e] = w
        else:
            work.pop(-e, None)
    out = [Fraction(0)]
    z_prev2 = [Fraction(2)]  # Z_0 = 2
    z_prev1 = [Fraction(0), Fraction(1)]  # Z_1 = beta
    maxj = max(zcoeffs)
    for j in range(0, maxj + 1):
        if j == 0:
            zj = [Fraction(1)]
        elif j == 1:
            zj = z_prev1
        else:
            zj = _bpoly_sub(_bpoly_mul([Fraction(0), Fraction(1)], z_prev1), z_prev2)
            z_prev2, z_prev1 = z_prev1, zj
        c = zcoeffs.get(j)
        if c:
            out = _bpoly_add(out, [x * c for x in zj])
    return out


def _beta_to_laurent(coeffs) -> LaurentPoly:
    out = LaurentPoly.zero()
    beta = qnum_poly(2)
    power = LaurentPoly.one()
    for c in coeffs:
        if c:
            out = out + power.scale(c)
        power = power * beta
    return out


def _btrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _bpoly_add(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _btrim(out)


def _bpoly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _btrim(out)


def _bpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _btrim(out)


def _bpoly_gcd(a, b):
    from seamrep.qscalar import _poly_gcd

    return [Fraction(c) for c in _poly_gcd(list(a), list(b))] or []


def _bpoly_divexact_q(num, den):
    from seamrep.qscalar import _poly_divmod

    q, r = _poly_divmod([Fraction(c) for c in num], [Fraction(c) for c in den])
    assert not r
    return _btrim(q)


def _ipoly_eval(p, x: int) -> int:
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def _int_bareiss_det(rows) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    n = len(rows)
    rows = [list(r) for r in rows]
    sign = 1
    prev = 1
    for r in range(n):
        piv = None
        for i in range(r, n):
            if rows[i][r]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                num = rows[r][r] * rows[i][j] - rows[i][r] * rows[r][j]
                q, rem = divmod(num, prev)
                assert rem == 0
                rows[i][j] = q
            rows[i][r] = 0
        prev = rows[r][r]
    return sign * rows[n - 1][n - 1]


def _newton_interpolate(points, values) -> list[Fraction]:
    """Exact polynomial interpolation; returns ascending coefficients."""
    m = len(points)
    coeffs = [Fraction(v) for v in values]
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / Fraction(
                points[i] - points[i - j]
            )
    # expand the Newton form
    poly = [Fraction(0)]
    for j in range(m - 1, -1, -1):
        # poly = poly * (x - points[j]) + coeffs[j]
        shifted = [Fraction(0)] + poly
        scaled = [c * (-Fraction(points[j])) for c in poly]
        poly = _bpoly_add(shifted, scaled) or [Fraction(0)]
        poly[0] += coeffs[j]
    return _btrim(poly)

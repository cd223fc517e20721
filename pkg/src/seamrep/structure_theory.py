"""Criticality and orbits, dimension recursions for radicals and
irreducibles, decomposition and Cartan matrices, projective covers, Bratteli
data, and the constructive cyclic generator of each cellular module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from seamrep import diagrams as dg
from seamrep.diagrams import Diagram
from seamrep.qscalar import UnityOrder
from seamrep.seam_algebra import (
    SeamContext,
    cell_dimension,
    delta_set,
    has_boundary_arc,
    seam_dimension,
)


class ConstructionFailed(RuntimeError):
    """The cyclic-generator construction received invalid input."""


# ---------------------------------------------------------------------------
# Orbits under reflections through critical mirrors
# ---------------------------------------------------------------------------


def is_critical(d: int, ell: int | None) -> bool:
    return ell is not None and (d + 1) % ell == 0


@dataclass
class OrbitInfo:
    d: int
    critical: bool
    orbit: list[int]
    d_minus: int | None
    d_plus: int | None


def _z_orbit_neighbors(d: int, ell: int):
    """Immediate neighbors of d in its full reflection orbit inside Z."""
    # the orbit is { x : x = d or x = -2-d (mod 2*ell) }
    two = 2 * ell
    up = []
    down = []
    for residue in (d % two, (-2 - d) % two):
        delta_up = (residue - d) % two
        if delta_up == 0:
            delta_up = two
        up.append(d + delta_up)
        delta_down = (d - residue) % two
        if delta_down == 0:
            delta_down = two
        down.append(d - delta_down)
    return max(down), min(up)


def orbit_info(d: int, delta: list[int], ell: int | None) -> OrbitInfo:
    if ell is None or is_critical(d, ell):
        return OrbitInfo(d, is_critical(d, ell), [d], None, None)
    two = 2 * ell
    orbit = [x for x in delta if x % two in (d % two, (-2 - d) % two)]
    lo, hi = _z_orbit_neighbors(d, ell)
    return OrbitInfo(
        d,
        False,
        orbit,
        lo if lo in delta else None,
        hi if hi in delta else None,
    )


def orbits(n: int, k: int, order: UnityOrder | None) -> list[OrbitInfo]:
    """Per-d orbit data over Delta_{n,k} (k = 0 gives the plain TL poset)."""
    delta = delta_set(n, k)
    ell = order.ell if order is not None else None
    return [orbit_info(d, delta, ell) for d in delta]


def partition(delta: list[int], ell: int | None) -> list[list[int]]:
    """The partition of delta into critical singletons and orbit classes."""
    seen = set()
    out = []
    for d in delta:
        if d in seen:
            continue
        info = orbit_info(d, delta, ell)
        out.append(info.orbit)
        seen.update(info.orbit)
    return out


# ---------------------------------------------------------------------------
# Dimensions
# ---------------------------------------------------------------------------


def delta0(n: int, k: int, order: UnityOrder | None) -> list[int]:
    """The d with a not-identically-zero bilinear form.

    The form vanishes identically exactly when d < k and ell = k + 1.
    """
    delta = delta_set(n, k)
    if order is not None and order.ell == k + 1:
        return [d for d in delta if d >= k]
    return list(delta)


@lru_cache(maxsize=None)
def _dim_rad(n: int, k: int, d: int, ell: int) -> int:
    if d not in delta_set(n, k):
        return 0
    if d == n + k:
        return 0  # one-dimensional module with <v,v> = 1
    if (d + 1) % ell == 0:
        return 0
    if (d + 2) % ell == 0:
        return _dim_rad(n - 1, k, d - 1, ell) + cell_dimension(n - 1, k, d + 1)
    return _dim_rad(n - 1, k, d - 1, ell) + _dim_rad(n - 1, k, d + 1, ell)


def dims(n: int, k: int, order: UnityOrder | None) -> dict[int, tuple[int, int, int]]:
    """Per-d dimensions (cellular, radical, irreducible) by recursion."""
    out = {}
    d0 = set(delta0(n, k, order))
    for d in delta_set(n, k):
        cell = cell_dimension(n, k, d)
        rad = 0 if order is None else _dim_rad(n, k, d, order.ell)
        irre = cell - rad if d in d0 else 0
        out[d] = (cell, rad, irre)
    return out


# ---------------------------------------------------------------------------
# Structure report
# ---------------------------------------------------------------------------


@dataclass
class CellRecord:
    d: int
    dim_cell: int
    dim_rad: int
    dim_irre: int
    in_delta0: bool
    critical: bool
    orbit: list[int]
    d_minus: int | None
    d_plus: int | None
    cell_sequence: str
    proj_sequence: str | None
    dim_proj: int | None


@dataclass
class StructureReport:
    n: int
    k: int
    order: int | None
    ell: int | None
    delta: list[int]
    delta0: list[int]
    partition: list[list[int]]
    records: dict[int, CellRecord]
    decomposition: list[list[int]]
    cartan: list[list[int]]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "order": self.order,
            "ell": self.ell,
            "delta": self.delta,
            "delta0": self.delta0,
            "partition": self.partition,
            "modules": {
                str(d): {
                    "dim_cell": r.dim_cell,
                    "dim_rad": r.dim_rad,
                    "dim_irre": r.dim_irre,
                    "in_delta0": r.in_delta0,
                    "critical": r.critical,
                    "orbit": r.orbit,
                    "d_minus": r.d_minus,
                    "d_plus": r.d_plus,
                    "cell_sequence": r.cell_sequence,
                    "proj_sequence": r.proj_sequence,
                    "dim_proj": r.dim_proj,
                }
                for d, r in self.records.items()
            },
            "decomposition": self.decomposition,
            "cartan": self.cartan,
        }


def structure_report(n: int, k: int, order: UnityOrder | None) -> StructureReport:
    delta = delta_set(n, k)
    d0 = delta0(n, k, order)
    d0set = set(d0)
    ell = order.ell if order is not None else None
    dimmap = dims(n, k, order)
    records: dict[int, CellRecord] = {}
    for d in delta:
        info = orbit_info(d, delta, ell)
        cell, rad, irre = dimmap[d]
        if info.critical:
            seq = f"S({d}) = I({d})"
        elif info.d_plus is not None:
            head = f"I({d})" if d in d0set else "0"
            if d in d0set:
                seq = f"0 -> I({info.d_plus}) -> S({d}) -> I({d}) -> 0"
            else:
                seq = f"S({d}) = I({info.d_plus})"
        else:
            seq = f"S({d}) = I({d})"
        proj_seq = None
        dim_proj = None
        if d in d0set:
            if info.critical or info.d_minus is None:
                proj_seq = f"P({d}) = S({d})"
                dim_proj = cell
            else:
                proj_seq = f"0 -> S({info.d_minus}) -> P({d}) -> S({d}) -> 0"
                dim_proj = cell + cell_dimension(n, k, info.d_minus)
        records[d] = CellRecord(
            d,
            cell,
            rad,
            irre,
            d in d0set,
            info.critical,
            info.orbit,
            info.d_minus,
            info.d_plus,
            seq,
            proj_seq,
            dim_proj,
        )
    dmat = [
        [
            1
            if (e == d and d in d0set)
            or (records[d].d_plus == e and e in d0set and not records[d].critical)
            else 0
            for e in d0
        ]
        for d in delta
    ]
    cmat = [
        [
            sum(dmat[f][i] * dmat[f][j] for f in range(len(delta)))
            for j in range(len(d0))
        ]
        for i in range(len(d0))
    ]
    return StructureReport(
        n,
        k,
        order.N if order is not None else None,
        ell,
        delta,
        d0,
        partition(delta, ell),
        records,
        dmat,
        cmat,
    )


def report_to_text(rep: StructureReport) -> str:
    lines = []
    qdesc = "generic q" if rep.order is None else f"q of order {rep.order} (ell = {rep.ell})"
    lines.append(f"B({rep.n},{rep.k}) at {qdesc}")
    lines.append(f"dim B = {seam_dimension(rep.n, rep.k)}")
    lines.append(f"Delta  = {rep.delta}")
    lines.append(f"Delta0 = {rep.delta0}")
    lines.append(
        "partition: " + "  ".join("{" + ",".join(map(str, cls)) + "}" for cls in rep.partition)
    )
    lines.append("")
    lines.append(f"{'d':>3} {'dim S':>6} {'dim R':>6} {'dim I':>6}  structure")
    for d in rep.delta:
        r = rep.records[d]
        mark = "*" if r.critical else " "
        lines.append(
            f"{d:>3}{mark}{r.dim_cell:>6}{r.dim_rad:>7}{r.dim_irre:>7}  {r.cell_sequence}"
        )
        if r.proj_sequence and r.proj_sequence != f"P({d}) = S({d})":
            lines.append(" " * 25 + r.proj_sequence)
    lines.append("")
    lines.append("decomposition matrix D (rows Delta, cols Delta0):")
    for row in rep.decomposition:
        lines.append("  " + " ".join(str(x) for x in row))
    lines.append("Cartan matrix C = D^t D:")
    for row in rep.cartan:
        lines.append("  " + " ".join(str(x) for x in row))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Bratteli diagram
# ---------------------------------------------------------------------------


@dataclass
class BratteliRow:
    n: int
    nodes: list[int]
    excluded: list[int]
    critical: list[int]
    brackets: list[list[int]]


def bratteli(n_max: int, k: int, order: UnityOrder | None) -> list[BratteliRow]:
    """Rows n = 1..n_max of the Bratteli diagram of the family B(n,k)."""
    ell = order.ell if order is not None else None
    rows = []
    for n in range(1, n_max + 1):
        all_d = [d for d in range(n + k + 1) if (n + k - d) % 2 == 0]
        included = [d for d in all_d if n + d >= k]
        excluded = [d for d in all_d if n + d < k]
        critical = [d for d in all_d if is_critical(d, ell)]
        rows.append(
            BratteliRow(
                n,
                all_d,
                excluded,
                critical,
                partition(included, ell),
            )
        )
    return rows


def bratteli_to_text(rows: list[BratteliRow]) -> str:
    lines = []
    for row in rows:
        cells = []
        for d in row.nodes:
            s = str(d)
            if d in row.critical:
                s += "*"
            if d in row.excluded:
                s = f"({s})"
            cells.append(s)
        orb = "  ".join(
            "{" + ",".join(map(str, cls)) + "}" for cls in row.brackets if len(cls) > 1
        )
        line = f"n={row.n:<3}" + " ".join(f"{c:>5}" for c in cells)
        if orb:
            line += "   orbits: " + orb
        lines.append(line)
    lines.append("(* critical, parentheses mark d excluded by n+d >= k)")
    return "\n".join(lines)


def bratteli_to_dot(rows: list[BratteliRow], k: int) -> str:
    out = ["digraph bratteli {", "  rankdir=TB;", "  node [shape=plaintext];"]
    for row in rows:
        same = []
        for d in row.nodes:
            name = f"n{row.n}_d{d}"
            attrs = [f'label="{d}"']
            styles = []
            if d in row.critical:
                attrs.append("shape=box")
                styles.append("dashed")  # critical column marker
            if d in row.excluded:
                attrs.append("fontcolor=gray")
                attrs.append("fillcolor=lightgray")
                styles.append("filled")
            if styles:
                attrs.append(f'style="{",".join(styles)}"')
            out.append(f"  {name} [{', '.join(attrs)}];")
            same.append(name)
        out.append("  { rank=same; " + "; ".join(same) + " }")
    for prev, row in zip(rows, rows[1:]):
        for d in prev.nodes:
            if d in prev.excluded:
                continue
            for d2 in (d - 1, d + 1):
                if d2 in row.nodes and d2 not in row.excluded:
                    out.append(f"  n{prev.n}_d{d} -> n{row.n}_d{d2};")
    out.append("}")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# Cyclic generators and the lifting construction
# ---------------------------------------------------------------------------


def cyclic_generator_diagram(n: int, k: int, d: int) -> Diagram:
    """The nested-arc generator z of the cellular module S^d.

    z has m = (n+k-d)/2 arcs nested at the bulk/boundary junction when
    m <= k, and at the bottom 2m points otherwise; defects fill the rest.
    """
    N = n + k
    if d not in delta_set(n, k):
        raise ConstructionFailed(f"d={d} not in Delta for (n,k)=({n},{k})")
    m = (N - d) // 2
    links = []
    if m <= k:
        arcs = [(n - m + j, n + m + 1 - j) for j in range(1, m + 1)]
        defects = list(range(1, n - m + 1)) + list(range(n + m + 1, N + 1))
    else:
        arcs = [(N - 2 * m + j, N + 1 - j) for j in range(1, m + 1)]
        defects = list(range(1, d + 1))
    for a, b in arcs:
        links.append((("L", a), ("L", b)))
    for r, p in enumerate(sorted(defects), start=1):
        links.append((("L", p), ("R", r)))
    z = dg.from_links(N, d, links)
    assert z.is_monic() and not has_boundary_arc(z, n)
    return z


def _z_data(n: int, k: int, d: int):
    N = n + k
    m = (N - d) // 2
    if m <= k:
        arcs = [(n - m + j, n + m + 1 - j) for j in range(1, m + 1)]
    else:
        arcs = [(N - 2 * m + j, N + 1 - j) for j in range(1, m + 1)]
    # already outermost first: arcs[0] spans all the others
    defects = sorted(
        set(range(1, N + 1)) - {p for arc in arcs for p in arc}
    )
    return m, arcs, defects


def lift(ctx: SeamContext, v: Diagram, z: Diagram | None = None) -> Diagram:
    """A single (n+k,n+k)-diagram a with a . z = v exactly (no loop factor).

    Follows the constructive steps: boundary through lines, bulk-defect
    links, boundary-defect closure arcs, the arcs of v reproduced on the
    left, and a final snake weaving through the leftover nested arcs of z.
    """
    n, k = ctx.n, ctx.k
    N = n + k
    d = v.right
    if z is None:
        z = cyclic_generator_diagram(n, k, d)
    if not v.is_monic() or has_boundary_arc(v, n) or v.left != N:
        raise ConstructionFailed(f"{v} is not a basis diagram of S^{d}")
    m, zarcs, zdef = _z_data(n, k, d)
    L, R = "L", "R"
    links: list = []
    # step 0: boundary points pass straight through
    for p in range(n + 1, N + 1):
        links.append(((L, p), (R, p)))
    xs = [p for p, _ in v.through_pairs()]
    # step 1: bulk defects of v reach the matching defect of z
    bulk_defects = [(r, x) for r, x in enumerate(xs, start=1) if x <= n]
    defect_links = {}
    for r, x in bulk_defects:
        defect_links[r] = ((L, x), (R, zdef[r - 1]))
    # step 2: boundary defects of v sitting on z-arcs close onto z defects
    consumed = set()
    for r, x in enumerate(xs, start=1):
        if x > n and zdef[r - 1] != x:
            jarc = next(j for j, (a, b) in enumerate(zarcs) if b == x)
            consumed.add(jarc)
            a, _ = zarcs[jarc]
            links.append(((R, a), (R, zdef[r - 1])))
    remaining = [arc for j, arc in enumerate(zarcs) if j not in consumed]
    sources = [(a, b) for a, b in remaining if b > n]
    surplus = [(a, b) for a, b in remaining if b <= n]
    bb = sorted(
        (p, q) for p, q in v.left_arcs() if q > n
    )  # bulk-boundary arcs of v, outermost first
    assert len(sources) == len(bb), "source arcs must match boundary arcs"
    for (u, w), (a, b) in zip(bb, sources):
        assert b == w, "nested source arc misaligned"
    bulk_arcs = [(p, q) for p, q in v.left_arcs() if q <= n]
    # pick what absorbs the leftover inner arcs of z: the innermost
    # boundary-arc strand, else the lowest bulk-defect strand, else the
    # bottom-most maximal bulk arc (everything else is fenced off)
    arc_absorber = None
    defect_absorber = None
    if surplus and not bb:
        if bulk_defects:
            defect_absorber = bulk_defects[-1]
        else:
            maximal = [
                (p, q)
                for p, q in bulk_arcs
                if not any(p2 < p and q < q2 for p2, q2 in bulk_arcs)
            ]
            arc_absorber = max(maximal, key=lambda arc: arc[1])
    # steps 3-4: arcs of v on the left side; all but the innermost
    # boundary arc close directly onto their source arc
    for p, q in bulk_arcs:
        if (p, q) != arc_absorber:
            links.append(((L, p), (L, q)))
    for r, _ in bulk_defects:
        if defect_absorber is None or r != defect_absorber[0]:
            links.append(defect_links[r])
    for i, ((u, w), (a, b)) in enumerate(zip(bb, sources)):
        if i < len(bb) - 1:
            links.append(((L, u), (R, a)))

    def ladder(pos: int, arcs) -> int:
        """Zigzag through nested arcs, entering each on the side of pos."""
        for a, b in arcs:
            if pos <= a:
                links.append(((R, pos), (R, a)))
                pos = b
            else:
                links.append(((R, pos), (R, b)))
                pos = a
        return pos

    # step 5: the final snake through the surplus arcs
    if bb:
        pos = ladder(sources[-1][0], surplus)
        links.append(((R, pos), (L, bb[-1][0])))
    elif defect_absorber is not None:
        r, x = defect_absorber
        a0, b0 = surplus[0]
        links.append(((L, x), (R, b0)))
        pos = ladder(a0, surplus[1:])
        links.append(((R, pos), (R, zdef[r - 1])))
    elif arc_absorber is not None:
        p, q = arc_absorber
        a0, b0 = surplus[0]
        links.append(((L, p), (R, a0)))
        pos = ladder(b0, surplus[1:])
        links.append(((R, pos), (L, q)))
    else:
        assert not surplus, "leftover arcs of z with nothing to absorb them"
    a = dg.from_links(N, N, links)
    result, loops = dg.compose(a, z)
    if result != v or loops:
        raise ConstructionFailed(f"lift failed for {v}")
    return a

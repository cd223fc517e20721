"""Command-line front end: structure reports, Gram computations, morphism
verification, Bratteli export, and the self-test harness.

Exit codes: 0 success, 2 parameter-constraint violation, 3 index outside
the poset, 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from seamrep.cell_modules import (
    CellBasis,
    CriticalD,
    change_of_basis,
    det_formula,
    gram_matrix,
)
from seamrep.gl_morphisms import (
    NotMirrorPair,
    theta_restricted,
    verify_image_is_radical,
)
from seamrep.qscalar import (
    GENERIC,
    Backend,
    DenominatorVanishes,
    QNumberVanishes,
    qnum_pretty,
    root_backend,
    scalar_to_json,
    specialize,
)
from seamrep.seam_algebra import SeamContext, cell_dimension, delta_set, seam_dimension
from seamrep.structure_theory import (
    bratteli,
    bratteli_to_dot,
    bratteli_to_text,
    report_to_text,
    structure_report,
)

EXIT_OK = 0
EXIT_CONSTRAINT = 2
EXIT_OUT_OF_DELTA = 3
EXIT_VERIFY = 4

DEFAULT_MAX_DIM = 3000


class ConstraintError(ValueError):
    pass


def _max_dim() -> int:
    try:
        return int(os.environ.get("SEAMREP_MAX_DIM", DEFAULT_MAX_DIM))
    except ValueError:
        return DEFAULT_MAX_DIM


def _backend_for(args) -> Backend:
    if getattr(args, "order", None) is not None and getattr(args, "ell", None) is not None:
        raise ConstraintError("give only one of --order and --ell")
    if getattr(args, "order", None) is not None:
        if args.order < 3:
            raise ConstraintError("--order must be at least 3")
        return root_backend(args.order)
    if getattr(args, "ell", None) is not None:
        if args.ell < 2:
            raise ConstraintError("--ell must be at least 2")
        return root_backend(2 * args.ell)
    return GENERIC


def _context(args) -> SeamContext:
    backend = _backend_for(args)
    if args.n < 1 or args.k < 2:
        raise ConstraintError(
            "the seam algebra B(n,k) requires n >= 1 and k >= 2"
        )
    if backend.order is not None and backend.order.ell <= args.k:
        raise ConstraintError(
            f"a root of unity with ell = {backend.order.ell} needs ell > k = {args.k}"
        )
    return SeamContext(args.n, args.k, backend)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def cmd_report(args) -> int:
    ctx = _context(args)
    rep = structure_report(ctx.n, ctx.k, ctx.backend.order)
    if args.format == "json":
        _emit(args, canonical_json(rep.to_json()))
    else:
        _emit(args, report_to_text(rep))
    return EXIT_OK


def cmd_gram(args) -> int:
    ctx = _context(args)
    if args.d is None:
        raise ConstraintError("gram requires --d")
    if args.d not in delta_set(ctx.n, ctx.k):
        print(
            f"d = {args.d} is not in Delta for (n,k) = ({ctx.n},{ctx.k})",
            file=sys.stderr,
        )
        return EXIT_OUT_OF_DELTA
    dim = cell_dimension(ctx.n, ctx.k, args.d)
    if dim > _max_dim():
        raise ConstraintError(
            f"basis dimension {dim} exceeds SEAMREP_MAX_DIM = {_max_dim()}"
        )
    basis = CellBasis(ctx, args.d)
    g = gram_matrix(basis, jobs=args.jobs)
    det = g.det()
    formula = det_formula(ctx.n, ctx.k, args.d)
    if ctx.backend.order is not None:
        try:
            formula = specialize(formula, ctx.backend)
        except DenominatorVanishes:
            formula = None
    kernel = g.kernel()
    blocks = None
    if args.blocks:
        try:
            u, (b1, b2) = change_of_basis(CellBasis(ctx, args.d))
            blocks = (u, b1, b2)
        except (CriticalD, ValueError) as exc:
            blocks = exc
    if args.format == "json":
        payload = {
            "n": ctx.n,
            "k": ctx.k,
            "order": ctx.backend.order.N if ctx.backend.order else None,
            "d": args.d,
            "dimension": dim,
            "basis": [w.to_text() for w in basis.diagrams],
            "gram": g.to_json(),
            "det": scalar_to_json(det),
            "det_formula": scalar_to_json(formula) if formula is not None else None,
            "rank": g.rank(),
            "kernel": [[scalar_to_json(c) for c in vec] for vec in kernel],
        }
        if blocks is not None and not isinstance(blocks, Exception):
            u, b1, b2 = blocks
            payload["change_of_basis"] = {
                "U": u.to_json(),
                "block1": b1.to_json(),
                "block2": b2.to_json(),
            }
        _emit(args, canonical_json(payload))
        return EXIT_OK
    lines = [
        f"Gram matrix of S^{args.d} over B({ctx.n},{ctx.k})"
        + ("" if ctx.backend.order is None else f" at order {ctx.backend.order.N}"),
        f"dimension {dim}",
        g.to_text(),
        f"det (elimination) = {qnum_pretty(det)}",
    ]
    if formula is not None:
        lines.append(f"det (formula)     = {qnum_pretty(formula)}")
        lines.append(f"det match: {det == formula}")
    lines.append(f"rank = {g.rank()}")
    if kernel:
        lines.append("kernel basis:")
        for vec in kernel:
            lines.append("  [" + ", ".join(qnum_pretty(c) for c in vec) + "]")
    if blocks is not None:
        if isinstance(blocks, Exception):
            lines.append(f"block form unavailable: {blocks}")
        else:
            u, b1, b2 = blocks
            lines.append("block form U^T G U:")
            lines.append(b1.to_text() if b1.rows else "( )")
            lines.append(b2.to_text() if b2.rows else "( )")
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_morphism(args) -> int:
    ctx = _context(args)
    if ctx.backend.order is None:
        raise ConstraintError("morphisms require a root of unity (--order or --ell)")
    if args.s is None or args.t is None:
        raise ConstraintError("morphism requires --s and --t")
    for dd in (args.s, args.t):
        if dd in delta_set(ctx.n, ctx.k):
            continue
        print(f"d = {dd} is not in Delta", file=sys.stderr)
        return EXIT_OUT_OF_DELTA
    if max(
        cell_dimension(ctx.n, ctx.k, args.s), cell_dimension(ctx.n, ctx.k, args.t)
    ) > _max_dim():
        raise ConstraintError("basis dimension exceeds SEAMREP_MAX_DIM")
    try:
        data = theta_restricted(ctx, args.s, args.t)
    except NotMirrorPair as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_OUT_OF_DELTA
    report = verify_image_is_radical(ctx, args.s, args.t, data)
    if args.format == "json":
        payload = data.to_json()
        payload["verification"] = {
            key: val for key, val in report.items() if key != "matrix"
        }
        _emit(args, canonical_json(payload))
    else:
        lines = [
            f"theta: S^{args.s} -> S^{args.t} over B({ctx.n},{ctx.k}), order {ctx.backend.order.N}",
            data.matrix.to_text(pretty=False),
            "contributing diagrams (sign, H):",
        ]
        for w, h in zip(data.ws, data.h_polys):
            sign = data.signs.get(w)
            tag = "dropped" if sign is None else f"sign {sign:+d}"
            lines.append(f"  {w.to_text()}  H = {h}  [{tag}]")
        lines.append(f"rank {report['rank']} (expected {report['expected_rank']})")
        lines.append(f"image in radical: {report['image_in_radical']}")
        lines.append(f"intertwines all generators: {report['intertwines']}")
        _emit(args, "\n".join(lines))
    return EXIT_OK if report["ok"] else EXIT_VERIFY


def cmd_bratteli(args) -> int:
    backend = _backend_for(args)
    if args.k < 0:
        raise ConstraintError("--k must be nonnegative")
    # no ell > k restriction here: the chart is combinatorial data on Delta
    rows = bratteli(args.nmax, args.k, backend.order)
    if args.format == "dot":
        _emit(args, bratteli_to_dot(rows, args.k))
    elif args.format == "json":
        payload = [
            {
                "n": row.n,
                "nodes": row.nodes,
                "excluded": row.excluded,
                "critical": row.critical,
                "orbits": row.brackets,
            }
            for row in rows
        ]
        _emit(args, canonical_json(payload))
    else:
        _emit(args, bratteli_to_text(rows))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from seamrep.selftest import FULL, QUICK, run

    profile = FULL if args.full else QUICK
    return run(profile)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seamrep",
        description="Exact representation theory of boundary seam algebras B(n,k).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_nk=True):
        if need_nk:
            p.add_argument("--n", type=int, required=True, help="bulk strands")
            p.add_argument("--k", type=int, required=True, help="boundary strands")
        p.add_argument("--order", type=int, help="multiplicative order N of q")
        p.add_argument("--ell", type=int, help="shortcut for --order 2*ell")
        p.add_argument("--format", choices=["text", "json", "dot"], default="text")
        p.add_argument("--out", help="write output to this path")

    p = sub.add_parser("report", help="module-structure report")
    common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("gram", help="Gram matrix, determinant, rank, kernel")
    common(p)
    p.add_argument("--d", type=int, required=True, help="through-line count")
    p.add_argument("--blocks", action="store_true", help="add the block form")
    p.add_argument("--jobs", type=int, default=1, help="parallel Gram workers")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("morphism", help="intertwiner between mirror-pair modules")
    common(p)
    p.add_argument("--s", type=int, required=True, help="source through-line count")
    p.add_argument("--t", type=int, required=True, help="target through-line count")
    p.set_defaults(func=cmd_morphism)

    p = sub.add_parser("bratteli", help="Bratteli diagram export")
    p.add_argument("--k", type=int, required=True, help="boundary strands (0 = TL)")
    p.add_argument("--nmax", type=int, required=True, help="last row")
    p.add_argument("--order", type=int, help="multiplicative order N of q")
    p.add_argument("--ell", type=int, help="shortcut for --order 2*ell")
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("--out", help="write output to this path")
    p.set_defaults(func=cmd_bratteli)

    p = sub.add_parser("selftest", help="run the bounded acceptance suite")
    p.add_argument("--full", action="store_true", help="contractual sizes (slow)")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConstraintError, QNumberVanishes) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except BrokenPipeError:  # pragma: no cover
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

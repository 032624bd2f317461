"""Command-line front end.

Subcommands: norm, check-minimal, blocks, hp-norm, nehari-bound,
nehari-search, cex, psi, reproduce. Every run prints its effective
numeric settings in a header so the output is self-describing, and
--json emits the same values as flat objects. Exit codes: 0 success,
1 domain/contract error, 2 parse error (including unreadable files).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import _threads  # noqa: F401  (thread cap must precede numpy-heavy work)
from .errors import DomainError, ParseError
from .hankel import active_bases, build_block, operator_norm, spectral_norm
from .minimal import build_recipe, classify, classify_homogeneous, parse_recipe
from .nehari import (
    PsiSeries,
    cex_ratio,
    cex_truncation,
    dual_bound,
    pairsum_witness_lower,
    psi_evaluate,
    psi_projection,
    psi_sup_estimate,
    quadratic_witness_lower,
    search_c2,
)
from .quadrature import QuadratureSpec, h1_norm_2hom, hp_norm, hq_inverse_lower, hq_norm_basic
from .symbols import Symbol, parse_symbol

DEFAULT_TOL = 1e-9
DEFAULT_GRID = 256
DEFAULT_TRUNC = 10**4


def _load_text(path):
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_symbol(path):
    return parse_symbol(_load_text(path))


def _fmt(value):
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return repr(float(value))  # plain repr even for numpy scalars
    if isinstance(value, complex):
        return f"{value.real!r}{'+' if value.imag >= 0 else '-'}{abs(value.imag)!r}j"
    return str(value)


def _jsonable(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def _render(command, config, rows, as_json):
    if as_json:
        payload = {
            "command": command,
            "config": {k: _jsonable(v) for k, v in config.items()},
            "reports": [{k: _jsonable(v) for k, v in row.items()} for row in rows],
        }
        print(json.dumps(payload, indent=2))
        return
    settings = " ".join(f"{k}={_fmt(v)}" for k, v in config.items())
    print(f"# hankel-lab {command} {settings}".rstrip())
    if not rows:
        return
    columns = list(rows[0].keys())
    table = [[_fmt(row.get(col, "")) for col in columns] for row in rows]
    widths = [max(len(col), *(len(line[i]) for line in table)) for i, col in enumerate(columns)]
    print("  ".join(col.ljust(widths[i]) for i, col in enumerate(columns)))
    for line in table:
        print("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)))


def _estimate_row(quantity, est):
    return {
        "quantity": quantity,
        "value": est.value,
        "method": est.method,
        "error_bound": est.error_bound,
    }


def _spec_from(args, dim):
    if getattr(args, "samples", None) is not None or getattr(args, "seed", None) is not None:
        return QuadratureSpec(
            points_per_dimension=args.grid or DEFAULT_GRID,
            method="monte-carlo",
            seed=args.seed or 0,
            samples=args.samples or 10**6,
        )
    grid = args.grid or (DEFAULT_GRID if dim <= 2 else 64)
    return QuadratureSpec(points_per_dimension=grid)


# -- subcommands ---------------------------------------------------------------


def cmd_norm(args):
    s = _load_symbol(args.symbol)
    rows = [
        {
            "quantity": "h2_norm",
            "value": s.h2_norm(),
            "method": "closed-form",
            "error_bound": 0.0,
        }
    ]
    if s.is_zero:
        rows.append({"quantity": "operator_norm", "value": 0.0, "method": "closed-form", "error_bound": 0.0})
        rows.append({"quantity": "sup_estimate", "value": 0.0, "method": "closed-form", "error_bound": 0.0})
    else:
        spec = _spec_from(args, s.dim)
        rows.append(_estimate_row("operator_norm", operator_norm(s)))
        rows.append(_estimate_row("sup_estimate", hp_norm(s, math.inf, spec)))
    config = {"grid": args.grid or (DEFAULT_GRID if s.dim <= 2 else 64), "dim": s.dim}
    _render("norm", config, rows, args.json)
    return 0


def cmd_check_minimal(args):
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    note_extra = ""
    if args.recipe:
        expr = parse_recipe(_load_text(args.symbol))
        s = build_recipe(expr)
        note_extra = "construction-certified"
    else:
        s = _load_symbol(args.symbol)
    cols, _ = active_bases(s)
    if args.recipe and len(cols) > 3000:
        rows = [
            {"quantity": "status", "value": "minimal", "method": "certificate", "error_bound": 0.0},
            {"quantity": "note", "value": "basis too large for a numeric gap; " + note_extra, "method": "", "error_bound": ""},
        ]
        _render("check-minimal", {"tol": tol}, rows, args.json)
        return 0
    if s.is_homogeneous() is not None:
        verdict = classify_homogeneous(s, tol)
        path = "homogeneous-blocks"
    else:
        verdict = classify(s, tol)
        path = "full-matrix"
    note = "; ".join(filter(None, [verdict.note, note_extra]))
    rows = [
        {"quantity": "status", "value": verdict.status, "method": path, "error_bound": ""},
        {"quantity": "gap", "value": verdict.gap, "method": path, "error_bound": ""},
        {"quantity": "h2_norm", "value": s.h2_norm(), "method": "closed-form", "error_bound": 0.0},
    ]
    for k, norm in verdict.block_norms or []:
        rows.append({"quantity": f"block_norm_k={k}", "value": norm, "method": "spectral-exact", "error_bound": 1e-12 * norm})
    if note:
        rows.append({"quantity": "note", "value": note, "method": "", "error_bound": ""})
    _render("check-minimal", {"tol": tol}, rows, args.json)
    return 0


def cmd_blocks(args):
    s = _load_symbol(args.symbol)
    m = s.is_homogeneous()
    if m is None:
        raise DomainError("blocks requires a homogeneous symbol")
    rows = []
    blocks = []
    for k in range(m + 1):
        block = build_block(s, k)
        blocks.append((k, block))
        est = spectral_norm(block)
        row = _estimate_row(f"block_k={k}", est)
        row["shape"] = f"{block.shape[0]}x{block.shape[1]}"
        rows.append(row)
    full = _estimate_row("operator_norm", operator_norm(s))
    full["shape"] = ""
    rows.append(full)
    if args.json:
        if args.dump:
            for row, (_, block) in zip(rows, blocks):
                row["matrix"] = [
                    [[z.real, z.imag] for z in line] for line in block.entries
                ]
        _render("blocks", {"homogeneity": m}, rows, True)
        return 0
    _render("blocks", {"homogeneity": m}, rows, False)
    if args.dump:
        for k, block in blocks:
            print(f"# block k={k}")
            print(block.dump_text(), end="")
    return 0


def cmd_hp_norm(args):
    s = _load_symbol(args.symbol)
    p = math.inf if args.p.lower() in ("inf", "infinity") else float(args.p)
    spec = _spec_from(args, s.dim)
    est = hp_norm(s, p, spec)
    config = {
        "p": args.p,
        "method": spec.method,
        "grid": spec.points_per_dimension,
        "seed": spec.seed,
        "samples": spec.samples,
    }
    _render("hp-norm", config, [_estimate_row("hp_norm", est)], args.json)
    return 0


def cmd_nehari_bound(args):
    if args.d is not None:
        if args.files:
            raise DomainError("give either --d or two symbol files, not both")
        quadratic = quadratic_witness_lower(args.d)
        pairsum = pairsum_witness_lower(args.d)
        rows = [
            {"quantity": "quadratic_witness_lower", "value": quadratic.bound_value, "method": quadratic.method, "error_bound": 0.0},
            {"quantity": "pairsum_witness_lower", "value": pairsum.bound_value, "method": pairsum.method, "error_bound": 0.0},
        ]
        _render("nehari-bound", {"d": args.d}, rows, args.json)
        return 0
    if len(args.files) != 2:
        raise DomainError("nehari-bound needs two symbol files (f, phi) or --d")
    f = _load_symbol(args.files[0])
    phi = _load_symbol(args.files[1])
    spec = _spec_from(args, f.dim)
    report = dual_bound(f, phi, spec)
    witness = report.witness
    rows = [
        {"quantity": "bound_value", "value": report.bound_value, "method": report.method, "error_bound": ""},
        {"quantity": "pairing", "value": witness.pairing, "method": "closed-form", "error_bound": 0.0},
        _estimate_row("hankel_norm", witness.hankel_norm),
        _estimate_row("h1_norm", witness.h1),
    ]
    _render("nehari-bound", {"grid": spec.points_per_dimension, "d": f.dim}, rows, args.json)
    return 0


def cmd_nehari_search(args):
    best_c, report = search_c2(args.a, (args.cmin, args.cmax))
    witness = report.witness
    rows = [
        {"quantity": "best_c", "value": best_c, "method": "search", "error_bound": 1e-6},
        {"quantity": "bound_value", "value": report.bound_value, "method": report.method, "error_bound": ""},
        {"quantity": "pairing", "value": witness.pairing, "method": "closed-form", "error_bound": 0.0},
        _estimate_row("hankel_norm", witness.hankel_norm),
        _estimate_row("h1_norm", witness.h1),
    ]
    _render("nehari-search", {"a": args.a, "cmin": args.cmin, "cmax": args.cmax}, rows, args.json)
    return 0


def cmd_cex(args):
    K = args.trunc if args.trunc is not None else 4
    if K > 20:
        raise DomainError("truncation order above 20 is impractical here")
    rows = []
    sqrt6_over_pi = math.sqrt(6.0) / math.pi
    for k in range(1, K + 1):
        s_k = cex_truncation(k)
        reference = sqrt6_over_pi * math.sqrt(sum(1.0 / j**2 for j in range(1, k + 1)))
        rows.append(
            {
                "quantity": f"h2_K={k}",
                "value": s_k.h2_norm(),
                "method": "closed-form",
                "error_bound": abs(s_k.h2_norm() - reference),
            }
        )
    final = cex_truncation(K)
    cols, _ = active_bases(final)
    if len(cols) <= 3000:
        verdict = classify(final, DEFAULT_TOL)
        rows.append({"quantity": "classification", "value": verdict.status, "method": "full-matrix", "error_bound": ""})
        rows.append({"quantity": "gap", "value": verdict.gap, "method": "full-matrix", "error_bound": ""})
    for k in (1, 10, 100, 200):
        rows.append(
            {
                "quantity": f"dual_ratio_k={k}_q=1",
                "value": cex_ratio(k, 1.0),
                "method": "closed-form",
                "error_bound": 0.0,
            }
        )
    _render("cex", {"trunc": K, "dim": K * (K + 1)}, rows, args.json)
    return 0


def cmd_psi(args):
    K = args.trunc if args.trunc is not None else DEFAULT_TRUNC
    grid = args.grid or 512
    est = psi_sup_estimate(K, grid)
    series = PsiSeries(min(K, 10**6))
    origin = psi_evaluate(PsiSeries(min(K, 10**5)), 0.0, 0.0)
    rows = [
        _estimate_row("sup_gridmax", est),
        {"quantity": "projection", "value": str(psi_projection(series)), "method": "closed-form", "error_bound": 0.0},
        {"quantity": "origin_value", "value": origin, "method": "closed-form", "error_bound": ""},
        {"quantity": "half_pi", "value": math.pi / 2.0, "method": "closed-form", "error_bound": 0.0},
    ]
    _render("psi", {"trunc": K, "grid": grid}, rows, args.json)
    return 0


def _reproduce_rows():
    sqrt6_over_pi = math.sqrt(6.0) / math.pi
    pair = Symbol(2, [((1, 0), 1.0), ((0, 1), 1.0)])
    rows = []

    def add(name, computed, reference, tol):
        rows.append(
            {
                "quantity": name,
                "computed": computed,
                "reference": reference,
                "diff": abs(computed - reference),
                "tol": tol,
                "status": "pass" if abs(computed - reference) <= tol else "FAIL",
            }
        )

    add("pairsum_h2", pair.h2_norm(), math.sqrt(2.0), 1e-12)

    for d in (1, 2, 3):
        dim = 2 * d
        product = Symbol.one(dim)
        for j in range(d):
            product = product * (Symbol.variable(dim, 2 * j) + Symbol.variable(dim, 2 * j + 1))
        add(f"pair_product_opnorm_d={d}", operator_norm(product).value, 2.0 ** (d / 2.0), 1e-9)

    quadratic_half = Symbol(2, [((2, 0), 1.0), ((1, 1), 0.5), ((0, 2), 1.0)])
    add(
        "quadratic_block1_at_half",
        spectral_norm(build_block(quadratic_half, 1)).value,
        1.5,
        1e-10,
    )
    add("quadratic_h2_at_half", quadratic_half.h2_norm(), 1.5, 1e-12)

    b = math.sqrt(2.0) - 1.0
    cubic = Symbol(2, [((3, 0), 1.0), ((2, 1), b), ((1, 2), b), ((0, 3), 1.0)])
    add(
        "cubic_block1_gram_at_threshold",
        spectral_norm(build_block(cubic, 1)).value ** 2,
        1.0 + 2.0 * b + 3.0 * b * b,
        1e-10,
    )
    add("cubic_h2sq_at_threshold", cubic.h2_norm() ** 2, 2.0 + 2.0 * b * b, 1e-12)

    f = Symbol(2, [((2, 0), 1.0), ((1, 1), 1.0), ((0, 2), 1.0)])
    report = dual_bound(f, quadratic_half, QuadratureSpec(points_per_dimension=1024))
    c2_reference = 5.0 * math.pi / (math.pi + 6.0 * math.sqrt(3.0))
    add("witness_pairing", abs(report.witness.pairing), 2.5, 1e-15)
    add("witness_hankel_norm", report.witness.hankel_norm.value, 1.5, 1e-10)
    add("witness_h1", h1_norm_2hom(f).value, 1.0 / 3.0 + 2.0 * math.sqrt(3.0) / math.pi, 1e-6)
    add("c2_dual_bound", report.bound_value, c2_reference, 1e-5)
    add("c2_lower_closed", quadratic_witness_lower(2).bound_value, c2_reference, 1e-12)
    add("pairsum_lower_closed", pairsum_witness_lower(2).bound_value, math.pi / (2.0 * math.sqrt(2.0)), 1e-12)
    add(
        "pairsum_dual_bound",
        dual_bound(pair, pair, QuadratureSpec(points_per_dimension=1024)).bound_value,
        math.pi / (2.0 * math.sqrt(2.0)),
        1e-6,
    )

    add("hq_norm_q1", hq_norm_basic(1.0).value, 2.0 * math.sqrt(2.0) / math.pi, 1e-9)
    add("hq_inverse_lower_q1", hq_inverse_lower(1.0), 1.0 + (2.0 * math.log(2.0) - 1.0) / 8.0, 1e-12)

    add(
        "cex_h2_K3",
        cex_truncation(3).h2_norm(),
        sqrt6_over_pi * math.sqrt(1.0 + 0.25 + 1.0 / 9.0),
        1e-12,
    )
    add("cex_h2_limit", sqrt6_over_pi * math.sqrt(math.pi**2 / 6.0), 1.0, 1e-12)

    projection_gap = (psi_projection(PsiSeries(4)) - pair).h2_norm()
    add("psi_projection_gap", projection_gap, 0.0, 1e-15)
    add("psi_sup_gridmax", psi_sup_estimate(DEFAULT_TRUNC, 512).value, math.pi / 2.0, 2e-3)
    return rows


def cmd_reproduce(args):
    rows = _reproduce_rows()
    config = {"tol": DEFAULT_TOL, "grid": DEFAULT_GRID, "trunc": DEFAULT_TRUNC}
    _render("reproduce", config, rows, args.json)
    failures = [row["quantity"] for row in rows if row["status"] == "FAIL"]
    if failures:
        print("out of tolerance: " + ", ".join(failures), file=sys.stderr)
        return 1
    return 0


# -- wiring --------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hankel-lab",
        description="Small Hankel operators on the d-torus with polynomial symbols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid=False, tol=False, trunc=False, sampling=False):
        p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
        if grid:
            p.add_argument("--grid", type=int, default=None, help="points per dimension")
        if tol:
            p.add_argument("--tol", type=float, default=None, help="classification tolerance")
        if trunc:
            p.add_argument("--trunc", type=int, default=None, help="series truncation order")
        if sampling:
            p.add_argument("--seed", type=int, default=None, help="monte-carlo seed")
            p.add_argument("--samples", type=int, default=None, help="monte-carlo sample count")

    p = sub.add_parser("norm", help="h2 norm, operator norm and sup estimate of a symbol file")
    p.add_argument("symbol")
    common(p, grid=True, sampling=True)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("check-minimal", help="classify a symbol (or a recipe) as minimal-norm")
    p.add_argument("symbol", help="symbol file, or recipe file with --recipe")
    p.add_argument("--recipe", action="store_true", help="input is a recipe s-expression")
    common(p, tol=True)
    p.set_defaults(func=cmd_check_minimal)

    p = sub.add_parser("blocks", help="homogeneous block norms (and matrices with --dump)")
    p.add_argument("symbol")
    p.add_argument("--dump", action="store_true", help="dump block matrices as text")
    common(p)
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("hp-norm", help="H^p norm of a symbol file (p a real >= 1, or 'inf')")
    p.add_argument("symbol")
    p.add_argument("p")
    common(p, grid=True, sampling=True)
    p.set_defaults(func=cmd_hp_norm)

    p = sub.add_parser("nehari-bound", help="dual-pairing bound from two files, or closed-form bounds via --d")
    p.add_argument("files", nargs="*", help="f and phi symbol files")
    p.add_argument("--d", type=int, default=None, help="even dimension for the closed-form bounds")
    common(p, grid=True, sampling=True)
    p.set_defaults(func=cmd_nehari_bound)

    p = sub.add_parser("nehari-search", help="tune the quadratic test function over c")
    p.add_argument("--a", type=float, required=True, help="middle coefficient of the symbol (0 <= a <= 1/2)")
    p.add_argument("--cmin", type=float, default=0.0)
    p.add_argument("--cmax", type=float, default=2.0)
    common(p)
    p.set_defaults(func=cmd_nehari_search)

    p = sub.add_parser("cex", help="truncations of the divergent-dual symbol and their diagnostics")
    common(p, trunc=True)
    p.set_defaults(func=cmd_cex)

    p = sub.add_parser("psi", help="sup estimate and projection of the completion series for z1+z2")
    common(p, grid=True, trunc=True)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("reproduce", help="recompute the built-in reference table")
    common(p)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

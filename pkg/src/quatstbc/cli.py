"""Command-line front end: build codewords, run checks, sweep the channel,
query number-theory facts, list presets.

Exit codes: 0 on success, 1 when a requested check fails its expectation,
2 on usage or spec-parse errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import metrics, numtheory, simulate
from .algebras import is_division
from .presets import CodeSpec, Constellation, PRESETS, preset

CHECKS = ("diversity", "mindet", "nvd", "shaping", "energy")


def _load_code(args) -> CodeSpec:
    if getattr(args, "preset", None):
        return preset(args.preset)
    if getattr(args, "spec", None):
        try:
            return CodeSpec.load(args.spec)
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: cannot parse code spec {args.spec}: {exc}", file=sys.stderr)
            raise SystemExit(2)
    print("error: provide --preset NAME or --spec FILE", file=sys.stderr)
    raise SystemExit(2)


def parse_symbol(tok: str):
    """Parse '3', '-2', '1+1i', '2-1j', 'i', '-i' into an (re, im) pair."""
    tok = tok.strip().replace(" ", "").replace("i", "j")
    if not tok:
        raise ValueError("empty symbol")
    try:
        z = complex(tok)
        re_part, im_part = int(z.real), int(z.imag)
    except (ValueError, OverflowError):
        raise ValueError(f"cannot parse symbol {tok!r}") from None
    if re_part != z.real or im_part != z.imag:
        raise ValueError(f"symbol {tok!r} must be a Gaussian integer")
    return (re_part, im_part)


def _constellation(args, code: CodeSpec) -> Constellation:
    if getattr(args, "qam", None):
        return Constellation("qam", args.qam)
    if getattr(args, "L", None) is not None:
        return Constellation("box", args.L)
    return code.constellation


def _fmt_tower(tw) -> str:
    base = "Q" if tw.m is None else ("Q(i)" if tw.m == -1 else f"Q(sqrt({tw.m}))")
    if tw.a is None:
        return base
    a = tw.a
    if len(a) == 1 or a[1] == 0:
        inner = "i" if a[0] == -1 else f"sqrt({a[0]})"
    elif a[0] == 0 and a[1] == 1:
        inner = "sqrt(i)"
    else:
        inner = f"sqrt({a[0]}+{a[1]}i)"
    return f"{base}({inner})"


def cmd_presets(args) -> int:
    for name in sorted(PRESETS):
        p = PRESETS[name]
        extras = []
        if p.shaping_n:
            extras.append(f"1/sqrt({p.shaping_n})")
        if p.ideal_alpha:
            extras.append("ideal")
        kind = "nonassociative" if p.algebra().nonassociative else "associative  "
        print(f"{name:12s} {p.shape}  K = {_fmt_tower(p.tower):16s} {kind}  "
              + " ".join(extras))
    return 0


def cmd_build(args) -> int:
    code = _load_code(args)
    try:
        symbols = [parse_symbol(t) for t in args.symbols.split(",")]
        cw = code.codeword(symbols)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(cw.to_json(include_float=True), indent=2))
        return 0
    scale = f"(1/sqrt({cw.shaping_n})) * " if cw.shaping_n else ""
    print(f"codeword = {scale}[")
    for row in cw.entries:
        print("  [" + ", ".join(str(e) for e in row) + "]")
    print("]")
    print("embedded:")
    for row in cw.embed():
        print("  [" + "  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row) + "]")
    return 0


def cmd_check(args) -> int:
    code = _load_code(args)
    cons = _constellation(args, code)
    which = [c for c in CHECKS if getattr(args, c.replace("-", "_"))]
    if args.all or not which:
        which = list(CHECKS)
    report = metrics.MetricReport(code.name)
    ok = True
    if "diversity" in which:
        report.diversity = metrics.full_diversity_check(code, cons)
        expect_diverse = code.algebra().nonassociative or \
            is_division(code.algebra(), num_bound=4, den_bound=2, cap=50_000)[0] == "yes"
        if expect_diverse and not report.diversity.ok:
            ok = False
            report.failures.append("division-algebra code failed full diversity")
    if "mindet" in which:
        if code.shape == "2x4":
            report.gen_mindet = metrics.gen_min_det(code, cons)
            if not report.gen_mindet.min_abs_sq:
                ok = False
                report.failures.append("generalized minimum determinant is zero")
        else:
            report.mindet = metrics.min_det(code, cons)
            if code.algebra().nonassociative and not report.mindet.min_abs_sq:
                ok = False
                report.failures.append("minimum determinant is zero")
    if "nvd" in which:
        try:
            pair = code.nvd_pair()
            if pair is None:
                bn, bd = metrics.reduce_fraction_gaussian(code.b)
            else:
                bn, bd = pair
            report.nvd = metrics.nvd_constant(code, bn, bd)
        except ValueError as exc:
            ok = False
            report.failures.append(f"nvd: {exc}")
        if report.nvd is not None and report.nvd.applicable:
            if code.shape == "2x4":
                gm = report.gen_mindet or metrics.gen_min_det(code, cons)
                report.gen_mindet = gm
                held = gm.shaped_delta_g_sq is not None and \
                    gm.shaped_delta_g_sq >= report.nvd.bound_sq
            else:
                md = report.mindet or metrics.min_det(code, cons)
                report.mindet = md
                q = md.shaped_min_abs_sq_rational
                bound = report.nvd.bound_sq
                held = (q >= bound) if q is not None else \
                    ((md.min_abs_sq * md.shaped_scale).compare(
                        md.min_abs_sq.tower.rat(bound)) >= 0)
            if not held:
                ok = False
                report.failures.append("enumerated minimum fell below the NVD bound")
    if "shaping" in which:
        report.shaping = metrics.shaping_check(code)
    if "energy" in which:
        report.energy = metrics.energy_check(code, cons)
        if not report.energy.uniform_exact and report.energy.max_rel_dev > 1e-9:
            ok = False
            report.failures.append("row energies are not uniform")
    if args.det_census:
        with open(args.det_census, "w") as fh:
            metrics.det_census(code, cons, fh)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.to_table())
    return 0 if ok else 1


def cmd_simulate(args) -> int:
    code = _load_code(args)
    cons = _constellation(args, code)
    try:
        snrs = tuple(float(s) for s in args.snr.split(","))
        book = simulate.build_codebook(code, cons)
        n_tx = book.n_tx
        config = simulate.ChannelConfig(
            n_tx=n_tx, n_rx=args.nrx, snr_db_grid=snrs,
            trials=args.trials, seed=args.seed, fading=args.fading)
        points, _ = simulate.run_sweep(config, book)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    csv = simulate.sweep_csv(points, code.name)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    return 0


def cmd_nt(args) -> int:
    try:
        if args.nt_query == "reldisc":
            out = {"m": args.m, "rel_disc_over_Qi": numtheory.rel_disc_over_Qi(args.m)}
        elif args.nt_query == "h1":
            if args.imag_quad is not None:
                out = {"field": f"Q(sqrt(-{args.imag_quad}))",
                       "h_is_one": numtheory.class_number_is_one("imag_quad", args.imag_quad)}
            elif args.qi_ext is not None:
                out = {"field": f"Q(i)(sqrt({args.qi_ext}))",
                       "h_is_one": numtheory.class_number_is_one("qi_ext", args.qi_ext)}
            else:
                print("error: h1 needs --imag-quad M or --qi-ext M", file=sys.stderr)
                return 2
        elif args.nt_query == "unitrank":
            out = {"r": args.r, "s": args.s, "unit_rank": numtheory.unit_rank(args.r, args.s)}
        else:
            info = numtheory.quad_field_info(args.m)
            out = {"m": info.m, "disc": info.disc, "integral_basis": info.basis_desc,
                   "h_is_one": info.h_is_one}
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(out))
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="quatstbc",
                                 description="space-time block codes from quaternion algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_code_args(p):
        p.add_argument("--preset", help="named preset (see `quatstbc presets`)")
        p.add_argument("--spec", help="JSON code-spec file")

    p = sub.add_parser("presets", help="list the named code presets")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("build", help="build one codeword from information symbols")
    add_code_args(p)
    p.add_argument("--symbols", required=True,
                   help="comma list of Gaussian integers, e.g. '1,0,1-1i,2'")
    p.add_argument("--json", action="store_true", help="emit exact JSON")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="run design-criteria checks")
    add_code_args(p)
    p.add_argument("--L", type=int, help="box constellation bound")
    p.add_argument("--qam", type=int, help="QAM order (perfect square)")
    for c in CHECKS:
        p.add_argument(f"--{c}", action="store_true")
    p.add_argument("--all", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--det-census", dest="det_census", metavar="FILE",
                   help="write per-tuple |det|^2 CSV here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("simulate", help="Monte Carlo codeword error rates (CSV)")
    add_code_args(p)
    p.add_argument("--snr", default="0,5,10,15,20", help="comma list of SNR dB values")
    p.add_argument("--qam", type=int, help="QAM order")
    p.add_argument("--L", type=int, help="box constellation bound")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--nrx", type=int, default=2)
    p.add_argument("--fading", default="rayleigh_block",
                   choices=["rayleigh_block", "identity"])
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("nt", help="number-theory queries (JSON)")
    ntsub = p.add_subparsers(dest="nt_query", required=True)
    q = ntsub.add_parser("reldisc")
    q.add_argument("--m", type=int, required=True)
    q = ntsub.add_parser("h1")
    q.add_argument("--imag-quad", type=int, dest="imag_quad")
    q.add_argument("--qi-ext", type=int, dest="qi_ext")
    q = ntsub.add_parser("unitrank")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q = ntsub.add_parser("info")
    q.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_nt)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

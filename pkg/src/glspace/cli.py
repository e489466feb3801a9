"""Command-line front end.

Subcommands (one per theorem family):

    glspace constants table --kind <k> --p 1.5,2,3 [--param a=b ...]
    glspace norm --input f.csv|f.bin --kind lp|lorentz|anisotropic|gls ...
    glspace op apply --op '<json>' --input f.bin --out g.bin
    glspace verify transfer|dilation|interpolation|pbo-blowup|kernel-bound \
        --config cfg.json [--out report.csv] [--format csv|json] [--tol x]
    glspace boyd --config cfg.json
    glspace counterexample --n 1 --beta 0.25 --out f0.bin

Exit codes: 0 full pass, 1 verification failure, 2 configuration error.
Two runs with identical configs produce byte-identical outputs; no timestamps
or machine state enter any report.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys


def _cap_threads() -> None:
    v = os.environ.get("GLSPACE_THREADS")
    if v:
        for key in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                    "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
            os.environ.setdefault(key, v)


_cap_threads()

import numpy as np

from .errors import ConfigurationError, DomainError, GlspaceError
from . import constants as consts
from . import extremal, grids, operators, psi as psi_mod


def _parse_float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v != ""]


def _parse_params(pairs: list[str] | None) -> dict:
    out: dict = {}
    for item in pairs or []:
        if "=" not in item:
            raise ConfigurationError(f"--param needs key=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k] = json.loads(v)
        except json.JSONDecodeError:
            out[k] = v
    return out


def _parse_grid_flag(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigurationError("--p-grid needs start:stop:count:spacing")
    return psi_mod.grid_from_spec({"start": float(parts[0]), "stop": float(parts[1]),
                                   "count": int(parts[2]), "spacing": parts[3]})


def _load_grid_function(path: str) -> grids.GridFunction:
    if path.endswith(".csv"):
        with open(path, "r", encoding="utf-8") as fh:
            return grids.GridFunction.from_csv(fh.read())
    with open(path, "rb") as fh:
        return grids.GridFunction.from_binary(fh.read())


def _write_output(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        with open(out, "wb") as fh:
            fh.write(data)
    except OSError as e:
        raise ConfigurationError(f"cannot write output {out!r}: {e}") from e


def emit_report(report: extremal.VerificationReport, fmt: str) -> bytes:
    """Serialize a finalized report as CSV or JSON bytes."""
    if fmt == "csv":
        return report.to_csv().encode()
    if fmt == "json":
        return report.to_json().encode()
    raise ConfigurationError(f"unknown report format {fmt!r}")


# -- constants table -------------------------------------------------------------

def _constants_table(args) -> int:
    kind = args.kind
    ps = _parse_float_list(args.p) if args.p else None
    if args.p_grid:
        ps = [float(v) for v in _parse_grid_flag(args.p_grid)]
    if not ps:
        raise ConfigurationError("constants table needs --p or --p-grid")
    extra = _parse_params(args.param)
    lines = ["kind,p,q,value,regime"]
    regime = consts.constant_regime(kind)
    for p in ps:
        params = {"p": p, **extra}
        q = params.get("q", math.nan)
        value = consts.sharp_constant(consts.ConstantQuery(kind, params))
        lines.append(f"{kind},{p!r},{q!r},{value!r},{regime}")
    _write_output(("\n".join(lines) + "\n").encode(), args.out)
    return 0


# -- norm command -----------------------------------------------------------------

def _norm_cmd(args) -> int:
    f = _load_grid_function(args.input)
    rows = ["kind,p,q,value,regime"]
    if args.kind == "lp":
        v = grids.lp_norm(f, args.p)
        rows.append(f"lp,{args.p!r},nan,{v!r},exact")
    elif args.kind == "lorentz":
        if args.q is None:
            raise ConfigurationError("lorentz norm needs --q")
        v = grids.lorentz_norm(f, args.p, args.q)
        regime = "quasi-norm" if args.q < 1 else "norm"
        rows.append(f"lorentz,{args.p!r},{args.q!r},{v!r},{regime}")
    elif args.kind == "anisotropic":
        if not args.p_vec:
            raise ConfigurationError("anisotropic norm needs --p-vec")
        pv = _parse_float_list(args.p_vec)
        v = grids.anisotropic_norm(f, pv)
        rows.append(f"anisotropic,{pv[0]!r},{pv[-1]!r},{v!r},exact")
    elif args.kind == "gls":
        if not args.psi:
            raise ConfigurationError("gls norm needs --psi <file.json>")
        with open(args.psi, "r", encoding="utf-8") as fh:
            p = psi_mod.PsiFunction.from_json(json.load(fh))
        grid = _parse_grid_flag(args.p_grid) if args.p_grid else None
        v = psi_mod.gls_norm(f, p, grid)
        rows.append(f"gls,nan,nan,{v!r},cutoff={psi_mod.DEFAULT_P_CUTOFF!r}")
    else:
        raise ConfigurationError(f"unknown norm kind {args.kind!r}")
    _write_output(("\n".join(rows) + "\n").encode(), args.out)
    return 0


# -- op apply ----------------------------------------------------------------------

def _op_apply(args) -> int:
    spec_text = args.op
    if os.path.exists(spec_text):
        with open(spec_text, "r", encoding="utf-8") as fh:
            spec_text = fh.read()
    try:
        spec = operators.OperatorSpec.from_json(json.loads(spec_text))
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"operator spec is not valid JSON: {e}") from e
    f = _load_grid_function(args.input)
    g = operators.apply_operator(spec, f)
    if args.format == "csv":
        data = g.to_csv().encode()
    else:
        data = g.to_binary()
    _write_output(data, args.out)
    return 0


# -- verify subcommands --------------------------------------------------------------

def _family_from_config(cfg: dict) -> extremal.TestFamily:
    kind = cfg.get("kind", "gaussians")
    if kind == "gaussians":
        return extremal.TestFamily.gaussians(
            scales=cfg.get("scales"), R=cfg.get("R", 20.0),
            N=cfg.get("N", 4096), n=cfg.get("n", 1))
    if kind == "indicator_dilates":
        return extremal.TestFamily.indicator_dilates(
            scales=cfg.get("scales"), R=cfg.get("R", 8.0),
            N=cfg.get("N", 2048), n=cfg.get("n", 1))
    if kind == "power_tail":
        return extremal.TestFamily.power_tail(
            exponents=cfg["exponents"], length=cfg.get("length", 128.0),
            N=cfg.get("N", 4096))
    if kind == "mixed_suite":
        return extremal.TestFamily.mixed_suite(R=cfg.get("R", 16.0),
                                               N=cfg.get("N", 2048))
    raise ConfigurationError(f"unknown family kind {kind!r}")


def _map_from_config(cfg: dict) -> psi_mod.ExponentMap:
    kind = cfg.get("kind", "identity")
    if kind == "identity":
        return psi_mod.ExponentMap.identity(cfg["a"], cfg.get("b", math.inf))
    if kind == "conjugate":
        return psi_mod.ExponentMap.conjugate(cfg.get("a", 1.0),
                                             cfg.get("b", math.inf))
    if kind == "pbo":
        return psi_mod.ExponentMap.pbo(cfg["alpha"], cfg["beta"], cfg.get("n", 1))
    if kind == "riesz_thorin":
        return psi_mod.ExponentMap.riesz_thorin(cfg["p0"], cfg["p1"],
                                                cfg["q0"], cfg["q1"])
    raise ConfigurationError(f"unknown exponent map kind {kind!r}")


def _constant_fn_from_config(cfg: dict):
    kind = cfg.get("kind", "constant")
    scale = float(cfg.get("scale", 1.0))
    if kind == "constant":
        return lambda p: scale
    if kind == "maximal_envelope":
        return lambda p: scale * p / (p - 1.0)
    if kind == "pichorides":
        return lambda p: scale * consts.pichorides(p)
    if kind == "beckner_A":
        n = int(cfg.get("n", 1))
        return lambda p: scale * consts.beckner_A(p, n)
    raise ConfigurationError(f"unknown constant kind for transfer {kind!r}")


def _lambda_grid_from_config(cfg) -> np.ndarray:
    if isinstance(cfg, dict):
        return psi_mod.grid_from_spec(cfg)
    return np.asarray([float(v) for v in cfg], dtype=float)


def _verify_dilation(cfg: dict, tol: float | None) -> extremal.VerificationReport:
    alpha = tuple(cfg.get("alpha", [0.25]))
    beta = tuple(cfg.get("beta", [0.25]))
    w = grids.WeightSpec(alpha=alpha, beta=beta)
    blocks = tuple(cfg.get("blocks", [1] * len(alpha)))
    p_vec = cfg.get("p", 2.0)
    q_vec = cfg.get("q")
    if q_vec is None:
        def balance_q(pj, aj, bj, mj):
            inv = 1.0 - (bj - aj) / mj - 1.0 / pj
            if inv <= 0:
                raise ConfigurationError("exponent balance has no admissible q")
            return 1.0 / inv
        if np.isscalar(p_vec):
            q_vec = balance_q(float(p_vec), alpha[0], beta[0], blocks[0])
        else:
            q_vec = [balance_q(float(pj), aj, bj, mj)
                     for pj, aj, bj, mj in zip(p_vec, alpha, beta, blocks)]
    perturb = float(cfg.get("q_inv_perturb", 0.0))
    if perturb:
        if np.isscalar(q_vec):
            q_vec = 1.0 / (1.0 / float(q_vec) + perturb)
        else:
            q_vec = [1.0 / (1.0 / float(qj) + perturb) for qj in q_vec]
    gcfg = cfg.get("grid", {})
    n = sum(blocks)
    f = grids.GridFunction.sample(
        lambda *xs: np.exp(-sum(x ** 2 for x in xs) / 2.0),
        gcfg.get("R", 12.0), gcfg.get("N", 4096 if n == 1 else 256),
        n, blocks=blocks, label="gauss")
    return extremal.dilation_necessity_check(
        operators.OperatorSpec("fourier"), w, p_vec, q_vec,
        _lambda_grid_from_config(cfg.get("lambda_grid", [0.125, 1.0, 8.0])),
        f=f, tol=tol if tol is not None else float(cfg.get("tol", 1e-6)))


def _verify_transfer(cfg: dict, tol: float | None) -> extremal.VerificationReport:
    op = operators.OperatorSpec.from_json(cfg["operator"])
    p = psi_mod.PsiFunction.from_json(cfg["psi"])
    qmap = _map_from_config(cfg.get("map", {"kind": "identity",
                                            "a": p.a, "b": p.b}))
    K = _constant_fn_from_config(cfg.get("constant", {"kind": "constant"}))
    family = _family_from_config(cfg.get("family", {}))
    grid = None
    if "p_grid" in cfg:
        grid = psi_mod.grid_from_spec(cfg["p_grid"])
    return extremal.verify_gls_transfer(
        op, p, K, qmap, family, p_grid=grid,
        tol=tol if tol is not None else float(cfg.get("tol", 1e-3)))


def _verify_interpolation(cfg: dict, tol: float | None) -> extremal.VerificationReport:
    op = operators.OperatorSpec.from_json(cfg["operator"])
    e0, e1 = cfg["endpoints"]
    end0 = (float(e0[0]), math.inf if e0[1] is None else float(e0[1]), float(e0[2]))
    end1 = (float(e1[0]), math.inf if e1[1] is None else float(e1[1]), float(e1[2]))
    thetas = cfg.get("thetas", 9)
    if isinstance(thetas, int):
        thetas = np.linspace(0.1, 0.9, thetas)
    else:
        thetas = np.asarray(thetas, dtype=float)
    return extremal.verify_interpolation(
        op, end0, end1, cfg.get("kind", "riesz-thorin"),
        _family_from_config(cfg.get("family", {})), thetas=thetas,
        tol=tol if tol is not None else float(cfg.get("tol", 1e-6)))


def _verify_pbo_blowup(cfg: dict, tol: float | None) -> extremal.VerificationReport:
    alpha = float(cfg.get("alpha", 0.25))
    beta = float(cfg.get("beta", 0.25))
    gcfg = cfg.get("grid", {})
    f0 = extremal.pbo_counterexample(1, beta, R=gcfg.get("R", 64.0),
                                     N=gcfg.get("N", 8192))
    mono_eps = cfg.get("monotone_eps", [0.2, 0.1, 0.05])
    fit_eps = cfg.get("fit_eps", [0.05, 0.02, 0.01, 0.005, 0.002])
    band = cfg.get("slope_band", [0.3, 1.2])
    y_pts = cfg.get("log_fit_y", [1e-2, 1e-3, 1e-4])
    r2_min = float(cfg.get("r2_min", 0.99))
    report = extremal.VerificationReport(metadata={
        "alpha": alpha, "beta": beta, "slope_band": band,
        "grid": {"R": gcfg.get("R", 64.0), "N": gcfg.get("N", 8192)},
        "truncation_radius": gcfg.get("R", 64.0),
    })
    mono = extremal.pbo_blowup_curve(f0, alpha, beta, mono_eps)
    increasing = all(b > a for a, b in zip(mono["ratios"], mono["ratios"][1:]))
    for e, r, x in zip(mono["eps"], mono["ratios"], mono["log_x"]):
        p = mono["p0"] * (1 + e)
        report.add(f"eps={e:g}", p, p / (p - 1), r, math.nan, r, math.nan, True)
    report.add("monotone", math.nan, math.nan, float(increasing), 1.0,
               float(increasing), math.nan, increasing)
    fit = extremal.pbo_blowup_curve(f0, alpha, beta, fit_eps)
    in_band = band[0] <= fit["slope"] <= band[1]
    report.add("blowup-slope", math.nan, math.nan, fit["slope"], band[0],
               fit["slope"], band[1], in_band)
    logfit = extremal.pbo_log_growth_fit(f0, y_pts)
    report.add("log-growth-r2", math.nan, math.nan, logfit["r2"], r2_min,
               logfit["r2"], logfit["slope"], logfit["r2"] > r2_min)
    report.metadata["monotone_curve"] = mono
    report.metadata["fit_curve"] = fit
    report.metadata["log_growth"] = logfit
    return report


def _verify_kernel_bound(cfg: dict, tol: float | None) -> extremal.VerificationReport:
    tol = tol if tol is not None else float(cfg.get("tol", 1e-6))
    kcfg = cfg.get("kernel", {"tag": "random"})
    pairs = [tuple(map(float, pq)) for pq in cfg.get("pairs", [[2, 2], [1.5, 3]])]
    N = int(kcfg.get("N", 64))
    seed = int(cfg.get("seed", 0))
    report = extremal.VerificationReport(metadata={
        "kernel": kcfg, "pairs": [list(pq) for pq in pairs],
        "seed": seed, "tolerance": tol,
    })
    h = 1.0 / N
    x = (np.arange(N) + 0.5) * h
    fam = [
        ("indicator", np.ones(N)),
        ("halframp", x),
        ("bump", np.exp(-((x - 0.5) ** 2) * 16)),
        ("spike", x ** (-0.2)),
        ("cosine", 1.0 + np.cos(2 * np.pi * x)),
    ]
    rng = np.random.default_rng(seed)
    tables = []
    if kcfg.get("tag", "random") == "random":
        for i in range(int(kcfg.get("count", 5))):
            vals = rng.uniform(0.0, 1.0, (N, N))
            tables.append((f"random{i}", grids.GridFunction(
                vals, (0.0, 0.0), (1.0, 1.0), (1, 1))))
    elif kcfg["tag"] == "unit":
        tables.append(("unit", grids.GridFunction(
            np.ones((N, N)), (0.0, 0.0), (1.0, 1.0), (1, 1))))
    else:
        raise ConfigurationError(f"unknown kernel tag {kcfg.get('tag')!r}")
    for name, table in tables:
        for (p, q) in pairs:
            bound = operators.kernel_norm_bound(table, p, q)
            for lbl, vals in fam:
                f = grids.GridFunction(vals, (0.0,), (1.0,), (1,), label=lbl)
                g = operators.kernel_apply(table, f)
                fp = grids.lp_norm(f, p)
                gq = grids.lp_norm(g, q)
                ratio = gq / fp
                report.add(f"{name}:{lbl}", p, q, gq, fp, ratio, bound,
                           ratio <= bound * (1 + tol))
    return report


_VERIFY_DISPATCH = {
    "dilation": _verify_dilation,
    "transfer": _verify_transfer,
    "interpolation": _verify_interpolation,
    "pbo-blowup": _verify_pbo_blowup,
    "kernel-bound": _verify_kernel_bound,
}


def _verify_cmd(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    fn = _VERIFY_DISPATCH.get(args.what)
    if fn is None:
        raise ConfigurationError(f"unknown verification {args.what!r}")
    report = fn(cfg, args.tol)
    report.metadata.setdefault("config", cfg)
    data = emit_report(report, args.format)
    _write_output(data, args.out)
    return 0 if report.passed else 1


# -- boyd / counterexample ------------------------------------------------------------

def _boyd_cmd(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    factors = []
    for sup in cfg["supports"]:
        if np.isscalar(sup):
            factors.append(psi_mod.PsiFunction.degenerate(float(sup)))
        else:
            b = math.inf if sup[1] is None else float(sup[1])
            factors.append(psi_mod.PsiFunction.constant(1.0, (float(sup[0]), b)))
    pd = psi_mod.ProductPsi(tuple(factors))
    s_grid = psi_mod.grid_from_spec(cfg["s_grid"]) if "s_grid" in cfg else None
    t_grid = psi_mod.grid_from_spec(cfg["t_grid"]) if "t_grid" in cfg else None
    idx = psi_mod.boyd_indices(pd, s_grid, t_grid,
                               cutoff=float(cfg.get("cutoff",
                                                    psi_mod.DEFAULT_P_CUTOFF)))
    lines = ["index,value",
             f"alpha_upper,{idx.alpha_upper!r}",
             f"alpha_lower,{idx.alpha_lower!r}",
             f"beta_upper,{idx.beta_upper!r}",
             f"beta_lower,{idx.beta_lower!r}"]
    _write_output(("\n".join(lines) + "\n").encode(), args.out)
    return 0


def _counterexample_cmd(args) -> int:
    f0 = extremal.pbo_counterexample(args.n, args.beta, R=args.R, N=args.N)
    _write_output(f0.to_binary(), args.out)
    return 0


# -- parser ------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glspace",
                                 description="Grand-Lebesgue-space numerics")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", help="sharp-constant catalog")
    csub = c.add_subparsers(dest="subcommand", required=True)
    ct = csub.add_parser("table", help="emit a CSV constant table")
    ct.add_argument("--kind", required=True)
    ct.add_argument("--p", help="comma-separated exponents")
    ct.add_argument("--p-grid", help="start:stop:count:spacing")
    ct.add_argument("--param", action="append", help="extra key=value parameter")
    ct.add_argument("--out", default=None)
    ct.set_defaults(fn=_constants_table)

    n = sub.add_parser("norm", help="norms of a supplied grid function")
    n.add_argument("--input", required=True)
    n.add_argument("--kind", required=True,
                   choices=["lp", "lorentz", "anisotropic", "gls"])
    n.add_argument("--p", type=float, default=2.0)
    n.add_argument("--q", type=float, default=None)
    n.add_argument("--p-vec", default=None)
    n.add_argument("--psi", default=None)
    n.add_argument("--p-grid", default=None)
    n.add_argument("--out", default=None)
    n.set_defaults(fn=_norm_cmd)

    o = sub.add_parser("op", help="apply an operator")
    osub = o.add_subparsers(dest="subcommand", required=True)
    oa = osub.add_parser("apply")
    oa.add_argument("--op", required=True, help="operator spec JSON or path")
    oa.add_argument("--input", required=True)
    oa.add_argument("--out", default=None)
    oa.add_argument("--format", choices=["binary", "csv"], default="binary")
    oa.set_defaults(fn=_op_apply)

    v = sub.add_parser("verify", help="run a verification")
    v.add_argument("what", choices=sorted(_VERIFY_DISPATCH))
    v.add_argument("--config", required=True)
    v.add_argument("--out", default=None)
    v.add_argument("--format", choices=["csv", "json"], default="csv")
    v.add_argument("--tol", type=float, default=None)
    v.set_defaults(fn=_verify_cmd)

    b = sub.add_parser("boyd", help="dilation growth indices")
    b.add_argument("--config", required=True)
    b.add_argument("--out", default=None)
    b.set_defaults(fn=_boyd_cmd)

    ce = sub.add_parser("counterexample", help="emit the weighted-Fourier "
                                               "counterexample profile")
    ce.add_argument("--n", type=int, default=1)
    ce.add_argument("--beta", type=float, default=0.25)
    ce.add_argument("--R", type=float, default=64.0)
    ce.add_argument("--N", type=int, default=8192)
    ce.add_argument("--out", default=None)
    ce.set_defaults(fn=_counterexample_cmd)
    return ap


def run_command(argv: list[str] | None = None) -> int:
    """Parse argv, execute, and return the exit code (0 pass, 1 fail, 2 config)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ConfigurationError, DomainError, FileNotFoundError,
            json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GlspaceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()

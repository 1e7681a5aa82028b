"""Command-line front end: `plap-var run` and `plap-var check-config`.

Configs are line-oriented `key = value` files with `#` comments.  All
problem data is named explicitly; every parse or validation problem in a
file is reported at once, with unknown keys called out by name.  Spatial
data (weights, load densities) is written as arithmetic expressions in
x (and y on rectangles) evaluated by a restricted interpreter — only
numbers, + - * / **, the names x, y, pi and the functions sin, cos,
exp, log, abs are admitted, so a config file cannot run code.

`run` executes one of five pipelines on the configured problem and
writes manifest.txt, report.txt and CSV tables (17 significant digits)
into the output directory.  Runs are deterministic: the same config,
seed and package version produce byte-identical outputs.

Exit codes: 0 on success with decisive results, 2 when a hypothesis
check came back inconclusive (or a solve could not be certified), 1 on
errors.  The environment variable PLAPVAR_THREADS caps the BLAS/OpenMP
thread pools when set before the process starts.
"""

from __future__ import annotations

import ast
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import conditions as cond
from . import nonlinearity as nl
from .assembly import DualVector, load_vector, values_at_quad, zero_dual
from .eigen import EigenConvergenceError, first_eigenpair
from .meshing import build_interval_mesh, build_rectangle_mesh
from .solver import UnboundedBelowError, minimize_phi, verify_weak_solution

__all__ = [
    "ConfigError",
    "ExpressionError",
    "ExperimentConfig",
    "compile_expression",
    "parse_config",
    "run",
    "main",
    "thread_cap",
]

PIPELINES = ("eigen", "solve", "conditions", "incomparability", "all")
DOMAINS = ("interval", "rectangle")

#: catalog parameter schemas: name -> {param: (kind, default-or-None)}
#: kind "float" is a number; kind "weight" is a number or an x/y expression.
_REQUIRED = object()
_NL_SCHEMAS = {
    "sine_exp": {"d": ("weight", "1.0"), "d_exponent": ("float", None)},
    "power_perturbation": {"beta": ("float", _REQUIRED)},
    "power_potential": {"mu": ("float", _REQUIRED)},
    "weighted_comparison": {"eta": ("weight", _REQUIRED), "alpha": ("float", None),
                            "eta_exponent": ("float", None)},
    "weighted_absval": {"eta": ("weight", _REQUIRED), "eta_exponent": ("float", None)},
    "modulated_resonance": {"a": ("weight", _REQUIRED), "alpha": ("float", None),
                            "a_exponent": ("float", None)},
}

_FLOAT_KEYS = ("p", "a", "b", "ax", "bx", "ay", "by", "grid_scale", "grad_tol",
               "f0_radius")
_INT_KEYS = ("n", "nx", "ny", "quad_order", "seed", "levels", "max_iter")
_BOOL_KEYS = ("multistart",)
_STR_KEYS = ("domain", "pipeline", "nonlinearity", "h")

_DEFAULTS = {
    "p": 2.0, "domain": "interval", "a": 0.0, "b": 1.0, "n": 64,
    "ax": 0.0, "bx": 1.0, "ay": 0.0, "by": 1.0, "nx": 16, "ny": 16,
    "quad_order": 4, "nonlinearity": "sine_exp", "h": "zero",
    "pipeline": "all", "seed": 0, "levels": 40, "grid_scale": 1.0,
    "multistart": False, "max_iter": 2000, "grad_tol": 1e-8, "f0_radius": 10.0,
}

_BOOL_WORDS = {"true": True, "yes": True, "1": True,
               "false": False, "no": False, "0": False}


class ConfigError(ValueError):
    """All problems found in a config file, one message per line."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(self.errors))


class ExpressionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# restricted spatial expressions
# ---------------------------------------------------------------------------

_ALLOWED_CALLS = {"sin": np.sin, "cos": np.cos, "exp": np.exp,
                  "log": np.log, "abs": np.abs}
_ALLOWED_OPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)
_ALLOWED_UNARY = (ast.UAdd, ast.USub)


def compile_expression(text: str, ndim: int):
    """Compile an arithmetic expression in x (and y for ndim = 2).

    Returns a vectorized callable mapping point arrays of shape
    (m, ndim) to value arrays of shape (m,).  Anything outside the
    whitelist (numbers, + - * / **, x, y, pi, sin, cos, exp, log, abs)
    raises ExpressionError.
    """
    text = text.strip()
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"syntax error in expression {text!r}: {exc.msg}")

    names = {"x", "pi"} | ({"y"} if ndim == 2 else set())
    for node in ast.walk(tree):
        if isinstance(node, (ast.Expression, ast.Load)):
            continue
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_OPS):
            continue
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, _ALLOWED_UNARY):
            continue
        if isinstance(node, _ALLOWED_OPS + _ALLOWED_UNARY):
            continue
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            continue
        if isinstance(node, ast.Name):
            if node.id in names or node.id in _ALLOWED_CALLS:
                continue
            extra = " (y is only available on rectangle domains)" \
                if node.id == "y" and ndim == 1 else ""
            raise ExpressionError(
                f"expression {text!r} uses unknown name {node.id!r}{extra}")
        if isinstance(node, ast.Call):
            if (isinstance(node.func, ast.Name) and node.func.id in _ALLOWED_CALLS
                    and len(node.args) == 1 and not node.keywords):
                continue
            raise ExpressionError(
                f"expression {text!r} calls something outside "
                f"sin/cos/exp/log/abs")
        raise ExpressionError(
            f"expression {text!r} uses a construct that is not allowed "
            f"({type(node).__name__})")

    code = compile(tree, "<config expression>", "eval")

    def fn(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        env = {"x": pts[:, 0], "pi": math.pi, **_ALLOWED_CALLS}
        if ndim == 2:
            env["y"] = pts[:, 1]
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            val = eval(code, {"__builtins__": {}}, env)
        out = np.empty(pts.shape[0])
        out[:] = val
        return out

    return fn


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved experiment settings (all defaults applied)."""

    p: float
    domain: str
    interval: tuple
    rectangle: tuple
    n: int
    nx: int
    ny: int
    quad_order: int
    nonlinearity: str
    nl_params: tuple            # ((name, raw-string), ...) sorted by name
    h_spec: str
    pipeline: str
    seed: int
    levels: int
    grid_scale: float
    multistart: bool
    max_iter: int
    grad_tol: float
    f0_radius: float

    @property
    def ndim(self) -> int:
        return 2 if self.domain == "rectangle" else 1

    def lines(self):
        """Normalized `key = value` echo, the manifest format."""
        def g(v):
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, float):
                return f"{v:.17g}"
            return str(v)

        out = [f"p = {g(self.p)}", f"domain = {self.domain}"]
        if self.domain == "interval":
            out += [f"a = {g(self.interval[0])}", f"b = {g(self.interval[1])}",
                    f"n = {self.n}"]
        else:
            ax, bx, ay, by = self.rectangle
            out += [f"ax = {g(ax)}", f"bx = {g(bx)}", f"ay = {g(ay)}",
                    f"by = {g(by)}", f"nx = {self.nx}", f"ny = {self.ny}"]
        out.append(f"quad_order = {self.quad_order}")
        out.append(f"nonlinearity = {self.nonlinearity}")
        out += [f"nonlinearity.{k} = {v}" for k, v in self.nl_params]
        out += [
            f"h = {self.h_spec}",
            f"pipeline = {self.pipeline}",
            f"seed = {self.seed}",
            f"levels = {self.levels}",
            f"grid_scale = {g(self.grid_scale)}",
            f"multistart = {g(self.multistart)}",
            f"max_iter = {self.max_iter}",
            f"grad_tol = {g(self.grad_tol)}",
            f"f0_radius = {g(self.f0_radius)}",
        ]
        return out


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a config; raises ConfigError listing every problem."""
    errors = []
    raw: dict[str, str] = {}
    nl_raw: dict[str, str] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            errors.append(f"line {lineno}: expected 'key = value', got {body!r}")
            continue
        key, _, value = body.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            errors.append(f"line {lineno}: expected 'key = value', got {body!r}")
            continue
        target = nl_raw if key.startswith("nonlinearity.") else raw
        name = key[len("nonlinearity."):] if target is nl_raw else key
        if name in target:
            errors.append(f"line {lineno}: duplicate key {key!r}")
            continue
        if target is raw and key not in _DEFAULTS:
            errors.append(f"line {lineno}: unknown key {key!r}")
            continue
        target[name] = value

    vals = dict(_DEFAULTS)

    def take(key, convert, describe):
        if key not in raw:
            return
        try:
            vals[key] = convert(raw[key])
        except (ValueError, KeyError):
            errors.append(f"key {key!r}: could not parse {raw[key]!r} as {describe}")

    for key in _FLOAT_KEYS:
        take(key, float, "a number")
    for key in _INT_KEYS:
        take(key, int, "an integer")
    for key in _BOOL_KEYS:
        take(key, lambda v: _BOOL_WORDS[v.lower()], "a boolean (true/false)")
    for key in _STR_KEYS:
        take(key, str, "a string")

    # semantic checks ------------------------------------------------------
    if not (vals["p"] > 1.0):
        errors.append(f"p must exceed 1 (got {vals['p']})")
    if vals["domain"] not in DOMAINS:
        errors.append(f"domain must be one of {', '.join(DOMAINS)} "
                      f"(got {vals['domain']!r})")
    if vals["pipeline"] not in PIPELINES:
        errors.append(f"pipeline must be one of {', '.join(PIPELINES)} "
                      f"(got {vals['pipeline']!r})")
    ndim = 2 if vals["domain"] == "rectangle" else 1
    if ndim == 1:
        if not (vals["a"] < vals["b"]):
            errors.append(f"interval needs a < b (got a={vals['a']}, b={vals['b']})")
        if vals["n"] < 2:
            errors.append(f"n must be at least 2 (got {vals['n']})")
    else:
        if not (vals["ax"] < vals["bx"]):
            errors.append(f"rectangle needs ax < bx (got ax={vals['ax']}, "
                          f"bx={vals['bx']})")
        if not (vals["ay"] < vals["by"]):
            errors.append(f"rectangle needs ay < by (got ay={vals['ay']}, "
                          f"by={vals['by']})")
        if vals["nx"] < 2 or vals["ny"] < 2:
            errors.append(f"nx and ny must be at least 2 (got nx={vals['nx']}, "
                          f"ny={vals['ny']})")
        if vals["quad_order"] > 5:
            errors.append(f"quad_order on rectangles is capped at 5 "
                          f"(got {vals['quad_order']})")
    if vals["quad_order"] < 1:
        errors.append(f"quad_order must be at least 1 (got {vals['quad_order']})")
    if not (8 <= vals["levels"] <= 1000):
        errors.append(f"levels must be between 8 and 1000 (got {vals['levels']})")
    if not (vals["grid_scale"] > 0.0):
        errors.append(f"grid_scale must be positive (got {vals['grid_scale']})")
    if vals["max_iter"] < 1:
        errors.append(f"max_iter must be at least 1 (got {vals['max_iter']})")
    if not (vals["grad_tol"] > 0.0):
        errors.append(f"grad_tol must be positive (got {vals['grad_tol']})")
    if not (vals["f0_radius"] > 0.0):
        errors.append(f"f0_radius must be positive (got {vals['f0_radius']})")

    # nonlinearity parameters ---------------------------------------------
    name = vals["nonlinearity"]
    schema = _NL_SCHEMAS.get(name)
    if schema is None:
        errors.append(f"nonlinearity must be one of {', '.join(sorted(_NL_SCHEMAS))} "
                      f"(got {name!r})")
    else:
        for pname in nl_raw:
            if pname not in schema:
                errors.append(f"nonlinearity {name!r} has no parameter {pname!r} "
                              f"(valid: {', '.join(sorted(schema))})")
        for pname, (kind, default) in schema.items():
            if pname not in nl_raw:
                if default is _REQUIRED:
                    errors.append(f"nonlinearity {name!r} needs parameter {pname!r}")
                elif default is not None:
                    nl_raw[pname] = default
                continue
            value = nl_raw[pname]
            if kind == "float":
                try:
                    float(value)
                except ValueError:
                    errors.append(f"nonlinearity parameter {pname!r}: could not "
                                  f"parse {value!r} as a number")
            else:  # weight: number or expression
                try:
                    float(value)
                except ValueError:
                    try:
                        compile_expression(value, ndim)
                    except ExpressionError as exc:
                        errors.append(f"nonlinearity parameter {pname!r}: {exc}")
        if name == "power_perturbation" and "beta" in nl_raw:
            try:
                beta = float(nl_raw["beta"])
                if not (1.0 < beta < vals["p"]):
                    errors.append(f"power_perturbation needs 1 < beta < p "
                                  f"(got beta={beta}, p={vals['p']})")
            except ValueError:
                pass
        if "alpha" in nl_raw:
            try:
                alpha = float(nl_raw["alpha"])
                if not (1.0 <= alpha <= vals["p"]):
                    errors.append(f"alpha must lie in [1, p] "
                                  f"(got alpha={alpha}, p={vals['p']})")
            except ValueError:
                pass

    # right-hand side ------------------------------------------------------
    h_spec = vals["h"]
    kind, _, arg = h_spec.partition(":")
    if kind == "zero" and not arg:
        pass
    elif kind == "density" and arg:
        try:
            compile_expression(arg, ndim)
        except ExpressionError as exc:
            errors.append(f"h density: {exc}")
    elif kind == "phi1" and arg:
        try:
            float(arg)
        except ValueError:
            errors.append(f"h = phi1:<coeff> needs a numeric coefficient "
                          f"(got {arg!r})")
    else:
        errors.append(f"h must be 'zero', 'density:<expr>' or 'phi1:<coeff>' "
                      f"(got {h_spec!r})")

    if errors:
        raise ConfigError(errors)

    return ExperimentConfig(
        p=vals["p"], domain=vals["domain"],
        interval=(vals["a"], vals["b"]),
        rectangle=(vals["ax"], vals["bx"], vals["ay"], vals["by"]),
        n=vals["n"], nx=vals["nx"], ny=vals["ny"], quad_order=vals["quad_order"],
        nonlinearity=name, nl_params=tuple(sorted(nl_raw.items())),
        h_spec=h_spec, pipeline=vals["pipeline"], seed=vals["seed"],
        levels=vals["levels"], grid_scale=vals["grid_scale"],
        multistart=vals["multistart"], max_iter=vals["max_iter"],
        grad_tol=vals["grad_tol"], f0_radius=vals["f0_radius"])


# ---------------------------------------------------------------------------
# pipeline execution
# ---------------------------------------------------------------------------


def _g17(v: float) -> str:
    return f"{float(v):.17g}"


def _build_mesh(cfg: ExperimentConfig):
    if cfg.domain == "interval":
        a, b = cfg.interval
        return build_interval_mesh(a, b, cfg.n, quad_order=cfg.quad_order)
    ax, bx, ay, by = cfg.rectangle
    return build_rectangle_mesh(ax, bx, ay, by, cfg.nx, cfg.ny,
                                quad_order=cfg.quad_order)


def _build_spec(cfg: ExperimentConfig, lambda1: float):
    P = dict(cfg.nl_params)

    def fv(key, default=None):
        return float(P[key]) if key in P else default

    def wv(key, default=None):
        raw_val = P.get(key)
        if raw_val is None:
            return default
        try:
            return float(raw_val)
        except ValueError:
            return compile_expression(raw_val, cfg.ndim)

    name = cfg.nonlinearity
    if name == "sine_exp":
        return nl.sine_exp(wv("d", 1.0), d_exponent=fv("d_exponent"))
    if name == "power_perturbation":
        return nl.power_perturbation(lambda1, fv("beta"), cfg.p)
    if name == "power_potential":
        return nl.power_potential(fv("mu"), cfg.p, lambda1)
    alpha = fv("alpha", (1.0 + cfg.p) / 2.0)
    if name == "weighted_comparison":
        return nl.weighted_comparison(wv("eta"), cond.power_comparison(alpha),
                                      lambda1, cfg.p,
                                      eta_exponent=fv("eta_exponent", math.inf))
    if name == "weighted_absval":
        return nl.weighted_absval(wv("eta"), lambda1, cfg.p,
                                  eta_exponent=fv("eta_exponent", math.inf))
    if name == "modulated_resonance":
        return nl.modulated_resonance(wv("a"), cond.power_comparison(alpha),
                                      lambda1, cfg.p,
                                      a_exponent=fv("a_exponent", math.inf))
    raise ValueError(f"unknown nonlinearity {name!r}")


def _build_h(cfg: ExperimentConfig, mesh, eig) -> DualVector:
    kind, _, arg = cfg.h_spec.partition(":")
    if kind == "zero":
        return zero_dual(mesh)
    if kind == "density":
        return load_vector(mesh, compile_expression(arg, mesh.ndim))
    coeff = float(arg)
    dens = coeff * values_at_quad(mesh, eig.phi1)
    contrib = (mesh.quad_weights * dens) @ mesh.basis_at_quad
    out = np.zeros(mesh.n_vertices)
    np.add.at(out, mesh.elements.ravel(), contrib.ravel())
    return DualVector(mesh, out[mesh.free_vertices])


def _write(path: Path, lines) -> None:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _field_csv(mesh, values, column: str):
    header = ("x," if mesh.ndim == 1 else "x,y,") + column
    rows = [header]
    coords = mesh.free_coordinates()
    for i in range(coords.shape[0]):
        cs = ",".join(_g17(c) for c in coords[i])
        rows.append(f"{cs},{_g17(values[i])}")
    return rows


def run(cfg: ExperimentConfig, out_dir, quiet: bool = False) -> int:
    """Execute the configured pipeline; returns the process exit code."""
    from . import __version__

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def say(msg):
        if not quiet:
            print(msg)

    manifest = [f"plapvar {__version__}", ""]
    manifest += cfg.lines()
    cap = thread_cap()
    manifest += ["", f"thread_cap = {cap if cap is not None else 'unset'}"]
    _write(out / "manifest.txt", manifest)

    report = []
    inconclusive = False
    mesh = _build_mesh(cfg)
    report.append(f"mesh: {cfg.domain}, {mesh.n_elements} elements, "
                  f"{mesh.n_free} free vertices")

    say(f"computing first eigenpair (p = {cfg.p}) ...")
    try:
        eig = first_eigenpair(mesh, cfg.p, seed=cfg.seed)
    except EigenConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        report.append(f"eigen: FAILED ({exc})")
        _write(out / "report.txt", report)
        return 1
    report.append(f"lambda1 = {_g17(eig.lambda1)}  "
                  f"(iterations {eig.iterations}, residual {_g17(eig.residual)})")

    want = cfg.pipeline
    if want in ("eigen", "all"):
        _write(out / "eigen.csv", _field_csv(mesh, eig.phi1.values, "phi1"))
        say(f"lambda1 = {eig.lambda1:.12g}")

    if want in ("solve", "conditions", "all"):
        spec = _build_spec(cfg, eig.lambda1)
        h = _build_h(cfg, mesh, eig)

    if want in ("solve", "all"):
        say("minimizing the energy ...")
        try:
            res = minimize_phi(mesh, spec, h, cfg.p, grad_tol=cfg.grad_tol,
                               max_iter=cfg.max_iter, multistart=cfg.multistart,
                               seed=cfg.seed)
        except UnboundedBelowError as exc:
            print(f"error: {exc}", file=sys.stderr)
            report.append(f"solve: FAILED ({exc})")
            _write(out / "report.txt", report)
            return 1
        check = verify_weak_solution(mesh, res.u, spec, h, cfg.p)
        report += [
            f"solve: phi = {_g17(res.phi)}, {res.iterations} steps, "
            f"stop = {res.stop_reason}, stationarity = {_g17(res.stationarity)}",
            f"solve: weak residual (relative) = {_g17(check.max_relative)}, "
            f"lambda_u = {_g17(check.lambda_u)}, "
            f"verified = {'yes' if check.passed else 'NO'}",
        ]
        _write(out / "solution.csv", _field_csv(mesh, res.u.values, "u"))
        if not (res.converged and check.passed):
            inconclusive = True
            say("solve could not be certified")
        else:
            say(f"phi = {res.phi:.12g}, residual ok")

    if want in ("conditions", "all"):
        say("checking solvability hypotheses ...")
        reports = {
            "sign": cond.check_sign_theorem(
                spec, eig, h, mesh, cfg.p, r=cfg.grid_scale, levels=cfg.levels,
                f0_R=cfg.f0_radius),
            "comparison": cond.check_comparison_theorem(
                spec, eig, h, mesh, None, cfg.p, r=cfg.grid_scale,
                levels=cfg.levels, f0_R=cfg.f0_radius),
            "landesman_lazer": cond.check_landesman_lazer_theorem(
                spec, eig, h, mesh, cfg.p, r=cfg.grid_scale, levels=cfg.levels,
                f0_R=cfg.f0_radius),
        }
        csv = ["checker,condition,status"]
        for cname, rep in reports.items():
            report.append(f"{cname}: {rep.overall}")
            csv.append(f"{cname},overall,{rep.overall}")
            for key, status in rep.rows():
                csv.append(f"{cname},{key},{status}")
            if rep.overall == cond.INCONCLUSIVE:
                inconclusive = True
        if spec.autonomous:
            g0 = cond.check_superlinear_negativity(
                spec, r=cfg.grid_scale, levels=cfg.levels,
                lambda1=eig.lambda1, p=cfg.p)
            report.append(f"superlinear_negativity: {g0.status}")
            csv.append(f"superlinear_negativity,overall,{g0.status}")
            if g0.status == cond.INCONCLUSIVE:
                inconclusive = True
        _write(out / "conditions.csv", csv)
        for line in report[-len(reports) - (1 if spec.autonomous else 0):]:
            say("  " + line)

    if want in ("incomparability", "all"):
        say("running the incomparability suite ...")
        table = cond.incomparability_suite(
            cfg.p, mesh, r=cfg.grid_scale, levels=cfg.levels,
            eigen_kwargs={"seed": cfg.seed})
        csv = ["case," + ",".join(cond.THEOREMS)]
        for case, statuses in table.rows():
            csv.append(case + "," + ",".join(statuses))
            report.append(f"incomparability {case}: "
                          + ", ".join(f"{t}={s}" for t, s in
                                      zip(cond.THEOREMS, statuses)))
            if cond.INCONCLUSIVE in statuses:
                inconclusive = True
        exclusive = table.is_exclusive_diagonal()
        report.append(f"incomparability exclusive diagonal: "
                      f"{'yes' if exclusive else 'no'}")
        _write(out / "incomparability.csv", csv)
        say(f"  exclusive diagonal: {'yes' if exclusive else 'no'}")

    _write(out / "report.txt", report)
    say(f"wrote {out}/report.txt")
    return 2 if inconclusive else 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def thread_cap():
    """PLAPVAR_THREADS parsed to a positive int, or None."""
    raw_val = os.environ.get("PLAPVAR_THREADS")
    if raw_val is None:
        return None
    try:
        v = int(raw_val)
    except ValueError:
        return None
    return v if v > 0 else None


def _with_seed(cfg: ExperimentConfig, seed: int) -> ExperimentConfig:
    from dataclasses import replace
    return replace(cfg, seed=seed)


def main(argv=None) -> int:
    import argparse

    parser = argparse.ArgumentParser(
        prog="plap-var",
        description="Variational audits for the Dirichlet p-Laplacian "
                    "problem -div(|grad u|^(p-2) grad u) = f(x, u) + h.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute the configured pipeline")
    p_run.add_argument("config", help="path to a key = value config file")
    p_run.add_argument("--out", default="plapvar-out",
                       help="output directory (default: plapvar-out)")
    p_run.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
    p_run.add_argument("--quiet", action="store_true",
                       help="suppress progress output")

    p_chk = sub.add_parser("check-config",
                           help="validate a config and echo its resolved form")
    p_chk.add_argument("config")

    args = parser.parse_args(argv)

    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return 1

    try:
        cfg = parse_config(text)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return 1

    if args.command == "check-config":
        for line in cfg.lines():
            print(line)
        return 0

    if args.seed is not None:
        cfg = _with_seed(cfg, args.seed)
    try:
        return run(cfg, args.out, quiet=args.quiet)
    except (ValueError, ExpressionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

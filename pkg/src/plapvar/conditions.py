"""Numerical audits of nonresonance hypotheses for -Delta_p u = f(x, u) + h.

With G(x, s) = F(x, s) - lambda1 |s|^p / p, the solvability theorems
checked here rest on the asymptotic size of G normalized three ways:

  sign theorem          limsup G / |s|^p  <= 0 a.e., strictly negative on
                        a set of positive measure (both directions);
  comparison theorem    limsup G / phi(s) dominated by a weight in the
                        X_alpha integrability class, with strictly
                        negative phi_1^alpha-weighted integrals;
  Landesman-Lazer       limsup G / |s| dominated by a Y_1 weight, with
                        the bracket int G_1^- phi_1 < <h, phi_1>
                        < -int G_1^+ phi_1.

Limits in s are estimated on geometric grids s_k = +-r 2^k by tail
maxima.  Estimates beyond +-1e12 are reported as the +-inf sentinels.
"a.e." and "positive measure" are read through quadrature weight: a
set matters when it carries more than 1e-6 of the total weight.
Strict inequalities require a 1e-9 margin; non-strict comparisons
accept a 1e-3 residue, the convergence floor of the tail estimates
(finite grids leave positive power-law residues for limits that
approach zero from above).

Checker verdicts are "holds", "fails" or "inconclusive".  Decisive
failure evidence (for example an +inf sentinel on visible weight)
outranks isolated non-converged estimates elsewhere; "inconclusive" is
reported only when no decisive outcome exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .assembly import DiscreteField, DualVector, pairing, values_at_quad
from .eigen import EigenResult
from .meshing import Mesh, refine_structured
from .nonlinearity import NonlinearitySpec, SpatialWeight, eval_f, eval_G

__all__ = [
    "HOLDS",
    "FAILS",
    "INCONCLUSIVE",
    "Verdict",
    "HypothesisReport",
    "LimsupEstimate",
    "ComparisonFunction",
    "power_comparison",
    "log_power_comparison",
    "estimate_limsup",
    "check_growth",
    "check_f0",
    "verify_comparison_function",
    "check_class_membership",
    "check_sign_theorem",
    "check_comparison_theorem",
    "check_landesman_lazer_theorem",
    "check_superlinear_negativity",
    "incomparability_suite",
    "IncomparabilityTable",
]

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"

SENTINEL = 1e12
WEIGHT_FRACTION = 1e-6     # quadrature-weight fraction defining "positive measure"
STRICT_MARGIN = 1e-9       # margin for strict inequalities
ZERO_TOL = 1e-3            # residue allowed in non-strict "<= 0" comparisons
UNIFORM_MARGIN = 1e-6      # slack in pointwise domination by a declared weight
CHECKER_LEVELS = 200       # default grid depth for the theorem-level checkers


@dataclass(frozen=True)
class Verdict:
    """Outcome of one sub-hypothesis with its numeric evidence."""

    status: str
    evidence: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == HOLDS


def _combine(statuses) -> str:
    statuses = list(statuses)
    if any(s == FAILS for s in statuses):
        return FAILS
    if any(s == INCONCLUSIVE for s in statuses):
        return INCONCLUSIVE
    return HOLDS


@dataclass(frozen=True)
class HypothesisReport:
    """Bundle of sub-hypothesis verdicts for one solvability theorem."""

    name: str
    conditions: dict
    overall: str

    def rows(self):
        yield from ((k, v.status) for k, v in self.conditions.items())


def make_report(name: str, conditions: dict) -> HypothesisReport:
    return HypothesisReport(name, conditions,
                            _combine(v.status for v in conditions.values()))


# ---------------------------------------------------------------------------
# limsup estimation on geometric grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimsupEstimate:
    """Tail-maximum estimate of limsup g(s) as s -> +-infinity.

    value       max over the last half of the sampled sequence, mapped to
                +-inf once it passes +-1e12
    converged   the tail maxima of the K- and (K-1)-grids agree to 1e-3
                (relative with an absolute floor of 1e-3), or both sit at
                the same sentinel
    """

    value: float
    converged: bool
    direction: int
    s_values: np.ndarray
    samples: np.ndarray


def _tail_stats(samples: np.ndarray):
    """Vectorized tail maxima over the last axis; returns (value, converged)."""
    samples = np.atleast_2d(samples)
    K = samples.shape[-1] - 1
    t_cur = (K + 1) // 2
    t_prev = K // 2
    with np.errstate(invalid="ignore"):
        m_cur = np.max(samples[..., t_cur:], axis=-1)
        m_prev = np.max(samples[..., t_prev:K], axis=-1)

    def sentinelize(m):
        out = m.copy()
        out[m > SENTINEL] = np.inf
        out[m < -SENTINEL] = -np.inf
        return out

    v_cur = sentinelize(m_cur)
    v_prev = sentinelize(m_prev)
    both_inf = np.isinf(v_cur) & np.isinf(v_prev) & (np.sign(v_cur) == np.sign(v_prev))
    with np.errstate(invalid="ignore"):
        close = np.abs(v_cur - v_prev) <= 1e-3 * np.maximum(
            1.0, np.maximum(np.abs(v_cur), np.abs(v_prev)))
    converged = both_inf | (np.isfinite(v_cur) & np.isfinite(v_prev) & close)
    converged &= ~(np.isnan(m_cur) | np.isnan(m_prev))
    return v_cur, converged


def _geometric_grid(r: float, levels: int) -> np.ndarray:
    if not (r > 0.0):
        raise ValueError(f"grid scale r must be positive, got {r}")
    if levels < 8:
        raise ValueError(f"need at least 8 grid levels, got {levels}")
    if levels > 1000:
        raise ValueError("grid levels capped at 1000")
    return r * np.exp2(np.arange(levels + 1, dtype=float))


def estimate_limsup(g, direction: int = 1, r: float = 1.0,
                    levels: int = 40) -> LimsupEstimate:
    """Estimate limsup_{s -> direction * inf} g(s) on the grid +-r 2^k."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    s_values = direction * _geometric_grid(r, levels)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        try:
            samples = np.asarray(g(s_values), dtype=float)
            if samples.shape != s_values.shape:
                raise ValueError
        except Exception:
            samples = np.array([float(g(float(s))) for s in s_values])
    value, converged = _tail_stats(samples)
    return LimsupEstimate(value=float(value[0]), converged=bool(converged[0]),
                          direction=direction, s_values=s_values, samples=samples)


def _pointwise_limsup(spec: NonlinearitySpec, pts: np.ndarray, denom, direction: int,
                      lambda1: float, p: float, r: float, levels: int):
    """Per-point limsup of G(x, s)/denom(|s|) over the sample points.

    denom maps |s| to a positive scalar (|s|^p, phi(|s|), or |s|).
    Returns (values, converged) arrays of length len(pts).
    """
    grid = _geometric_grid(r, levels)
    samples = np.empty((pts.shape[0], grid.size))
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for k, mag in enumerate(grid):
            s = direction * mag
            samples[:, k] = np.asarray(eval_G(spec, pts, s, lambda1, p),
                                       dtype=float) / denom(mag)
    return _tail_stats(samples)


# ---------------------------------------------------------------------------
# growth and local integrability
# ---------------------------------------------------------------------------


def _box_points(box, per_dim: int) -> np.ndarray:
    axes = [np.linspace(lo + 0.5 * (hi - lo) / per_dim,
                        hi - 0.5 * (hi - lo) / per_dim, per_dim)
            for lo, hi in box]
    grids = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([g.ravel() for g in grids])


def check_growth(spec: NonlinearitySpec, q: float, box, per_dim: int = 9,
                 r: float = 1.0, levels: int = 40) -> Verdict:
    """Test the polynomial bound |f(x, s)| <= a |s|^(q-1) + b(x).

    The normalized ratio max_x |f| / (|s|^(q-1) + 1) is tracked along the
    geometric grid; the bound fails when the ratio at the largest |s|
    exceeds 1e6 times the ratio at the smallest (or overflows).  When the
    bound holds, the tail maximum of the ratio is reported as the fitted
    coefficient a.
    """
    if not (q > 1.0):
        raise ValueError(f"growth exponent q must exceed 1, got {q}")
    pts = _box_points(box, per_dim)
    grid = _geometric_grid(r, levels)
    ratios = np.empty(grid.size)
    with np.errstate(over="ignore", invalid="ignore"):
        for k, mag in enumerate(grid):
            worst = 0.0
            for s in (mag, -mag):
                fv = np.abs(np.asarray(eval_f(spec, pts, s), dtype=float))
                worst = max(worst, float(np.max(fv)))
            ratios[k] = worst / (mag ** (q - 1.0) + 1.0)
    first = ratios[0]
    last = ratios[-1]
    unbounded = (not np.isfinite(last)) or np.isnan(last) \
        or last > 1e6 * max(first, 1e-300)
    tail_a = float(np.max(ratios[(grid.size) // 2:])) if np.all(np.isfinite(ratios)) \
        else math.inf
    status = FAILS if unbounded else HOLDS
    return Verdict(status, {
        "q": q, "ratio_first": float(first), "ratio_last": float(last),
        "fitted_a": tail_a,
    })


def _f0_value(spec: NonlinearitySpec, R: float, mesh: Mesh, s_points: int) -> float:
    pts = mesh.quad_points_flat()
    w = mesh.quad_weights_flat()
    env = np.zeros(pts.shape[0])
    with np.errstate(over="ignore", invalid="ignore"):
        for s in np.linspace(-R, R, s_points):
            env = np.maximum(env, np.abs(np.asarray(eval_f(spec, pts, s), dtype=float)))
    return math.fsum((w * env).tolist())


def check_f0(spec: NonlinearitySpec, R: float, mesh: Mesh, s_points: int = 2001,
             refinements: int = 0) -> Verdict:
    """Quadrature value of int_Omega sup_{|s| <= R} |f(x, s)| dx.

    Fails on a non-finite value.  With refinements > 0 the integral is
    recomputed on nested bisections; the verdict fails when the
    increments do not shrink (last increment still >= half the first and
    above tolerance), the signature of a non-integrable envelope.
    """
    if not (R > 0.0):
        raise ValueError(f"truncation radius R must be positive, got {R}")
    values = [_f0_value(spec, R, mesh, s_points)]
    m = mesh
    for _ in range(refinements):
        m = refine_structured(m)
        values.append(_f0_value(spec, R, m, s_points))
    evidence = {"R": R, "values": values}
    if not all(np.isfinite(values)):
        return Verdict(FAILS, evidence)
    if refinements >= 2:
        inc = np.diff(values)
        if inc[-1] > 1e-8 * (1.0 + abs(values[-1])) and inc[-1] > 0.5 * inc[0]:
            return Verdict(FAILS, evidence)
    return Verdict(HOLDS, evidence)


# ---------------------------------------------------------------------------
# comparison functions
# ---------------------------------------------------------------------------


class ComparisonFunction:
    """Even, nonnegative normalization function of order alpha.

    The order is the homogeneity degree in axiom (iii):
    phi(s_n)/phi(t_n) -> rho^alpha whenever s_n/t_n -> rho.  Evenness and
    nonnegativity are validated on a sample grid at construction.
    """

    def __init__(self, fn: Callable, order: float, derivative: Optional[Callable] = None,
                 label: str = ""):
        self.fn = fn
        self.order = float(order)
        self.derivative = derivative
        self.label = label or f"order-{order:g} comparison"
        s = np.linspace(-80.0, 80.0, 641)
        vals = np.asarray(fn(s), dtype=float)
        if np.any(vals < -1e-12):
            raise ValueError("comparison function must be nonnegative")
        mirrored = np.asarray(fn(-s), dtype=float)
        if np.max(np.abs(vals - mirrored)) > 1e-12 * max(1.0, float(np.max(np.abs(vals)))):
            raise ValueError("comparison function must be even (within 1e-12)")

    def __call__(self, s):
        return np.asarray(self.fn(np.asarray(s, dtype=float)), dtype=float)


def power_comparison(alpha: float) -> ComparisonFunction:
    """phi(s) = |s|^alpha."""
    return ComparisonFunction(
        lambda s: np.abs(s) ** alpha, alpha,
        derivative=lambda s: alpha * np.sign(s) * np.abs(s) ** (alpha - 1.0),
        label=f"|s|^{alpha:g}")


def log_power_comparison(alpha: float) -> ComparisonFunction:
    """phi(s) = |s|^alpha log(e + |s|), useful at the endpoint order alpha = 1."""
    def fn(s):
        a = np.abs(s)
        return a ** alpha * np.log(np.e + a)

    def deriv(s):
        a = np.abs(s)
        sgn = np.sign(s)
        return sgn * (alpha * a ** (alpha - 1.0) * np.log(np.e + a)
                      + a ** alpha / (np.e + a))

    return ComparisonFunction(fn, alpha, derivative=deriv,
                              label=f"|s|^{alpha:g} log(e+|s|)")


def verify_comparison_function(phi, p: float, r: float = 1.0, levels: int = 40,
                               seed: int = 0) -> HypothesisReport:
    """Check the four comparison-function axioms for phi against exponent p.

    (i)   phi(s)/|s|^p -> 0          (decaying tail on the geometric grid)
    (ii)  phi(s)/|s|   -> infinity   (growing tail)
    (iii) phi(r t)/phi(t) -> r^alpha for random ratios r in [0.1, 10]
    (iv)  phi(t s)/phi(t) <= a s^beta + b at beta = alpha + 0.5, fitted
          over t in [10, 1e6]

    The order must lie in [1, p].  Slowly varying borderline cases (for
    example orders within ~0.05 of 1 or p) can fail the finite-grid
    trend tests even when the axiom holds in the limit.
    """
    alpha = float(phi.order)
    grid = _geometric_grid(r, levels)
    conditions = {}

    order_ok = 1.0 <= alpha <= p
    conditions["order_range"] = Verdict(
        HOLDS if order_ok else FAILS, {"alpha": alpha, "p": p})

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        vals = np.asarray(phi(grid), dtype=float)

        ratio_p = vals / grid ** p
        first, mid, last = ratio_p[0], ratio_p[levels // 2], ratio_p[-1]
        decays = np.isfinite(last) and (last < 0.7 * mid or last < 1e-9 * (1.0 + first))
        conditions["vanishes_vs_power_p"] = Verdict(
            HOLDS if decays else FAILS,
            {"first": float(first), "mid": float(mid), "last": float(last)})

        ratio_1 = vals / grid
        first1, mid1, last1 = ratio_1[0], ratio_1[levels // 2], ratio_1[-1]
        grows = (not np.isfinite(last1)) or (last1 > 1.4 * mid1 and last1 > 4.0 * first1)
        conditions["superlinear"] = Verdict(
            HOLDS if grows else FAILS,
            {"first": float(first1), "mid": float(mid1), "last": float(last1)})

        rng = np.random.default_rng(seed)
        rhos = rng.uniform(0.1, 10.0, size=5)
        worst_dev = 0.0
        for rho in rhos:
            ratio = float(phi(rho * grid[-1])) / float(phi(grid[-1]))
            worst_dev = max(worst_dev, abs(ratio / rho ** alpha - 1.0))
        conditions["ratio_homogeneity"] = Verdict(
            HOLDS if worst_dev <= 0.15 else FAILS,
            {"worst_relative_deviation": float(worst_dev)})

        beta = alpha + 0.5
        ts = np.geomspace(10.0, 1e6, 13)
        ss = np.concatenate([np.linspace(0.0, 1.0, 9), np.geomspace(1.25, 16.0, 13)])
        a_of_t = np.empty(ts.size)
        b_of_t = np.empty(ts.size)
        for i, t in enumerate(ts):
            phit = float(phi(t))
            ratios = np.asarray(phi(ss * t), dtype=float) / phit
            small = ss <= 1.0
            b_of_t[i] = float(np.max(ratios[small]))
            a_of_t[i] = float(np.max((ratios[~small] - b_of_t[i])
                                     / ss[~small] ** beta))
        a_last, a_first = a_of_t[-1], a_of_t[0]
        dominated = np.all(np.isfinite(a_of_t)) and \
            a_last <= 1e6 * max(a_first, 1e-300)
        conditions["scaled_domination"] = Verdict(
            HOLDS if dominated else FAILS,
            {"beta": beta, "fitted_a": float(np.max(a_of_t)),
             "fitted_b": float(np.max(b_of_t))})

    return make_report(f"comparison axioms for {getattr(phi, 'label', 'phi')}",
                       conditions)


def check_class_membership(exponent: float | None, alpha: float, p: float,
                           ndim: int, kind: str = "X") -> Verdict:
    """Integrability-class test from a declared L^q exponent.

    For p > N membership needs L^1; for p = N it needs L^q with q > 1;
    for p < N the threshold is the conjugate exponent of p*/alpha, where
    p* = N p / (N - p): class X requires q strictly above it, class Y
    admits equality.
    """
    if kind not in ("X", "Y"):
        raise ValueError("kind must be 'X' or 'Y'")
    if exponent is None:
        return Verdict(INCONCLUSIVE, {"reason": "no declared integrability exponent"})
    N = ndim
    if p > N:
        threshold, strict = 1.0, False
    elif p == N:
        threshold, strict = 1.0, True
    else:
        pstar = N * p / (N - p)
        ratio = pstar / alpha
        threshold = ratio / (ratio - 1.0)
        strict = (kind == "X")
    if math.isinf(exponent):
        ok = True
    elif math.isclose(exponent, threshold, rel_tol=1e-12, abs_tol=0.0):
        ok = not strict
    else:
        ok = exponent > threshold
    return Verdict(HOLDS if ok else FAILS,
                   {"kind": kind, "declared_exponent": exponent,
                    "threshold": threshold, "strict": strict})


# ---------------------------------------------------------------------------
# theorem-level checkers
# ---------------------------------------------------------------------------


def _resolve(spec: NonlinearitySpec, eigenpair: EigenResult, p: float | None):
    lam = spec.lambda1 if spec.lambda1 is not None else eigenpair.lambda1
    pp = spec.p if spec.p is not None else p
    if pp is None:
        raise ValueError("p is needed (stored on the entry or passed explicitly)")
    return lam, pp


def _ae_nonpositive(values, converged, weights) -> Verdict:
    """'limsup <= 0 a.e.' through quadrature weight."""
    total = float(np.sum(weights))
    with np.errstate(invalid="ignore"):
        violating = converged & (values > ZERO_TOL)
    frac_viol = float(np.sum(weights[violating])) / total
    frac_uncv = float(np.sum(weights[~converged])) / total
    if frac_viol > WEIGHT_FRACTION:
        return Verdict(FAILS, {"violating_weight_fraction": frac_viol})
    if frac_uncv > WEIGHT_FRACTION:
        return Verdict(INCONCLUSIVE, {"unconverged_weight_fraction": frac_uncv})
    return Verdict(HOLDS, {"violating_weight_fraction": frac_viol})


def _strict_negative_set(values, converged, weights) -> Verdict:
    """'strictly negative on a set of positive measure'."""
    total = float(np.sum(weights))
    with np.errstate(invalid="ignore"):
        strict = converged & (values < -STRICT_MARGIN)
    frac = float(np.sum(weights[strict])) / total
    if frac > WEIGHT_FRACTION:
        return Verdict(HOLDS, {"strict_weight_fraction": frac})
    frac_uncv = float(np.sum(weights[~converged])) / total
    if frac_uncv > WEIGHT_FRACTION:
        return Verdict(INCONCLUSIVE, {"unconverged_weight_fraction": frac_uncv})
    return Verdict(FAILS, {"strict_weight_fraction": frac})


def _dominated_by(values, converged, weights, bound_vals) -> Verdict:
    """Pointwise 'limsup <= bound' with the uniform margin."""
    total = float(np.sum(weights))
    with np.errstate(invalid="ignore"):
        violating = converged & ~(values <= bound_vals + UNIFORM_MARGIN)
    frac_viol = float(np.sum(weights[violating])) / total
    frac_uncv = float(np.sum(weights[~converged])) / total
    if frac_viol > WEIGHT_FRACTION:
        return Verdict(FAILS, {"violating_weight_fraction": frac_viol})
    if frac_uncv > WEIGHT_FRACTION:
        return Verdict(INCONCLUSIVE, {"unconverged_weight_fraction": frac_uncv})
    return Verdict(HOLDS, {"violating_weight_fraction": frac_viol})


def _weighted_integral(values, weights, density) -> float:
    """Sum w * value * density with sentinel values short-circuiting to +-inf.

    A +inf contribution wins over -inf: the integral is then reported as
    +inf, the conservative answer when certifying strict negativity.
    """
    mask_pos = np.isposinf(values) & (weights * density > 0)
    if np.any(mask_pos):
        return math.inf
    mask_neg = np.isneginf(values) & (weights * density > 0)
    if np.any(mask_neg):
        return -math.inf
    finite = np.isfinite(values)
    return math.fsum((weights[finite] * values[finite] * density[finite]).tolist())


def _declared_weight(spec: NonlinearitySpec) -> SpatialWeight | None:
    w = spec.params.get("eta")
    return w if isinstance(w, SpatialWeight) else None


def check_sign_theorem(spec: NonlinearitySpec, eigenpair: EigenResult, h: DualVector,
                       mesh: Mesh, p: float | None = None, *, r: float = 1.0,
                       levels: int = CHECKER_LEVELS, f0_R: float = 10.0) -> HypothesisReport:
    """Nonpositive top-order drift: limsup G/|s|^p <= 0 a.e. in both
    directions, strictly negative on sets of positive measure, plus the
    local integrability of the envelope sup_{|s| <= R} |f|.
    """
    lam, pp = _resolve(spec, eigenpair, p)
    pts = mesh.quad_points_flat()
    w = mesh.quad_weights_flat()
    denom = lambda mag: mag ** pp

    conditions = {}
    strict_parts = []
    ae_parts = []
    for direction, tag in ((1, "pos"), (-1, "neg")):
        vals, conv = _pointwise_limsup(spec, pts, denom, direction, lam, pp, r, levels)
        ae_parts.append(_ae_nonpositive(vals, conv, w))
        strict_parts.append(_strict_negative_set(vals, conv, w))
    conditions["nonpositive_ae"] = Verdict(
        _combine(v.status for v in ae_parts),
        {"pos": ae_parts[0].evidence, "neg": ae_parts[1].evidence})
    conditions["strictly_negative_set"] = Verdict(
        _combine(v.status for v in strict_parts),
        {"pos": strict_parts[0].evidence, "neg": strict_parts[1].evidence})
    conditions["local_envelope_integrable"] = check_f0(spec, f0_R, mesh)
    return make_report("sign theorem", conditions)


def check_comparison_theorem(spec: NonlinearitySpec, eigenpair: EigenResult,
                             h: DualVector, mesh: Mesh, phi=None,
                             p: float | None = None, *, r: float = 1.0,
                             levels: int = CHECKER_LEVELS,
                             f0_R: float = 10.0) -> HypothesisReport:
    """Domination of limsup G/phi by an X_alpha weight plus strictly
    negative phi_1^alpha-weighted integrals in both directions.
    """
    lam, pp = _resolve(spec, eigenpair, p)
    if phi is None:
        phi = spec.params.get("phi")
    if phi is None:
        phi = power_comparison((1.0 + pp) / 2.0)
    alpha = float(phi.order)
    pts = mesh.quad_points_flat()
    w = mesh.quad_weights_flat()
    phi1q = np.abs(values_at_quad(mesh, eigenpair.phi1).reshape(-1)) ** alpha

    conditions = {}
    axioms = verify_comparison_function(phi, pp)
    conditions["comparison_axioms"] = Verdict(axioms.overall,
                                              dict(axioms.rows()))

    eta = _declared_weight(spec)
    denom = lambda mag: float(phi(mag))
    dom_parts = []
    integrals = {}
    uncv_fracs = []
    for direction, tag in ((1, "pos"), (-1, "neg")):
        vals, conv = _pointwise_limsup(spec, pts, denom, direction, lam, pp, r, levels)
        candidates = []
        if eta is not None:
            candidates.append(("declared eta", eta(pts),
                               check_class_membership(eta.exponent, alpha, pp,
                                                      mesh.ndim, "X")))
        candidates.append(("zero", np.zeros(pts.shape[0]),
                           Verdict(HOLDS, {"kind": "X", "candidate": "zero"})))
        best = None
        for label, bound_vals, membership in candidates:
            bounded = _dominated_by(vals, conv, w, bound_vals)
            verdict = Verdict(_combine([bounded.status, membership.status]),
                              {"candidate": label, "bound": bounded.evidence,
                               "membership": membership.evidence})
            if verdict.status == HOLDS:
                best = verdict
                break
            if best is None or (best.status == FAILS and verdict.status == INCONCLUSIVE):
                best = verdict
        dom_parts.append(best)
        integrals[tag] = _weighted_integral(vals, w, phi1q)
        uncv_fracs.append(float(np.sum(w[~conv])) / float(np.sum(w)))

    conditions["dominated_in_X"] = Verdict(
        _combine(v.status for v in dom_parts),
        {"pos": dom_parts[0].evidence, "neg": dom_parts[1].evidence})

    neg_ok = integrals["pos"] < -STRICT_MARGIN and integrals["neg"] < -STRICT_MARGIN
    status = HOLDS if neg_ok else FAILS
    if status == HOLDS and max(uncv_fracs) > WEIGHT_FRACTION:
        status = INCONCLUSIVE
    conditions["negative_weighted_integrals"] = Verdict(status, dict(integrals))

    conditions["local_envelope_integrable"] = check_f0(spec, f0_R, mesh)
    return make_report("comparison theorem", conditions)


def check_landesman_lazer_theorem(spec: NonlinearitySpec, eigenpair: EigenResult,
                                  h: DualVector, mesh: Mesh,
                                  p: float | None = None, *, r: float = 1.0,
                                  levels: int = CHECKER_LEVELS,
                                  f0_R: float = 10.0) -> HypothesisReport:
    """Domination of limsup G/|s| by a Y_1 weight plus the bracket
    int G_1^- phi_1 < <h, phi_1> < -int G_1^+ phi_1.
    """
    lam, pp = _resolve(spec, eigenpair, p)
    pts = mesh.quad_points_flat()
    w = mesh.quad_weights_flat()
    phi1q = np.abs(values_at_quad(mesh, eigenpair.phi1).reshape(-1))
    denom = lambda mag: mag

    conditions = {}
    eta = _declared_weight(spec)
    dom_parts = []
    limsups = {}
    uncv_fracs = []
    for direction, tag in ((1, "pos"), (-1, "neg")):
        vals, conv = _pointwise_limsup(spec, pts, denom, direction, lam, pp, r, levels)
        candidates = []
        if eta is not None:
            candidates.append(("declared eta", eta(pts),
                               check_class_membership(eta.exponent, 1.0, pp,
                                                      mesh.ndim, "Y")))
        candidates.append(("zero", np.zeros(pts.shape[0]),
                           Verdict(HOLDS, {"kind": "Y", "candidate": "zero"})))
        best = None
        for label, bound_vals, membership in candidates:
            bounded = _dominated_by(vals, conv, w, bound_vals)
            verdict = Verdict(_combine([bounded.status, membership.status]),
                              {"candidate": label, "bound": bounded.evidence,
                               "membership": membership.evidence})
            if verdict.status == HOLDS:
                best = verdict
                break
            if best is None or (best.status == FAILS and verdict.status == INCONCLUSIVE):
                best = verdict
        dom_parts.append(best)
        limsups[tag] = (vals, conv)
        uncv_fracs.append(float(np.sum(w[~conv])) / float(np.sum(w)))

    conditions["dominated_in_Y"] = Verdict(
        _combine(v.status for v in dom_parts),
        {"pos": dom_parts[0].evidence, "neg": dom_parts[1].evidence})

    I_plus = _weighted_integral(limsups["pos"][0], w, phi1q)
    I_minus = _weighted_integral(limsups["neg"][0], w, phi1q)
    h_phi1 = pairing(h, eigenpair.phi1)
    bracket_ok = (I_minus < h_phi1 - STRICT_MARGIN) and (h_phi1 < -I_plus - STRICT_MARGIN)
    status = HOLDS if bracket_ok else FAILS
    if status == HOLDS and max(uncv_fracs) > WEIGHT_FRACTION:
        status = INCONCLUSIVE
    conditions["bracket"] = Verdict(status, {
        "lower": I_minus, "pairing": h_phi1, "upper": -I_plus})

    conditions["local_envelope_integrable"] = check_f0(spec, f0_R, mesh)
    return make_report("Landesman-Lazer theorem", conditions)


def check_superlinear_negativity(spec: NonlinearitySpec, r: float = 1.0,
                                 levels: int = CHECKER_LEVELS,
                                 lambda1: float | None = None,
                                 p: float | None = None) -> Verdict:
    """lim G(s)/|s| = -infinity in both directions (autonomous specs).

    Holds when both directional tail estimates reach the -inf sentinel;
    inconclusive when an estimate has not converged.
    """
    if not spec.autonomous:
        raise ValueError("superlinear-negativity check needs an autonomous spec")
    lam = lambda1 if lambda1 is not None else spec.lambda1
    pp = p if p is not None else spec.p
    if lam is None or pp is None:
        raise ValueError("lambda1 and p are needed (spec metadata or arguments)")
    dummy = np.zeros((1, 1))
    results = {}
    ok = True
    inconclusive = False
    for direction, tag in ((1, "pos"), (-1, "neg")):
        vals, conv = _pointwise_limsup(spec, dummy, lambda mag: mag, direction,
                                       lam, pp, r, levels)
        results[tag] = {"value": float(vals[0]), "converged": bool(conv[0])}
        if not conv[0]:
            inconclusive = True
        elif not np.isneginf(vals[0]):
            ok = False
    if not ok:
        return Verdict(FAILS, results)
    if inconclusive:
        return Verdict(INCONCLUSIVE, results)
    return Verdict(HOLDS, results)


# ---------------------------------------------------------------------------
# incomparability suite
# ---------------------------------------------------------------------------


THEOREMS = ("sign", "comparison", "landesman_lazer")


@dataclass(frozen=True)
class IncomparabilityTable:
    """3x3 verdict table: catalog cases against the three theorems."""

    cases: tuple
    verdicts: dict          # verdicts[case][theorem] -> status
    reports: dict           # reports[case][theorem] -> HypothesisReport
    designed: dict          # case -> the theorem it is built to satisfy

    def matrix(self):
        return [[self.verdicts[c][t] for t in THEOREMS] for c in self.cases]

    def is_exclusive_diagonal(self) -> bool:
        """Each case holds exactly its designed theorem; nothing inconclusive."""
        for c in self.cases:
            for t in THEOREMS:
                expected = HOLDS if self.designed[c] == t else FAILS
                if self.verdicts[c][t] != expected:
                    return False
        return True

    def rows(self):
        for c in self.cases:
            yield c, [self.verdicts[c][t] for t in THEOREMS]


def _unit_coords(mesh: Mesh, pts: np.ndarray) -> np.ndarray:
    s = mesh.structure
    if s and s[0] == "interval":
        lo = np.array([s[1]]); hi = np.array([s[2]])
    elif s and s[0] == "rectangle":
        lo = np.array([s[1], s[3]]); hi = np.array([s[2], s[4]])
    else:
        lo = mesh.vertices.min(axis=0); hi = mesh.vertices.max(axis=0)
    return (pts - lo) / (hi - lo)


def _tilted_weight(mesh: Mesh) -> SpatialWeight:
    """Weight positive on a thin slab near one face, negative elsewhere,
    with a strictly negative phi_1-weighted integral."""
    def fn(pts):
        u = _unit_coords(mesh, np.atleast_2d(pts))
        return u[:, 0] - 0.9
    return SpatialWeight(fn, math.inf, "x_unit - 0.9")


def _plateau_bump(mesh: Mesh) -> SpatialWeight:
    """Smooth a <= 0 with support inside [0.15, 0.55] (unit coordinates)
    in each axis, so {a = 0} and {a < 0} both have positive measure."""
    def mollifier(t):
        u = (t - 0.35) / 0.2
        out = np.zeros_like(t)
        inside = np.abs(u) < 1.0
        with np.errstate(divide="ignore", over="ignore"):
            out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
        return out

    def fn(pts):
        u = _unit_coords(mesh, np.atleast_2d(pts))
        prof = mollifier(u[:, 0])
        for d in range(1, u.shape[1]):
            prof = prof * mollifier(u[:, d])
        return -prof
    return SpatialWeight(fn, math.inf, "-plateau bump")


def incomparability_suite(p: float, mesh: Mesh, *, r: float = 1.0,
                          levels: int = CHECKER_LEVELS,
                          eigen_kwargs: dict | None = None) -> IncomparabilityTable:
    """Run the three canonical catalog cases through all three theorem
    checkers with h = 0.

    Each case is built so that exactly one set of hypotheses holds:

      comparison_case      F = lambda1 |s|^p/p + eta(x) phi(s)
      landesman_case       F = lambda1 |s|^p/p + eta(x) |s|
      sign_case            F = (lambda1/p + a(x)) |s|^p + sqrt(phi(s) |s|^p)

    The expected verdict matrix is a permutation: one "holds" per row
    and per column (see is_exclusive_diagonal).
    """
    from .assembly import zero_dual
    from .eigen import first_eigenpair
    from .nonlinearity import modulated_resonance, weighted_absval, weighted_comparison

    eig = first_eigenpair(mesh, p, **(eigen_kwargs or {}))
    lam = eig.lambda1
    h = zero_dual(mesh)
    alpha = (1.0 + p) / 2.0
    phi = power_comparison(alpha)
    eta = _tilted_weight(mesh)
    a = _plateau_bump(mesh)

    specs = {
        "comparison_case": weighted_comparison(eta, phi, lam, p),
        "landesman_case": weighted_absval(eta, lam, p),
        "sign_case": modulated_resonance(a, phi, lam, p),
    }
    designed = {
        "comparison_case": "comparison",
        "landesman_case": "landesman_lazer",
        "sign_case": "sign",
    }

    checkers = {
        "sign": lambda s: check_sign_theorem(s, eig, h, mesh, p, r=r, levels=levels),
        "comparison": lambda s: check_comparison_theorem(s, eig, h, mesh, None, p,
                                                         r=r, levels=levels),
        "landesman_lazer": lambda s: check_landesman_lazer_theorem(s, eig, h, mesh, p,
                                                                   r=r, levels=levels),
    }

    verdicts = {}
    reports = {}
    for case, spec in specs.items():
        verdicts[case] = {}
        reports[case] = {}
        for theorem, run in checkers.items():
            rep = run(spec)
            verdicts[case][theorem] = rep.overall
            reports[case][theorem] = rep

    return IncomparabilityTable(cases=tuple(specs), verdicts=verdicts,
                                reports=reports, designed=designed)

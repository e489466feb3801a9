"""Generating functions of Grand Lebesgue norms and their transforms.

A generating function ``psi`` is continuous and strictly positive on an open
exponent interval (A, B) with 1 <= A < B <= inf, and +inf outside it, with
inf over the interval > 0.  The associated function-space norm is

    ||f||_{G psi} = sup_p |f|_p / psi(p).

The degenerate member ``psi_r`` (1 at r, +inf elsewhere) recovers the plain
L_r norm, with the convention c/inf = 0.  +inf is represented by the IEEE
infinity, whose arithmetic already implements that convention.

This module also hosts the exponent maps p -> q(p) used to transfer moment
inequalities, the interpolation transforms, fundamental functions, the
inf-sup combined constant, and dilation growth (Boyd) indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigurationError, DomainError, InvariantViolation
from . import grids

#: Finite stand-in for an infinite upper support endpoint in grid suprema.
#: Every report that uses it echoes the value.
DEFAULT_P_CUTOFF = 1.0e3


# -- exponent grids -----------------------------------------------------------

def exponent_grid(a: float, b: float, count: int = 64,
                  cutoff: float = DEFAULT_P_CUTOFF,
                  min_rel: float = 1e-6) -> np.ndarray:
    """Grid on (a, b) refined geometrically toward the finite endpoints.

    Suprema over exponent intervals are typically attained in endpoint
    limits, so offsets shrink geometrically down to ``min_rel`` times the
    span.  An infinite b is truncated at ``cutoff`` and filled with
    log-spaced points on the unbounded side.
    """
    if not (1 <= a < b):
        raise ConfigurationError(f"need 1 <= a < b, got ({a}, {b})")
    if count < 2:
        raise ConfigurationError("need at least two grid points")
    if math.isinf(b):
        half = count // 2
        span = max(a, 1.0)
        offs = span * np.geomspace(1.0, min_rel, half)
        left = a + offs[::-1] * 0.5
        right = np.geomspace(a + span, cutoff, count - half)
        pts = np.concatenate([left, right])
    else:
        half = count // 2
        span = b - a
        offs = 0.5 * span * np.geomspace(1.0, min_rel, half)
        left = a + offs[::-1]
        right = b - offs
        pts = np.concatenate([left, right])
    return np.unique(pts)


def grid_from_spec(spec: dict) -> np.ndarray:
    """Build a grid from the JSON form {start, stop, count, spacing}.

    spacing "geometric" refines toward both endpoints of (start, stop);
    spacing "log" spaces points logarithmically from start to stop.
    """
    start, stop = float(spec["start"]), float(spec["stop"])
    count = int(spec.get("count", 64))
    spacing = spec.get("spacing", "geometric")
    if spacing == "geometric":
        return exponent_grid(start, stop, count)
    if spacing == "log":
        if start <= 0:
            raise ConfigurationError("log spacing needs start > 0")
        return np.geomspace(start, stop, count)
    raise ConfigurationError(f"unknown grid spacing {spacing!r}")


def grid_to_spec(start: float, stop: float, count: int, spacing: str) -> dict:
    return {"start": start, "stop": stop, "count": count, "spacing": spacing}


# -- generating functions -----------------------------------------------------

@dataclass(frozen=True)
class PsiFunction:
    """A generating function on an open exponent interval (a, b).

    ``kind`` is one of "constant", "power", "conjugate_power", "table",
    "degenerate" or "derived" (an opaque callable produced by a transform).
    Evaluation outside the open support returns +inf; the degenerate kind has
    a one-point support {r} where it equals 1.
    """

    a: float
    b: float
    kind: str
    label: str = ""
    params: dict = field(default_factory=dict)
    table_p: np.ndarray | None = None
    table_v: np.ndarray | None = None
    fn: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.kind == "degenerate":
            r = self.params["r"]
            if r < 1:
                raise DomainError("degenerate exponent must satisfy r >= 1")
            return
        if not (1 <= self.a < self.b):
            raise ConfigurationError(
                f"support must satisfy 1 <= A < B <= inf, got ({self.a}, {self.b})")
        if self.kind == "table":
            p = np.asarray(self.table_p, dtype=float)
            v = np.asarray(self.table_v, dtype=float)
            if p.size != v.size or p.size < 2:
                raise ConfigurationError("table needs matching p/value arrays")
            if np.any(np.diff(p) <= 0):
                raise ConfigurationError("table p-grid must be strictly increasing")
            if np.any(v <= 0) or not np.all(np.isfinite(v)):
                raise InvariantViolation("table values must be finite and positive")
            object.__setattr__(self, "table_p", p)
            object.__setattr__(self, "table_v", v)

    # constructors

    @staticmethod
    def constant(c: float, support: tuple[float, float], label: str = "") -> "PsiFunction":
        if c <= 0:
            raise DomainError("constant generating function must be positive")
        return PsiFunction(support[0], support[1], "constant",
                           label or f"const {c}", {"c": c})

    @staticmethod
    def power(c: float, e: float, support: tuple[float, float], label: str = "") -> "PsiFunction":
        return PsiFunction(support[0], support[1], "power",
                           label or f"{c}*p^{e}", {"c": c, "e": e})

    @staticmethod
    def conjugate_power(c: float, e: float, support: tuple[float, float],
                        label: str = "") -> "PsiFunction":
        return PsiFunction(support[0], support[1], "conjugate_power",
                           label or f"{c}*(p/(p-1))^{e}", {"c": c, "e": e})

    @staticmethod
    def degenerate(r: float) -> "PsiFunction":
        return PsiFunction(float(r), float(r), "degenerate", f"degenerate@{r}",
                           {"r": float(r)})

    @staticmethod
    def from_table(p_values, values, support: tuple[float, float] | None = None,
                   label: str = "") -> "PsiFunction":
        p = np.asarray(p_values, dtype=float)
        if support is None:
            step = p[1] / p[0]
            support = (max(1.0, p[0] / step), p[-1] * step)
        return PsiFunction(support[0], support[1], "table", label,
                           table_p=p, table_v=np.asarray(values, dtype=float))

    @staticmethod
    def from_callable(fn: Callable[[float], float], support: tuple[float, float],
                      label: str = "") -> "PsiFunction":
        return PsiFunction(support[0], support[1], "derived", label, fn=fn)

    @staticmethod
    def natural(f: "grids.GridFunction", p_grid: np.ndarray,
                label: str = "") -> "PsiFunction":
        """Natural generating function psi_f(p) = |f|_p tabulated on p_grid."""
        vals = np.array([grids.lp_norm(f, float(p)) for p in p_grid])
        return PsiFunction.from_table(p_grid, vals,
                                      label=label or f"natural({f.label})")

    # evaluation

    @property
    def support(self) -> tuple[float, float]:
        if self.kind == "degenerate":
            r = self.params["r"]
            return (r, r)
        return (self.a, self.b)

    @property
    def is_degenerate(self) -> bool:
        return self.kind == "degenerate"

    def __call__(self, p: float) -> float:
        return psi_eval(self, p)

    def eval_interior(self, ps: np.ndarray) -> np.ndarray:
        """Vector evaluation for points known to lie inside the open support."""
        ps = np.asarray(ps, dtype=float)
        if self.kind == "constant":
            return np.full_like(ps, self.params["c"])
        if self.kind == "power":
            return self.params["c"] * ps ** self.params["e"]
        if self.kind == "conjugate_power":
            return self.params["c"] * (ps / (ps - 1.0)) ** self.params["e"]
        if self.kind == "table":
            return np.interp(np.log(ps), np.log(self.table_p), self.table_v)
        if self.kind == "derived":
            return np.array([float(self.fn(float(p))) for p in ps])
        if self.kind == "degenerate":
            return np.where(ps == self.params["r"], 1.0, math.inf)
        raise ConfigurationError(f"unknown psi kind {self.kind!r}")

    def default_grid(self, count: int = 64,
                     cutoff: float = DEFAULT_P_CUTOFF) -> np.ndarray:
        if self.is_degenerate:
            return np.array([self.params["r"]])
        return exponent_grid(self.a, self.b, count, cutoff)

    # serialization

    def to_json(self, table_count: int = 128) -> dict:
        sup = [self.a, None if math.isinf(self.b) else self.b]
        if self.kind in ("constant", "power", "conjugate_power", "degenerate"):
            return {"support": sup, "kind": self.kind, "params": dict(self.params)}
        if self.kind == "table":
            return {"support": sup, "kind": "table", "params": {},
                    "table": {"p": [float(x) for x in self.table_p],
                              "value": [float(x) for x in self.table_v]}}
        # union of an endpoint-refined grid and a log-uniform one keeps the
        # interpolation error small both near the endpoints and mid-interval
        refined = self.default_grid(table_count)
        uniform = np.geomspace(refined[0], refined[-1], table_count)
        grid = np.unique(np.concatenate([refined, uniform]))
        vals = self.eval_interior(grid)
        return {"support": sup, "kind": "table", "params": {},
                "table": {"p": [float(x) for x in grid],
                          "value": [float(x) for x in vals]}}

    @staticmethod
    def from_json(d: dict) -> "PsiFunction":
        a = float(d["support"][0])
        braw = d["support"][1]
        b = math.inf if braw is None else float(braw)
        kind = d["kind"]
        params = d.get("params", {})
        if kind == "degenerate":
            return PsiFunction.degenerate(params["r"])
        if kind == "constant":
            return PsiFunction.constant(params["c"], (a, b))
        if kind == "power":
            return PsiFunction.power(params["c"], params["e"], (a, b))
        if kind == "conjugate_power":
            return PsiFunction.conjugate_power(params["c"], params["e"], (a, b))
        if kind == "table":
            t = d["table"]
            return PsiFunction.from_table(t["p"], t["value"], support=(a, b))
        raise ConfigurationError(f"cannot deserialize psi kind {kind!r}")


def psi_eval(psi: PsiFunction, p: float) -> float:
    """Evaluate a generating function at one exponent.

    Finite and positive inside the open support, +inf outside, DomainError
    for p < 1.
    """
    if p < 1:
        raise DomainError(f"exponents must satisfy p >= 1, got {p}")
    if psi.is_degenerate:
        return 1.0 if p == psi.params["r"] else math.inf
    if not (psi.a < p < psi.b):
        return math.inf
    v = float(psi.eval_interior(np.array([p]))[0])
    if not (v > 0) or math.isnan(v):
        raise InvariantViolation(
            f"psi {psi.label!r} produced a non-positive value {v} at p={p}")
    return v


@dataclass(frozen=True)
class ProductPsi:
    """Tensor generating function psi(p_vec) = prod_j psi_j(p_j)."""

    factors: tuple[PsiFunction, ...]

    def supports(self) -> list[tuple[float, float]]:
        return [f.support for f in self.factors]

    def __call__(self, p_vec: Sequence[float]) -> float:
        if len(p_vec) != len(self.factors):
            raise ConfigurationError("exponent vector length mismatch")
        out = 1.0
        for f, p in zip(self.factors, p_vec):
            out *= psi_eval(f, float(p))
        return out


# -- exponent maps ------------------------------------------------------------

@dataclass(frozen=True)
class ExponentMap:
    """A strictly monotone continuous map p -> q(p) with inverse r(q).

    Domain (a, b), codomain (c, d) as intervals; the map itself may be
    increasing or decreasing.
    """

    kind: str
    a: float
    b: float
    c: float
    d: float
    _fwd: Callable[[float], float]
    _inv: Callable[[float], float]
    params: dict = field(default_factory=dict)

    def q(self, p: float) -> float:
        if not (self.a <= p <= self.b):
            raise DomainError(f"p={p} outside map domain ({self.a}, {self.b})")
        return float(self._fwd(p))

    def r(self, q: float) -> float:
        if not (self.c <= q <= self.d):
            raise DomainError(f"q={q} outside map codomain ({self.c}, {self.d})")
        return float(self._inv(q))

    @property
    def domain(self) -> tuple[float, float]:
        return (self.a, self.b)

    @property
    def codomain(self) -> tuple[float, float]:
        return (self.c, self.d)

    def check_roundtrip(self, count: int = 33, tol: float = 1e-12) -> float:
        """Max |r(q(p)) - p| over a grid; raises when above tol."""
        grid = exponent_grid(self.a, min(self.b, DEFAULT_P_CUTOFF), count)
        worst = 0.0
        for p in grid:
            worst = max(worst, abs(self.r(self.q(float(p))) - float(p)))
        if worst > tol * max(1.0, self.b if math.isfinite(self.b) else DEFAULT_P_CUTOFF):
            raise InvariantViolation(f"exponent map roundtrip error {worst}")
        return worst

    @staticmethod
    def identity(a: float, b: float) -> "ExponentMap":
        return ExponentMap("identity", a, b, a, b, lambda p: p, lambda q: q)

    @staticmethod
    def conjugate(a: float = 1.0, b: float = math.inf) -> "ExponentMap":
        conj = lambda p: p / (p - 1.0) if p > 1 else math.inf
        lo, hi = sorted((conj(b) if math.isfinite(b) else 1.0,
                         conj(a) if a > 1 else math.inf))
        return ExponentMap("conjugate", a, b, lo, hi, conj, conj)

    @staticmethod
    def pbo(alpha: float, beta: float, n: int) -> "ExponentMap":
        """The weighted-Fourier exponent balance beta - alpha = n(1 - 1/p - 1/q).

        Domain (n/(n-beta), p_max) where p_max keeps q >= 1; the map is
        decreasing with q -> n/alpha as p -> p0.
        """
        if not (0 <= alpha < 1 and 0 <= beta < 1 and alpha + beta <= 1):
            raise DomainError("pbo map needs alpha,beta in [0,1), alpha+beta <= 1")
        p0 = n / (n - beta)
        shift = (beta - alpha) / n
        p_max = math.inf if alpha <= beta else n / (alpha - beta)
        q0 = n / alpha if alpha > 0 else math.inf
        q_min = 1.0 if math.isfinite(p_max) else n / (n + alpha - beta)

        def fwd(p):
            inv = 1.0 - shift - 1.0 / p
            return 1.0 / inv if inv > 0 else math.inf

        def inv_(q):
            invp = 1.0 - shift - 1.0 / q
            return 1.0 / invp if invp > 0 else math.inf

        return ExponentMap("pbo", p0, p_max, q_min, q0, fwd, inv_,
                           {"alpha": alpha, "beta": beta, "n": n})

    @staticmethod
    def riesz_thorin(p0: float, p1: float, q0: float, q1: float) -> "ExponentMap":
        """Map induced by 1/p = (1-th)/p0 + th/p1, 1/q = (1-th)/q0 + th/q1.

        The p endpoints may come in either order (the Hausdorff-Young pairing
        runs p downward while q runs upward); the q endpoints orient theta.
        """
        if not (1 <= p0 < math.inf and 1 <= p1 < math.inf and p0 != p1):
            raise ConfigurationError(
                f"need distinct finite p endpoints >= 1, got ({p0}, {p1})")
        if not (1 <= q0 < q1):
            raise ConfigurationError(f"need 1 <= q0 < q1 <= inf, got ({q0}, {q1})")
        iq0, iq1 = 1.0 / q0, 0.0 if math.isinf(q1) else 1.0 / q1
        ip0, ip1 = 1.0 / p0, 1.0 / p1

        def fwd(p):
            th = (ip0 - 1.0 / p) / (ip0 - ip1)
            invq = (1 - th) * iq0 + th * iq1
            return 1.0 / invq if invq > 0 else math.inf

        def inv_(q):
            th = theta_of_q(q, q0, q1)
            invp = (1 - th) * ip0 + th * ip1
            return 1.0 / invp

        lo, hi = sorted((p0, p1))
        clo, chi = sorted((q0, q1), key=lambda v: v if math.isfinite(v) else math.inf)
        return ExponentMap("riesz_thorin", lo, hi, clo, chi, fwd, inv_,
                           {"p0": p0, "p1": p1, "q0": q0, "q1": q1})

    @staticmethod
    def from_table(p_values, q_values) -> "ExponentMap":
        p = np.asarray(p_values, dtype=float)
        q = np.asarray(q_values, dtype=float)
        if p.size != q.size or p.size < 2:
            raise ConfigurationError("table map needs matching p/q arrays")
        dq = np.diff(q)
        if np.any(np.diff(p) <= 0) or not (np.all(dq > 0) or np.all(dq < 0)):
            raise ConfigurationError("table map must be strictly monotone")
        increasing = dq[0] > 0
        qs, ps = (q, p) if increasing else (q[::-1], p[::-1])

        def fwd(x):
            return float(np.interp(x, p, q))

        def inv_(y):
            return float(np.interp(y, qs, ps))

        return ExponentMap("table", float(p[0]), float(p[-1]),
                           float(q.min()), float(q.max()), fwd, inv_)


def _check_endpoints(p0, p1, q0, q1):
    if not (1 <= p0 < p1 < math.inf):
        raise ConfigurationError(f"need 1 <= p0 < p1 < inf, got ({p0}, {p1})")
    if not (1 <= q0 < q1):
        raise ConfigurationError(f"need 1 <= q0 < q1 <= inf, got ({q0}, {q1})")


def theta_of_q(q: float, q0: float, q1: float) -> float:
    """Interpolation parameter with 1/q = (1-theta)/q0 + theta/q1."""
    iq0 = 1.0 / q0
    iq1 = 0.0 if math.isinf(q1) else 1.0 / q1
    return (iq0 - 1.0 / q) / (iq0 - iq1)


def conjugate_exponent(p: float) -> float:
    if p < 1:
        raise DomainError("conjugate exponent needs p >= 1")
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


# -- transforms ---------------------------------------------------------------

def transform_moment(psi: PsiFunction, K: Callable[[float], float],
                     qmap: ExponentMap) -> PsiFunction:
    """Push a generating function through a moment inequality.

    Returns psi1 with support = codomain of the map and
    psi1(q) = K(r(q)) * psi(r(q)).
    """
    sa, sb = psi.support
    if not (_close(sa, qmap.a) and _close(sb, qmap.b)):
        raise ConfigurationError(
            f"psi support {psi.support} does not match map domain {qmap.domain}")
    for probe in np.linspace(sa, min(sb, DEFAULT_P_CUTOFF), 7)[1:-1] if sa < sb else []:
        if not math.isfinite(K(float(probe))):
            raise ConfigurationError("constant K must be finite on the support")

    def fn(q):
        r = qmap.r(q)
        return K(r) * psi_eval(psi, r)

    return PsiFunction.from_callable(fn, qmap.codomain,
                                     label=f"{psi.label}->moment")


def _close(x, y, tol=1e-9):
    if math.isinf(x) or math.isinf(y):
        return math.isinf(x) and math.isinf(y)
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def interpolation_psi(kind: str, psi: PsiFunction, p0: float, p1: float,
                      q0: float, q1: float, M0: float, M1: float) -> PsiFunction:
    """Interpolation transforms of a generating function.

    "riesz-thorin": psi_RT(q) = 2 M0^(1-Theta(q)) M1^Theta(q) * psi(r_RT(q)).
    "marcinkiewicz": psi_M(q) = psi(r_RT(q)) / ((q - q0)(q1 - q)), divergent
    at both endpoints.
    """
    _check_endpoints(p0, p1, q0, q1)
    sa, sb = psi.support
    if not (_close(sa, p0) and _close(sb, p1)):
        raise ConfigurationError(
            f"psi support {psi.support} must equal (p0, p1) = ({p0}, {p1})")
    if M0 <= 0 or M1 <= 0:
        raise ConfigurationError("endpoint bounds must be positive")
    rt = ExponentMap.riesz_thorin(p0, p1, q0, q1)

    if kind == "riesz-thorin":
        def fn(q):
            th = theta_of_q(q, q0, q1)
            m = 2.0 * M0 ** (1 - th) * M1 ** th
            return m * psi_eval(psi, rt.r(q))

        return PsiFunction.from_callable(fn, (q0, q1),
                                         label=f"{psi.label}->riesz-thorin")
    if kind == "marcinkiewicz":
        if math.isinf(q1):
            raise ConfigurationError(
                "marcinkiewicz transform needs a finite q1 endpoint")

        def fn(q):
            return psi_eval(psi, rt.r(q)) / ((q - q0) * (q1 - q))

        return PsiFunction.from_callable(fn, (q0, q1),
                                         label=f"{psi.label}->marcinkiewicz")
    raise ConfigurationError(f"unknown interpolation kind {kind!r}")


# -- norms and functionals ------------------------------------------------------

def gls_norm(f: "grids.GridFunction", psi: PsiFunction,
             p_grid: np.ndarray | None = None) -> float:
    """sup over the exponent grid of |f|_p / psi(p).

    Degenerate psi collapses to the plain L_r norm exactly.  The supremum is
    monotone under grid refinement; argmax ties break toward smaller p.
    """
    if psi.is_degenerate:
        return grids.lp_norm(f, psi.params["r"])
    if p_grid is None:
        p_grid = psi.default_grid()
    p_grid = np.asarray(p_grid, dtype=float)
    if p_grid.size == 0:
        raise ConfigurationError("empty exponent grid")
    if np.any(p_grid <= psi.a) or np.any(p_grid >= psi.b):
        raise ConfigurationError("exponent grid must lie inside the open support")
    vals = psi.eval_interior(p_grid)
    best = 0.0
    for p, v in zip(p_grid, vals):
        best = max(best, grids.lp_norm(f, float(p)) / v)
    return best


def fundamental_function(psi: PsiFunction, delta: float, count: int = 512,
                         cutoff: float = DEFAULT_P_CUTOFF) -> float:
    """sup_p delta^(1/p) / psi(p): the norm of an indicator of measure delta."""
    if delta <= 0:
        raise DomainError("delta must be positive")
    if psi.is_degenerate:
        return delta ** (1.0 / psi.params["r"])
    grid = exponent_grid(psi.a, psi.b, count, cutoff)
    vals = psi.eval_interior(grid)
    return float(np.max(delta ** (1.0 / grid) / vals))


def combined_constant(K: Callable[[float, float], float], psi: PsiFunction,
                      nu: PsiFunction, qregion: Callable[[float], object],
                      p_count: int = 64, q_count: int = 64) -> float:
    """inf over p of sup over q in Q(p) of K(p,q) psi(p) / nu(q).

    Q(p) may be a single exponent or an interval (lo, hi); +inf signals an
    unusable pair of generating functions.
    """
    p_grid = psi.default_grid(p_count)
    best = math.inf
    any_region = False
    for p in p_grid:
        p = float(p)
        region = qregion(p)
        if region is None:
            continue
        if np.isscalar(region):
            qs = np.array([float(region)])
        else:
            lo, hi = float(region[0]), float(region[1])
            lo = max(lo, nu.a if not nu.is_degenerate else lo)
            hi = min(hi, nu.b if not nu.is_degenerate else hi)
            if not lo < hi:
                continue
            qs = exponent_grid(lo, hi, q_count)
        any_region = True
        psip = psi_eval(psi, p)
        sup = 0.0
        for q in qs:
            q = float(q)
            nv = psi_eval(nu, q)
            sup = max(sup, K(p, q) * psip / nv)
        best = min(best, sup)
    if not any_region:
        raise ConfigurationError("Q(p) is empty for every exponent p")
    return best


# -- dilation growth (Boyd) indices --------------------------------------------

@dataclass(frozen=True)
class BoydIndices:
    """Growth exponents of the two-parameter dilation family."""

    alpha_upper: float
    alpha_lower: float
    beta_upper: float
    beta_lower: float

    def __post_init__(self):
        if self.alpha_lower > self.alpha_upper + 1e-12:
            raise InvariantViolation("alpha_lower must not exceed alpha_upper")
        if self.beta_lower > self.beta_upper + 1e-12:
            raise InvariantViolation("beta_lower must not exceed beta_upper")


def _axis_sup_exponents(psi: PsiFunction, cutoff: float) -> tuple[float, float]:
    if psi.is_degenerate:
        r = psi.params["r"]
        return (r, r)
    grid = exponent_grid(psi.a, psi.b, 64, cutoff)
    return (float(grid[0]), float(grid[-1]))


def _dilation_norm(s: np.ndarray, pmin: float, pmax: float) -> np.ndarray:
    # sup over the p-grid of s**(1/p): attained at pmin for s>1, pmax for s<1
    return np.where(s >= 1.0, s ** (1.0 / pmin), s ** (1.0 / pmax))


def _slope(logx: np.ndarray, logy: np.ndarray) -> float:
    A = np.vstack([logx, np.ones_like(logx)]).T
    sol, *_ = np.linalg.lstsq(A, logy, rcond=None)
    return float(sol[0])


def boyd_indices(psiD: ProductPsi, s_grid: np.ndarray | None = None,
                 t_grid: np.ndarray | None = None,
                 cutoff: float = DEFAULT_P_CUTOFF) -> BoydIndices:
    """Log-log regression slopes of ||Delta_{s,t}|| in the four scale limits.

    The dilation-operator norm on the product-support space reduces to
    sup over the support of s^(1/p1) t^(1/p2); for power-type generating
    functions on (a,b)x(c,d) the indices are (1/a, 1/b, 1/c, 1/d).
    """
    if len(psiD.factors) != 2:
        raise ConfigurationError("dilation indices are defined for two blocks")
    if s_grid is None:
        s_grid = np.geomspace(1e-4, 1e4, 33)
    if t_grid is None:
        t_grid = s_grid
    for g, name in ((s_grid, "s_grid"), (t_grid, "t_grid")):
        if g.min() > 1e-2 or g.max() < 1e2:
            raise ConfigurationError(
                f"{name} must span several decades on each side of 1")
    p1min, p1max = _axis_sup_exponents(psiD.factors[0], cutoff)
    p2min, p2max = _axis_sup_exponents(psiD.factors[1], cutoff)

    def slopes(grid, pmin, pmax):
        norms = _dilation_norm(grid, pmin, pmax)
        logx, logy = np.log(grid), np.log(norms)
        top = grid >= grid.max() / 10.0
        bot = grid <= grid.min() * 10.0
        return _slope(logx[top], logy[top]), _slope(logx[bot], logy[bot])

    a_up, a_lo = slopes(np.asarray(s_grid, dtype=float), p1min, p1max)
    b_up, b_lo = slopes(np.asarray(t_grid, dtype=float), p2min, p2max)
    return BoydIndices(a_up, a_lo, b_up, b_lo)

"""Closed-form catalog of operator-norm constants and growth envelopes.

Exact entries return the stated formula value.  Envelope entries (the
``*_envelope`` and ``pbo_*``/``aniso_pbo_*`` kinds) return the growth factor
with unit front constant; every consumer prints them "modulo absolute
constant" because only the growth order is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import ConfigurationError, DomainError

EXACT_KINDS = frozenset({
    "okikiolu", "beckner_A", "young_convolution", "pichorides",
    "fractional_sobolev", "stein_weiss",
})
ENVELOPE_KINDS = frozenset({
    "riesz_potential", "maximal_envelope", "calderon_zygmund_envelope",
    "maximal_fourier_envelope", "pbo_lower", "pbo_upper",
    "aniso_pbo_lower", "aniso_pbo_upper", "marcinkiewicz_factor",
})


@dataclass(frozen=True)
class ConstantQuery:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in EXACT_KINDS | ENVELOPE_KINDS:
            raise DomainError(f"unknown constant kind {self.kind!r}")


def constant_regime(kind: str) -> str:
    """'exact' for formula values, 'envelope' for order-only growth factors."""
    if kind in EXACT_KINDS:
        return "exact"
    if kind == "riesz_potential":
        return "envelope (paper formula ambiguous)"
    return "envelope (modulo absolute constant)"


def conjugate(p: float) -> float:
    if p < 1:
        raise DomainError("conjugate exponent needs p >= 1")
    if p == 1:
        return math.inf
    return p / (p - 1.0) if math.isfinite(p) else 1.0


def beckner_A(p: float, n: int = 1) -> float:
    """Sharp Hausdorff-Young constant A(p) = [p^(1/p) / p1^(1/p1)]^(n/2)."""
    if not 1 < p <= 2:
        raise DomainError(f"beckner_A needs p in (1, 2], got {p}")
    p1 = conjugate(p)
    return float((p ** (1.0 / p) / p1 ** (1.0 / p1)) ** (n / 2.0))


def young_convolution(p: float, q: float, n: int = 1) -> float:
    """Sharp Young constant (A(p) A(q) A(r1))^n with 1/r = 1/p + 1/q - 1.

    1/r = 0 (conjugate pair, r = inf) is the classical endpoint and allowed.
    """
    inv_r = 1.0 / p + 1.0 / q - 1.0
    if not 0 <= inv_r <= 1:
        raise DomainError("young_convolution needs 1/p + 1/q - 1 in [0, 1]")
    r1 = 1.0 / (1.0 - inv_r) if inv_r < 1 else math.inf

    def base(s: float) -> float:
        if s == 1.0 or math.isinf(s):
            return 1.0
        s1 = conjugate(s)
        return (s ** (1.0 / s) / s1 ** (1.0 / s1)) ** 0.5

    return float((base(p) * base(q) * base(r1)) ** n)


def pichorides(p: float) -> float:
    """Sharp Hilbert-transform constant tan(pi/2p) on (1,2], cot beyond."""
    if not 1 < p < math.inf:
        raise DomainError(f"pichorides needs p in (1, inf), got {p}")
    if p <= 2:
        return math.tan(math.pi / (2 * p))
    return 1.0 / math.tan(math.pi / (2 * p))


def fractional_sobolev(p: float, s: float, n: int) -> float:
    """Fractional embedding constant
    pi^(s/2) Gamma((n-s)/2)/Gamma((n+s)/2) * [Gamma(s)/Gamma(n/2)]^(s/n)."""
    if not 0 < s < n:
        raise DomainError(f"fractional_sobolev needs 0 < s < n, got s={s}, n={n}")
    if not 1 < p < n / s:
        raise DomainError(f"fractional_sobolev needs 1 < p < n/s, got p={p}")
    return float(math.pi ** (s / 2.0)
                 * math.gamma((n - s) / 2.0) / math.gamma((n + s) / 2.0)
                 * (math.gamma(s) / math.gamma(n / 2.0)) ** (s / n))


def okikiolu_constant(p: float, mu: float, h: Callable[[np.ndarray], np.ndarray],
                      support: tuple[float, float] = (0.0, np.inf)) -> float:
    """K(p) = [int |t|^(-sigma (p-1)/p) |h(t)|^sigma dt]^(1/sigma),
    1/sigma = 1 + mu - 2/p, over the declared support of h (doubled for
    two-sided supports starting at 0)."""
    inv_sigma = 1.0 + mu - 2.0 / p
    if inv_sigma <= 0:
        raise DomainError("okikiolu needs 1 + mu - 2/p > 0")
    sigma = 1.0 / inv_sigma
    expo = -sigma * (p - 1.0) / p

    def integrand(t):
        return abs(t) ** expo * np.abs(h(t)) ** sigma

    val, _ = quad(integrand, support[0], support[1], limit=400,
                  points=[support[0]] if math.isfinite(support[1]) else None)
    return float(val ** (1.0 / sigma))


def stein_weiss_norm(kernel, p: float, radial_split: int = 2000,
                     upper: float = np.inf) -> float:
    """|S|(L_p -> L_p) = int K(x, e1) |x|^(-n/p') dx for homogeneous K >= 0.

    One-dimensional kernels integrate over (0, inf); the integrand is taken
    from the kernel factory at y = 1.
    """
    if not 1 < p < math.inf:
        raise DomainError("stein_weiss needs p in (1, inf)")
    if kernel.n != 1:
        raise ConfigurationError("stein_weiss norm integral implemented for n=1")
    if kernel.homogeneity != -1.0:
        raise ConfigurationError("stein_weiss needs a degree -n homogeneous kernel")
    p1 = conjugate(p)

    def integrand(x):
        return float(kernel.eval((np.array([x]),), (np.array([1.0]),))[0]) \
            * x ** (-1.0 / p1)

    v1, _ = quad(integrand, 0, 1, limit=400)
    v2, _ = quad(integrand, 1, upper, limit=400)
    return float(v1 + v2)


def riesz_potential_bound(p: float, q: float, p0: float, q0: float,
                          beta: float, n: int, a_norm: float, b_norm: float,
                          relation_tol: float = 1e-9) -> float:
    """|P|(L_p -> L_q) <= |a|_{p0} |b|_{q0} under the stated constraint set.

    The source relation 1/p = 1/q + (1/p0)(1/q0) - beta/n carries an
    apparently missing operator; it is validated as written and the entry is
    flagged "paper formula ambiguous" in its regime string.
    """
    if not 0 < beta < n:
        raise DomainError("riesz potential needs beta in (0, n)")
    if not (p - 1.0) / p + 1.0 / p0 < 1.0:
        raise DomainError("riesz potential needs (p-1)/p + 1/p0 < 1")
    if not 1.0 / q + 1.0 / q0 < 1.0:
        raise DomainError("riesz potential needs 1/q + 1/q0 < 1")
    lhs = 1.0 / p
    rhs = 1.0 / q + (1.0 / p0) * (1.0 / q0) - beta / n
    if abs(lhs - rhs) > relation_tol:
        raise DomainError(
            "riesz potential exponent relation 1/p = 1/q + (1/p0)(1/q0) - beta/n "
            f"violated: {lhs} vs {rhs}")
    return float(a_norm * b_norm)


def pbo_envelope(p: float, alpha: float, beta: float, n: int,
                 side: str) -> float:
    """Two-sided growth envelope [p/(p-p0)]^e, p0 = n/(n-beta).

    side "lower" uses e = (alpha+beta)/n, side "upper" e = max(1, (alpha+beta)/n).
    """
    if not (0 <= alpha < 1 and 0 <= beta < 1 and alpha + beta <= 1):
        raise DomainError("pbo envelope needs alpha,beta in [0,1), alpha+beta <= 1")
    p0 = n / (n - beta)
    if not p > p0:
        raise DomainError(f"pbo envelope needs p > p0 = {p0}")
    e = (alpha + beta) / n
    if side == "upper":
        e = max(1.0, e)
    elif side != "lower":
        raise DomainError("side must be 'lower' or 'upper'")
    return float((p / (p - p0)) ** e)


def aniso_pbo_envelope(p_vec: Sequence[float], alpha: Sequence[float],
                       beta: Sequence[float], m_vec: Sequence[int],
                       side: str) -> float:
    """Per-block product of the envelope factors, exponents
    (alpha_j+beta_j)/m_j (lower) or max(1, .) (upper)."""
    if not (len(p_vec) == len(alpha) == len(beta) == len(m_vec)):
        raise ConfigurationError("anisotropic envelope needs equal-length vectors")
    out = 1.0
    for p, a, b, m in zip(p_vec, alpha, beta, m_vec):
        out *= pbo_envelope(p, a, b, m, side)
    return float(out)


def marcinkiewicz_factor(theta: float) -> float:
    """Interpolation growth factor 1/(theta (1-theta)), unit front constant."""
    if not 0 < theta < 1:
        raise DomainError("marcinkiewicz factor needs theta in (0, 1)")
    return 1.0 / (theta * (1.0 - theta))


def sharp_constant(query: ConstantQuery) -> float:
    """Dispatch a catalog query; envelope kinds return unit-front growth."""
    k, prm = query.kind, query.params
    if k == "beckner_A":
        return beckner_A(prm["p"], prm.get("n", 1))
    if k == "young_convolution":
        return young_convolution(prm["p"], prm["q"], prm.get("n", 1))
    if k == "pichorides":
        return pichorides(prm["p"])
    if k == "fractional_sobolev":
        return fractional_sobolev(prm["p"], prm["s"], prm["n"])
    if k == "okikiolu":
        return okikiolu_constant(prm["p"], prm["mu"], prm["h"],
                                 prm.get("support", (0.0, np.inf)))
    if k == "stein_weiss":
        return stein_weiss_norm(prm["kernel"], prm["p"])
    if k == "riesz_potential":
        return riesz_potential_bound(prm["p"], prm["q"], prm["p0"], prm["q0"],
                                     prm["beta"], prm["n"],
                                     prm["a_norm"], prm["b_norm"])
    if k == "maximal_envelope":
        p = prm["p"]
        if not p > 1:
            raise DomainError("maximal envelope needs p > 1")
        return p / (p - 1.0)
    if k == "calderon_zygmund_envelope":
        p = prm["p"]
        if not p > 1:
            raise DomainError("calderon-zygmund envelope needs p > 1")
        return p * p / (p - 1.0)
    if k == "maximal_fourier_envelope":
        p = prm["p"]
        if not p > 1:
            raise DomainError("maximal fourier envelope needs p > 1")
        return p ** 4 / (p - 1.0) ** 2
    if k == "pbo_lower":
        return pbo_envelope(prm["p"], prm["alpha"], prm["beta"], prm["n"], "lower")
    if k == "pbo_upper":
        return pbo_envelope(prm["p"], prm["alpha"], prm["beta"], prm["n"], "upper")
    if k == "aniso_pbo_lower":
        return aniso_pbo_envelope(prm["p_vec"], prm["alpha"], prm["beta"],
                                  prm["m_vec"], "lower")
    if k == "aniso_pbo_upper":
        return aniso_pbo_envelope(prm["p_vec"], prm["alpha"], prm["beta"],
                                  prm["m_vec"], "upper")
    if k == "marcinkiewicz_factor":
        return marcinkiewicz_factor(prm["theta"])
    raise DomainError(f"unknown constant kind {k!r}")


# -- the two-weight functional -------------------------------------------------

@dataclass(frozen=True)
class RadialPowerWeight:
    """Weight c |y|^e on r0 <= |y| <= r1 (one dimension, even), zero outside.

    Monotone power profiles admit closed-form level sets, so the two level-set
    integrals of the two-weight functional are evaluated analytically.
    """

    c: float = 1.0
    e: float = 0.0
    r0: float = 0.0
    r1: float = 1.0

    def __post_init__(self):
        if self.c < 0 or self.r0 < 0 or self.r1 <= self.r0:
            raise ConfigurationError("invalid radial power weight")

    def _level_interval(self, t: float, above: bool) -> tuple[float, float] | None:
        """Radial interval of {c y^e > t} (above) or {0 < c y^e < t} within
        the support."""
        if self.c == 0:
            return None
        if self.e == 0:
            hit = (self.c > t) if above else (self.c < t)
            return (self.r0, self.r1) if hit else None
        cross = (t / self.c) ** (1.0 / self.e) if t > 0 else (0.0 if self.e > 0 else math.inf)
        if self.e > 0:
            lo, hi = (cross, math.inf) if above else (0.0, cross)
        else:
            lo, hi = (0.0, cross) if above else (cross, math.inf)
        lo, hi = max(lo, self.r0), min(hi, self.r1)
        return (lo, hi) if lo < hi else None

    def _power_integral(self, expo: float, lo: float, hi: float) -> float:
        """int_lo^hi y^expo dy with divergence -> inf."""
        if lo <= 0 and expo <= -1:
            return math.inf
        if expo == -1:
            return math.log(hi / lo)
        v = (hi ** (expo + 1) - lo ** (expo + 1)) / (expo + 1)
        return float(v)

    def superlevel_mass(self, t: float) -> float:
        """int over {u > t} of u dy (two-sided)."""
        iv = self._level_interval(t, above=True)
        if iv is None:
            return 0.0
        return 2.0 * self.c * self._power_integral(self.e, *iv)

    def sublevel_dual_mass(self, t: float, p: float) -> float:
        """int over {0 < v < t} of v^(-1/(p-1)) dy (two-sided, support only)."""
        iv = self._level_interval(t, above=False)
        if iv is None:
            return 0.0
        ex = -self.e / (p - 1.0)
        return 2.0 * self.c ** (-1.0 / (p - 1.0)) * self._power_integral(ex, *iv)


@dataclass(frozen=True)
class SampledWeight:
    """Nonnegative weight sampled at 1-d quadrature points with weights dx."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if x.size != v.size or x.size < 2:
            raise ConfigurationError("sampled weight needs matching arrays")
        if np.any(v < 0):
            raise DomainError("weights must be nonnegative")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    def _dx(self) -> np.ndarray:
        return np.gradient(self.x)

    def superlevel_mass(self, t: float) -> float:
        m = self.values > t
        return float(np.sum(self.values[m] * self._dx()[m]))

    def sublevel_dual_mass(self, t: float, p: float) -> float:
        m = (self.values > 0) & (self.values < t)
        return float(np.sum(self.values[m] ** (-1.0 / (p - 1.0)) * self._dx()[m]))


def muckenhoupt_I(u, v, p: float, A: float, B: float,
                  r_grid: np.ndarray | None = None) -> tuple[float, float]:
    """Two-weight functional
    I(A,B) = sup_r [int_{u > B r} u] * [int_{v < A r^(p-1)} v^(-1/(p-1))].

    Returns (value, argmax r).  Level sets come in closed form for radial
    power profiles and by thresholding for sampled weights; the dual-weight
    integral runs over the support of v (where v > 0).
    """
    if not 1 < p <= 2:
        raise DomainError(f"the two-weight functional needs p in (1, 2], got {p}")
    if A <= 0 or B <= 0:
        raise DomainError("A and B must be positive")
    if r_grid is None:
        r_grid = np.geomspace(1e-6, 1e6, 481)
    r_grid = np.asarray(r_grid, dtype=float)
    if r_grid.min() > 1e-2 or r_grid.max() < 1e2:
        raise ConfigurationError("r_grid must span several decades")
    best, best_r = 0.0, float(r_grid[0])
    for r in r_grid:
        j1 = u.superlevel_mass(B * r)
        if j1 == 0.0:
            continue
        j2 = v.sublevel_dual_mass(A * r ** (p - 1.0), p)
        val = j1 * j2
        if val > best:
            best, best_r = float(val), float(r)
    return best, best_r

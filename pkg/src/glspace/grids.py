"""Sampled functions on uniform tensor grids and the norms used throughout.

A :class:`GridFunction` holds samples of a real- or complex-valued function at
the *cell centers* of a uniform box grid.  Cell-centered sampling is load
bearing: singular radial weights ``|x|**(-a)`` are evaluated at sample points,
so no sample may sit at the origin.

Norm conventions:

    |f|_p      = ( sum_i |f_i|^p * h^n )^(1/p)            (midpoint rule)
    |f|_{p,w}  = same with a block power weight under the integral
    |f|_{p,q}  = Lorentz norm built from the decreasing rearrangement
    |f|_{p1..} = iterated mixed norm, innermost integral over the first block

All reductions run in a fixed traversal order (row-major, compensated
summation where it matters), so results are reproducible bit for bit.
"""

from __future__ import annotations

import csv
import io
import math
import struct
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import ConfigurationError, DomainError, InvariantViolation

_MAGIC = b"GLSGRID1"


def _fsum_pow(values: np.ndarray, p: float, factor: float) -> float:
    """Compensated sum of |values|**p times factor, fixed row-major order."""
    a = np.abs(np.ascontiguousarray(values)).ravel()
    if p != 1.0:
        a = a ** p
    return math.fsum(a) * factor


@dataclass(frozen=True)
class TailTerm:
    """One power term c*(shift+|x|)**(-gamma) of an analytic tail."""

    coef: float
    gamma: float
    shift: float = 0.0


@dataclass(frozen=True)
class TailProfile:
    """Closed-form behaviour of a 1-d function beyond the grid box.

    ``f(x) = sum_k coef_k * (shift_k + |x|)**(-gamma_k)`` for ``|x| >= start``.
    ``sides=2`` means the even two-sided tail, ``sides=1`` a half-line tail.
    Norm routines integrate this analytically so that domain truncation does
    not mask slow decay (power tails diverge near critical exponents and a
    finite box would hide the blow-up).
    """

    terms: tuple[TailTerm, ...]
    start: float
    sides: int = 2

    def __post_init__(self):
        if self.start <= 0:
            raise ConfigurationError("tail start must be positive")
        if self.sides not in (1, 2):
            raise ConfigurationError("tail sides must be 1 or 2")

    def value(self, x: np.ndarray | float):
        x = np.abs(x)
        out = np.zeros_like(np.asarray(x, dtype=float))
        for t in self.terms:
            out = out + t.coef * (t.shift + x) ** (-t.gamma)
        return out

    def min_gamma(self) -> float:
        return min(t.gamma for t in self.terms)

    def p_integral(self, p: float, weight_exponent: float = 0.0,
                   measure_exponent: float = 0.0, normalizer: float = 1.0) -> float:
        """``sides * int_start^inf (x**w |f(x)| / normalizer)**p x**mu dx``.

        Returns ``inf`` when the integral diverges.  ``weight_exponent`` is the
        in-norm weight ``w`` and ``measure_exponent`` the measure weight ``mu``;
        ``normalizer`` guards against under/overflow at large p.
        """
        decay = p * (self.min_gamma() - weight_exponent) - measure_exponent
        if decay <= 1.0:
            return math.inf
        val, _err = quad(
            lambda x: (x ** weight_exponent * abs(float(self.value(x)))
                       / normalizer) ** p * x ** measure_exponent,
            self.start, np.inf, limit=200)
        return self.sides * val

    def dilated(self, lam: float) -> "TailProfile":
        """Tail of x -> f(lam*x)."""
        terms = tuple(TailTerm(t.coef * lam ** (-t.gamma), t.gamma, t.shift / lam)
                      for t in self.terms)
        return TailProfile(terms, self.start / lam, self.sides)


def power_tail(coef: float, gamma: float, start: float, shift: float = 0.0,
               sides: int = 2) -> TailProfile:
    return TailProfile((TailTerm(coef, gamma, shift),), start, sides)


@dataclass(frozen=True)
class WeightSpec:
    """Block power weights |x_j|^(+beta_j) / |x_j|^(-alpha_j) plus options.

    ``alpha``/``beta`` are per-block exponents subject to the standing
    hypotheses alpha_j, beta_j in [0,1), alpha_j + beta_j <= 1.  ``theta``
    switches on the slowly varying factor max(|log|x_j||**theta_j, 1) per
    block.  ``mu`` is the unconstrained radial measure exponent used by the
    ``radial-mu`` side.
    """

    alpha: tuple[float, ...] = (0.0,)
    beta: tuple[float, ...] = (0.0,)
    theta: tuple[float, ...] | None = None
    mu: float = 0.0

    def __post_init__(self):
        if len(self.alpha) != len(self.beta):
            raise ConfigurationError("alpha and beta must have equal length")
        for a, b in zip(self.alpha, self.beta):
            if not (0 <= a < 1 and 0 <= b < 1 and a + b <= 1):
                raise DomainError(
                    f"weights need alpha,beta in [0,1) with alpha+beta<=1, got {a}, {b}")
        if self.theta is not None:
            if len(self.theta) != len(self.alpha):
                raise ConfigurationError("theta length must match alpha/beta")
            if any(t < 0 for t in self.theta):
                raise DomainError("theta exponents must be >= 0")

    @property
    def blocks(self) -> int:
        return len(self.alpha)

    def to_json(self) -> dict:
        d = {"alpha": list(self.alpha), "beta": list(self.beta), "mu": self.mu}
        if self.theta is not None:
            d["theta"] = list(self.theta)
        return d

    @staticmethod
    def from_json(d: dict) -> "WeightSpec":
        return WeightSpec(alpha=tuple(d.get("alpha", (0.0,))),
                          beta=tuple(d.get("beta", (0.0,))),
                          theta=tuple(d["theta"]) if d.get("theta") else None,
                          mu=float(d.get("mu", 0.0)))


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function at cell centers of a uniform box grid.

    ``lo``/``hi`` are per-axis box edges; symmetric boxes use lo = -R.  The
    axes are grouped into contiguous blocks ``blocks = (m_1, ..., m_l)`` with
    sum m_j = n, matching the block structure of weights and mixed norms.
    """

    samples: np.ndarray
    lo: tuple[float, ...]
    hi: tuple[float, ...]
    blocks: tuple[int, ...]
    label: str = ""
    profile: str | None = None
    tail: TailProfile | None = None

    def __post_init__(self):
        arr = np.asarray(self.samples)
        if arr.dtype.kind not in "fc":
            arr = arr.astype(float)
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        n = arr.ndim
        if len(self.lo) != n or len(self.hi) != n:
            raise ConfigurationError("lo/hi length must equal sample dimension")
        if sum(self.blocks) != n:
            raise ConfigurationError(
                f"block structure {self.blocks} does not sum to dimension {n}")
        if any(m < 1 for m in self.blocks):
            raise ConfigurationError("every block must contain at least one axis")
        for ax in range(n):
            if arr.shape[ax] < 2:
                raise ConfigurationError("need at least 2 samples per axis")
            if not self.hi[ax] > self.lo[ax]:
                raise ConfigurationError("box edges must satisfy lo < hi")
        if not np.all(np.isfinite(arr)):
            raise InvariantViolation("samples must be finite")
        for ax in range(n):
            c = self.axis_centers(ax)
            if np.any(c == 0.0):
                raise InvariantViolation(
                    "a cell center sits exactly at the origin; "
                    "use an even sample count on symmetric boxes")
        if self.tail is not None and n != 1:
            raise ConfigurationError("analytic tails are supported in n=1 only")
        # TODO: n>=2 tail corrections need the D-set solid-angle factor.

    # -- geometry ----------------------------------------------------------

    @property
    def n(self) -> int:
        return self.samples.ndim

    @property
    def shape(self) -> tuple[int, ...]:
        return self.samples.shape

    @property
    def h(self) -> tuple[float, ...]:
        return tuple((self.hi[ax] - self.lo[ax]) / self.shape[ax]
                     for ax in range(self.n))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.h))

    @property
    def is_complex(self) -> bool:
        return self.samples.dtype.kind == "c"

    def axis_centers(self, ax: int) -> np.ndarray:
        nax = self.samples.shape[ax]
        h = (self.hi[ax] - self.lo[ax]) / nax
        return self.lo[ax] + (np.arange(nax) + 0.5) * h

    def block_axes(self) -> list[tuple[int, ...]]:
        out, k = [], 0
        for m in self.blocks:
            out.append(tuple(range(k, k + m)))
            k += m
        return out

    def block_radii(self, j: int) -> np.ndarray:
        """Euclidean norm |x_j| of block j, broadcast to the sample shape."""
        axes = self.block_axes()[j]
        sq = 0.0
        for ax in axes:
            c = self.axis_centers(ax)
            shape = [1] * self.n
            shape[ax] = c.size
            sq = sq + (c ** 2).reshape(shape)
        return np.sqrt(np.broadcast_to(sq, self.shape))

    def radius(self) -> np.ndarray:
        """Full Euclidean norm |x| broadcast to the sample shape."""
        sq = 0.0
        for ax in range(self.n):
            c = self.axis_centers(ax)
            shape = [1] * self.n
            shape[ax] = c.size
            sq = sq + (c ** 2).reshape(shape)
        return np.sqrt(np.broadcast_to(sq, self.shape))

    def with_samples(self, samples: np.ndarray, label: str | None = None,
                     tail: TailProfile | None = None,
                     keep_tail: bool = False) -> "GridFunction":
        return GridFunction(samples, self.lo, self.hi, self.blocks,
                            label if label is not None else self.label,
                            self.profile,
                            tail if tail is not None else (self.tail if keep_tail else None))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def sample(fn: Callable, R, N, n: int = 1, blocks: tuple[int, ...] | None = None,
               label: str = "", profile: str | None = None,
               tail: TailProfile | None = None) -> "GridFunction":
        """Sample ``fn`` on the symmetric box prod_j [-R_j, R_j] (cell centers).

        ``fn`` receives ``n`` broadcastable coordinate arrays.
        """
        Rs = _per_axis(R, n)
        Ns = _per_axis(N, n, integer=True)
        lo = tuple(-r for r in Rs)
        hi = tuple(Rs)
        axes = []
        for ax in range(n):
            h = (hi[ax] - lo[ax]) / Ns[ax]
            c = lo[ax] + (np.arange(Ns[ax]) + 0.5) * h
            shape = [1] * n
            shape[ax] = Ns[ax]
            axes.append(c.reshape(shape))
        vals = np.broadcast_to(np.asarray(fn(*axes)), tuple(Ns)).copy()
        return GridFunction(vals, lo, hi,
                            blocks if blocks is not None else tuple([1] * n),
                            label, profile, tail)

    @staticmethod
    def half_line(fn: Callable, length: float, N: int, label: str = "",
                  profile: str | None = None,
                  tail: TailProfile | None = None) -> "GridFunction":
        """Sample a 1-d function on (0, length] at cell centers."""
        h = length / N
        x = (np.arange(N) + 0.5) * h
        return GridFunction(np.asarray(fn(x)), (0.0,), (length,), (1,),
                            label, profile, tail)

    # -- serialization -----------------------------------------------------

    def to_binary(self) -> bytes:
        kind = 1 if self.is_complex else 0
        out = io.BytesIO()
        out.write(_MAGIC)
        out.write(struct.pack("<HHB", self.n, len(self.blocks), kind))
        out.write(struct.pack(f"<{len(self.blocks)}H", *self.blocks))
        for ax in range(self.n):
            out.write(struct.pack("<ddQ", self.lo[ax], self.hi[ax], self.shape[ax]))
        data = np.ascontiguousarray(self.samples)
        if kind:
            data = data.astype("<c16").view("<f8")
        else:
            data = data.astype("<f8")
        out.write(data.tobytes(order="C"))
        return out.getvalue()

    @staticmethod
    def from_binary(raw: bytes) -> "GridFunction":
        buf = io.BytesIO(raw)
        if buf.read(len(_MAGIC)) != _MAGIC:
            raise ConfigurationError("not a glspace grid container")
        n, l, kind = struct.unpack("<HHB", buf.read(5))
        blocks = struct.unpack(f"<{l}H", buf.read(2 * l))
        lo, hi, shape = [], [], []
        for _ in range(n):
            a, b, m = struct.unpack("<ddQ", buf.read(24))
            lo.append(a)
            hi.append(b)
            shape.append(int(m))
        count = int(np.prod(shape)) * (2 if kind else 1)
        flat = np.frombuffer(buf.read(8 * count), dtype="<f8")
        if kind:
            flat = flat.view("<c16")
        return GridFunction(flat.reshape(shape).copy(), tuple(lo), tuple(hi),
                            tuple(blocks))

    def to_csv(self) -> str:
        if self.n > 2:
            raise ConfigurationError("CSV layout is defined for n <= 2 only")
        if self.is_complex:
            raise ConfigurationError("CSV layout stores real samples only")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.n == 1:
            w.writerow(["x", "value"])
            for x, v in zip(self.axis_centers(0), self.samples):
                w.writerow([repr(float(x)), repr(float(v))])
        else:
            w.writerow(["x", "y", "value"])
            xs, ys = self.axis_centers(0), self.axis_centers(1)
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    w.writerow([repr(float(x)), repr(float(y)),
                                repr(float(self.samples[i, j]))])
        return buf.getvalue()

    @staticmethod
    def from_csv(text: str, blocks: tuple[int, ...] | None = None) -> "GridFunction":
        rows = list(csv.reader(io.StringIO(text)))
        header = rows[0]
        ncols = len(header)
        if ncols not in (2, 3) or header[-1] != "value":
            raise ConfigurationError("CSV must have columns x[,y],value")
        data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float)
        n = ncols - 1
        axes = []
        for ax in range(n):
            u = np.unique(data[:, ax])
            d = np.diff(u)
            if u.size < 2 or not np.allclose(d, d[0], rtol=1e-9, atol=1e-12):
                raise ConfigurationError("CSV coordinates are not a uniform grid")
            axes.append(u)
        shape = tuple(a.size for a in axes)
        if data.shape[0] != int(np.prod(shape)):
            raise ConfigurationError("CSV rows do not fill the coordinate grid")
        vals = np.full(shape, np.nan)
        idx = tuple(np.searchsorted(axes[ax], data[:, ax]) for ax in range(n))
        vals[idx] = data[:, -1]
        lo = tuple(float(a[0] - (a[1] - a[0]) / 2) for a in axes)
        hi = tuple(float(a[-1] + (a[1] - a[0]) / 2) for a in axes)
        return GridFunction(vals, lo, hi, blocks or tuple([1] * n))


def _per_axis(v, n: int, integer: bool = False):
    if np.isscalar(v):
        vs = [v] * n
    else:
        vs = list(v)
        if len(vs) != n:
            raise ConfigurationError("per-axis parameter has wrong length")
    return [int(x) if integer else float(x) for x in vs]


# -- plain and weighted Lp norms --------------------------------------------

def lp_norm(f: GridFunction, p: float) -> float:
    """Midpoint-rule Lp norm with analytic tail correction when present.

    Computed in max-normalized form M * (sum (|f|/M)^p h^n)^(1/p) so that
    large exponents (GLS grids reach p ~ 1e3) neither underflow nor overflow.
    """
    if p < 1:
        raise DomainError(f"lp_norm needs p >= 1, got {p}")
    m = float(np.max(np.abs(f.samples))) if f.samples.size else 0.0
    if f.tail is not None:
        m = max(m, float(np.max(np.abs(f.tail.value(f.tail.start)))))
    if math.isinf(p) or m == 0.0:
        return m
    s = _fsum_pow(f.samples / m, p, f.cell_volume)
    if f.tail is not None:
        s += f.tail.p_integral(p, normalizer=m)
    return m * s ** (1.0 / p)


def _block_weight(f: GridFunction, exponents: Sequence[float], sign: float,
                  theta: Sequence[float] | None) -> np.ndarray:
    w = np.ones(f.shape)
    for j, e in enumerate(exponents):
        if e != 0.0:
            w = w * f.block_radii(j) ** (sign * e)
        if theta is not None and theta[j] > 0:
            r = f.block_radii(j)
            w = w * np.maximum(np.abs(np.log(r)) ** theta[j], 1.0)
    return w


def weighted_lp_norm(f: GridFunction, p: float, w: WeightSpec, side: str) -> float:
    """Weighted Lp norm per the declared side.

    side "beta-positive":  | prod_j |x_j|^{+beta_j} * f |_p
    side "alpha-negative": | prod_j |x_j|^{-alpha_j} * f |_p
    side "radial-mu":      [ int |f|^p |x|^mu dx ]^(1/p)
    """
    if p < 1:
        raise DomainError(f"weighted_lp_norm needs p >= 1, got {p}")
    if len(w.alpha) != len(f.blocks):
        raise ConfigurationError("weight block count does not match the function")
    if side == "beta-positive":
        wt = _block_weight(f, w.beta, +1.0, w.theta)
        tail_w, tail_mu = max(w.beta), 0.0
    elif side == "alpha-negative":
        wt = _block_weight(f, w.alpha, -1.0, w.theta)
        tail_w, tail_mu = -max(w.alpha), 0.0
    elif side == "radial-mu":
        wt = None
        tail_w, tail_mu = 0.0, w.mu
    else:
        raise ConfigurationError(f"unknown weight side {side!r}")
    if side == "radial-mu":
        weighted = np.abs(f.samples)
    else:
        weighted = wt * np.abs(f.samples)
    m = float(np.max(weighted)) if weighted.size else 0.0
    if f.tail is not None and tail_w >= 0:
        edge = float(np.max(np.abs(f.tail.value(f.tail.start))))
        m = max(m, f.tail.start ** tail_w * edge)
    if m == 0.0:
        return 0.0
    if side == "radial-mu":
        integrand = (weighted / m) ** p * f.radius() ** w.mu
        s = math.fsum(np.ascontiguousarray(integrand).ravel()) * f.cell_volume
    else:
        s = _fsum_pow(weighted / m, p, f.cell_volume)
    if f.tail is not None:
        if w.theta is not None and any(t > 0 for t in w.theta):
            raise ConfigurationError("analytic tails do not cover log-factor weights")
        s += f.tail.p_integral(p, weight_exponent=tail_w,
                               measure_exponent=tail_mu, normalizer=m)
    return m * s ** (1.0 / p)


# -- rearrangement and Lorentz norms -----------------------------------------

def decreasing_rearrangement(f: GridFunction) -> GridFunction:
    """Descending sort of |samples|, each value carrying mass h^n.

    The result is a 1-d grid function on (0, measure-of-box] whose staircase
    is equimeasurable with |f|.  Ties keep stable (row-major) order.
    """
    vals = np.sort(np.abs(np.ascontiguousarray(f.samples)).ravel(),
                   kind="stable")[::-1].copy()
    dt = f.cell_volume
    return GridFunction(vals, (0.0,), (dt * vals.size,), (1,),
                        label=(f.label + "*") if f.label else "rearrangement")


def lorentz_norm(f: GridFunction, p: float, q: float) -> float:
    """Lorentz (quasi-)norm |f|_{p,q} from the decreasing rearrangement.

    The staircase rearrangement makes the t-integral exact per cell:
    int t^{q/p-1} dt integrates in closed form on each flat piece.  q < 1 is
    accepted as a quasi-norm (reports flag it; the triangle inequality fails).
    """
    if not (1 <= p):
        raise DomainError(f"lorentz_norm needs 1 <= p <= inf, got p={p}")
    if not (0 < q):
        raise DomainError(f"lorentz_norm needs 0 < q <= inf, got q={q}")
    star = decreasing_rearrangement(f)
    v = star.samples
    dt = star.h[0]
    edges = np.arange(v.size + 1) * dt
    if math.isinf(q):
        if math.isinf(p):
            return float(v[0])
        sup = v * edges[1:] ** (1.0 / p)
        return float(np.max(sup))
    nz = v > 0
    if not np.any(nz):
        return 0.0
    if math.isinf(p):
        if v[0] > 0:
            return math.inf
        return 0.0
    s = q / p
    pieces = (p / q) * np.diff(edges ** s)
    return math.fsum((v[nz] ** q) * pieces[nz]) ** (1.0 / q)


# -- anisotropic (mixed) norms ------------------------------------------------

def anisotropic_norm(f: GridFunction, p_vec: Sequence[float],
                     block_dims: Sequence[int] | None = None) -> float:
    """Iterated mixed norm, innermost integral over the first block.

    ``|f|_{p_1,...,p_l}`` integrates |f|^{p_1} over block 1, raises to
    p_2/p_1, integrates over block 2, and so on, finishing with the 1/p_l
    root.  Equals ``lp_norm`` when all p_j agree and factorizes over product
    functions.
    """
    blocks = tuple(block_dims) if block_dims is not None else f.blocks
    if sum(blocks) != f.n:
        raise ConfigurationError(
            f"block structure {blocks} does not sum to dimension {f.n}")
    if len(p_vec) != len(blocks):
        raise ConfigurationError("p_vec length must equal the number of blocks")
    for p in p_vec:
        if p < 1 or math.isinf(p):
            raise DomainError("anisotropic exponents must be finite and >= 1")
    hs = f.h
    acc = np.abs(f.samples).astype(float) ** p_vec[0]
    offset = 0
    for j, m in enumerate(blocks):
        if j > 0:
            acc = acc ** (p_vec[j] / p_vec[j - 1])
        vol = float(np.prod([hs[offset + k] for k in range(m)]))
        acc = np.sum(acc, axis=tuple(range(m))) * vol
        offset += m
    return float(acc) ** (1.0 / p_vec[-1])

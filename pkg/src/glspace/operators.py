"""Concrete operators: Fourier, weighted Fourier, Hilbert, maximal, dilation,
and integral-kernel operators.

Fourier convention (the default, "unitary"):

    F[f](y) = (2 pi)^(-n/2) int e^{i x y} f(x) dx

realized as a modulated FFT on the cell-centered grid.  The frequency grid is
also cell-centered (spacing 2 pi / (2R) per axis), so no output sample sits at
y = 0 and discrete Plancherel holds exactly.  The "beckner" convention

    F[f](xi) = int e^{-2 pi i x xi} f(x) dx

is reachable by flag because the sharp Hausdorff-Young constant is stated in
it.  The Hilbert transform is the spectral multiplier -i sgn(xi) in the
analysis (e^{-i x xi}) domain; on the shifted frequency grid the multiplier
has unit modulus at every bin, so the discrete transform is an exact L2
isometry and an exact involution H(Hf) = -f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.ndimage import map_coordinates
from scipy.signal import fftconvolve

from .errors import ConfigurationError, DomainError, InvariantViolation
from .grids import (GridFunction, TailProfile, WeightSpec, anisotropic_norm,
                    power_tail)

_SQRT2PI = math.sqrt(2.0 * math.pi)


# -- Fourier ------------------------------------------------------------------

def _axis_transform(arr: np.ndarray, ax: int, lo: float, h: float,
                    sign: int, angular: bool) -> tuple[np.ndarray, float, float]:
    """One-axis continuum-transform approximation on cell-centered grids.

    angular=True computes (2 pi)^(-1/2) int e^{i sign x y} f(x) dx with output
    spacing 2 pi/(N h); angular=False computes int e^{2 pi i sign x xi} f dx
    with output spacing 1/(N h).  Returns (array, lo_out, h_out).
    """
    N = arr.shape[ax]
    k = np.arange(N)
    premod = np.exp(1j * sign * math.pi * k * (1 - N) / N)
    shape = [1] * arr.ndim
    shape[ax] = N
    work = arr * premod.reshape(shape)
    if sign > 0:
        core = np.fft.ifft(work, axis=ax) * N
    else:
        core = np.fft.fft(work, axis=ax)
    d_out = (2 * math.pi if angular else 1.0) / (N * h)
    freq = (k + 0.5 - N / 2) * d_out
    a = lo + h / 2
    unit = 1.0 if angular else 2 * math.pi
    postmod = np.exp(1j * sign * unit * a * freq)
    scale = h / _SQRT2PI if angular else h
    out = core * postmod.reshape(shape) * scale
    return out, float(-N * d_out / 2), float(d_out)


def _transform(f: GridFunction, sign: int, angular: bool) -> GridFunction:
    arr = f.samples.astype(complex)
    lo_out, hi_out = [], []
    for ax in range(f.n):
        arr, lo_ax, h_ax = _axis_transform(arr, ax, f.lo[ax], f.h[ax], sign, angular)
        lo_out.append(lo_ax)
        hi_out.append(lo_ax + h_ax * arr.shape[ax])
    return GridFunction(arr, tuple(lo_out), tuple(hi_out), f.blocks,
                        label=f"F[{f.label}]" if f.label else "")


def fourier(f: GridFunction, convention: str = "unitary") -> GridFunction:
    """Forward Fourier transform in the chosen convention."""
    if convention == "unitary":
        return _transform(f, +1, angular=True)
    if convention == "beckner":
        return _transform(f, -1, angular=False)
    raise ConfigurationError(f"unknown Fourier convention {convention!r}")


def fourier_inverse(g: GridFunction, convention: str = "unitary") -> GridFunction:
    """Inverse (conjugate) transform; exact round trip on symmetric boxes."""
    if convention == "unitary":
        return _transform(g, -1, angular=True)
    if convention == "beckner":
        return _transform(g, +1, angular=False)
    raise ConfigurationError(f"unknown Fourier convention {convention!r}")


def fourier_at(f: GridFunction, ys: np.ndarray, even: bool | None = None) -> np.ndarray:
    """Brute-force quadrature of the unitary transform at arbitrary frequencies.

    Serves as the slow oracle for :func:`fourier` and as the resolver for
    frequencies far below the FFT grid spacing.  When the function carries a
    power tail the truncated oscillatory remainder
    int_{|x|>R} cos(x y) f(x) dx is added by adaptive quadrature.
    """
    if f.n != 1:
        raise ConfigurationError("fourier_at is defined for n = 1")
    ys = np.asarray(ys, dtype=float)
    x = f.axis_centers(0)
    h = f.h[0]
    if even is None:
        v = f.samples
        even = bool(np.allclose(v, v[::-1], rtol=0, atol=0))
    if even and not f.is_complex:
        mask = x > 0
        xs = x[mask]
        vals = np.asarray(f.samples, dtype=float)[mask]
        out = np.empty(ys.size)
        chunk = max(1, int(4e6 // max(xs.size, 1)))
        for i0 in range(0, ys.size, chunk):
            yy = ys[i0:i0 + chunk]
            out[i0:i0 + chunk] = 2.0 * h * (np.cos(np.outer(yy, xs)) @ vals)
        result = out / _SQRT2PI
    else:
        phases = np.exp(1j * np.outer(ys, x))
        result = (phases @ f.samples.astype(complex)) * h / _SQRT2PI
    if f.tail is not None:
        result = result + _oscillatory_tail(f.tail, ys) / _SQRT2PI
    return result


def _oscillatory_tail(tail: TailProfile, ys: np.ndarray) -> np.ndarray:
    """int over the tail region of cos(x y) * tail(x) dx (two-sided tails
    double the half-line integral).

    Pure 1/x tails reduce to the cosine integral -Ci(start*|y|), evaluated
    vectorized; other powers fall back to adaptive oscillatory quadrature.
    """
    from scipy.special import sici

    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    total = np.zeros(ys.shape)
    for t in tail.terms:
        if t.gamma == 1.0 and t.shift == 0.0:
            vals = np.empty(ys.shape)
            nz = ys != 0
            vals[nz] = -t.coef * sici(tail.start * np.abs(ys[nz]))[1]
            if np.any(~nz):
                raise DomainError("the 1/x oscillatory tail diverges at y = 0")
            total += vals
        else:
            for i, y in enumerate(ys):
                if y == 0:
                    val, _ = quad(lambda x: t.coef * (t.shift + x) ** (-t.gamma),
                                  tail.start, np.inf, limit=200)
                else:
                    val, _ = quad(lambda x: t.coef * (t.shift + x) ** (-t.gamma),
                                  tail.start, np.inf, weight="cos",
                                  wvar=float(abs(y)), limit=400)
                total[i] += val
    return total * (2.0 if tail.sides == 2 else 1.0)


# -- weighted Fourier ----------------------------------------------------------

def weighted_fourier(f: GridFunction, w: WeightSpec, output_sign: int = +1,
                     convention: str = "unitary") -> GridFunction:
    """Double-weight Fourier transform.

    output_sign=+1 realizes |x|^{+alpha} F[|y|^{beta} f] (the transform as
    defined); output_sign=-1 realizes |y|^{-alpha} F[|x|^{beta} f] (the form
    the two-weight inequality is stated in).  Both are exposed because the
    source formulas use both sign conventions.
    """
    if output_sign not in (+1, -1):
        raise ConfigurationError("output_sign must be +1 or -1")
    if len(w.alpha) != len(f.blocks):
        raise ConfigurationError("weight block count does not match the function")
    win = np.ones(f.shape)
    for j, b in enumerate(w.beta):
        if b != 0:
            win = win * f.block_radii(j) ** b
    g = fourier(f.with_samples(f.samples * win), convention)
    wout = np.ones(g.shape)
    for j, a in enumerate(w.alpha):
        if a != 0:
            wout = wout * g.block_radii(j) ** (output_sign * a)
    return g.with_samples(g.samples * wout,
                          label=f"F_w[{f.label}]" if f.label else "")


# -- Hilbert transform ---------------------------------------------------------

def hilbert_transform(f: GridFunction) -> GridFunction:
    """Spectral-multiplier Hilbert transform (principal value of 1/(pi x)).

    Multiplier -i sgn(xi) applied between the analysis/synthesis transform
    pair.  The shifted frequency grid contains no zero bin for even N, so the
    discrete operator is an exact isometry; an odd-N zero bin maps to 0.
    """
    if f.n != 1:
        raise ConfigurationError("the Hilbert transform is one-dimensional")
    if abs(f.lo[0] + f.hi[0]) > 1e-12 * max(1.0, abs(f.hi[0])):
        raise ConfigurationError("hilbert_transform expects a symmetric box")
    spec = _transform(f, -1, angular=True)
    xi = spec.axis_centers(0)
    mult = -1j * np.sign(xi)
    out = _transform(spec.with_samples(spec.samples * mult), +1, angular=True)
    samples = out.samples.real if not f.is_complex else out.samples
    return GridFunction(samples, f.lo, f.hi, f.blocks,
                        label=f"H[{f.label}]" if f.label else "")


# -- Hardy-Littlewood maximal function ------------------------------------------

def maximal_hl(f: GridFunction, radii: Sequence[int] | None = None) -> GridFunction:
    """Centered maximal function over discrete balls of radius k*h.

    At each sample the value is the max over k of the average of |f| on the
    cells whose centers lie within k*h (k = 0 included, so M f >= |f|
    everywhere).  Cells outside the box contribute zero mass but count toward
    the ball measure, consistent with extending f by zero.
    """
    absf = np.abs(f.samples).astype(float)
    if f.n == 1:
        N = f.shape[0]
        ks = np.asarray(radii if radii is not None else range(1, N + 1), dtype=int)
        S = np.concatenate([[0.0], np.cumsum(absf)])
        idx = np.arange(N)
        out = absf.copy()  # the radius -> 0 ball: M f >= |f| exactly
        for k in ks:
            if k == 0:
                continue
            hi = np.minimum(idx + k + 1, N)
            lo = np.maximum(idx - k, 0)
            out = np.maximum(out, (S[hi] - S[lo]) / (2 * k + 1))
        return f.with_samples(out, label=f"M[{f.label}]" if f.label else "")
    hs = f.h
    if not np.allclose(hs, hs[0], rtol=1e-12):
        raise ConfigurationError("n>=2 maximal function needs equal spacing per axis")
    N = max(f.shape)
    ks = np.asarray(radii if radii is not None else range(1, N + 1), dtype=int)
    out = absf.copy()
    grids_ = np.ogrid[tuple(slice(-(n - 1), n) for n in f.shape)]
    dist2 = sum(g.astype(float) ** 2 for g in grids_)
    for k in ks:
        if k == 0:
            continue
        mask = (dist2 <= k * k).astype(float)
        count = mask.sum()
        avg = fftconvolve(absf, mask, mode="same") / count
        out = np.maximum(out, avg)
    return f.with_samples(out, label=f"M[{f.label}]" if f.label else "")


# -- dilation -------------------------------------------------------------------

def _per_block_lambdas(f: GridFunction, lam) -> list[float]:
    if np.isscalar(lam):
        lams = [float(lam)] * len(f.blocks)
    else:
        lams = [float(v) for v in lam]
        if len(lams) != len(f.blocks):
            raise ConfigurationError("one dilation scale per block is required")
    if any(v <= 0 for v in lams):
        raise DomainError("dilation scales must be positive")
    per_axis = []
    for m, v in zip(f.blocks, lams):
        per_axis.extend([v] * m)
    return per_axis


def dilate(f: GridFunction, lam, resample: bool = False) -> GridFunction:
    """x -> f(lambda_1 x_1, ..., lambda_l x_l) with per-block scales.

    Default rescales the box and keeps the samples (exact, the norm scaling
    laws hold to rounding).  ``resample=True`` interpolates back onto the
    original grid with clamped cubic interpolation.
    """
    per_axis = _per_block_lambdas(f, lam)
    if not resample:
        lo = tuple(l / v for l, v in zip(f.lo, per_axis))
        hi = tuple(u / v for u, v in zip(f.hi, per_axis))
        tail = f.tail.dilated(per_axis[0]) if f.tail is not None else None
        return GridFunction(f.samples, lo, hi, f.blocks, label=f.label,
                            profile=f.profile, tail=tail)
    coords = []
    for ax in range(f.n):
        target = f.axis_centers(ax) * per_axis[ax]
        coords.append((target - f.lo[ax]) / f.h[ax] - 0.5)
    mesh = np.meshgrid(*coords, indexing="ij")
    vals = map_coordinates(np.asarray(f.samples, dtype=float), mesh, order=3,
                           mode="constant", cval=0.0)
    vals = np.clip(vals, float(np.min(f.samples.real)), float(np.max(f.samples.real)))
    return f.with_samples(vals)


# -- convolution ------------------------------------------------------------------

def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    """Linear convolution (f*g)(x) = int f(t) g(x-t) dt on matching grids.

    Computed on the sum grid and averaged back onto f's grid (the sum of two
    cell centers falls on cell edges), so the result is second-order accurate.
    """
    if f.shape != g.shape or f.lo != g.lo or f.hi != g.hi:
        raise ConfigurationError("convolution needs identical grids")
    for ax in range(f.n):
        if abs(f.lo[ax] + f.hi[ax]) > 1e-12 * max(1.0, abs(f.hi[ax])):
            raise ConfigurationError("convolution expects symmetric boxes")
    full = fftconvolve(np.asarray(f.samples), np.asarray(g.samples), mode="full")
    full = full * f.cell_volume
    out = full
    for ax in range(f.n):
        N = f.shape[ax]
        # x_i sits halfway between sum-grid nodes k0 and k0+1
        start = int(math.floor(-f.lo[ax] / f.h[ax] - 0.5 + 1e-9))
        idx_a = [slice(None)] * out.ndim
        idx_b = [slice(None)] * out.ndim
        idx_a[ax] = slice(start, start + N)
        idx_b[ax] = slice(start + 1, start + 1 + N)
        out = 0.5 * (out[tuple(idx_a)] + out[tuple(idx_b)])
    return f.with_samples(out, label=f"({f.label}*{g.label})")


# -- integral kernels --------------------------------------------------------------

@dataclass(frozen=True)
class KernelFactory:
    """A two-variable kernel K(x, y) evaluable at sample-point pairs.

    ``fn(xs, ys)`` receives tuples of broadcastable coordinate arrays for the
    output variable x and input variable y.  ``homogeneity`` declares
    K(s x, s y) = s^deg K(x, y), validated on random pairs at construction
    for the homogeneous family.  ``singular_diagonal`` switches on 4-point
    cell refinement of the x = y cell in quadrature.
    """

    tag: str
    fn: Callable
    n: int = 1
    params: dict = field(default_factory=dict)
    homogeneity: float | None = None
    singular_diagonal: bool = False

    def __post_init__(self):
        if self.homogeneity is not None:
            rng = np.random.default_rng(7)
            xs = tuple(rng.uniform(0.3, 2.0, 16) for _ in range(self.n))
            ys = tuple(rng.uniform(0.3, 2.0, 16) for _ in range(self.n))
            base = np.asarray(self.fn(xs, ys), dtype=float)
            s = 1.7
            scaled = np.asarray(self.fn(tuple(s * x for x in xs),
                                        tuple(s * y for y in ys)), dtype=float)
            expect = s ** self.homogeneity * base
            denom = np.maximum(np.abs(expect), 1e-30)
            if np.max(np.abs(scaled - expect) / denom) > 1e-9:
                raise InvariantViolation(
                    f"kernel {self.tag!r} violates declared homogeneity")

    def eval(self, xs, ys) -> np.ndarray:
        return np.asarray(self.fn(xs, ys), dtype=float)

    @staticmethod
    def hardy() -> "KernelFactory":
        """K(x, y) = (1/x) 1{0 < y < x} on the half line (degree -1)."""

        def fn(xs, ys):
            x, y = xs[0], ys[0]
            return np.where((y > 0) & (y < x), 1.0 / x, 0.0)

        return KernelFactory("hardy_steinweiss", fn, 1, homogeneity=-1.0,
                             singular_diagonal=True)

    @staticmethod
    def okikiolu(h_profile: Callable[[np.ndarray], np.ndarray], mu: float) -> "KernelFactory":
        """K(x, t) = |t|^{mu-1} h(x t)."""

        def fn(xs, ys):
            x, t = xs[0], ys[0]
            return np.abs(t) ** (mu - 1.0) * h_profile(x * t)

        return KernelFactory("okikiolu", fn, 1, {"mu": mu})

    @staticmethod
    def riesz_potential(beta: float, n: int = 1,
                        a: Callable | None = None,
                        b: Callable | None = None) -> "KernelFactory":
        """K(x, y) = a(x) b(y) |x - y|^{beta - n}, beta in (0, n)."""
        if not 0 < beta < n:
            raise DomainError("riesz potential needs beta in (0, n)")

        def fn(xs, ys):
            d2 = sum((x - y) ** 2 for x, y in zip(xs, ys))
            with np.errstate(divide="ignore"):
                out = d2 ** ((beta - n) / 2.0)
            if a is not None:
                out = out * a(*xs)
            if b is not None:
                out = out * b(*ys)
            return out

        return KernelFactory("riesz_potential", fn, n, {"beta": beta, "n": n},
                             singular_diagonal=True)

    @staticmethod
    def rank_one(a: Callable, b: Callable, n: int = 1) -> "KernelFactory":
        def fn(xs, ys):
            return a(*xs) * b(*ys)

        return KernelFactory("rank_one", fn, n)

    @staticmethod
    def from_callable(fn: Callable, n: int = 1, tag: str = "custom",
                      homogeneity: float | None = None,
                      singular_diagonal: bool = False) -> "KernelFactory":
        return KernelFactory(tag, fn, n, homogeneity=homogeneity,
                             singular_diagonal=singular_diagonal)


_REFINE_1D = np.array([-0.375, -0.125, 0.125, 0.375])


def kernel_apply(kernel: KernelFactory | GridFunction, f: GridFunction,
                 out_grid: GridFunction | None = None) -> GridFunction:
    """W[f](x) = int K(x, y) f(y) dy by midpoint quadrature.

    Kernel tables (two-variable grid functions with blocks (n, n)) use their
    own x-grid; factories default to f's grid.  Diagonal cells of factories
    declared singular are averaged over a 4-point refinement.
    """
    if isinstance(kernel, GridFunction):
        if len(kernel.blocks) != 2:
            raise ConfigurationError("kernel tables need blocks (n_x, n_y)")
        nx, ny = kernel.blocks
        if ny != f.n:
            raise ConfigurationError("kernel y-block does not match the input")
        mat = kernel.samples.reshape(int(np.prod(kernel.shape[:nx])), -1)
        vec = np.asarray(f.samples, dtype=float).ravel()
        if mat.shape[1] != vec.size:
            raise ConfigurationError("kernel y-grid does not match the input grid")
        out = mat @ vec * f.cell_volume
        lo, hi = kernel.lo[:nx], kernel.hi[:nx]
        shape = kernel.shape[:nx]
        return GridFunction(out.reshape(shape), lo, hi, tuple([1] * nx),
                            label=f"W[{f.label}]" if f.label else "")
    target = out_grid if out_grid is not None else f
    xs_axes = [target.axis_centers(ax) for ax in range(target.n)]
    ys_axes = [f.axis_centers(ax) for ax in range(f.n)]
    out_flat = np.zeros(int(np.prod(target.shape)))
    vec = np.asarray(f.samples, dtype=float).ravel()
    xmesh = np.meshgrid(*xs_axes, indexing="ij")
    ymesh = np.meshgrid(*ys_axes, indexing="ij")
    xflat = [m.ravel() for m in xmesh]
    yflat = [m.ravel() for m in ymesh]
    nout = out_flat.size
    nin = vec.size
    chunk = max(1, int(4e6 // max(nin, 1)))
    same_grid = (target.shape == f.shape and target.lo == f.lo and target.hi == f.hi)
    for i0 in range(0, nout, chunk):
        i1 = min(i0 + chunk, nout)
        xs = tuple(xf[i0:i1][:, None] for xf in xflat)
        ys = tuple(yf[None, :] for yf in yflat)
        block = kernel.eval(xs, ys)
        if kernel.singular_diagonal and same_grid:
            rows = np.arange(i0, i1)
            refined = np.zeros(i1 - i0)
            for off in _REFINE_1D:
                ys_ref = tuple(yf[rows] + off * h
                               for yf, h in zip(yflat, f.h))
                xs_ref = tuple(xf[rows] for xf in xflat)
                refined += kernel.eval(xs_ref, ys_ref)
            block[np.arange(i1 - i0), rows] = refined / _REFINE_1D.size
        out_flat[i0:i1] = block @ vec
    out_flat *= f.cell_volume
    return target.with_samples(out_flat.reshape(target.shape),
                               label=f"W[{f.label}]" if f.label else "")


def kernel_table(kernel: KernelFactory, x_box: tuple[float, float],
                 y_box: tuple[float, float], N: int) -> GridFunction:
    """Sample a factory kernel on a (half-line) product box as a 2-var table."""
    hx = (x_box[1] - x_box[0]) / N
    hy = (y_box[1] - y_box[0]) / N
    x = x_box[0] + (np.arange(N) + 0.5) * hx
    y = y_box[0] + (np.arange(N) + 0.5) * hy
    vals = kernel.eval((x[:, None],), (y[None, :],))
    if kernel.singular_diagonal and abs(hx - hy) < 1e-15 and abs(
            x_box[0] - y_box[0]) < 1e-15:
        refined = np.zeros(N)
        for off in _REFINE_1D:
            refined += kernel.eval((x,), (y + off * hy,))
        vals[np.arange(N), np.arange(N)] = refined / _REFINE_1D.size
    return GridFunction(vals, (x_box[0], y_box[0]), (x_box[1], y_box[1]),
                        (1, 1), label=kernel.tag)


def kernel_norm_bound(kernel: KernelFactory | GridFunction, p: float, q: float,
                      x_box: tuple[float, float] = (0.0, 1.0),
                      y_box: tuple[float, float] = (0.0, 1.0),
                      N: int = 256) -> float:
    """Mixed-norm bound |K|_{q1, p}, q1 = q/(q-1), for |W|(L_p -> L_q).

    The mixed norm integrates the x variable innermost with exponent q1 and
    the y variable outermost with exponent p (the reading fixed by the
    rank-one factorization |a|_{q1} |b|_p).  Non-integrable kernels return
    +inf, a vacuous bound.
    """
    if not q > 1:
        raise DomainError("kernel_norm_bound needs q > 1")
    if not (1 < p < math.inf):
        raise DomainError("kernel_norm_bound needs p in (1, inf)")
    q1 = q / (q - 1.0)
    if isinstance(kernel, GridFunction):
        table = kernel
    else:
        table = kernel_table(kernel, x_box, y_box, N)
    nx, ny = table.blocks
    val = anisotropic_norm(table, (q1, p), block_dims=(nx, ny))
    if not math.isfinite(val):
        return math.inf
    return val


# -- operator descriptions -----------------------------------------------------

@dataclass(frozen=True)
class OperatorSpec:
    """Tagged description of one concrete operator.

    kind in {"fourier", "weighted_fourier", "hilbert", "maximal_hl",
    "dilation", "convolution", "integral_kernel"}.
    """

    kind: str
    weight: WeightSpec | None = None
    lambdas: tuple[float, ...] | None = None
    convention: str = "unitary"
    output_sign: int = +1
    kernel: KernelFactory | GridFunction | None = None

    def __post_init__(self):
        if self.kind not in ("fourier", "weighted_fourier", "hilbert",
                             "maximal_hl", "dilation", "convolution",
                             "integral_kernel", "identity"):
            raise ConfigurationError(f"unknown operator kind {self.kind!r}")
        if self.kind == "weighted_fourier" and self.weight is None:
            raise ConfigurationError("weighted_fourier needs a WeightSpec")
        if self.kind == "dilation":
            if self.lambdas is None or any(v <= 0 for v in self.lambdas):
                raise ConfigurationError("dilation needs positive scales")
        if self.kind in ("convolution", "integral_kernel") and self.kernel is None:
            raise ConfigurationError(f"{self.kind} needs a kernel")

    def to_json(self) -> dict:
        params: dict = {}
        if self.weight is not None:
            params["weight"] = self.weight.to_json()
        if self.lambdas is not None:
            params["lambdas"] = list(self.lambdas)
        if self.convention != "unitary":
            params["convention"] = self.convention
        if self.output_sign != +1:
            params["output_sign"] = self.output_sign
        if self.kernel is not None:
            if isinstance(self.kernel, KernelFactory):
                if self.kernel.tag == "hardy_steinweiss":
                    params["kernel"] = {"tag": "hardy"}
                elif self.kernel.tag == "riesz_potential":
                    params["kernel"] = {"tag": "riesz_potential",
                                        **self.kernel.params}
                else:
                    raise ConfigurationError(
                        f"kernel {self.kernel.tag!r} has no JSON form")
            else:
                raise ConfigurationError("table kernels serialize as binary grids")
        return {"kind": self.kind, "params": params}

    @staticmethod
    def from_json(d: dict) -> "OperatorSpec":
        params = d.get("params", {})
        kernel = None
        if "kernel" in params:
            kd = params["kernel"]
            if kd["tag"] == "hardy":
                kernel = KernelFactory.hardy()
            elif kd["tag"] == "riesz_potential":
                kernel = KernelFactory.riesz_potential(kd["beta"], kd.get("n", 1))
            else:
                raise ConfigurationError(f"unknown kernel tag {kd['tag']!r}")
        return OperatorSpec(
            kind=d["kind"],
            weight=WeightSpec.from_json(params["weight"]) if "weight" in params else None,
            lambdas=tuple(params["lambdas"]) if "lambdas" in params else None,
            convention=params.get("convention", "unitary"),
            output_sign=params.get("output_sign", +1),
            kernel=kernel)


def apply_operator(spec: OperatorSpec, f: GridFunction) -> GridFunction:
    if spec.kind == "identity":
        return f
    if spec.kind == "fourier":
        return fourier(f, spec.convention)
    if spec.kind == "weighted_fourier":
        return weighted_fourier(f, spec.weight, spec.output_sign, spec.convention)
    if spec.kind == "hilbert":
        return hilbert_transform(f)
    if spec.kind == "maximal_hl":
        return maximal_hl(f)
    if spec.kind == "dilation":
        return dilate(f, spec.lambdas)
    if spec.kind == "convolution":
        return convolve(f, spec.kernel)
    if spec.kind == "integral_kernel":
        return kernel_apply(spec.kernel, f)
    raise ConfigurationError(f"unknown operator kind {spec.kind!r}")

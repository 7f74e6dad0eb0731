"""Named correlation kernels.

Orthogonal-polynomial forms (Krawtchouk, Hermite), double-contour forms
(extended Krawtchouk, right/down path kernels, Schur/Meixner), the discrete
Bessel and Airy kernels, and the scaling maps between model and limit
coordinates.

All contour kernels here have separable generating functions
F(z,w) = Fz(z)Fw(w), so a kernel value is

    K = -phi * [r<s] + (1/m^2) sum_{j,k} z_j^{pz} Fz(z_j) w_k^{pw} Fw(w_k)
                                         * z_j/(z_j - w_k)

on trapezoid circle grids with |w| < |z|.  Radii are placed by a minimax
rule: minimize the largest sampled magnitude of z^p Fz(z) over the admissible
annulus, which controls the cancellation in the double sum.  Symbols are
evaluated through complex logarithms so large integer powers never overflow.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy import special

from .numerics import binomial_weight, composite_gauss_legendre
from .processes import KernelHandle, NumericalConsistencyError

__all__ = [
    "AnnulusError", "SymbolFactors", "ContourKernelSpec", "ScalingMap",
    "stieltjes_system", "krawtchouk_kernel", "hermite_kernel",
    "extended_krawtchouk", "rightdown_kernel", "schur_kernel",
    "meixner_kernel", "discrete_bessel", "airy_kernel", "airy_kernel_handle",
    "extended_airy", "extended_airy_matrix", "airy_contour",
    "extended_airy_contour", "extended_airy_contour_matrix",
    "krawtchouk_line_contour",
    "krawtchouk_bessel_prelimit", "scaling_constants",
]


class AnnulusError(ValueError):
    """Requested contour radii fall outside the annulus of analyticity."""


# ---------------------------------------------------------------------------
# Orthonormal systems (Stieltjes / Lanczos with full reorthogonalization)

def stieltjes_system(nodes, weights, kmax):
    """Orthonormal q-functions q_k = p_k * sqrt(w) on a weighted point set.

    Returns (Q, alphas, betas) where Q[k] is the k-th q-vector and
    alphas/betas are the three-term recurrence coefficients,
    x q_k = sqrt(betas[k+1]) q_{k+1} + alphas[k] q_k + sqrt(betas[k]) q_{k-1},
    with betas[0] the total weight.
    """
    x = np.asarray(nodes, dtype=float)
    w = np.asarray(weights, dtype=float)
    if kmax < 1 or kmax > x.size:
        raise ValueError("kmax must lie in 1..#nodes")
    beta0 = float(w.sum())
    Q = np.empty((kmax, x.size))
    alphas = np.empty(kmax)
    betas = np.empty(kmax + 1)
    betas[0] = beta0
    Q[0] = np.sqrt(w / beta0)
    sb = 0.0
    for k in range(kmax):
        alphas[k] = float(np.dot(x * Q[k], Q[k]))
        if k + 1 == kmax:
            betas[k + 1] = np.nan
            break
        r = x * Q[k] - alphas[k] * Q[k]
        if k:
            r -= sb * Q[k - 1]
        r -= Q[:k + 1].T @ (Q[:k + 1] @ r)  # full reorthogonalization
        sb = float(np.linalg.norm(r))
        if sb == 0.0:
            raise NumericalConsistencyError(
                f"orthonormalization broke down at degree {k + 1}")
        betas[k + 1] = sb * sb
        Q[k + 1] = r / sb
    return Q, alphas, betas


def krawtchouk_kernel(n, r, q):
    """Projection kernel of the first r Krawtchouk polynomials on {0..n}.

    K(x,y) = sum_{k<r} p_k(x)p_k(y) sqrt(w(x)w(y)) with w the binomial(n,q)
    point mass.
    """
    if not 1 <= r <= n + 1:
        raise ValueError(f"r={r} out of range 1..{n + 1}")
    nodes = np.arange(n + 1)
    w = binomial_weight(n, nodes, q)
    Q, _, _ = stieltjes_system(nodes, w, r)
    resid = np.abs(Q @ Q.T - np.eye(r)).max()
    if resid > 1e-9:
        raise NumericalConsistencyError(
            f"orthonormality residual {resid:.2e} above 1e-9")
    Kmat = Q.T @ Q

    def evaluate(x, y):
        if 0 <= x <= n and 0 <= y <= n:
            return float(Kmat[int(x), int(y)])
        return 0.0

    def batch(xs, ys):
        xs = np.asarray(xs, dtype=int)
        ys = np.asarray(ys, dtype=int)
        out = np.zeros((xs.size, ys.size))
        okx = (xs >= 0) & (xs <= n)
        oky = (ys >= 0) & (ys <= n)
        out[np.ix_(okx, oky)] = Kmat[np.ix_(xs[okx], ys[oky])]
        return out

    return KernelHandle(evaluate, state="discrete", hermitian=True,
                        batch=batch)


def hermite_kernel(N):
    """GUE eigenvalue kernel K_N(x,y) = sum_{j<N} p_j(x)p_j(y)e^{-(x^2+y^2)/2}.

    The p_j are orthonormal w.r.t. e^{-x^2}; their recurrence coefficients
    come from the Stieltjes procedure on a Gauss-Hermite rule, and off-grid
    values from the three-term recurrence applied to p_k(x)e^{-x^2/2}.
    """
    if not 1 <= N <= 60:
        raise ValueError("N must lie in 1..60")
    nodes, wts = hermgauss(N + 40)
    _, alphas, betas = stieltjes_system(nodes, wts, N + 1)

    def qtilde(xs):
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        out = np.empty((N, xs.size))
        out[0] = np.exp(-0.5 * xs * xs) / math.sqrt(betas[0])
        prev = np.zeros(xs.size)
        for k in range(N - 1):
            nxt = ((xs - alphas[k]) * out[k]
                   - math.sqrt(betas[k]) * prev) / math.sqrt(betas[k + 1])
            prev = out[k]
            out[k + 1] = nxt
        return out

    def evaluate(x, y):
        return float(qtilde(x)[:, 0] @ qtilde(y)[:, 0])

    def batch(xs, ys):
        return qtilde(xs).T @ qtilde(ys)

    return KernelHandle(evaluate, state="continuous", hermitian=True,
                        batch=batch)


# ---------------------------------------------------------------------------
# Double-contour machinery

@dataclass
class ContourKernelSpec:
    """A tuned double-contour configuration for a separable F(z,w).

    fz_log/fw_log return the complex logarithm of the two factors; the
    windows are the open annuli available for each radius, and (rz, rw, m)
    the selected radii (rw < rz) and grid size.
    """

    fz_log: object
    fw_log: object
    z_window: tuple
    w_window: tuple
    rz: float = 0.0
    rw: float = 0.0
    m: int = 0

    def F(self, z, w):
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        return np.exp(self.fz_log(z) + self.fw_log(w))


def _grid(m):
    return np.exp(2j * np.pi * (np.arange(m) + 0.5) / m)


def _pick_radius(flog, exps, window, nr=48, ntheta=64, pads=(0.08, 0.08)):
    """Radius in `window` minimizing the peak of |z^p F(z)| over the circle.

    The scan works in log-magnitude so near-pole radii are rejected without
    ever overflowing.  `pads` keep the scan away from the window ends (as
    fractions of the log-width): radii hugging a pole make the trapezoid
    sum converge geometrically slowly, so pole ends get a generous margin.
    """
    lo, hi = window
    if not 0 < lo < hi:
        raise AnnulusError(f"empty radius window ({lo:.4g}, {hi:.4g})")
    le, he = math.log(lo), math.log(hi)
    width = he - le
    rs = np.exp(np.linspace(le + pads[0] * width, he - pads[1] * width, nr))
    Z = rs[:, None] * _grid(ntheta)[None, :]
    peak = np.real(flog(Z)).max(axis=1)
    cost = np.max([p * np.log(rs) + peak for p in np.atleast_1d(exps)],
                  axis=0)
    return float(rs[int(np.argmin(cost))])


def _real(val, what):
    val = complex(val)
    if abs(val.imag) > 1e-7 * max(1.0, abs(val.real)):
        raise NumericalConsistencyError(
            f"{what}: imaginary residue {val.imag:.2e}")
    return val.real


def _double_sum(spec, pzs, pws):
    """(1/m^2) U S V on the tuned grids; returns a complex matrix."""
    m = spec.m
    z = spec.rz * _grid(m)
    w = spec.rw * _grid(m)
    lz, lw = np.log(z), np.log(w)
    U = np.exp(np.asarray(pzs, dtype=float)[:, None] * lz[None, :]
               + spec.fz_log(z)[None, :]) * z[None, :]
    V = np.exp(np.asarray(pws, dtype=float)[:, None] * lw[None, :]
               + spec.fw_log(w)[None, :])
    T = np.empty((m, len(pws)), dtype=complex)
    for j0 in range(0, m, 1024):
        j1 = min(j0 + 1024, m)
        T[j0:j1] = (1.0 / (z[j0:j1, None] - w[None, :])) @ V.T
    return (U @ T) / (m * m)


def _tuned_spec(fz_log, fw_log, pzs, pws, z_window, w_window, sep=0.9):
    rz = _pick_radius(fz_log, pzs, z_window)
    whi = min(w_window[1], sep * rz)
    if not w_window[0] < whi:
        raise AnnulusError(
            f"no room for the inner contour below rz={rz:.4g}")
    # the upper w-bound is a separation cap, not a pole; keep only the
    # lower (pole) margin generous
    rw = _pick_radius(fw_log, pws, (w_window[0], whi), pads=(0.04, 0.005))
    return ContourKernelSpec(fz_log, fw_log, z_window, w_window, rz, rw, 0)


def _converged_sum(spec, pzs, pws, tol=1e-10, m0=256, mmax=8192):
    spec.m = m0
    prev = _double_sum(spec, pzs, pws)
    while spec.m < mmax:
        spec.m *= 2
        cur = _double_sum(spec, pzs, pws)
        scale = max(1.0, float(np.abs(cur).max()))
        if np.abs(cur - prev).max() <= tol * scale:
            return cur
        prev = cur
    warnings.warn(f"contour sum not stable at m={mmax}", RuntimeWarning)
    return prev


def _contour_value(fz_log, fw_log, pz, pw, z_window, w_window, name):
    spec = _tuned_spec(fz_log, fw_log, [pz], [pw], z_window, w_window)
    return _real(_converged_sum(spec, [pz], [pw])[0, 0], name)


def _contour_matrix(fz_log, fw_log, pzs, pws, z_window, w_window, name):
    reps_z = [min(pzs), max(pzs), 0.5 * (min(pzs) + max(pzs))]
    reps_w = [min(pws), max(pws), 0.5 * (min(pws) + max(pws))]
    spec = _tuned_spec(fz_log, fw_log, reps_z, reps_w, z_window, w_window)
    out = _converged_sum(spec, pzs, pws)
    if np.abs(out.imag).max() > 1e-7 * max(1.0, np.abs(out.real).max()):
        raise NumericalConsistencyError(
            f"{name}: imaginary residue {np.abs(out.imag).max():.2e}")
    return out.real


def _single_contour(f_log, p, window, name, tol=1e-12, m0=64, mmax=8192):
    r = _pick_radius(f_log, [p], window)
    m = m0
    z = r * _grid(m)
    prev = np.mean(np.exp(p * np.log(z) + f_log(z)))
    while m < mmax:
        m *= 2
        z = r * _grid(m)
        cur = np.mean(np.exp(p * np.log(z) + f_log(z)))
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return _real(cur, name)
        prev = cur
    warnings.warn(f"{name}: single contour not stable at m={mmax}",
                  RuntimeWarning)
    return _real(prev, name)


# ---------------------------------------------------------------------------
# Extended Krawtchouk kernel (Aztec diamond particle process)

def _kr_coef_neg(a_mp, A, r, m, eps):
    """Laurent coefficient of z^m in (1-az)^{-A} (1+a/z)^{-r}, a < |z| < 1/a.

    Both binomial series are expanded exactly; the j-sum converges like
    a^{2j} and is truncated once a decreasing term drops below eps * peak.
    """
    j = max(0, -m)
    total = mpmath.mpf(0)
    peak = mpmath.mpf(0)
    prev = None
    while True:
        term = (math.comb(r - 1 + j, j) * math.comb(A - 1 + m + j, m + j)
                * a_mp ** (m + 2 * j))
        if j % 2:
            term = -term
        total += term
        mag = abs(term)
        peak = max(peak, mag)
        if prev is not None and mag < prev and mag < eps * peak:
            return total
        prev = mag
        j += 1
        if j > m + 100000:
            raise NumericalConsistencyError(
                "Laurent coefficient series failed to converge")


def _kr_coef_pos(a_mp, B, s, m):
    """Laurent coefficient of w^m in (1-aw)^B (1+a/w)^s (finite sum)."""
    total = mpmath.mpf(0)
    for j in range(max(0, -m), min(s, B - m) + 1):
        term = math.comb(B, m + j) * math.comb(s, j) * a_mp ** (m + 2 * j)
        if (m + j) % 2:
            term = -term
        total += term
    return total


def extended_krawtchouk(n, a):
    """Layered kernel K(u,x; v,y) of the Aztec particle process, 0 < u,v < 2n.

    Built from the double contour representation with generating function

      F(z,w) = (1-aw)^{n-s+e2}(1+a/w)^s / [(1-az)^{n-r+e1}(1+a/z)^r],

    u = 2r - e1, v = 2s - e2, with the transition kernel phi subtracted for
    u < v.  Expanding the Cauchy factor geometrically (|w| < |z|) turns the
    double integral into a finite sum of products of Laurent coefficients of
    the two factors; the coefficient series are summed in extended precision
    because the individual coefficients reach binomial(n, n/2) size while the
    kernel value stays O(1).  a = 1 is evaluated at 1 - 1e-9 (continuity).
    """
    if not 0.0 < a <= 1.0:
        raise ValueError("a must lie in (0, 1]")
    if a == 1.0:
        a = 1.0 - 1e-9
    cache = {}
    coef_cache = {}
    dps = 30 + n
    eps = mpmath.mpf(10) ** (-(dps - 8))

    def coef_neg(a_mp, A, r, m):
        key = (A, r, m)
        if key not in coef_cache:
            coef_cache[key] = _kr_coef_neg(a_mp, A, r, m, eps)
        return coef_cache[key]

    def evaluate(z1, z2):
        (u, x), (v, y) = z1, z2
        u, x, v, y = int(u), int(x), int(v), int(y)
        if not (1 <= u <= 2 * n - 1 and 1 <= v <= 2 * n - 1):
            raise ValueError("layers must lie in 1..2n-1")
        key = (u, x, v, y)
        if key in cache:
            return cache[key]
        r, s = (u + 1) // 2, (v + 1) // 2
        e1, e2 = 2 * r - u, 2 * s - v
        A, B = n - r + e1, n - s + e2
        with mpmath.workdps(dps):
            a_mp = mpmath.mpf(a)
            total = mpmath.mpf(0)
            # sum_k fz[x+k] fw[-y-k]; fw has support -s..B
            for k in range(max(0, -y - B), s - y + 1):
                total += (coef_neg(a_mp, A, r, x + k)
                          * _kr_coef_pos(a_mp, B, s, -y - k))
            if u < v:
                # phi_{u,v}: the z^{x-y} coefficient of
                # (1-az)^{r-s+e2-e1} (1+a/z)^{s-r}
                C, D = r - s + e2 - e1, s - r
                m0 = x - y
                if C >= 0:
                    for j in range(max(0, -m0), min(D, C - m0) + 1):
                        term = (math.comb(D, j) * math.comb(C, m0 + j)
                                * a_mp ** (m0 + 2 * j))
                        total -= -term if (m0 + j) % 2 else term
                else:
                    for j in range(max(0, -m0), D + 1):
                        if m0 + j < 0:
                            continue
                        total -= (math.comb(D, j)
                                  * math.comb(-C - 1 + m0 + j, m0 + j)
                                  * a_mp ** (m0 + 2 * j))
            val = float(total)
        cache[key] = val
        return val

    return KernelHandle(evaluate, state="discrete", hermitian=False)


# ---------------------------------------------------------------------------
# Right/down path kernels on a partition shape (and their Schur restriction)

@dataclass(frozen=True)
class SymbolFactors:
    """Per-column symbol data for the column graph of a shape.

    Column t = -L..K-1 carries either up-edges with weight a_i or down-edges
    with weight b_i; kinds[t + L] is ("up"|"down", parameter).
    """

    kinds: tuple
    L: int

    def __post_init__(self):
        for kind, p in self.kinds:
            if kind not in ("up", "down"):
                raise ValueError(f"unknown column kind {kind!r}")
            if not 0.0 <= p < 1.0:
                raise ValueError("column parameters must lie in [0,1)")

    @property
    def K(self):
        return len(self.kinds) - self.L

    def column(self, t):
        return self.kinds[t + self.L]

    def fplus_log(self, t, z):
        """log f_t^+(z): (1-a)/(1-az) on up columns, 1 on down columns."""
        kind, p = self.column(t)
        if kind == "up":
            return math.log(1.0 - p) - np.log(1 - p * z)
        return np.zeros(np.shape(z), dtype=complex)

    def fminus_log(self, t, z):
        """log f_t^-(z): (1-b)/(1-b/z) on down columns, 1 on up columns."""
        kind, p = self.column(t)
        if kind == "down":
            return math.log(1.0 - p) - np.log(1 - p / z)
        return np.zeros(np.shape(z), dtype=complex)

    @classmethod
    def from_partition(cls, lam, a, b):
        from .growth.bijection import column_kinds
        kinds = []
        for kind, i in column_kinds(lam):
            params = a if kind == "up" else b
            if i > len(params):
                raise ValueError("parameter list shorter than the shape")
            kinds.append((kind, float(params[i - 1])))
        return cls(tuple(kinds), lam.length)


def rightdown_kernel(lam, a, b):
    """Layered kernel of the non-intersecting right/down path family on S(lam).

    Layers r run over -L..K (K = lam_1, L = l(lam)); positions are integers.
    The generating function is assembled column by column from the up/down
    symbol factors; the one-sided geometric transition kernel is subtracted
    for r < s.
    """
    from .growth.partition import Partition
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    sf = SymbolFactors.from_partition(lam, a, b)
    K_, L = sf.K, sf.L
    cols = [sf.column(t) for t in range(-L, K_)]

    def window(kindsel, ts):
        ups = [p for t in ts for k, p in [cols[t + L]] if k == "up"]
        downs = [p for t in ts for k, p in [cols[t + L]] if k == "down"]
        if kindsel == "w":       # poles at the up parameters
            lo = max(ups) if ups else 0.0
            return (max(1e-4, lo * 1.02 + 1e-6), 8.0)
        lo_up = max(ups) if ups else 0.0
        hi = min((1.0 / p for p in downs if p > 0), default=8.0)
        return (max(1e-4, lo_up * 1.25 + 1e-6), min(hi, 8.0))

    cache = {}

    def evaluate(z1, z2):
        (r, x), (s, y) = z1, z2
        r, x, s, y = int(r), int(x), int(s), int(y)
        if not (-L <= r <= K_ and -L <= s <= K_):
            raise ValueError(f"layers must lie in {-L}..{K_}")
        key = (r, x, s, y)
        if key in cache:
            return cache[key]

        def fz_log(z):
            out = np.zeros(np.shape(z), dtype=complex)
            for t in range(r, K_):
                out += sf.fminus_log(t, 1.0 / z)
            for t in range(-L, r):
                out -= sf.fplus_log(t, 1.0 / z)
            return out

        def fw_log(w):
            out = np.zeros(np.shape(w), dtype=complex)
            for t in range(-L, s):
                out += sf.fplus_log(t, 1.0 / w)
            for t in range(s, K_):
                out -= sf.fminus_log(t, 1.0 / w)
            return out

        zwin = window("z", range(r, K_))
        wwin = window("w", range(-L, s))
        val = _contour_value(fz_log, fw_log, -x, y, zwin, wwin,
                             "rightdown kernel")
        if r < s:
            def fd_log(z):
                out = np.zeros(np.shape(z), dtype=complex)
                for t in range(r, s):
                    out += sf.fplus_log(t, 1.0 / z)
                    out += sf.fminus_log(t, 1.0 / z)
                return out

            ups = [p for t in range(r, s) for k, p in [cols[t + L]]
                   if k == "up"]
            downs = [p for t in range(r, s) for k, p in [cols[t + L]]
                     if k == "down" and p > 0]
            win = (max(1e-4, (max(ups) if ups else 0.0) * 1.02 + 1e-6),
                   min((1.0 / p for p in downs), default=8.0))
            val -= _single_contour(fd_log, y - x, win,
                                   "rightdown transition")
        cache[key] = val
        return val

    return KernelHandle(evaluate, state="discrete", hermitian=False)


def schur_kernel(a, b):
    """Kernel of the Schur-measure point process x_i = mu_i - i + 1 on Z.

    Double contour form with F(z,w) = prod (1-a_j/z)(1-b_j w) /
    [(1-a_j/w)(1-b_j z)]; hermitian exactly when a == b.
    """
    a = tuple(float(v) for v in a)
    b = tuple(float(v) for v in b)
    if len(a) != len(b):
        raise ValueError("a and b must have equal length")
    if any(not 0.0 <= v < 1.0 for v in a + b):
        raise ValueError("parameters must lie in [0,1)")
    amax = max(a) if a else 0.0
    zhi = min((1.0 / v for v in b if v > 0), default=8.0)
    zwin = (max(1e-4, amax * 1.25 + 1e-6), min(zhi, 8.0))
    wwin = (max(1e-4, amax * 1.02 + 1e-6), min(zhi, 8.0))

    def fz_log(z):
        out = np.zeros(np.shape(z), dtype=complex)
        for aj, bj in zip(a, b):
            out += np.log(1 - aj / z) - np.log(1 - bj * z)
        return out

    def fw_log(w):
        out = np.zeros(np.shape(w), dtype=complex)
        for aj, bj in zip(a, b):
            out += np.log(1 - bj * w) - np.log(1 - aj / w)
        return out

    def evaluate(x, y):
        return _contour_value(fz_log, fw_log, -int(x), int(y), zwin, wwin,
                              "schur kernel")

    def batch(xs, ys):
        pzs = [-int(x) for x in xs]
        pws = [int(y) for y in ys]
        return _contour_matrix(fz_log, fw_log, pzs, pws, zwin, wwin,
                               "schur kernel")

    return KernelHandle(evaluate, state="discrete", hermitian=(a == b),
                        batch=batch)


def meixner_kernel(M, N, q):
    """Schur kernel at the Meixner specialization (a_i = sqrt(q), b_i = sqrt(q)
    for i <= M, else 0); the last particle is G(M,N) for geometric(q) weights.
    """
    if not 1 <= M <= N:
        raise ValueError("need 1 <= M <= N")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0,1)")
    sq = math.sqrt(q)
    handle = schur_kernel([sq] * N, [sq] * M + [0.0] * (N - M))
    handle.hermitian = True  # orthogonal-polynomial (Meixner) form
    return handle


# ---------------------------------------------------------------------------
# Discrete Bessel kernel

def discrete_bessel(alpha):
    """B^alpha(x,y) = sum_{k>=1} J_{x+k}(2 sqrt(alpha)) J_{y+k}(2 sqrt(alpha))."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    arg = 2.0 * math.sqrt(alpha)

    def kmax_for(lo):
        # J_nu(arg) decays superexponentially once nu > arg; 40 extra orders
        # push the tail far below 1e-16.
        return max(8, int(math.ceil(arg + 40.0 - lo)))

    def evaluate(x, y):
        x, y = int(x), int(y)
        k = np.arange(1, kmax_for(min(x, y)) + 1)
        return float(np.dot(special.jv(x + k, arg), special.jv(y + k, arg)))

    def batch(xs, ys):
        xs = np.asarray(xs, dtype=int)
        ys = np.asarray(ys, dtype=int)
        k = np.arange(1, kmax_for(min(xs.min(), ys.min())) + 1)
        A = special.jv(xs[:, None] + k[None, :], arg)
        B = special.jv(ys[:, None] + k[None, :], arg)
        return A @ B.T

    return KernelHandle(evaluate, state="discrete", hermitian=True,
                        batch=batch)


# ---------------------------------------------------------------------------
# Airy kernels

_airy_rule_cache = {}


def _airy_rule():
    if "std" not in _airy_rule_cache:
        breaks = list(range(11)) + [12, 14, 17, 20, 24, 29, 35, 42]
        _airy_rule_cache["std"] = composite_gauss_legendre(breaks, 14)
    return _airy_rule_cache["std"]


def _osc_rule(L):
    """Panels on (0, L) sized to the local Airy oscillation frequency."""
    key = int(math.ceil(L))
    if key not in _airy_rule_cache:
        breaks = [0.0]
        while breaks[-1] < key:
            breaks.append(breaks[-1] + min(1.0,
                                           4.0 / math.sqrt(1.0 + breaks[-1])))
        _airy_rule_cache[key] = composite_gauss_legendre(breaks, 16)
    return _airy_rule_cache[key]


def airy_kernel(xi, eta):
    """A(xi,eta) = int_0^infty Ai(xi+t) Ai(eta+t) dt."""
    r = _airy_rule()
    t = r.nodes
    return r.integrate(special.airy(xi + t)[0] * special.airy(eta + t)[0])


def airy_kernel_handle():
    """The Airy kernel as a continuous KernelHandle with batch evaluation."""
    r = _airy_rule()
    t, wt = r.nodes, r.weights

    def batch(xs, ys):
        A = special.airy(np.add.outer(np.asarray(xs, float), t))[0]
        B = special.airy(np.add.outer(np.asarray(ys, float), t))[0]
        return (A * wt[None, :]) @ B.T

    return KernelHandle(airy_kernel, state="continuous", hermitian=True,
                        batch=batch)


def extended_airy(tau, xi, sigma, eta):
    """Extended Airy kernel A(tau,xi; sigma,eta), branch split at tau >= sigma."""
    d = tau - sigma
    if d >= 0:
        r = _airy_rule()
        lam = r.nodes
        vals = (np.exp(-d * lam) * special.airy(xi + lam)[0]
                * special.airy(eta + lam)[0])
        return r.integrate(vals)
    r = _osc_rule(max(42.0, 50.0 / (-d)))
    mu = r.nodes
    vals = (np.exp(d * mu) * special.airy(xi - mu)[0]
            * special.airy(eta - mu)[0])
    return -r.integrate(vals)


def extended_airy_matrix(tau, xs, sigma, ys):
    """Block of extended Airy values over two level grids at fixed times."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    d = tau - sigma
    if d >= 0:
        r = _airy_rule()
        lam, sign = r.nodes, 1.0
        decay = np.exp(-d * lam)
    else:
        r = _osc_rule(max(42.0, 50.0 / (-d)))
        lam, sign = -r.nodes, -1.0
        decay = np.exp(d * r.nodes)
    A = special.airy(xs[:, None] + lam[None, :])[0]
    B = special.airy(ys[:, None] + lam[None, :])[0]
    return sign * (A * (r.weights * decay)[None, :]) @ B.T


def _airy_line_rule(eta_im, amax, cap=math.inf):
    """Quadrature in t for z = t + i*eta_im with cubic-phase integrands.

    `cap` bounds the panel width; the extended-kernel denominator forms a
    ridge of that scale along t_z + t_w = 0, so panels must resolve it
    everywhere, not just where the phase is fast.
    """
    T = math.sqrt(45.0 / eta_im)
    breaks = [0.0]
    while breaks[-1] < T:
        t = breaks[-1]
        # phase rate is |x| + t^2; size the panel for ~6 radians at its end
        w = 6.0 / (1.0 + amax + t * t)
        for _ in range(3):
            w = min(6.0 / (1.0 + amax + (t + w) ** 2), cap)
        breaks.append(t + w)
    pos = composite_gauss_legendre(breaks, 16)
    nodes = np.concatenate([-pos.nodes[::-1], pos.nodes])
    wts = np.concatenate([pos.weights[::-1], pos.weights])
    return nodes, wts


def extended_airy_contour_matrix(tau, xs, sigma, ys):
    """Double-contour extended Airy values on a level grid at fixed times.

    Both contours run on Im z = Im w = eta; for sigma > tau the lines must
    satisfy 2*eta < sigma - tau so the denominator sigma - tau + i(z + w)
    stays away from zero, and eta is kept small so the remaining ridge is
    wide enough to quadrature through.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    diff = sigma - tau
    if diff <= 0:
        eta_im, cap = 1.0, math.inf
    else:
        eta_im = min(1.0, 0.25 * diff)
        cap = 0.6 * (diff - 2.0 * eta_im)
    amax = max(np.abs(xs).max(), np.abs(ys).max())
    t, wt = _airy_line_rule(eta_im, amax, cap)
    z = t + 1j * eta_im
    U = np.exp(1j * xs[:, None] * z + 1j * z ** 3 / 3.0) * wt
    V = np.exp(1j * ys[:, None] * z + 1j * z ** 3 / 3.0) * wt
    out = np.zeros((xs.size, ys.size), dtype=complex)
    for j0 in range(0, z.size, 512):
        j1 = min(j0 + 512, z.size)
        S = 1.0 / (diff + 1j * (z[j0:j1, None] + z[None, :]))
        out += U[:, j0:j1] @ S @ V.T
    out = -out / (4.0 * np.pi ** 2)
    if np.abs(out.imag).max() > 1e-7 * max(1.0, np.abs(out.real).max()):
        raise NumericalConsistencyError(
            "extended Airy contour: imaginary residue "
            f"{np.abs(out.imag).max():.2e}")
    return out.real


def extended_airy_contour(tau, x, sigma, y):
    """Single value of the double-contour extended Airy kernel."""
    return float(extended_airy_contour_matrix(tau, [x], sigma, [y])[0, 0])


def airy_contour(x, y):
    """Equal-time double-contour form of the Airy kernel."""
    return extended_airy_contour(0.0, x, 0.0, y)


# ---------------------------------------------------------------------------
# Independent contour routes for the Krawtchouk kernel (identity tests)

def krawtchouk_line_contour(n, r, q, x, y):
    """Krawtchouk kernel value via the vertical-line/circle contour pair.

    The inner circle integral has an entire numerator, so it reduces exactly
    to a truncated-polynomial evaluation in z.  The remaining line integral
    decays only like |t|^{-x-2}; instead of truncating it, the two tails are
    exchanged for a closing arc of equal value (the integrand is analytic
    between the truncated line and the arc), giving a compact closed contour
    around the poles at 0 and -a that leaves 1/a outside.
    """
    if not 1 <= r <= n + 1:
        raise ValueError(f"r={r} out of range 1..{n + 1}")
    a = math.sqrt(q / (1.0 - q))
    # P(w) = (1-aw)^r (w+a)^{n-r+1}; the circle integral of
    # w^{y-n-1} P(w) z/(z-w) is sum_{k<=n-y} P_{n-y-k} z^{-k}, i.e.
    # z^{y-n} times P truncated at degree n-y.
    p1 = np.array([math.comb(r, i) * (-a) ** i for i in range(r + 1)])
    p2 = np.array([math.comb(n - r + 1, i) * a ** (n - r + 1 - i)
                   for i in range(n - r + 2)])
    ptr = np.convolve(p1, p2)[:n - y + 1][::-1]  # high power first, Horner

    def qlog(z):
        return r * np.log(1 - a * z) + (n - r + 1) * np.log(z + a)

    def f(z):
        return np.exp((y - x - 1) * np.log(z) - qlog(z)) * np.polyval(ptr, z)

    # place the line where the t=0 integrand magnitude is smallest
    rs = np.linspace(0.02, 0.95 / a, 160)
    alpha2 = float(rs[int(np.argmin(np.abs(f(rs + 0j))))])
    R = max(1.25 * a + 0.3, 1.3 * alpha2 + 0.2)
    T = math.sqrt(R * R - alpha2 * alpha2)

    breaks = [0.0]
    while breaks[-1] < T:
        t = breaks[-1]
        breaks.append(t + (alpha2 ** 2 + t * t) / (alpha2 * (n + 2)))
    breaks[-1] = T
    seg = composite_gauss_legendre(breaks, 12)
    z = alpha2 + 1j * seg.nodes
    S = 1j * np.sum(seg.weights * f(z))
    theta0 = math.atan2(T, alpha2)
    arc = composite_gauss_legendre(
        list(np.linspace(theta0, math.pi, 4 * (n + 4))), 12)
    z = R * np.exp(1j * arc.nodes)
    S += np.sum(arc.weights * f(z) * 1j * z)
    # the lower half contour contributes -conj(S)
    return float(S.imag) / math.pi


def krawtchouk_bessel_prelimit(N, n, alpha, x, y):
    """K_{Kr,N,n+2N-1,alpha/N^2}(x+N, y+N) via its circle-contour form.

    Converges to the discrete Bessel kernel B^alpha(x,y) as N grows.
    """
    q = alpha / N ** 2
    if not 0.0 < q < 1.0:
        raise ValueError("need alpha < N^2")
    aN = math.sqrt(q / (1.0 - q))

    def fz_log(z):
        return -N * np.log(1 - aN * z) - (N + n) * np.log(1 + aN / z)

    def fw_log(w):
        return N * np.log(1 - aN * w) + (N + n) * np.log(1 + aN / w)

    return _contour_value(fz_log, fw_log, -(x + 1), y + 1,
                          (aN, 1.0 / aN), (1e-4, 1.0 / aN),
                          "krawtchouk-to-bessel prelimit")


# ---------------------------------------------------------------------------
# Scaling maps

@dataclass(frozen=True)
class ScalingMap:
    """Exact model constants plus forward/inverse coordinate maps."""

    model: str
    constants: dict
    to_limit: object
    from_limit: object


def scaling_constants(model, params=None):
    """Scaling data for the edge limits: arctic-circle NPR ("thm31"),
    corner growth ("thm43": gamma >= 1, 0 < q < 1) and PNG droplet ("png").
    """
    params = dict(params or {})
    if model == "thm31":
        beta = 2.0 ** -1.5 * (math.sqrt(2.0) + 1.0)
        gamma = 2.0 ** -1.5 * (math.sqrt(2.0) - 1.0)

        def to_limit(n, xpos):
            return (xpos - beta * n) / (2.0 ** (-5.0 / 6.0) * n ** (1.0 / 3.0))

        def from_limit(n, xi):
            return beta * n + 2.0 ** (-5.0 / 6.0) * n ** (1.0 / 3.0) * xi

        return ScalingMap(model, {"beta": beta, "gamma": gamma},
                          to_limit, from_limit)
    if model == "thm43":
        gamma = float(params["gamma"])
        q = float(params["q"])
        if gamma < 1.0:
            raise ValueError("gamma must be >= 1")
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0,1)")
        omega = (1.0 + math.sqrt(q * gamma)) ** 2 / (1.0 - q) - 1.0
        # the q-exponent is +1/6: at gamma=1, q=1/2 this reduces exactly to
        # the 2^{1/6}(sqrt(2)+1)^{4/3} fluctuation scale of the symmetric
        # case, and Monte Carlo at N=500 matches only with this sign
        sigma = (q ** (1.0 / 6.0) * gamma ** (-1.0 / 6.0) / (1.0 - q)
                 * (math.sqrt(gamma) + math.sqrt(q)) ** (2.0 / 3.0)
                 * (1.0 + math.sqrt(q * gamma)) ** (2.0 / 3.0))

        def to_limit(N, g):
            return (g - N * omega) / (N ** (1.0 / 3.0) * sigma)

        def from_limit(N, s):
            return N * omega + N ** (1.0 / 3.0) * sigma * s

        return ScalingMap(model, {"omega": omega, "sigma": sigma},
                          to_limit, from_limit)
    if model == "png":
        q = float(params["q"])
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0,1)")
        sq = math.sqrt(q)
        d = sq ** (1.0 / 3.0) * (1.0 + sq) ** (1.0 / 3.0) / (1.0 - q)
        mean = 2.0 * sq / (1.0 - sq)
        tscale = (1.0 - sq) / (1.0 + sq) * d

        def to_limit(N, u, g):
            return (tscale * u / N ** (2.0 / 3.0),
                    (g - mean * N) / (d * N ** (1.0 / 3.0)))

        def from_limit(N, t, h):
            return (t * N ** (2.0 / 3.0) / tscale,
                    mean * N + d * N ** (1.0 / 3.0) * h)

        return ScalingMap(model, {"d": d, "mean": mean, "tscale": tscale},
                          to_limit, from_limit)
    raise ValueError(f"unknown scaling model {model!r}")

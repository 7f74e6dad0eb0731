"""Verification experiments with machine-readable reports.

Three families of checks:

  * run_exact_vs_mc      -- exact kernel/Fredholm formulas against seeded
                            Monte Carlo, compared pointwise with a k*SE
                            (or absolute) policy;
  * kernel_identity_suite -- two independent evaluation routes for the same
                            kernel must agree (exact identities to 1e-8,
                            limit routes must improve with size);
  * convergence_sweep    -- scaling-limit trends: discrepancy against the
                            limit law must decrease across declared sizes
                            and end under a cap.

Every report is reproducible bit-exactly from (spec, seed): all randomness
comes from counter-based streams derived from the spec seed, reductions are
order-independent sums, and the canonical JSON form excludes the runtime.
A failed identity aborts the sweeps that rely on the corresponding route
(SWEEP_DEPENDENCIES is the explicit DAG).
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import fredholm, kernels
from .numerics import airy_ai, composite_gauss_legendre
from .processes import NumericalConsistencyError, gap_probability
from .growth import (aztec_shuffle, npr_boundary, particle_array,
                     tiling_to_paths, sample_g_batch, plancherel_sample,
                     sample_gue_batch, lis)
from .rng import stream

__all__ = [
    "ExperimentSpec", "ComparisonReport", "run_exact_vs_mc",
    "kernel_identity_suite", "convergence_sweep", "two_time_check",
    "SWEEP_DEPENDENCIES", "SWEEP_TARGETS",
]

_POLICY_KEYS = {
    "abs": ("tol",),
    "se": ("k",),
    "ks": ("threshold",),
    "trend": ("cap",),
    "bound": (),
}


@dataclass
class ExperimentSpec:
    """Identifier, model parameters, sampling budget and tolerance policy."""

    experiment: str
    params: dict
    samples: int
    seed: int
    policy: dict

    def __post_init__(self):
        if self.samples < 100:
            raise ValueError("need at least 100 samples")
        kind = self.policy.get("kind")
        if kind not in _POLICY_KEYS:
            raise ValueError(f"unknown policy kind {kind!r}")
        for key in _POLICY_KEYS[kind]:
            if key not in self.policy:
                raise ValueError(f"policy {kind!r} needs {key!r}")


@dataclass
class ComparisonReport:
    """Exact-vs-empirical comparison on a declared grid, with verdict."""

    id: str
    params: dict
    grid: list
    exact: list
    empirical: list
    max_discrepancy: float
    verdict: str
    seed: int
    runtime_ms: float
    schema: str = "report/1"

    def to_dict(self, with_runtime=True):
        d = {
            "id": self.id, "params": self.params, "grid": self.grid,
            "exact": self.exact, "empirical": self.empirical,
            "max_discrepancy": self.max_discrepancy, "verdict": self.verdict,
            "seed": self.seed, "schema": self.schema,
        }
        if with_runtime:
            d["runtime_ms"] = self.runtime_ms
        return d

    def canonical_json(self):
        """Deterministic JSON (runtime excluded) for reproducibility checks."""
        return json.dumps(self.to_dict(with_runtime=False), sort_keys=True,
                          separators=(",", ":"))


def _decide(policy, exact, emp_v, emp_se):
    """(verdict, max_discrepancy) under a single tolerance policy."""
    exact = np.asarray(exact, dtype=float)
    emp_v = np.asarray(emp_v, dtype=float)
    emp_se = np.asarray(emp_se, dtype=float)
    kind = policy["kind"]
    if kind == "bound":
        # empirical residual must not exceed its per-entry bound
        disc = float(np.max(emp_v - exact))
        return ("pass" if np.all(emp_v <= exact) else "fail"), disc
    if kind == "trend":
        vals = emp_v
        ok = bool(np.all(np.diff(vals) < 0.0)) and vals[-1] <= policy["cap"]
        return ("pass" if ok else "fail"), float(vals[-1])
    diff = np.abs(exact - emp_v)
    disc = float(diff.max())
    if kind == "abs":
        return ("pass" if disc <= policy["tol"] else "fail"), disc
    if kind == "ks":
        return ("pass" if disc <= policy["threshold"] else "fail"), disc
    allow = policy["k"] * emp_se + policy.get("allowance", 0.0)
    return ("pass" if np.all(diff <= allow) else "fail"), disc


def _finish(spec_id, params, seed, grid, exact, emp_v, emp_se, policy, t0):
    verdict, disc = _decide(policy, exact, emp_v, emp_se)
    empirical = [{"v": float(v), "se": float(s)}
                 for v, s in zip(emp_v, emp_se)]
    return ComparisonReport(
        id=spec_id, params=params, grid=list(grid),
        exact=[float(v) for v in exact], empirical=empirical,
        max_discrepancy=disc, verdict=verdict, seed=seed,
        runtime_ms=round((time.perf_counter() - t0) * 1000.0, 3))


def _cdf_se(p, m):
    """Binomial SE for an empirical CDF point, floored away from zero."""
    return max(math.sqrt(p * (1.0 - p) / m), 1.0 / m)


def _shuffle_seed(seed, i):
    return (seed * 1_000_003 + i) % (2 ** 63)


# ---------------------------------------------------------------------------
# Monte Carlo vs exact formulas


def _mc_g_cdf(spec, t0):
    M, N, q = spec.params["M"], spec.params["N"], spec.params["q"]
    draws = sample_g_batch(M, N, q, spec.samples, spec.seed)
    grid = spec.params.get("grid")
    if grid is None:
        lo = int(np.quantile(draws, 0.005))
        hi = int(np.quantile(draws, 0.995))
        grid = list(range(lo, hi + 1))
    exact = [fredholm.g_cdf_exact(M, N, q, t) for t in grid]
    emp = [float(np.mean(draws <= t)) for t in grid]
    se = [_cdf_se(p, spec.samples) for p in emp]
    return _finish(spec.experiment, spec.params, spec.seed,
                   grid, exact, emp, se, spec.policy, t0)


def _mc_lis_cdf(spec, t0):
    alpha = spec.params["alpha"]
    grid = spec.params.get("grid", list(range(0, 11)))
    rng = stream(spec.seed, 0)
    sizes = rng.poisson(alpha, size=spec.samples)
    counts = np.zeros(max(grid) + 2, dtype=np.int64)
    for nperm in sizes:
        val = lis(rng.permutation(int(nperm)) + 1)
        counts[min(val, len(counts) - 1)] += 1
    cum = np.cumsum(counts)
    exact = [fredholm.l_alpha_cdf(alpha, n) for n in grid]
    emp = [cum[n] / spec.samples if n < len(counts) else 1.0 for n in grid]
    se = [_cdf_se(p, spec.samples) for p in emp]
    return _finish(spec.experiment, spec.params, spec.seed,
                   grid, exact, emp, se, spec.policy, t0)


def _mc_aztec_lastline(spec, t0):
    """Last particle on one line of the diamond process vs the projection
    kernel's gap determinant."""
    n, a, r = spec.params["n"], spec.params["a"], spec.params["r"]
    q = a * a / (1.0 + a * a)
    u = 2 * (n - r) + 1
    K = kernels.krawtchouk_kernel(n, r, q)

    def cdf(s):
        return gap_probability(K, list(range(s + r, n + 1)))

    grid = spec.params.get("grid")
    if grid is None:
        grid = [s for s in range(1 - r, n - r + 2)
                if 0.005 < cdf(s) < 0.995]
    exact = [cdf(s) for s in grid]
    hits = np.zeros(len(grid), dtype=np.int64)
    for i in range(spec.samples):
        til = aztec_shuffle(n, a, _shuffle_seed(spec.seed, i))
        xs = particle_array(tiling_to_paths(til), n)
        top = int(xs[u].max())
        for j, s in enumerate(grid):
            if top <= s:
                hits[j] += 1
    emp = hits / spec.samples
    se = [_cdf_se(p, spec.samples) for p in emp]
    return _finish(spec.experiment, spec.params, spec.seed,
                   grid, exact, emp, se, spec.policy, t0)


def _mc_plancherel_rho1(spec, t0):
    alpha = spec.params["alpha"]
    grid = spec.params.get("grid", list(range(-6, 7)))
    B = kernels.discrete_bessel(alpha)
    exact = [B(x, x) for x in grid]
    depth = max(1, -min(grid)) + 1
    hits = np.zeros(len(grid), dtype=np.int64)
    for i in range(spec.samples):
        lam = plancherel_sample("poisson", _shuffle_seed(spec.seed, i),
                                alpha=alpha).parts
        occupied = {lam[k] - (k + 1) for k in range(len(lam))}
        occupied |= {-(k + 1) for k in range(len(lam), len(lam) + depth)}
        for j, x in enumerate(grid):
            if x in occupied:
                hits[j] += 1
    emp = hits / spec.samples
    se = [_cdf_se(p, spec.samples) for p in emp]
    return _finish(spec.experiment, spec.params, spec.seed,
                   grid, exact, emp, se, spec.policy, t0)


def _mc_gue_rho1(spec, t0):
    """Mean eigenvalue count per bin vs the integrated kernel diagonal."""
    N = spec.params["N"]
    edges = spec.params.get("edges")
    if edges is None:
        lim = math.sqrt(2.0 * N) + 1.0
        edges = list(np.linspace(-lim, lim, 14))
    K = kernels.hermite_kernel(N)
    exact = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        rule = composite_gauss_legendre(list(np.linspace(lo, hi, 5)), 16)
        exact.append(rule.integrate(
            np.array([K(x, x) for x in rule.nodes])))
    eigs = sample_gue_batch(N, spec.samples, spec.seed)
    counts = np.stack([
        ((eigs >= lo) & (eigs < hi)).sum(axis=1)
        for lo, hi in zip(edges[:-1], edges[1:])], axis=1).astype(float)
    emp = counts.mean(axis=0)
    se = counts.std(axis=0, ddof=1) / math.sqrt(spec.samples)
    se = np.maximum(se, 1.0 / spec.samples)
    grid = [f"[{lo:.3f},{hi:.3f})" for lo, hi in zip(edges[:-1], edges[1:])]
    return _finish(spec.experiment, spec.params, spec.seed,
                   grid, exact, emp, se, spec.policy, t0)


_MC_INSTANCES = {
    "g-cdf": _mc_g_cdf,
    "lis-cdf": _mc_lis_cdf,
    "aztec-lastline": _mc_aztec_lastline,
    "plancherel-rho1": _mc_plancherel_rho1,
    "gue-rho1": _mc_gue_rho1,
}


def run_exact_vs_mc(spec):
    """Run one exact-vs-Monte-Carlo experiment; policy violations fail the
    verdict, they never raise."""
    t0 = time.perf_counter()
    try:
        fn = _MC_INSTANCES[spec.experiment]
    except KeyError:
        raise ValueError(f"unknown experiment {spec.experiment!r}") from None
    return fn(spec, t0)


# ---------------------------------------------------------------------------
# Kernel identity suite

_identity_cache = {}


def _gauge(n, x, y):
    """Column gauge sqrt(C(n,x)/C(n,y)) between the symmetric projection
    kernel and the contour normalizations; cancels in all determinants."""
    return math.exp(0.5 * (special.gammaln(n - y + 1) + special.gammaln(y + 1)
                           - special.gammaln(n - x + 1)
                           - special.gammaln(x + 1)))


def _ident_aztec_section(n):
    """Single-line section of the layered diamond kernel vs the projection
    kernel of matching order (gauge-corrected off the diagonal)."""
    a = 0.7
    q = a * a / (1.0 + a * a)
    r = n // 2
    u = 2 * (n - r) + 1
    Kext = kernels.extended_krawtchouk(n, a)
    Kkr = kernels.krawtchouk_kernel(n, r, q)
    pts = [n // 2 - 1, n // 2, n // 2 + 2]
    resid = 0.0
    for x in pts:
        for y in pts:
            v = Kext((u, x - r + 1), (u, y - r + 1)) * _gauge(n, x, y)
            resid = max(resid, abs(v - Kkr(x, y)))
    return resid


def _ident_line_contour(n):
    q = 0.3
    r = max(2, n // 3)
    Kkr = kernels.krawtchouk_kernel(n, r, q)
    pts = [n // 3, n // 2, n // 2 + 1]
    resid = 0.0
    for x in pts:
        for y in pts:
            v = kernels.krawtchouk_line_contour(n, r, q, x, y)
            resid = max(resid, abs(v * _gauge(n, x, y) - Kkr(x, y)))
    return resid


def _ident_airy_pair():
    pts = (-2.0, 0.0, 1.5)
    resid = 0.0
    for x in pts:
        for y in pts:
            resid = max(resid, abs(kernels.airy_contour(x, y)
                                   - kernels.airy_kernel(x, y)))
    return resid


def _ident_extended_airy(dt):
    tau, sigma = 0.0, dt
    xs = np.array([-2.0, 0.0, 1.0])
    A = kernels.extended_airy_matrix(tau, xs, sigma, xs)
    B = kernels.extended_airy_contour_matrix(tau, xs, sigma, xs)
    return float(np.abs(A - B).max())


def _ident_kraw_bessel(N):
    alpha = 4.0
    B = kernels.discrete_bessel(alpha)
    resid = 0.0
    for x, y in ((0, 0), (1, 2), (-1, 3), (2, -2)):
        v = kernels.krawtchouk_bessel_prelimit(N, 5, alpha, x, y)
        resid = max(resid, abs(v - B(x, y)))
    return resid


def _ident_bessel_airy(alpha):
    resid = 0.0
    for xi in (-2.0, -1.0, 0.0, 1.0, 2.0):
        nu = 2.0 * math.sqrt(alpha) + xi * alpha ** (1.0 / 6.0)
        v = alpha ** (1.0 / 6.0) * special.jv(nu, 2.0 * math.sqrt(alpha))
        resid = max(resid, abs(v - airy_ai(xi)))
    return resid


# (label, bound or None for trend-chained, callable).  Trend entries chain:
# each bound is the previous size's residual.
_IDENTITY_INSTANCES = [
    ("aztec-section n=10", 1e-8, lambda: _ident_aztec_section(10)),
    ("aztec-section n=20", 1e-8, lambda: _ident_aztec_section(20)),
    ("aztec-section n=40", 1e-8, lambda: _ident_aztec_section(40)),
    ("krawtchouk-line n=6", 1e-8, lambda: _ident_line_contour(6)),
    ("krawtchouk-line n=10", 1e-8, lambda: _ident_line_contour(10)),
    ("krawtchouk-line n=20", 1e-8, lambda: _ident_line_contour(20)),
    ("airy-pair", 1e-8, _ident_airy_pair),
    ("extended-airy dt=-2.0", 1e-8, lambda: _ident_extended_airy(-2.0)),
    ("extended-airy dt=0.0", 1e-8, lambda: _ident_extended_airy(0.0)),
    ("extended-airy dt=1.0", 1e-8, lambda: _ident_extended_airy(1.0)),
    ("krawtchouk-bessel N=50", 1.0, lambda: _ident_kraw_bessel(50)),
    ("krawtchouk-bessel N=100", None, lambda: _ident_kraw_bessel(100)),
    ("krawtchouk-bessel N=200", None, lambda: _ident_kraw_bessel(200)),
    ("bessel-airy alpha=1e2", 1.0, lambda: _ident_bessel_airy(1e2)),
    ("bessel-airy alpha=1e3", None, lambda: _ident_bessel_airy(1e3)),
    ("bessel-airy alpha=1e4", None, lambda: _ident_bessel_airy(1e4)),
]


def _run_identity(label):
    if label not in _identity_cache:
        for name, _, fn in _IDENTITY_INSTANCES:
            if name == label:
                _identity_cache[label] = fn()
                break
        else:
            raise ValueError(f"unknown identity instance {label!r}")
    return _identity_cache[label]


def kernel_identity_suite():
    """Max pointwise residual per kernel identity on fixed grids.

    Exact identities must land under 1e-8; limit routes must beat the
    previous size (bound = chained residual).
    """
    t0 = time.perf_counter()
    grid, bounds, values = [], [], []
    prev = None
    for label, bound, _ in _IDENTITY_INSTANCES:
        v = _run_identity(label)
        grid.append(label)
        bounds.append(bound if bound is not None else prev)
        values.append(v)
        prev = v
    return _finish("kernel-identities", {}, 0, grid, bounds, values,
                   [0.0] * len(values), {"kind": "bound"}, t0)


# ---------------------------------------------------------------------------
# Convergence sweeps

# Sweeps abort if the identities validating the routes they depend on fail.
SWEEP_DEPENDENCIES = {
    "thm31_kernel": ("airy-pair",),
    "thm31_lastparticle": ("airy-pair",),
    "npr_airy_marginal": ("airy-pair", "aztec-section n=20"),
    "thm43": ("airy-pair",),
    "thm35": ("airy-pair", "bessel-airy alpha=1e4"),
    "arctic_ellipse": (),
}

SWEEP_TARGETS = tuple(SWEEP_DEPENDENCIES)


def _require_identities(target):
    for label in SWEEP_DEPENDENCIES[target]:
        bound = next(b for name, b, _ in _IDENTITY_INSTANCES if name == label)
        if bound is None:
            bound = math.inf
        if _run_identity(label) > bound:
            raise NumericalConsistencyError(
                f"sweep {target!r} aborted: identity {label!r} failed")


def _edge_params(r, n):
    """Exact edge center/scale for the order-r projection kernel at q=1/2.

    The saddle double-root condition gives beta = 1/2 + sqrt(g(1-g)),
    g = r/n; centering on the integer-r edge (rather than the limiting
    gamma) removes an oscillating O(n^{-1/3}) rounding artifact.
    """
    g = r / n
    beta = 0.5 + math.sqrt(g * (1.0 - g))
    return beta, 2.0 ** (-5.0 / 6.0) * n ** (1.0 / 3.0)


_GAMMA31 = 2.0 ** -1.5 * (math.sqrt(2.0) - 1.0)

_TW_GRID = tuple(np.linspace(-4.0, 2.0, 13))
_tw_grid_cache = {}


def _tw_on(xi):
    if xi not in _tw_grid_cache:
        _tw_grid_cache[xi] = fredholm.tracy_widom_cdf(xi)
    return _tw_grid_cache[xi]


def _sweep_thm31_kernel(sizes, samples, seed):
    xis = np.linspace(-3.0, 1.5, 8)
    out = []
    for n in sizes:
        r = round(_GAMMA31 * n)
        beta, c = _edge_params(r, n)
        K = kernels.krawtchouk_kernel(n, r, 0.5)
        resid = 0.0
        for xi in xis:
            for eta in xis:
                x = round(beta * n + c * xi)
                y = round(beta * n + c * eta)
                xh, yh = (x - beta * n) / c, (y - beta * n) / c
                resid = max(resid, abs(c * K(x, y)
                                       - kernels.airy_kernel(xh, yh)))
        out.append(resid)
    return out


def _sweep_thm31_lastparticle(sizes, samples, seed):
    out = []
    for n in sizes:
        r = round(_GAMMA31 * n)
        beta, c = _edge_params(r, n)
        K = kernels.krawtchouk_kernel(n, r, 0.5)
        sup = 0.0
        for xi in _TW_GRID:
            x = int(math.floor(beta * n + c * xi))
            xh = (x - beta * n) / c
            p = gap_probability(K, list(range(x + 1, n + 1)))
            sup = max(sup, abs(p - _tw_on(xh)))
        out.append(sup)
    return out


def _scaled_ks(draws, to_xi):
    """KS distance of scaled draws against the Tracy-Widom law on the
    fixed xi grid."""
    xs = np.sort(np.array([to_xi(v) for v in draws]))
    sup = 0.0
    for xi in _TW_GRID:
        emp = np.searchsorted(xs, xi, side="right") / xs.size
        sup = max(sup, abs(emp - _tw_on(xi)))
    return sup


def _sweep_npr_airy_marginal(sizes, samples, seed):
    samples = samples or 800
    out = []
    for n in sizes:
        c = 2.0 ** (-5.0 / 6.0) * n ** (1.0 / 3.0)
        vals = []
        for i in range(samples):
            b = npr_boundary(aztec_shuffle(n, 1.0, _shuffle_seed(seed, i)))
            vals.append(b(0.0))
        out.append(_scaled_ks(vals, lambda v: (v - n / math.sqrt(2.0)) / c))
    return out


def _sweep_thm43(sizes, samples, seed, gamma=2.0, q=0.25):
    samples = samples or 20000
    smap = kernels.scaling_constants("thm43", {"gamma": gamma, "q": q})
    out = []
    for N in sizes:
        M = N
        draws = sample_g_batch(M, int(round(gamma * N)), q, samples, seed)
        out.append(_scaled_ks(draws, lambda g: smap.to_limit(N, g)))
    return out


def _sweep_thm35(sizes, samples, seed):
    out = []
    for alpha in sizes:
        scale = alpha ** (1.0 / 6.0)
        center = 2.0 * math.sqrt(alpha)
        sup = 0.0
        for xi in _TW_GRID:
            n = int(math.floor(center + scale * xi))
            xh = (n - center) / scale
            sup = max(sup, abs(fredholm.l_alpha_cdf(alpha, n) - _tw_on(xh)))
        out.append(sup)
    return out


def _sweep_arctic_ellipse(sizes, samples, seed, a=1.0):
    q = a * a / (1.0 + a * a)
    target = math.sqrt(q)
    out = []
    for n in sizes:
        m = samples or max(100, 25600 // n)
        tot = 0.0
        for i in range(m):
            b = npr_boundary(aztec_shuffle(n, a, _shuffle_seed(seed, i)))
            tot += b(0.0)
        # relative offset, so the cap means the same thing for every a
        out.append(abs(tot / m / n - target) / target)
    return out


_SWEEPS = {
    "thm31_kernel": (_sweep_thm31_kernel, (100, 400, 1600), 0.05),
    "thm31_lastparticle": (_sweep_thm31_lastparticle, (100, 200, 400), 0.05),
    "npr_airy_marginal": (_sweep_npr_airy_marginal, (4, 16, 64), 0.15),
    "thm43": (_sweep_thm43, (50, 140, 400), 0.05),
    "thm35": (_sweep_thm35, (25, 100, 400), 0.05),
    "arctic_ellipse": (_sweep_arctic_ellipse, (64, 128, 256), 0.02),
}


def convergence_sweep(target, sizes=None, samples=None, seed=0, **kw):
    """Discrepancy against the limit law at increasing size.

    Pass = strictly decreasing discrepancies with the final value under the
    per-target cap.  Monte Carlo targets take `samples` per size; exact
    targets ignore it.
    """
    t0 = time.perf_counter()
    if target not in _SWEEPS:
        raise ValueError(f"unknown sweep target {target!r}")
    _require_identities(target)
    fn, default_sizes, cap = _SWEEPS[target]
    sizes = list(sizes or default_sizes)
    vals = fn(sizes, samples, seed, **kw)
    params = {"target": target, "sizes": sizes}
    params.update(kw)
    return _finish(f"sweep/{target}", params, seed, sizes,
                   [0.0] * len(vals), vals, [0.0] * len(vals),
                   {"kind": "trend", "cap": cap}, t0)


# ---------------------------------------------------------------------------
# Two-time check


def two_time_check(n, taus, xis, samples=2000, seed=0, mode="airy"):
    """Joint law of the scaled boundary at two times vs the limit process.

    The boundary at time 2^{-1/6} n^{2/3} tau, centered at n/sqrt(2) and
    scaled by 2^{-5/6} n^{1/3}, converges to A(tau) - tau^2 with A the Airy
    process.  mode="airy" compares the empirical joint CDF at (xi_1, xi_2)
    with the two-time Fredholm determinant (3-SE + 0.03 discretization
    allowance); mode="product" compares it with the product of the
    empirical marginals (near-independence oracle, absolute 0.02).
    """
    taus = [float(v) for v in taus]
    xis = [float(v) for v in xis]
    if len(taus) != 2 or len(xis) != 2:
        raise ValueError("need a tau-pair and a xi-pair")
    order = sorted(range(2), key=lambda i: taus[i])
    taus = [taus[i] for i in order]
    xis = [xis[i] for i in order]
    c = 2.0 ** (-5.0 / 6.0) * n ** (1.0 / 3.0)
    ts = [2.0 ** (-1.0 / 6.0) * n ** (2.0 / 3.0) * tau for tau in taus]
    if any(abs(t) > n for t in ts):
        raise ValueError("tau-pair maps outside the diamond")
    t0 = time.perf_counter()
    hits = np.zeros(3, dtype=np.int64)  # joint, marginal 1, marginal 2
    for i in range(samples):
        b = npr_boundary(aztec_shuffle(n, 1.0, _shuffle_seed(seed, i)))
        ok = [(b(ts[j]) - n / math.sqrt(2.0)) / c <= xis[j] for j in range(2)]
        hits += np.array([all(ok), ok[0], ok[1]])
    joint, m1, m2 = hits / samples
    if mode == "product":
        exact = m1 * m2
        policy = {"kind": "abs", "tol": 0.02}
    elif mode == "airy":
        levels = [xis[j] + taus[j] ** 2 for j in range(2)]
        if taus[0] == taus[1]:
            exact = fredholm.airy_process_fdd([taus[0]], [min(levels)])
        else:
            exact = fredholm.airy_process_fdd(taus, levels)
        policy = {"kind": "se", "k": 3.0, "allowance": 0.03}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    params = {"n": n, "taus": taus, "xis": xis, "samples": samples,
              "mode": mode}
    return _finish("two-time", params, seed, [f"joint({xis[0]},{xis[1]})"],
                   [exact], [joint], [_cdf_se(joint, samples)], policy, t0)

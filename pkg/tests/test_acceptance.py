"""Acceptance suite: one test per criterion, each printing a verdict line.

Exact identities and brute-force oracles are checked at their stated
tolerances; Monte Carlo comparisons use 3-SE bands; limit-law checks are
trend checks at declared sizes.  Run with -s (or read captured output on
failure) to see the per-criterion lines.
"""
import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy import special

from detlab import fredholm, harness, kernels
from detlab.growth import (GrowthField, Partition, aztec_shuffle,
                           column_kinds, f_lambda, field_log_weight,
                           g_bruteforce, in_diamond, lis, path_log_weight,
                           sample_g_batch, theorem41_forward,
                           theorem41_inverse)
from detlab.growth.paths import lgv_determinant, nonintersecting_total_weight
from detlab.processes import cauchy_binet_check, gap_probability
from detlab.rng import stream


def _report(num, name, ok, detail, t0, budget):
    elapsed = time.perf_counter() - t0
    print(f"criterion {num:02d} [{name}]: "
          f"{'PASS' if ok else 'FAIL'} ({detail}; {elapsed:.1f}s)")
    assert elapsed < budget, f"criterion {num} exceeded {budget}s budget"
    assert ok, f"criterion {num} ({name}): {detail}"


# ---------------------------------------------------------------------------


def test_criterion_01_sum_identity_for_determinants():
    """det of a Gram-type sum equals the symmetrized sum of paired minors."""
    cauchy_binet_check([lambda x: x], [lambda x: x], [0.5])  # jit warm-up
    t0 = time.perf_counter()
    rng = stream(101, 0)
    worst = 0.0
    for _ in range(100):
        N = int(rng.integers(1, 5))
        # exhaustive cost is |state|^N, so shrink the state as N grows
        size = int(rng.integers(N, (5, 8, 7, 6, 5)[N] + 1))
        state = list(rng.uniform(-1.0, 1.0, size=size))
        cp = 0.5 * rng.normal(size=(N, N))
        cq = 0.5 * rng.normal(size=(N, N))
        phi = [lambda x, c=cp[i]: float(np.polyval(c, x)) for i in range(N)]
        psi = [lambda x, c=cq[i]: float(np.polyval(c, x)) for i in range(N)]
        worst = max(worst, cauchy_binet_check(phi, psi, state))
    _report(1, "determinant sum identity", worst <= 1e-10,
            f"max residual {worst:.2e} <= 1e-10", t0, 5.0)


def _column_graph(kinds, H, weights):
    """Unit-step column graph: right edges plus weighted vertical runs."""
    g = {}
    C = len(kinds)
    for j in range(C):
        kind, _ = kinds[j]
        for h in range(H + 1):
            edges = [((j + 1, h), 1)]
            if kind == "up" and h < H:
                edges.append(((j, h + 1), weights[j]))
            if kind == "down" and h > 0:
                edges.append(((j, h - 1), weights[j]))
            g[(j, h)] = edges
    return g


def test_criterion_02_path_determinant_counts_disjoint_families():
    t0 = time.perf_counter()
    rng = stream(102, 0)
    checked = 0
    while checked < 50:
        parts = tuple(sorted((int(rng.integers(1, 5))
                              for _ in range(int(rng.integers(1, 5)))),
                             reverse=True))
        lam = Partition(parts)
        kinds = column_kinds(lam)
        if len(kinds) > 8:
            continue
        H = 3
        weights = [int(rng.integers(1, 4)) for _ in kinds]
        g = _column_graph(kinds, H, weights)
        k = int(rng.integers(1, 4))
        starts = sorted(rng.choice(H + 1, size=k, replace=False))
        ends = sorted(rng.choice(H + 1, size=k, replace=False))
        starts = [(0, int(h)) for h in starts]
        ends = [(len(kinds), int(h)) for h in ends]
        from detlab.growth.paths import enumerate_paths
        combos = 1
        for s, e in zip(starts, ends):
            combos *= len(enumerate_paths(g, s, e))
        if not 0 < combos <= 50000:  # keep the brute-force oracle tractable
            continue
        det = lgv_determinant(g, starts, ends)
        brute = nonintersecting_total_weight(g, starts, ends)
        assert det == brute, (parts, starts, ends)
        checked += 1
    _report(2, "disjoint path counting", True,
            "50 column graphs, exact integer agreement", t0, 30.0)


def _shapes_inside(box):
    shapes = set()
    for parts in itertools.product(range(box + 1), repeat=box):
        parts = tuple(sorted((v for v in parts if v), reverse=True))
        shapes.add(parts)
    return sorted(shapes)


def test_criterion_03_field_path_bijection():
    t0 = time.perf_counter()
    a = (0.5, 0.4, 0.6, 0.3, 0.7, 0.45)
    b = (0.35, 0.55, 0.25, 0.65, 0.4, 0.5)
    count = 0
    for parts in _shapes_inside(3):
        lam = Partition(parts)
        cells = lam.cells()
        if not cells:
            continue
        for ws in itertools.product(range(3), repeat=len(cells)):
            f = GrowthField(lam, dict(zip(cells, ws)))
            fam = theorem41_forward(f)      # internal claims checked inside
            fam.check_vertex_disjoint()
            assert theorem41_inverse(fam, lam).w == f.w
            assert abs(path_log_weight(fam, lam, a, b)
                       - field_log_weight(f, a, b)) < 1e-10
            count += 1
    rng = stream(103, 0)
    for _ in range(1000):
        parts = tuple(sorted((int(rng.integers(1, 7))
                              for _ in range(int(rng.integers(1, 6)))),
                             reverse=True))
        lam = Partition(parts)
        f = GrowthField(lam, {c: int(rng.integers(0, 8))
                              for c in lam.cells()})
        fam = theorem41_forward(f)
        assert theorem41_inverse(fam, lam).w == f.w
        assert abs(path_log_weight(fam, lam, a, b)
                   - field_log_weight(f, a, b)) < 1e-10
    _report(3, "field/path bijection",
            True, f"{count} exhaustive + 1000 random fields round-trip",
            t0, 60.0)


def test_criterion_04_last_passage_recursion_vs_enumeration():
    t0 = time.perf_counter()
    rng = stream(104, 0)
    for _ in range(100):
        M = int(rng.integers(1, 8))
        N = int(rng.integers(1, min(8, 15 - M)))
        lam = Partition((M,) * N)
        f = GrowthField(lam, {c: int(rng.integers(0, 7))
                              for c in lam.cells()})
        assert f.g_value(M, N) == g_bruteforce(f, M, N)
    _report(4, "growth recursion vs path enumeration", True,
            "100 random fields, exact agreement", t0, 10.0)


def _all_tilings(n):
    squares = sorted((x, y) for x in range(-n - 1, n + 1)
                     for y in range(-n - 1, n + 1) if in_diamond(x, y, n))
    out = []

    def fill(covered, dominos):
        free = [s for s in squares if s not in covered]
        if not free:
            out.append(tuple(sorted(dominos)))
            return
        x, y = free[0]
        if (x + 1, y) in squares and (x + 1, y) not in covered:
            fill(covered | {(x, y), (x + 1, y)}, dominos + [(x, y, "H")])
        if (x, y + 1) in squares and (x, y + 1) not in covered:
            fill(covered | {(x, y), (x, y + 1)}, dominos + [(x, y, "V")])

    fill(set(), [])
    return out


def test_criterion_05_shuffling_frequencies():
    t0 = time.perf_counter()
    # order 1: the single 2x2 block is vertical with probability a^2/(1+a^2)
    a1, m1 = 1.5, 100000
    q = a1 * a1 / (1.0 + a1 * a1)
    vert = sum(aztec_shuffle(1, a1, s).vertical_count // 2
               for s in range(m1))
    dev1 = abs(vert / m1 - q)
    ok1 = dev1 <= 3 * math.sqrt(q * (1 - q) / m1)
    # order 2: all 8 tilings, weighted by a^{#vertical}
    tilings = _all_tilings(2)
    assert len(tilings) == 8
    ok2 = True
    worst2 = 0.0
    for a in (1.0, 2.0):
        weights = {t: a ** sum(1 for _, _, o in t if o == "V")
                   for t in tilings}
        Z = sum(weights.values())
        m2 = 20000
        counts = {t: 0 for t in tilings}
        for s in range(m2):
            counts[aztec_shuffle(2, a, 7000 + s).dominos] += 1
        for t in tilings:
            p = weights[t] / Z
            dev = abs(counts[t] / m2 - p)
            worst2 = max(worst2, dev)
            if dev > 3 * max(math.sqrt(p * (1 - p) / m2), 1.0 / m2):
                ok2 = False
    _report(5, "shuffling frequencies", ok1 and ok2,
            f"order-1 dev {dev1:.2e}, order-2 worst dev {worst2:.2e} "
            "within 3 SE", t0, 60.0)


def test_criterion_06_last_passage_cdf_pipeline():
    t0 = time.perf_counter()
    M, N, q = 4, 6, 0.5
    # every other integer between the 0.5% and 99.5% quantiles of G(4,6)
    grid = list(range(5, 29, 2))
    spec = harness.ExperimentSpec("g-cdf", {"M": M, "N": N, "q": q,
                                            "grid": grid},
                                  100000, 106, {"kind": "se", "k": 3.0})
    r = harness.run_exact_vs_mc(spec)
    # independent route comparison at a middle grid point
    t = r.grid[len(r.grid) // 2]
    n = t + M + N - 1
    kr = kernels.krawtchouk_kernel(n, M, q)
    v1 = gap_probability(kr, list(range(t + M, n + 1)))
    mx = kernels.meixner_kernel(M, N, q)
    from detlab.processes import _discrete_tail_sites
    v2 = gap_probability(mx, _discrete_tail_sites(mx, t, 1e-12, 100000))
    routes = abs(v1 - v2)
    _report(6, "exact last-passage CDF vs sampling",
            r.verdict == "pass" and routes <= 1e-8,
            f"max |exact-MC| {r.max_discrepancy:.2e} within 3 SE on "
            f"{len(r.grid)} points; route gap {routes:.2e}", t0, 180.0)


def test_criterion_07_kernel_identities():
    t0 = time.perf_counter()
    labels = ["aztec-section n=10", "aztec-section n=20",
              "aztec-section n=40", "krawtchouk-line n=6",
              "krawtchouk-line n=10", "krawtchouk-line n=20",
              "airy-pair", "extended-airy dt=-2.0", "extended-airy dt=0.0",
              "extended-airy dt=1.0"]
    resids = {lab: harness._run_identity(lab) for lab in labels}
    worst = max(resids.values())
    _report(7, "dual-route kernel identities", worst <= 1e-8,
            f"max residual {worst:.2e} <= 1e-8 over {len(labels)} identities",
            t0, 120.0)


def _partitions_capped(n, width, cap=None):
    cap = min(n, width) if cap is None else cap
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions_capped(n - first, width, first):
            yield (first,) + rest


def test_criterion_08_increasing_subsequence_law():
    t0 = time.perf_counter()
    alpha = 2.0
    worst = 0.0
    # exact counts by exhaustion (N <= 8) cross-checked against tableaux
    counts = {}
    for N in range(9):
        c = [0] * 10
        for perm in itertools.permutations(range(1, N + 1)):
            c[lis(perm)] += 1
        counts[N] = c
        for n in range(1, 9):
            hooks = sum(f_lambda(Partition(p)) ** 2
                        for p in _partitions_capped(N, n))
            assert sum(c[:n + 1]) == hooks, (N, n)
    for n in range(5):
        oracle = Fraction(0)
        for N in range(31):
            if N <= 8:
                good = Fraction(sum(counts[N][:n + 1]),
                                math.factorial(N))
            else:
                good = Fraction(
                    sum(f_lambda(Partition(p)) ** 2
                        for p in _partitions_capped(N, n)),
                    math.factorial(N))
            oracle += Fraction(2 ** N, math.factorial(N)) * good
        oracle = math.exp(-alpha) * float(oracle)
        worst = max(worst, abs(fredholm.l_alpha_cdf(alpha, n) - oracle))
    spec = harness.ExperimentSpec("lis-cdf", {"alpha": 4.0}, 100000, 108,
                                  {"kind": "se", "k": 3.0})
    r = harness.run_exact_vs_mc(spec)
    _report(8, "increasing-subsequence law",
            worst <= 1e-6 and r.verdict == "pass",
            f"oracle gap {worst:.2e} <= 1e-6; MC within 3 SE "
            f"(max {r.max_discrepancy:.2e})", t0, 180.0)


def test_criterion_09_plancherel_density():
    t0 = time.perf_counter()
    spec = harness.ExperimentSpec("plancherel-rho1", {"alpha": 4.0},
                                  100000, 109, {"kind": "se", "k": 3.0})
    r = harness.run_exact_vs_mc(spec)
    _report(9, "Plancherel one-point density", r.verdict == "pass",
            f"13 sites within 3 SE (max dev {r.max_discrepancy:.2e})",
            t0, 120.0)


def test_criterion_10_edge_law_evaluator():
    t0 = time.perf_counter()
    H = kernels.airy_kernel_handle()
    stab = max(abs(fredholm._nystrom_det(H, t, 128)
                   - fredholm._nystrom_det(H, t, 256))
               for t in np.linspace(-6.0, 4.0, 11))
    grid = np.linspace(-6.0, 4.0, 11)
    vals = [fredholm.tracy_widom_cdf(t) for t in grid]
    monotone = all(b > a for a, b in zip(vals[:-1], vals[1:]))
    tails = (fredholm.tracy_widom_cdf(-10.0) < 1e-6
             and fredholm.tracy_widom_cdf(6.0) > 1.0 - 1e-6)
    draws = sample_g_batch(500, 500, 0.5, 10000, 110)
    smap = kernels.scaling_constants("thm43", {"gamma": 1.0, "q": 0.5})
    xs = np.sort(np.array([smap.to_limit(500, g) for g in draws]))
    ks = 0.0
    for xi in np.linspace(-4.0, 2.0, 13):
        emp = np.searchsorted(xs, xi, side="right") / xs.size
        ks = max(ks, abs(emp - harness._tw_on(xi)))
    _report(10, "edge-law evaluator",
            stab <= 1e-8 and monotone and tails and ks <= 0.05,
            f"doubling gap {stab:.2e} <= 1e-8; monotone; tails ok; "
            f"KS {ks:.4f} <= 0.05", t0, 300.0)


def test_criterion_11_arctic_ellipse():
    t0 = time.perf_counter()
    from detlab.growth import npr_boundary
    n, m = 256, 150
    details = []
    ok = True
    for a, tol, ts in ((1.0, 0.02, (0.0,)),
                       (1.0 / math.sqrt(2.0), 0.03, (-0.4, 0.0, 0.4))):
        q = a * a / (1.0 + a * a)
        p = 1.0 - q
        sums = {t: 0.0 for t in ts}
        for i in range(m):
            b = npr_boundary(aztec_shuffle(n, a, harness._shuffle_seed(
                111, i)))
            for t in ts:
                sums[t] += b(t * n)
        for t in ts:
            target = math.sqrt(q * (1.0 - t * t / p))
            rel = abs(sums[t] / m / n - target) / target
            details.append(f"a={a:.3f} t={t:+.1f} rel {rel:.3%}")
            if rel > tol:
                ok = False
    _report(11, "arctic ellipse boundary", ok, "; ".join(details), t0, 240.0)


def test_criterion_12_gue_density():
    t0 = time.perf_counter()
    spec = harness.ExperimentSpec("gue-rho1", {"N": 8}, 100000, 112,
                                  {"kind": "se", "k": 3.0})
    r = harness.run_exact_vs_mc(spec)
    _report(12, "GUE eigenvalue density", r.verdict == "pass",
            f"13 bins within 3 SE (max dev {r.max_discrepancy:.2e})",
            t0, 120.0)


def test_criterion_13_convergence_trends():
    t0 = time.perf_counter()
    seqs = {}
    for target in ("thm31_kernel", "thm35", "thm43"):
        r = harness.convergence_sweep(target, seed=113)
        seqs[target] = [e["v"] for e in r.empirical]
    for chain, labels in (
            ("bessel edge", ["bessel-airy alpha=1e2", "bessel-airy alpha=1e3",
                             "bessel-airy alpha=1e4"]),
            ("projection-to-bessel", ["krawtchouk-bessel N=50",
                                      "krawtchouk-bessel N=100",
                                      "krawtchouk-bessel N=200"])):
        seqs[chain] = [harness._run_identity(lab) for lab in labels]
    ok = all(all(b < a for a, b in zip(v[:-1], v[1:]))
             for v in seqs.values())
    detail = "; ".join(f"{k}: {['%.3g' % x for x in v]}"
                       for k, v in seqs.items())
    _report(13, "convergence trends", ok, detail, t0, 300.0)


def test_criterion_14_deterministic_reports():
    t0 = time.perf_counter()
    specs = [
        ("g-cdf", {"M": 2, "N": 3, "q": 0.5, "grid": [0, 2, 4]}, 500),
        ("lis-cdf", {"alpha": 2.0, "grid": [1, 2, 3]}, 500),
        ("aztec-lastline", {"n": 6, "a": 0.8, "r": 3}, 200),
        ("plancherel-rho1", {"alpha": 2.0, "grid": [-2, 0, 2]}, 500),
        ("gue-rho1", {"N": 4}, 500),
    ]
    for exp, params, samples in specs:
        s = harness.ExperimentSpec(exp, params, samples, 114,
                                   {"kind": "se", "k": 5.0})
        a = harness.run_exact_vs_mc(s).canonical_json()
        b = harness.run_exact_vs_mc(s).canonical_json()
        assert a == b, exp
    sw1 = harness.convergence_sweep("thm35", sizes=(25, 100)).canonical_json()
    sw2 = harness.convergence_sweep("thm35", sizes=(25, 100)).canonical_json()
    assert sw1 == sw2
    _report(14, "byte-identical reports", True,
            "5 experiments + 1 sweep reproduce canonically", t0, 120.0)

"""Samplers and bijections: fields, tilings, RSK, Schur data, GUE, droplet."""
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from detlab.growth import (DominoTiling, GrowthField, Partition, PathFamily,
                           aztec_shuffle, corner_growth_shape, domino_class,
                           endpoint_argmax, f_lambda, field_log_weight,
                           g_bruteforce, g_table, in_diamond, lis,
                           npr_boundary, npr_dominos, npr_shape, nucleation,
                           particle_array, path_log_weight, plancherel_sample,
                           plancherel_weight, png_height, point_to_line,
                           rsk_shape, sample_g_batch, sample_geometric_field,
                           sample_gue, sample_gue_batch, schur_measure,
                           schur_poly, staircase, standard_tableaux_count,
                           theorem41_forward, theorem41_inverse,
                           tiling_to_paths)
from detlab.growth.paths import (enumerate_paths, lgv_determinant,
                                 nonintersecting_total_weight)
from detlab.rng import stream


# ---------------------------------------------------------------------------
# Partitions


def test_partition_conjugate_involution():
    lam = Partition((4, 2, 2, 1))
    assert lam.conjugate().parts == (4, 3, 1, 1)
    assert lam.conjugate().conjugate() == lam


def test_partition_hooks_known_shape():
    assert sorted(Partition((2, 1)).hook_lengths()) == [1, 1, 3]


def test_partition_boundary_roundtrip():
    lam = Partition((3, 3, 1))
    pts = lam.boundary_path()
    assert Partition.from_boundary_path(pts) == lam


def test_staircase_shape():
    assert staircase(4).parts == (4, 3, 2, 1)
    assert len(staircase(3).cells()) == 6


# ---------------------------------------------------------------------------
# Weight fields and the corner recursion


def test_field_validation():
    lam = Partition((2, 1))
    with pytest.raises(ValueError):
        GrowthField(lam, {(1, 1): 1})  # missing cells
    with pytest.raises(ValueError):
        GrowthField(lam, {c: -1 for c in lam.cells()})


def test_g_table_vs_bruteforce_random():
    rng = stream(17, 0)
    for _ in range(25):
        M = int(rng.integers(1, 5))
        N = int(rng.integers(1, 5))
        lam = Partition((M,) * N)
        w = {c: int(rng.integers(0, 5)) for c in lam.cells()}
        f = GrowthField(lam, w)
        assert f.g_value(M, N) == g_bruteforce(f, M, N)


def test_geometric_field_reproducible_and_marginal():
    lam = Partition((1,))
    draws = [sample_geometric_field(lam, [0.7], [0.7], s).w[(1, 1)]
             for s in range(4000)]
    p = 0.49
    freq0 = sum(1 for d in draws if d == 0) / len(draws)
    assert abs(freq0 - (1 - p)) < 4 * math.sqrt(p * (1 - p) / len(draws))
    again = sample_geometric_field(lam, [0.7], [0.7], 5).w
    assert again == sample_geometric_field(lam, [0.7], [0.7], 5).w


def test_geometric_field_validation():
    with pytest.raises(ValueError):
        sample_geometric_field(Partition((2,)), [0.5], [0.5, 0.5], 0)
    with pytest.raises(ValueError):
        sample_geometric_field(Partition((1,)), [2.0], [0.9], 0)


def test_sample_g_batch_single_cell_is_geometric():
    q = 0.4
    draws = sample_g_batch(1, 1, q, 20000, 3)
    for k in range(3):
        p = (1 - q) * q ** k
        emp = float(np.mean(draws == k))
        assert abs(emp - p) < 3 * math.sqrt(p * (1 - p) / draws.size)
    assert np.array_equal(draws, sample_g_batch(1, 1, q, 20000, 3))


def test_sample_g_batch_matches_table_distribution():
    # G(2,2) from the batched sampler vs independent per-field recursion
    q, m = 0.5, 4000
    batch = sample_g_batch(2, 2, q, m, 11)
    lam = Partition((2, 2))
    p = math.sqrt(q)
    ref = np.array([GrowthField(lam, sample_geometric_field(
        lam, [p, p], [p, p], 1000 + s).w).g_value(2, 2) for s in range(m)])
    for t in (1, 3, 6):
        a, b = float(np.mean(batch <= t)), float(np.mean(ref <= t))
        assert abs(a - b) < 4 * math.sqrt(0.25 / m) * 2


def test_corner_growth_shape_contained():
    n = 12
    lam = corner_growth_shape(0.5, n, 2)
    assert staircase(n).contains(lam)
    assert lam == corner_growth_shape(0.5, n, 2)


# ---------------------------------------------------------------------------
# Path enumeration and determinant counting


def _ladder_graph(C, H, weights):
    """Column graph: unit up-steps (weighted) and unit right-steps."""
    g = {}
    for j in range(C):
        for h in range(H + 1):
            edges = [((j + 1, h), 1)]
            if h < H:
                edges.append(((j, h + 1), weights[j]))
            g[(j, h)] = edges
    return g


def test_lgv_matches_enumeration_small():
    g = _ladder_graph(4, 3, [2, 1, 3, 1])
    starts = [(0, 0), (0, 1)]
    ends = [(4, 1), (4, 3)]
    assert lgv_determinant(g, starts, ends) == \
        nonintersecting_total_weight(g, starts, ends)


def test_enumerate_paths_weights_multiply():
    g = {(0, 0): [((1, 0), 2), ((1, 1), 3)], (1, 0): [((2, 0), 5)],
         (1, 1): [((2, 0), 7)]}
    out = enumerate_paths(g, (0, 0), (2, 0))
    assert sorted(w for _, w in out) == [10, 21]


def test_vertex_disjoint_check():
    fam = PathFamily("CS-II", [[(0, 0), (1, 0)], [(1, 0), (2, 0)]])
    with pytest.raises(Exception):
        fam.check_vertex_disjoint()


# ---------------------------------------------------------------------------
# Field <-> path bijection


def test_bijection_roundtrip_random_fields():
    rng = stream(23, 0)
    for _ in range(30):
        parts = tuple(sorted((int(rng.integers(1, 5))
                              for _ in range(int(rng.integers(1, 5)))),
                             reverse=True))
        lam = Partition(parts)
        w = {c: int(rng.integers(0, 6)) for c in lam.cells()}
        f = GrowthField(lam, w)
        fam = theorem41_forward(f)
        fam.check_vertex_disjoint()
        g = theorem41_inverse(fam, lam)
        assert g.w == f.w


def test_bijection_preserves_weight():
    lam = Partition((3, 2))
    a = (0.5, 0.4, 0.6)
    b = (0.3, 0.7)
    rng = stream(29, 0)
    for _ in range(10):
        w = {c: int(rng.integers(0, 4)) for c in lam.cells()}
        f = GrowthField(lam, w)
        fam = theorem41_forward(f)
        assert path_log_weight(fam, lam, a, b) == pytest.approx(
            field_log_weight(f, a, b), abs=1e-10)


def test_inverse_rejects_wrong_path_count():
    lam = Partition((2, 2))
    with pytest.raises(Exception):
        theorem41_inverse(PathFamily("lambda-graph", [[(-2, 0), (2, 0)]]),
                          lam)


# ---------------------------------------------------------------------------
# Aztec tilings


def test_domino_classes_partition_checkerboard():
    assert domino_class(0, 0, "H", 2) == "N"
    assert domino_class(1, 0, "H", 2) == "S"
    with pytest.raises(ValueError):
        domino_class(0, 0, "D", 2)


def test_shuffle_order_one_frequencies():
    a = 1.5
    q = a * a / (1.0 + a * a)
    m = 4000
    vert = sum(aztec_shuffle(1, a, s).vertical_count // 2 for s in range(m))
    assert abs(vert / m - q) < 4 * math.sqrt(q * (1 - q) / m)


def test_shuffle_order_two_hits_all_tilings():
    seen = {aztec_shuffle(2, 1.0, s).dominos for s in range(300)}
    assert len(seen) == 8


def test_shuffle_deterministic_and_valid():
    t1 = aztec_shuffle(6, 0.8, 42)
    t2 = aztec_shuffle(6, 0.8, 42)
    assert t1.dominos == t2.dominos
    assert len(t1.dominos) == 6 * 7


def test_shuffle_validation():
    with pytest.raises(ValueError):
        aztec_shuffle(0, 1.0, 1)
    with pytest.raises(ValueError):
        aztec_shuffle(2, -1.0, 1)


def test_tiling_json_roundtrip():
    t = aztec_shuffle(3, 1.2, 7)
    back = DominoTiling.from_json(t.to_json())
    assert back.dominos == t.dominos and back.n == t.n


def test_tiling_json_rejects_bad_class():
    import json
    t = aztec_shuffle(2, 1.0, 1)
    payload = json.loads(t.to_json())
    d = payload["dominos"][0]
    d["class"] = "S" if d["class"] != "S" else "N"
    with pytest.raises(ValueError):
        DominoTiling.from_json(json.dumps(payload))


def test_paths_are_disjoint_and_anchored():
    t = aztec_shuffle(5, 1.0, 3)
    fam = tiling_to_paths(t)
    assert len(fam) == 5
    for r, path in enumerate(fam.paths, start=1):
        assert path[0] == (-t.n - 1 + r, -r + 0.5)
        assert path[-1] == (t.n + 1 - r, -r + 0.5)


def test_npr_boundary_endpoints_and_domain():
    b = npr_boundary(aztec_shuffle(4, 1.0, 9))
    assert b(-4.0) == pytest.approx(-0.5)
    assert b(4.0) == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        b(5.0)


def test_particle_array_frozen_lines():
    n = 4
    t = aztec_shuffle(n, 1.0, 13)
    xs = particle_array(tiling_to_paths(t), n)
    assert xs.shape == (2 * n + 1, n)
    want = np.array([1 - j for j in range(1, n + 1)])
    assert np.array_equal(xs[0], want)
    assert np.array_equal(xs[2 * n], want)
    # particles on each line are strictly decreasing in the index
    for r in range(2 * n + 1):
        assert np.all(np.diff(xs[r]) < 0)


def test_npr_shape_counts_npr_dominos():
    t = aztec_shuffle(6, 1.0, 21)
    assert npr_shape(t).size == len(npr_dominos(t))


def test_in_diamond_cell_count():
    n = 3
    cells = [(x, y) for x in range(-n - 1, n + 1)
             for y in range(-n - 1, n + 1) if in_diamond(x, y, n)]
    assert len(cells) == 2 * n * (n + 1)


# ---------------------------------------------------------------------------
# RSK / permutations


def test_lis_equals_first_row_exhaustive():
    for N in range(1, 7):
        for perm in itertools.permutations(range(1, N + 1)):
            assert rsk_shape(perm)[1] == lis(perm)


def test_rsk_shape_known_example():
    assert rsk_shape((3, 1, 2)).parts == (2, 1)
    with pytest.raises(ValueError):
        rsk_shape((1, 1, 2))


def test_plancherel_sample_modes():
    lam = plancherel_sample("fixed", 3, N=10)
    assert lam.size == 10
    lam = plancherel_sample("poisson", 3, alpha=4.0)
    assert lam.size >= 0
    with pytest.raises(ValueError):
        plancherel_sample("gamma", 0)


def test_tableaux_count_matches_hooks():
    for parts in ((3, 2, 1), (4, 4), (2, 2, 2, 1), (5,)):
        lam = Partition(parts)
        assert f_lambda(lam) == standard_tableaux_count(lam)


def test_plancherel_weights_sum_to_one():
    N = 6
    total = 0.0
    for parts in _partitions_of(N):
        total += plancherel_weight(Partition(parts), N)
    assert total == pytest.approx(1.0, abs=1e-12)


def _partitions_of(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions_of(n - first, first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Schur polynomials and the Schur measure


def test_schur_poly_known_values():
    assert schur_poly(Partition((1,)), [0.2, 0.3]) == pytest.approx(0.5)
    x, y = 0.2, 0.3
    assert schur_poly(Partition((2, 1)), [x, y]) == pytest.approx(
        x * y * (x + y), abs=1e-14)
    assert schur_poly(Partition((1, 1, 1)), [0.2, 0.3]) == 0.0


def test_schur_measure_normalizes():
    a, b = [0.3], [0.4]
    total = sum(schur_measure(Partition((k,) if k else ()), a, b)
                for k in range(60))
    assert total == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# GUE


def test_gue_trace_square_convention():
    N = 4
    eigs = sample_gue_batch(N, 4000, 5)
    mean_tr2 = float(np.mean((eigs ** 2).sum(axis=1)))
    # E Tr M^2 = N^2/2 under the e^{-Tr M^2} density
    se = float(np.std((eigs ** 2).sum(axis=1))) / math.sqrt(eigs.shape[0])
    assert abs(mean_tr2 - N * N / 2.0) < 5 * se


def test_gue_deterministic_and_sorted():
    e1 = sample_gue(6, 12)
    assert np.array_equal(e1, sample_gue(6, 12))
    assert np.all(np.diff(e1) >= 0)
    with pytest.raises(ValueError):
        sample_gue(17, 0)


# ---------------------------------------------------------------------------
# Droplet heights


def _staircase_field(order, q, seed):
    p = math.sqrt(q)
    return sample_geometric_field(staircase(order), [p] * order,
                                  [p] * order, seed)


def test_png_height_matches_recursion():
    f = _staircase_field(7, 0.25, 31)
    G = g_table(f)
    assert png_height(f, 0, 3) == G[(2, 2)]
    assert png_height(f, 1, 4) == G[(3, 2)]
    assert png_height(f, 9, 4) == 0


def test_nucleation_sublattice():
    f = _staircase_field(5, 0.25, 7)
    assert nucleation(f, 0, 2) == 0
    assert nucleation(f, 0, 1) == f.w[(1, 1)]


def test_point_to_line_is_max_over_endpoints():
    f = _staircase_field(5, 0.3, 3)
    G = g_table(f)
    want = max(G[(3 + u, 3 - u)] for u in (-2, -1, 0, 1, 2))
    assert point_to_line(f, 3) == want
    u = endpoint_argmax(f, 3)
    assert G[(3 + u, 3 - u)] == want


def test_png_needs_staircase():
    lam = Partition((2, 2))
    f = GrowthField(lam, {c: 0 for c in lam.cells()})
    with pytest.raises(ValueError):
        png_height(f, 0, 1)


# ---------------------------------------------------------------------------
# Property tests


@settings(max_examples=60, deadline=None)
@given(st.permutations(list(range(1, 8))))
def test_lis_never_exceeds_shape_row(perm):
    shape = rsk_shape(perm)
    assert shape[1] == lis(perm)
    assert shape.size == len(perm)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=6), min_size=1,
                max_size=5))
def test_conjugate_preserves_size(parts):
    lam = Partition(tuple(sorted(parts, reverse=True)))
    assert lam.conjugate().size == lam.size

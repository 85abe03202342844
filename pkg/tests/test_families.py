import math

import numpy as np
import pytest

from barymorph import (
    eades_garvan,
    eg_chain_oracle,
    nested_triangles,
    random_stacked_triangulation,
    ring_triangle_areas,
    separated_object_extremes,
    triangle_resolution,
    validate_coefficients,
    verify_planar_straight_line,
)
from barymorph.errors import ParameterOutOfRange

SQRT3_2 = math.sqrt(3.0) / 2.0


@pytest.mark.parametrize("n,lam,r", [
    (4, 0.25, 0.5),
    (5, 0.0, 0.5),
    (5, 0.3, 0.5),
    (5, 0.25, 0.0),
    (5, 0.25, 1.0),  # r = 1 exceeds the sqrt(3)/2 cap
])
def test_chain_rejects_bad_parameters(n, lam, r):
    with pytest.raises(ParameterOutOfRange):
        eades_garvan(n, lam, r)


def test_chain_outer_resolution_is_r():
    for r in (0.05, 0.25, 0.5, SQRT3_2):
        inst = eades_garvan(6, 0.25, r)
        assert triangle_resolution(inst.outer) == pytest.approx(r, rel=1e-12)


def test_chain_structure():
    inst = eades_garvan(9, 0.2, 0.5)
    assert inst.chain == (3, 4, 5, 6, 7, 8)
    assert inst.graph.vertex_count == 9
    report = validate_coefficients(inst.graph, inst.matrix)
    assert report.violations == ()


def test_oracle_frozen_n5():
    x = eg_chain_oracle(5, 0.25, 1.0)
    assert x[0] == pytest.approx(4.0 / 15.0, rel=1e-15)
    assert x[1] == pytest.approx(1.0 / 15.0, rel=1e-15)


def test_oracle_frozen_n7():
    x = eg_chain_oracle(7, 0.25, 0.5)
    expected = np.array([56.0, 15.0, 4.0, 1.0]) / 209.0 * 0.5
    assert np.allclose(x, expected, rtol=1e-14)


def test_oracle_decay():
    lam, r = 0.25, SQRT3_2
    x = eg_chain_oracle(30, lam, r)
    assert np.all(np.diff(x) < 0.0)
    ratio = lam / (1.0 - lam)
    assert np.all(x[1:] <= ratio * x[:-1] + 1e-15)
    # tail bound drives the exponential lower-bound constructions
    assert x[-1] <= r * ratio ** (30 - 4)


def test_nested_rejects_bad_n():
    for n in (3, 7, 8):
        with pytest.raises(ParameterOutOfRange):
            nested_triangles(n)


def test_nested_layout_gamma0():
    inst = nested_triangles(6)
    assert inst.k == 2
    u1, v1, z1 = inst.rings[0]
    assert tuple(inst.gamma0.coords[u1]) == (-1.0, -1.0)
    assert tuple(inst.gamma0.coords[v1]) == (1.0, -1.0)
    assert tuple(inst.gamma0.coords[z1]) == (0.0, 1.0)


def test_nested_layout_gamma1_rotation():
    inst = nested_triangles(9)
    u1, v1, z1 = inst.rings[0]
    assert tuple(inst.gamma1.coords[z1]) == (-1.0, -1.0)
    assert tuple(inst.gamma1.coords[v1]) == (0.0, 1.0)
    assert tuple(inst.gamma1.coords[u1]) == (1.0, -1.0)
    # the outer ring never moves
    uk, vk, zk = inst.rings[-1]
    for w in (uk, vk, zk):
        assert np.array_equal(inst.gamma0.coords[w], inst.gamma1.coords[w])


def test_nested_min_distance():
    inst = nested_triangles(12)
    rep = separated_object_extremes(inst.gamma0)
    assert rep.min_dist == pytest.approx(1.0 / math.sqrt(13.0), rel=1e-14)


def test_nested_outer_resolution():
    inst = nested_triangles(15)
    assert triangle_resolution(inst.outer) == pytest.approx(0.8, rel=1e-14)


def test_nested_drawings_planar():
    inst = nested_triangles(18)
    for d in (inst.gamma0, inst.gamma1):
        ok, violations = verify_planar_straight_line(d)
        assert ok, violations


def test_nested_ring_areas():
    inst = nested_triangles(12)
    areas = ring_triangle_areas(inst.gamma0, inst.rings)
    expected = [2.0 * i * i for i in range(1, inst.k + 1)]
    assert np.allclose(areas, expected, rtol=1e-14)


def test_random_stacked_counts_and_determinism():
    a = random_stacked_triangulation(25, seed=7)
    b = random_stacked_triangulation(25, seed=7)
    c = random_stacked_triangulation(25, seed=8)
    assert a.vertex_count == 25
    assert len(a.edges) == 3 * 25 - 6
    assert a == b
    assert a != c


def test_random_stacked_accepts_generator():
    rng = np.random.default_rng(11)
    g1 = random_stacked_triangulation(10, rng=rng)
    g2 = random_stacked_triangulation(10, rng=rng)
    # the generator advances: consecutive draws differ
    assert g1 != g2
    with pytest.raises(ParameterOutOfRange):
        random_stacked_triangulation(3)

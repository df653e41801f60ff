from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crepant_kit.linalg import det_int
from crepant_kit.toric import (
    Fan, FanError, cone_index, is_crepant, is_smooth, resolve_p1344, singular_report, stellar_subdivide, wps_fan,
)
from crepant_kit.verifier import FIG4_CONES


@pytest.fixture(scope="module")
def fans():
    return resolve_p1344()


def test_wps_fan():
    f = wps_fan([1, 3, 4, 4])
    assert f.rays[0] == (-3, -4, -4) and len(f.cones) == 4
    p2 = wps_fan([1, 1, 1])
    assert p2.rays[0] == (-1, -1)
    assert is_smooth(p2) == (True, None)
    assert singular_report(p2) == []
    with pytest.raises(FanError):
        wps_fan([3, 1, 4, 4])


def test_cone_indices(fans):
    sigma, _ = fans
    idx = {sigma.cone_names(c): i for c, i in singular_report(sigma)}
    assert idx == {("v0", "v2", "v3"): 3, ("v0", "v1", "v3"): 4, ("v0", "v1", "v2"): 4, ("v0", "v1"): 4}
    assert cone_index(sigma, (1, 2, 3)) == 1
    smooth, bad = is_smooth(sigma)
    assert not smooth and cone_index(sigma, bad) > 1


def test_first_insertion_splits_one_cone():
    sigma = wps_fan([1, 3, 4, 4])
    f = stellar_subdivide(sigma, (-1, -1, -1), "Q4")
    assert len(f.cones) == 6
    assert {("v0", "v1", "v2"), ("v0", "v1", "v3")} <= {f.cone_names(c) for c in f.cones}
    with pytest.raises(FanError):
        stellar_subdivide(f, (-1, -1, -1))
    with pytest.raises(FanError):
        stellar_subdivide(f, (-2, -2, -2))


def test_resolution(fans):
    sigma, sigma_p = fans
    assert len(sigma_p.rays) == 8
    assert is_smooth(sigma_p) == (True, None)
    assert singular_report(sigma_p) == []
    assert {frozenset(sigma_p.cone_names(c)) for c in sigma_p.cones} == {frozenset(c) for c in FIG4_CONES}
    ok, cert = is_crepant(sigma, sigma_p)
    assert ok
    third = Fraction(1, 3)
    assert cert["Q4"]["coefficients"] == {"v0": third, "v2": third, "v3": third}
    assert cert["Q1"]["coefficients"] == {"v0": Fraction(1, 4), "v1": Fraction(3, 4)}
    assert all(c["sum"] == 1 for c in cert.values())


def test_support_is_preserved(fans):
    # every refined cone sits inside an original cone (is_crepant raises otherwise)
    sigma, sigma_p = fans
    is_crepant(sigma, sigma_p)
    total = sum(abs(det_int([list(sigma_p.rays[k]) for k in c])) for c in sigma_p.cones)
    assert total == sum(abs(det_int([list(sigma.rays[k]) for k in c])) for c in sigma.cones)


def test_non_crepant_insert():
    sigma = wps_fan([1, 3, 4, 4])
    f = stellar_subdivide(sigma, (0, -1, -2), "X")
    ok, cert = is_crepant(sigma, f)
    assert not ok and cert["X"]["sum"] != 1


unimodular_steps = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)), max_size=8)


@given(unimodular_steps, st.permutations([0, 1, 2]))
def test_index_invariance(steps, perm):
    sigma = wps_fan([1, 3, 4, 4])
    m = [[int(i == j) for j in range(3)] for i in range(3)]
    for a, b, c in steps:
        if a != b:
            m[a] = [x + c * y for x, y in zip(m[a], m[b])]
    assert abs(det_int(m)) == 1
    image = tuple(tuple(sum(r[j] * m[j][i] for j in range(3)) for i in range(3)) for r in sigma.rays)
    moved = Fan(image, sigma.cones, sigma.names)
    for cone in sigma.cones:
        permuted = tuple(cone[k] for k in perm)
        assert cone_index(moved, permuted) == cone_index(sigma, cone)

import pytest

from conftest import load_system, ring
from zerodec.groebner import buchberger, ideal_of_points
from zerodec.perm import Permutation, group_closure, symmetric_group_on
from zerodec.polyring import apply_perm_polys
from zerodec.triangular import (
    ContainmentError,
    is_regular,
    is_triangular,
    orbit_triangular,
    resultant,
    verify_containment,
)

R2 = ring("x1 x2")


def tri(R, rows):
    check = is_triangular([R.parse(s) for s in rows])
    assert check, check.reason
    return check.triangular


def test_shape_checks():
    assert is_triangular([R2.parse("x1*x2 - 1"), R2.parse("x1^2 - 2")])
    assert not is_triangular([R2.parse("x2 - 1"), R2.parse("x1*x2")])
    assert "constant" in is_triangular([R2.parse("3"), R2.parse("x2")]).reason
    assert not is_triangular([R2.parse("x1")])


def test_resultant_against_evaluation():
    # for monic linear a = x - r, Res(a, b) = b(r)
    assert resultant(R2.parse("x1 - 2"), R2.parse("x1^2 + 1"), 0) == R2.constant(5)
    r = resultant(R2.parse("x2 - x1"), R2.parse("x2^2 - 3"), 1)
    assert r == R2.parse("x1^2 - 3")


def test_regularity():
    assert not is_regular(tri(R2, ["x1^2 - 1", "(x1 - 1)*x2 + 1"]))
    assert is_regular(tri(R2, ["x1^2 - 1", "(x1 - 2)*x2 + 1"]))


def test_orbit_on_symmetric_point_set():
    pts = [(1, 2), (-1, 2), (2, 1), (2, -1)]
    G = ideal_of_points(pts, R2)
    T = tri(R2, ["x1^2 - 1", "x2 - 2"])
    orbit = orbit_triangular(T, group_closure([Permutation.parse("(1 2)", 2)], 2), G)
    assert [e.triangular.key() for e in orbit] == [T.key(), tri(R2, ["x1 - 2", "x2^2 - 1"]).key()]
    assert all(e.verified for e in orbit)


def test_orbit_rejects_uncontained_input():
    G = ideal_of_points([(1, 2)], R2)
    with pytest.raises(ContainmentError):
        orbit_triangular(tri(R2, ["x1 + 1", "x2"]), symmetric_group_on(range(2), 2), G)


@pytest.fixture(scope="module")
def five():
    R, ps = load_system("cyclic5.txt")
    return R, ps, buchberger(ps)


def test_five_variable_t1_and_first_image_contained(five):
    R, _, G = five
    T1 = tri(R, ["x1+1", "x2+1", "1+x3", "1-3*x4+x4^2", "-3+x4+x5"])
    assert verify_containment(T1, G)
    T2 = is_triangular(apply_perm_polys(Permutation.parse("(1 4)", 5), T1.polys)).triangular
    assert verify_containment(T2, G)


def test_five_variable_images_24_and_34_not_contained(five):
    R, ps, G = five
    T1 = tri(R, ["x1+1", "x2+1", "1+x3", "1-3*x4+x4^2", "-3+x4+x5"])
    for name, free in [("(2 4)", 1), ("(3 4)", 2)]:
        T = is_triangular(apply_perm_polys(Permutation.parse(name, 5), T1.polys)).triangular
        assert not verify_containment(T, G)
        # ground truth: on Zero(T) every other variable is -1 and x5 = 3 - x_free,
        # so the second generator becomes a nonzero constant
        f2 = ps[1]
        for i in range(5):
            if i not in (free, 4):
                f2 = f2.substitute(i, -1)
        # f2 is linear in x5: f2 = A + B*x5
        value = f2.coeff_in(4, 0) + f2.coeff_in(4, 1) * R.parse(f"3 - x{free + 1}")
        assert value == R.constant(-5)

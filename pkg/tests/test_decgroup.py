import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load_system, ring
from zerodec.decgroup import (
    DecOptions,
    EnumerationCapError,
    NotRadicalError,
    VariablePartition,
    dec_from_points,
    dec_group,
    dec_oracle_member,
    partition_from_points,
    permute_point,
    sym_group,
)
from zerodec.groebner import DuplicatePointError, NotZeroDimensionalError, buchberger, ideal_of_points
from zerodec.perm import Permutation, PermGroup, symmetric_group_on


def test_worked_symbolic_and_cross_check():
    _, ps = load_system("worked4.txt")
    res = dec_group(ps, DecOptions(cross_check=True))
    assert res.strategy == "symbolic"
    assert res.partition == VariablePartition(((0, 1, 2), (3,)))
    assert [g.order for g in res.block_sym_groups] == [2, 1]
    assert [str(s) for s in res.dec_group] == ["()", "(1 2)"]
    assert not res.gap


def test_oracle_only_path_agrees():
    _, ps = load_system("worked4.txt")
    res = dec_group(ps, DecOptions(cutoff=2))
    assert res.strategy == "oracle-only"
    assert res.block_char_polys is None
    assert res.candidate_group.order == 6
    assert [str(s) for s in res.dec_group] == ["()", "(1 2)"]


def test_radical_policies():
    R = ring("x y")
    ps = [R.parse("x^2"), R.parse("y^2")]
    with pytest.raises(NotRadicalError):
        dec_group(ps, DecOptions(radical="strict"))
    res = dec_group(ps)
    assert res.radicalized and res.warnings
    assert res.dec_group.order == 2
    # without radicalization the ideal <x^2, y^2> is still symmetric
    assert dec_group(ps, DecOptions(radical="off")).dec_group.order == 2


def test_unit_ideal_gives_full_symmetric_group():
    R = ring("x y z")
    res = dec_group([R.parse("x"), R.parse("x - 1")])
    assert res.strategy == "empty-variety"
    assert res.dec_group.order == 6
    assert res.warnings


def test_rejects_positive_dimension_and_bad_options():
    R = ring("x y")
    with pytest.raises(NotZeroDimensionalError):
        dec_group([R.parse("x*y")])
    with pytest.raises(ValueError):
        DecOptions(radical="maybe")


def test_enumeration_cap():
    names = " ".join(f"x{i}" for i in range(1, 5))
    R = ring(names)
    ps = [R.parse(f"x{i}^2 - 1") for i in range(1, 5)]
    with pytest.raises(EnumerationCapError):
        dec_group(ps, DecOptions(enumeration_cap=3))


def test_sym_group_product():
    R = ring("t1 t2 t3 t4")
    F = R.parse("(t1+t3)*(t2+t4)")
    g = sym_group(F, range(4))
    assert g.order == 8
    # oracle: brute force over S_4 directly on the polynomial
    brute = [Permutation(p) for p in itertools.permutations(range(4)) if F.permute(Permutation(p)) == F]
    assert g == PermGroup(4, brute)


def test_sym_group_rejects_tags_outside_block():
    R = ring("t1 t2 t3")
    with pytest.raises(ValueError):
        sym_group(R.parse("t1 + t3"), [0, 1])


def test_oracle_membership_symmetric():
    _, ps = load_system("symmetric3.txt")
    G = buchberger(ps)
    for images in itertools.permutations(range(3)):
        assert dec_oracle_member(Permutation(images), G)


def test_points_path_and_gap_witness():
    res = dec_from_points([(0, 1, 5), (1, 0, 6)])
    assert res.candidate_group.order == 2 and res.dec_group.order == 1
    assert res.gap and res.warnings
    with pytest.raises(DuplicatePointError):
        dec_from_points([(1, 2), (1, 2)])


def test_partition_from_points():
    pts = [(2, 3, 5, 6), (2, 5, 3, 6), (2, 5, 6, 3), (2, 6, 5, 3)]
    part = partition_from_points(pts)
    assert {frozenset(b) for b in part.one_based()} == {frozenset({1}), frozenset({2, 3}), frozenset({4})}


def test_report_is_json_serialisable():
    _, ps = load_system("worked4.txt")
    d = dec_group(ps).to_dict(include_gb=True)
    text = json.dumps(d)
    assert '"gap": false' in text
    assert d["partition"] == [[1, 2, 3], [4]]


def _brute_force_dec(pts, n):
    pset = set(pts)
    return PermGroup(
        n,
        [Permutation(p) for p in itertools.permutations(range(n))
         if {permute_point(Permutation(p), q) for q in pts} == pset],
    )


def point_sets(n):
    return st.sets(st.tuples(*[st.integers(-1, 2)] * n), min_size=1, max_size=4).map(sorted)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), point_sets(n))))
def test_dec_matches_point_permutation_ground_truth(case):
    n, pts = case
    names = " ".join(f"x{i + 1}" for i in range(n))
    res = dec_group(ideal_of_points(pts, ring(names)))
    truth = _brute_force_dec(pts, n)
    assert res.dec_group == truth
    assert dec_from_points(pts).dec_group == truth
    assert truth.is_subgroup_of(res.candidate_group)
    assert all(res.partition.preserves(s) for s in res.candidate_group)


@settings(max_examples=20, deadline=None)
@given(point_sets(3), st.permutations(range(3)))
def test_relabeling_equivariance(pts, images):
    tau = Permutation(tuple(images))
    R = ring("x1 x2 x3")
    G = ideal_of_points(pts, R)
    dec = dec_group(G).dec_group
    moved = dec_group([g.permute(tau) for g in G.generators]).dec_group
    assert moved == dec.conjugate(tau)


def test_full_symmetric_points():
    pts = [p for p in itertools.permutations([0, 1, 2])]
    assert dec_from_points(pts).dec_group == symmetric_group_on(range(3), 3)

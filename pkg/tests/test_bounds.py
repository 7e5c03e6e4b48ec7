from fractions import Fraction

import pytest

from kroman.bounds import (
    COLUMNS,
    compare,
    dominance_mismatches,
    dominance_pattern,
    dominance_regions,
    expected_dominance,
    lower_bound,
    lower_bounds,
    rows_to_csv,
    upper_bound,
    upper_bounds,
)
from kroman.errors import InputError
from kroman.grid import GridSpec


def values(m, n, k):
    return {b.name: b.value for b in upper_bounds(m, n, k) if b.applicable}


def test_upper_bounds_examples():
    assert values(3, 4, 1) == {"L": 6, "U": 12, "P": 16}
    assert not upper_bound("S", 4, 1).applicable
    assert values(4, 3, 2) == {"A": 9}
    v = values(3, 10, 2)
    assert min(v, key=v.get) == "L" and v["L"] == 22


def test_column_order_and_flags():
    assert [b.name for b in upper_bounds(3, 5, 2)] == ["L", "U", "P", "S"]
    assert [b.name for b in upper_bounds(4, 5, 2)] == ["A", "C", "B", "D"]
    assert [b.applicable for b in upper_bounds(4, 5, 8)] == [True, True, True, False]


def test_upper_bounds_rejects_other_m():
    with pytest.raises(InputError):
        upper_bounds(5, 4, 1)
    with pytest.raises(InputError):
        upper_bound("Z", 4, 1)


def test_relaxed_forms():
    assert upper_bound("U", 4, 1).relaxed == Fraction(3 * 4 + 27 * 4 + 2 - 2, 5)
    assert upper_bound("L", 4, 1).relaxed is None
    assert upper_bound("A", 4, 1).relaxed is None
    assert upper_bound("D", 4, 2).relaxed == Fraction(24 + 10 + 96 + 32, 4)


def test_relaxation_sound_on_grid():
    for k in range(1, 101):
        for n in range(4, 101):
            for name in "UPSCBD":
                b = upper_bound(name, n, k)
                assert b.relaxation_holds(), (name, n, k)


def test_relaxation_of_C_is_strict():
    for k in range(1, 101):
        for n in range(4, 101):
            b = upper_bound("C", n, k)
            assert b.value < b.relaxed


def test_lower_bound_examples():
    assert lower_bound(GridSpec.torus(5, 5), 1).value == 10
    assert lower_bound(GridSpec.cylinder(3, 4), 2).value == 8
    lb = lower_bound(GridSpec.cylinder(3, 1), 1)
    assert (lb.name, lb.value) == ("LowerRegular", 2)


def test_lower_bounds_families():
    names = [b.name for b in lower_bounds(GridSpec.cylinder(4, 5), 2)]
    assert names == ["LowerCylinder"]
    names = [b.name for b in lower_bounds(GridSpec.cylinder(4, 2), 2)]
    assert names == ["LowerRegular", "LowerCylinder"]
    assert [b.name for b in lower_bounds(GridSpec.torus(3, 3), 1)] == ["LowerRegular"]
    assert lower_bound(GridSpec.cylinder(4, 2), 2).value == 6


@pytest.mark.parametrize(
    "n, best",
    [(4, ("A",)), (10, ("A",)), (11, ("A", "B")), (12, ("A", "B")), (13, ("B",)), (40, ("B",))],
)
def test_k15_crossover(n, best):
    (row,) = compare(4, [15], [n])
    assert row.best == best


def test_compare_ordering_and_ties():
    rows = compare(3, [2, 1], [5, 4])
    assert [(r.k, r.n) for r in rows] == [(2, 5), (2, 4), (1, 5), (1, 4)]
    for r in rows:
        assert r.best and all(r.values[b] == min(r.values.values()) for b in r.best)


def test_compare_empty_range():
    with pytest.raises(InputError):
        compare(3, [], [4])


def test_dominance_table_m3():
    assert dominance_pattern(3, 31, 200) == "U"
    assert dominance_pattern(3, 30, 200) == "P"
    assert dominance_mismatches(3, range(14, 41), 200) == []


def test_dominance_table_m4():
    assert dominance_pattern(4, 53, 200) == "B"
    assert expected_dominance(4, 56) == "C"
    assert dominance_mismatches(4, range(53, 150), 200) == []


def test_A_never_best_from_k53():
    rows = compare(4, range(53, 80), range(4, 301))
    assert not any("A" in r.best for r in rows)
    assert {b for r in rows for b in r.best} == {"B", "C"}


def test_A_best_at_n4_or_n5_for_small_k():
    # holds for every k <= 34; first k where B already wins at n = 4 and 5 is 35
    rows = compare(4, range(1, 53), [4, 5])
    with_a = {r.k for r in rows if "A" in r.best}
    assert set(range(1, 35)) <= with_a
    assert 35 not in with_a


def test_D_never_strictly_useful():
    rows = compare(4, range(1, 14), range(4, 200))
    assert not any(r.best == ("D",) for r in rows)
    assert not any("D" in r.best for r in rows)


def test_k16_C_overtakes_A():
    rows = compare(4, [16], range(4, 60))
    first_c = next(r.n for r in rows if "C" in r.best)
    assert all("A" not in r.best for r in rows if r.n > first_c)


def test_gap_between_U_and_P_grows():
    for k in (1, 6, 11, 16, 21, 26, 31):
        gaps = [upper_bound("P", n, k).value - upper_bound("U", n, k).value for n in range(4, 201)]
        assert all(b - a >= 2 for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] > 400


def test_abs_gap_dips_once_when_sign_changes():
    # k = 6: P - U goes 2, 0, -3, ... in n = 4, 5, 6 so |U - P| is not monotone there
    gaps = [abs(upper_bound("U", n, 6).value - upper_bound("P", n, 6).value) for n in range(4, 8)]
    assert gaps == [2, 0, 3, 5]


def test_csv_schema_and_stability():
    rows = compare(4, [15], range(9, 14))
    text = rows_to_csv(rows, 4)
    lines = text.splitlines()
    assert lines[0] == "m,k,n,A,C,B,D,best"
    assert lines[1] == "4,15,9,144,152,146,,A"
    assert lines[3] == "4,15,11,176,184,176,,A+B"
    assert text == rows_to_csv(compare(4, [15], range(9, 14)), 4)
    assert rows_to_csv(compare(3, [1], [4]), 3).splitlines()[1] == "3,1,4,6,12,16,,L"


def test_dominance_regions():
    regions = dominance_regions(compare(4, [15], range(4, 41)))
    assert regions == [(15, 4, 10, ("A",)), (15, 11, 12, ("A", "B")), (15, 13, 40, ("B",))]


@pytest.mark.parametrize("m", [3, 4])
def test_values_nonnegative(m):
    for k in range(1, 40):
        for n in range(1, 40):
            for b in upper_bounds(m, n, k):
                assert not b.applicable or b.value >= 0
                assert b.name in COLUMNS[m]

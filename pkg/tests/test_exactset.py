import json
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftcis.errors import ExcludedAlphaError, GapError, LengthError, OverlapError, ValidationError
from shiftcis.exactset import (
    AlphaRegion,
    IntervalQ,
    admissible_region,
    analyze,
    as_rational,
    congruence_decompose,
    f_of_n,
    index_formula,
    riesz_basis,
    transversal_from_json,
    validate_transversal,
)

from .conftest import SETS


def intervals(region):
    return [(iv.lo, iv.hi) for iv in region.admissible_intervals()]


# --- rationals and intervals ------------------------------------------------


def test_as_rational_reads_floats_by_their_shortest_repr():
    assert as_rational(0.1) == F(1, 10)
    assert as_rational("3/8") == F(3, 8)
    assert as_rational(-2) == -2


def test_interval_rejects_empty():
    with pytest.raises(ValidationError):
        IntervalQ(F(1), F(1))


def test_interval_membership_respects_closedness():
    iv = IntervalQ(F(0), F(1, 2))
    assert F(0) in iv and F(1, 2) not in iv
    assert 0.49 in iv


# --- validation ---------------------------------------------------------------


def test_wrong_length_is_rejected():
    with pytest.raises(LengthError):
        validate_transversal([("0", "1/2")])


def test_overlap_mod_one_is_rejected():
    with pytest.raises(OverlapError):
        validate_transversal([("0", "1/2"), ("5/4", "7/4")])


def test_gap_is_unreachable_once_length_is_one_but_overlap_is_reported():
    # length 1 with a hole modulo 1 forces an overlap elsewhere
    with pytest.raises((OverlapError, GapError)):
        validate_transversal([("0", "1/4"), ("1/8", "7/8")])


def test_wrapping_piece_is_cut_at_the_integer():
    ts = validate_transversal([("-1/4", "1/4"), ("1/4", "3/4")])
    assert ts.L == 3
    assert ts.breakpoints == (0, F(1, 4), F(3, 4), 1)


def test_full_period_piece_stays_whole():
    ts = validate_transversal([("-1/4", "3/4")])
    assert ts.L == 1
    assert (ts.images[0].lo, ts.images[0].hi) == (0, 1)


def test_json_loader_reports_missing_keys():
    with pytest.raises(ValidationError):
        transversal_from_json({"pieces": []})
    with pytest.raises(ValidationError):
        transversal_from_json('{"intervals": [{"lo": "0"}]}')


# --- example goldens ---------------------------------------------------------


def test_sinc_data(example_sets):
    _, cd, region = example_sets["sinc"]
    assert cd.lambdas == ((0, 1),) and cd.rho == 1 and cd.nu == 1
    assert intervals(region) == [(F(-1, 2), F(1, 2))]


def test_littlewood_paley_data(example_sets):
    _, cd, region = example_sets["littlewood_paley"]
    assert [lam[0] for lam in cd.lambdas] == [0, 1]
    assert cd.lambda01 == 2 and cd.rho == 0 and cd.nu == 2
    assert region.A == (-2, 0, 1, 3)
    assert intervals(region) == [(F(-3, 4), F(-1, 2)), (F(-1, 4), F(1, 4)), (F(1, 2), F(3, 4))]


def test_journe_data(example_sets):
    _, cd, region = example_sets["journe"]
    # the second piece [2/7, 1/2) has lambda = 1: its translate by 1 lands in [0, 1] after 1 - x
    assert [lam[0] for lam in cd.lambdas] == [3, 1, 0, -2]
    assert cd.lambda01 == -1 and cd.nu == 4
    assert sorted(2 * d for d in cd.g_denominators()) == [2, 4, 8]
    assert region.A == (-9, -5, -3, 0, 1, 4, 6, 10)
    eighths = [(-10, -9), (-6, -5), (-4, -3), (-1, 1), (3, 4), (5, 6), (9, 10)]
    assert intervals(region) == [(F(a, 8), F(b, 8)) for a, b in eighths]


def test_nonsymmetric_data(example_sets):
    _, cd, region = example_sets["nonsymmetric"]
    assert [lam[0] for lam in cd.lambdas] == [4, 1, 2, 0, -1]
    assert cd.lambda01 == 0 and cd.rho == 0 and cd.nu == 12
    assert set(region.A) == {
        0, 1, -1, 2, -2, 3, -4, 5, -5, 6, -9, 10, -10, 11, -11, 12, -15, 16, -16, 17, -17, 18, -27, 28
    }
    expected = [
        (F(-7, 6), F(-9, 8)), (F(-3, 4), F(-5, 8)), (F(-1, 2), F(-3, 8)), (F(-1, 4), F(-1, 6)),
        (F(-1, 8), F(1, 8)), (F(1, 6), F(1, 4)), (F(3, 8), F(1, 2)), (F(5, 8), F(3, 4)), (F(9, 8), F(7, 6)),
    ]
    assert intervals(region) == expected


def test_littlewood_paley_cell_formula_matches_hand_expansion(example_sets):
    # f(n) = -floor(n/2) - floor(-n/4 + 1/2), expanded by hand from the jumps (-2, 1)
    _, cd, _ = example_sets["littlewood_paley"]
    for n in range(-20, 21):
        assert f_of_n(cd, n) == -math.floor(F(n, 2)) - math.floor(F(-n, 4) + F(1, 2))


# --- index -------------------------------------------------------------------


def test_index_formula_rejects_points_of_G(example_sets):
    _, cd, _ = example_sets["journe"]
    for alpha in (F(1, 4), F(3, 8), F(1, 2), 0.125):
        with pytest.raises(ExcludedAlphaError):
            index_formula(cd, alpha)


def test_sinc_index_is_zero_exactly_inside_half_interval(example_sets):
    _, cd, _ = example_sets["sinc"]
    assert index_formula(cd, F(3, 10)) == 0
    assert index_formula(cd, F(3, 4)) != 0
    assert riesz_basis(cd, 0.3) and not riesz_basis(cd, 0.75) and not riesz_basis(cd, 0.5)


def test_index_is_constant_on_each_cell(example_sets):
    for name, (_, cd, region) in example_sets.items():
        for iv, value in region.cells:
            probe = iv.lo + (iv.hi - iv.lo) / 3
            if not cd.in_G(probe):
                assert index_formula(cd, probe) == value, (name, iv)


@pytest.mark.parametrize("name", list(SETS))
def test_cell_values_at_multiples_of_two_nu(example_sets, name):
    _, cd, _ = example_sets[name]
    for m in range(-4, 5):
        assert f_of_n(cd, 2 * m * cd.nu) == f_of_n(cd, 2 * m * cd.nu + 1) == -m


@pytest.mark.parametrize("name", list(SETS))
def test_unit_shift_lowers_index_by_one(example_sets, name):
    # the jumps telescope to lambda_01 - lambda_L1 = 1
    _, cd, _ = example_sets[name]
    assert sum(a + b for a, b in cd.jumps()) == 1
    for alpha in (F(1, 10), F(-7, 10), F(13, 30)):
        assert index_formula(cd, alpha + 1) == index_formula(cd, alpha) - 1


def test_index_is_nonzero_outside_the_window(example_sets):
    for _, (_, cd, _) in example_sets.items():
        W = cd.window
        for alpha in (W + F(1, 1000), -W - F(1, 1000), W + F(3, 7), -W - F(5, 11)):
            if not cd.in_G(alpha):
                assert index_formula(cd, alpha) != 0


# --- region serialisation and invariance -------------------------------------


def test_region_json_round_trip(example_sets):
    for _, (_, _, region) in example_sets.items():
        text = json.dumps(region.to_json(), sort_keys=True)
        again = AlphaRegion.from_json(json.loads(text))
        assert again == region
        assert json.dumps(again.to_json(), sort_keys=True) == text


def test_membership_of_region(example_sets):
    _, _, region = example_sets["journe"]
    assert F(0) in region and F(1, 8) not in region and F(7, 16) in region
    assert F(2) not in region


def split_piece(pieces, index, frac):
    lo, hi = (F(x) for x in pieces[index])
    cut = lo + (hi - lo) * frac
    return pieces[:index] + [(lo, cut), (cut, hi)] + pieces[index + 1:]


@settings(max_examples=40, deadline=None)
@given(
    name=st.sampled_from(sorted(SETS)),
    which=st.integers(min_value=0, max_value=4),
    frac=st.fractions(min_value=F(1, 50), max_value=F(49, 50), max_denominator=50),
)
def test_splitting_a_piece_keeps_the_admissible_set(name, which, frac):
    pieces = list(SETS[name])
    which = which % len(pieces)
    _, _, before = analyze(pieces)
    _, _, after = analyze(split_piece(pieces, which, frac))
    assert intervals(after) == intervals(before)
    assert set(after.excluded) >= set(p for p in before.excluded)


@settings(max_examples=40, deadline=None)
@given(
    name=st.sampled_from(sorted(SETS)),
    shift=st.integers(min_value=-3, max_value=3),
)
def test_piece_order_in_the_input_does_not_matter(name, shift):
    pieces = list(SETS[name])
    rotated = pieces[shift % len(pieces):] + pieces[: shift % len(pieces)]
    assert intervals(analyze(rotated)[2]) == intervals(analyze(pieces)[2])


def test_decomposition_split_points_lie_in_their_cells(example_sets):
    for _, (ts, cd, _) in example_sets.items():
        a = ts.breakpoints
        for k in range(1, cd.L + 1):
            assert 1 - a[k] <= cd.s[k - 1] <= 1 - a[k - 1]


def test_indicator_sum_is_one_off_the_breakpoints(example_sets):
    for _, (ts, _, _) in example_sets.items():
        for x in (F(1, 97), F(13, 29), F(-5, 7), F(2, 3) + F(1, 1000)):
            assert ts.indicator_sum(x) == 1


def test_admissible_region_is_reproducible(example_sets):
    _, cd, region = example_sets["nonsymmetric"]
    assert admissible_region(congruence_decompose(validate_transversal(SETS["nonsymmetric"]))) == region
    assert admissible_region(cd) == region

"""
Tests for domain error handling.

Every rejection is a ``GizatullinError`` (and so a ``ValueError``); the
subclass tells which layer refused the input. The CLI relies on these
classes when choosing an exit status.
"""
import pytest

from gizatullin import (
    BlowupWord,
    CStarPoint,
    ExtendedDivisor,
    Feather,
    PointSet,
    elementary_shift,
    hj_expand,
    hj_value,
    reverse_chain,
    symmetry_group,
    toric_report,
)
from gizatullin.errors import (
    ChainError,
    ConditionStarError,
    CorrespondenceError,
    GizatullinError,
    HJError,
    NonSmoothError,
    PointError,
    ToricError,
    WordError,
)
from gizatullin.serieslift import correspondence_check
from gizatullin.zigzag import blow_down


class TestChainErrors:
    """Chains, shifts and blowdowns."""

    def test_shift_out_of_range(self):
        with pytest.raises(ChainError, match="out of range"):
            elementary_shift([0, 0, -2], 3, "left")

    def test_shift_on_nonzero_vertex(self):
        with pytest.raises(ChainError, match="needs weight 0"):
            elementary_shift([0, 0, -2], 2, "right")

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            elementary_shift([0, 0, -2], 0, "up")

    def test_blow_down_needs_minus_one(self):
        with pytest.raises(ChainError, match=r"only \(-1\)-vertices"):
            blow_down([0, -2, -3], 1)

    def test_blow_down_last_vertex(self):
        with pytest.raises(ChainError, match="last remaining vertex"):
            blow_down([-1], 0)

    def test_reverse_needs_standard_chain(self):
        with pytest.raises(ChainError, match="standard or 1-standard"):
            reverse_chain([-2, 0, 0, -3])


class TestContinuedFractionErrors:
    """Hirzebruch-Jung input checks."""

    @pytest.mark.parametrize("num,den", [(3, 3), (2, 5), (1, 0), (4, 0)])
    def test_out_of_range(self, num, den):
        with pytest.raises(HJError, match="need num > den >= 1"):
            hj_expand(num, den)

    def test_not_reduced(self):
        with pytest.raises(HJError, match="lowest terms"):
            hj_expand(6, 4)

    def test_non_integers(self):
        with pytest.raises(HJError, match="must be integers"):
            hj_expand(5.0, 2)

    def test_zero_division(self):
        with pytest.raises(HJError, match="divides by zero"):
            hj_value((2, 1, 1))


class TestWordErrors:
    """Blowup word syntax."""

    def test_malformed(self):
        with pytest.raises(WordError, match="malformed"):
            BlowupWord.parse("ORX")

    def test_outer_start_twice(self):
        with pytest.raises(WordError, match="only appear as the first letter"):
            BlowupWord.parse("ORO")

    def test_must_start_with_outer(self):
        with pytest.raises(WordError, match="must start with OuterStart"):
            BlowupWord.parse("RR")


class TestPointErrors:
    """Points of C* and point sets."""

    def test_non_positive_modulus(self):
        with pytest.raises(PointError, match="modulus must be positive"):
            CStarPoint(0)

    def test_angle_out_of_range(self):
        with pytest.raises(PointError, match=r"\[0,1\)"):
            CStarPoint(1, "3/2")

    def test_garbage_coordinates(self):
        with pytest.raises(PointError, match="must be rationals"):
            CStarPoint("one")

    def test_zero_real(self):
        with pytest.raises(PointError, match="not a point of C\\*"):
            CStarPoint.from_real(0)

    def test_non_real_value(self):
        with pytest.raises(PointError, match="is not real"):
            CStarPoint(1, "1/3").real_value()

    def test_missing_from_set(self):
        data = symmetry_group(PointSet(frozenset({CStarPoint(1)})))
        with pytest.raises(PointError, match="is not in the set"):
            data.orbit_of(CStarPoint(2))


class TestDivisorErrors:
    """Condition (*) and smoothness."""

    def test_feather_on_c2(self):
        div = ExtendedDivisor((0, 0, -2, -3, -2), (Feather(2, CStarPoint(1)),))
        with pytest.raises(ConditionStarError, match=r"condition \(\*\) violated"):
            div.require_condition_star()

    def test_reducible_feather(self):
        div = ExtendedDivisor((0, 0, -2, -3, -2), (Feather(3, CStarPoint(1), tail=(-2,)),))
        with pytest.raises(NonSmoothError, match="singular"):
            div.require_smooth()


class TestOtherErrors:
    """Toric parameters and the correspondence check."""

    def test_toric(self):
        with pytest.raises(ToricError):
            toric_report(4, 2)

    def test_correspondence_zero_scalar(self):
        with pytest.raises(CorrespondenceError, match="non-zero"):
            correspondence_check(1, [1], 0)

    def test_negative_m(self):
        with pytest.raises(ValueError, match="non-negative"):
            correspondence_check(-1, [1], 1)


class TestHierarchy:
    """All library errors share one base."""

    @pytest.mark.parametrize(
        "cls",
        [ChainError, HJError, WordError, PointError, ConditionStarError, NonSmoothError, ToricError],
    )
    def test_subclasses(self, cls):
        assert issubclass(cls, GizatullinError)
        assert issubclass(cls, ValueError)

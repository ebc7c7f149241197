"""
Automorphism Group Tests - fibration graph shape, amalgams, birational words, toric surfaces

Tests cover:
- Loop / TwoVertices / Unknown classification
- Generation of Aut(V) by A^1-fibrations
- Amalgam presentations per shape
- Reduction of alternating Rev/Fib words
- Toric surfaces V_{d,e}
"""

from fractions import Fraction

import pytest

from gizatullin import (
    BiratWord,
    CStarPoint,
    ExtendedDivisor,
    Feather,
    Fib,
    Rev,
    Shape,
    TriangularMap,
    amalgam_presentation,
    aut_generated_by_fibrations,
    fibration_graph_shape,
    presentation_for_shape,
    reduce_birational_word,
    toric_report,
)
from gizatullin.autgroup import is_special_chain, toric_partner
from gizatullin.errors import ToricError, UnknownShapeError


def loop_example():
    return ExtendedDivisor(
        (0, 0, -3, -2, -3, -2, -3), (Feather(3, CStarPoint(1)), Feather(5, CStarPoint(5)))
    )


def two_vertex_example():
    return ExtendedDivisor(
        (0, 0, -3, -3, -3, -3, -3),
        (
            Feather(3, CStarPoint(1)),
            Feather(3, CStarPoint(2)),
            Feather(5, CStarPoint(1)),
            Feather(5, CStarPoint(3)),
        ),
    )


def unknown_example():
    return ExtendedDivisor(
        (0, 0, -3, -2, -4, -2, -3),
        tuple(Feather(i, CStarPoint(1)) for i in (3, 4, 5)),
    )


class TestGraphShape:
    """Shape of the graph of A^1-fibrations."""

    def test_loop(self):
        shape = fibration_graph_shape(loop_example())
        assert shape.shape is Shape.LOOP
        assert shape.witness == {3: CStarPoint(5), 5: CStarPoint(Fraction(1, 5))}
        assert str(shape) == "Loop"

    def test_two_vertices_names_the_failure(self):
        shape = fibration_graph_shape(two_vertex_example())
        assert shape.shape is Shape.TWO_VERTICES
        assert shape.witness == "A_5 is not a C*-multiple of A_3"

    def test_not_a_palindrome(self):
        div = ExtendedDivisor((0, 0, -2, -3, -2, -2, -3), (Feather(4, CStarPoint(1)),))
        shape = fibration_graph_shape(div)
        assert shape.shape is Shape.TWO_VERTICES
        assert "is not a palindrome" in shape.witness

    def test_three_feathered_components(self):
        assert fibration_graph_shape(unknown_example()).shape is Shape.UNKNOWN

    def test_single_feathered_component(self):
        div = ExtendedDivisor(
            (0, 0, -2, -3, -2), (Feather(3, CStarPoint(1)), Feather(3, CStarPoint.from_real(-1)))
        )
        assert fibration_graph_shape(div).shape is Shape.LOOP


class TestGeneration:
    """Whether Aut(V) is generated by automorphisms of A^1-fibrations."""

    def test_loop_is_not_generated(self):
        assert not aut_generated_by_fibrations(loop_example())

    def test_two_vertices_is_generated(self):
        assert aut_generated_by_fibrations(two_vertex_example())

    def test_special_chain(self):
        div = ExtendedDivisor((0, 0, -2, -2, -2), (Feather(3, CStarPoint(1)),))
        assert is_special_chain(div)
        assert fibration_graph_shape(div).shape is Shape.LOOP
        assert aut_generated_by_fibrations(div)

    def test_unknown_raises(self):
        with pytest.raises(UnknownShapeError, match="undetermined"):
            aut_generated_by_fibrations(unknown_example())


class TestPresentation:
    """Amalgamated products per shape."""

    def test_loop(self):
        presentation = amalgam_presentation(loop_example())
        assert presentation.text == "A ⋆_{A∩J} J"
        assert presentation.factors == ("A", "J")
        assert presentation.edge_group == "A∩J"
        assert presentation.roles["A∩J"] == "Aut(X,D)"

    def test_two_vertices(self):
        presentation = presentation_for_shape(Shape.TWO_VERTICES)
        assert str(presentation) == "J ⋆_A J^∨"
        assert presentation.roles["J^∨"] == "Aut(V,π^∨)"

    def test_unknown(self):
        with pytest.raises(UnknownShapeError):
            presentation_for_shape("Unknown")


class TestBirationalWords:
    """Stack reduction of Rev/Fib words."""

    def test_rev_rev_cancels(self):
        assert len(reduce_birational_word([Rev(0), Rev("0")])) == 0
        assert str(reduce_birational_word([])) == "id"

    def test_fibs_compose(self):
        word = reduce_birational_word([Fib.of(2, 1, "y**2"), Fib.of(3, 1, "y**2")])
        (fib,) = word
        assert fib.map == TriangularMap(6, 1, (0, 4))

    def test_affine_fib_is_absorbed(self):
        word = reduce_birational_word([Rev(0), Fib.of(2, 3, "y"), Rev(1)])
        assert [str(letter) for letter in word] == ["Rev(0)", "Rev(1)"]

    def test_reduced_word_alternates(self):
        word = reduce_birational_word(
            [Rev(0), Fib.of(1, 1, "y**2"), Fib.of(1, 1, "-y**2 + y**3"), Rev(1), Fib.of(1, 1, "y")]
        )
        assert word.is_alternating()
        assert len(word.reversions()) == 2

    def test_reversions_merge_with_fresh_centre(self):
        word = reduce_birational_word([Rev(0), Rev(1)], all_weights_geq_minus_2=True)
        assert [str(letter) for letter in word] == ["Rev(λ'1)"]

    def test_fresh_centres_do_not_collide(self):
        word = reduce_birational_word([Rev("λ'3"), Fib.of(1, 1, "y**2"), Rev(0), Rev(1)], True)
        assert str(word.letters[-1]) == "Rev(λ'4)"

    def test_distinct_centres_are_kept(self):
        assert len(reduce_birational_word(BiratWord((Rev(0), Rev(1))))) == 2


class TestToric:
    """The surfaces V_{d,e}."""

    def test_loop_case(self):
        report = toric_report(8, 3)
        assert report.e_prime == 3
        assert report.boundary.expansion == (2, 3, 2)
        assert report.feather.expansion == (3, 3)
        assert report.shape is Shape.LOOP
        assert report.assembled_chain() == (0, 0, -2, -3, -2, -1, -3, -3)
        assert report.summary() == "e' = 3; shape: Loop; Aut = A ⋆_{A∩J} J"

    def test_two_vertex_case(self):
        report = toric_report(5, 2)
        assert report.e_prime == 3
        assert report.boundary.expansion == (2, 3)
        assert report.feather.expansion == (3, 2)
        assert report.shape is Shape.TWO_VERTICES
        assert toric_partner(report).e == 3

    @pytest.mark.parametrize("d,e", [(7, 1), (2, 1), (12, 5)])
    def test_involutive_cases_loop(self, d, e):
        assert toric_report(d, e).shape is Shape.LOOP

    def test_bad_parameters(self):
        with pytest.raises(ToricError, match="at least 2"):
            toric_report(1, 0)
        with pytest.raises(ToricError, match="must lie in"):
            toric_report(5, 7)
        with pytest.raises(ToricError, match="gcd"):
            toric_report(6, 4)

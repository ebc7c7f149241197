"""
Document and CLI Tests - surface documents, DOT export and gizctl

Tests cover:
- Parsing and canonical emission of surface documents
- Error positions for malformed documents
- DOT rendering of D_ext
- run_command reports and exit statuses
- The gizctl entry point
"""

import json
import random
from fractions import Fraction

import pytest

from gizatullin import CStarPoint, ExtendedDivisor, Feather, MatchingAtom, SurfaceSyntaxError, emit_surface, export_dot, parse_surface
from gizatullin.cli import EXIT_INVALID, EXIT_OK, EXIT_UNDETERMINED, main, run_command


def surface(weights, feathers=(), flags=None):
    doc = {
        "weights": list(weights),
        "feathers": [
            {"component": i, "point": {"r": r, "theta": theta}} for i, r, theta in feathers
        ],
    }
    if flags is not None:
        doc["flags"] = flags
    return json.dumps(doc)


WORKED = surface([0, 0, -2, -3, -2, -2, -3], [(4, "1", "0")], {"smooth": True, "condition_star": True})
LOOP = surface([0, 0, -3, -2, -3, -2, -3], [(3, "1", "0"), (5, "5", "0")])
TWO_VERTICES = surface([0, 0, -3, -3, -3, -3, -3], [(3, "1", "0"), (3, "2", "0"), (5, "1", "0"), (5, "3", "0")])
UNKNOWN = surface([0, 0, -3, -2, -4, -2, -3], [(3, "1", "0"), (4, "1", "0"), (5, "1", "0")])


def random_divisor(rng):
    weights = (0, 0) + tuple(rng.randint(-5, -2) for _ in range(rng.randint(1, 6)))
    n = len(weights) - 1
    feathers = []
    for _ in range(rng.randint(0, 4)):
        feathers.append(
            Feather(
                component=rng.randint(2, n),
                point=CStarPoint(Fraction(rng.randint(1, 9), rng.randint(1, 4)), Fraction(rng.randint(0, 5), 6)),
                bridge=rng.randint(-3, -1),
                tail=tuple(rng.randint(-4, -2) for _ in range(rng.randint(0, 2))),
                mother=rng.choice([None, 2, n]),
            )
        )
    return ExtendedDivisor(
        weights,
        tuple(feathers),
        expect_smooth=rng.choice([None, True, False]),
        expect_condition_star=rng.choice([None, True]),
    )


class TestSurfaceDocuments:
    """Parse and emit."""

    def test_parse_worked_example(self):
        div = parse_surface(WORKED)
        assert div.chain.weights == (0, 0, -2, -3, -2, -2, -3)
        assert div.feathers == (Feather(4, CStarPoint(1)),)
        assert div.expect_smooth and div.expect_condition_star

    def test_round_trip_is_identity(self):
        rng = random.Random(20)
        for _ in range(20):
            div = random_divisor(rng)
            text = emit_surface(div)
            assert parse_surface(text) == div
            assert emit_surface(parse_surface(text)) == text

    def test_emission_is_deterministic(self):
        div = parse_surface(TWO_VERTICES)
        assert emit_surface(div) == emit_surface(div)
        assert emit_surface(div).endswith("}\n")

    def test_defaults(self):
        div = parse_surface('{"weights": [0, 0, -2, -3, -2], "feathers": [{"component": 3, "point": {"r": "2", "theta": "1/3"}}]}')
        (f,) = div.feathers
        assert (f.bridge, f.tail, f.mother) == (-1, (), None)
        assert f.point == CStarPoint(2, Fraction(1, 3))
        assert div.expect_smooth is None

    def test_json_syntax_error_position(self):
        with pytest.raises(SurfaceSyntaxError, match="line 1, column 2") as info:
            parse_surface("{")
        assert (info.value.line, info.value.column) == (1, 2)

    def test_bad_angle_names_the_field(self):
        text = surface([0, 0, -2, -3, -2], [(3, "1", "1/1")])
        with pytest.raises(SurfaceSyntaxError, match=r"angle must lie in \[0,1\)") as info:
            parse_surface(text)
        assert info.value.field == "feathers[0].point.theta"

    def test_bad_modulus_names_the_field(self):
        text = surface([0, 0, -2, -3, -2], [(3, "-1", "0")])
        with pytest.raises(SurfaceSyntaxError) as info:
            parse_surface(text)
        assert info.value.field == "feathers[0].point.r"

    def test_rationals_must_be_strings(self):
        text = '{"weights": [0, 0, -2], "feathers": [{"component": 2, "point": {"r": 1.5, "theta": "0"}}]}'
        with pytest.raises(SurfaceSyntaxError, match="rationals are written as strings"):
            parse_surface(text)

    def test_unknown_keys(self):
        with pytest.raises(SurfaceSyntaxError, match="unknown keys"):
            parse_surface('{"weights": [0, 0, -2], "colour": "red"}')

    def test_missing_weights(self):
        with pytest.raises(SurfaceSyntaxError, match="missing key 'weights'"):
            parse_surface('{"feathers": []}')

    def test_non_integer_weight(self):
        with pytest.raises(SurfaceSyntaxError, match=r"weights\[1\]"):
            parse_surface('{"weights": [0, true, -2]}')


class TestDot:
    """Graphviz rendering."""

    def test_nodes_and_edges(self):
        dot = export_dot(parse_surface(WORKED))
        assert dot.startswith("graph D_ext {\n")
        assert dot.endswith("}\n")
        assert '  "C_4" [label="C_4 (-2)"];\n' in dot
        assert '  "F_4,1" [shape=box label="F_4,1 (-1)"];\n' in dot
        assert '  "C_5" -- "C_6";\n' in dot
        assert '  "C_4" -- "F_4,1";\n' in dot

    def test_feather_tail_nodes(self):
        div = ExtendedDivisor((0, 0, -2, -3, -2), (Feather(3, CStarPoint(1), tail=(-2, -3)),))
        dot = export_dot(div)
        assert '  "F_3,1" -- "F_3,1.1";\n' in dot
        assert '  "F_3,1.2" [shape=box label="F_3,1.2 (-3)"];\n' in dot

    def test_atoms(self):
        dot = export_dot(parse_surface(WORKED), [MatchingAtom((4, 1))])
        assert '  "p_4,1" [shape=note style=dashed label="atom (4,1)"];\n' in dot
        assert '  "F_4,1" -- "p_4,1" [style=dashed];\n' in dot


class TestRunCommand:
    """Reports and statuses of the dispatcher."""

    def test_standardize(self):
        report = run_command("standardize", {"weights": "0,-1,-2,-3"})
        assert report.text == "standard form: [0, 0, -2, -3]; moves: 1"
        assert report.data["moves"] == ["shift@0:left"]

    def test_reverse(self):
        assert run_command("reverse", {"weights": "[0,-1,-2,-3]"}).data["weights"] == [0, -1, -3, -2]

    def test_exceptional(self):
        report = run_command("exceptional", {}, WORKED)
        assert report.text == "E_D = {3, 5}; E_Dv = {3}; union = {3, 5}"

    def test_classify(self):
        report = run_command("classify", {}, WORKED)
        assert report.data["tau"] == {"C_2": "plus", "C_3": "star", "C_4": "star", "C_5": "star", "C_6": "plus"}
        assert report.data["condition_star"] is True

    def test_orbits(self):
        report = run_command("orbits", {}, WORKED)
        assert report.status == EXIT_OK
        assert report.text == "verdict: NotTransitive; fixed points: 1; orbits: 2 (exact)"
        assert report.data["parts"] == {"4,1": ["(4,1)"]}

    def test_invariant(self):
        report = run_command("invariant", {}, LOOP)
        assert report.data["self_reversed"] is True
        assert report.data["gamma"] == {"3": "5", "5": "1/5"}

    def test_graph_shapes(self):
        assert run_command("graph-shape", {}, LOOP).data["shape"] == "Loop"
        assert run_command("graph-shape", {}, TWO_VERTICES).data["shape"] == "TwoVertices"

    def test_unknown_shape_status(self):
        assert run_command("graph-shape", {}, UNKNOWN).status == EXIT_UNDETERMINED
        assert run_command("autgroup", {}, UNKNOWN).status == EXIT_UNDETERMINED

    def test_autgroup(self):
        report = run_command("autgroup", {}, TWO_VERTICES)
        assert report.data["generated_by_fibrations"] is True
        assert report.data["presentation"] == "J ⋆_A J^∨"

    def test_lift(self):
        report = run_command("lift", {"word": "LR", "a": "1", "b": "1", "P": "y"})
        assert report.text == "(k,l) = (1,2); alpha = 1; beta = 1"

    def test_toric(self):
        report = run_command("toric", {"d": 8, "e": 3})
        assert report.text == "e' = 3; shape: Loop; Aut = A ⋆_{A∩J} J"
        assert report.data["boundary"] == [2, 3, 2]

    def test_enumerate(self):
        report = run_command("enumerate", {"max_blowups": 3, "check": "claim3"})
        assert report.status == EXIT_OK
        assert report.data["checked"] == 4
        assert [row["chains"] for row in report.data["census"]] == [1, 1, 2]

    def test_invalid_document(self):
        report = run_command("orbits", {}, surface([0, -2, 0, -3]))
        assert report.status == EXIT_INVALID
        assert report.text.startswith("invalid: chain: ")

    def test_library_error(self):
        report = run_command("orbits", {}, surface([0, 0, -2, -3, -2], [(2, "1", "0")]))
        assert report.status == EXIT_INVALID
        assert report.data["kind"] == "ConditionStarError"

    def test_missing_document(self):
        assert run_command("orbits", {}).status == EXIT_INVALID

    def test_unknown_command(self):
        with pytest.raises(ValueError, match="unknown command"):
            run_command("frobnicate", {})


class TestMain:
    """The gizctl entry point."""

    def test_toric_text(self, capsys):
        assert main(["toric", "5", "2"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "e' = 3; shape: TwoVertices; Aut = J ⋆_A J^∨"

    def test_json_output(self, capsys):
        assert main(["--json", "toric", "8", "3"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["command"] == "toric"
        assert payload["status"] == EXIT_OK
        assert payload["report"]["e_prime"] == 3

    def test_document_file(self, tmp_path, capsys):
        path = tmp_path / "worked.surf"
        path.write_text(WORKED, encoding="utf-8")
        assert main(["orbits", str(path)]) == EXIT_OK
        assert "NotTransitive" in capsys.readouterr().out

    def test_export_dot_to_file(self, tmp_path):
        src = tmp_path / "worked.surf"
        src.write_text(WORKED, encoding="utf-8")
        out = tmp_path / "worked.dot"
        assert main(["export-dot", str(src), "--out", str(out)]) == EXIT_OK
        assert '"p_4,1"' in out.read_text(encoding="utf-8")

    def test_missing_file(self, tmp_path, capsys):
        assert main(["orbits", str(tmp_path / "absent.surf")]) == EXIT_INVALID
        assert "cannot read" in capsys.readouterr().err

    def test_unknown_exit_status(self, tmp_path):
        path = tmp_path / "unknown.surf"
        path.write_text(UNKNOWN, encoding="utf-8")
        assert main(["autgroup", str(path)]) == EXIT_UNDETERMINED

    def test_bad_check_rejected(self):
        with pytest.raises(SystemExit):
            main(["enumerate", "--check", "nonsense"])

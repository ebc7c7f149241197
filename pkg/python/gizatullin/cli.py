"""
gizctl: command-line access to the gizatullin toolkit.

    gizctl orbits example.surf
    gizctl toric 8 3
    gizctl lift --word LR --a 1 --b 1 --P y
    gizctl enumerate --max-blowups 8 --check claim3 --json

Exit status: 0 on success, 2 when the input fails validation, 3 when the
answer is Unknown or Undetermined.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

from . import config
from .autgroup import Shape, aut_generated_by_fibrations, fibration_graph_shape, presentation_for_shape, toric_report
from .configinv import self_reversal_witness, symmetry_group
from .document import parse_surface
from .dot import export_dot
from .errors import GizatullinError
from .extdiv import ExtendedDivisor, classify_components, exceptional_set, matching_pairs, reversed_exceptional_set, validate
from .orbits import Verdict, big_orbit_complement_bound, feathers_on_exceptional_in_O, orbit_decomposition
from .serieslift import Lifter, TriangularMap
from .sweep import PROPERTIES, enumerate_sweep
from .zigzag import Standardizer, reverse_chain

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNDETERMINED = 3

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Report:
    text: str
    data: Dict[str, Any] = field(default_factory=dict)
    status: int = EXIT_OK


def _weights(text: Optional[str]) -> List[int]:
    if not text:
        raise GizatullinError("--weights is required, e.g. --weights 0,-1,-2,-3")
    try:
        return [int(part) for part in text.replace(" ", "").strip("[]").split(",") if part]
    except ValueError:
        raise GizatullinError(f"--weights must be comma-separated integers, got {text!r}") from None


def _set_text(values) -> str:
    return "{" + ", ".join(str(v) for v in sorted(values)) + "}"


# ============================================================================
# Commands
# ============================================================================


def _standardize(args: Mapping[str, Any], div: Optional[ExtendedDivisor]) -> Report:
    settings = config.Settings.from_env()
    result = Standardizer().max_depth(settings.max_depth).max_states(settings.max_states).run(_weights(args.get("weights")))
    moves = [str(move) for move in result.log]
    return Report(
        f"standard form: {list(result.chain.weights)}; moves: {len(moves)}",
        {"weights": list(result.chain.weights), "moves": moves},
    )


def _reverse(args: Mapping[str, Any], div: Optional[ExtendedDivisor]) -> Report:
    chain = reverse_chain(_weights(args.get("weights")))
    return Report(f"reversed: {list(chain.weights)}", {"weights": list(chain.weights)})


def _classify(args: Mapping[str, Any], div: ExtendedDivisor) -> Report:
    tau = classify_components(div)
    tags = {f"C_{i}": tau[i].value for i in range(2, div.n + 1)}
    star = div.satisfies_condition_star()
    text = "; ".join(f"{name} = {tag}" for name, tag in tags.items())
    return Report(f"{text}; condition (*): {'yes' if star else 'no'}", {"tau": tags, "condition_star": star})


def _exceptional(args: Mapping[str, Any], div: ExtendedDivisor) -> Report:
    own = exceptional_set(div)
    dual = reversed_exceptional_set(div)
    return Report(
        f"E_D = {_set_text(own)}; E_Dv = {_set_text(dual)}; union = {_set_text(own | dual)}",
        {"exceptional": sorted(own), "reversed": sorted(dual)},
    )


def _invariant(args: Mapping[str, Any], div: ExtendedDivisor) -> Report:
    witness = self_reversal_witness(div)
    lines = [f"Q = Q^v: {'yes' if witness is not None else 'no'}"]
    components = {}
    for i in div.feathered_indices():
        data = symmetry_group(div.points(i))
        components[str(i)] = {"d": data.d, "m": data.m, "orbits": [[str(p) for p in orbit] for orbit in data.orbits]}
        lines.append(f"C_{i}: d = {data.d}, m = {data.m}")
    if witness:
        lines.append("gamma: " + ", ".join(f"gamma_{i} = {g}" for i, g in sorted(witness.items())))
    return Report(
        "\n".join(lines),
        {
            "self_reversed": witness is not None,
            "components": components,
            "gamma": {str(i): str(g) for i, g in sorted((witness or {}).items())},
        },
    )


def _orbits(args: Mapping[str, Any], div: ExtendedDivisor) -> Report:
    report = orbit_decomposition(div)
    bound = big_orbit_complement_bound(div)
    in_big = feathers_on_exceptional_in_O(div)
    status = EXIT_UNDETERMINED if report.verdict is Verdict.UNDETERMINED else EXIT_OK
    data = {
        "verdict": report.verdict.value,
        "exact": report.exact,
        "orbit_count": report.orbit_count,
        "parts": {f"{i},{j}": sorted(str(a) for a in atoms) for (i, j), atoms in sorted(report.parts.items())},
        "o0": report.o0,
        "fixed_points": sorted(str(a) for a in report.fixed_points),
        "complement_bound": [str(a) for a in bound],
        "cross_caveat": bound.cross_caveat,
        "feathers_in_big_orbit": [f"{i},{l}" for i, l in in_big],
    }
    return Report(report.summary(), data, status)


def _graph_shape(args: Mapping[str, Any], div: ExtendedDivisor) -> Report:
    shape = fibration_graph_shape(div)
    status = EXIT_UNDETERMINED if shape.shape is Shape.UNKNOWN else EXIT_OK
    if isinstance(shape.witness, dict):
        witness: Any = {str(i): str(g) for i, g in sorted(shape.witness.items())}
    else:
        witness = shape.witness
    return Report(f"shape: {shape.shape.value}", {"shape": shape.shape.value, "witness": witness}, status)


def _autgroup(args: Mapping[str, Any], div: ExtendedDivisor) -> Report:
    shape = fibration_graph_shape(div)
    if shape.shape is Shape.UNKNOWN:
        return Report("shape: Unknown; Aut = ?", {"shape": shape.shape.value}, EXIT_UNDETERMINED)
    presentation = presentation_for_shape(shape)
    generated = aut_generated_by_fibrations(div)
    return Report(
        f"shape: {shape.shape.value}; generated by fibrations: {'yes' if generated else 'no'}; "
        f"Aut = {presentation.text}",
        {
            "shape": shape.shape.value,
            "generated_by_fibrations": generated,
            "presentation": presentation.text,
            "roles": dict(sorted(presentation.roles.items())),
        },
    )


def _lift(args: Mapping[str, Any], div: Optional[ExtendedDivisor]) -> Report:
    settings = config.Settings.from_env()
    psi = TriangularMap.parse(args.get("a") or "1", args.get("b") or "1", args.get("P") or "0")
    word = args.get("word") or ""
    order = args.get("order") or settings.series_order
    form = Lifter().order(order).run(psi, word)
    observed = form.observed_exponents()
    return Report(
        f"(k,l) = ({form.k},{form.l}); alpha = {form.alpha}; beta = {form.beta}",
        {
            "k": form.k,
            "l": form.l,
            "alpha": str(form.alpha),
            "beta": str(form.beta),
            "alpha_exponents": list(form.alpha_exponents),
            "beta_exponents": list(form.beta_exponents),
            "observed": None if observed is None else list(observed),
            "order": form.order,
        },
    )


def _toric(args: Mapping[str, Any], div: Optional[ExtendedDivisor]) -> Report:
    report = toric_report(int(args["d"]), int(args["e"]))
    return Report(
        report.summary(),
        {
            "d": report.d,
            "e": report.e,
            "e_prime": report.e_prime,
            "boundary": list(report.boundary.expansion),
            "feather": list(report.feather.expansion),
            "shape": report.shape.value,
            "presentation": report.presentation.text,
        },
    )


def _enumerate(args: Mapping[str, Any], div: Optional[ExtendedDivisor]) -> Report:
    settings = config.Settings.from_env()
    k = args.get("max_blowups") or settings.max_blowups
    summary = enumerate_sweep(k, args.get("check") or "claim3", bound=settings.max_blowups)
    lines = [summary.summary()]
    lines.extend(f"  length {row.length}: {row.chains} chains, {row.lr_words} L/R words, {row.all_words} words" for row in summary.census)
    lines.extend(f"  counterexample {c.word}: {c.message}" for c in summary.counterexamples)
    return Report(
        "\n".join(lines),
        {
            "property": summary.property,
            "max_blowups": summary.max_blowups,
            "checked": summary.checked,
            "counterexamples": [asdict(c) for c in summary.counterexamples],
            "census": [asdict(row) for row in summary.census],
        },
        EXIT_OK if summary.ok else EXIT_INVALID,
    )


def _export_dot(args: Mapping[str, Any], div: ExtendedDivisor) -> Report:
    atoms = [atom for _, _, atom in matching_pairs(div)] if div.is_smooth() else None
    text = export_dot(div, atoms)
    out = args.get("out")
    if out:
        Path(out).write_text(text, encoding="utf-8")
        return Report(f"DOT graph written to: {out}", {"out": str(out)})
    return Report(text.rstrip("\n"), {"dot": text})


Command = Callable[[Mapping[str, Any], Optional[ExtendedDivisor]], Report]

COMMANDS: Dict[str, Command] = {
    "standardize": _standardize,
    "reverse": _reverse,
    "classify": _classify,
    "exceptional": _exceptional,
    "invariant": _invariant,
    "orbits": _orbits,
    "graph-shape": _graph_shape,
    "autgroup": _autgroup,
    "lift": _lift,
    "toric": _toric,
    "enumerate": _enumerate,
    "export-dot": _export_dot,
}

DOCUMENT_COMMANDS = frozenset({"classify", "exceptional", "invariant", "orbits", "graph-shape", "autgroup", "export-dot"})


def run_command(name: str, args: Mapping[str, Any], document: Optional[str] = None) -> Report:
    """Dispatch one command; library errors become reports with status 2."""
    if name not in COMMANDS:
        raise ValueError(f"unknown command {name!r}; choose from {sorted(COMMANDS)}")
    div = None
    try:
        if name in DOCUMENT_COMMANDS:
            if document is None:
                raise GizatullinError(f"{name} needs a surface document")
            div = parse_surface(document)
            problems = sorted(validate(div))
            if problems:
                return Report(
                    "\n".join(f"invalid: {p}" for p in problems),
                    {"diagnostics": [asdict(p) for p in problems]},
                    EXIT_INVALID,
                )
        return COMMANDS[name](args, div)
    except ValueError as exc:
        logger.debug("%s failed", name, exc_info=True)
        return Report(f"error: {exc}", {"error": str(exc), "kind": type(exc).__name__}, EXIT_INVALID)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gizctl", description="Combinatorics of Gizatullin surfaces")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log search progress to stderr")
    parser.add_argument("--json", action="store_true", help="Emit the machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    for name in ("standardize", "reverse"):
        p = sub.add_parser(name, help=f"{name} a weighted chain")
        p.add_argument("--weights", required=True, help="Comma-separated weights, e.g. 0,-1,-2,-3")
    for name in sorted(DOCUMENT_COMMANDS - {"export-dot"}):
        p = sub.add_parser(name, help=f"{name} of a surface document")
        p.add_argument("file", help="Surface document (JSON); '-' reads stdin")

    p = sub.add_parser("export-dot", help="Render D_ext as a Graphviz DOT graph")
    p.add_argument("file", help="Surface document (JSON); '-' reads stdin")
    p.add_argument("--out", help="Path to write DOT output (default: stdout)")

    p = sub.add_parser("lift", help="Lift a triangular automorphism along a blowup word")
    p.add_argument("--word", default="", help="Blowup word over L, R, Jg (a leading O is optional)")
    p.add_argument("--a", default="1", help="Rational a of psi = (a x + P(y), b y)")
    p.add_argument("--b", default="1", help="Rational b")
    p.add_argument("--P", default="0", help="Polynomial P(y) with P(0) = 0")
    p.add_argument("--order", type=int, help="Series truncation order")

    p = sub.add_parser("toric", help="Report on the toric surface V_{d,e}")
    p.add_argument("d", type=int)
    p.add_argument("e", type=int)

    p = sub.add_parser("enumerate", help="Sweep all blowup words up to a length")
    p.add_argument("--max-blowups", type=int, help="Longest word, at most the configured bound")
    p.add_argument("--check", choices=sorted(PROPERTIES), default="claim3", help="Property to check")
    return parser


def _read_document(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format=LOG_FORMAT, stream=sys.stderr)

    document = None
    if getattr(args, "file", None):
        try:
            document = _read_document(args.file)
        except OSError as exc:
            print(f"error: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
            return EXIT_INVALID
    try:
        report = run_command(args.command, vars(args), document)
    except GizatullinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if args.json:
        print(json.dumps({"command": args.command, "status": report.status, "report": report.data}, indent=2, ensure_ascii=False))
    else:
        print(report.text)
    return report.status


if __name__ == "__main__":
    raise SystemExit(main())

"""DOT rendering of extended divisors."""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .extdiv import ExtendedDivisor, MatchingAtom


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r"\""))


def _chain_node(i: int) -> str:
    return _gvquote(f"C_{i}")


def _feather_node(i: int, l: int, k: int) -> str:
    return _gvquote(f"F_{i},{l}" if k == 0 else f"F_{i},{l}.{k}")


def graphviz(div: ExtendedDivisor, atoms: Optional[Iterable[MatchingAtom]] = None) -> Iterator[str]:
    """Yield the lines of a DOT graph: chain left to right, feathers hanging below.

    Each feather follows the component it is attached to; atoms become
    dashed note nodes tied to their bridge.
    """
    feathers = {}
    for (i, l), f in div.labelled():
        feathers.setdefault(i, []).append((l, f))
    yield "graph D_ext {\n"
    yield "  rankdir=LR;\n"
    yield '  node [shape=circle fontname="Helvetica"];\n'
    for i, w in enumerate(div.chain.weights):
        yield "  {} [label={}];\n".format(_chain_node(i), _gvquote(f"C_{i} ({w})"))
        for l, f in feathers.get(i, ()):
            for k, w_k in enumerate((f.bridge,) + f.tail):
                yield "  {} [shape=box label={}];\n".format(
                    _feather_node(i, l, k), _gvquote(f"F_{i},{l}" + (f".{k}" if k else "") + f" ({w_k})")
                )
    for i in range(1, len(div.chain)):
        yield "  {} -- {};\n".format(_chain_node(i - 1), _chain_node(i))
    for i in sorted(feathers):
        for l, f in feathers[i]:
            previous = _chain_node(i)
            for k in range(1 + len(f.tail)):
                yield "  {} -- {};\n".format(previous, _feather_node(i, l, k))
                previous = _feather_node(i, l, k)
    for atom in sorted(atoms or (), key=lambda a: a.label):
        i, l = atom.label
        name = _gvquote(f"p_{i},{l}")
        yield "  {} [shape=note style=dashed label={}];\n".format(name, _gvquote(f"atom {atom}"))
        yield "  {} -- {} [style=dashed];\n".format(_feather_node(i, l, 0), name)
    yield "}\n"


def export_dot(div: ExtendedDivisor, atoms: Optional[Iterable[MatchingAtom]] = None) -> str:
    return "".join(graphviz(div, atoms))

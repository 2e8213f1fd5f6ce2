"""Star graphs of relative presentations and their closed paths.

Vertices are `l` and `l^-1` for every stable letter `l`. Each occurrence of a stable letter in a
relator contributes one edge, labelled with the coefficient segment that follows it. The edge
for occurrence `i` runs from `l_i^(-e_i)` to `l_(i+1)^(e_(i+1))`, reading the relator cyclically.

Closed paths never turn back along the edge they arrived on (cyclically as well) and are
identified up to rotation and reversal.
"""
from __future__ import annotations

import dataclasses
import functools
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from asphere.theory import CoefficientTheory, Normalized, WordClass, normalize_word
from asphere.words import CoeffWord, MixedWord, StableLetter, cyclic_key, format_letters, invert, reduce_letters

EDGE_PREFIXES: Tuple[str, ...] = ("gamma", "eta", "zeta", "kappa", "lambda", "mu")

Vertex = StableLetter


class StarGraphError(ValueError):
    pass


def vertex_name(vertex: Vertex) -> str:
    return str(vertex)


@dataclasses.dataclass(frozen=True)
class Edge:
    id: str
    label: CoeffWord
    source: Vertex
    target: Vertex
    relator: int

    @property
    def text(self) -> str:
        return format_letters(self.label) or "1"


@dataclasses.dataclass(frozen=True)
class Traversal:
    edge: Edge
    forward: bool = True

    @property
    def start(self) -> Vertex:
        return self.edge.source if self.forward else self.edge.target

    @property
    def end(self) -> Vertex:
        return self.edge.target if self.forward else self.edge.source

    @property
    def label(self) -> CoeffWord:
        return self.edge.label if self.forward else invert(self.edge.label)  # type: ignore[return-value]

    def reverse(self) -> Traversal:
        return Traversal(self.edge, not self.forward)

    def __str__(self) -> str:
        return self.edge.id if self.forward else f"{self.edge.id}^-1"


@dataclasses.dataclass(frozen=True)
class GraphCycle:
    traversals: Tuple[Traversal, ...]

    @property
    def length(self) -> int:
        return len(self.traversals)

    @property
    def label(self) -> CoeffWord:
        return reduce_letters(symbol for step in self.traversals for symbol in step.label)  # type: ignore[return-value]

    @property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(step.edge.id for step in self.traversals)

    def reverse(self) -> GraphCycle:
        return GraphCycle(tuple(step.reverse() for step in reversed(self.traversals)))

    def weight(self, weights: Mapping[str, Fraction]) -> Fraction:
        return sum((Fraction(weights[step.edge.id]) for step in self.traversals), Fraction(0))

    def __str__(self) -> str:
        return " ".join(str(step) for step in self.traversals)


def _cycle_key(steps: Sequence[Traversal]) -> Tuple[Tuple[str, bool], ...]:
    forward = [(step.edge.id, step.forward) for step in steps]
    backward = [(step.edge.id, not step.forward) for step in reversed(steps)]
    candidates = []
    for seq in (forward, backward):
        candidates.extend(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))
    return min(candidates)


@dataclasses.dataclass(frozen=True)
class StarGraph:
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    relator_cycles: Tuple[Tuple[str, ...], ...]

    def edge(self, edge_id: str) -> Edge:
        for edge in self.edges:
            if edge.id == edge_id:
                return edge
        raise KeyError(edge_id)

    @property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(edge.id for edge in self.edges)

    def subgraph(self, edge_ids: Iterable[str]) -> StarGraph:
        keep = set(edge_ids)
        edges = tuple(edge for edge in self.edges if edge.id in keep)
        cycles = tuple(tuple(i for i in cycle if i in keep) for cycle in self.relator_cycles)
        return StarGraph(self.vertices, edges, cycles)

    def relabeled(self, mapping: Mapping[str, str]) -> StarGraph:
        edges = tuple(dataclasses.replace(edge, id=mapping.get(edge.id, edge.id)) for edge in self.edges)
        cycles = tuple(tuple(mapping.get(i, i) for i in cycle) for cycle in self.relator_cycles)
        return StarGraph(self.vertices, edges, cycles)

    def reversed(self) -> StarGraph:
        """Every edge turned around with its label inverted; closed paths are unchanged up to reversal."""
        edges = tuple(
            dataclasses.replace(edge, source=edge.target, target=edge.source, label=invert(edge.label))
            for edge in self.edges
        )
        return StarGraph(self.vertices, edges, self.relator_cycles)  # type: ignore[arg-type]

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        for vertex in self.vertices:
            graph.add_node(vertex_name(vertex))
        for edge in self.edges:
            graph.add_edge(
                vertex_name(edge.source), vertex_name(edge.target), key=edge.id, label=f"{edge.id}: {edge.text}"
            )
        return graph

    def to_dot(self) -> str:
        return nx.nx_pydot.to_pydot(self.to_networkx()).to_string()

    def to_json(self) -> Dict[str, object]:
        return {
            "vertices": [vertex_name(vertex) for vertex in self.vertices],
            "edges": [
                {
                    "id": edge.id,
                    "label": format_letters(edge.label),
                    "source": vertex_name(edge.source),
                    "target": vertex_name(edge.target),
                    "relator": edge.relator,
                }
                for edge in self.edges
            ],
            "relator_cycles": [list(cycle) for cycle in self.relator_cycles],
        }


def _edge_id(relator: int, occurrence: int) -> str:
    if relator < len(EDGE_PREFIXES):
        return f"{EDGE_PREFIXES[relator]}{occurrence}"
    return f"r{relator + 1}_{occurrence}"


def build_star_graph(relators: Sequence[MixedWord]) -> StarGraph:
    names: List[str] = []
    edges: List[Edge] = []
    cycles: List[Tuple[str, ...]] = []
    for index, relator in enumerate(relators):
        occurrences = relator.occurrences()
        if not occurrences:
            raise StarGraphError(f"relator {index + 1} ({relator}) has no stable letter")
        ids = []
        for i, (letter, segment) in enumerate(occurrences):
            following = occurrences[(i + 1) % len(occurrences)][0]
            edge = Edge(_edge_id(index, i + 1), segment, letter.inverse(), following, index)
            edges.append(edge)
            ids.append(edge.id)
            names.extend(name for name in (letter.name, following.name) if name not in names)
        cycles.append(tuple(ids))
    vertices = tuple(StableLetter(name, sign) for name in names for sign in (1, -1))
    return StarGraph(vertices, tuple(edges), tuple(cycles))


def _walks(
    graph: StarGraph,
    max_len: int,
    weights: Optional[Mapping[str, Fraction]],
    below: Optional[Fraction],
) -> Iterator[Tuple[Traversal, ...]]:
    steps = [Traversal(edge, forward) for edge in graph.edges for forward in (True, False)]
    leaving: Dict[Vertex, List[Traversal]] = {}
    for step in steps:
        leaving.setdefault(step.start, []).append(step)
    prune = weights is not None and below is not None and all(Fraction(w) >= 0 for w in weights.values())

    def cost(step: Traversal) -> Fraction:
        return Fraction(weights[step.edge.id]) if weights is not None else Fraction(0)

    def extend(path: List[Traversal], total: Fraction) -> Iterator[Tuple[Traversal, ...]]:
        last = path[-1]
        if last.end == path[0].start:
            first = path[0]
            if len(path) == 1 or (first.edge != last.edge or first.forward == last.forward):
                yield tuple(path)
        if len(path) == max_len:
            return
        for step in leaving.get(last.end, []):
            if step.edge == last.edge and step.forward != last.forward:
                continue
            spent = total + cost(step)
            if prune and spent >= below:  # type: ignore[operator]
                continue
            path.append(step)
            yield from extend(path, spent)
            path.pop()

    for step in steps:
        spent = cost(step)
        if prune and spent >= below:  # type: ignore[operator]
            continue
        yield from extend([step], spent)


def enumerate_cycles(
    g: StarGraph,
    max_len: int,
    weights: Optional[Mapping[str, Fraction]] = None,
    below: Optional[Fraction] = None,
) -> List[GraphCycle]:
    """Closed paths of length at most `max_len`, one per rotation/reversal class.

    With `weights` and `below`, only paths lighter than `below` are returned.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    seen: Dict[Tuple[Tuple[str, bool], ...], GraphCycle] = {}
    for path in _walks(g, max_len, weights, below):
        if weights is not None and below is not None and GraphCycle(path).weight(weights) >= below:
            continue
        key = _cycle_key(path)
        if key not in seen:
            seen[key] = GraphCycle(path)
    return [seen[key] for key in sorted(seen, key=lambda key: (len(key), key))]


@dataclasses.dataclass(frozen=True)
class Degree2Label:
    edges: Tuple[str, str]
    corners: Tuple[str, str]
    label: CoeffWord
    status: Normalized

    @property
    def admissible(self) -> bool:
        return self.status.kind is WordClass.TRIVIAL

    @property
    def text(self) -> str:
        return format_letters(self.label)


@functools.lru_cache(maxsize=64)
def _two_cycles(relator: MixedWord) -> Tuple[GraphCycle, ...]:
    graph = build_star_graph([relator])
    return tuple(cycle for cycle in enumerate_cycles(graph, 2) if cycle.length == 2)


def degree2_labels(relator: MixedWord, th: CoefficientTheory) -> List[Degree2Label]:
    labels: List[Degree2Label] = []
    seen: Set[Tuple[object, ...]] = set()
    for cycle in _two_cycles(relator):
        first, second = cycle.traversals
        status = normalize_word(th, cycle.label, cyclic=True)
        if status.kind is WordClass.NONTRIVIAL_POWER:
            continue
        key = (tuple(sorted(cycle.edge_ids)), cyclic_key(cycle.label))
        if key in seen:
            continue
        seen.add(key)
        labels.append(
            Degree2Label(
                edges=(first.edge.id, second.edge.id),
                corners=(first.edge.text, second.edge.text),
                label=cycle.label,
                status=status,
            )
        )
    return labels

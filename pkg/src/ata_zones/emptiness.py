"""Zone graph exploration with entailment pruning.

The explorer is generic over a *system*: anything offering ``initial()``,
``successors(node)``, ``is_accepting(node)``, ``entails(n1, n2, mode)``,
``dump(node)`` and ``replay(word)``.  :class:`AtaSystem` is the system of a
single 1-ATA; :mod:`ata_zones.product` adds the product with a timed
automaton.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .ata import OneATA, accepts
from .dbm import Dbm
from .entailment import node_entails, node_entails_bounded
from .mtl import is_one_sided, satisfied_by, translate
from .zones import dump_node, initial_node, successors

log = logging.getLogger(__name__)

PRUNING_MODES = ("full", "bounded", "none")


@dataclass
class ExploreConfig:
    pruning: str = "full"
    max_nodes: int = 100_000
    order: str = "bfs"
    stop_at_accepting: bool = True

    def __post_init__(self):
        if self.pruning not in PRUNING_MODES:
            raise ValueError(f"pruning must be one of {PRUNING_MODES}")
        if self.order not in ("bfs", "dfs"):
            raise ValueError("order must be bfs or dfs")


@dataclass
class Edge:
    src: int
    dst: int
    letter: str
    target_index: int
    kind: str  # "new", "seen" or "subsumed"
    record: object = None


@dataclass
class ZoneGraph:
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    parent: dict = field(default_factory=dict)
    accepting: list = field(default_factory=list)

    def add(self, node, key) -> int:
        nid = len(self.nodes)
        self.nodes.append(node)
        self.index[key] = nid
        return nid

    def path_to(self, nid: int) -> list:
        """Edges from the root to node ``nid`` along discovery edges."""
        path = []
        while nid in self.parent:
            edge = self.parent[nid]
            path.append(edge)
            nid = edge.src
        return path[::-1]

    def successors_of(self, nid: int) -> list:
        return [e for e in self.edges if e.src == nid]

    def to_dot(self, dump=str) -> str:
        lines = ["digraph zonegraph {", "  rankdir=LR;"]
        accepting = set(self.accepting)
        for nid, node in enumerate(self.nodes):
            label = dump(node).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\l")
            shape = "doublecircle" if nid in accepting else "box"
            lines.append(f'  n{nid} [shape={shape}, label="{nid}\\n{label}\\l"];')
        for e in self.edges:
            style = "" if e.kind == "new" else ", style=dashed"
            lines.append(f'  n{e.src} -> n{e.dst} [label="{e.letter} / {e.target_index}"{style}];')
        lines.append("}")
        return "\n".join(lines)


@dataclass
class Verdict:
    status: str  # "Empty", "NonEmpty" or "Inconclusive"
    witness: tuple | None = None
    path: list | None = None
    graph: ZoneGraph | None = None
    reason: str = ""

    @property
    def is_empty(self) -> bool:
        return self.status == "Empty"

    @property
    def exit_code(self) -> int:
        return {"Empty": 0, "NonEmpty": 1, "Inconclusive": 2}[self.status]


class AtaSystem:
    """Zone graph of a single 1-ATA."""

    def __init__(self, ata: OneATA):
        self.ata = ata
        self.M = ata.max_constant
        self.letters = sorted(ata.alphabet)

    def initial(self):
        return initial_node(self.ata)

    def successors(self, node):
        for a in self.letters:
            for k, _, succ, record in successors(node, a, self.ata):
                yield a, k, succ, record

    def is_accepting(self, node) -> bool:
        return node.is_accepting(self.ata)

    def entails(self, n1, n2, mode: str) -> bool:
        if mode == "full":
            return node_entails(n1, n2, self.M)
        return node_entails_bounded(n1, n2, self.M)

    def key(self, node):
        return node.key()

    def dump(self, node) -> str:
        return dump_node(node)

    def initial_width(self) -> int:
        return 1

    def replay(self, word) -> bool:
        return accepts(self.ata, word)


def explore(system, config: ExploreConfig | None = None) -> Verdict:
    """Search the zone graph of ``system`` for an accepting node.

    A new node is discarded when it equals, or (depending on
    ``config.pruning``) is entailed by, a node kept earlier.
    """
    if isinstance(system, OneATA):
        system = AtaSystem(system)
    config = config or ExploreConfig()
    graph = ZoneGraph()
    root = system.initial()
    graph.add(root, system.key(root))
    found = None
    if system.is_accepting(root):
        graph.accepting.append(0)
        found = 0
        if config.stop_at_accepting:
            return _nonempty(system, graph, 0)
    work = deque([0])
    while work:
        nid = work.popleft() if config.order == "bfs" else work.pop()
        for letter, k, succ, record in system.successors(graph.nodes[nid]):
            key = system.key(succ)
            seen = graph.index.get(key)
            if seen is not None:
                graph.edges.append(Edge(nid, seen, letter, k, "seen", record))
                continue
            if config.pruning != "none":
                cover = _find_cover(system, graph, succ, config.pruning)
                if cover is not None:
                    graph.edges.append(Edge(nid, cover, letter, k, "subsumed", record))
                    continue
            if len(graph.nodes) >= config.max_nodes:
                return Verdict("Inconclusive", graph=graph,
                               reason=f"node budget of {config.max_nodes} exhausted")
            new = graph.add(succ, key)
            edge = Edge(nid, new, letter, k, "new", record)
            graph.edges.append(edge)
            graph.parent[new] = edge
            if system.is_accepting(succ):
                graph.accepting.append(new)
                if found is None:
                    found = new
                if config.stop_at_accepting:
                    return _nonempty(system, graph, new)
            work.append(new)
    log.debug("explored %d nodes, %d edges", len(graph.nodes), len(graph.edges))
    if found is not None:
        return _nonempty(system, graph, found)
    return Verdict("Empty", graph=graph)


def _find_cover(system, graph, node, mode):
    for nid, kept in enumerate(graph.nodes):
        if system.entails(kept, node, mode):
            return nid
    return None


def _nonempty(system, graph, nid) -> Verdict:
    path = graph.path_to(nid)
    word = witness_from_path(system.initial_width(), path)
    if not system.replay(word):
        raise RuntimeError(f"extracted witness {word} is rejected by the concrete semantics")
    return Verdict("NonEmpty", witness=tuple(word), path=path, graph=graph)


def witness_from_path(initial_width: int, path) -> list:
    """A concrete timed word following a path of symbolic steps.

    Every variable is born at some position (time 0 for the initial ones, the
    position of its reset otherwise), so each guard on the path is a
    difference constraint between two letter timestamps.  Any point of that
    system yields a word whose run follows the path.
    """
    k = len(path)
    stamps = [("t", i) for i in range(1, k + 1)]
    name = [None] + stamps
    constraints = []
    births = [0] * (initial_width + 1)
    for i, edge in enumerate(path, 1):
        constraints.append((name[i - 1], name[i], False, 0))
        record = edge.record
        for idx, interval in record.guards:
            born = name[births[idx]]
            constraints.append((born, name[i], not interval.lower_closed, -interval.lower))
            if interval.upper is not None:
                constraints.append((name[i], born, not interval.upper_closed, interval.upper))
        births = [0] + [i if src == 0 else births[src] for src in record.sources]
    zone = Dbm.from_constraints(stamps, constraints)
    if zone is None:
        raise RuntimeError("symbolic path has no concrete realisation")
    point = zone.sample()
    times = [Fraction(0)] + [point[s] for s in stamps]
    return [(times[i] - times[i - 1], edge.letter) for i, edge in enumerate(path, 1)]


def extract_witness(ata: OneATA, path) -> list:
    """Concrete word for a path of zone graph edges of ``ata``, checked by replay."""
    word = witness_from_path(1, path)
    if not accepts(ata, word):
        raise RuntimeError(f"extracted witness {word} is rejected by the concrete semantics")
    return word


def is_empty(ata: OneATA, config: ExploreConfig | None = None) -> Verdict:
    return explore(AtaSystem(ata), config)


def mtl_sat(formula, alphabet=None, config: ExploreConfig | None = None) -> Verdict:
    """Satisfiability of an MTL formula over finite timed words.

    Without an explicit ``config``, one-sided formulas use the cheaper
    bounded entailment check and all others full entailment.
    """
    translation = translate(formula, alphabet)
    if config is None:
        config = ExploreConfig(pruning="bounded" if is_one_sided(formula) else "full")
    verdict = explore(AtaSystem(translation.ata), config)
    if verdict.status == "NonEmpty" and not satisfied_by(verdict.witness, formula):
        raise RuntimeError("witness accepted by the automaton violates the formula")
    return verdict



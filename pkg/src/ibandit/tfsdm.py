"""Tree-form sequential decision problems and sequence-form strategies.

A decision process is a tree of decision nodes (the agent picks an action),
observation nodes (the environment picks a signal) and terminal nodes. A
sequence is a (decision node, action) pair; the sequence-form representation
of a strategy stores, per sequence, the product of the action probabilities
on the path from the root down to that action.

All arithmetic here is plain Python so that the same functions run on floats
and on `fractions.Fraction` values (exactness-critical tests use the latter).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Mapping

__all__ = [
    "Sequence",
    "EMPTY",
    "DecisionProcess",
    "SequenceFormStrategy",
    "BehavioralStrategy",
    "ValidityReport",
    "StructureError",
    "validate_sequence_form",
    "behavioral_to_sequence_form",
    "sequence_form_to_behavioral",
    "expected_value",
    "terminal_sequence",
]

NodeId = Hashable


class StructureError(Exception):
    """A strategy or query refers to nodes/sequences the tree does not have."""


@dataclass(frozen=True)
class Sequence:
    """A (decision node, action index) pair, or the empty sequence."""

    node: NodeId = None
    action: int = -1

    def is_empty(self) -> bool:
        return self.action < 0

    def __repr__(self) -> str:
        if self.is_empty():
            return "Seq(∅)"
        return f"Seq({self.node!r},{self.action})"


EMPTY = Sequence()


@dataclass(frozen=True)
class _Decision:
    actions: tuple[str, ...]


@dataclass(frozen=True)
class _Observation:
    signals: tuple[str, ...]


@dataclass(frozen=True)
class _Terminal:
    pass


class DecisionProcess:
    """Explicit single-agent decision tree.

    Built incrementally with ``add_decision`` / ``add_observation`` /
    ``add_terminal``; ``freeze`` wires children, parent sequences and the
    interned sequence index. Immutable afterwards.
    """

    def __init__(self, root: NodeId):
        self.root = root
        self.kind: dict[NodeId, Any] = {}
        self.children: dict[NodeId, tuple[NodeId, ...]] = {}
        self._frozen = False

    def add_decision(self, node: NodeId, actions: Iterable[str], children: Iterable[NodeId]) -> None:
        actions = tuple(actions)
        children = tuple(children)
        if not actions:
            raise ValueError(f"decision node {node!r} needs at least one action")
        if len(set(actions)) != len(actions):
            raise ValueError(f"duplicate action labels at {node!r}")
        if len(actions) != len(children):
            raise ValueError(f"actions/children length mismatch at {node!r}")
        self._add(node, _Decision(actions), children)

    def add_observation(self, node: NodeId, signals: Iterable[str], children: Iterable[NodeId]) -> None:
        signals = tuple(signals)
        children = tuple(children)
        if not signals:
            raise ValueError(f"observation node {node!r} needs at least one signal")
        if len(set(signals)) != len(signals):
            raise ValueError(f"duplicate signal labels at {node!r}")
        if len(signals) != len(children):
            raise ValueError(f"signals/children length mismatch at {node!r}")
        self._add(node, _Observation(signals), children)

    def add_terminal(self, node: NodeId) -> None:
        self._add(node, _Terminal(), ())

    def _add(self, node: NodeId, kind: Any, children: tuple[NodeId, ...]) -> None:
        if self._frozen:
            raise RuntimeError("process is frozen")
        if node in self.kind:
            raise ValueError(f"duplicate node id {node!r}")
        self.kind[node] = kind
        self.children[node] = children

    def freeze(self) -> "DecisionProcess":
        for node, ch in self.children.items():
            for c in ch:
                if c not in self.kind:
                    raise ValueError(f"dangling child {c!r} of {node!r}")
        if self.root not in self.kind:
            raise ValueError("missing root node")

        self.decision_nodes: list[NodeId] = []
        self.terminals: list[NodeId] = []
        self.parent_seq: dict[NodeId, Sequence] = {}
        self.term_seq: dict[NodeId, Sequence] = {}
        self.sequences: list[Sequence] = [EMPTY]

        def walk(node: NodeId, last: Sequence) -> None:
            k = self.kind[node]
            if isinstance(k, _Terminal):
                self.terminals.append(node)
                self.term_seq[node] = last
                return
            if isinstance(k, _Decision):
                self.decision_nodes.append(node)
                self.parent_seq[node] = last
                for i, child in enumerate(self.children[node]):
                    seq = Sequence(node, i)
                    self.sequences.append(seq)
                    walk(child, seq)
            else:
                for child in self.children[node]:
                    walk(child, last)

        walk(self.root, EMPTY)
        self.seq_index: dict[Sequence, int] = {s: i for i, s in enumerate(self.sequences)}
        self._frozen = True
        return self

    def actions(self, node: NodeId) -> tuple[str, ...]:
        return self.kind[node].actions

    def is_terminal(self, node: NodeId) -> bool:
        return isinstance(self.kind[node], _Terminal)

    def is_decision(self, node: NodeId) -> bool:
        return isinstance(self.kind[node], _Decision)

    @property
    def num_sequences(self) -> int:
        return len(self.sequences)


@dataclass
class SequenceFormStrategy:
    """Map from Sequence to probability mass (interchange representation)."""

    values: dict[Sequence, Any] = field(default_factory=dict)

    def __getitem__(self, seq: Sequence) -> Any:
        return self.values.get(seq, 0)

    def as_array(self, tree: DecisionProcess):
        import numpy as np

        out = np.zeros(tree.num_sequences)
        for seq, v in self.values.items():
            out[tree.seq_index[seq]] = v
        return out


@dataclass
class BehavioralStrategy:
    """Per decision node, a probability distribution over its actions."""

    policy: dict[NodeId, list] = field(default_factory=dict)

    def __getitem__(self, node: NodeId) -> list:
        return self.policy[node]


@dataclass
class ValidityReport:
    ok: bool
    message: str = ""
    node: NodeId = None
    residual: Any = 0

    def __bool__(self) -> bool:
        return self.ok


def validate_sequence_form(
    strategy: SequenceFormStrategy, tree: DecisionProcess, tol: float = 1e-9
) -> ValidityReport:
    """Check the two flow constraints of a sequence-form strategy.

    Returns a passing report, or the first violated constraint with the
    offending node and residual. Unknown sequence keys raise StructureError
    (a structural problem, not a constraint violation).
    """
    for seq in strategy.values:
        if seq not in tree.seq_index:
            raise StructureError(f"unknown sequence {seq!r}")
    root_mass = strategy[EMPTY]
    if abs(root_mass - 1) > tol:
        return ValidityReport(False, "empty-sequence mass must be 1", None, root_mass - 1)
    for seq, v in strategy.values.items():
        if v < -tol:
            return ValidityReport(False, "negative mass", seq.node, v)
    for node in tree.decision_nodes:
        total = sum(strategy[Sequence(node, i)] for i in range(len(tree.actions(node))))
        residual = total - strategy[tree.parent_seq[node]]
        if abs(residual) > tol:
            return ValidityReport(False, "flow constraint violated", node, residual)
    return ValidityReport(True)


def behavioral_to_sequence_form(b: BehavioralStrategy, tree: DecisionProcess) -> SequenceFormStrategy:
    """Push per-node action distributions down the tree into path products."""
    missing = [n for n in tree.decision_nodes if n not in b.policy]
    if missing:
        raise StructureError(f"behavioral strategy missing decision node {missing[0]!r}")
    values: dict[Sequence, Any] = {EMPTY: 1}
    for node in tree.decision_nodes:  # freeze() order guarantees parents first
        parent_mass = values[tree.parent_seq[node]]
        dist = b.policy[node]
        for i in range(len(tree.actions(node))):
            values[Sequence(node, i)] = parent_mass * dist[i]
    return SequenceFormStrategy(values)


def sequence_form_to_behavioral(q: SequenceFormStrategy, tree: DecisionProcess) -> BehavioralStrategy:
    """Invert the path products; unreached nodes get the uniform distribution."""
    policy: dict[NodeId, list] = {}
    for node in tree.decision_nodes:
        n = len(tree.actions(node))
        parent_mass = q[tree.parent_seq[node]]
        if parent_mass > 0:
            policy[node] = [q[Sequence(node, i)] / parent_mass for i in range(n)]
        else:
            one = 1 if not isinstance(parent_mass, float) else 1.0
            policy[node] = [one / n] * n
    return BehavioralStrategy(policy)


def expected_value(q: SequenceFormStrategy, gradient: Mapping[Sequence, Any]) -> Any:
    """Inner product of a strategy with a payoff gradient over sequences."""
    return sum(v * q[seq] for seq, v in gradient.items())


def terminal_sequence(z: NodeId, tree: DecisionProcess) -> Sequence:
    """Last (decision node, action) on the root path to terminal z.

    EMPTY if the agent never acts before z.
    """
    if not tree.is_terminal(z):
        raise StructureError(f"{z!r} is not a terminal node")
    return tree.term_seq[z]


def pure_strategy(tree: DecisionProcess, choices: Mapping[NodeId, int]) -> SequenceFormStrategy:
    """Sequence form of the deterministic strategy picking choices[j] at j."""
    b = BehavioralStrategy(
        {
            node: [1 if i == choices[node] else 0 for i in range(len(tree.actions(node)))]
            for node in tree.decision_nodes
        }
    )
    return behavioral_to_sequence_form(b, tree)


def enumerate_pure_strategies(tree: DecisionProcess) -> Iterable[dict[NodeId, int]]:
    """All action assignments over decision nodes (test/oracle use only)."""
    import itertools

    nodes = tree.decision_nodes
    ranges = [range(len(tree.actions(n))) for n in nodes]
    for combo in itertools.product(*ranges):
        yield dict(zip(nodes, combo))

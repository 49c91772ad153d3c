"""One player's tree-form view of a game, derived from its information sets.

The signal a player observes before each of its decisions is the identity of
the information set it has arrived at; everything the environment does after
the player's last action collapses into a single terminal class per sequence.
This is the observation structure induced by the infoset partition itself, so
no extra annotations are needed in the game description.

Construction doubles as a perfect-recall audit: it fails if an information
set is reachable through two different interaction histories, or if a class
of indistinguishable histories mixes information sets inconsistently.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..tfsdm import DecisionProcess, Sequence
from .tree import GameFormatError, GameTree

__all__ = ["AgentView", "agent_view", "balanced_exploration_counts"]

END = "∎"


@dataclass
class _DecisionInfo:
    key: tuple[str, ...]  # agent interaction history ending with this infoset signal
    labels: tuple[str, ...]
    prefix: tuple[tuple[str, int], ...]  # own (infoset, action index) pairs above


class AgentView:
    """TFSDM structure of one player plus its correspondence to the game."""

    def __init__(self, game: GameTree, player: int):
        self.game = game
        self.player = player
        self.process = DecisionProcess(("o", None))
        self.decisions: dict[str, _DecisionInfo] = {}
        self._build()
        self.process.freeze()
        self.key_to_infoset = {info.key: i for i, info in self.decisions.items()}

    def _stabilize(self, members: tuple[str, ...]):
        """Expand environment moves until only own decisions and terminals remain."""
        game = self.game
        decisions: dict[str, list[str]] = {}
        terminals: list[str] = []
        stack = list(members)
        while stack:
            nid = stack.pop()
            node = game.nodes[nid]
            if node.kind == "terminal":
                terminals.append(nid)
            elif node.kind == "decision" and node.player == self.player:
                decisions.setdefault(node.infoset, []).append(nid)
            else:
                stack.extend(node.children)
        return decisions, terminals

    def _build(self) -> None:
        game, proc = self.game, self.process

        def expand(obs_id, members, key, prefix, parent_desc):
            decisions, terminals = self._stabilize(members)
            for infoset in decisions:
                if infoset in self.decisions:
                    raise GameFormatError(
                        f"infoset {infoset!r} reachable through two histories: "
                        "perfect recall violated"
                    )
            signals = sorted(decisions)
            children = list(signals)
            if terminals:
                signals.append(END)
                term_id = ("z",) + parent_desc
                children.append(term_id)
                proc.add_terminal(term_id)
            if not signals:
                raise GameFormatError(f"empty class under {parent_desc!r}")
            proc.add_observation(obs_id, signals, children)
            for infoset in sorted(decisions):
                labels = game.infoset_actions[infoset]
                node_key = key + (infoset,)
                self.decisions[infoset] = _DecisionInfo(node_key, labels, prefix)
                child_obs = []
                for a in range(len(labels)):
                    oid = ("o", infoset, a)
                    child_obs.append(oid)
                proc.add_decision(infoset, labels, child_obs)
                for a, label in enumerate(labels):
                    nxt = tuple(game.nodes[h].children[a] for h in decisions[infoset])
                    expand(
                        ("o", infoset, a),
                        nxt,
                        node_key + (label,),
                        prefix + ((infoset, a),),
                        (infoset, a),
                    )

        expand(("o", None), (game.root,), (), (), (None,))

    def decision_key(self, infoset: str) -> tuple[str, ...]:
        return self.decisions[infoset].key

    def labels(self, infoset: str) -> tuple[str, ...]:
        return self.decisions[infoset].labels

    def prefix(self, infoset: str) -> tuple[tuple[str, int], ...]:
        return self.decisions[infoset].prefix

    @property
    def num_sequences(self) -> int:
        return self.process.num_sequences


def agent_view(game: GameTree, player: int) -> AgentView:
    return AgentView(game, player)


def balanced_exploration_counts(view: AgentView) -> dict[tuple[str, ...], list[int]]:
    """Terminal counts of the subtree under each (decision node, action).

    Keyed by the agent's interaction-history key, so the table can be handed
    to a model-free learner as an opaque exploration function.
    """
    proc = view.process
    counts: dict = {}

    def subtree_terminals(node) -> int:
        if proc.is_terminal(node):
            return 1
        return sum(subtree_terminals(c) for c in proc.children[node])

    table: dict[tuple[str, ...], list[int]] = {}
    for infoset, info in view.decisions.items():
        table[info.key] = [subtree_terminals(c) for c in proc.children[infoset]]
    return table

"""Interactive episodes: one player's bandit view of a game.

Per episode the environment (chance plus the opponent) commits to a full
realization: an outcome at every chance node and an action at every opponent
information set. Choices are materialized lazily but recorded, so harness
code can reconstruct the exact payoff gradient the environment implicitly
chose (true_gradient), including the parts the agent never saw.
"""
from __future__ import annotations

from typing import Any, Callable, Mapping

from ..tfsdm import EMPTY, Sequence
from .tree import GameTree

__all__ = [
    "Realization",
    "EnvironmentSession",
    "Episode",
    "PolicyOpponent",
    "ControllerOpponent",
    "open_session",
    "true_gradient",
    "sequence_payoff_gradient",
    "uniform_policy",
]


class SessionError(Exception):
    pass


class Realization:
    """The environment's committed choices for one episode."""

    __slots__ = ("chance", "actions")

    def __init__(self):
        self.chance: dict[str, int] = {}
        self.actions: dict[int, dict[str, int]] = {1: {}, 2: {}}


def _sample(probs, rng) -> int:
    u = rng.random()
    acc = 0.0
    for i, p in enumerate(probs):
        acc += p
        if u < acc:
            return i
    return len(probs) - 1


class PolicyOpponent:
    """Opponent that plays a fixed behavioral strategy (infoset -> dist)."""

    def __init__(self, policy: Mapping[str, Any], rng):
        self.policy = policy
        self.rng = rng

    def begin_episode(self) -> None:
        pass

    def act(self, infoset: str, labels) -> int:
        return _sample(self.policy[infoset], self.rng)

    def finish(self, payoff: float) -> None:
        pass

    def fill_action(self, infoset: str, labels, rng) -> int:
        return _sample(self.policy[infoset], rng)


class ControllerOpponent:
    """Opponent driven by a live learning controller (e.g. self-play).

    The controller receives its arriving infoset id as a signal before each
    of its decisions and its payoff at the end of the episode. ``fill_action``
    samples what the controller would have played at an unreached infoset,
    without touching its state (needs the controller's view for the history).
    """

    def __init__(self, controller, view):
        self.controller = controller
        self.view = view

    def begin_episode(self) -> None:
        self.controller.begin_iteration()

    def act(self, infoset: str, labels) -> int:
        self.controller.observe_signal(infoset)
        return self.controller.act(labels)

    def finish(self, payoff: float) -> None:
        self.controller.end_iteration(payoff)

    def fill_action(self, infoset: str, labels, rng) -> int:
        info = self.view.decisions[infoset]
        dist = self.controller.probe_distribution(info.prefix, info.key, info.labels, self.view)
        return _sample(dist, rng)


class Episode:
    """One interaction from the root to a terminal, agent side.

    Signals queued for the agent are its arriving infoset ids; the episode
    pauses at the agent's decisions and resumes on ``step``.
    """

    def __init__(self, game: GameTree, player: int, opponent, chance_rng):
        self.game = game
        self.player = player
        self.opponent = opponent
        self.chance_rng = chance_rng
        self.realization = Realization()
        self.cur = game.root
        self.done = False
        self._payoff: float | None = None
        self._signals: list[str] = []
        self._awaiting: str | None = None  # infoset awaiting an agent action
        opponent.begin_episode()
        self._advance()

    def _advance(self) -> None:
        game, nodes = self.game, self.game.nodes
        opp = 2 if self.player == 1 else 1
        while True:
            node = nodes[self.cur]
            if node.kind == "terminal":
                self.done = True
                self._payoff = game.payoff(self.cur, self.player)
                self.opponent.finish(game.payoff(self.cur, opp))
                return
            if node.kind == "chance":
                idx = self.realization.chance.get(self.cur)
                if idx is None:
                    idx = _sample(node.probs, self.chance_rng)
                    self.realization.chance[self.cur] = idx
                self.cur = node.children[idx]
            elif node.player == self.player:
                self._signals.append(node.infoset)
                self._awaiting = node.infoset
                return
            else:
                a = self.realization.actions[opp].get(node.infoset)
                if a is None:
                    a = self.opponent.act(node.infoset, node.actions)
                    self.realization.actions[opp][node.infoset] = a
                self.cur = nodes[self.cur].children[a]

    def take_signals(self) -> list[str]:
        out, self._signals = self._signals, []
        return out

    def action_labels(self) -> tuple[str, ...] | None:
        if self.done:
            return None
        return self.game.nodes[self.cur].actions

    def step(self, action: int) -> None:
        if self.done:
            raise SessionError("episode is over")
        node = self.game.nodes[self.cur]
        if not 0 <= action < len(node.actions):
            raise SessionError(f"illegal action index {action} at {node.infoset}")
        self.realization.actions[self.player][node.infoset] = action
        self._awaiting = None
        self.cur = node.children[action]
        self._advance()

    def payoff(self) -> float:
        if not self.done:
            raise SessionError("episode still running")
        return self._payoff

    def run(self, controller) -> float:
        """Drive a Controller through the whole episode; returns its payoff."""
        controller.begin_iteration()
        while not self.done:
            for s in self.take_signals():
                controller.observe_signal(s)
            a = controller.act(self.action_labels())
            self.step(a)
        controller.end_iteration(self._payoff)
        return self._payoff


class EnvironmentSession:
    """Factory of episodes of one game from a fixed agent's point of view."""

    def __init__(self, game: GameTree, agent_player: int, opponent, chance_rng):
        if agent_player not in (1, 2):
            raise ValueError("agent_player must be 1 or 2")
        self.game = game
        self.agent_player = agent_player
        self.opponent = opponent
        self.chance_rng = chance_rng

    def new_episode(self) -> Episode:
        return Episode(self.game, self.agent_player, self.opponent, self.chance_rng)


def open_session(game: GameTree, agent_player: int, opponent, chance_rng) -> EnvironmentSession:
    """Opponent may be a mapping (infoset -> distribution) or a live source."""
    if isinstance(opponent, Mapping):
        opponent = PolicyOpponent(opponent, chance_rng)
    return EnvironmentSession(game, agent_player, opponent, chance_rng)


def true_gradient(
    game: GameTree,
    player: int,
    realization: Realization,
    fill: Callable[[str, tuple[str, ...]], int] | None = None,
    chance_fill=None,
) -> dict[Sequence, Any]:
    """The exact payoff gradient implied by one episode's environment choices.

    Walks the game branching over the agent's actions and following the
    realization everywhere else. Entries are keyed by the agent's sequences
    (infoset id, action index); mass for terminals the agent never acts
    before sits at the empty sequence. Choices missing from the realization
    are filled on demand (and recorded) via ``fill`` / ``chance_fill``.
    """
    opp = 2 if player == 1 else 1
    nodes = game.nodes
    grad: dict[Sequence, Any] = {}

    def walk(nid: str, last: Sequence) -> None:
        node = nodes[nid]
        if node.kind == "terminal":
            grad[last] = grad.get(last, 0) + game.payoff(nid, player)
            return
        if node.kind == "chance":
            idx = realization.chance.get(nid)
            if idx is None:
                if chance_fill is None:
                    raise SessionError(f"chance node {nid} not realized")
                idx = _sample(node.probs, chance_fill)
                realization.chance[nid] = idx
            walk(node.children[idx], last)
        elif node.player == player:
            for a in range(len(node.actions)):
                walk(node.children[a], Sequence(node.infoset, a))
        else:
            a = realization.actions[opp].get(node.infoset)
            if a is None:
                if fill is None:
                    raise SessionError(f"opponent infoset {node.infoset} not realized")
                a = fill(node.infoset, node.actions)
                realization.actions[opp][node.infoset] = a
            walk(node.children[a], last)

    walk(game.root, EMPTY)
    return grad


def sequence_payoff_gradient(
    game: GameTree, player: int, opp_policy: Mapping[str, Any]
) -> dict[Sequence, Any]:
    """Expected payoff gradient against a fixed opponent policy.

    grad[sigma] is the expectation, over chance and the opponent, of the
    agent's payoff over terminals whose last agent sequence is sigma. The
    inner product with any sequence-form strategy is its expected payoff.
    """
    opp = 2 if player == 1 else 1
    nodes = game.nodes
    grad: dict[Sequence, Any] = {}

    def walk(nid: str, last: Sequence, reach) -> None:
        node = nodes[nid]
        if node.kind == "terminal":
            grad[last] = grad.get(last, 0 * reach) + reach * game.payoff(nid, player)
            return
        if node.kind == "chance":
            for p, child in zip(node.probs, node.children):
                if p:
                    walk(child, last, reach * p)
        elif node.player == player:
            for a in range(len(node.actions)):
                walk(node.children[a], Sequence(node.infoset, a), reach)
        else:
            dist = opp_policy[node.infoset]
            for a, child in enumerate(node.children):
                if dist[a]:
                    walk(child, last, reach * dist[a])

    walk(game.root, EMPTY, 1)
    return grad


def uniform_policy(game: GameTree, player: int) -> dict[str, list[float]]:
    return {
        i: [1.0 / len(game.infoset_actions[i])] * len(game.infoset_actions[i])
        for i in game.player_infosets(player)
    }

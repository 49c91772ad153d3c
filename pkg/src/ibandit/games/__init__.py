from .kuhn import build_kuhn
from .leduc import build_leduc
from .session import (
    ControllerOpponent,
    EnvironmentSession,
    Episode,
    PolicyOpponent,
    Realization,
    open_session,
    sequence_payoff_gradient,
    true_gradient,
    uniform_policy,
)
from .tree import GameFormatError, GameNode, GameTree, game_to_json, load_game_json
from .view import AgentView, agent_view, balanced_exploration_counts

__all__ = [
    "AgentView",
    "ControllerOpponent",
    "EnvironmentSession",
    "Episode",
    "GameFormatError",
    "GameNode",
    "GameTree",
    "PolicyOpponent",
    "Realization",
    "agent_view",
    "balanced_exploration_counts",
    "build_kuhn",
    "build_leduc",
    "game_to_json",
    "load_game_json",
    "open_session",
    "sequence_payoff_gradient",
    "true_gradient",
    "uniform_policy",
]

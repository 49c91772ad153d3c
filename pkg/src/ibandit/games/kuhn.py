"""Kuhn poker: 3-card deck, ante 1, single bet of 1."""
from __future__ import annotations

import itertools

from .tree import GameNode, GameTree

__all__ = ["build_kuhn"]

_CARDS = ("J", "Q", "K")
_RANK = {"J": 0, "Q": 1, "K": 2}


def build_kuhn() -> GameTree:
    nodes: dict[str, GameNode] = {}
    deals = list(itertools.permutations(_CARDS, 2))
    nodes["deal"] = GameNode(
        "chance",
        probs=tuple(1.0 / len(deals) for _ in deals),
        children=tuple(f"{c1}{c2}" for c1, c2 in deals),
    )

    def showdown(c1: str, c2: str, stake: int) -> float:
        return float(stake if _RANK[c1] > _RANK[c2] else -stake)

    for c1, c2 in deals:
        d = f"{c1}{c2}"
        nodes[d] = GameNode(
            "decision",
            player=1,
            infoset=f"1:{c1}",
            actions=("check", "bet"),
            children=(f"{d}/k", f"{d}/b"),
        )
        nodes[f"{d}/k"] = GameNode(
            "decision",
            player=2,
            infoset=f"2:{c2}|k",
            actions=("check", "bet"),
            children=(f"{d}/kk", f"{d}/kb"),
        )
        nodes[f"{d}/kk"] = GameNode("terminal", payoff=showdown(c1, c2, 1))
        nodes[f"{d}/kb"] = GameNode(
            "decision",
            player=1,
            infoset=f"1:{c1}|kb",
            actions=("fold", "call"),
            children=(f"{d}/kbf", f"{d}/kbc"),
        )
        nodes[f"{d}/kbf"] = GameNode("terminal", payoff=-1.0)
        nodes[f"{d}/kbc"] = GameNode("terminal", payoff=showdown(c1, c2, 2))
        nodes[f"{d}/b"] = GameNode(
            "decision",
            player=2,
            infoset=f"2:{c2}|b",
            actions=("fold", "call"),
            children=(f"{d}/bf", f"{d}/bc"),
        )
        nodes[f"{d}/bf"] = GameNode("terminal", payoff=1.0)
        nodes[f"{d}/bc"] = GameNode("terminal", payoff=showdown(c1, c2, 2))

    return GameTree("kuhn", "deal", nodes)

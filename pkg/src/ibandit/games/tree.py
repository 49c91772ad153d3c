"""Two-player zero-sum extensive-form game trees with chance, plus JSON I/O.

Payoffs are stored for player 1 only (player 2's payoff is the negation), so
loaded games are zero-sum by construction. Information sets group decision
nodes of one player that the player cannot tell apart; each player's
tree-form view is derived from this partition alone (see view.py).
"""
from __future__ import annotations

import json
from typing import Any, Iterable

__all__ = ["GameNode", "GameTree", "GameFormatError", "load_game_json", "game_to_json"]


class GameFormatError(Exception):
    """Structural problem in a game description; message carries the JSON path."""


class GameNode:
    __slots__ = ("kind", "player", "infoset", "actions", "probs", "children", "payoff")

    def __init__(
        self,
        kind: str,
        *,
        player: int | None = None,
        infoset: str | None = None,
        actions: tuple[str, ...] = (),
        probs: tuple = (),
        children: tuple[str, ...] = (),
        payoff: Any = None,
    ):
        self.kind = kind
        self.player = player
        self.infoset = infoset
        self.actions = actions
        self.probs = probs
        self.children = children
        self.payoff = payoff


class GameTree:
    """Immutable two-player zero-sum game; validate() is run on construction."""

    def __init__(self, name: str, root: str, nodes: dict[str, GameNode], prob_tol: float = 1e-9):
        self.name = name
        self.root = root
        self.nodes = nodes
        self._validate(prob_tol)
        self._index()

    def _validate(self, prob_tol: float) -> None:
        if self.root not in self.nodes:
            raise GameFormatError(f"root: unknown node id {self.root!r}")
        infoset_player: dict[str, int] = {}
        infoset_actions: dict[str, tuple[str, ...]] = {}
        for nid, node in self.nodes.items():
            path = f"nodes.{nid}"
            for c in node.children:
                if c not in self.nodes:
                    raise GameFormatError(f"{path}: dangling child {c!r}")
            if node.kind == "decision":
                if node.player not in (1, 2):
                    raise GameFormatError(f"{path}.player: must be 1 or 2")
                if node.infoset is None:
                    raise GameFormatError(f"{path}.infoset: required for decision nodes")
                if not node.actions:
                    raise GameFormatError(f"{path}.actions: empty")
                if len(set(node.actions)) != len(node.actions):
                    raise GameFormatError(f"{path}.actions: duplicate labels")
                prev_p = infoset_player.setdefault(node.infoset, node.player)
                if prev_p != node.player:
                    raise GameFormatError(
                        f"{path}.infoset: infoset {node.infoset!r} mixes players {prev_p} and {node.player}"
                    )
                prev_a = infoset_actions.setdefault(node.infoset, node.actions)
                if prev_a != node.actions:
                    raise GameFormatError(
                        f"{path}.infoset: infoset {node.infoset!r} has inconsistent action sets"
                    )
            elif node.kind == "chance":
                if not node.children:
                    raise GameFormatError(f"{path}.outcomes: empty")
                total = sum(node.probs)
                if abs(total - 1) > prob_tol:
                    raise GameFormatError(f"{path}.outcomes: probabilities sum to {total!r}, not 1")
                if any(p < 0 for p in node.probs):
                    raise GameFormatError(f"{path}.outcomes: negative probability")
            elif node.kind == "terminal":
                if node.payoff is None:
                    raise GameFormatError(f"{path}.payoff_p1: required for terminal nodes")
            else:
                raise GameFormatError(f"{path}.kind: unknown kind {node.kind!r}")

        # every node must be reachable exactly once (tree, not DAG)
        seen: set[str] = set()
        stack = [self.root]
        while stack:
            nid = stack.pop()
            if nid in seen:
                raise GameFormatError(f"nodes.{nid}: reached twice; game must be a tree")
            seen.add(nid)
            stack.extend(self.nodes[nid].children)
        unreachable = set(self.nodes) - seen
        if unreachable:
            raise GameFormatError(f"nodes.{sorted(unreachable)[0]}: unreachable from root")

    def _index(self) -> None:
        self.infosets: dict[str, list[str]] = {}
        self.infoset_player: dict[str, int] = {}
        self.infoset_actions: dict[str, tuple[str, ...]] = {}
        self.terminals: list[str] = []
        for nid, node in self.nodes.items():
            if node.kind == "decision":
                self.infosets.setdefault(node.infoset, []).append(nid)
                self.infoset_player[node.infoset] = node.player
                self.infoset_actions[node.infoset] = node.actions
            elif node.kind == "terminal":
                self.terminals.append(nid)
        self.payoff_range = max(abs(self.nodes[z].payoff) for z in self.terminals)

    def payoff(self, terminal_id: str, player: int) -> Any:
        u = self.nodes[terminal_id].payoff
        return u if player == 1 else -u

    def player_infosets(self, player: int) -> list[str]:
        return [i for i, p in self.infoset_player.items() if p == player]


_NODE_KEYS = {
    "decision": {"kind", "player", "infoset", "actions"},
    "chance": {"kind", "outcomes"},
    "terminal": {"kind", "payoff_p1", "payoff_p2"},
}


def _node_from_json(nid: str, raw: dict) -> GameNode:
    path = f"nodes.{nid}"
    kind = raw.get("kind")
    if kind not in _NODE_KEYS:
        raise GameFormatError(f"{path}.kind: unknown kind {kind!r}")
    extra = set(raw) - _NODE_KEYS[kind]
    if extra:
        raise GameFormatError(f"{path}: unexpected keys {sorted(extra)} for kind {kind!r}")
    if kind == "decision":
        actions = raw.get("actions", [])
        if not isinstance(actions, list) or not actions:
            raise GameFormatError(f"{path}.actions: must be a non-empty list")
        labels, children = [], []
        for i, a in enumerate(actions):
            if "label" not in a or "child" not in a:
                raise GameFormatError(f"{path}.actions[{i}]: needs label and child")
            labels.append(a["label"])
            children.append(a["child"])
        return GameNode(
            "decision",
            player=raw.get("player"),
            infoset=raw.get("infoset"),
            actions=tuple(labels),
            children=tuple(children),
        )
    if kind == "chance":
        outcomes = raw.get("outcomes", [])
        if not isinstance(outcomes, list) or not outcomes:
            raise GameFormatError(f"{path}.outcomes: must be a non-empty list")
        probs, children = [], []
        for i, o in enumerate(outcomes):
            if "prob" not in o or "child" not in o:
                raise GameFormatError(f"{path}.outcomes[{i}]: needs prob and child")
            probs.append(float(o["prob"]))
            children.append(o["child"])
        return GameNode("chance", probs=tuple(probs), children=tuple(children))
    payoff = raw.get("payoff_p1")
    if payoff is None:
        raise GameFormatError(f"{path}.payoff_p1: required")
    if "payoff_p2" in raw and raw["payoff_p2"] != -payoff:
        raise GameFormatError(f"{path}.payoff_p2: non-zero-sum payoffs ({raw['payoff_p2']} != {-payoff})")
    return GameNode("terminal", payoff=float(payoff))


def load_game_json(source: str, name: str = "game") -> GameTree:
    """Parse a game from a JSON string or a path to a JSON file."""
    text = source
    if not source.lstrip().startswith("{"):
        with open(source) as f:
            text = f.read()
        name = source
    raw = json.loads(text)
    if raw.get("players") != 2:
        raise GameFormatError("players: must be exactly 2")
    if "root" not in raw or "nodes" not in raw:
        raise GameFormatError("top-level: needs root and nodes")
    nodes = {nid: _node_from_json(nid, spec) for nid, spec in raw["nodes"].items()}
    return GameTree(name, raw["root"], nodes)


def game_to_json(game: GameTree) -> str:
    nodes: dict[str, dict] = {}
    for nid, node in game.nodes.items():
        if node.kind == "decision":
            nodes[nid] = {
                "kind": "decision",
                "player": node.player,
                "infoset": node.infoset,
                "actions": [
                    {"label": lab, "child": ch} for lab, ch in zip(node.actions, node.children)
                ],
            }
        elif node.kind == "chance":
            nodes[nid] = {
                "kind": "chance",
                "outcomes": [
                    {"label": f"o{i}", "prob": float(p), "child": ch}
                    for i, (p, ch) in enumerate(zip(node.probs, node.children))
                ],
            }
        else:
            nodes[nid] = {"kind": "terminal", "payoff_p1": float(node.payoff)}
    return json.dumps({"players": 2, "root": game.root, "nodes": nodes}, indent=1, sort_keys=True)

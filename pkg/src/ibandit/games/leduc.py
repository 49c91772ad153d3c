"""Leduc poker: 3 ranks x 2 copies, ante 1, two betting rounds.

Round one bets are worth 2, round two bets 4; each round allows one bet and
one raise. Between rounds a public card is revealed; at showdown a pair with
the public card wins, otherwise the higher rank does (ties split the pot).
"""
from __future__ import annotations

from .tree import GameNode, GameTree

__all__ = ["build_leduc"]

_RANKS = ("J", "Q", "K")
_RANK = {"J": 0, "Q": 1, "K": 2}

# betting grammar shared by both rounds: round history -> (to_act, actions)
# codes: k=check, b=bet, r=raise, c=call, f=fold
_BET_STATES = {
    "": (1, ("check", "bet")),
    "k": (2, ("check", "bet")),
    "b": (2, ("fold", "call", "raise")),
    "kb": (1, ("fold", "call", "raise")),
    "br": (1, ("fold", "call")),
    "kbr": (2, ("fold", "call")),
}
_ACT_CODE = {"check": "k", "bet": "b", "raise": "r", "call": "c", "fold": "f"}
# completed betting lines: player who folded, or None for a completed round
_ROUND_ENDS = {"kk": None, "kbc": None, "kbrc": None, "bc": None, "brc": None,
               "kbf": 1, "kbrf": 2, "bf": 2, "brf": 1}


def _contributions(line: str, bet: int, base: int) -> tuple[int, int]:
    """Per-player money in the pot after a betting line; base is the buy-in."""
    c = [base, base]
    to_act = 0
    for code in line:
        if code in ("b", "r"):
            c[to_act] = max(c) + bet
        elif code == "c":
            c[to_act] = c[1 - to_act]
        to_act = 1 - to_act
    return c[0], c[1]


def _showdown(r1: str, r2: str, board: str, stake: int) -> float:
    p1 = _RANK[r1] + (100 if r1 == board else 0)
    p2 = _RANK[r2] + (100 if r2 == board else 0)
    return float(stake if p1 > p2 else -stake if p2 > p1 else 0)


def build_leduc() -> GameTree:
    nodes: dict[str, GameNode] = {}
    deals = [(r1, r2) for r1 in _RANKS for r2 in _RANKS]

    def deal_prob(r1: str, r2: str) -> float:
        return (2 * 2 if r1 != r2 else 2 * 1) / 30.0

    nodes["deal"] = GameNode(
        "chance",
        probs=tuple(deal_prob(r1, r2) for r1, r2 in deals),
        children=tuple(f"{r1}{r2}|" for r1, r2 in deals),
    )

    def betting(nid: str, r1: str, r2: str, rnd: int, line: str, board: str | None, base: int) -> None:
        if line in _ROUND_ENDS:
            bet = 2 if rnd == 1 else 4
            c1, c2 = _contributions(line, bet, base)
            folder = _ROUND_ENDS[line]
            if folder == 1:
                nodes[nid] = GameNode("terminal", payoff=float(-c1))
            elif folder == 2:
                nodes[nid] = GameNode("terminal", payoff=float(c2))
            elif rnd == 1:
                # reveal the public card, then round 2 on top of the round-1 pot
                remaining = {r: 2 - (r == r1) - (r == r2) for r in _RANKS}
                boards = [r for r in _RANKS if remaining[r] > 0]
                nodes[nid] = GameNode(
                    "chance",
                    probs=tuple(remaining[r] / 4.0 for r in boards),
                    children=tuple(f"{nid}{r}|" for r in boards),
                )
                assert c1 == c2
                for r in boards:
                    betting(f"{nid}{r}|", r1, r2, 2, "", r, c1)
            else:
                assert c1 == c2
                nodes[nid] = GameNode("terminal", payoff=_showdown(r1, r2, board, c1))
            return
        to_act, actions = _BET_STATES[line]
        card = r1 if to_act == 1 else r2
        if rnd == 1:
            infoset = f"{to_act}:{card}|{line}"
        else:
            r1line = nid.split("|")[1][: -len(board)]
            infoset = f"{to_act}:{card}|{r1line}|{board}|{line}"
        children = tuple(f"{nid}{_ACT_CODE[a]}" for a in actions)
        nodes[nid] = GameNode(
            "decision", player=to_act, infoset=infoset, actions=actions, children=children
        )
        for a, child in zip(actions, children):
            betting(child, r1, r2, rnd, line + _ACT_CODE[a], board, base)

    for r1, r2 in deals:
        betting(f"{r1}{r2}|", r1, r2, 1, "", None, 1)

    return GameTree("leduc", "deal", nodes)

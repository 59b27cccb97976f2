"""Groupcast index coding problems: validation, parsing, interference.

Messages are 1-based ids ``1..n``.  A problem is a message count plus an
ordered list of receivers, each with a nonempty demand set and a disjoint
side-information set.  All values are immutable; every function here is
pure.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

ConflictPair = tuple[int, int]  # always stored with a < b


class ProblemError(ValueError):
    """Raised for structurally invalid problems or malformed problem files."""


@dataclass(frozen=True)
class Receiver:
    demands: frozenset[int]
    side_info: frozenset[int]


@dataclass(frozen=True)
class Problem:
    n: int
    receivers: tuple[Receiver, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ProblemError(f"need at least one message, got n={self.n}")
        if not self.receivers:
            raise ProblemError("need at least one receiver")
        for j, r in enumerate(self.receivers, start=1):
            if not r.demands:
                raise ProblemError(f"receiver {j}: empty demand set")
            if r.demands & r.side_info:
                raise ProblemError(
                    f"receiver {j}: demands overlap side info: "
                    f"{sorted(r.demands & r.side_info)}"
                )
            for m in r.demands | r.side_info:
                if not 1 <= m <= self.n:
                    raise ProblemError(f"receiver {j}: message id {m} out of range [1..{self.n}]")

    @property
    def t(self) -> int:
        return len(self.receivers)

    @property
    def messages(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))


def undemanded_messages(p: Problem) -> frozenset[int]:
    demanded: set[int] = set()
    for r in p.receivers:
        demanded |= r.demands
    return p.messages - demanded


def check_groupcast_complete(p: Problem) -> None:
    missing = undemanded_messages(p)
    if missing:
        raise ProblemError(f"messages demanded by no receiver: {sorted(missing)}")


def interfering_set(p: Problem, j: int, k: int) -> frozenset[int]:
    """Messages interfering at receiver ``j`` while it decodes ``k``.

    Empty when receiver ``j`` does not demand ``k``; otherwise every
    message other than ``k`` that is not in ``j``'s side information.
    """
    if not 1 <= j <= p.t:
        raise ProblemError(f"receiver index {j} out of range [1..{p.t}]")
    r = p.receivers[j - 1]
    if k not in r.demands:
        return frozenset()
    return p.messages - ({k} | r.side_info)


def conflicts(p: Problem) -> frozenset[ConflictPair]:
    """Unordered conflict pairs: a demanded message versus each interferer."""
    pairs: set[ConflictPair] = set()
    for j, r in enumerate(p.receivers, start=1):
        for k in r.demands:
            for i in interfering_set(p, j, k):
                pairs.add((min(i, k), max(i, k)))
    return frozenset(pairs)


def restrict_problem(p: Problem, members: frozenset[int] | set[int]) -> tuple[Problem, dict[int, int]]:
    """Problem induced on ``members``, with the old-id -> new-id mapping.

    Receivers survive iff they demand something inside ``members``;
    demand and side-information sets are intersected with ``members`` and
    message ids are renumbered 1..|members| in ascending old-id order.
    """
    members = frozenset(members)
    if not members:
        raise ProblemError("cannot restrict to an empty message set")
    if not members <= p.messages:
        raise ProblemError(f"restriction ids out of range: {sorted(members - p.messages)}")
    mapping = {old: new for new, old in enumerate(sorted(members), start=1)}
    kept = [
        Receiver(
            demands=frozenset(mapping[m] for m in r.demands & members),
            side_info=frozenset(mapping[m] for m in r.side_info & members),
        )
        for r in p.receivers
        if r.demands & members
    ]
    if not kept:
        raise ProblemError("restriction keeps no receiver")
    return Problem(n=len(members), receivers=tuple(kept)), mapping


def random_problem(n: int, density: float, single_unicast: bool = True, seed: int = 0) -> Problem:
    """Deterministic random problem; a pure function of its arguments.

    In single-unicast mode receiver ``j`` demands exactly message ``j``
    and every other message lands in its side information independently
    with probability ``density``.  The general mode additionally lets
    receivers pick up extra demands.  Always groupcast-complete.
    """
    if n < 1:
        raise ProblemError(f"need n >= 1, got {n}")
    if not 0.0 <= density <= 1.0:
        raise ProblemError(f"density must be in [0, 1], got {density}")
    rng = random.Random(f"indexcode-gen:{n}:{density!r}:{single_unicast}:{seed}")
    receivers = []
    for j in range(1, n + 1):
        demands = {j}
        if not single_unicast:
            demands |= {i for i in range(1, n + 1) if i != j and rng.random() < 0.15}
        side = {i for i in range(1, n + 1) if i not in demands and rng.random() < density}
        receivers.append(Receiver(demands=frozenset(demands), side_info=frozenset(side)))
    return Problem(n=n, receivers=tuple(receivers))


def parse_problem(text: str, allow_undemanded: bool = False) -> Problem:
    """Parse the canonical JSON problem format (see ``problem_to_json``)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"malformed problem file: {exc}") from exc
    if not isinstance(data, dict) or "n" not in data or "receivers" not in data:
        raise ProblemError("problem file must be an object with 'n' and 'receivers'")
    n = data["n"]
    if not isinstance(n, int):
        raise ProblemError(f"'n' must be an integer, got {n!r}")
    receivers = []
    if not isinstance(data["receivers"], list):
        raise ProblemError("'receivers' must be a list")
    for idx, entry in enumerate(data["receivers"], start=1):
        if not isinstance(entry, dict):
            raise ProblemError(f"receiver {idx}: must be an object")
        try:
            demands = frozenset(int(x) for x in entry["demands"])
            side = frozenset(int(x) for x in entry.get("side_info", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise ProblemError(f"receiver {idx}: bad demand/side-info lists") from exc
        receivers.append(Receiver(demands=demands, side_info=side))
    if not receivers:
        raise ProblemError("problem file lists no receivers")
    p = Problem(n=n, receivers=tuple(receivers))
    if not allow_undemanded:
        check_groupcast_complete(p)
    return p


def problem_to_json(p: Problem) -> str:
    """Canonical serialization: ascending ids, stable key order."""
    data = {
        "n": p.n,
        "receivers": [
            {"demands": sorted(r.demands), "side_info": sorted(r.side_info)}
            for r in p.receivers
        ],
    }
    return json.dumps(data, indent=2, sort_keys=False) + "\n"

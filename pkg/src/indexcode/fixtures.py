"""Bundled example problems used throughout the tests and docs.

``ex1a``/``ex1b`` are the two four-message problems that share alignment
and legacy conflict graphs but differ in their conflict hypergraphs.
``ex_inf`` is the six-message problem whose type-2 set makes rate 1/3
infeasible; ``ex_feas`` is the six-message problem with an explicit
length-3 assignment.  ``p5`` is a five-message problem whose {1,2,3} is a
clean type-2 alignment set.
"""

from __future__ import annotations

from importlib import resources

from .problem import Problem, parse_problem

FIXTURE_NAMES = ("ex1a", "ex1b", "ex_inf", "ex_feas", "p5")


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return (resources.files("indexcode") / "fixtures" / f"{name}.json").read_text()


def load_fixture(name: str) -> Problem:
    return parse_problem(fixture_text(name))

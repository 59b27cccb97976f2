"""Feasibility ladder for symmetric rates 1, 1/2 and 1/3.

Rate 1 needs no conflicts at all; rate 1/2 needs no internal conflicts;
rate 1/3 is decided by the necessary conditions (a dirty type-2 set, an
acyclic quadruple) and the sufficient classification-based condition,
with everything else reported as Undetermined plus a clearly labeled
conjecture prediction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .problem import ConflictPair, Problem, conflicts
from .structure import (
    Kind,
    StructureReport,
    structure_report,
)


@dataclass(frozen=True)
class RateOneVerdict:
    feasible: bool
    conflict_witness: ConflictPair | None


@dataclass(frozen=True)
class RateHalfVerdict:
    feasible: bool
    internal_conflict: ConflictPair | None
    alignment_set: frozenset[int] | None


class RateThirdStatus(Enum):
    FEASIBLE_MAIN = "feasible-main-construction"
    INFEASIBLE_DIRTY_TYPE2 = "infeasible-dirty-type2"
    INFEASIBLE_ACYCLIC_QUADRUPLE = "infeasible-acyclic-quadruple"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class RateThirdVerdict:
    status: RateThirdStatus
    # dirty type-2 witness: (type-2 message union, conflict, restricted set)
    dirty_witness: tuple[frozenset[int], ConflictPair, frozenset[int]] | None
    quadruple: tuple[int, int, int, int] | None
    conjecture_predicts_feasible: bool

    @property
    def feasible(self) -> bool | None:
        """True/False when decided either way, None when undetermined."""
        if self.status is RateThirdStatus.FEASIBLE_MAIN:
            return True
        if self.status is RateThirdStatus.UNDETERMINED:
            return None
        return False


@dataclass(frozen=True)
class FeasibilityReport:
    rate_one: RateOneVerdict
    rate_half: RateHalfVerdict
    rate_third: RateThirdVerdict
    structure: StructureReport


def check_rate_one(p: Problem) -> RateOneVerdict:
    pairs = conflicts(p)
    witness = min(pairs) if pairs else None
    return RateOneVerdict(feasible=not pairs, conflict_witness=witness)


def check_rate_half(p: Problem, report: StructureReport | None = None) -> RateHalfVerdict:
    report = report or structure_report(p)
    pairs = conflicts(p)
    for info in report.alignment_sets:
        internal = sorted(
            pair for pair in pairs if pair[0] in info.members and pair[1] in info.members
        )
        if internal:
            return RateHalfVerdict(
                feasible=False, internal_conflict=internal[0], alignment_set=info.members
            )
    return RateHalfVerdict(feasible=True, internal_conflict=None, alignment_set=None)


_CONSTRUCTIBLE = {Kind.KIND1, Kind.KIND2, Kind.TYPE2_CLEAN}


def check_rate_third(p: Problem, report: StructureReport | None = None) -> RateThirdVerdict:
    report = report or structure_report(p)
    all_clean = not report.dirty_witnesses
    if report.dirty_witnesses:
        return RateThirdVerdict(
            status=RateThirdStatus.INFEASIBLE_DIRTY_TYPE2,
            dirty_witness=report.dirty_witnesses[0],
            quadruple=report.acyclic_quadruple,
            conjecture_predicts_feasible=all_clean,
        )
    # Kept as an independent check: the dirty-type-2 condition should
    # always subsume this one, and the test suite asserts that dominance.
    if report.acyclic_quadruple is not None:
        return RateThirdVerdict(
            status=RateThirdStatus.INFEASIBLE_ACYCLIC_QUADRUPLE,
            dirty_witness=None,
            quadruple=report.acyclic_quadruple,
            conjecture_predicts_feasible=all_clean,
        )
    if all(info.kind in _CONSTRUCTIBLE for info in report.alignment_sets):
        return RateThirdVerdict(
            status=RateThirdStatus.FEASIBLE_MAIN,
            dirty_witness=None,
            quadruple=None,
            conjecture_predicts_feasible=all_clean,
        )
    return RateThirdVerdict(
        status=RateThirdStatus.UNDETERMINED,
        dirty_witness=None,
        quadruple=None,
        conjecture_predicts_feasible=all_clean,
    )


def analyze(p: Problem) -> FeasibilityReport:
    report = structure_report(p)
    return FeasibilityReport(
        rate_one=check_rate_one(p),
        rate_half=check_rate_half(p, report),
        rate_third=check_rate_third(p, report),
        structure=report,
    )


def report_to_dict(rep: FeasibilityReport) -> dict:
    """Stable, versioned serialization of a feasibility report."""
    third = rep.rate_third
    return {
        "schema_version": 1,
        "rate_1": {
            "feasible": rep.rate_one.feasible,
            "conflict_witness": list(rep.rate_one.conflict_witness or []) or None,
        },
        "rate_1_2": {
            "feasible": rep.rate_half.feasible,
            "internal_conflict": list(rep.rate_half.internal_conflict or []) or None,
            "alignment_set": sorted(rep.rate_half.alignment_set)
            if rep.rate_half.alignment_set
            else None,
        },
        "rate_1_3": {
            "status": third.status.value,
            "feasible": third.feasible,
            "dirty_witness": {
                "type2_set": sorted(third.dirty_witness[0]),
                "conflict": list(third.dirty_witness[1]),
                "restricted_alignment_set": sorted(third.dirty_witness[2]),
            }
            if third.dirty_witness
            else None,
            "acyclic_quadruple": list(third.quadruple) if third.quadruple else None,
            "conjecture_predicts_feasible": third.conjecture_predicts_feasible,
        },
        "structure": {
            "alignment_sets": [
                {
                    "members": sorted(info.members),
                    "has_fork": info.has_fork,
                    "has_cycle": info.has_cycle,
                    "kind": info.kind.value,
                }
                for info in rep.structure.alignment_sets
            ],
            "type2_sets": [
                {
                    "messages": sorted(t.messages),
                    "triangles": sorted(sorted(tri) for tri in t.triangles),
                }
                for t in rep.structure.type2_sets
            ],
            "acyclic_quadruple": list(rep.structure.acyclic_quadruple)
            if rep.structure.acyclic_quadruple
            else None,
        },
    }


def render_report(rep: FeasibilityReport) -> str:
    """Human-readable rendering, derived from the structured form."""
    d = report_to_dict(rep)
    lines = []
    r1 = d["rate_1"]
    lines.append(
        "rate 1:   feasible"
        if r1["feasible"]
        else f"rate 1:   infeasible (conflict {set(r1['conflict_witness'])})"
    )
    rh = d["rate_1_2"]
    if rh["feasible"]:
        lines.append("rate 1/2: feasible (no internal conflicts)")
    else:
        lines.append(
            f"rate 1/2: infeasible (internal conflict {set(rh['internal_conflict'])} "
            f"inside alignment set {set(rh['alignment_set'])})"
        )
    rt = d["rate_1_3"]
    status = rep.rate_third.status
    if status is RateThirdStatus.FEASIBLE_MAIN:
        lines.append("rate 1/3: feasible (main construction applies)")
    elif status is RateThirdStatus.INFEASIBLE_DIRTY_TYPE2:
        w = rt["dirty_witness"]
        lines.append(
            f"rate 1/3: infeasible (type-2 set {set(w['type2_set'])} has restricted "
            f"internal conflict {set(w['conflict'])})"
        )
    elif status is RateThirdStatus.INFEASIBLE_ACYCLIC_QUADRUPLE:
        lines.append(f"rate 1/3: infeasible (acyclic quadruple {tuple(rt['acyclic_quadruple'])})")
    else:
        prediction = "feasible" if rt["conjecture_predicts_feasible"] else "infeasible"
        lines.append(
            f"rate 1/3: undetermined by the known conditions; conjecture predicts {prediction}"
        )
    for info in d["structure"]["alignment_sets"]:
        flags = []
        if info["has_fork"]:
            flags.append("fork")
        if info["has_cycle"]:
            flags.append("cycle")
        flag_text = f" [{', '.join(flags)}]" if flags else ""
        lines.append(f"  alignment set {set(info['members'])}: {info['kind']}{flag_text}")
    return "\n".join(lines) + "\n"

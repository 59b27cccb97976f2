"""Combinatorial structure the feasibility analysis consumes.

Alignment graph/sets, the legacy undirected conflict graph, the conflict
hypergraph, forks and cycles, acyclic quadruples, triangular interfering
sets, type-2 alignment sets, restricted internal conflicts, and the
classification of alignment sets used by the rate-1/3 construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .problem import ConflictPair, Problem, conflicts, interfering_set, restrict_problem

Edge = tuple[int, int]  # unordered, stored with a < b
Hyperedge = tuple[int, frozenset[int]]  # (demanded message, its interferers)


class _UnionFind:
    """Minimal union-find with path compression, for component extraction."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class AlignmentGraph:
    n: int
    edges: frozenset[Edge]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


@dataclass(frozen=True)
class ConflictHypergraph:
    n: int
    hyperedges: frozenset[Hyperedge]


@dataclass(frozen=True)
class LegacyConflictGraph:
    n: int
    edges: frozenset[Edge]


@dataclass(frozen=True)
class TriangularInterferingSet:
    members: frozenset[int]


@dataclass(frozen=True)
class Type2AlignmentSet:
    triangles: frozenset[frozenset[int]]
    messages: frozenset[int]


class Kind(Enum):
    KIND1 = "kind1"  # no receiver sees three of the set in one interfering set
    KIND2 = "kind2"  # exactly three messages, co-interfering, conflict-free inside
    TYPE2_CLEAN = "type2-clean"  # equals a type-2 union with no restricted internal conflicts
    TYPE2_DIRTY = "type2-dirty"  # equals a type-2 union that has restricted internal conflicts
    OTHER = "other"


@dataclass(frozen=True)
class AlignmentSetInfo:
    members: frozenset[int]
    has_fork: bool
    has_cycle: bool
    kind: Kind


@dataclass(frozen=True)
class StructureReport:
    alignment_sets: tuple[AlignmentSetInfo, ...]
    type2_sets: tuple[Type2AlignmentSet, ...]
    acyclic_quadruple: tuple[int, int, int, int] | None
    # (type-2 message union, conflict pair, restricted alignment set), original ids
    dirty_witnesses: tuple[tuple[frozenset[int], ConflictPair, frozenset[int]], ...]


def _interfering_sets(p: Problem) -> list[tuple[int, int, frozenset[int]]]:
    """All nonempty (receiver j, demanded k, Interf_k(j)) triples."""
    out = []
    for j, r in enumerate(p.receivers, start=1):
        for k in sorted(r.demands):
            interf = interfering_set(p, j, k)
            if interf:
                out.append((j, k, interf))
    return out


def alignment_graph(p: Problem) -> AlignmentGraph:
    """Two messages are joined iff they co-interfere at some receiver."""
    edges: set[Edge] = set()
    for _, _, interf in _interfering_sets(p):
        for a, b in combinations(sorted(interf), 2):
            edges.add((a, b))
    return AlignmentGraph(n=p.n, edges=frozenset(edges))


def alignment_sets(p: Problem, g: AlignmentGraph | None = None) -> list[frozenset[int]]:
    """Connected components of the alignment graph; a partition of [1..n]."""
    g = g or alignment_graph(p)
    uf = _UnionFind(p.n + 1)
    for a, b in g.edges:
        uf.union(a, b)
    comps: dict[int, set[int]] = {}
    for v in range(1, p.n + 1):
        comps.setdefault(uf.find(v), set()).add(v)
    return sorted((frozenset(c) for c in comps.values()), key=min)


def conflict_hypergraph(p: Problem) -> ConflictHypergraph:
    hyperedges = frozenset((k, interf) for _, k, interf in _interfering_sets(p))
    return ConflictHypergraph(n=p.n, hyperedges=hyperedges)


def hypergraphs_equal(h1: ConflictHypergraph, h2: ConflictHypergraph) -> bool:
    return h1.n == h2.n and h1.hyperedges == h2.hyperedges


def legacy_conflict_graph(p: Problem) -> LegacyConflictGraph:
    return LegacyConflictGraph(n=p.n, edges=conflicts(p))


def _edges_within(g: AlignmentGraph, members: frozenset[int]) -> list[Edge]:
    return [e for e in g.edges if e[0] in members and e[1] in members]


def has_fork(g: AlignmentGraph, members: frozenset[int]) -> bool:
    """A fork is a vertex of degree three or more."""
    within = _edges_within(g, members)
    return any(sum(1 for e in within if v in e) >= 3 for v in members)


def has_cycle(g: AlignmentGraph, members: frozenset[int]) -> bool:
    # For a connected component, a cycle exists iff #edges >= #vertices.
    return len(_edges_within(g, members)) >= len(members)


def cycle_witness(g: AlignmentGraph, members: frozenset[int]) -> list[int] | None:
    """Some cycle inside the component, via DFS; None if the component is a tree."""
    adj: dict[int, list[int]] = {v: [] for v in members}
    for a, b in _edges_within(g, members):
        adj[a].append(b)
        adj[b].append(a)
    parent: dict[int, int | None] = {}
    for start in sorted(members):
        if start in parent:
            continue
        parent[start] = None
        stack = [start]
        while stack:
            v = stack.pop()
            for w in sorted(adj[v]):
                if w == parent[v]:
                    continue
                if w in parent:
                    # back edge v-w closes a cycle; walk both ancestries
                    path_v, node = [v], v
                    while parent[node] is not None:
                        node = parent[node]
                        path_v.append(node)
                    path_w, node = [w], w
                    while parent[node] is not None:
                        node = parent[node]
                        path_w.append(node)
                    common = next(x for x in path_v if x in set(path_w))
                    cycle = path_v[: path_v.index(common) + 1]
                    cycle += list(reversed(path_w[: path_w.index(common)]))
                    return cycle
                parent[w] = v
                stack.append(w)
    return None


def find_acyclic_quadruple(p: Problem) -> tuple[int, int, int, int] | None:
    """Four messages orderable so each interferes with every earlier one.

    Exhaustive DFS over ordered tuples: position k needs some receiver
    demanding the k-th message whose interfering set contains all earlier
    picks.
    """
    interf_by_msg: dict[int, list[frozenset[int]]] = {}
    for _, k, interf in _interfering_sets(p):
        interf_by_msg.setdefault(k, []).append(interf)
    for j, r in enumerate(p.receivers, start=1):
        for k in r.demands:
            interf_by_msg.setdefault(k, [])

    demanded = sorted(interf_by_msg)

    def extend(prefix: tuple[int, ...]) -> tuple[int, ...] | None:
        if len(prefix) == 4:
            return prefix
        need = set(prefix)
        for m in demanded:
            if m in need:
                continue
            sets = interf_by_msg[m]
            ok = (not need and m in interf_by_msg) or any(need <= s for s in sets)
            if not need:
                ok = True  # empty prefix is contained in every interfering set
            if ok:
                found = extend(prefix + (m,))
                if found:
                    return found
        return None

    result = extend(())
    return result if result else None


def triangular_interfering_sets(p: Problem) -> list[TriangularInterferingSet]:
    """3-subsets of some interfering set carrying at least one conflict pair."""
    pairs = conflicts(p)
    seen: set[frozenset[int]] = set()
    for _, _, interf in _interfering_sets(p):
        if len(interf) < 3:
            continue
        for trio in combinations(sorted(interf), 3):
            members = frozenset(trio)
            if members in seen:
                continue
            if any((min(a, b), max(a, b)) in pairs for a, b in combinations(trio, 2)):
                seen.add(members)
    return [TriangularInterferingSet(m) for m in sorted(seen, key=sorted)]


def type2_alignment_sets(p: Problem) -> list[Type2AlignmentSet]:
    """Maximal chains of triangular interfering sets meeting at conflict pairs.

    Two triangles are adjacent iff their intersection is exactly two
    messages and that pair is in conflict.
    """
    triangles = [t.members for t in triangular_interfering_sets(p)]
    pairs = conflicts(p)
    uf = _UnionFind(len(triangles))
    for i, j in combinations(range(len(triangles)), 2):
        inter = triangles[i] & triangles[j]
        if len(inter) == 2:
            a, b = sorted(inter)
            if (a, b) in pairs:
                uf.union(i, j)
    comps: dict[int, list[frozenset[int]]] = {}
    for i, t in enumerate(triangles):
        comps.setdefault(uf.find(i), []).append(t)
    out = []
    for group in comps.values():
        messages = frozenset().union(*group)
        out.append(Type2AlignmentSet(triangles=frozenset(group), messages=messages))
    return sorted(out, key=lambda s: sorted(s.messages))


def restricted_internal_conflicts(
    p: Problem, members: frozenset[int] | set[int]
) -> list[tuple[ConflictPair, frozenset[int]]]:
    """Conflicts of the restricted problem inside one restricted alignment set.

    Returned in the original problem's numbering, each with its witnessing
    restricted alignment set.
    """
    restricted, mapping = restrict_problem(p, members)
    back = {new: old for old, new in mapping.items()}
    out = []
    for comp in alignment_sets(restricted):
        comp_pairs = [
            pair for pair in conflicts(restricted) if pair[0] in comp and pair[1] in comp
        ]
        for a, b in sorted(comp_pairs):
            orig = (min(back[a], back[b]), max(back[a], back[b]))
            out.append((orig, frozenset(back[v] for v in comp)))
    return out


def classify_alignment_set(
    p: Problem,
    members: frozenset[int],
    type2_sets: list[Type2AlignmentSet] | None = None,
) -> Kind:
    """Classification driving the rate-1/3 construction; total by the chain below."""
    if type2_sets is None:
        type2_sets = type2_alignment_sets(p)
    triples = [interf for _, _, interf in _interfering_sets(p) if len(interf & members) >= 3]
    if not triples:
        return Kind.KIND1
    pairs = conflicts(p)
    if len(members) == 3 and any(members <= interf for _, _, interf in _interfering_sets(p)):
        if not any(
            (a, b) in pairs for a, b in combinations(sorted(members), 2)
        ):
            return Kind.KIND2
    for t2 in type2_sets:
        if t2.messages == members:
            if restricted_internal_conflicts(p, members):
                return Kind.TYPE2_DIRTY
            return Kind.TYPE2_CLEAN
    return Kind.OTHER


def structure_report(p: Problem) -> StructureReport:
    g = alignment_graph(p)
    sets = alignment_sets(p, g)
    type2 = type2_alignment_sets(p)
    infos = tuple(
        AlignmentSetInfo(
            members=s,
            has_fork=has_fork(g, s),
            has_cycle=has_cycle(g, s),
            kind=classify_alignment_set(p, s, type2),
        )
        for s in sets
    )
    dirty = []
    for t2 in type2:
        for pair, comp in restricted_internal_conflicts(p, t2.messages):
            dirty.append((t2.messages, pair, comp))
    return StructureReport(
        alignment_sets=infos,
        type2_sets=tuple(type2),
        acyclic_quadruple=find_acyclic_quadruple(p),
        dirty_witnesses=tuple(dirty),
    )


def to_dot(p: Problem) -> str:
    """Graphviz rendering: solid alignment edges, dashed conflict hyperedges."""
    lines = ["graph index_coding {"]
    for v in range(1, p.n + 1):
        lines.append(f"  m{v} [label=\"W{v}\"];")
    for a, b in sorted(alignment_graph(p).edges):
        lines.append(f"  m{a} -- m{b};")
    for idx, (k, interf) in enumerate(sorted(conflict_hypergraph(p).hyperedges)):
        hub = f"h{idx}"
        lines.append(f"  {hub} [shape=point, label=\"\"];")
        lines.append(f"  m{k} -- {hub} [style=dashed];")
        for i in sorted(interf):
            lines.append(f"  {hub} -- m{i} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"

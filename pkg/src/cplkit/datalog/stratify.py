"""Two-level stratification of a ground program."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from ..errors import TooManyStrataError, UnstratifiableError
from .ground import GroundProgram, GroundRule

MAX_STRATA = 2


@dataclass(frozen=True)
class StratifiedProgram:
    program: GroundProgram
    strata: dict          # predicate -> 1 or 2
    rules1: tuple
    rules2: tuple

    def stratum_of(self, atom: str) -> int:
        pred = self.program.preds.get(atom)
        return self.strata.get(pred, 1) if pred else 1


def dependency_graph(gp: GroundProgram) -> nx.DiGraph:
    """Edge ``body_pred -> head_pred``; attribute ``neg`` lists the rules using it negatively."""
    g = nx.DiGraph()
    g.add_nodes_from(sorted(set(gp.preds.values())))
    for r in gp.rules:
        h = gp.preds[r.head]
        for atom, negated in [(a, False) for a in r.pos] + [(a, True) for a in r.neg]:
            b = gp.preds[atom]
            if not g.has_edge(b, h):
                g.add_edge(b, h, neg=None)
            if negated and g.edges[b, h]["neg"] is None:
                g.edges[b, h]["neg"] = r
    return g


def _cite(r: GroundRule) -> str:
    return str(r.clause) if r.clause is not None else str(r)


def stratify(gp: GroundProgram) -> StratifiedProgram:
    g = dependency_graph(gp)
    cond = nx.condensation(g)
    comp = cond.graph["mapping"]
    for b, h, data in sorted(g.edges(data=True)):
        if data["neg"] is not None and comp[b] == comp[h]:
            raise UnstratifiableError(
                f"unstratifiable: {h} depends negatively on {b} through a cycle, in rule {_cite(data['neg'])}",
                data["neg"])
    level = {}
    for c in nx.topological_sort(cond):
        lv = 1
        for p in cond.predecessors(c):
            lv = max(lv, level[p])
        for m in cond.nodes[c]["members"]:
            for b in g.predecessors(m):
                if comp[b] != c and g.edges[b, m]["neg"] is not None:
                    lv = max(lv, level[comp[b]] + 1)
        level[c] = lv
    strata = {p: level[comp[p]] for p in g.nodes}
    worst = max(strata.values(), default=1)
    if worst > MAX_STRATA:
        pred = min(p for p, s in strata.items() if s == worst)
        rule = next(r for r in gp.rules if gp.preds[r.head] == pred)
        raise TooManyStrataError(
            f"program needs {worst} strata but the engine supports {MAX_STRATA}; see rule {_cite(rule)}",
            rule, worst)
    rules1 = tuple(r for r in gp.rules if strata[gp.preds[r.head]] == 1)
    rules2 = tuple(r for r in gp.rules if strata[gp.preds[r.head]] == 2)
    return StratifiedProgram(gp, strata, rules1, rules2)

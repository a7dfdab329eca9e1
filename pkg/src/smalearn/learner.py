"""Main learning loop for symbolic Mealy machines.

Repairs the observation table until cohesive, reads off the concrete
evidence machine, generalizes its characters into predicates with a
partitioning function, and poses equivalence queries until the teacher
accepts.  Every hypothesis is checked for compatibility with the table it
was built from before it is submitted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .algebra import Algebra
from .automata import ConcreteMealy, SMealy, restrict
from .obstable import ObservationTable
from .partition import partitioner_for


class LearningError(RuntimeError):
    """Internal invariant breach or resource cap exceeded."""


@dataclass
class LearnStats:
    eq_queries: int = 0
    output_queries: int = 0
    total_output_queries: int = 0
    sigma_e_size: int = 0
    r_size: int = 0
    e_size: int = 0
    max_cex_len: int = 0
    rounds: int = 0
    wall_time: float = 0.0


@dataclass
class Hypothesis:
    automaton: SMealy
    evidence: ConcreteMealy
    table: dict  # observation-table snapshot the hypothesis was built from


def build_evidence(table: ObservationTable) -> ConcreteMealy:
    """Concrete machine over sigma_e read off a cohesive table."""
    rows = {}
    for i, s in enumerate(table.S):
        key = table.row(s)
        if key in rows:
            raise LearningError(f"S-rows {table.S[rows[key]]} and {s} coincide")
        rows[key] = i
    delta = {}
    for i, s in enumerate(table.S):
        for a in table.sigma_e:
            succ = rows.get(table.row(s + (a,)))
            if succ is None:
                raise LearningError(f"table is not closed at {s + (a,)}")
            delta[(i, a)] = (succ, table.cell(s, (a,)))
    return ConcreteMealy(table.sigma_e, len(table.S), 0, table.gamma, delta)


def sep_pred(evidence: ConcreteMealy, algebra: Algebra, partition=None) -> SMealy:
    """Generalize evidence characters into predicates, one state at a time.

    For each state the alphabet is grouped by (successor, output); the
    groups are listed for every state/output combination (states ascending,
    outputs in declared order) so the partitioning function sees the same
    layout on every call.
    """
    partition = partition or partitioner_for(algebra)
    keys = [(t, o) for t in range(evidence.n_states) for o in evidence.outputs]
    transitions = []
    for q in range(evidence.n_states):
        groups = {key: set() for key in keys}
        for a in evidence.alphabet:
            groups[evidence.step(q, a)].add(a)
        preds = partition(algebra, [groups[key] for key in keys])
        for (target, output), pred in zip(keys, preds):
            if not pred.is_false():
                transitions.append((q, pred, target, output))
    return SMealy(algebra, evidence.n_states, evidence.initial,
                  evidence.outputs, transitions)


def _check_hypothesis(table: ObservationTable, evidence: ConcreteMealy, hyp: SMealy):
    """Symbolic compatibility: the hypothesis reproduces every table cell."""
    if restrict(hyp, table.sigma_e) != evidence:
        raise LearningError("hypothesis restricted to sigma_e differs from the evidence")
    for w in table.words():
        for col in table.columns():
            if evidence.run(w + col) != table.cell(w, col):
                raise LearningError(f"evidence machine contradicts cell ({w}, {col})")


def learn(oracle, algebra: Algebra, partition=None, a0=None, max_rounds=None,
          trace=None) -> tuple[SMealy, LearnStats]:
    """Identify the teacher's hidden machine; returns it with run statistics."""
    start = time.perf_counter()
    partition = partition or partitioner_for(algebra)
    if a0 is None:
        a0 = algebra.min_char()
    table = ObservationTable(algebra, oracle.output_query, a0)
    stats = LearnStats()
    cap = max_rounds if max_rounds is not None else 10 * (len(table.sigma_e) + 1000)

    def emit(event):
        if trace is not None:
            trace.append(event)

    emit({"event": "init", "table": table.snapshot()})
    result = None
    while result is None:
        stats.rounds += 1
        if stats.rounds > cap:
            raise LearningError(f"no convergence within {cap} rounds")
        while (defect := table.check()).kind != "cohesive":
            table.repair(defect)
            emit({"event": "repair", "kind": defect.kind,
                  "witness": defect.witness, "table": table.snapshot()})
        evidence = build_evidence(table)
        hyp = sep_pred(evidence, algebra, partition)
        _check_hypothesis(table, evidence, hyp)
        emit({"event": "hypothesis", "states": hyp.n_states,
              "sigma_e": tuple(table.sigma_e)})
        answer = oracle.equivalence_query(hyp)
        stats.eq_queries += 1
        if answer is None:
            result = Hypothesis(hyp, evidence, table.snapshot())
            emit({"event": "done"})
        else:
            cex = tuple(answer)
            stats.max_cex_len = max(stats.max_cex_len, len(cex))
            table.add_counterexample(cex)
            emit({"event": "counterexample", "word": cex, "table": table.snapshot()})

    stats.sigma_e_size = len(table.sigma_e)
    stats.r_size = len(table.R)
    stats.e_size = len(table.E)
    output = getattr(oracle, "output", None)
    if output is not None:
        stats.output_queries = output.distinct_queries
        stats.total_output_queries = output.total_queries
    stats.wall_time = time.perf_counter() - start
    return result.automaton, stats

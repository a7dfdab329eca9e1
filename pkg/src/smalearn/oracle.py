"""Simulated teacher over a hidden target machine.

Output queries answer with the target's output for a word.  Equivalence
queries decide exact equality symbolically, but counterexamples are drawn
only from the target's *essential characters*: per state, the grid spanned
by the lower endpoints of its guard boxes (plus the axis minima).  Feeding
those characters to the partitioning function reproduces each state's guard
partition, which is verified at construction; it is that property that lets
a learner terminate without ever seeing other characters.
"""

from __future__ import annotations

import itertools
import random
from collections import deque

from .algebra import AlgebraError, INTERVAL_KINDS, flat_boxes
from .automata import ConcreteMealy, SMealy, restrict, symbolic_equiv
from .partition import partitioner_for


class OracleAssumptionViolation(RuntimeError):
    """The essential-character model does not cover a hypothesis/target pair."""


def essential_characters(target: SMealy) -> list:
    """Characters sufficient to identify all of the target's partitions."""
    alg = target.algebra
    if alg.kind in INTERVAL_KINDS:
        chars = {alg.min_char()}
        for tr in target.transitions:
            chars.update(lo for lo, _hi in tr.guard.ivs)
        return sorted(chars)
    if alg.kind != "product":
        raise AlgebraError(f"no essential-character extraction for kind {alg.kind}")
    chars = {alg.min_char()}
    for q in range(target.n_states):
        axis_cuts = [{c.min_char()} for c in alg.components]
        for tr in target.state_transitions(q):
            for box in flat_boxes(alg, tr.guard):
                for cuts, (lo, _hi) in zip(axis_cuts, box):
                    cuts.add(lo)
        chars.update(itertools.product(*(sorted(c) for c in axis_cuts)))
    return sorted(chars)


def check_partition_reconstruction(target: SMealy, chars, partition=None):
    """Verify the partitioning function rebuilds every state's partition."""
    alg = target.algebra
    partition = partition or partitioner_for(alg)
    for q in range(target.n_states):
        keys = [(t, o) for t in range(target.n_states) for o in target.outputs]
        groups = {key: set() for key in keys}
        for a in chars:
            groups[target.step(q, a)].add(a)
        preds = partition(alg, [groups[key] for key in keys])
        guards = {(tr.target, tr.output): tr.guard for tr in target.state_transitions(q)}
        for key, pred in zip(keys, preds):
            expected = guards.get(key, alg.bottom())
            if pred != expected:
                raise OracleAssumptionViolation(
                    f"state {q}, group {key}: partitioning function rebuilds "
                    f"{pred!r} instead of {expected!r}")


class OutputOracle:
    """Answers output queries; counts distinct words and total calls."""

    def __init__(self, target: SMealy):
        self.target = target
        self._cache = {}
        self.distinct_queries = 0
        self.total_queries = 0

    def query(self, word) -> str:
        if not word:
            raise ValueError("output query needs a non-empty word")
        word = tuple(word)
        self.total_queries += 1
        out = self._cache.get(word)
        if out is None:
            out = self.target.run(word)
            self._cache[word] = out
            self.distinct_queries += 1
        return out


class EquivOracle:
    """Exact equivalence; counterexamples use essential characters only."""

    def __init__(self, target: SMealy, mode: str = "lexmin", seed: int | None = None,
                 essential=None, check: bool = True, partition=None):
        if mode not in ("lexmin", "random"):
            raise ValueError(f"unknown oracle mode {mode!r}")
        self.target = target
        self.mode = mode
        self.rng = random.Random(seed)
        self.essential = list(essential) if essential is not None \
            else essential_characters(target)
        if check:
            check_partition_reconstruction(target, self.essential, partition)
        self._restricted = restrict(target, self.essential)
        self.queries = 0

    def query(self, hyp: SMealy):
        """None when equivalent; otherwise a counterexample word."""
        self.queries += 1
        if symbolic_equiv(hyp, self.target) is None:
            return None
        cex = self._search(hyp, restrict(hyp, self.essential))
        if cex is None:
            raise OracleAssumptionViolation(
                "hypothesis differs from the target but agrees on all words "
                "over the essential characters")
        return cex

    def _search(self, hyp_sym: SMealy, hyp: ConcreteMealy):
        tgt = self._restricted
        if self.mode == "lexmin":
            start = (hyp.initial, tgt.initial)
            seen = {start: ()}
            queue = deque([start])
            while queue:
                pair = queue.popleft()
                prefix = seen[pair]
                for a in tgt.alphabet:
                    p1, o1 = hyp.step(pair[0], a)
                    p2, o2 = tgt.step(pair[1], a)
                    if o1 != o2:
                        return prefix + (a,)
                    if (p1, p2) not in seen:
                        seen[(p1, p2)] = prefix + (a,)
                        queue.append((p1, p2))
            return None
        return self._search_random(hyp_sym, hyp)

    def _search_random(self, hyp_sym: SMealy, hyp: ConcreteMealy):
        """Random counterexample: minimal length, then fewest new characters.

        Among the minimal-length disagreeing words, those using the fewest
        characters that do not already occur in the hypothesis's guards are
        preferred, and the draw is seeded-uniform within that class.  A
        shortest word revealing several characters at once would skip
        refinement steps the learner is entitled to take one by one.
        """
        tgt = self._restricted
        cap = hyp.n_states * tgt.n_states + 1
        length = self._min_mismatch_length(hyp, tgt, tgt.alphabet, cap)
        if length is None:
            return None
        known = set(essential_characters(hyp_sym)) & set(tgt.alphabet)

        # counts[t][pair][j]: length-t words from pair whose final output
        # disagrees and which use exactly j fresh (non-known) characters
        pairs = [(q1, q2) for q1 in range(hyp.n_states) for q2 in range(tgt.n_states)]
        counts = [None] * (length + 1)
        counts[1] = {pair: [0] * (length + 1) for pair in pairs}
        for pair in pairs:
            for a in tgt.alphabet:
                if hyp.step(pair[0], a)[1] != tgt.step(pair[1], a)[1]:
                    counts[1][pair][0 if a in known else 1] += 1
        for t in range(2, length + 1):
            counts[t] = {pair: [0] * (length + 1) for pair in pairs}
            for pair in pairs:
                row = counts[t][pair]
                for a in tgt.alphabet:
                    nxt = (hyp.step(pair[0], a)[0], tgt.step(pair[1], a)[0])
                    sub = counts[t - 1][nxt]
                    cost = 0 if a in known else 1
                    for j in range(length + 1 - cost):
                        row[j + cost] += sub[j]

        start = (hyp.initial, tgt.initial)
        fresh_used = next(j for j in range(length + 1) if counts[length][start][j])
        index = self.rng.randrange(counts[length][start][fresh_used])
        word = []
        pair = start
        for t in range(length, 0, -1):
            for a in tgt.alphabet:
                cost = 0 if a in known else 1
                if cost > fresh_used:
                    continue
                nxt = (hyp.step(pair[0], a)[0], tgt.step(pair[1], a)[0])
                if t == 1:
                    differs = hyp.step(pair[0], a)[1] != tgt.step(pair[1], a)[1]
                    weight = int(differs and cost == fresh_used)
                else:
                    weight = counts[t - 1][nxt][fresh_used - cost]
                if index < weight:
                    word.append(a)
                    pair = nxt
                    fresh_used -= cost
                    break
                index -= weight
            else:
                raise AssertionError("sampling walked off the count table")
        return tuple(word)

    @staticmethod
    def _min_mismatch_length(hyp, tgt, alphabet, cap):
        frontier = {(hyp.initial, tgt.initial)}
        seen = set(frontier)
        for length in range(1, cap + 1):
            nxt = set()
            for q1, q2 in frontier:
                for a in alphabet:
                    p1, o1 = hyp.step(q1, a)
                    p2, o2 = tgt.step(q2, a)
                    if o1 != o2:
                        return length
                    nxt.add((p1, p2))
            frontier = nxt - seen
            seen |= nxt
            if not frontier:
                return None
        return None


class Oracle:
    """Composite teacher: output queries plus equivalence queries."""

    def __init__(self, target: SMealy, mode: str = "lexmin", seed: int | None = None,
                 check: bool = True, partition=None):
        violations = target.validate()
        if violations:
            raise ValueError("target automaton is invalid: "
                             + "; ".join(str(v) for v in violations))
        self.target = target
        self.output = OutputOracle(target)
        self.equiv = EquivOracle(target, mode=mode, seed=seed, check=check,
                                 partition=partition)

    @property
    def essential(self):
        return self.equiv.essential

    def output_query(self, word) -> str:
        return self.output.query(word)

    def equivalence_query(self, hyp: SMealy):
        return self.equiv.query(hyp)


class ScriptedOracle:
    """Replays a fixed list of counterexamples, then answers ``true``.

    Every scripted counterexample must actually distinguish the hypothesis
    it is served for, and the final hypothesis must be correct; violations
    raise ``ValueError`` since they mean the script does not fit the run.
    """

    def __init__(self, target: SMealy, script):
        self.target = target
        self.output = OutputOracle(target)
        self.script = [tuple(w) for w in script]
        self._next = 0

    def output_query(self, word) -> str:
        return self.output.query(word)

    def equivalence_query(self, hyp: SMealy):
        if self._next < len(self.script):
            cex = self.script[self._next]
            self._next += 1
            if hyp.run(cex) == self.target.run(cex):
                raise ValueError(
                    f"scripted counterexample {cex} does not distinguish the hypothesis")
            return cex
        if symbolic_equiv(hyp, self.target) is not None:
            raise ValueError("script exhausted but the hypothesis is still wrong")
        return None

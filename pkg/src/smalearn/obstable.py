"""Observation table for active Mealy-machine learning.

The table stores output-query answers for prefix words (``S`` and ``R``)
against single-character columns (``sigma_e``) and longer suffix columns
(``E``).  Four defect kinds block hypothesis construction and each has a
repair operation; repairs are driven by :func:`check` which reports the
highest-priority defect with a deterministic (shortlex-minimal) witness.

Priority order is consistency, closedness, evidence-closedness, then
output-closedness.  Consistency is checked before closedness so that a
counterexample whose prefixes expose both defects grows the suffix set
before rows move; this matches the reference learning traces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra
from .automata import shortlex_key


@dataclass(frozen=True)
class Defect:
    kind: str  # cohesive | not_consistent | not_closed | not_evidence_closed | not_output_closed
    witness: tuple = ()

    def __str__(self):
        return f"{self.kind}{self.witness if self.witness else ''}"


COHESIVE = Defect("cohesive")


def prefixes(word):
    return [tuple(word[:i]) for i in range(1, len(word) + 1)]


class ObservationTable:
    """Mutable table owned by a single learner."""

    def __init__(self, algebra: Algebra, ask, a0):
        """``ask`` answers output queries: word -> output symbol."""
        self.algebra = algebra
        self.ask = ask
        a0 = algebra.norm_char(a0)
        self.S = [()]
        self.R = [(a0,)]
        self.sigma_e = [a0]
        self.E = []
        self.cells = {}
        self.gamma = []  # output symbols in first-seen order
        self._row_cache = {}
        self._fill()

    # -- storage -----------------------------------------------------------

    def columns(self):
        return [(a,) for a in self.sigma_e] + list(self.E)

    def words(self):
        return self.S + self.R

    def _contains(self, word):
        return word in self._word_set()

    def _word_set(self):
        return set(self.S) | set(self.R)

    def _fill(self):
        self._row_cache.clear()
        for w in self.words():
            for col in self.columns():
                if (w, col) not in self.cells:
                    out = str(self.ask(w + col))
                    self.cells[(w, col)] = out
                    if out not in self.gamma:
                        self.gamma.append(out)

    def cell(self, word, col):
        return self.cells[(word, col)]

    def row(self, word):
        key = self._row_cache.get(word)
        if key is None:
            key = tuple(self.cells[(word, col)] for col in self.columns())
            self._row_cache[word] = key
        return key

    # -- defect detection ----------------------------------------------------

    def check(self) -> Defect:
        for finder in (self._find_inconsistency, self._find_unclosed,
                       self._find_evidence_gap, self._find_output_gap):
            defect = finder()
            if defect is not None:
                return defect
        return COHESIVE

    def _find_inconsistency(self):
        groups = {}
        words = self._word_set()
        for w in sorted(words, key=shortlex_key):
            if not w:
                continue
            prefix, a = w[:-1], w[-1]
            groups.setdefault((self.row(prefix), a), []).append(prefix)
        best = None
        for (_, a), members in groups.items():
            base = min(members, key=shortlex_key)
            base_row = self.row(base + (a,))
            for w2 in sorted(members, key=shortlex_key):
                if self.row(w2 + (a,)) == base_row:
                    continue
                e = next(col for col in sorted(self.columns(), key=shortlex_key)
                         if self.cells[(base + (a,), col)] != self.cells[(w2 + (a,), col)])
                cand = (base, w2, a, e)
                key = (shortlex_key(base), shortlex_key(w2), shortlex_key((a,)), shortlex_key(e))
                if best is None or key < best[0]:
                    best = (key, cand)
                break
        if best is None:
            return None
        return Defect("not_consistent", best[1])

    def _find_unclosed(self):
        s_rows = {self.row(s) for s in self.S}
        for r in sorted(self.R, key=shortlex_key):
            if self.row(r) not in s_rows:
                return Defect("not_closed", (r,))
        return None

    def _find_evidence_gap(self):
        words = self._word_set()
        best = None
        for s in self.S:
            for a in self.sigma_e:
                w = s + (a,)
                if w not in words and (best is None or shortlex_key(w) < shortlex_key(best[0])):
                    best = (w, s, a)
        if best is None:
            return None
        return Defect("not_evidence_closed", (best[1], best[2]))

    def _find_output_gap(self):
        known = set(self.sigma_e)
        for w in sorted(self._word_set(), key=shortlex_key):
            if w and w[-1] not in known:
                return Defect("not_output_closed", (w[:-1], w[-1]))
        return None

    # -- repairs -------------------------------------------------------------

    def repair(self, defect: Defect):
        handler = {
            "not_consistent": self.make_consistent,
            "not_closed": self.make_closed,
            "not_evidence_closed": self.make_evidence_closed,
            "not_output_closed": self.make_output_closed,
        }.get(defect.kind)
        if handler is None:
            raise ValueError(f"cannot repair {defect}")
        handler(defect)

    def make_closed(self, defect: Defect):
        (r,) = defect.witness
        if r not in self.R:
            raise ValueError(f"{r} is not an R-row")
        self.R.remove(r)
        self.S.append(r)

    def make_consistent(self, defect: Defect):
        _, _, a, e = defect.witness
        column = (a,) + e
        if column in self.E:
            raise ValueError(f"column {column} already present")
        self.E.append(column)
        self._fill()

    def make_evidence_closed(self, defect: Defect):
        s, a = defect.witness
        word = s + (a,)
        words = self._word_set()
        for p in prefixes(word):
            if p not in words:
                self.R.append(p)
                words.add(p)
        self._fill()

    def make_output_closed(self, defect: Defect):
        _, a = defect.witness
        if a in self.sigma_e:
            raise ValueError(f"{a} already in sigma_e")
        self.sigma_e.append(a)
        self._fill()

    def add_counterexample(self, cex):
        cex = tuple(self.algebra.norm_char(a) for a in cex)
        if not cex:
            raise ValueError("counterexample must be non-empty")
        words = self._word_set()
        for p in prefixes(cex):
            if p not in words:
                self.R.append(p)
                words.add(p)
        self._fill()

    # -- inspection ----------------------------------------------------------

    def structural_violations(self) -> list[str]:
        """Structural-invariant breaches; empty when the table is well formed."""
        out = []
        words = self._word_set()
        if () not in self.S:
            out.append("empty word missing from S")
        if set(self.S) & set(self.R):
            out.append("S and R overlap")
        if not self.sigma_e:
            out.append("sigma_e is empty")
        for w in words:
            if w and w[:-1] not in words:
                out.append(f"prefix of {w} missing")
        cols = set(self.columns())
        for e in self.E:
            for i in range(1, len(e)):
                if e[i:] not in cols:
                    out.append(f"suffix {e[i:]} of column {e} missing")
        for w in words:
            for col in self.columns():
                if (w, col) not in self.cells:
                    out.append(f"cell ({w}, {col}) unfilled")
        return out

    def snapshot(self) -> dict:
        return {
            "S": tuple(self.S),
            "R": tuple(self.R),
            "sigma_e": tuple(self.sigma_e),
            "E": tuple(self.E),
            "cells": {(w, col): self.cells[(w, col)]
                      for w in self.words() for col in self.columns()},
        }

    def dump(self) -> str:
        from .algebra import format_char

        def word_str(w):
            return "ε" if not w else "·".join(format_char(a) for a in w)

        cols = self.columns()
        header = [""] + [word_str(c) for c in cols]
        lines = [header]
        for w in self.S:
            lines.append([word_str(w)] + [self.cells[(w, c)] for c in cols])
        lines.append(None)  # separator
        for r in self.R:
            lines.append([word_str(r)] + [self.cells[(r, c)] for c in cols])
        widths = [max(len(line[i]) for line in lines if line) for i in range(len(header))]
        rendered = []
        for line in lines:
            if line is None:
                rendered.append("-" * (sum(widths) + 3 * len(widths)))
            else:
                rendered.append(" | ".join(v.ljust(w) for v, w in zip(line, widths)))
        return "\n".join(rendered)

"""Symbolic and concrete Mealy machines.

``SMealy`` is a deterministic, complete Mealy machine whose transitions carry
predicates; ``ConcreteMealy`` is an ordinary Mealy machine over an explicit
finite alphabet.  The module also provides exact equivalence checking via
product exploration, restriction of a symbolic machine to a finite alphabet,
and JSON / DOT serialization.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .algebra import Algebra, AlgebraError, Predicate, format_char, format_predicate


class AutomatonError(ValueError):
    """Malformed automaton or operation on an invalid automaton."""


def shortlex_key(word):
    """Sort key ordering words by length, then pointwise by the domain order."""
    return (len(word), tuple(word))


@dataclass(frozen=True)
class Transition:
    source: int
    guard: Predicate
    target: int
    output: str


@dataclass(frozen=True)
class Violation:
    state: int
    kind: str  # "overlap" | "incomplete"
    detail: tuple  # (guard, guard) for overlaps, (uncovered predicate,) otherwise

    def __str__(self):
        if self.kind == "overlap":
            a, b = self.detail
            return (f"state {self.state}: guards {format_predicate(a)} and "
                    f"{format_predicate(b)} overlap")
        return f"state {self.state}: uncovered region {format_predicate(self.detail[0])}"


class SMealy:
    """Symbolic Mealy machine with canonically ordered, merged transitions."""

    def __init__(self, algebra: Algebra, n_states: int, initial: int, outputs, transitions):
        if n_states < 1:
            raise AutomatonError("at least one state required")
        if not 0 <= initial < n_states:
            raise AutomatonError(f"initial state {initial} out of range")
        self.algebra = algebra
        self.n_states = n_states
        self.initial = initial

        merged = {}
        order = []
        for source, guard, target, output in transitions:
            if not 0 <= source < n_states or not 0 <= target < n_states:
                raise AutomatonError(f"transition state out of range: {source}->{target}")
            if guard.is_false():
                raise AutomatonError(f"bottom guard on transition {source}->{target}")
            output = str(output)
            key = (source, target, output)
            if key in merged:
                merged[key] = algebra.join(merged[key], guard)
            else:
                merged[key] = guard
                order.append(key)

        outs = list(dict.fromkeys(str(o) for o in outputs))
        for _, _, output in order:
            if output not in outs:
                outs.append(output)
        self.outputs = tuple(outs)

        trans = [Transition(s, merged[(s, t, o)], t, o) for s, t, o in order]
        trans.sort(key=lambda tr: (tr.source, _char_key(algebra.witness(tr.guard))))
        self.transitions = tuple(trans)
        self._by_state = [[] for _ in range(n_states)]
        for tr in self.transitions:
            self._by_state[tr.source].append(tr)

    def __eq__(self, other):
        return (isinstance(other, SMealy)
                and self.algebra == other.algebra
                and self.n_states == other.n_states
                and self.initial == other.initial
                and self.outputs == other.outputs
                and self.transitions == other.transitions)

    def __repr__(self):
        return (f"SMealy(states={self.n_states}, transitions={len(self.transitions)}, "
                f"outputs={list(self.outputs)})")

    def state_transitions(self, q: int):
        return self._by_state[q]

    def step(self, q: int, a):
        a = self.algebra.norm_char(a)
        for tr in self._by_state[q]:
            if self.algebra.denotes(tr.guard, a):
                return tr.target, tr.output
        raise AutomatonError(f"no transition from state {q} on {format_char(a)}")

    def run(self, word) -> str:
        if not word:
            raise AutomatonError("output of the empty word is undefined")
        q = self.initial
        out = None
        for a in word:
            q, out = self.step(q, a)
        return out

    def validate(self) -> list[Violation]:
        """Determinism and completeness violations; empty list means valid."""
        violations = []
        alg = self.algebra
        for q in range(self.n_states):
            trs = self._by_state[q]
            for i, t1 in enumerate(trs):
                for t2 in trs[i + 1:]:
                    if (t1.target, t1.output) == (t2.target, t2.output):
                        continue
                    if not alg.is_empty(alg.meet(t1.guard, t2.guard)):
                        violations.append(Violation(q, "overlap", (t1.guard, t2.guard)))
            covered = alg.union(*(t.guard for t in trs)) if trs else alg.bottom()
            uncovered = alg.complement(covered)
            if not alg.is_empty(uncovered):
                violations.append(Violation(q, "incomplete", (uncovered,)))
        return violations

    # -- serialization ---------------------------------------------------

    def to_json(self):
        return {
            "algebra": self.algebra.to_json(),
            "states": self.n_states,
            "initial": self.initial,
            "outputs": list(self.outputs),
            "transitions": [
                {"from": t.source, "guard": self.algebra.pred_to_json(t.guard),
                 "to": t.target, "out": t.output}
                for t in self.transitions
            ],
        }

    @staticmethod
    def from_json(data) -> "SMealy":
        try:
            algebra = Algebra.from_json(data["algebra"])
            n = int(data["states"])
            initial = int(data["initial"])
            outputs = data.get("outputs", [])
            raw = data["transitions"]
        except (KeyError, TypeError, ValueError) as exc:
            raise AutomatonError(f"malformed automaton data: {exc}") from exc

        def renum(q):  # the initial state is always state 0 in memory
            if q == initial:
                return 0
            if q == 0:
                return initial
            return q

        transitions = []
        for t in raw:
            guard = algebra.pred_from_json(t["guard"])
            transitions.append((renum(int(t["from"])), guard, renum(int(t["to"])), t["out"]))
        return SMealy(algebra, n, 0, outputs, transitions)

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)
            fh.write("\n")

    @staticmethod
    def load(path) -> "SMealy":
        with open(path) as fh:
            return SMealy.from_json(json.load(fh))

    def to_dot(self) -> str:
        lines = ["digraph sma {", "  rankdir=LR;", '  __start [shape=point label=""];',
                 f"  __start -> q{self.initial};"]
        for q in range(self.n_states):
            lines.append(f'  q{q} [shape=circle label="q{q}"];')
        for t in self.transitions:
            label = f"{format_predicate(t.guard)} | {t.output}"
            lines.append(f'  q{t.source} -> q{t.target} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)


def _char_key(a):
    return a if isinstance(a, tuple) else (a,)


class ConcreteMealy:
    """Total Mealy machine over an explicit finite alphabet."""

    def __init__(self, alphabet, n_states: int, initial: int, outputs, delta):
        """``delta`` maps (state, char) to (state, output); must be total."""
        self.alphabet = tuple(sorted(set(alphabet), key=_char_key))
        if not self.alphabet:
            raise AutomatonError("alphabet must be non-empty")
        if n_states < 1 or not 0 <= initial < n_states:
            raise AutomatonError("bad state count or initial state")
        self.n_states = n_states
        self.initial = initial
        self.delta = dict(delta)
        for q in range(n_states):
            for a in self.alphabet:
                if (q, a) not in self.delta:
                    raise AutomatonError(f"missing transition ({q}, {format_char(a)})")
        outs = list(dict.fromkeys(outputs))
        for _, o in self.delta.values():
            if o not in outs:
                outs.append(o)
        self.outputs = tuple(outs)

    def __eq__(self, other):
        return (isinstance(other, ConcreteMealy)
                and self.alphabet == other.alphabet
                and self.n_states == other.n_states
                and self.initial == other.initial
                and self.delta == other.delta)

    def step(self, q, a):
        try:
            return self.delta[(q, a)]
        except KeyError:
            raise AutomatonError(f"no transition ({q}, {format_char(a)})") from None

    def run(self, word) -> str:
        if not word:
            raise AutomatonError("output of the empty word is undefined")
        q = self.initial
        out = None
        for a in word:
            q, out = self.step(q, a)
        return out


def restrict(m: SMealy, sigma) -> ConcreteMealy:
    """Concrete machine agreeing with ``m`` on all words over ``sigma``."""
    chars = sorted({m.algebra.norm_char(a) for a in sigma}, key=_char_key)
    if not chars:
        raise AutomatonError("restriction alphabet must be non-empty")
    delta = {}
    for q in range(m.n_states):
        for a in chars:
            delta[(q, a)] = m.step(q, a)
    return ConcreteMealy(chars, m.n_states, m.initial, m.outputs, delta)


def symbolic_equiv(m1: SMealy, m2: SMealy):
    """None if the machines agree on every non-empty word, else a witness word.

    Breadth-first product exploration: state pairs are expanded in FIFO
    order, transition pairs in canonical stored order, and each frontier
    character is the minimum of the meet of the two guards, so the witness
    is deterministic.
    """
    if m1.algebra != m2.algebra:
        raise AlgebraError("equivalence across different algebras")
    alg = m1.algebra
    start = (m1.initial, m2.initial)
    seen = {start: ()}
    queue = deque([start])
    while queue:
        q1, q2 = queue.popleft()
        prefix = seen[(q1, q2)]
        for t1 in m1.state_transitions(q1):
            for t2 in m2.state_transitions(q2):
                both = alg.meet(t1.guard, t2.guard)
                if alg.is_empty(both):
                    continue
                a = alg.witness(both)
                if t1.output != t2.output:
                    return prefix + (a,)
                nxt = (t1.target, t2.target)
                if nxt not in seen:
                    seen[nxt] = prefix + (a,)
                    queue.append(nxt)
    return None

"""Effective Boolean algebras over ordered and finite domains.

Four algebra kinds are supported:

* ``interval-nat``: half-open intervals ``[lo, hi)`` over the naturals,
  optionally restricted to ``{0, ..., bound-1}``.
* ``interval-real``: half-open intervals over finite 64-bit floats, with a
  configurable domain minimum.
* ``equality``: finite and co-finite character sets, over the naturals or an
  explicitly declared finite carrier.
* ``product``: finite unions of boxes over a tuple of 1-D interval algebras.

Predicates are immutable and kept in a canonical normal form, so two
predicates with equal denotations compare structurally equal.  ``hi = None``
encodes an unbounded upper endpoint throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class AlgebraError(ValueError):
    """Kind, dimension or domain mismatch between algebra values."""


INTERVAL_KINDS = ("interval-nat", "interval-real")


@dataclass(frozen=True)
class Predicate:
    """Canonical predicate value.

    Exactly one payload is populated, depending on ``kind``:
    ``ivs`` for 1-D interval algebras (sorted, disjoint, non-touching
    half-open intervals), ``boxes`` for product algebras (disjoint boxes,
    each box a tuple of per-axis 1-D predicates), and ``chars``/``negated``
    for the equality algebra.
    """

    kind: str
    ivs: tuple = ()
    boxes: tuple = ()
    chars: frozenset = field(default_factory=frozenset)
    negated: bool = False

    def is_false(self) -> bool:
        if self.kind in INTERVAL_KINDS:
            return not self.ivs
        if self.kind == "product":
            return not self.boxes
        return not self.chars and not self.negated

    def __repr__(self):
        return f"<{format_predicate(self)}>"


def format_char(a) -> str:
    if isinstance(a, tuple):
        return "(" + ",".join(format_char(c) for c in a) + ")"
    if isinstance(a, float) and a.is_integer() and abs(a) < 1e15:
        return str(int(a))
    return str(a)


def format_predicate(p: Predicate) -> str:
    if p.is_false():
        return "false"
    if p.kind in INTERVAL_KINDS:
        parts = []
        for lo, hi in p.ivs:
            parts.append(f"[{format_char(lo)},{'inf' if hi is None else format_char(hi)})")
        return "U".join(parts)
    if p.kind == "product":
        boxes = []
        for box in p.boxes:
            boxes.append("x".join(format_predicate(c) for c in box))
        return " U ".join(boxes)
    inner = "{" + ",".join(format_char(c) for c in sorted(p.chars)) + "}"
    return ("not " + inner) if p.negated else inner


@dataclass(frozen=True)
class Algebra:
    """Descriptor and operation carrier for one effective Boolean algebra."""

    kind: str
    components: tuple = ()
    carrier: frozenset | None = None
    bound: int | None = None
    minimum: float = 0.0

    # -- construction ------------------------------------------------------

    @staticmethod
    def naturals(bound: int | None = None) -> "Algebra":
        return Algebra(kind="interval-nat", bound=bound)

    @staticmethod
    def reals(minimum: float = 0.0) -> "Algebra":
        return Algebra(kind="interval-real", minimum=float(minimum))

    @staticmethod
    def equality(carrier=None) -> "Algebra":
        frozen = None if carrier is None else frozenset(carrier)
        if frozen is not None and not frozen:
            raise AlgebraError("equality carrier must be non-empty")
        return Algebra(kind="equality", carrier=frozen)

    @staticmethod
    def product(*components: "Algebra") -> "Algebra":
        if not components:
            raise AlgebraError("product arity must be >= 1")
        for c in components:
            if c.kind not in INTERVAL_KINDS:
                raise AlgebraError(f"unsupported product component kind: {c.kind}")
        return Algebra(kind="product", components=tuple(components))

    @property
    def arity(self) -> int:
        return len(self.components) if self.kind == "product" else 1

    def axis(self, i: int) -> "Algebra":
        return self.components[i]

    # -- characters --------------------------------------------------------

    def min_char(self):
        if self.kind == "interval-nat":
            return 0
        if self.kind == "interval-real":
            return self.minimum
        if self.kind == "equality":
            return min(self.carrier) if self.carrier is not None else 0
        return tuple(c.min_char() for c in self.components)

    def norm_char(self, a):
        """Validate ``a`` and coerce it into the domain's canonical type."""
        if self.kind == "interval-nat":
            if isinstance(a, bool) or not isinstance(a, int):
                if isinstance(a, float) and a.is_integer():
                    a = int(a)
                else:
                    raise AlgebraError(f"not a natural: {a!r}")
            if a < 0 or (self.bound is not None and a >= self.bound):
                raise AlgebraError(f"natural out of domain: {a!r}")
            return a
        if self.kind == "interval-real":
            a = float(a)
            if not math.isfinite(a):
                raise AlgebraError(f"real characters must be finite: {a!r}")
            if a < self.minimum:
                raise AlgebraError(f"below domain minimum {self.minimum}: {a!r}")
            return a
        if self.kind == "equality":
            if self.carrier is not None:
                if a not in self.carrier:
                    raise AlgebraError(f"not in equality carrier: {a!r}")
                return a
            if isinstance(a, bool) or not isinstance(a, int) or a < 0:
                raise AlgebraError(f"not a natural: {a!r}")
            return a
        if not isinstance(a, tuple) or len(a) != self.arity:
            raise AlgebraError(f"expected {self.arity}-tuple, got {a!r}")
        return tuple(c.norm_char(x) for c, x in zip(self.components, a))

    def next_above(self, a):
        """Smallest domain value strictly above ``a`` (per axis for products)."""
        if self.kind == "interval-nat":
            a = self.norm_char(a)
            nxt = a + 1
            if self.bound is not None and nxt >= self.bound:
                raise AlgebraError(f"no successor of {a} in bounded domain")
            return nxt
        if self.kind == "interval-real":
            a = self.norm_char(a)
            nxt = math.nextafter(a, math.inf)
            if not math.isfinite(nxt):
                raise AlgebraError(f"successor of {a} overflows")
            return nxt
        raise AlgebraError(f"next_above undefined for kind {self.kind}")

    # -- predicate constructors --------------------------------------------

    def bottom(self) -> Predicate:
        return Predicate(kind=self.kind)

    def top(self) -> Predicate:
        if self.kind in INTERVAL_KINDS:
            return Predicate(kind=self.kind, ivs=((self.min_char(), None),))
        if self.kind == "equality":
            if self.carrier is not None:
                return Predicate(kind=self.kind, chars=self.carrier)
            return Predicate(kind=self.kind, negated=True)
        return Predicate(kind="product", boxes=((tuple(c.top() for c in self.components)),))

    def interval(self, lo, hi) -> Predicate:
        """Half-open interval ``[lo, hi)``; ``hi=None`` means unbounded."""
        if self.kind not in INTERVAL_KINDS:
            raise AlgebraError(f"interval undefined for kind {self.kind}")
        lo = self.norm_char(lo)
        if hi is not None:
            hi = int(hi) if self.kind == "interval-nat" else float(hi)
            if hi <= lo:
                raise AlgebraError(f"empty interval [{lo}, {hi})")
        return Predicate(kind=self.kind, ivs=self._norm_ivs(((lo, hi),)))

    def union(self, *preds: Predicate) -> Predicate:
        out = self.bottom()
        for p in preds:
            out = self.join(out, p)
        return out

    def eq_chars(self, chars, negated: bool = False) -> Predicate:
        if self.kind != "equality":
            raise AlgebraError(f"eq_chars undefined for kind {self.kind}")
        chars = frozenset(self.norm_char(c) for c in chars)
        return self._norm_eq(chars, negated)

    def box(self, *comps) -> Predicate:
        """Product box from per-axis 1-D predicates or (lo, hi) pairs."""
        if self.kind != "product":
            raise AlgebraError("box undefined for non-product algebra")
        if len(comps) != self.arity:
            raise AlgebraError(f"expected {self.arity} components, got {len(comps)}")
        preds = []
        for c, comp in zip(self.components, comps):
            if isinstance(comp, Predicate):
                preds.append(comp)
            else:
                lo, hi = comp
                preds.append(c.interval(lo, hi))
        return self._norm_boxes((tuple(preds),))

    def from_boxes(self, boxes) -> Predicate:
        if self.kind != "product":
            raise AlgebraError("from_boxes undefined for non-product algebra")
        return self._norm_boxes(tuple(tuple(b) for b in boxes))

    # -- semantics ---------------------------------------------------------

    def denotes(self, phi: Predicate, a) -> bool:
        """True iff ``a`` is in the denotation of ``phi``."""
        self._check(phi)
        a = self.norm_char(a)
        if self.kind in INTERVAL_KINDS:
            return any(lo <= a and (hi is None or a < hi) for lo, hi in phi.ivs)
        if self.kind == "equality":
            return (a in phi.chars) != phi.negated
        for box in phi.boxes:
            if all(c.denotes(comp, x) for c, comp, x in zip(self.components, box, a)):
                return True
        return False

    def meet(self, phi: Predicate, psi: Predicate) -> Predicate:
        self._check(phi)
        self._check(psi)
        if self.kind in INTERVAL_KINDS:
            return Predicate(kind=self.kind, ivs=_ivs_meet(phi.ivs, psi.ivs))
        if self.kind == "equality":
            return self._eq_op(phi, psi, "meet")
        if self.arity == 1:
            axis0 = self.components[0]
            a = phi.boxes[0][0] if phi.boxes else axis0.bottom()
            b = psi.boxes[0][0] if psi.boxes else axis0.bottom()
            return self._norm_boxes(((axis0.meet(a, b),),))
        return self._dl_to_pred(_dl_op(self, self._pred_to_dl(phi), self._pred_to_dl(psi), "meet"))

    def join(self, phi: Predicate, psi: Predicate) -> Predicate:
        self._check(phi)
        self._check(psi)
        if self.kind in INTERVAL_KINDS:
            return Predicate(kind=self.kind, ivs=self._norm_ivs(phi.ivs + psi.ivs))
        if self.kind == "equality":
            return self._eq_op(phi, psi, "join")
        if self.arity == 1:
            return self._norm_boxes(phi.boxes + psi.boxes)
        return self._dl_to_pred(_dl_op(self, self._pred_to_dl(phi), self._pred_to_dl(psi), "join"))

    def complement(self, phi: Predicate) -> Predicate:
        self._check(phi)
        if self.kind in INTERVAL_KINDS:
            return Predicate(kind=self.kind, ivs=_ivs_complement(phi.ivs, self.min_char()))
        if self.kind == "equality":
            if self.carrier is not None:
                return self._norm_eq(self.carrier - phi.chars, False)
            return self._norm_eq(phi.chars, not phi.negated)
        if self.arity == 1:
            axis0 = self.components[0]
            a = phi.boxes[0][0] if phi.boxes else axis0.bottom()
            return self._norm_boxes(((axis0.complement(a),),))
        return self._dl_to_pred(_dl_complement(self, self._pred_to_dl(phi)))

    def is_empty(self, phi: Predicate) -> bool:
        self._check(phi)
        return phi.is_false()

    def semantically_equal(self, phi: Predicate, psi: Predicate) -> bool:
        return phi == psi  # canonical forms make this exact

    def witness(self, phi: Predicate):
        """Minimum element of the denotation (lexicographic-minimum corner)."""
        self._check(phi)
        if phi.is_false():
            raise AlgebraError("witness of the empty predicate")
        if self.kind in INTERVAL_KINDS:
            return phi.ivs[0][0]
        if self.kind == "equality":
            if phi.negated:
                n = 0
                while n in phi.chars:
                    n += 1
                return n
            return min(phi.chars)
        first = phi.boxes[0]
        return tuple(c.witness(comp) for c, comp in zip(self.components, first))

    # -- serialization -----------------------------------------------------

    def to_json(self):
        if self.kind == "interval-nat":
            d = {"kind": self.kind}
            if self.bound is not None:
                d["bound"] = self.bound
            return d
        if self.kind == "interval-real":
            return {"kind": self.kind, "min": self.minimum}
        if self.kind == "equality":
            return {"kind": self.kind,
                    "carrier": sorted(self.carrier) if self.carrier is not None else None}
        return {"kind": self.kind, "components": [c.to_json() for c in self.components]}

    @staticmethod
    def from_json(d) -> "Algebra":
        kind = d.get("kind")
        if kind == "interval-nat":
            return Algebra.naturals(bound=d.get("bound"))
        if kind == "interval-real":
            return Algebra.reals(minimum=d.get("min", 0.0))
        if kind == "equality":
            return Algebra.equality(carrier=d.get("carrier"))
        if kind == "product":
            return Algebra.product(*(Algebra.from_json(c) for c in d["components"]))
        raise AlgebraError(f"unknown algebra kind: {kind!r}")

    def char_from_json(self, v):
        """Parse a character; ``{"na": x}`` means the successor of ``x``."""
        if isinstance(v, dict) and set(v) == {"na"}:
            return self.next_above(self.char_from_json(v["na"]))
        if self.kind == "product":
            return tuple(c.char_from_json(x) for c, x in zip(self.components, v))
        return self.norm_char(v)

    def pred_to_json(self, phi: Predicate):
        """Union-of-boxes guard form: per-axis [lo, hi] with hi=null for inf."""
        self._check(phi)
        if self.kind in INTERVAL_KINDS:
            return [[[lo, hi]] for lo, hi in phi.ivs]
        if self.kind != "product":
            raise AlgebraError(f"no file guard form for kind {self.kind}")
        out = []
        for box in phi.boxes:
            for flat in _flatten_box(box):
                out.append([[lo, hi] for lo, hi in flat])
        return out

    def pred_from_json(self, data) -> Predicate:
        def endpoint(alg, v):
            # upper endpoints may sit just outside the domain (e.g. the bound)
            if isinstance(v, dict) and set(v) == {"na"}:
                return alg.next_above(alg.char_from_json(v["na"]))
            return int(v) if alg.kind == "interval-nat" else float(v)

        def axis_iv(alg, pair):
            lo = alg.char_from_json(pair[0])
            hi = pair[1] if pair[1] is None else endpoint(alg, pair[1])
            return alg.interval(lo, hi)

        if self.kind in INTERVAL_KINDS:
            parts = [axis_iv(self, box[0]) for box in data]
            return self.union(*parts)
        if self.kind != "product":
            raise AlgebraError(f"no file guard form for kind {self.kind}")
        boxes = []
        for box in data:
            if len(box) != self.arity:
                raise AlgebraError(f"box arity {len(box)} != {self.arity}")
            boxes.append(tuple(axis_iv(c, pair) for c, pair in zip(self.components, box)))
        return self._norm_boxes(tuple(boxes))

    # -- internals ---------------------------------------------------------

    def _check(self, phi: Predicate):
        if phi.kind != self.kind:
            raise AlgebraError(f"predicate kind {phi.kind} does not match algebra {self.kind}")

    def _norm_ivs(self, ivs) -> tuple:
        out = []
        for lo, hi in ivs:
            if self.kind == "interval-nat" and self.bound is not None:
                if lo >= self.bound:
                    continue
                if hi is not None and hi >= self.bound:
                    hi = None
            if self.kind == "interval-real":
                if hi is not None and hi <= self.minimum:
                    continue
                lo = max(lo, self.minimum)
            if hi is not None and hi <= lo:
                continue
            out.append((lo, hi))
        out.sort(key=lambda iv: iv[0])
        merged = []
        for lo, hi in out:
            if merged and (merged[-1][1] is None or lo <= merged[-1][1]):
                last_lo, last_hi = merged[-1]
                if last_hi is not None and (hi is None or hi > last_hi):
                    merged[-1] = (last_lo, hi)
            else:
                merged.append((lo, hi))
        return tuple(merged)

    def _norm_eq(self, chars: frozenset, negated: bool) -> Predicate:
        if self.carrier is not None:
            if negated:
                chars = self.carrier - chars
                negated = False
        return Predicate(kind="equality", chars=frozenset(chars), negated=negated)

    def _eq_op(self, phi: Predicate, psi: Predicate, op: str) -> Predicate:
        if op == "meet":
            if not phi.negated and not psi.negated:
                return self._norm_eq(phi.chars & psi.chars, False)
            if phi.negated and psi.negated:
                return self._norm_eq(phi.chars | psi.chars, True)
            pos, neg = (phi, psi) if not phi.negated else (psi, phi)
            return self._norm_eq(pos.chars - neg.chars, False)
        if not phi.negated and not psi.negated:
            return self._norm_eq(phi.chars | psi.chars, False)
        if phi.negated and psi.negated:
            return self._norm_eq(phi.chars & psi.chars, True)
        pos, neg = (phi, psi) if not phi.negated else (psi, phi)
        return self._norm_eq(neg.chars - pos.chars, True)

    # Product predicates are manipulated through a decision-list view: an
    # ascending list of (cut, rest) pairs covering [min, inf), where rest is
    # the canonical predicate over the remaining axes (1-D at the base).

    def _rest_algebra(self) -> "Algebra":
        if self.arity == 2:
            return self.components[1]
        return Algebra(kind="product", components=self.components[1:])

    def _pred_to_dl(self, phi: Predicate):
        axis0 = self.components[0]
        rest = self._rest_algebra()
        cuts = {axis0.min_char()}
        for box in phi.boxes:
            for lo, hi in box[0].ivs:
                cuts.add(lo)
                if hi is not None:
                    cuts.add(hi)
        entries = []
        for c in sorted(cuts):
            rest_boxes = [box[1:] for box in phi.boxes if axis0.denotes(box[0], c)]
            entries.append((c, rest.from_boxes(rest_boxes) if rest.kind == "product"
                            else rest.union(*(b[0] for b in rest_boxes))))
        return _dl_compress(entries)

    def _dl_to_pred(self, dl) -> Predicate:
        axis0 = self.components[0]
        groups = []  # (rest predicate, [segments]) in first-appearance order
        for i, (cut, rest) in enumerate(dl):
            hi = dl[i + 1][0] if i + 1 < len(dl) else None
            if rest.is_false():
                continue
            for g in groups:
                if g[0] == rest:
                    g[1].append((cut, hi))
                    break
            else:
                groups.append((rest, [(cut, hi)]))
        boxes = []
        for rest, segs in groups:
            comp0 = Predicate(kind=axis0.kind, ivs=axis0._norm_ivs(tuple(segs)))
            if rest.kind == "product":
                for sub in rest.boxes:
                    boxes.append((comp0,) + sub)
            else:
                boxes.append((comp0, rest))
        return Predicate(kind="product", boxes=tuple(boxes))

    def _norm_boxes(self, raw_boxes) -> Predicate:
        if self.arity == 1:
            axis0 = self.components[0]
            comp = axis0.bottom()
            for box in raw_boxes:
                comp = axis0.join(comp, box[0])
            if comp.is_false():
                return self.bottom()
            return Predicate(kind="product", boxes=((comp,),))
        acc = self._pred_to_dl(Predicate(kind="product", boxes=()))
        for box in raw_boxes:
            if any(c.is_false() for c in box):
                continue
            single = self._box_to_dl(box)
            acc = _dl_op(self, acc, single, "join")
        return self._dl_to_pred(acc)

    def _box_to_dl(self, box):
        axis0 = self.components[0]
        rest = self._rest_algebra()
        if rest.kind == "product":
            rest_pred = rest._norm_boxes((tuple(box[1:]),))
        else:
            rest_pred = box[1]
        cuts = {axis0.min_char()}
        for lo, hi in box[0].ivs:
            cuts.add(lo)
            if hi is not None:
                cuts.add(hi)
        entries = []
        for c in sorted(cuts):
            entries.append((c, rest_pred if axis0.denotes(box[0], c) else rest.bottom()))
        return _dl_compress(entries)


# -- 1-D interval helpers ----------------------------------------------------


def _ivs_meet(a, b) -> tuple:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        his = [h for h in (a[i][1], b[j][1]) if h is not None]
        hi = min(his) if len(his) == 2 else (his[0] if his else None)
        if hi is None or lo < hi:
            out.append((lo, hi))
        if a[i][1] is None:
            j += 1
        elif b[j][1] is None:
            i += 1
        elif a[i][1] <= b[j][1]:
            i += 1
        else:
            j += 1
    return tuple(out)


def _ivs_complement(ivs, minimum) -> tuple:
    out = []
    cursor = minimum
    for lo, hi in ivs:
        if lo > cursor:
            out.append((cursor, lo))
        if hi is None:
            return tuple(out)
        cursor = max(cursor, hi)
    out.append((cursor, None))
    return tuple(out)


# -- decision-list helpers for product predicates ----------------------------


def _dl_compress(entries):
    out = []
    for cut, rest in entries:
        if out and out[-1][1] == rest:
            continue
        out.append((cut, rest))
    return tuple(out)


def _dl_op(alg: Algebra, dl1, dl2, op: str):
    rest_alg = alg._rest_algebra()
    cuts = sorted({c for c, _ in dl1} | {c for c, _ in dl2})
    entries = []
    for c in cuts:
        r1 = _dl_at(dl1, c)
        r2 = _dl_at(dl2, c)
        entries.append((c, rest_alg.meet(r1, r2) if op == "meet" else rest_alg.join(r1, r2)))
    return _dl_compress(entries)


def _dl_complement(alg: Algebra, dl):
    rest_alg = alg._rest_algebra()
    return _dl_compress([(c, rest_alg.complement(r)) for c, r in dl])


def _dl_at(dl, c):
    value = dl[0][1]
    for cut, rest in dl:
        if cut > c:
            break
        value = rest
    return value


def _flatten_box(box):
    """Expand a box with union components into single-interval boxes."""
    if not box:
        return [()]
    tails = _flatten_box(box[1:])
    out = []
    for lo, hi in box[0].ivs:
        for tail in tails:
            out.append(((lo, hi),) + tail)
    return out


def flat_boxes(algebra: Algebra, phi: Predicate):
    """Single-interval-per-axis decomposition of a canonical predicate."""
    if algebra.kind in INTERVAL_KINDS:
        return [((lo, hi),) for lo, hi in phi.ivs]
    if algebra.kind != "product":
        raise AlgebraError(f"flat_boxes undefined for kind {algebra.kind}")
    out = []
    for box in phi.boxes:
        out.extend(_flatten_box(box))
    return out

"""Shared fixtures for the test-suite: golden tables and random generators."""

import random

from smalearn.algebra import Algebra

NAT = Algebra.naturals()


def ws(*chars):
    return tuple(chars)


# Reference learning trace for the four-state demo target: tables T1..T10 as
# (S, R, sigma_e, E, row -> cell values in column order).
E_, W0, W20, W10 = ws(), ws(0), ws(20), ws(10)
W00, W000, W020 = ws(0, 0), ws(0, 0, 0), ws(0, 20)
W0020, W0000, W00020 = ws(0, 0, 20), ws(0, 0, 0, 0), ws(0, 0, 0, 20)
W0010, W00100, W010, W00010 = ws(0, 0, 10), ws(0, 0, 10, 0), ws(0, 10), ws(0, 0, 0, 10)

GOLDEN_TABLES = {
    1: ([E_], [W0], (0,), (), {E_: "S", W0: "S"}),
    2: ([E_], [W0, W20], (0,), (), {E_: "S", W0: "S", W20: "S"}),
    3: ([E_], [W0, W20], (0, 20), (), {E_: "SB", W0: "SB", W20: "SB"}),
    4: ([E_], [W0, W20, W00, W000], (0, 20), (),
        {E_: "SB", W0: "SB", W20: "SB", W00: "PP", W000: "PP"}),
    5: ([E_], [W0, W20, W00, W000], (0, 20), (W00,),
        {E_: "SBS", W0: "SBP", W20: "SBS", W00: "PPP", W000: "PPS"}),
    6: ([E_, W0, W00, W000], [W20], (0, 20), (W00,),
        {E_: "SBS", W0: "SBP", W00: "PPP", W000: "PPS", W20: "SBS"}),
    7: ([E_, W0, W00, W000], [W20, W020, W0020, W0000, W00020], (0, 20), (W00,),
        {E_: "SBS", W0: "SBP", W00: "PPP", W000: "PPS", W20: "SBS",
         W020: "SBP", W0020: "SBP", W0000: "SBS", W00020: "SBS"}),
    8: ([E_, W0, W00, W000],
        [W20, W020, W0020, W0000, W00020, W0010, W00100], (0, 20), (W00,),
        {E_: "SBS", W0: "SBP", W00: "PPP", W000: "PPS", W20: "SBS", W020: "SBP",
         W0020: "SBP", W0000: "SBS", W00020: "SBS", W0010: "SBP", W00100: "PPP"}),
    9: ([E_, W0, W00, W000],
        [W20, W020, W0020, W0000, W00020, W0010, W00100], (0, 20, 10), (W00,),
        {E_: "SBSS", W0: "SBSP", W00: "PPPP", W000: "PPPS", W20: "SBSS",
         W020: "SBSP", W0020: "SBSP", W0000: "SBSS", W00020: "SBSS",
         W0010: "SBSP", W00100: "PPPP"}),
    10: ([E_, W0, W00, W000],
         [W20, W020, W0020, W0000, W00020, W0010, W00100, W10, W010, W00010],
         (0, 20, 10), (W00,),
         {E_: "SBSS", W0: "SBSP", W00: "PPPP", W000: "PPPS", W20: "SBSS",
          W020: "SBSP", W0020: "SBSP", W0000: "SBSS", W00020: "SBSS",
          W0010: "SBSP", W00100: "PPPP", W10: "SBSP", W010: "PPPP", W00010: "SBSS"}),
}

GOLDEN_COUNTEREXAMPLES = [(20,), (0, 0, 0), (0, 0, 10, 0)]

GOLDEN_REPAIRS = (
    ["not_output_closed"]
    + ["not_consistent"] + ["not_closed"] * 3 + ["not_evidence_closed"] * 4
    + ["not_output_closed"] + ["not_evidence_closed"] * 3
)


def as_snapshot(spec):
    s, r, sigma, e, rows = spec
    cols = [(a,) for a in sigma] + list(e)
    cells = {(w, col): v for w, values in rows.items() for col, v in zip(cols, values)}
    return {"S": tuple(s), "R": tuple(r), "sigma_e": tuple(sigma),
            "E": tuple(e), "cells": cells}


# -- random sampling helpers --------------------------------------------------


def nat_probe(pred, rng):
    """Random member of a 1-D natural predicate's denotation."""
    lo, hi = pred.ivs[rng.randrange(len(pred.ivs))]
    span = 6 if hi is None else hi - lo
    return lo + rng.randrange(min(span, 6))


def product_probe(alg, pred, rng):
    """Random member of a product predicate's denotation."""
    box = pred.boxes[rng.randrange(len(pred.boxes))]
    out = []
    for axis, comp in zip(alg.components, box):
        lo, hi = comp.ivs[rng.randrange(len(comp.ivs))]
        if axis.kind == "interval-nat":
            top = (lo + 6) if hi is None else hi
            if axis.bound is not None:
                top = min(top, axis.bound)
            out.append(lo + rng.randrange(top - lo))
        else:
            width = 4.0 if hi is None else (hi - lo)
            out.append(lo + rng.random() * width * 0.99)
    return tuple(out)


def random_nat_groups(rng, max_groups=4, max_chars=40):
    k = rng.randrange(1, max_groups + 1)
    pool = rng.sample(range(max_chars), rng.randrange(1, 10))
    groups = [set() for _ in range(k)]
    for a in pool:
        groups[rng.randrange(k)].add(a)
    if not any(groups):
        groups[0].add(rng.randrange(max_chars))
    return groups


def random_product_groups(rng, alg, max_samples=8, coord_top=12):
    k = rng.randrange(1, 4)
    groups = [set() for _ in range(k)]
    seen = set()
    for _ in range(rng.randrange(1, max_samples)):
        char = []
        for axis in alg.components:
            if axis.kind == "interval-nat":
                top = axis.bound if axis.bound is not None else coord_top
                char.append(rng.randrange(top))
            else:
                char.append(float(rng.randrange(coord_top)) + rng.choice((0.0, 0.5)))
        char = tuple(char)
        if char in seen:
            continue
        seen.add(char)
        groups[rng.randrange(k)].add(char)
    if not seen:
        groups[0].add(tuple(axis.min_char() for axis in alg.components))
    return groups

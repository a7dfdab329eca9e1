"""Benchmark targets: hand-built machines and a seeded random generator.

The float-valued machines encode closed/open bounds with the successor
function (``na``): a constraint like ``0 < x <= 100`` becomes the half-open
interval ``[na(0), na(100))``.  Guards whose written upper bound equals the
top of the values seen on an axis are extended to infinity so every state's
guards cover the whole domain; extensions are logged at debug level.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass

from .algebra import Algebra
from .automata import SMealy
from .partition import partition_intervals

log = logging.getLogger(__name__)

BUILTIN_NAMES = ("worked-example", "mh", "atgs")


def make_worked_example() -> SMealy:
    """Four-state machine over naturals with outputs S, B and P."""
    nat = Algebra.naturals()
    iv = nat.interval
    transitions = [
        (0, iv(0, 20), 1, "S"),
        (0, iv(20, None), 0, "B"),
        (1, iv(0, 20), 2, "S"),
        (1, iv(20, None), 1, "B"),
        (2, iv(10, None), 1, "P"),
        (2, iv(0, 10), 3, "P"),
        (3, iv(0, None), 0, "P"),
    ]
    return SMealy(nat, 4, 0, ["S", "B", "P"], transitions)


def make_mh() -> SMealy:
    """Helicopter controller: Boolean flag plus three float sensor axes."""
    flag = Algebra.naturals(bound=2)
    altitude = Algebra.reals(0.0)
    temperature = Algebra.reals(-274.0)
    charge = Algebra.reals(0.0)
    alg = Algebra.product(flag, altitude, temperature, charge)

    def na(x):
        return math.nextafter(x, math.inf)

    # written upper clips: altitude 1e5, temperature 1e4, charge na(1.0)
    log.debug("mh: extending guard tops 1e5/1e4/na(1.0) to +inf for axis cover")
    ON, OFF, ANYF = (1, None), (0, 1), (0, None)
    ALT, TEMP, CHG = (0.0, None), (-274.0, None), (0.0, None)
    none_, heater, fly, fly_ref = "{}", "{heater}", "{fly}", "{fly,altitudeRef}"

    def box(b, alt, temp, chg):
        return alg.box(b, alt, temp, chg)

    transitions = [
        (0, alg.join(box(ON, ALT, (-15.0, None), (0.0, na(0.4))),
                     box(OFF, ALT, (-15.0, None), CHG)), 0, none_),
        (0, box(ON, ALT, (-15.0, None), (na(0.4), None)), 2, heater),
        (0, box(ANYF, ALT, (-274.0, -15.0), CHG), 1, heater),
        (1, box(ANYF, ALT, (-274.0, na(-10.0)), (0.2, None)), 1, heater),
        (1, alg.join(box(ANYF, ALT, (na(-10.0), None), CHG),
                     box(ANYF, ALT, (-274.0, na(-10.0)), (0.0, 0.2))), 0, none_),
        (2, box(ON, ALT, (-274.0, na(10.0)), (0.3, None)), 2, heater),
        (2, box(ON, ALT, (na(10.0), None), (0.3, None)), 3, fly_ref),
        (2, alg.join(box(OFF, ALT, TEMP, CHG),
                     box(ON, ALT, TEMP, (0.0, 0.3))), 0, none_),
        (3, box(ON, ALT, TEMP, (0.3, None)), 3, fly_ref),
        (3, alg.join(box(OFF, ALT, TEMP, CHG),
                     box(ON, ALT, TEMP, (0.0, 0.3))), 4, fly),
        (4, box(ANYF, (0.1, None), TEMP, CHG), 4, fly),
        (4, box(ANYF, (0.0, 0.1), TEMP, CHG), 0, none_),
    ]
    return SMealy(alg, 5, 0, [none_, heater, fly, fly_ref], transitions)


def make_atgs() -> SMealy:
    """Automatic gear box over (throttle, velocity) float inputs."""
    throttle = Algebra.reals(0.0)
    velocity = Algebra.reals(0.0)
    alg = Algebra.product(throttle, velocity)

    def na(x):
        return math.nextafter(x, math.inf)
    log.debug("atgs: extending guard tops 100/1e6 to +inf for axis cover")

    # throttle brackets; the written top 100 becomes +inf
    T0, T35, T40, T45, T50, T90 = ((0.0, 35.0), (35.0, 50.0), (0.0, 40.0),
                                   (40.0, 50.0), (50.0, 90.0), (90.0, None))
    T050 = (0.0, 50.0)
    T090 = (0.0, 90.0)

    def phi(*parts):
        return alg.union(*(alg.box(t, v) for t, v in parts))

    up_100 = phi((T50, (na(23.0), None)), (T0, (na(10.0), None)),
                 (T35, (na(15.0), None)), (T90, (na(40.0), None)))
    stay_100 = phi((T50, (0.0, na(23.0))), (T0, (0.0, na(10.0))),
                   (T35, (0.0, na(15.0))), (T90, (0.0, na(40.0))))
    up_101 = phi((T50, (23.0, None)), (T0, (10.0, None)),
                 (T35, (15.0, None)), (T90, (40.0, None)))
    down_101 = phi((T50, (0.0, 23.0)), (T0, (0.0, 10.0)),
                   (T35, (0.0, 15.0)), (T90, (0.0, 40.0)))
    up_200 = phi((T50, (na(41.0), None)), (T050, (na(30.0), None)), (T90, (na(70.0), None)))
    stay_200 = phi((T050, (5.0, na(30.0))), (T90, (30.0, na(70.0))), (T50, (5.0, na(41.0))))
    slow_200 = phi((T090, (0.0, 5.0)), (T90, (0.0, 30.0)))
    up_201 = phi((T50, (41.0, None)), (T050, (30.0, None)), (T90, (70.0, None)))
    down_201 = phi((T50, (0.0, 41.0)), (T050, (0.0, 30.0)), (T90, (0.0, 70.0)))
    slow_210 = phi((T090, (0.0, na(5.0))), (T90, (0.0, na(30.0))))
    back_210 = phi((T090, (na(5.0), None)), (T90, (na(30.0), None)))
    up_300 = phi((T50, (na(60.0), None)), (T050, (na(50.0), None)), (T90, (na(100.0), None)))
    stay_300 = phi((T40, (20.0, na(50.0))), (T90, (50.0, na(100.0))),
                   (T45, (25.0, na(50.0))), (T50, (30.0, na(60.0))))
    slow_300 = phi((T40, (0.0, 20.0)), (T45, (0.0, 25.0)), (T50, (0.0, 30.0)), (T90, (0.0, 50.0)))
    up_301 = phi((T50, (60.0, None)), (T050, (50.0, None)), (T90, (100.0, None)))
    down_301 = phi((T50, (0.0, 60.0)), (T050, (0.0, 50.0)), (T90, (0.0, 100.0)))
    slow_310 = phi((T40, (0.0, na(20.0))), (T45, (0.0, na(25.0))),
                   (T50, (0.0, na(30.0))), (T90, (0.0, na(50.0))))
    back_310 = phi((T40, (na(20.0), None)), (T45, (na(25.0), None)),
                   (T50, (na(30.0), None)), (T90, (na(50.0), None)))
    slow_400 = phi((T40, (0.0, 35.0)), (T45, (0.0, 40.0)), (T50, (0.0, 50.0)), (T90, (0.0, 80.0)))
    stay_400 = phi((T40, (35.0, None)), (T45, (40.0, None)), (T50, (50.0, None)), (T90, (80.0, None)))
    back_410 = phi((T40, (na(35.0), None)), (T45, (na(40.0), None)),
                   (T50, (na(50.0), None)), (T90, (na(80.0), None)))
    slow_410 = phi((T40, (0.0, na(35.0))), (T45, (0.0, na(40.0))),
                   (T50, (0.0, na(50.0))), (T90, (0.0, na(80.0))))

    # state ids in listing order
    (q100, q101, q102, q200, q201, q202, q210, q220,
     q300, q301, q302, q310, q320, q400, q410, q420) = range(16)
    g1, g2, g3, g4 = "gear1", "gear2", "gear3", "gear4"
    transitions = [
        (q100, stay_100, q100, g1), (q100, up_100, q101, g1),
        (q101, up_101, q102, g1), (q101, down_101, q100, g1),
        (q102, up_101, q200, g2), (q102, down_101, q100, g1),
        (q200, up_200, q201, g2), (q200, stay_200, q200, g2), (q200, slow_200, q210, g2),
        (q201, up_201, q202, g2), (q201, down_201, q200, g2),
        (q210, slow_210, q220, g2), (q210, back_210, q200, g2),
        (q220, back_210, q200, g2), (q220, slow_210, q100, g1),
        (q202, down_201, q200, g2), (q202, up_201, q300, g3),
        (q300, up_300, q301, g3), (q300, stay_300, q300, g3), (q300, slow_300, q310, g3),
        (q301, up_301, q302, g3), (q301, down_301, q300, g3),
        (q310, slow_310, q320, g3), (q310, back_310, q300, g3),
        (q320, slow_310, q200, g2), (q320, back_310, q300, g3),
        (q302, down_301, q300, g3), (q302, up_301, q400, g4),
        (q400, slow_400, q410, g4), (q400, stay_400, q400, g4),
        (q410, back_410, q400, g4), (q410, slow_410, q420, g4),
        (q420, slow_410, q300, g3), (q420, back_410, q400, g4),
    ]
    return SMealy(alg, 16, 0, [g1, g2, g3, g4], transitions)


def make_lower_bound(n: int, k: int) -> SMealy:
    """Chain of 2n states needing n + k equivalence queries to identify.

    Odd states and the initial state echo the index of the input's
    10-aligned block; every other even state 2m flips block m's answer to
    "-1".  Boundaries sit at multiples of 10, so there are exactly k
    essential characters.
    """
    if n < 2 or k < n:
        raise ValueError("need n >= 2 and k >= n")
    nat = Algebra.naturals()
    iv = nat.interval
    last = 2 * n - 1
    transitions = []
    for i in range(last):
        transitions.append((i, iv(0, 10), i + 1, "0"))
    for m in range(n):
        q = 2 * m
        for l in range(1, k - 1):
            if l != m:
                transitions.append((q, iv(10 * l, 10 * l + 10), q, str(l)))
        if m != k - 1:
            transitions.append((q, iv(10 * (k - 1), None), q, str(k - 1)))
        if 1 <= m != k - 1:
            transitions.append((q, iv(10 * m, 10 * m + 10), q, "-1"))
        if k == n and m == k - 1:
            transitions.append((q, iv(10 * (k - 1), None), q, "-1"))
    for m in range(n):
        q = 2 * m + 1
        if q == last:
            continue
        for l in range(1, k - 1):
            transitions.append((q, iv(10 * l, 10 * l + 10), q, str(l)))
        transitions.append((q, iv(10 * (k - 1), None), q, str(k - 1)))
    for l in range(k - 1):
        transitions.append((last, iv(10 * l, 10 * l + 10), last, str(l)))
    transitions.append((last, iv(10 * (k - 1), None), last, str(k - 1)))
    outputs = ["-1"] + [str(l) for l in range(k)]
    return SMealy(nat, 2 * n, 0, outputs, transitions)


@dataclass(frozen=True)
class RandomSpec:
    n: int
    k: int
    seed: int
    n_outputs: int = 3
    boundary_top: int | None = None  # exclusive; defaults to 100 * k

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or self.n_outputs < 1:
            raise ValueError("state, character and output counts must be >= 1")


def random_sma(spec: RandomSpec) -> SMealy:
    """Random machine over naturals with ~spec.k essential characters.

    Samples k-1 distinct boundary naturals, builds the induced k-block
    partition, then draws a destination and output per state and block.
    Blocks adjacent at a boundary are redrawn (up to 100 attempts per state)
    when they would get the same destination and output, which would merge
    the blocks and lose the boundary.
    """
    nat = Algebra.naturals()
    rng = random.Random(spec.seed)
    top = spec.boundary_top if spec.boundary_top is not None else 100 * spec.k
    if top - 1 < spec.k - 1:
        raise ValueError(f"boundary range [1, {top}) too small for {spec.k - 1} draws")
    boundaries = sorted(rng.sample(range(1, top), spec.k - 1))
    blocks = partition_intervals(nat, [{0}] + [{b} for b in boundaries])
    outputs = [f"o{i}" for i in range(spec.n_outputs)]

    transitions = []
    for q in range(spec.n):
        for attempt in range(100):
            draw = [(rng.randrange(spec.n), rng.randrange(spec.n_outputs))
                    for _ in range(spec.k)]
            if all(draw[j] != draw[j + 1] for j in range(spec.k - 1)):
                break
        else:
            log.debug("random_sma: state %d keeps adjacent equal blocks", q)
        for block, (dest, out) in zip(blocks, draw):
            transitions.append((q, block, dest, outputs[out]))
    return SMealy(nat, spec.n, 0, outputs, transitions)


def make_builtin(name: str) -> SMealy:
    """Resolve a builtin target name, including ``lower:n,k``."""
    if name == "worked-example":
        return make_worked_example()
    if name == "mh":
        return make_mh()
    if name == "atgs":
        return make_atgs()
    if name.startswith("lower:"):
        try:
            n, k = (int(x) for x in name[len("lower:"):].split(","))
        except ValueError as exc:
            raise ValueError(f"bad lower-bound spec {name!r}: want lower:n,k") from exc
        return make_lower_bound(n, k)
    raise ValueError(f"unknown builtin target {name!r}")

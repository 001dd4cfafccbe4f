"""Batch generation of FCF encodings by the subset-sum set recurrence.

Starting from ``N_0 = {1}``, each level ``N_{k+1}`` holds the sums of all
nonempty subsets of ``B = {1} ∪ {x^f : f in N_k}``.  When ``N_k`` covers
``1..m`` in order, ``B[i]`` has value ``2**i``, so subset bitmask ``s`` sums
to exactly ``s`` and a binary counter emits the new level already sorted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import DomainError, ResourceLimitError
from .expr import COUNTERS, ONE, X, Expr, mk_power, mk_sum

DEFAULT_OUTPUT_CAP = 2**24


@dataclass
class FcfLevel:
    k: int
    expressions: list[Expr]

    def __len__(self):
        return len(self.expressions)

    def value_of(self, i: int) -> int:
        # contiguity invariant: position i holds value i + 1
        return i + 1


@dataclass
class GenerationStats:
    iterations: int = 0
    manipulations: int = 0
    insertions: int = 0
    per_iteration: list[dict] = field(default_factory=list)


def initial_level() -> FcfLevel:
    return FcfLevel(0, [ONE])


def fcf_step(level: FcfLevel, limit: int | None = None, output_cap: int = DEFAULT_OUTPUT_CAP) -> FcfLevel:
    """Next level of the recurrence.

    With ``limit`` only the first ``limit`` subset sums (values 1..limit)
    are produced.  The number of produced expressions must not exceed
    ``output_cap``.
    """
    nbase = len(level) + 1
    full = (1 << nbase) - 1
    count = full if limit is None else min(limit, full)
    if count > output_cap:
        shown = count if limit is not None else f"2**{nbase} - 1"
        raise ResourceLimitError(f"level {level.k + 1} would hold {shown} expressions, cap is {output_cap}")
    needed = count.bit_length()
    base = [ONE] + [mk_power(X, f) for f in level.expressions[: needed - 1]]
    # terms[s] holds the summands of mask s, highest first; the summands of
    # s extend those of s without its lowest bit by one term
    terms: list[tuple] = [()] * (count + 1)
    out = []
    for s in range(1, count + 1):
        low = s & -s
        t = terms[s ^ low] + (base[low.bit_length() - 1],)
        terms[s] = t
        out.append(mk_sum(t))
    return FcfLevel(level.k + 1, out)


def iterations_needed(target: int) -> int:
    """Smallest k whose full level covers ``target`` (tower 1, 3, 15, 65535, ...)."""
    k, cover = 0, 1
    while cover < target:
        cover = (1 << (cover + 1)) - 1
        k += 1
    return k


def fcf_generate(target: int, output_cap: int = DEFAULT_OUTPUT_CAP, stats: GenerationStats | None = None) -> list[Expr]:
    """FCF expressions for ``1..target`` in value order."""
    if target < 1:
        raise DomainError("fcf_generate expects target >= 1")
    if target > output_cap:
        raise ResourceLimitError(f"target {target} exceeds the output cap {output_cap}")
    start = COUNTERS.snapshot()
    level = initial_level()
    while len(level) < target:
        t0 = time.perf_counter()
        before = COUNTERS.snapshot()
        level = fcf_step(level, limit=target, output_cap=output_cap)
        if stats is not None:
            d = COUNTERS.since(before)
            stats.per_iteration.append(
                {
                    "k": level.k,
                    "size": len(level),
                    "manipulations": d.manipulations,
                    "insertions": d.insertions,
                    "seconds": time.perf_counter() - t0,
                }
            )
    if stats is not None:
        d = COUNTERS.since(start)
        stats.iterations = level.k
        stats.manipulations = d.manipulations
        stats.insertions = d.insertions
    return level.expressions[:target]

"""Bounded brute-force search for the expression with fewest ``1`` leaves."""

from __future__ import annotations

from .errors import DomainError, ResourceLimitError
from .expr import ONE, Expr, mk_power, mk_product, mk_sum

DEFAULT_ENTRY_CAP = 1_000_000


def shortest_expr(n: int, max_leaves: int, entry_cap: int = DEFAULT_ENTRY_CAP) -> Expr | None:
    """Expression of minimal leaf count evaluating to ``n``, or None.

    Values are tabulated bottom-up by leaf budget, keeping only the first
    expression found for each value.  No operand of a non-trivial tree that
    evaluates to ``n`` can exceed ``n`` (every gate is monotone and ``1`` is
    never an exponent, base or factor), so the table is pruned at ``n``.
    Ties go to the earliest construction: powers before products before
    sums, then the smaller left operand.
    """
    if n < 1:
        raise DomainError("shortest_expr expects n >= 1")
    if max_leaves < 1:
        return None
    by_leaves: list[dict[int, Expr]] = [{}, {1: ONE}]
    seen = {1}
    if n == 1:
        return ONE
    for total in range(2, max_leaves + 1):
        level: dict[int, Expr] = {}

        def offer(v, build):
            if v <= n and v not in seen:
                level[v] = build()
                seen.add(v)

        splits = [(a, total - a) for a in range(1, total)]
        for a, b in splits:
            for va, ea in by_leaves[a].items():
                if va < 2:
                    continue
                for vb, eb in by_leaves[b].items():
                    if vb < 2 or va**min(vb, n.bit_length() + 1) > n:
                        continue
                    offer(va**vb, lambda: mk_power(ea, eb))
        for a, b in splits:
            for va, ea in by_leaves[a].items():
                if va < 2:
                    continue
                for vb, eb in by_leaves[b].items():
                    if vb >= 2:
                        offer(va * vb, lambda: mk_product([ea, eb]))
        for a, b in splits:
            for va, ea in by_leaves[a].items():
                for vb, eb in by_leaves[b].items():
                    offer(va + vb, lambda: mk_sum([ea, eb]))
        by_leaves.append(level)
        if len(seen) > entry_cap:
            raise ResourceLimitError(f"value table exceeded {entry_cap} entries")
        if n in level:
            return level[n]
    return None

"""Zeta recursions: prime sifting by products of known prime powers.

Both recursions carry a :class:`ZetaState` holding the known primes ``P_k``
and the known naturals ``Ň_k`` as SCF expressions.  Each iteration forms
products of prime powers whose exponents are taken from ``Ň_k``, sorts the
values, and adjoins ``v + 1`` as the new prime ``(e_v + 1)`` wherever the
sorted values contain ``v`` and ``v + 2`` side by side.

The basic recursion multiplies over every known prime and needs a value cap.
The improved recursion restricts iteration ``k`` to the dyadic window
``(2**(k+1), 2**(k+2)]``: for each ``q`` in ``P_k`` it multiplies ``q**n``
with products of the smaller primes and keeps what lands in the window,
after which ``Ň_{k+1}`` is exactly ``1..2**(k+2)``.
"""

from __future__ import annotations

import bisect
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CompletenessError, DomainError, ResourceLimitError, SoundnessError
from .expr import COUNTERS, ONE, X, Expr, Tag, evaluate, mk_power, mk_product, mk_sum
from .numtheory import is_prime

DEFAULT_MAX_SIEVE_BITS = 22
DEFAULT_PRODUCT_CAP = 5_000_000


class ExprSet:
    """Expressions kept in ascending order of their values."""

    def __init__(self, pairs=()):
        pairs = sorted(pairs, key=lambda p: p[0])
        self.values = [v for v, _ in pairs]
        self.exprs = [e for _, e in pairs]
        if any(a == b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("duplicate values in ExprSet")
        self._index = None

    @classmethod
    def of(cls, exprs):
        return cls((evaluate(e), e) for e in exprs)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.exprs)

    def __getitem__(self, i):
        return self.exprs[i]

    def __contains__(self, value):
        return self.expr_for(value) is not None

    def expr_for(self, value: int) -> Expr | None:
        if self._index is None:
            self._index = dict(zip(self.values, self.exprs))
        return self._index.get(value)

    def pairs(self):
        return zip(self.values, self.exprs)

    def gaps_of_two(self) -> list[int]:
        """Lower endpoints ``v`` of adjacent values ``v, v + 2``."""
        vs = self.values
        return [a for a, b in zip(vs, vs[1:]) if b - a == 2]

    def __repr__(self):
        return f"ExprSet({self.values})"


@dataclass
class ZetaState:
    k: int
    primes: ExprSet
    naturals: ExprSet

    @property
    def coverage(self) -> int:
        """Largest value of the improved recursion's contiguous range."""
        return 1 << (self.k + 1)


@dataclass
class SieveStats:
    iterations: int = 0
    manipulations: int = 0
    insertions: int = 0
    adjoined: list[int] = field(default_factory=list)
    per_iteration: list[dict] = field(default_factory=list)


def initial_state() -> ZetaState:
    return ZetaState(0, ExprSet([(2, X)]), ExprSet([(1, ONE), (2, X)]))


def _assemble(factors) -> Expr:
    """SCF product from ``(prime, factor)`` pairs listed by ascending prime."""
    factors = list(factors)
    if not factors:
        return ONE
    if factors[0][0] == 2:
        factors.append(factors.pop(0))
    return mk_product([f for _, f in factors])


def _adjoin(merged: ExprSet) -> list[tuple[int, Expr]]:
    new = []
    for v in merged.gaps_of_two():
        p = v + 1
        if not is_prime(p):
            raise SoundnessError(f"gap-of-two midpoint {p} is not prime")
        new.append((p, mk_sum([merged.expr_for(v), ONE])))
    return new


def zeta_step_basic(state: ZetaState, value_cap: int, product_cap: int = DEFAULT_PRODUCT_CAP) -> ZetaState:
    """One iteration of the unwindowed recursion, keeping values ``<= value_cap``."""
    primes = list(state.primes.pairs())
    exps = list(state.naturals.pairs())
    found: list[tuple[int, Expr]] = []
    chosen: list[tuple[int, Expr]] = []

    def walk(i, partial):
        if i == len(primes):
            found.append((partial, _assemble(chosen)))
            if len(found) > product_cap:
                raise ResourceLimitError(f"more than {product_cap} products")
            return
        walk(i + 1, partial)
        p, pe = primes[i]
        for n, ne in exps:
            COUNTERS.products += 1
            v = partial * p**n
            if v > value_cap:
                break
            chosen.append((p, mk_power(pe, ne)))
            walk(i + 1, v)
            chosen.pop()

    walk(0, 1)
    products = ExprSet(found)
    new = _adjoin(products)
    return ZetaState(
        state.k + 1,
        ExprSet(list(state.primes.pairs()) + new),
        ExprSet(list(products.pairs()) + new),
    )


def zeta_window(q: Expr, state: ZetaState) -> ExprSet:
    """Products ``q**n * m`` in the window ``(2**(k+1), 2**(k+2)]``.

    ``n`` ranges over the known naturals with ``q**n <= 2**(k+2)`` and ``m``
    over products of powers of known primes smaller than ``q``.  Partial
    products above the window's top are pruned.
    """
    k = state.k
    low, high = 1 << (k + 1), 1 << (k + 2)
    qv = evaluate(q)
    if qv not in state.primes:
        raise DomainError(f"{qv} is not a known prime of iteration {k}")
    smaller = [(p, e) for p, e in state.primes.pairs() if p < qv]
    pvals = [p for p, _ in smaller]
    exps = list(state.naturals.pairs())
    out: list[tuple[int, Expr]] = []
    chosen: list[tuple[int, Expr]] = []

    def walk(hi, partial):
        # hi: primes with index < hi are still free, tried largest first
        hi = min(hi, bisect.bisect_right(pvals, high // partial))
        for i in range(hi - 1, -1, -1):
            p, pe = smaller[i]
            for n, ne in exps:
                COUNTERS.products += 1
                v = partial * p**n
                if v > high:
                    break
                chosen.append((p, mk_power(pe, ne)))
                walk(i, v)
                chosen.pop()
        if partial > low:
            out.append((partial, _assemble(reversed(chosen))))

    for n, ne in exps:
        COUNTERS.products += 1
        qn = qv**n
        if qn > high:
            break
        chosen.append((qv, mk_power(q, ne)))
        walk(len(smaller), qn)
        chosen.pop()
    return ExprSet(out)


def _attach(s_expr: Expr, q: int, factor: Expr) -> Expr:
    """SCF of ``s * q**n`` given SCF of ``s`` whose primes are all below ``q``."""
    if s_expr is ONE:
        return factor
    parts = list(s_expr.args) if s_expr.tag is Tag.PRODUCT else [s_expr]
    last = parts[-1]
    two = last is X or (last.tag is Tag.POWER and last.base is X)
    if two:
        parts.insert(len(parts) - 1, factor)
    else:
        parts.append(factor)
    return mk_product(parts)


def _windows(state: ZetaState, pruned: bool) -> list[tuple[int, Expr]]:
    """Union of the windows of every known prime, sharing the smooth products.

    ``smooth`` holds every product of powers of the primes handled so far
    that stays within the window's top.  For each ``q`` the whole vector is
    multiplied by ``q**n`` and intersected with the window.  With ``pruned``
    only the entries that can stay within the top are multiplied.
    """
    k = state.k
    low, high = 1 << (k + 1), 1 << (k + 2)
    nat_exprs = state.naturals.exprs  # contiguous: value v at index v - 1
    exps = list(state.naturals.pairs())
    smooth = np.ones(1, dtype=np.int64)
    window: dict[int, Expr] = {}

    def expr_of(v):
        return nat_exprs[v - 1] if v <= low else window[v]

    for qv, q in state.primes.pairs():
        grown = []
        new_pairs = []
        for n, ne in exps:
            qn = qv**n
            if qn > high:
                break
            if pruned:
                smooth.sort()
                cand = smooth[: np.searchsorted(smooth, high // qn, side="right")] * qn
            else:
                cand = smooth * qn
            COUNTERS.products += int(cand.size)
            keep = cand <= high
            inside = keep & (cand > low)
            factor = mk_power(q, ne)
            for s, v in zip((cand[inside] // qn).tolist(), cand[inside].tolist()):
                new_pairs.append((v, _attach(expr_of(s), qv, factor)))
            grown.append(cand[keep])
        for v, e in new_pairs:
            if v in window:
                raise CompletenessError(f"value {v} produced twice")
            window[v] = e
        smooth = np.concatenate([smooth, *grown])
    return list(window.items())


def zeta_step_improved(state: ZetaState, pruned: bool = False) -> ZetaState:
    """One windowed iteration; the result covers exactly ``1..2**(k+2)``."""
    k = state.k
    high = 1 << (k + 2)
    if state.naturals.values != list(range(1, (1 << (k + 1)) + 1)):
        raise CompletenessError(f"state at iteration {k} does not cover 1..{1 << (k + 1)}")
    merged = ExprSet(list(state.naturals.pairs()) + _windows(state, pruned))
    new = _adjoin(merged)
    naturals = ExprSet(list(merged.pairs()) + new)
    if naturals.values != list(range(1, high + 1)):
        missing = sorted(set(range(1, high + 1)) - set(naturals.values))[:10]
        raise CompletenessError(f"iteration {k + 1} misses values {missing}")
    return ZetaState(k + 1, ExprSet(list(state.primes.pairs()) + new), naturals)


def run_improved(iterations: int, pruned: bool = False, stats: SieveStats | None = None) -> ZetaState:
    state = initial_state()
    start = COUNTERS.snapshot()
    for _ in range(iterations):
        t0 = time.perf_counter()
        before = COUNTERS.snapshot()
        nprimes = len(state.primes)
        state = zeta_step_improved(state, pruned=pruned)
        if stats is not None:
            d = COUNTERS.since(before)
            stats.adjoined.extend(state.primes.values[nprimes:])
            stats.per_iteration.append(
                {
                    "k": state.k,
                    "coverage": state.coverage,
                    "primes": len(state.primes),
                    "manipulations": d.manipulations,
                    "insertions": d.insertions,
                    "seconds": time.perf_counter() - t0,
                }
            )
    if stats is not None:
        d = COUNTERS.since(start)
        stats.iterations = state.k
        stats.manipulations = d.manipulations
        stats.insertions = d.insertions
    return state


def sift_primes(bits: int, max_bits: int = DEFAULT_MAX_SIEVE_BITS, pruned: bool = False, stats: SieveStats | None = None) -> list[int]:
    """Primes up to ``2**bits`` found by ``bits - 1`` improved iterations."""
    if bits < 1:
        raise DomainError("sift_primes expects bits >= 1")
    if bits > max_bits:
        raise ResourceLimitError(f"bits={bits} is above the limit {max_bits}")
    return list(run_improved(bits - 1, pruned=pruned, stats=stats).primes.values)


@dataclass(frozen=True)
class RationalExpr:
    numerator: Expr
    denominator: Expr

    @property
    def num_value(self) -> int:
        return evaluate(self.numerator)

    @property
    def den_value(self) -> int:
        return evaluate(self.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num_value, self.den_value)

    def __str__(self):
        return f"{self.num_value}/{self.den_value}"


def rationals(state: ZetaState, value_cap: int, product_cap: int = DEFAULT_PRODUCT_CAP) -> list[RationalExpr]:
    """Products over known primes of ``p**n``, ``1`` or ``(1/p)**n``.

    Exponents come from the known naturals; entries whose numerator or
    denominator exceeds ``value_cap`` are dropped.  Sorted by denominator,
    then numerator.
    """
    primes = list(state.primes.pairs())
    exps = list(state.naturals.pairs())
    found: list[tuple[int, int, RationalExpr]] = []
    up: list[tuple[int, Expr]] = []
    down: list[tuple[int, Expr]] = []

    def walk(i, num, den):
        if i == len(primes):
            found.append((den, num, RationalExpr(_assemble(up), _assemble(down))))
            if len(found) > product_cap:
                raise ResourceLimitError(f"more than {product_cap} rationals")
            return
        walk(i + 1, num, den)
        p, pe = primes[i]
        for side, value in ((up, num), (down, den)):
            for n, ne in exps:
                COUNTERS.products += 1
                v = value * p**n
                if v > value_cap:
                    break
                side.append((p, mk_power(pe, ne)))
                if side is up:
                    walk(i + 1, v, den)
                else:
                    walk(i + 1, num, v)
                side.pop()

    walk(0, 1, 1)
    found.sort(key=lambda t: (t[0], t[1]))
    return [r for _, _, r in found]

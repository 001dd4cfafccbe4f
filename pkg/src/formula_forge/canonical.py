"""The two canonical encodings of positive integers.

FCF writes ``n`` as a sum of distinct powers ``x^e`` (plus a trailing ``1``
when ``n`` is odd) with every exponent again in FCF; this is Goodstein's
hereditary base-2 notation.  SCF writes ``n`` as a product of odd prime
powers ``(f + 1)^g`` in ascending prime order followed by an optional
``x^g`` factor, where each ``f`` is the SCF of ``p - 1`` and each ``g`` is
in SCF.  Exponents equal to one disappear through the smart constructors,
so 2 is ``x`` and 6 is ``(x+1)*x``.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from .errors import DomainError
from .expr import ONE, X, Expr, Tag, evaluate, mk_power, mk_product, mk_sum
from .numtheory import factor, is_prime


class CanonicalForm(enum.Enum):
    FCF = "fcf"
    SCF = "scf"

    def __str__(self):
        return self.value


def _check_positive(n: int):
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"canonical encodings are defined for n >= 1, got {n!r}")


@lru_cache(maxsize=None)
def encode_fcf(n: int) -> Expr:
    _check_positive(n)
    if n == 1:
        return ONE
    terms = []
    for e in range(n.bit_length() - 1, 0, -1):
        if n >> e & 1:
            terms.append(mk_power(X, encode_fcf(e)))
    if n & 1:
        terms.append(ONE)
    return mk_sum(terms)


def _fcf_term_key(t: Expr):
    """Order key of the bit position a summand stands for, or None."""
    if t is ONE:
        return ()
    if t is X:
        return ((),)
    if t.tag is Tag.POWER and t.base is X and is_fcf(t.exponent):
        return _fcf_key(t.exponent)
    return None


@lru_cache(maxsize=None)
def _fcf_key(e: Expr):
    # Nested tuples of bit positions, highest first; tuple order matches
    # integer order, so FCF values compare without being evaluated.
    parts = e.args if e.tag is Tag.SUM and e is not X else (e,)
    return tuple(_fcf_term_key(t) for t in parts)


@lru_cache(maxsize=None)
def is_fcf(e: Expr) -> bool:
    if e is ONE or e is X:
        return True
    if e.tag is Tag.POWER:
        return _fcf_term_key(e) is not None
    if e.tag is not Tag.SUM:
        return False
    keys = []
    for i, t in enumerate(e.args):
        if t is ONE and i != len(e.args) - 1:
            return False
        k = _fcf_term_key(t)
        if k is None:
            return False
        keys.append(k)
    return all(a > b for a, b in zip(keys, keys[1:]))


def prime_base(p: int) -> Expr:
    """SCF expression ``(scf(p - 1) + 1)`` for an odd prime ``p``."""
    return mk_sum([encode_scf(p - 1), ONE])


@lru_cache(maxsize=None)
def encode_scf(n: int) -> Expr:
    _check_positive(n)
    if n == 1:
        return ONE
    odd = []
    two = None
    for p, g in factor(n):
        if p == 2:
            two = mk_power(X, encode_scf(g))
        else:
            odd.append(mk_power(prime_base(p), encode_scf(g)))
    if two is not None:
        odd.append(two)
    return mk_product(odd)


def scf_factors(e: Expr) -> tuple:
    return e.args if e.tag is Tag.PRODUCT else (e,)


def _split_power(f: Expr):
    if f.tag is Tag.POWER:
        return f.base, f.exponent
    return f, ONE


@lru_cache(maxsize=None)
def is_scf(e: Expr) -> bool:
    if e is ONE:
        return True
    factors = scf_factors(e)
    last_prime = 2
    for i, f in enumerate(factors):
        base, g = _split_power(f)
        if not is_scf(g):
            return False
        if base is X:
            if i != len(factors) - 1:
                return False
            continue
        if base.tag is not Tag.SUM or len(base.args) != 2 or base.args[1] is not ONE:
            return False
        if not is_scf(base.args[0]):
            return False
        p = evaluate(base)
        if p <= last_prime or not is_prime(p):
            return False
        last_prime = p
    return True


def encode(n: int, form: CanonicalForm | str) -> Expr:
    form = CanonicalForm(form.lower()) if isinstance(form, str) else form
    return encode_fcf(n) if form is CanonicalForm.FCF else encode_scf(n)


def is_canonical(e: Expr, form: CanonicalForm | str) -> bool:
    form = CanonicalForm(form.lower()) if isinstance(form, str) else form
    return is_fcf(e) if form is CanonicalForm.FCF else is_scf(e)


def normalize(e: Expr, form: CanonicalForm | str, max_bits: int | None = None) -> Expr:
    return encode(evaluate(e, max_bits), form)


def equivalent(a: Expr, b: Expr, max_bits: int | None = None) -> bool:
    return a is b or evaluate(a, max_bits) == evaluate(b, max_bits)


def fcf_terms(e: Expr) -> tuple:
    """Top-level summands of an FCF expression."""
    return e.args if e.tag is Tag.SUM and e is not X else (e,)


def scf_prime_values(e: Expr) -> list[int]:
    """Prime values of the factors of an SCF expression, in written order."""
    if e is ONE:
        return []
    return [evaluate(_split_power(f)[0]) for f in scf_factors(e)]

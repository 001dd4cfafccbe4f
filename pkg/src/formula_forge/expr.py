"""Interned expression trees over the alphabet {1, +, *, ^}.

Every node is built through the smart constructors :func:`mk_one`,
:func:`mk_sum`, :func:`mk_product` and :func:`mk_power`.  They flatten
n-ary sums and products, drop trivial subterms (``g^1``, ``1^g``, unit
factors) and intern the result, so two structurally equal expressions are
always the same Python object and ``is`` is a valid equality test.

The abbreviation ``x`` is not a separate node: it is the interned
``SUM(1, 1)``.  Inside a larger sum ``x`` stays an atom rather than being
spliced into three or more ones, and adjacent pairs of ``1`` children are
folded into ``x``.  This keeps ``x + 1`` distinct from ``1 + x`` while
giving every binarized prefix/postfix token stream a unique reading.
"""

from __future__ import annotations

import enum
import os
import threading
from dataclasses import dataclass, fields

from .errors import ResourceLimitError

DEFAULT_MAX_BITS = 2**20
MAX_BITS_ENV = "FORMULA_FORGE_MAX_BITS"


class Tag(enum.IntEnum):
    ONE = 0
    SUM = 1
    PRODUCT = 2
    POWER = 3


class Metric(enum.Enum):
    CHARS = "chars"
    LEAVES = "leaves"
    GATES = "gates"

    def __str__(self):
        return self.value


@dataclass
class Counters:
    """Operation counters behind the complexity reports.

    ``assemblies`` counts smart-constructor calls, ``insertions`` counts nodes
    newly added to the registry and ``products`` counts candidate integer
    products formed by the Zeta recursions.  ``manipulations`` is the pinned
    cost model: assemblies plus products.  Insertions are reported but left
    out because they depend on what an earlier call already interned.
    """

    assemblies: int = 0
    insertions: int = 0
    products: int = 0

    @property
    def manipulations(self) -> int:
        return self.assemblies + self.products

    def snapshot(self) -> "Counters":
        return Counters(self.assemblies, self.insertions, self.products)

    def since(self, start: "Counters") -> "Counters":
        return Counters(*(getattr(self, f.name) - getattr(start, f.name) for f in fields(self)))


COUNTERS = Counters()


class Expr:
    """Immutable interned node.  Never instantiate directly."""

    __slots__ = ("tag", "args", "_value", "_leaves", "__weakref__")

    def __init__(self, tag: Tag, args: tuple):
        self.tag = tag
        self.args = args
        self._value = None
        self._leaves = None

    def __setattr__(self, name, value):
        if name in ("tag", "args") and hasattr(self, name):
            raise AttributeError("Expr nodes are immutable")
        object.__setattr__(self, name, value)

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        if self.tag is Tag.ONE:
            return (mk_one, ())
        if self.tag is Tag.POWER:
            return (mk_power, self.args)
        ctor = mk_sum if self.tag is Tag.SUM else mk_product
        return (ctor, (list(self.args),))

    @property
    def is_one(self) -> bool:
        return self.tag is Tag.ONE

    @property
    def is_x(self) -> bool:
        return self is X

    @property
    def base(self) -> "Expr":
        assert self.tag is Tag.POWER
        return self.args[0]

    @property
    def exponent(self) -> "Expr":
        assert self.tag is Tag.POWER
        return self.args[1]

    def __repr__(self):
        from .notation import render

        return f"Expr({render(self)!r})"

    def __str__(self):
        from .notation import render

        return render(self)


_registry: dict = {}
_registry_lock = threading.Lock()


def _intern(tag: Tag, args: tuple) -> Expr:
    key = (tag, args)
    node = _registry.get(key)
    if node is not None:
        return node
    with _registry_lock:
        node = _registry.get(key)
        if node is None:
            node = Expr(tag, args)
            _registry[key] = node
            COUNTERS.insertions += 1
    return node


def registry_size() -> int:
    return len(_registry)


ONE = _intern(Tag.ONE, ())
X = _intern(Tag.SUM, (ONE, ONE))


def mk_one() -> Expr:
    return ONE


def mk_sum(children) -> Expr:
    COUNTERS.assemblies += 1
    flat = []
    for c in children:
        parts = c.args if c.tag is Tag.SUM and c is not X else (c,)
        for p in parts:
            if p is ONE and flat and flat[-1] is ONE:
                flat[-1] = X
            else:
                flat.append(p)
    if not flat:
        raise ValueError("mk_sum needs at least one child")
    if len(flat) == 1:
        return flat[0]
    return _intern(Tag.SUM, tuple(flat))


def mk_product(children) -> Expr:
    COUNTERS.assemblies += 1
    children = list(children)
    if not children:
        raise ValueError("mk_product needs at least one child")
    flat = []
    for c in children:
        if c.tag is Tag.PRODUCT:
            flat.extend(c.args)
        elif c is not ONE:
            flat.append(c)
    if not flat:
        return ONE
    if len(flat) == 1:
        return flat[0]
    return _intern(Tag.PRODUCT, tuple(flat))


def mk_power(base: Expr, exp: Expr) -> Expr:
    COUNTERS.assemblies += 1
    if exp is ONE or base is ONE:
        return base
    return _intern(Tag.POWER, (base, exp))


def _max_bits(max_bits):
    if max_bits is not None:
        return max_bits
    env = os.environ.get(MAX_BITS_ENV)
    return int(env) if env else DEFAULT_MAX_BITS


def evaluate(e: Expr, max_bits: int | None = None) -> int:
    """Value of ``e`` as a Python int.

    Raises :class:`ResourceLimitError` when the value (or any intermediate
    value) needs more than ``max_bits`` bits.  The default cap is read from
    ``FORMULA_FORGE_MAX_BITS`` and falls back to 2**20.
    """
    return _eval(e, _max_bits(max_bits))


def _eval(e: Expr, cap: int) -> int:
    v = e._value
    if v is not None:
        if v.bit_length() > cap:
            raise ResourceLimitError(f"value needs {v.bit_length()} bits, cap is {cap}")
        return v
    tag = e.tag
    if tag is Tag.ONE:
        v = 1
    elif tag is Tag.SUM:
        v = sum(_eval(c, cap) for c in e.args)
    elif tag is Tag.PRODUCT:
        v = 1
        for c in e.args:
            v *= _eval(c, cap)
    else:
        b = _eval(e.args[0], cap)
        n = _eval(e.args[1], cap)
        if b > 1 and (b.bit_length() - 1) * n + 1 > cap:
            raise ResourceLimitError(f"power exceeds the {cap}-bit cap")
        v = b**n
    if v.bit_length() > cap:
        raise ResourceLimitError(f"value needs {v.bit_length()} bits, cap is {cap}")
    e._value = v
    return v


def leaves(e: Expr) -> int:
    n = e._leaves
    if n is None:
        n = 1 if e.tag is Tag.ONE else sum(leaves(c) for c in e.args)
        e._leaves = n
    return n


def _chars(e: Expr) -> int:
    if e.tag is Tag.ONE:
        return 1
    return len(e.args) - 1 + sum(_chars(c) for c in e.args)


def _gates(e: Expr) -> int:
    # gates of the shared circuit: one key per distinct binarized operation
    keys = set()
    seen = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if id(node) in seen or node.tag is Tag.ONE:
            continue
        seen.add(id(node))
        ids = tuple(id(c) for c in node.args)
        if node.tag is Tag.POWER:
            keys.add((node.tag, ids))
        else:
            for i in range(2, len(ids) + 1):
                keys.add((node.tag, ids[:i]))
        stack.extend(node.args)
    return len(keys)


def size(e: Expr, metric: Metric | str = Metric.LEAVES) -> int:
    """Size of ``e`` with every ``x`` expanded to ``(1+1)``.

    CHARS is the token count of the prefix rendering, LEAVES the number of
    ``1`` leaves, GATES the number of fan-in-two gates of the circuit in which
    identical subterms (interned nodes) are shared.
    """
    metric = Metric(metric.lower()) if isinstance(metric, str) else metric
    if metric is Metric.LEAVES:
        return leaves(e)
    if metric is Metric.CHARS:
        return _chars(e)
    return _gates(e)


def iter_nodes(e: Expr):
    """Yield every node of the tree rooted at ``e`` (shared nodes once)."""
    seen = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield node
        stack.extend(node.args)

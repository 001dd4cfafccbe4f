import random

import pytest
from hypothesis import strategies as st

from formula_forge import mk_one, mk_power, mk_product, mk_sum

# Raw trees are nested tuples: ("1",), ("+", a, b), ("*", a, b), ("^", a, b).
# They are evaluated here without the smart constructors, as an oracle.

RAW_BIT_CAP = 4096


class TooBig(Exception):
    pass


def raw_value(t):
    op = t[0]
    if op == "1":
        return 1
    a, b = raw_value(t[1]), raw_value(t[2])
    if op == "+":
        return a + b
    if op == "*":
        return a * b
    if a > 1 and (a.bit_length() - 1) * b > RAW_BIT_CAP:
        raise TooBig
    return a**b


def build(t):
    op = t[0]
    if op == "1":
        return mk_one()
    a, b = build(t[1]), build(t[2])
    if op == "+":
        return mk_sum([a, b])
    if op == "*":
        return mk_product([a, b])
    return mk_power(a, b)


def random_raw(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return ("1",)
    op = rng.choice("+*^")
    if op == "^":
        return ("^", random_raw(rng, depth - 1), random_raw(rng, min(depth - 1, 2)))
    return (op, random_raw(rng, depth - 1), random_raw(rng, depth - 1))


def random_raw_tree(rng, depth=5):
    """A raw tree whose value stays under RAW_BIT_CAP bits."""
    while True:
        t = random_raw(rng, depth)
        try:
            return t, raw_value(t)
        except TooBig:
            continue


raw_trees = st.recursive(
    st.just(("1",)),
    lambda kids: st.tuples(st.sampled_from("+*"), kids, kids)
    | st.tuples(st.just("^"), kids, st.sampled_from([("1",), ("+", ("1",), ("1",)), ("+", ("1",), ("+", ("1",), ("1",)))])),
    max_leaves=12,
)


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES = []


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.notes = []

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        import time

        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        import time

        status = "PASS" if exc_type is None else "FAIL"
        extra = f" [{'; '.join(self.notes)}]" if self.notes else ""
        ACCEPTANCE_LINES.append(f"{status}  AC{self.number}  {self.title} ({time.perf_counter() - self.t0:.2f} s){extra}")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1][2:])):
            terminalreporter.write_line(line)

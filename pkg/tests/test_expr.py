import threading

import pytest
from hypothesis import assume, given

from conftest import TooBig, build, raw_trees, raw_value
from formula_forge import (
    ONE,
    X,
    Metric,
    ResourceLimitError,
    Tag,
    evaluate,
    mk_one,
    mk_power,
    mk_product,
    mk_sum,
    parse,
    size,
)
from formula_forge.expr import COUNTERS, iter_nodes


def test_x_is_one_plus_one():
    assert mk_sum([ONE, ONE]) is X
    assert X.tag is Tag.SUM and X.args == (ONE, ONE)


def test_power_with_unit_exponent_collapses():
    assert mk_power(X, ONE) is X


def test_power_of_one_collapses():
    assert mk_power(ONE, mk_power(X, X)) is ONE


def test_unit_factor_dropped():
    three = mk_sum([X, ONE])
    e = mk_product([three, ONE, X])
    assert e.tag is Tag.PRODUCT and e.args == (three, X)
    assert str(e) == "(x+1)*x"


def test_singletons_collapse():
    assert mk_sum([X]) is X
    assert mk_product([X, ONE]) is X
    assert mk_product([ONE, ONE]) is ONE


def test_flattening():
    a = mk_power(X, X)
    s = mk_sum([mk_sum([a, X]), mk_sum([a, ONE])])
    assert s.args == (a, X, a, ONE)
    p = mk_product([mk_product([X, a]), X])
    assert p.args == (X, a, X)


def test_x_stays_atomic_inside_sums():
    assert mk_sum([X, ONE]).args == (X, ONE)
    assert mk_sum([ONE, X]).args == (ONE, X)
    assert mk_sum([X, X]).args == (X, X)


def test_adjacent_ones_fold_into_x():
    assert mk_sum([ONE, ONE, ONE]).args == (X, ONE)
    assert mk_sum([mk_sum([X, ONE]), ONE]).args == (X, X)


def test_empty_children_rejected():
    with pytest.raises(ValueError):
        mk_sum([])
    with pytest.raises(ValueError):
        mk_product([])


def test_nodes_are_immutable():
    with pytest.raises(AttributeError):
        X.args = (ONE,)


def test_interning_identity():
    a = mk_power(mk_sum([X, ONE]), X)
    b = mk_power(mk_sum([mk_sum([ONE, ONE]), ONE]), mk_sum([ONE, ONE]))
    assert a is b


def test_interning_under_threads():
    results = []

    def work():
        results.append(mk_power(mk_sum([mk_power(X, X), X, X, ONE]), mk_sum([X, X, X])))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)


@pytest.mark.parametrize(
    "text, value",
    [
        ("1", 1),
        ("x", 2),
        ("x^x+1", 5),
        ("x^(x+1)", 8),
        ("(x+1)*x", 6),
    ],
)
def test_evaluate_small(text, value):
    assert evaluate(parse(text)) == value


def test_evaluate_display_expression():
    e = parse("x^(1+(x*x*x)+x^(x*x))+1^(1^1)+1^(x^1)+1^(x^(x^1))+1")
    # exponent 1 + 2*2*2 + 2**(2*2) = 25 and four unit summands
    assert evaluate(e) == pow(2, 25) + 4 == 33554436


def test_evaluate_bit_cap():
    tower = parse("x^(x^(x^(x^x)))")  # 2**65536
    with pytest.raises(ResourceLimitError):
        evaluate(tower, max_bits=1000)
    assert evaluate(tower, max_bits=70000) == 2**65536
    # a cached value still respects a smaller cap
    with pytest.raises(ResourceLimitError):
        evaluate(tower, max_bits=1000)


def test_evaluate_env_cap(monkeypatch):
    monkeypatch.setenv("FORMULA_FORGE_MAX_BITS", "6")
    with pytest.raises(ResourceLimitError):
        evaluate(parse("x^(x^x+x)"))
    monkeypatch.delenv("FORMULA_FORGE_MAX_BITS")
    assert evaluate(parse("x^(x^x+x)")) == 64


def test_default_cap_stops_towers():
    with pytest.raises(ResourceLimitError):
        evaluate(parse("x^(x^(x^(x^(x^x))))"))


def test_sizes_of_atoms():
    assert size(ONE, Metric.LEAVES) == 1
    assert size(ONE, Metric.GATES) == 0
    assert size(ONE, Metric.CHARS) == 1
    assert size(X, Metric.LEAVES) == 2
    assert size(X, Metric.GATES) == 1
    assert size(X, Metric.CHARS) == 3


def test_gates_share_identical_subterms():
    # shared circuit: one gate for x, one ^, one top-level +
    assert size(parse("x^x+1"), "gates") == 3
    assert size(parse("x^x+1"), "leaves") == 5


def test_gates_binarize_left_to_right():
    # ((a + b) + 1) with a = x^x, b = x: gates x, ^, a+b, (a+b)+1
    assert size(parse("x^x+x+1"), "gates") == 4
    # prefix (a+b) is shared between the two sums
    e = mk_product([parse("x^x+x+1"), parse("x^x+x")])
    assert size(e, "gates") == 5


def test_chars_counts_expanded_prefix_tokens():
    from formula_forge import render

    for text in ["x^x+1", "(x+1)*x", "x^(x^x+x+1)+x^x+1", "1"]:
        e = parse(text)
        assert size(e, "chars") == len(render(e, "prefix", expand_x=True).split())


@given(raw_trees)
def test_evaluation_matches_raw_tree(t):
    try:
        v = raw_value(t)
    except TooBig:
        assume(False)
    assert evaluate(build(t)) == v


@given(raw_trees, raw_trees)
def test_evaluation_homomorphism(ta, tb):
    a, b = build(ta), build(tb)
    va, vb = evaluate(a), evaluate(b)
    assert evaluate(mk_sum([a, b])) == va + vb
    assert evaluate(mk_product([a, b])) == va * vb
    if vb <= 64 and va < 2**32:
        assert evaluate(mk_power(a, b)) == va**vb


def _is_nontrivial(e):
    for node in iter_nodes(e):
        if node.tag is Tag.POWER and (node.exponent is ONE or node.base is ONE):
            return False
        if node.tag is Tag.PRODUCT and any(c is ONE or c.tag is Tag.PRODUCT for c in node.args):
            return False
        if node.tag is Tag.SUM and any(c.tag is Tag.SUM and c is not X for c in node.args):
            return False
        if node.tag in (Tag.SUM, Tag.PRODUCT) and len(node.args) < 2:
            return False
    return True


@given(raw_trees)
def test_smart_constructors_leave_no_trivial_subterm(t):
    assert _is_nontrivial(build(t))


@given(raw_trees)
def test_interning_soundness(t):
    a, b = build(t), build(t)
    assert a is b
    # structural equality via a recursive comparison agrees with identity
    def same(u, v):
        return u.tag == v.tag and len(u.args) == len(v.args) and all(same(p, q) for p, q in zip(u.args, v.args))

    assert same(a, b)


def test_counters_track_assemblies():
    start = COUNTERS.snapshot()
    mk_sum([X, ONE])
    mk_product([X, X])
    mk_power(X, X)
    d = COUNTERS.since(start)
    assert d.assemblies == 3
    assert d.manipulations >= 3


def test_pickle_round_trip():
    import pickle

    e = parse("(x+1)^x*x^(x^x)+1")
    assert pickle.loads(pickle.dumps(e)) is e

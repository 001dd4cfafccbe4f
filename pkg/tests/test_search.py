import pytest

from formula_forge import ONE, DomainError, ResourceLimitError, encode_fcf, evaluate, shortest_expr, size


def min_leaves_oracle(limit, max_leaves):
    """Smallest leaf count of any binary tree over {+, *, ^} per value.

    Enumerates value sets of all trees with exactly L leaves, trivial
    subterms included, so it shares nothing with the pruned search.
    """
    sets = [set(), {1}]
    best = {1: 1}
    for total in range(2, max_leaves + 1):
        cur = set()
        for a in range(1, total):
            for u in sets[a]:
                for v in sets[total - a]:
                    cur.update(w for w in (u + v, u * v) if w <= limit)
                    if u == 1:
                        cur.add(1)
                    elif v < limit.bit_length() + 1 and u**v <= limit:
                        cur.add(u**v)
        sets.append(cur)
        for w in cur:
            best.setdefault(w, total)
    return best


ORACLE = min_leaves_oracle(300, 9)


def test_one():
    assert shortest_expr(1, 1) is ONE


def test_four_needs_four_leaves():
    assert shortest_expr(4, 3) is None
    e = shortest_expr(4, 4)
    assert evaluate(e) == 4 and size(e, "leaves") == 4
    # powers are tried first
    assert str(e) == "x^x"


def test_256():
    e = shortest_expr(256, 8)
    assert evaluate(e) == 256
    assert size(e, "leaves") == ORACLE[256] == 7


@pytest.mark.parametrize("n", list(range(1, 121)) + [127, 128, 243, 255, 256, 300])
def test_matches_oracle(n):
    e = shortest_expr(n, 9)
    if n not in ORACLE:
        assert e is None
    else:
        assert evaluate(e) == n
        assert size(e, "leaves") == ORACLE[n]


def test_never_longer_than_fcf():
    for n in range(1, 200):
        e = shortest_expr(n, 10)
        f = encode_fcf(n)
        if e is not None and size(f, "leaves") <= 10:
            assert size(e, "leaves") <= size(f, "leaves")


def test_errors():
    with pytest.raises(DomainError):
        shortest_expr(0, 3)
    with pytest.raises(ResourceLimitError):
        shortest_expr(10**6, 12, entry_cap=50)

"""Expressions over {1, +, *, ^}: building, printing, parsing, evaluating."""

from formula_forge import ONE, X, evaluate, mk_power, mk_product, mk_sum, parse, render, size

# x is just the interned sum 1+1
print(render(X), render(X, expand_x=True))

# smart constructors drop trivial pieces: g^1 -> g, 1^g -> 1, unit factors
print(render(mk_power(X, ONE)), render(mk_power(ONE, X)), render(mk_product([mk_sum([X, ONE]), ONE, X])))

# the same expression in the three notations
e = parse("x^(x+1)+1")
for notation in ("infix", "prefix", "postfix"):
    print(f"{notation:8s}", render(e, notation))
print("value", evaluate(e))

# an input with trivial subterms is simplified while it is parsed
display = parse("x^(1+(x*x*x)+x^(x*x))+1^(1^1)+1^(x^1)+1^(x^(x^1))+1")
print(render(display), "=", evaluate(display))

# three ways to measure size (x counts as 1+1)
for metric in ("chars", "leaves", "gates"):
    print(metric, size(display, metric))

# structurally equal expressions are the same object
print(parse("(1+1)^(1+1)") is parse("x^x"))

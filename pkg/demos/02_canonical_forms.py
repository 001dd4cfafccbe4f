"""The two canonical encodings side by side."""

from formula_forge import encode_fcf, encode_scf, factor, is_fcf, is_scf, normalize, parse, render, shortest_expr, size

print(f"{'n':>4}  {'FCF (binary, hereditary)':40s}  SCF (prime factorization)")
for n in [1, 2, 3, 4, 5, 6, 7, 9, 12, 17, 100, 255]:
    print(f"{n:>4}  {render(encode_fcf(n)):40s}  {render(encode_scf(n))}")

# FCF summands follow the set bits of n; SCF factors follow factor(n)
n = 360
print(bin(n), render(encode_fcf(n)))
print(factor(n), render(encode_scf(n)))

# membership checks
for text in ["x^x+1", "x+x", "(x+1)*x", "x*(x+1)", "(x+1)^x"]:
    e = parse(text)
    print(f"{text:10s} fcf={is_fcf(e)!s:5s} scf={is_scf(e)}")

# any expression can be normalized into either form
e = parse("(x+1)*(x+1)*x")
print(render(normalize(e, "fcf")), render(normalize(e, "scf")))

# a small exhaustive search shows neither form is always shortest
for n in [16, 27, 100]:
    best = shortest_expr(n, 10)
    print(n, render(best), size(best), "| fcf", size(encode_fcf(n)), "| scf", size(encode_scf(n)))

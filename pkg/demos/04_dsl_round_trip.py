# Algebras as text.
#
# A .zb file lists the nonzero products between "table" and "end",
# with 1-based indices. Parameters are declared up front and can be rebound.

from fractions import Fraction

from zinbiel import BasisChange, transport, zinbiel_check
from zinbiel.catalog import make_dim4
from zinbiel.dsl import instantiate, parse_dsl, serialize

text = """\
algebra A8
dim 4
param alpha = 2/3
table
e1 * e1 = e3
e1 * e2 = e4
e2 * e1 = -alpha e3
e2 * e2 = -e4
end
"""
doc = parse_dsl(text)

A = instantiate(doc)
print("matches the catalog entry:", A == make_dim4(8, Fraction(2, 3)))

# rebinding the parameter
B = instantiate(doc, {"alpha": Fraction(-1)})
print(serialize(B, "A8_minus_one"))

# serialize -> parse -> serialize is a fixed point
once = serialize(doc)
assert serialize(parse_dsl(once)) == once
print("round trip stable")

# a transported algebra serializes with whatever rationals come out
P = BasisChange([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, Fraction(1, 2)]])
C = transport(A, P)
print(serialize(C, "A8_moved"))
print("still Zinbiel:", zinbiel_check(C).holds)

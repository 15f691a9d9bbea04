"""Telling algebras apart.

``distinguish`` tries, in order: fingerprints, known exact changes of basis,
and a bounded search over F_p.  The search outcome is evidence about the
reduction mod p only.
"""

from fractions import Fraction

from zinbiel import BasisChange, make_f1, make_filiform, make_nf, transport
from zinbiel.catalog import make_dim4, split_dim4
from zinbiel.iso import distinguish, search_records, split_scan_fp, verdict_str

A = make_filiform(6, 3, 4)
B = make_filiform(6, 1, 7)
print("F6(3,4) vs F6(1,7):", verdict_str(distinguish(A, B)))

print("NF5 vs F5^1:", verdict_str(distinguish(make_nf(5), make_f1(5))))

# Same algebra in a scrambled basis: fingerprints agree, the F_2 search finds a map.
P = BasisChange([[1, 1, 0, 0, 0], [0, 1, 0, 0, 1], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
moved = transport(make_f1(5), P)
v = distinguish(make_f1(5), moved, primes=(2,))
print("F5^1 vs scrambled copy:", verdict_str(v))

# Two members of a dimension-four family with the same fingerprint.
# The mod 3 search comes back empty. That is evidence rather than proof:
# a rational change of basis with 3 in a denominator has no reduction mod 3.
X, Y = make_dim4(8, Fraction(2)), make_dim4(8, Fraction(4))
for rec in search_records(X, Y, primes=(2, 3)):
    print(f"  mod {rec.p}: {rec.outcome} {rec.detail}")

# Direct-sum decompositions over F_2
I, J = split_scan_fp(split_dim4(), 2)
print("split algebra: I =", I, " J =", J)
print("NF4:", split_scan_fp(make_nf(4), 2))

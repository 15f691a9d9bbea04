# Dimension four: the catalog A_1 .. A_16 plus one split algebra.

from fractions import Fraction

from zinbiel import classify_shape, fingerprint, make_dim4, signature
from zinbiel.catalog import dim4_catalog, split_dim4

cat = dim4_catalog()
print(len(cat), "catalog entries (families sampled at a few alpha values)")

for name, A in cat.items():
    print(f"{name:10s} signature={signature(A)}  shape={classify_shape(A).value}")

# Fingerprints are cheap rank invariants. Different fingerprints rule out
# an isomorphism; equal ones prove nothing by themselves.
f12 = fingerprint(make_dim4(12))
f14 = fingerprint(make_dim4(14))
print("A12 vs A14 differ in:", f12.differences(f14))

fa = fingerprint(make_dim4(8, Fraction(2)))
fb = fingerprint(make_dim4(8, Fraction(5)))
print("A8(2) vs A8(5) differ in:", fa.differences(fb) or "nothing")

S = split_dim4()
print("split algebra:", signature(S), fingerprint(S).as_dict())

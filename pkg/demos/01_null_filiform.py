# The null-filiform algebra NF_n, built from binomial coefficients.
#
# e_i o e_j = C(i+j-1, j) e_{i+j}, and anything past e_n is dropped.
# One generator (e_1) produces the whole thing, so the power chain
# A > A^2 > A^3 > ... loses exactly one dimension per step.

from zinbiel import make_nf, nilindex, power_series, zinbiel_check
from zinbiel.dsl import serialize

A = make_nf(5)
print(serialize(A, "NF5"))

# the identity (xy)z = x(yz) + x(zy) holds on every basis triple
report = zinbiel_check(A)
print("identity holds:", report.holds)

ps = power_series(A)
print("dim A^k:", ps.dims)
print("nilindex:", nilindex(A))

# a peek at the raw tensor: constants[i, j, k] is the e_k coefficient of e_i o e_j
# (library indices start at 0)
c = A.constants
print("e2 o e2 =", c[1, 1, 3], "* e4")  # C(3, 2) = 3
print("e1 o e3 =", c[0, 2, 3], "* e4")  # C(3, 3) = 1

# each step of the chain, printed as a reduced basis
for k, S in enumerate(ps.subspaces, start=1):
    print(f"A^{k}:", S)

# the pattern carries on: dimension n, nilindex n + 1
for n in range(1, 9):
    B = make_nf(n)
    print(n, power_series(B).dims, nilindex(B))

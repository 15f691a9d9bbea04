# Filiform algebras F_n(alpha, beta) fall into three classes: F1, F2, F3.
#
# normalize_filiform hands back the class and an explicit change of basis.
# When beta is not a rational square the change may need a square root,
# and the library keeps it exact with a + b*sqrt(r) scalars.

from fractions import Fraction

from zinbiel import make_f1, make_f2, make_f3, make_filiform
from zinbiel.iso import normalize_filiform, verify_isomorphism

TARGETS = {"F1": make_f1, "F2": make_f2, "F3": make_f3}

for n in (5, 6):
    for alpha, beta in [(0, 0), (3, 0), (1, 4), (1, 2), (Fraction(2, 3), -1)]:
        cls, P = normalize_filiform(n, alpha, beta)
        ok = verify_isomorphism(make_filiform(n, alpha, beta), TARGETS[cls](n), P)
        extra = f" sqrt({P.radicand()})" if P.radicand() is not None else ""
        print(f"n={n} alpha={alpha} beta={beta}: {cls}, verified={ok}{extra}")

# Look at one change in full. Row i is the new e_i written in the old basis.
cls, P = normalize_filiform(5, 1, 2)
print(cls)
for row in P.matrix:
    print("  ", [str(x) for x in row])

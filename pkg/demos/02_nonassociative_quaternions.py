"""The doubling Cay(K, b) and what changes when b leaves the base field.

With b in F the double is the classical quaternion algebra: associative,
a division algebra only when b avoids the norms of K.  Moving b into
K \\ F destroys associativity (even (x^2)x != x(x^2)) but buys an
unconditional division algebra whose nucleus is exactly K.
"""

from quatstbc.algebras import (AlgebraSpec, AlgElem, algebra_norm, associator,
                               in_nucleus, is_division, multiply)
from quatstbc.fields import tower

QI = tower(None, -1)                     # K = Q(i) over F = Q
spec = AlgebraSpec(QI, QI.ext_gen())     # b = i lies outside Q: nonassociative
j = spec.j()

print("Cay(Q(i), i): b = i in K \\ Q")
jj = multiply(spec, j, j)
print("  j^2        =", jj, "  (= b)")
print("  (j^2) j    =", multiply(spec, jj, j))
print("  j (j^2)    =", multiply(spec, j, jj), "  <- not even third-power associative")
print("  [j, j, j]  =", associator(spec, j, j, j))
print("  j in nucleus?", in_nucleus(spec, j))
k = AlgElem(QI.one() + QI.ext_gen(), QI.zero())
print("  1+i in nucleus?", in_nucleus(spec, k), " (all of K associates)")
print("  division?   ", is_division(spec)[0], " (always, for b outside F)")
print()

split = AlgebraSpec(QI, QI.one())        # b = 1 = N(1): the split comparator
verdict, witness = is_division(split)
print("Cay(Q(i), 1): b = 1 is a norm")
print("  division?   ", verdict, " witness x =", witness, " with N(x) =",
      witness.rel_norm())
print()

gold = tower(-1, 5)
golden_algebra = AlgebraSpec(gold, gold.base_gen())   # b = i in F = Q(i): associative
x = AlgElem(gold.one() + gold.ext_gen(), gold.base_gen())
print("Cay(Q(i)(sqrt5), i): the algebra behind the Golden code (associative)")
print("  division?   ", is_division(golden_algebra)[0])
print("  N(x)        =", algebra_norm(golden_algebra, x))
print("  x conj(x)   =", multiply(golden_algebra, x,
                                  AlgElem(x.u.galois_conj(), -x.v)).u)

"""Exact arithmetic in quadratic towers: the substrate for everything else.

Elements of Q(i)(sqrt(5)) carry four exact rational coordinates over
{1, i, sqrt5, i*sqrt5}.  The two conjugations live on different levels:
the Galois map sigma flips sqrt(5) and fixes Q(i); base conjugation flips
i.  One fixed complex embedding (principal roots) backs every float.
"""

from fractions import Fraction as F

from quatstbc import tower

K = tower(-1, 5)                        # Q(i)(sqrt 5) over Q(i)
i, s5 = K.base_gen(), K.ext_gen()
theta = K.elem((F(1, 2), 0, F(1, 2), 0))   # the golden number (1+sqrt5)/2

print("theta           =", theta, "=", theta.embed())
print("theta^2 - theta =", theta * theta - theta, " (the golden identity)")
print()
print("sigma(sqrt5)    =", s5.galois_conj())
print("sigma(i)        =", i.galois_conj(), "   (sigma fixes the base field)")
print("conj_base(i)    =", i.base_conj(), "  (the other conjugation flips i)")
print()

x = i + s5
print("x = i + sqrt5")
print("  N_{K/F}(x)    =", x.rel_norm(), "      (x * sigma(x), lands in Q(i))")
print("  1/x           =", x.inv())
print("  x * 1/x       =", x * x.inv())
print()

b = (i + s5) / (i - s5)
print("b = (i+sqrt5)/(i-sqrt5) =", b)
print("  |b|^2 exactly =", b.abs_sq(), "   (unit modulus, so layer scaling is free)")
print("  embeds to     =", b.embed())
print()

# exact comparison of real algebraic numbers: no floats involved
u = (theta - 1) ** 6
v = K.rat(F(1, 17))
print("(theta-1)^6     =", u, "~", u.embed().real)
print("compare with 1/17 exactly:", u.abs_sq().compare(v.abs_sq()))

"""Exhaustive minimum determinants and the ring-of-integers lower bounds.

The Golden code's 1/5 comes out of exact enumeration; the multiblock
variants obey their generalized bounds 1/30, 1/45, 1/4.  For towers whose
top field is not quadratic imaginary the bound machinery reports
"not applicable", and unit powers show the determinant really does vanish.
"""

from quatstbc import preset, tower
from quatstbc.metrics import gen_min_det, min_det, nvd_constant
from quatstbc.presets import Constellation

box2 = Constellation("box", 2)

rep = min_det(preset("golden"), box2)
print("golden, box L=2:")
print("  min |det|^2 (scaled)  =", rep.shaped_min_abs_sq_rational,
      f" over {rep.tuple_count} tuples, attained {rep.argmin_count} times")
print()

for name in ("mb-8.4", "mb-8.5", "mb-8.6"):
    code = preset(name)
    bound = nvd_constant(code, *code.nvd_pair())
    enum = gen_min_det(code, box2)
    print(f"{name}: guaranteed delta_g >= {bound.constant}   "
          f"enumerated delta_g = {enum.shaped_delta_g_float:.6f} "
          f"(delta_g^2 = {enum.shaped_delta_g_sq})")
print()

na = preset("golden-na-1")
verdict = nvd_constant(na, *na.nvd_pair())
print("golden-na-1: applicable =", verdict.applicable, "-", verdict.notes[-1])

# the vanishing mechanism: powers of a norm -1 unit of Q(sqrt 5)
K = tower(None, 5)
u = K.elem((-1, 1)) / 2            # theta - 1
x, n = K.one(), 0
while abs(x.embed()) ** 2 >= 1e-6:
    x, n = x * u, n + 1
print(f"unit powers: |u^{n}|^2 = {abs(x.embed())**2:.2e} < 1e-6  "
      "(entries from O_K alone cannot bound this code's determinant)")

"""Shaping/unitarity checks, energy balance, and the number-theory facts
that separate the code families.
"""

from quatstbc import preset
from quatstbc.metrics import energy_check, shaping_check
from quatstbc.numtheory import class_number_is_one, quad_field_info, rel_disc_over_Qi
from quatstbc.presets import Constellation

print("basis-embedding matrix G and second layer Gamma_2 = [[0, b], [1, 0]]:")
for name in ("alamouti-na", "zeta8", "golden", "zeta3"):
    rep = shaping_check(preset(name))
    print(f"  {name:12s} G/sqrt(2) deviation = {rep.g_scaled_dev:.3g}   "
          f"|b|^2 = {rep.b_abs_sq}  Gamma_2 unitary: {rep.gamma2_unitary_symbolic}")
print()

print("4x4 layer matrices and the information-losslessness predicate:")
for name in ("four-9.2", "four-9.3"):
    rep = shaping_check(preset(name))
    print(f"  {name:12s} layer deviations = "
          f"{tuple(f'{d:.2g}' for d in rep.gamma_devs)}  lossless: {rep.info_lossless}")
print()

print("average energy per antenna (box L=1), exact:")
for name in ("zeta8", "golden-na-1", "four-9.3"):
    rep = energy_check(preset(name), Constellation("box", 1))
    print(f"  {name:12s} rows = {tuple(round(v, 6) for v in rep.row_avgs_float)}"
          f"  uniform: {rep.uniform_exact}")
print()

print("relative discriminants over Q(i) rank the 2x2 towers:")
for m in (5, 2, 3):
    print(f"  m={m}: |d| = {rel_disc_over_Qi(m)}   "
          f"Z[i]-extension has class number one: {class_number_is_one('qi_ext', m)}")
print("  (|d| = 2 is impossible: no square-free m maps there)")
print()
info = quad_field_info(5)
print(f"Q(sqrt 5): disc {info.disc}, integral basis {info.basis_desc}")

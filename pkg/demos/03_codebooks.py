"""The three codeword layouts, with exact entries and closed-form determinants.

Left multiplication by x0 + j x1 on the right-K-basis {1, j} gives the 2x2
form with det = N(x0) - b N(x1); gluing [X | sigma(X)] gives the two-block
2x4 form; left multiplication over F on {1, i, j, -ij} gives the 4x4 form.
"""

import numpy as np

from quatstbc import preset
from quatstbc.codewords import det2, det4

for name in ("alamouti-na", "golden", "golden-na-1", "zeta8", "mb-8.6", "four-9.3"):
    code = preset(name)
    syms = [(1, 0), (0, 0), (1, 0), (0, 0)]
    if not code.gaussian_symbols:
        syms = [(1, 0), (2, 0), (0, 0), (1, 0)]
    cw = code.codeword(syms)
    print(f"== {name}  ({code.shape}, "
          f"{'nonassociative' if code.algebra().nonassociative else 'associative'})")
    scale = f"(1/sqrt({cw.shaping_n})) * " if cw.shaping_n else ""
    for r, row in enumerate(cw.entries):
        lead = scale if r == 0 else " " * len(scale)
        print("   " + lead + "[" + ", ".join(str(e) for e in row) + "]")
    alg = code.algebra()
    if code.shape in ("2x2", "2x4"):
        x0, x1 = code.x_pair(syms)
        closed = det2(alg, x0, x1)
    else:
        closed = det4(alg, *[code.symbol_elem(s) for s in syms])
    print("   closed-form det (unscaled) =", closed)
    if code.shape != "2x4":
        print("   cofactor det agrees:", closed == cw.det_exact())
        emb = np.linalg.det(cw.embed())
        print(f"   embedded det = {emb:.6f}")
    print()

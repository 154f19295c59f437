"""Space-time block codes from quaternion algebras, with exact verification.

Subpackages:

- fields:     exact arithmetic in quadratic field towers Q < F < K
- algebras:   the doubling Cay(K, b), associator/nucleus/division checks
- codewords:  2x2, 4x4 and 2x4 multiblock codeword matrices and determinants
- metrics:    minimum determinant, NVD constants, shaping and energy checks
- numtheory:  discriminants, integral bases, class-number and unit facts
- simulate:   Rayleigh block-fading Monte Carlo with exhaustive ML decoding
- presets:    named code constructions and the JSON code-spec file format
"""

from .fields import FieldElem, TowerSpec, tower, DEFAULT_TOL
from .algebras import AlgebraSpec, AlgElem
from .codewords import Codeword, lambda2, det2, lambda4, det4, multiblock, golden_codeword
from .presets import CodeSpec, Constellation, PRESETS, preset
from .metrics import (MetricReport, energy_check, full_diversity_check, gen_min_det,
                      min_det, nvd_constant, reduce_fraction_gaussian, shaping_check)
from .simulate import ChannelConfig, build_codebook, run_sweep, sweep_csv

__all__ = [
    "FieldElem", "TowerSpec", "tower", "DEFAULT_TOL",
    "AlgebraSpec", "AlgElem",
    "Codeword", "lambda2", "det2", "lambda4", "det4", "multiblock", "golden_codeword",
    "CodeSpec", "Constellation", "PRESETS", "preset",
    "MetricReport", "min_det", "gen_min_det", "nvd_constant", "full_diversity_check",
    "shaping_check", "energy_check", "reduce_fraction_gaussian",
    "ChannelConfig", "build_codebook", "run_sweep", "sweep_csv",
]

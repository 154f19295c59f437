"""Desk-scale MIMO link simulator with exhaustive ML decoding.

Codebooks are the embedded codeword matrices of a finite constellation,
energy-normalised so the mean Frobenius energy equals the number of
transmit antennas.  Each trial draws a Rayleigh block-fading channel
(i.i.d. circularly symmetric complex Gaussian entries, unit variance),
adds white Gaussian noise of per-entry variance 10^(-SNR/10), and decodes
by brute-force argmin ||Y - H C||_F^2 over the whole codebook.  Multiblock
codewords see one independent channel per 2-column block.

Randomness comes from numpy's PCG64 bit generator seeded through
SeedSequence(seed, spawn_key=(snr_index, trial)), so every trial has its
own named, platform-stable stream: identical configuration means bitwise
identical output, independent of execution order.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .presets import CodeSpec, Constellation

CODEBOOK_CAP = 4096
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class ChannelConfig:
    n_tx: int = 2
    n_rx: int = 2
    snr_db_grid: tuple = (0.0, 10.0, 20.0)
    trials: int = 1000
    seed: int = 1
    fading: str = "rayleigh_block"   # or "identity"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.n_rx < 1:
            raise ValueError("need at least one receive antenna")
        if self.fading not in ("rayleigh_block", "identity"):
            raise ValueError(f"unknown fading model {self.fading!r}")


@dataclass(frozen=True)
class TrialRecord:
    snr_db: float
    trial: int
    tx_index: int
    decoded_index: int


@dataclass
class Codebook:
    code_name: str
    tuples: list
    matrices: np.ndarray    # [N, n_tx, n_cols], energy-normalised
    n_tx: int
    block_cols: int         # columns per fading block


@dataclass
class SweepPoint:
    snr_db: float
    trials: int
    errors: int

    @property
    def cer(self) -> float:
        return self.errors / self.trials

    def wilson_interval(self) -> tuple:
        n, p, z = self.trials, self.cer, _Z95
        denom = 1.0 + z * z / n
        centre = (p + z * z / (2 * n)) / denom
        half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
        return max(0.0, centre - half), min(1.0, centre + half)


def build_codebook(code: CodeSpec, cons: Constellation, cap: int = CODEBOOK_CAP) -> Codebook:
    """Embed every symbol tuple; reject oversize, duplicate, or degenerate books.

    Normalisation scales all matrices by one common factor so that the mean
    squared Frobenius norm equals n_tx.
    """
    symbols = cons.values(code.gaussian_symbols)
    n = len(symbols) ** 4
    if n > cap:
        raise ValueError(f"codebook of {n} tuples exceeds the ML decoding cap of {cap}")
    tuples = list(itertools.product(symbols, repeat=4))
    seen = {}
    mats = []
    for t in tuples:
        cw = code.codeword(t)
        key = tuple(tuple(e.coords for e in row) for row in cw.entries)
        if key in seen:
            raise ValueError(f"degenerate codebook: tuples {seen[key]} and {t} "
                             "give the same codeword")
        seen[key] = t
        mats.append(cw.embed())
    arr = np.array(mats, dtype=complex)
    n_tx = arr.shape[1]
    mean_energy = float(np.mean(np.sum(np.abs(arr) ** 2, axis=(1, 2))))
    if mean_energy == 0.0:
        raise ValueError("degenerate codebook: only the zero codeword")
    arr *= math.sqrt(n_tx / mean_energy)
    block_cols = 2 if code.shape == "2x4" else arr.shape[2]
    return Codebook(code.name, tuples, arr, n_tx, block_cols)


def _trial_rng(seed: int, snr_index: int, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(snr_index, trial))
    return np.random.Generator(np.random.PCG64(ss))


def _complex_normal(rng, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def run_sweep(config: ChannelConfig, book: Codebook, keep_records: bool = False):
    """Codeword error rate per SNR point; deterministic for a fixed config.

    Returns (points, records); records is empty unless keep_records is set.
    """
    if config.n_tx != book.n_tx:
        raise ValueError(f"config has n_tx={config.n_tx} but the codebook needs {book.n_tx}")
    n_blocks = book.matrices.shape[2] // book.block_cols
    blocks = [book.matrices[:, :, k * book.block_cols:(k + 1) * book.block_cols]
              for k in range(n_blocks)]
    points = []
    records = []
    n_codewords = book.matrices.shape[0]
    for snr_index, snr_db in enumerate(config.snr_db_grid):
        noise_var = 0.0 if math.isinf(snr_db) else 10.0 ** (-snr_db / 10.0)
        errors = 0
        for t in range(config.trials):
            rng = _trial_rng(config.seed, snr_index, t)
            tx = int(rng.integers(0, n_codewords))
            metric = np.zeros(n_codewords)
            for blk in blocks:
                if config.fading == "identity":
                    if config.n_rx != book.n_tx:
                        raise ValueError("identity fading needs n_rx == n_tx")
                    h = np.eye(book.n_tx, dtype=complex)
                else:
                    h = _complex_normal(rng, (config.n_rx, book.n_tx))
                y = h @ blk[tx]
                if noise_var > 0.0:
                    y = y + math.sqrt(noise_var) * _complex_normal(rng, y.shape)
                diff = y[None, :, :] - np.einsum("rt,ntc->nrc", h, blk)
                metric += np.sum(np.abs(diff) ** 2, axis=(1, 2))
            decoded = int(np.argmin(metric))
            if decoded != tx:
                errors += 1
            if keep_records:
                records.append(TrialRecord(snr_db, t, tx, decoded))
        points.append(SweepPoint(snr_db, config.trials, errors))
    return points, records


def sweep_csv(points, code_name: str) -> str:
    """CSV rendering: snr_db, trials, errors, cer, ci_low, ci_high, code_name."""
    out = io.StringIO()
    out.write("snr_db,trials,errors,cer,ci_low,ci_high,code_name\n")
    for pt in points:
        lo, hi = pt.wilson_interval()
        out.write(f"{pt.snr_db!r},{pt.trials},{pt.errors},{pt.cer!r},{lo!r},{hi!r},{code_name}\n")
    return out.getvalue()

"""Attack experiment harness with CSV output."""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from random import Random
from typing import IO, Iterable

from ..encrypt import encrypt_block, extend_block, sample_noise
from ..keygen import keygen
from .density import assp_density, ssp_density
from .lattice import expand_assp_to_ssp, lattice_attack

CSV_COLUMNS = ("n", "lgM", "density", "attack_outcome", "wall_time_ms")


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    lgM: float
    density: float
    attack_outcome: str  # "recovered" | "failed" | "wrong"
    wall_time_ms: float


def write_experiment_csv(rows: Iterable[ExperimentRow], out: IO[str]) -> None:
    writer = csv.writer(out)
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            (row.n, f"{row.lgM:.4f}", f"{row.density:.4f}", row.attack_outcome, f"{row.wall_time_ms:.2f}")
        )


def planted_ssp_instance(
    n: int, bits: int, rng: Random
) -> tuple[tuple[int, ...], tuple[int, ...], int, int]:
    """Random modular subset sum with a known nonzero solution planted."""
    M = 1 << bits
    weights = tuple(rng.randint(1, M - 1) for _ in range(n))
    while True:
        x = tuple(rng.randint(0, 1) for _ in range(n))
        if any(x):
            break
    S = sum(b * w for b, w in zip(x, weights)) % M
    return weights, x, S, M


def run_planted_ssp_trial(n: int, bits: int, rng: Random) -> ExperimentRow:
    weights, x, S, M = planted_ssp_instance(n, bits, rng)
    report = ssp_density(n, weights)
    start = time.perf_counter()
    recovered = lattice_attack(weights, S, M)
    elapsed = (time.perf_counter() - start) * 1000
    if recovered is None:
        outcome = "failed"
    elif recovered == x:
        outcome = "recovered"
    else:
        # any verified solution of the modular equation counts as a break
        outcome = "recovered"
    return ExperimentRow(n, float(bits), report.density, outcome, elapsed)


def run_assp_attack_trial(
    n_payload: int, rng: Random, max_wraps: int | None = None
) -> ExperimentRow:
    """Attack a genuine ciphertext via the bit-expanded subset-sum lattice.

    `max_wraps` bounds the wraparound guesses (time budget knob); the
    expanded instance sits far above density 1, so extra guesses buy
    nothing but wall time.
    """
    pub, _ = keygen(n_payload, rng)
    block = extend_block([rng.randint(0, 1) for _ in range(n_payload)], rng)
    ct = encrypt_block(pub, block, sample_noise(block.n_total, rng))
    report = assp_density(pub.n_tilde, pub.M)
    weights, var_map = expand_assp_to_ssp(pub)
    start = time.perf_counter()
    solution = lattice_attack(weights, ct.S, pub.M, assp_map=var_map, max_wraps=max_wraps)
    elapsed = (time.perf_counter() - start) * 1000
    outcome = "recovered" if solution is not None else "failed"
    return ExperimentRow(pub.n_tilde, math.log2(pub.M), report.density, outcome, elapsed)

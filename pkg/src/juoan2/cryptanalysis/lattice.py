"""Subset-sum attack lattices and the reduction-based recovery procedure."""

from __future__ import annotations

from math import isqrt
from typing import Sequence

from ..encrypt import compute_L
from ..errors import ParameterError
from ..keygen import PublicKey
from .lll import DEFAULT_DELTA, IntegerLattice, basis_from_generators, lll_reduce

# (position, power) per expanded bit-variable
VarMap = tuple[tuple[int, int], ...]


def build_ssp_lattice(weights: Sequence[int], S: int, M: int) -> IntegerLattice:
    """Doubled-coordinate embedding of the modular subset sum into a lattice.

    Rows are generators, not a basis: the modulus row makes wraparound sums
    reachable but is linearly dependent on the rest over the rationals.
    A 0/1 solution x appears as the vector (2x - 1 | 0) of norm sqrt(n).
    """
    n = len(weights)
    if n < 1:
        raise ParameterError("need at least one weight")
    if not 0 <= S < M:
        raise ParameterError(f"target {S} outside [0, {M})")
    scale = isqrt(n + 1) + 1  # smallest integer > sqrt(n+1)
    rows = []
    for i, w in enumerate(weights):
        row = [0] * (n + 1)
        row[i] = 2
        row[n] = scale * w
        rows.append(tuple(row))
    rows.append(tuple([1] * n + [scale * S]))
    rows.append(tuple([0] * n + [scale * M]))
    return IntegerLattice(tuple(rows))


def build_plain_ssp_lattice(weights: Sequence[int], T: int) -> IntegerLattice:
    """Doubled-coordinate embedding of the exact (non-modular) sum T.

    Without a modulus row every coefficient relation must hold over the
    integers, so short junk vectors are rare at low density.  A 0/1 solution
    x of sum(x_i w_i) = T appears as (2x - 1 | 0) of norm sqrt(n).
    """
    n = len(weights)
    if n < 1:
        raise ParameterError("need at least one weight")
    scale = isqrt(n + 1) + 1
    rows = []
    for i, w in enumerate(weights):
        row = [0] * (n + 1)
        row[i] = 2
        row[n] = scale * w
        rows.append(tuple(row))
    rows.append(tuple([1] * n + [scale * T]))
    return IntegerLattice(tuple(rows))


def expand_assp_to_ssp(pub: PublicKey) -> tuple[tuple[int, ...], VarMap]:
    """Rewrite the anomalous sum as a plain subset sum over bit variables.

    Position i's multiplicity is at most n - i + 1, so it gets one bit
    variable per binary digit of that cap, with weights 2^t * C_i mod M.
    """
    n = pub.n_tilde
    weights = []
    var_map = []
    for i in range(1, n + 1):
        for t in range((n - i + 1).bit_length()):
            weights.append((pub.C[i - 1] << t) % pub.M)
            var_map.append((i, t))
    return tuple(weights), tuple(var_map)


def kappa_from_assignment(x: Sequence[int], var_map: VarMap) -> dict[int, int]:
    """Rebuild per-position multiplicities from an expanded bit assignment."""
    kappa: dict[int, int] = {}
    for bit, (i, t) in zip(x, var_map):
        if bit:
            kappa[i] = kappa.get(i, 0) + (1 << t)
    return kappa


def block_from_kappa(kappa: dict[int, int], n_tilde: int) -> tuple[int, ...] | None:
    """Map multiplicities back to plaintext bits, or None if inconsistent.

    Scanning from the high position down with a running count L, a valid
    multiplicity is L+1 (a set bit), L with L > 0 (a noise term), or 0.
    """
    bits = [0] * n_tilde
    level = 0
    for i in range(n_tilde, 0, -1):
        k = kappa.get(i, 0)
        if k == level + 1:
            level += 1
            bits[i - 1] = 1
        elif k and k != level:
            return None
    return tuple(bits)


def _solution_from_vector(
    vec: Sequence[int], n: int, weights: Sequence[int], S: int, M: int
) -> tuple[int, ...] | None:
    """Decode a reduced vector of shape +-(2x - 1 | 0) into verified bits x."""
    if vec[n] != 0 or any(abs(v) != 1 for v in vec[:n]):
        return None
    for sign in (1, -1):
        x = tuple((sign * v + 1) // 2 for v in vec[:n])
        if any(x) and sum(b * w for b, w in zip(x, weights)) % M == S:
            return x
    return None


def _scan_reduced(
    reduced: IntegerLattice,
    weights: Sequence[int],
    S: int,
    M: int,
    assp_map: VarMap | None,
) -> tuple[int, ...] | None:
    n = len(weights)
    for vec in reduced.rows:
        x = _solution_from_vector(vec, n, weights, S, M)
        if x is None:
            continue
        if assp_map is not None:
            n_tilde = max(i for i, _ in assp_map)
            block = block_from_kappa(kappa_from_assignment(x, assp_map), n_tilde)
            if block is None or not any(block):
                continue
        return x
    return None


def lattice_attack(
    weights: Sequence[int],
    S: int,
    M: int,
    assp_map: VarMap | None = None,
    max_wraps: int | None = None,
) -> tuple[int, ...] | None:
    """LLL attack lattices and scan reduced rows for a verified solution.

    Returns the solution bits over `weights`, or None.  With `assp_map`, a
    candidate must additionally decode to a structurally consistent block.

    The modular lattice goes first, but the modulus row together with the
    dense target row spans a parity sublattice (any uniform-parity vector
    with zero last coordinate is an integer combination of the generators
    once gcd(2S - sum(w), M) divides the residue), so its reduction is
    usually junk.  The productive path guesses the wraparound count m and
    attacks the exact sum S + m*M without a modulus row; m is below
    len(weights) because each weight is below M.  `max_wraps` caps the
    guesses (default: all of them).
    """
    if max_wraps is None:
        max_wraps = len(weights) - 1
    basis = basis_from_generators(build_ssp_lattice(weights, S, M))
    x = _scan_reduced(lll_reduce(basis, DEFAULT_DELTA), weights, S, M, assp_map)
    if x is not None:
        return x
    for m in range(max_wraps + 1):
        reduced = lll_reduce(build_plain_ssp_lattice(weights, S + m * M), DEFAULT_DELTA)
        x = _scan_reduced(reduced, weights, S, M, assp_map)
        if x is not None:
            return x
    return None


def reencode_assp_sum(pub: PublicKey, bits: Sequence[int], noise_positions: Sequence[int]) -> int:
    """Anomalous sum of a (block, noise inclusion) pattern; oracle-side helper."""
    levels = compute_L(bits)
    total = sum(levels[i] * pub.C[i] for i in range(len(bits)) if bits[i])
    total += sum(levels[p - 1] * pub.C[p - 1] for p in noise_positions)
    return total % pub.M

"""Key generation: extra superincreasing sequences, modulus, units, lever, public transform."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from random import Random
from typing import Sequence

from .errors import DegeneratePublicElementError, ParameterError, SequenceTooLargeError

# Lower bound on the modulus bit length is ceil(1.585 * n_tilde); 1.585 = 317/200
# is kept as an exact rational so the bound never wobbles with float rounding.
_LG_RATIO_NUM = 317
_LG_RATIO_DEN = 200



@dataclass(frozen=True)
class ExtraSuperincreasingSeq:
    """Private sequence where each element dominates the weighted prefix sum."""

    A: tuple[int, ...]

    @property
    def n_tilde(self) -> int:
        return len(self.A)


@dataclass(frozen=True)
class LeverPermutation:
    """Injection from positions 1..n into [1, 2n]; transient, never serialized."""

    ell: tuple[int, ...]

    @property
    def n_tilde(self) -> int:
        return len(self.ell)


@dataclass(frozen=True)
class PublicKey:
    C: tuple[int, ...]
    M: int
    n_payload: int

    @property
    def n_tilde(self) -> int:
        return len(self.C)


@dataclass(frozen=True)
class PrivateKey:
    A: ExtraSuperincreasingSeq
    neg_w: int
    delta_inv: int
    M: int
    n_payload: int

    @property
    def n_tilde(self) -> int:
        return self.A.n_tilde


def weighted_sum(seq: Sequence[int]) -> int:
    """Sum of (n+1-i) * A_i, the budget the modulus must exceed."""
    n = len(seq)
    return sum((n - i) * a for i, a in enumerate(seq))


def ceil_lg(m: int) -> int:
    """Ceiling of log2(m) for m >= 1, computed exactly."""
    if m < 1:
        raise ParameterError(f"ceil_lg needs m >= 1, got {m}")
    return (m - 1).bit_length()


def min_modulus_bits(n_tilde: int) -> int:
    """Smallest admissible ceil(lg M), i.e. ceil(1.585 * n_tilde)."""
    return -((-_LG_RATIO_NUM * n_tilde) // _LG_RATIO_DEN)


def validate_extra_superincreasing(seq: Sequence[int]) -> bool:
    """True iff A_2 > A_1 + 1 and every later A_i exceeds sum of (i-j)*A_j."""
    a = list(seq)
    if not a:
        raise ParameterError("empty sequence")
    if any(x < 1 for x in a):
        return False
    if len(a) >= 2 and a[1] <= a[0] + 1:
        return False
    plain = a[0] + (a[1] if len(a) > 1 else 0)  # sum of A_j for j < i
    bound = 2 * a[0] + (a[1] if len(a) > 1 else 0)  # sum of (i-j)*A_j for next i
    for i in range(2, len(a)):
        if a[i] <= bound:
            return False
        plain += a[i]
        bound += plain
    return True


def check_property1(seq: ExtraSuperincreasingSeq, k: int) -> bool:
    """Check (k+1)*A_i > sum of (k+i-j)*A_j over j < i, for every i > 1."""
    a = seq.A
    plain = 0  # sum of A_j, j < i
    weighted = 0  # sum of (i-j)*A_j, j < i
    for i in range(1, len(a)):
        weighted += plain + a[i - 1]
        plain += a[i - 1]
        if (k + 1) * a[i] <= k * plain + weighted:
            return False
    return True


def gen_extra_superincreasing(n_tilde: int, rng: Random) -> ExtraSuperincreasingSeq:
    """Randomly generate a valid sequence.

    Each element lands uniformly in (bound, 2*bound] above its structural
    lower bound.  The resulting weighted sum has roughly 1.67 bits per
    position: comfortably inside the 2-bits-per-position modulus ceiling,
    but above the lg 3 bits per position that the plaintext/noise pattern
    space occupies, so targets rarely admit more than one decomposition.
    Minimal-growth sequences (weighted sums near 1.43 bits per position)
    would leave every shifted residue with exponentially many decompositions,
    making decryption intractable.
    """
    if n_tilde < 2:
        raise ParameterError(f"n_tilde must be >= 2, got {n_tilde}")
    a = [rng.randint(1, 4)]
    plain = a[0]
    bound = a[0]  # sum of (i-j)*A_j for the *next* position
    for i in range(1, n_tilde):
        lower = a[0] + 1 if i == 1 else bound
        a.append(lower + rng.randint(1, lower))
        plain += a[-1]
        bound += plain
    return ExtraSuperincreasingSeq(tuple(a))


def select_modulus(seq: ExtraSuperincreasingSeq, rng: Random, bits: int | None = None) -> int:
    """Sample M > weighted_sum(A) at an admissible bit length.

    By default the bit length is drawn at random from the admissible window
    [ceil(1.585 n), 2n].  Callers may pin `bits`; key generation pins the top
    of the window because the window's floor (lg 3 per position) is exactly
    the bit budget of the plaintext/noise pattern space, so a modulus near
    the floor makes ciphertexts measurably ambiguous.
    """
    total = weighted_sum(seq.A)
    lo_bits = min_modulus_bits(seq.n_tilde)
    hi_bits = 2 * seq.n_tilde
    first = max(lo_bits, total.bit_length())
    if first > hi_bits:
        raise SequenceTooLargeError(
            f"weighted sum needs {total.bit_length()} bits, ceiling is {hi_bits}"
        )
    if bits is None:
        bits = rng.randint(first, hi_bits)
    elif not first <= bits <= hi_bits:
        raise ParameterError(f"bit length {bits} outside admissible [{first}, {hi_bits}]")
    low = max(total, 1 << (bits - 1))  # M in (low, 2^bits]
    return rng.randint(low + 1, 1 << bits)


def sample_units(M: int, rng: Random) -> tuple[int, int, int, int]:
    """Pick W and an invertible delta; return (W, delta, -W mod M, delta^-1 mod M)."""
    if M < 3:
        raise ParameterError(f"modulus must be >= 3, got {M}")
    w = rng.randint(1, M - 1)
    while True:
        delta = rng.randint(1, M - 1)
        if gcd(delta, M) == 1:
            break
    return w, delta, M - w, pow(delta, -1, M)


def sample_lever(n_tilde: int, rng: Random) -> LeverPermutation:
    """Uniform injection of positions 1..n_tilde into [1, 2*n_tilde]."""
    if n_tilde < 1:
        raise ParameterError(f"n_tilde must be >= 1, got {n_tilde}")
    return LeverPermutation(tuple(rng.sample(range(1, 2 * n_tilde + 1), n_tilde)))


def derive_public(
    seq: ExtraSuperincreasingSeq,
    w: int,
    delta: int,
    lever: LeverPermutation,
    M: int,
    n_payload: int,
) -> PublicKey:
    """Compute C_i = (A_i + W * ell(i)) * delta mod M; every element must be nonzero."""
    if seq.n_tilde != lever.n_tilde:
        raise ParameterError("sequence and lever lengths differ")
    if gcd(delta, M) != 1:
        raise ParameterError("delta is not invertible mod M")
    c = tuple((a + w * e) * delta % M for a, e in zip(seq.A, lever.ell))
    if any(x == 0 for x in c):
        raise DegeneratePublicElementError("public element hit zero; resample")
    return PublicKey(c, M, n_payload)


def keygen(n_payload: int, rng: Random) -> tuple[PublicKey, PrivateKey]:
    """Full pipeline with retries; the lever permutation never leaves this frame."""
    if n_payload < 4 or n_payload % 2:
        raise ParameterError(f"n_payload must be even and >= 4, got {n_payload}")
    n_tilde = 3 * n_payload // 2
    while True:
        seq = gen_extra_superincreasing(n_tilde, rng)
        try:
            M = select_modulus(seq, rng, bits=2 * n_tilde)
        except SequenceTooLargeError:
            continue
        while True:
            w, delta, neg_w, delta_inv = sample_units(M, rng)
            lever = sample_lever(n_tilde, rng)
            try:
                pub = derive_public(seq, w, delta, lever, M, n_payload)
            except DegeneratePublicElementError:
                continue
            return pub, PrivateKey(seq, neg_w, delta_inv, M, n_payload)

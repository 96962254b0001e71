"""Randomized block encryption: padding, noise, and the anomalous-sum loop."""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Sequence

from .errors import ParameterError
from .keygen import PublicKey

Bits = tuple[int, ...]


@dataclass(frozen=True)
class BitBlock:
    """Payload bits followed by padding; nonzero as a whole."""

    bits: Bits
    n_payload: int

    @property
    def n_total(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class NoiseVector:
    bits: Bits


@dataclass(frozen=True)
class Ciphertext:
    S: int


def compute_L(bits: Sequence[int]) -> list[int]:
    """Running count of 1-bits at positions >= i (suffix popcount)."""
    out = [0] * len(bits)
    acc = 0
    for i in range(len(bits) - 1, -1, -1):
        acc += bits[i]
        out[i] = acc
    return out


def extend_block(payload: Sequence[int], rng: Random) -> BitBlock:
    """Append n/2 padding bits; the first padding bit is forced to 1.

    The forced bit keeps every extended block nonzero even when the payload
    is all zeros; the payload itself is untouched.
    """
    n = len(payload)
    if n < 2 or n % 2:
        raise ParameterError(f"payload length must be even and >= 2, got {n}")
    pad = [1] + [rng.randint(0, 1) for _ in range(n // 2 - 1)]
    return BitBlock(tuple(payload) + tuple(pad), n)


def sample_noise(n_total: int, rng: Random) -> NoiseVector:
    return NoiseVector(tuple(rng.randint(0, 1) for _ in range(n_total)))


def encrypt_block(pub: PublicKey, block: BitBlock, noise: NoiseVector) -> Ciphertext:
    """Accumulate S += L*C_i scanning i = n..1.

    A set bit first increments the multiplicity L; a noise bit at a zero
    position reuses the current L.  Noise under a set bit is inert.
    """
    n = pub.n_tilde
    if block.n_total != n or len(noise.bits) != n:
        raise ParameterError(
            f"block/noise length must be {n}, got {block.n_total}/{len(noise.bits)}"
        )
    if not any(block.bits):
        raise ParameterError("all-zero block cannot be encrypted")
    s = 0
    level = 0
    for b, r, c in zip(reversed(block.bits), reversed(noise.bits), reversed(pub.C)):
        if b:
            level += 1
            s += level * c
        elif r:
            s += level * c
    return Ciphertext(s % pub.M)


def bytes_to_bits(data: bytes) -> list[int]:
    return [(byte >> (7 - j)) & 1 for byte in data for j in range(8)]


def bits_to_bytes(bits: Sequence[int]) -> bytes:
    if len(bits) % 8:
        raise ParameterError(f"bit count {len(bits)} is not a whole number of bytes")
    return bytes(
        sum(bits[i + j] << (7 - j) for j in range(8)) for i in range(0, len(bits), 8)
    )


def encrypt_message(pub: PublicKey, message: bytes, rng: Random) -> list[Ciphertext]:
    """Split into n-bit blocks with 10* terminal padding, encrypt each with fresh noise.

    A terminator bit is always appended, so a message that fills its blocks
    exactly gains one pure padding block.
    """
    n = pub.n_payload
    bits = bytes_to_bits(message)
    bits.append(1)
    bits.extend([0] * (-len(bits) % n))
    out = []
    for i in range(0, len(bits), n):
        block = extend_block(bits[i : i + n], rng)
        out.append(encrypt_block(pub, block, sample_noise(block.n_total, rng)))
    return out

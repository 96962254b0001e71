"""JUOAN2: a knapsack-style asymmetric cryptosystem built on anomalous subset sums.

Key generation hides an extra superincreasing sequence behind a modular
affine transform with a discarded lever injection; encryption randomizes
each block with a noise vector; decryption scans a bounded counter, undoing
the transform one -W step at a time until a greedy decomposition closes.

The :mod:`juoan2.cryptanalysis` subpackage is the other side of the desk:
density metrics, exact LLL reduction, subset-sum attack lattices, and
brute-force oracles for testing the scheme's claims at small scale.
"""

from .codec import (
    BitRangeWarning,
    decode_ciphertext,
    decode_key,
    encode_ciphertext,
    encode_key,
)
from .decrypt import (
    DecryptTrace,
    GreedyStep,
    audit_decrypt_block,
    decrypt_block,
    decrypt_message,
    default_k_max,
    greedy_decompose,
)
from .encrypt import (
    BitBlock,
    Ciphertext,
    NoiseVector,
    compute_L,
    encrypt_block,
    encrypt_message,
    extend_block,
    sample_noise,
)
from .errors import (
    DecodeError,
    DegeneratePublicElementError,
    FramingError,
    InvalidCiphertextError,
    ParameterError,
    SequenceTooLargeError,
)
from .keygen import (
    ExtraSuperincreasingSeq,
    LeverPermutation,
    PrivateKey,
    PublicKey,
    derive_public,
    gen_extra_superincreasing,
    keygen,
    validate_extra_superincreasing,
)

__version__ = "1.0.0"

__all__ = [
    "BitBlock",
    "BitRangeWarning",
    "Ciphertext",
    "DecodeError",
    "DecryptTrace",
    "DegeneratePublicElementError",
    "ExtraSuperincreasingSeq",
    "FramingError",
    "GreedyStep",
    "InvalidCiphertextError",
    "LeverPermutation",
    "NoiseVector",
    "ParameterError",
    "PrivateKey",
    "PublicKey",
    "SequenceTooLargeError",
    "audit_decrypt_block",
    "compute_L",
    "decode_ciphertext",
    "decode_key",
    "decrypt_block",
    "decrypt_message",
    "default_k_max",
    "derive_public",
    "encode_ciphertext",
    "encode_key",
    "encrypt_block",
    "encrypt_message",
    "extend_block",
    "gen_extra_superincreasing",
    "greedy_decompose",
    "keygen",
    "sample_noise",
    "validate_extra_superincreasing",
]

"""Shared fixtures: the worked ntilde=8 reference key and its vectors."""

import pytest

from juoan2 import (
    ExtraSuperincreasingSeq,
    LeverPermutation,
    PrivateKey,
    derive_public,
)

REF_A = (2, 4, 11, 29, 76, 199, 523, 1368)
REF_M = 3581
REF_W = 863
REF_DELTA = 1128
REF_DELTA_INV = 1127
REF_NEG_W = 2718
REF_LEVER = (13, 2, 9, 7, 8, 3, 6, 11)
REF_C = (2034, 3376, 134, 88, 2402, 746, 2833, 607)
REF_BITS = (1, 0, 1, 0, 1, 0, 0, 1)
REF_NOISE = (0, 0, 1, 0, 0, 1, 1, 1)
REF_S = 3204
REF_S0 = 1260
REF_K = 115
REF_INTERMEDIATE = 2283
REF_BRANCHES = ("one", "noise", "noise", "one", "skip", "one", "skip", "one")

# A second extra superincreasing sequence used by uniqueness checks.
ALT_SEQ = (1, 3, 8, 21, 54, 139, 367, 960)


@pytest.fixture(scope="session")
def ref_seq() -> ExtraSuperincreasingSeq:
    return ExtraSuperincreasingSeq(REF_A)


@pytest.fixture(scope="session")
def ref_pub(ref_seq):
    return derive_public(
        ref_seq, REF_W, REF_DELTA, LeverPermutation(REF_LEVER), REF_M, n_payload=8
    )


@pytest.fixture(scope="session")
def ref_prv(ref_seq):
    return PrivateKey(ref_seq, REF_NEG_W, REF_DELTA_INV, REF_M, n_payload=8)

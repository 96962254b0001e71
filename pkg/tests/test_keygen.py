"""Key generation: sequence structure, modulus window, transform, retries."""

from random import Random

import pytest

from juoan2 import (
    DegeneratePublicElementError,
    ExtraSuperincreasingSeq,
    LeverPermutation,
    ParameterError,
    derive_public,
    gen_extra_superincreasing,
    keygen,
    validate_extra_superincreasing,
)
from juoan2.keygen import (
    ceil_lg,
    check_property1,
    min_modulus_bits,
    sample_lever,
    sample_units,
    select_modulus,
    weighted_sum,
)

from conftest import ALT_SEQ, REF_A, REF_C, REF_DELTA, REF_LEVER, REF_M, REF_W


def test_reference_sequences_are_extra_superincreasing():
    assert validate_extra_superincreasing(REF_A)
    assert validate_extra_superincreasing(ALT_SEQ)


def test_validate_rejects_violations():
    assert not validate_extra_superincreasing((1, 2, 8))  # A_2 must exceed A_1 + 1
    assert not validate_extra_superincreasing((2, 4, 8))  # A_3 <= 2*A_1 + A_2
    assert not validate_extra_superincreasing((0, 3, 8))
    assert not validate_extra_superincreasing((1, 3, 8, 21, 54, 139, 367, 900))
    with pytest.raises(ParameterError):
        validate_extra_superincreasing(())


def test_plain_superincreasing_is_not_enough():
    # Powers of two are superincreasing yet fail the weighted bound.
    assert not validate_extra_superincreasing((1, 2, 4, 8, 16))


def test_ceil_lg_and_modulus_floor():
    assert [ceil_lg(m) for m in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    with pytest.raises(ParameterError):
        ceil_lg(0)
    assert min_modulus_bits(8) == 13  # ceil(1.585 * 8) = ceil(12.68)
    assert min_modulus_bits(12) == 20
    # The worked reference modulus actually sits one bit under the floor;
    # the codec loads such keys with a warning rather than rejecting them.
    assert ceil_lg(REF_M) == min_modulus_bits(8) - 1


def test_weighted_sum_reference():
    # sum of (9 - i) * A_i for the reference sequence, within the modulus.
    assert weighted_sum(REF_A) == 3570
    assert weighted_sum(REF_A) < REF_M


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("n_tilde", [2, 3, 8, 24, 96])
def test_generated_sequences_validate(n_tilde, seed):
    seq = gen_extra_superincreasing(n_tilde, Random(seed))
    assert validate_extra_superincreasing(seq.A)
    assert check_property1(seq, k=n_tilde * n_tilde * (n_tilde + 1))


def test_property1_reference_small_k():
    seq = ExtraSuperincreasingSeq(REF_A)
    for k in (0, 1, 7, 115):
        assert check_property1(seq, k)


def test_select_modulus_window():
    seq = gen_extra_superincreasing(8, Random(1))
    for seed in range(20):
        m = select_modulus(seq, Random(seed))
        assert m > weighted_sum(seq.A)
        assert min_modulus_bits(8) <= ceil_lg(m) <= 16
    pinned = select_modulus(seq, Random(0), bits=16)
    assert ceil_lg(pinned) == 16
    with pytest.raises(ParameterError):
        select_modulus(seq, Random(0), bits=5)


def test_sample_units_invertible():
    for seed in range(20):
        w, delta, neg_w, delta_inv = sample_units(REF_M, Random(seed))
        assert (w + neg_w) % REF_M == 0
        assert delta * delta_inv % REF_M == 1


def test_sample_lever_is_injection():
    for seed in range(20):
        lever = sample_lever(8, Random(seed))
        assert len(set(lever.ell)) == 8
        assert all(1 <= e <= 16 for e in lever.ell)


def test_derive_public_reference_vector(ref_pub):
    assert ref_pub.C == REF_C
    assert ref_pub.M == REF_M


def test_derive_public_rejects_zero_element():
    # A_1 + W * ell(1) = M makes C_1 = 0.
    seq = ExtraSuperincreasingSeq(REF_A)
    w = (REF_M - REF_A[0])  # with lever value 1: (A_1 + W) % M == 0
    lever = LeverPermutation((1, 2, 3, 4, 5, 6, 7, 8))
    with pytest.raises(DegeneratePublicElementError):
        derive_public(seq, w, 1, lever, REF_M, 8)


def test_derive_public_rejects_mismatched_lever():
    with pytest.raises(ParameterError):
        derive_public(
            ExtraSuperincreasingSeq(REF_A), REF_W, REF_DELTA,
            LeverPermutation(REF_LEVER[:4]), REF_M, 8,
        )


@pytest.mark.parametrize("n", [4, 8, 16])
def test_keygen_produces_consistent_pair(n):
    pub, prv = keygen(n, Random(42))
    assert pub.n_tilde == prv.n_tilde == 3 * n // 2
    assert pub.M == prv.M
    assert validate_extra_superincreasing(prv.A.A)
    assert weighted_sum(prv.A.A) < prv.M
    assert all(0 < c < pub.M for c in pub.C)
    # The recorded units really invert the hidden transform domain.
    assert ceil_lg(pub.M) == 2 * pub.n_tilde


def test_keygen_deterministic_for_seed():
    a = keygen(8, Random(7))
    b = keygen(8, Random(7))
    assert a == b


@pytest.mark.parametrize("bad_n", [0, 2, 3, 5, 7])
def test_keygen_rejects_bad_sizes(bad_n):
    with pytest.raises(ParameterError):
        keygen(bad_n, Random(0))

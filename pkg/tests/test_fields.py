"""Tower-field arithmetic properties."""

import random

from pmpdas import fields as F


def _rand_fp2(rng):
    return (rng.randrange(F.P), rng.randrange(F.P))


def _rand_fp12(rng):
    return tuple(tuple(_rand_fp2(rng) for _ in range(3)) for _ in range(2))


def test_fp2_field_axioms():
    rng = random.Random(1)
    for _ in range(20):
        a, b, c = (_rand_fp2(rng) for _ in range(3))
        assert F.fp2_mul(a, b) == F.fp2_mul(b, a)
        assert F.fp2_mul(F.fp2_mul(a, b), c) == F.fp2_mul(a, F.fp2_mul(b, c))
        assert F.fp2_mul(a, F.fp2_add(b, c)) == \
            F.fp2_add(F.fp2_mul(a, b), F.fp2_mul(a, c))
        assert F.fp2_sqr(a) == F.fp2_mul(a, a)
        if not F.fp2_is_zero(a):
            assert F.fp2_mul(a, F.fp2_inv(a)) == F.FP2_ONE


def test_fp2_sqrt_of_squares():
    rng = random.Random(2)
    for _ in range(20):
        a = _rand_fp2(rng)
        sq = F.fp2_sqr(a)
        root = F.fp2_sqrt(sq)
        assert root is not None
        assert F.fp2_sqr(root) == sq


def test_fp2_frobenius_is_conjugation():
    rng = random.Random(3)
    for _ in range(10):
        a = _rand_fp2(rng)
        assert F.fp2_pow(a, F.P) == F.fp2_conj(a)


def test_fp12_inverse_and_square():
    rng = random.Random(4)
    for _ in range(5):
        a = _rand_fp12(rng)
        assert F.fp12_mul(a, F.fp12_inv(a)) == F.FP12_ONE
        assert F.fp12_sqr(a) == F.fp12_mul(a, a)


def test_fp12_frobenius_matches_pth_power():
    rng = random.Random(5)
    a = _rand_fp12(rng)
    assert F.fp12_frobenius(a) == F.fp12_pow(a, F.P)


def test_final_exponentiation_lands_in_r_torsion():
    rng = random.Random(6)
    for _ in range(3):
        y = F.final_exponentiation(_rand_fp12(rng))
        assert F.fp12_pow(y, F.R) == F.FP12_ONE
        assert y != F.FP12_ONE  # random input is not in the kernel

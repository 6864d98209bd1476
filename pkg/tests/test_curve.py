"""Curve group law, serialization, and pairing checks."""

import random

import pytest

from pmpdas.curve import (
    CurveError, G1Point, G2Point, g1_msm, g2_msm, multi_pairing, pairing,
    pairing_check,
)
from pmpdas.fields import FP12_ONE, P, R, fp12_pow

# Standard compressed encodings of the subgroup generators.
G1_GEN_HEX = (
    "97f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac58"
    "6c55e83ff97a1aeffb3af00adb22c6bb")
G2_GEN_HEX = (
    "93e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049"
    "334cf11213945d57e5ac7d055d042b7e024aa2b2f08f0a91260805272dc51051"
    "c6e47ad4fa403b02b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8")


def test_generator_serialization_vectors():
    assert G1Point.generator().to_bytes().hex() == G1_GEN_HEX
    assert G2Point.generator().to_bytes().hex() == G2_GEN_HEX


def test_point_round_trips():
    rng = random.Random(10)
    for _ in range(8):
        k = rng.randrange(R)
        p1 = G1Point.generator() * k
        assert G1Point.from_bytes(p1.to_bytes()) == p1
        p2 = G2Point.generator() * k
        assert G2Point.from_bytes(p2.to_bytes()) == p2


def test_identity_encoding():
    inf1 = G1Point.identity()
    blob = inf1.to_bytes()
    assert blob[0] == 0xC0 and set(blob[1:]) == {0}
    assert G1Point.from_bytes(blob) == inf1
    inf2 = G2Point.identity()
    assert G2Point.from_bytes(inf2.to_bytes()) == inf2


def test_group_law_consistency():
    rng = random.Random(11)
    g = G1Point.generator()
    a, b = rng.randrange(R), rng.randrange(R)
    assert g * a + g * b == g * ((a + b) % R)
    assert g * a - g * a == G1Point.identity()
    assert -(g * a) == g * (R - a)
    h = G2Point.generator()
    assert h * a + h * b == h * ((a + b) % R)


def test_scalar_multiplication_by_group_order():
    assert G1Point.generator() * R == G1Point.identity()
    assert G2Point.generator() * R == G2Point.identity()


@pytest.mark.parametrize("bad", [
    b"",
    b"\x00" * 48,                      # compression flag unset
    b"\xc0" + b"\x01" + b"\x00" * 46,  # nonzero tail on infinity
    b"\xe0" + b"\x00" * 47,            # infinity with sign flag set
    b"\xff" * 48,                      # x >= p after masking
])
def test_invalid_g1_encodings_rejected(bad):
    with pytest.raises(CurveError):
        G1Point.from_bytes(bad)


def test_non_subgroup_point_rejected():
    # find an on-curve x whose point is (overwhelmingly) outside the
    # r-torsion subgroup, then check deserialization refuses it
    for x in range(2, 200):
        y2 = (pow(x, 3, P) + 4) % P
        y = pow(y2, (P + 1) // 4, P)
        if y * y % P != y2:
            continue
        flags = 0x80 | (0x20 if y > P - y else 0)
        blob = bytes([flags | (x >> 376 & 0x1F)]) + \
            (x & (1 << 376) - 1).to_bytes(47, "big")
        candidate = G1Point.from_bytes(blob, subgroup_check=False)
        if candidate.in_subgroup():
            continue
        with pytest.raises(CurveError):
            G1Point.from_bytes(blob)
        return
    pytest.fail("no non-subgroup point found in range")


def test_msm_matches_naive_sum():
    rng = random.Random(12)
    pts = [G1Point.generator() * rng.randrange(R) for _ in range(7)]
    scalars = [rng.randrange(R) for _ in range(7)]
    naive = G1Point.identity()
    for p, s in zip(pts, scalars):
        naive = naive + p * s
    assert g1_msm(pts, scalars) == naive
    pts2 = [G2Point.generator() * rng.randrange(R) for _ in range(3)]
    sc2 = [rng.randrange(R) for _ in range(3)]
    naive2 = pts2[0] * sc2[0] + pts2[1] * sc2[1] + pts2[2] * sc2[2]
    assert g2_msm(pts2, sc2) == naive2


def test_pairing_bilinearity():
    rng = random.Random(13)
    g1, g2 = G1Point.generator(), G2Point.generator()
    a, b = rng.randrange(1, R), rng.randrange(1, R)
    # e(aP, bQ) == e(abP, Q): product with the inverse must be one
    assert pairing_check([(g1 * a, g2 * b), (-(g1 * (a * b % R)), g2)])
    # and not one when the scalars disagree
    assert not pairing_check([(g1 * a, g2 * b), (-(g1 * (a * b % R + 1)), g2)])


def test_pairing_nondegenerate_and_r_torsion():
    e = pairing(G1Point.generator(), G2Point.generator())
    assert e != FP12_ONE
    assert fp12_pow(e, R) == FP12_ONE


def test_multi_pairing_skips_identity_pairs():
    g1, g2 = G1Point.generator(), G2Point.generator()
    assert multi_pairing([(G1Point.identity(), g2)]) == FP12_ONE
    assert multi_pairing([(g1, G2Point.identity())]) == FP12_ONE

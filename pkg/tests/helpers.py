"""Shared test fixtures: a known-secret setup whose secret the tests keep,
so every group-element result can be recomputed in the scalar field."""

import hashlib

from pmpdas.curve import G1Point, G2Point
from pmpdas.field_poly import SCALAR_MODULUS, Polynomial
from pmpdas.kzg import SRS, gen

# The whole point of the oracle: tests know the setup secret, production
# callers never do.
ORACLE_SECRET = int.from_bytes(
    hashlib.sha256(b"known-secret-test-oracle").digest(), "big") % SCALAR_MODULUS

_SRS_CACHE: dict[int, SRS] = {}


def shared_srs(degree_bound: int) -> SRS:
    srs = _SRS_CACHE.get(degree_bound)
    if srs is None:
        srs = gen(degree_bound, ORACLE_SECRET)
        _SRS_CACHE[degree_bound] = srs
    return srs


def g1_at(value: int) -> G1Point:
    return G1Point.generator() * (value % SCALAR_MODULUS)


def g2_at(value: int) -> G2Point:
    return G2Point.generator() * (value % SCALAR_MODULUS)


def oracle_commit(p: Polynomial) -> G1Point:
    """What a commitment to p must equal: [p(secret)] in G1."""
    return g1_at(p.evaluate(ORACLE_SECRET))


def rand_scalar(rng) -> int:
    return rng.randrange(SCALAR_MODULUS)


def rand_poly(rng, degree: int) -> Polynomial:
    if degree < 0:
        return Polynomial()
    coeffs = [rand_scalar(rng) for _ in range(degree + 1)]
    coeffs[-1] = coeffs[-1] or 1
    return Polynomial(coeffs)

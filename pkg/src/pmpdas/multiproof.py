"""Shared-point aggregated openings.

One aggregated proof attests to the evaluations of k committed polynomials
over a single shared micro-domain. The challenge that weights the
polynomials is always derived from a canonical transcript binding the SRS,
the ordered commitment list, the micro-domain, the covered coordinates,
and the block-region metadata.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .curve import G1Point, G2Point, g1_msm, pairing_check
from .field_poly import (
    SCALAR_MODULUS, Polynomial, div_rem, interpolate, scalar_to_bytes,
    vanishing_poly, MicroDomain,
)
from .kzg import SRS, OpCounters, commit

TRANSCRIPT_TAG = b"PMP-DAS-v1"


class MultiproofError(ValueError):
    pass


@dataclass(frozen=True)
class AggregatedProof:
    """Commitment to the aggregated quotient polynomial."""

    witness: G1Point

    def to_bytes(self) -> bytes:
        return self.witness.to_bytes()

    @staticmethod
    def from_bytes(data: bytes) -> "AggregatedProof":
        return AggregatedProof(G1Point.from_bytes(data))


@dataclass(frozen=True)
class OpenedGroup:
    """Commitments plus the full evaluation vector of each one on a shared
    micro-domain; the transported unit a verifier checks in one shot."""

    commitments: tuple
    values: tuple  # k rows, each of exactly micro_domain.size scalars
    micro_domain: MicroDomain

    def __init__(self, commitments, values, micro_domain):
        commitments = tuple(commitments)
        values = tuple(tuple(v % SCALAR_MODULUS for v in row) for row in values)
        if not commitments:
            raise MultiproofError("opened group needs at least one commitment")
        if len(values) != len(commitments):
            raise MultiproofError("one value row per commitment required")
        g = micro_domain.size
        for row in values:
            if len(row) != g:
                raise MultiproofError(
                    "each value row must cover the full micro-domain")
        object.__setattr__(self, "commitments", commitments)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "micro_domain", micro_domain)


@dataclass(frozen=True)
class Transcript:
    """Challenge-derivation context; serialization is injective by fixed
    widths and length prefixes."""

    srs_id: bytes
    commitments: tuple
    micro_domain: MicroDomain
    coords: tuple  # ((row, col), ...) as 32-bit pairs
    gcell_block: "GCellBlock"
    domain_tag: bytes = TRANSCRIPT_TAG

    def serialize(self) -> bytes:
        out = bytearray()
        out += self.domain_tag
        out += self.srs_id
        out += len(self.commitments).to_bytes(4, "big")
        for cm in self.commitments:
            out += cm.to_bytes()
        out += len(self.micro_domain).to_bytes(4, "big")
        for z in self.micro_domain:
            out += scalar_to_bytes(z)
        out += len(self.coords).to_bytes(4, "big")
        for row, col in self.coords:
            out += int(row).to_bytes(4, "big")
            out += int(col).to_bytes(4, "big")
        out += self.gcell_block.to_bytes()
        return bytes(out)


def derive_gamma(transcript: Transcript) -> int:
    """Hash-to-scalar over the canonical transcript serialization.

    Wide reduction of a 64-byte digest keeps modulo bias negligible; the
    (negligible) zero case re-hashes with a counter so the challenge is
    always invertible.
    """
    digest = hashlib.sha512(transcript.serialize()).digest()
    gamma = int.from_bytes(digest, "big") % SCALAR_MODULUS
    ctr = 0
    while gamma == 0:
        ctr += 1
        gamma = int.from_bytes(
            hashlib.sha512(digest + ctr.to_bytes(4, "big")).digest(),
            "big") % SCALAR_MODULUS
    return gamma


def _gamma_powers(gamma: int, k: int):
    powers = []
    acc = 1
    for _ in range(k):
        powers.append(acc)
        acc = acc * gamma % SCALAR_MODULUS
    return powers


def open_shared(srs: SRS, polys, micro_domain: MicroDomain, gamma: int,
                counters: OpCounters | None = None) -> AggregatedProof:
    """Aggregated opening over one shared micro-domain.

    Commits the quotient of the gamma-weighted polynomial sum by the
    micro-domain's vanishing polynomial, discarding the remainder. The
    remainder is exactly the gamma-combined interpolant (its degree is
    below the micro-domain size), so no interpolation happens here.
    """
    polys = list(polys)
    if not polys:
        raise MultiproofError("need at least one polynomial")
    gamma %= SCALAR_MODULUS
    if gamma == 0:
        raise MultiproofError("challenge must be nonzero")
    d = srs.degree_bound
    g = micro_domain.size
    if g > d:
        raise MultiproofError("micro-domain larger than the SRS bound")
    combined = Polynomial()
    for w, p in zip(_gamma_powers(gamma, len(polys)), polys):
        if p.degree > d:
            raise MultiproofError("polynomial degree exceeds the SRS bound")
        combined = combined + p.scale(w)
    quotient, _ = div_rem(combined, vanishing_poly(micro_domain))
    cm = commit(srs, quotient, counters=counters, slots=d + 1 - g)
    return AggregatedProof(cm.point)


def verify_shared(srs: SRS, group: OpenedGroup, proof: AggregatedProof,
                  gamma: int, counters: OpCounters | None = None) -> bool:
    """Single aggregated pairing check for a whole opened group.

    Interpolates the gamma-combined value rows in one pass, then checks
    e(C - R, g2) == e(witness, [Z_md(x)]_2) with C the gamma-combination
    of the commitments and R the commitment to the combined interpolant.
    """
    if not isinstance(proof.witness, G1Point):
        raise MultiproofError("malformed aggregated proof")
    gamma %= SCALAR_MODULUS
    if gamma == 0:
        raise MultiproofError("challenge must be nonzero")
    md = group.micro_domain
    k = len(group.commitments)
    g = md.size
    weights = _gamma_powers(gamma, k)

    combined_values = [0] * g
    for w, row in zip(weights, group.values):
        for j, v in enumerate(row):
            combined_values[j] = (combined_values[j] + w * v) % SCALAR_MODULUS
    r_combined = interpolate(md.points, combined_values)
    if counters is not None:
        counters.interpolations += 1

    c_combined = g1_msm([cm.point for cm in group.commitments], weights)
    r_commit = commit(srs, r_combined, counters=counters, slots=g)
    # subtraction-side normalization: one explicit scalar multiplication
    neg_r = r_commit.point * (SCALAR_MODULUS - 1)
    if counters is not None:
        counters.g1_scalar_mults += k + 1
    lhs = c_combined + neg_r

    z2 = srs.cached_z_commitment(md, counters=counters)
    if counters is not None:
        counters.pairings += 2
    return pairing_check([(lhs, G2Point.generator()),
                          (-proof.witness, z2)])


def open_generic(srs: SRS, polys, opened_sets, values, gamma: int,
                 counters: OpCounters | None = None) -> AggregatedProof:
    """General multi-set aggregated opening; cross-check oracle for the
    shared-point specialization.

    Every (f_i - r_i) must be exactly divisible by the vanishing polynomial
    of its opened set; a nonzero remainder (dishonest values) is an error,
    never a silent truncation.
    """
    polys = list(polys)
    opened_sets = list(opened_sets)
    values = [list(v) for v in values]
    if not (len(polys) == len(opened_sets) == len(values)):
        raise MultiproofError("polys, opened sets, and values must align")
    if not polys:
        raise MultiproofError("need at least one polynomial")
    gamma %= SCALAR_MODULUS
    if gamma == 0:
        raise MultiproofError("challenge must be nonzero")
    h = Polynomial()
    for w, p, pts, vals in zip(_gamma_powers(gamma, len(polys)),
                               polys, opened_sets, values):
        if p.degree > srs.degree_bound:
            raise MultiproofError("polynomial degree exceeds the SRS bound")
        r_i = interpolate(pts, vals)
        q_i, rem = div_rem(p - r_i, vanishing_poly(pts))
        if not rem.is_zero():
            raise MultiproofError(
                "claimed values do not match the polynomial on its opened set")
        h = h + q_i.scale(w)
    return AggregatedProof(commit(srs, h, counters=counters).point)

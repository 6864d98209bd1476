"""BLS12-381 group arithmetic, compressed serialization, and the pairing.

G1 lives on y^2 = x^3 + 4 over Fp, G2 on y^2 = x^3 + 4(1+u) over Fp2.
Points are kept in Jacobian coordinates as plain tuples; the public
:class:`G1Point` / :class:`G2Point` wrappers are thin and immutable.

Serialization follows the common 48/96-byte compressed convention:
big-endian x with flag bits in the three high bits of the first byte
(compressed, infinity, lexicographically-largest y).
"""

from __future__ import annotations

from .fields import (
    P, R, BLS_X,
    FP2_ZERO, FP2_ONE, FP12_ONE,
    fp2_add, fp2_sub, fp2_neg, fp2_mul, fp2_sqr, fp2_inv, fp2_scalar_mul,
    fp2_is_zero, fp2_sqrt, fp2_lexicographically_largest,
    fp12_mul, fp12_sqr, fp12_conj, final_exponentiation,
)


class CurveError(ValueError):
    """Malformed or off-curve point encoding."""


# Jacobian infinity markers.
_INF1 = (0, 1, 0)
_INF2 = (FP2_ZERO, FP2_ONE, FP2_ZERO)

_B1 = 4
_B2 = (4, 4)  # 4 * (1 + u)


# ---------------------------------------------------------------------------
# G1 Jacobian arithmetic over ints

def _g1_double(pt):
    x, y, z = pt
    if z == 0:
        return pt
    a = x * x % P
    b = y * y % P
    c = b * b % P
    d = 2 * ((x + b) * (x + b) - a - c) % P
    e = 3 * a % P
    f = e * e % P
    x3 = (f - 2 * d) % P
    y3 = (e * (d - x3) - 8 * c) % P
    z3 = 2 * y * z % P
    return (x3, y3, z3)


def _g1_add(p1, p2):
    if p1[2] == 0:
        return p2
    if p2[2] == 0:
        return p1
    x1, y1, z1 = p1
    x2, y2, z2 = p2
    z1z1 = z1 * z1 % P
    z2z2 = z2 * z2 % P
    u1 = x1 * z2z2 % P
    u2 = x2 * z1z1 % P
    s1 = y1 * z2z2 * z2 % P
    s2 = y2 * z1z1 * z1 % P
    if u1 == u2:
        if s1 == s2:
            return _g1_double(p1)
        return _INF1
    h = (u2 - u1) % P
    i = 4 * h * h % P
    j = h * i % P
    r = 2 * (s2 - s1) % P
    v = u1 * i % P
    x3 = (r * r - j - 2 * v) % P
    y3 = (r * (v - x3) - 2 * s1 * j) % P
    z3 = ((z1 + z2) * (z1 + z2) - z1z1 - z2z2) * h % P
    return (x3, y3, z3)


def _g1_neg(pt):
    return (pt[0], -pt[1] % P, pt[2])


def _g1_mul(pt, k):
    # reducing mod R assumes a subgroup point; membership tests must use
    # the unreduced ladder below instead
    return _g1_mul_unreduced(pt, k % R)


def _g1_mul_unreduced(pt, k):
    result = _INF1
    while k:
        if k & 1:
            result = _g1_add(result, pt)
        pt = _g1_double(pt)
        k >>= 1
    return result


def _g1_to_affine(pt):
    x, y, z = pt
    if z == 0:
        return None
    zi = pow(z, -1, P)
    zi2 = zi * zi % P
    return (x * zi2 % P, y * zi2 * zi % P)


def _g1_eq(p1, p2):
    if p1[2] == 0 or p2[2] == 0:
        return p1[2] == 0 and p2[2] == 0
    x1, y1, z1 = p1
    x2, y2, z2 = p2
    z1z1 = z1 * z1 % P
    z2z2 = z2 * z2 % P
    return (x1 * z2z2 - x2 * z1z1) % P == 0 and \
        (y1 * z2z2 * z2 - y2 * z1z1 * z1) % P == 0


# ---------------------------------------------------------------------------
# G2 Jacobian arithmetic over Fp2

def _g2_double(pt):
    x, y, z = pt
    if fp2_is_zero(z):
        return pt
    a = fp2_sqr(x)
    b = fp2_sqr(y)
    c = fp2_sqr(b)
    d = fp2_scalar_mul(fp2_sub(fp2_sub(fp2_sqr(fp2_add(x, b)), a), c), 2)
    e = fp2_scalar_mul(a, 3)
    f = fp2_sqr(e)
    x3 = fp2_sub(f, fp2_scalar_mul(d, 2))
    y3 = fp2_sub(fp2_mul(e, fp2_sub(d, x3)), fp2_scalar_mul(c, 8))
    z3 = fp2_scalar_mul(fp2_mul(y, z), 2)
    return (x3, y3, z3)


def _g2_add(p1, p2):
    if fp2_is_zero(p1[2]):
        return p2
    if fp2_is_zero(p2[2]):
        return p1
    x1, y1, z1 = p1
    x2, y2, z2 = p2
    z1z1 = fp2_sqr(z1)
    z2z2 = fp2_sqr(z2)
    u1 = fp2_mul(x1, z2z2)
    u2 = fp2_mul(x2, z1z1)
    s1 = fp2_mul(fp2_mul(y1, z2z2), z2)
    s2 = fp2_mul(fp2_mul(y2, z1z1), z1)
    if u1 == u2:
        if s1 == s2:
            return _g2_double(p1)
        return _INF2
    h = fp2_sub(u2, u1)
    i = fp2_scalar_mul(fp2_sqr(h), 4)
    j = fp2_mul(h, i)
    r = fp2_scalar_mul(fp2_sub(s2, s1), 2)
    v = fp2_mul(u1, i)
    x3 = fp2_sub(fp2_sub(fp2_sqr(r), j), fp2_scalar_mul(v, 2))
    y3 = fp2_sub(fp2_mul(r, fp2_sub(v, x3)),
                 fp2_scalar_mul(fp2_mul(s1, j), 2))
    z3 = fp2_mul(fp2_sub(fp2_sub(fp2_sqr(fp2_add(z1, z2)), z1z1), z2z2), h)
    return (x3, y3, z3)


def _g2_neg(pt):
    return (pt[0], fp2_neg(pt[1]), pt[2])


def _g2_mul(pt, k):
    return _g2_mul_unreduced(pt, k % R)


def _g2_mul_unreduced(pt, k):
    result = _INF2
    while k:
        if k & 1:
            result = _g2_add(result, pt)
        pt = _g2_double(pt)
        k >>= 1
    return result


def _g2_to_affine(pt):
    x, y, z = pt
    if fp2_is_zero(z):
        return None
    zi = fp2_inv(z)
    zi2 = fp2_sqr(zi)
    return (fp2_mul(x, zi2), fp2_mul(fp2_mul(y, zi2), zi))


def _g2_eq(p1, p2):
    if fp2_is_zero(p1[2]) or fp2_is_zero(p2[2]):
        return fp2_is_zero(p1[2]) and fp2_is_zero(p2[2])
    a1 = _g2_to_affine(p1)
    a2 = _g2_to_affine(p2)
    return a1 == a2


# ---------------------------------------------------------------------------
# Multi-scalar multiplication (interleaved 4-bit windows)

_WINDOW = 4


def _g1_msm(points, scalars):
    """Sum of scalar*point over Jacobian G1 tuples."""
    pairs = [(p, s % R) for p, s in zip(points, scalars) if s % R and p[2] != 0]
    if not pairs:
        return _INF1
    if len(pairs) == 1:
        return _g1_mul(pairs[0][0], pairs[0][1])
    tables = []
    for p, s in pairs:
        tbl = [_INF1, p]
        for _ in range(2, 1 << _WINDOW):
            tbl.append(_g1_add(tbl[-1], p))
        tables.append((tbl, s))
    nbits = max(s.bit_length() for _, s in pairs)
    nwin = (nbits + _WINDOW - 1) // _WINDOW
    acc = _INF1
    for w in range(nwin - 1, -1, -1):
        if w != nwin - 1:
            for _ in range(_WINDOW):
                acc = _g1_double(acc)
        shift = w * _WINDOW
        for tbl, s in tables:
            digit = (s >> shift) & ((1 << _WINDOW) - 1)
            if digit:
                acc = _g1_add(acc, tbl[digit])
    return acc


def _g2_msm(points, scalars):
    pairs = [(p, s % R) for p, s in zip(points, scalars)
             if s % R and not fp2_is_zero(p[2])]
    if not pairs:
        return _INF2
    acc = _INF2
    for p, s in pairs:
        acc = _g2_add(acc, _g2_mul(p, s))
    return acc


# ---------------------------------------------------------------------------
# Pairing (optimal ate, computed on the twist)

def _line_eval(t, q, xp, yp):
    """Line through affine G2 points t, q (or tangent when t == q),
    evaluated at the G1 point (xp, yp) mapped onto the twist.

    Returns a sparse Fp12 element: c0 + c1*v + c2*v*w with c_i in Fp2.
    """
    x1, y1 = t
    x2, y2 = q
    if x1 != x2:
        lam = fp2_mul(fp2_sub(y2, y1), fp2_inv(fp2_sub(x2, x1)))
    elif y1 == y2:
        lam = fp2_mul(fp2_scalar_mul(fp2_sqr(x1), 3),
                      fp2_inv(fp2_scalar_mul(y1, 2)))
    else:
        # vertical line x = x1
        return (fp2_neg(x1), (xp % P, 0), FP2_ZERO)
    c0 = fp2_sub(y1, fp2_mul(lam, x1))
    c1 = fp2_scalar_mul(lam, xp)
    c2 = ((-yp) % P, 0)
    return (c0, c1, c2)


def _fp12_mul_by_line(f, line):
    c0, c1, c2 = line
    g = ((c0, c1, FP2_ZERO), (FP2_ZERO, c2, FP2_ZERO))
    return fp12_mul(f, g)


_X_BITS = bin(BLS_X)[3:]  # bits below the leading one


def _miller_loop(pairs):
    """Product of Miller loops over [(g1_affine, g2_affine), ...]."""
    f = FP12_ONE
    ts = [q for _, q in pairs]
    for bit in _X_BITS:
        f = fp12_sqr(f)
        for i, (pa, qa) in enumerate(pairs):
            xp, yp = pa
            f = _fp12_mul_by_line(f, _line_eval(ts[i], ts[i], xp, yp))
            ts[i] = _affine_g2_double(ts[i])
        if bit == "1":
            for i, (pa, qa) in enumerate(pairs):
                xp, yp = pa
                f = _fp12_mul_by_line(f, _line_eval(ts[i], qa, xp, yp))
                ts[i] = _affine_g2_add(ts[i], qa)
    # The BLS parameter is negative: invert via conjugation.
    return fp12_conj(f)


def _affine_g2_double(t):
    x, y = t
    lam = fp2_mul(fp2_scalar_mul(fp2_sqr(x), 3),
                  fp2_inv(fp2_scalar_mul(y, 2)))
    x3 = fp2_sub(fp2_sqr(lam), fp2_scalar_mul(x, 2))
    y3 = fp2_sub(fp2_mul(lam, fp2_sub(x, x3)), y)
    return (x3, y3)


def _affine_g2_add(t, q):
    x1, y1 = t
    x2, y2 = q
    if x1 == x2:
        if y1 == y2:
            return _affine_g2_double(t)
        raise ArithmeticError("unexpected vertical line in Miller loop")
    lam = fp2_mul(fp2_sub(y2, y1), fp2_inv(fp2_sub(x2, x1)))
    x3 = fp2_sub(fp2_sub(fp2_sqr(lam), x1), x2)
    y3 = fp2_sub(fp2_mul(lam, fp2_sub(x1, x3)), y1)
    return (x3, y3)


def multi_pairing(pairs):
    """Product of pairings e(P_i, Q_i) as an Fp12 element.

    Pairs with either point at infinity contribute the identity.
    """
    affine = []
    for g1pt, g2pt in pairs:
        pa = _g1_to_affine(g1pt.raw)
        qa = _g2_to_affine(g2pt.raw)
        if pa is None or qa is None:
            continue
        affine.append((pa, qa))
    if not affine:
        return FP12_ONE
    return final_exponentiation(_miller_loop(affine))


def pairing(g1pt, g2pt):
    return multi_pairing([(g1pt, g2pt)])


def pairing_check(pairs):
    """True iff the product of pairings equals the identity."""
    return multi_pairing(pairs) == FP12_ONE


# ---------------------------------------------------------------------------
# Public point wrappers

class G1Point:
    """Immutable point in the G1 prime-order subgroup."""

    __slots__ = ("raw",)

    def __init__(self, raw):
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, *a):
        raise AttributeError("G1Point is immutable")

    @staticmethod
    def identity() -> "G1Point":
        return G1Point(_INF1)

    @staticmethod
    def generator() -> "G1Point":
        return _G1_GEN

    def is_identity(self) -> bool:
        return self.raw[2] == 0

    def __add__(self, other: "G1Point") -> "G1Point":
        return G1Point(_g1_add(self.raw, other.raw))

    def __sub__(self, other: "G1Point") -> "G1Point":
        return G1Point(_g1_add(self.raw, _g1_neg(other.raw)))

    def __neg__(self) -> "G1Point":
        return G1Point(_g1_neg(self.raw))

    def __mul__(self, k: int) -> "G1Point":
        return G1Point(_g1_mul(self.raw, k))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, G1Point) and _g1_eq(self.raw, other.raw)

    def __hash__(self):
        return hash(self.to_bytes())

    def __repr__(self):
        return f"G1Point({self.to_bytes().hex()})"

    def to_bytes(self) -> bytes:
        aff = _g1_to_affine(self.raw)
        if aff is None:
            return bytes([0xC0]) + b"\x00" * 47
        x, y = aff
        flags = 0x80
        if y > P - y:
            flags |= 0x20
        out = bytearray(x.to_bytes(48, "big"))
        out[0] |= flags
        return bytes(out)

    @staticmethod
    def from_bytes(data: bytes, subgroup_check: bool = True) -> "G1Point":
        if len(data) != 48:
            raise CurveError(f"G1 encoding must be 48 bytes, got {len(data)}")
        flags = data[0]
        if not flags & 0x80:
            raise CurveError("uncompressed G1 encodings are not supported")
        if flags & 0x40:
            if flags != 0xC0 or any(data[1:]):
                raise CurveError("malformed G1 infinity encoding")
            return G1Point.identity()
        x = int.from_bytes(bytes([flags & 0x1F]) + data[1:], "big")
        if x >= P:
            raise CurveError("G1 x coordinate not canonical")
        y2 = (x * x * x + _B1) % P
        y = pow(y2, (P + 1) // 4, P)
        if y * y % P != y2:
            raise CurveError("G1 x coordinate is not on the curve")
        if (y > P - y) != bool(flags & 0x20):
            y = P - y
        pt = G1Point((x, y, 1))
        if subgroup_check and not pt.in_subgroup():
            raise CurveError("G1 point not in the prime-order subgroup")
        return pt

    def in_subgroup(self) -> bool:
        return _g1_mul_unreduced(self.raw, R)[2] == 0


class G2Point:
    """Immutable point in the G2 prime-order subgroup."""

    __slots__ = ("raw",)

    def __init__(self, raw):
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, *a):
        raise AttributeError("G2Point is immutable")

    @staticmethod
    def identity() -> "G2Point":
        return G2Point(_INF2)

    @staticmethod
    def generator() -> "G2Point":
        return _G2_GEN

    def is_identity(self) -> bool:
        return fp2_is_zero(self.raw[2])

    def __add__(self, other: "G2Point") -> "G2Point":
        return G2Point(_g2_add(self.raw, other.raw))

    def __sub__(self, other: "G2Point") -> "G2Point":
        return G2Point(_g2_add(self.raw, _g2_neg(other.raw)))

    def __neg__(self) -> "G2Point":
        return G2Point(_g2_neg(self.raw))

    def __mul__(self, k: int) -> "G2Point":
        return G2Point(_g2_mul(self.raw, k))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, G2Point) and _g2_eq(self.raw, other.raw)

    def __hash__(self):
        return hash(self.to_bytes())

    def __repr__(self):
        return f"G2Point({self.to_bytes().hex()})"

    def to_bytes(self) -> bytes:
        aff = _g2_to_affine(self.raw)
        if aff is None:
            return bytes([0xC0]) + b"\x00" * 95
        (x0, x1), y = aff
        flags = 0x80
        if fp2_lexicographically_largest(y):
            flags |= 0x20
        out = bytearray(x1.to_bytes(48, "big") + x0.to_bytes(48, "big"))
        out[0] |= flags
        return bytes(out)

    @staticmethod
    def from_bytes(data: bytes, subgroup_check: bool = True) -> "G2Point":
        if len(data) != 96:
            raise CurveError(f"G2 encoding must be 96 bytes, got {len(data)}")
        flags = data[0]
        if not flags & 0x80:
            raise CurveError("uncompressed G2 encodings are not supported")
        if flags & 0x40:
            if flags != 0xC0 or any(data[1:]):
                raise CurveError("malformed G2 infinity encoding")
            return G2Point.identity()
        x1 = int.from_bytes(bytes([flags & 0x1F]) + data[1:48], "big")
        x0 = int.from_bytes(data[48:], "big")
        if x0 >= P or x1 >= P:
            raise CurveError("G2 x coordinate not canonical")
        x = (x0, x1)
        y = fp2_sqrt(fp2_add(fp2_mul(fp2_sqr(x), x), _B2))
        if y is None:
            raise CurveError("G2 x coordinate is not on the curve")
        if fp2_lexicographically_largest(y) != bool(flags & 0x20):
            y = fp2_neg(y)
        pt = G2Point((x, y, FP2_ONE))
        if subgroup_check and not pt.in_subgroup():
            raise CurveError("G2 point not in the prime-order subgroup")
        return pt

    def in_subgroup(self) -> bool:
        return fp2_is_zero(_g2_mul_unreduced(self.raw, R)[2])


def g1_msm(points, scalars) -> G1Point:
    """Multi-scalar multiplication over G1Point wrappers."""
    return G1Point(_g1_msm([p.raw for p in points], list(scalars)))


def g2_msm(points, scalars) -> G2Point:
    return G2Point(_g2_msm([p.raw for p in points], list(scalars)))


_G1_GEN = G1Point((
    0x17F1D3A73197D7942695638C4FA9AC0FC3688C4F9774B905A14E3A3F171BAC586C55E83FF97A1AEFFB3AF00ADB22C6BB,
    0x08B3F481E3AAA0F1A09E30ED741D8AE4FCF5E095D5D00AF600DB18CB2C04B3EDD03CC744A2888AE40CAA232946C5E7E1,
    1,
))

_G2_GEN = G2Point((
    (0x024AA2B2F08F0A91260805272DC51051C6E47AD4FA403B02B4510B647AE3D1770BAC0326A805BBEFD48056C8C121BDB8,
     0x13E02B6052719F607DACD3A088274F65596BD0D09920B61AB5DA61BBDC7F5049334CF11213945D57E5AC7D055D042B7E),
    (0x0CE5D527727D6E118CC9CDC6DA2E351AADFD9BAA8CBDD3A76D429A695160D12C923AC9CC3BACA289E193548608B82801,
     0x0606C4A02EA734CC32ACD2B02BC28B99CB3E287E85A763AF267492AB572E99AB3F370D275CEC1DA1AAA9075FF05F79BE),
    FP2_ONE,
))

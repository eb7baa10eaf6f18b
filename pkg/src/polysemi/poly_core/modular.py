"""Reduction of Q(i)-polynomials modulo a prime p = 1 (mod 4).

Modulo such a prime i has a square root, so Z[i] (with denominators prime
to p) maps homomorphically onto GF(p).  Division by a polynomial whose
leading coefficient survives commutes with the reduction, which makes the
image a cheap necessary test for exact left quotients: constant digits
over Q(i) stay constant modulo p.
"""

from __future__ import annotations

from .scalar import ExactScalar

PRIME = 4611686018427387817
SQRT_MINUS_ONE = 120863620846201794


def image_scalar(c: ExactScalar) -> int | None:
    re_den, im_den = c.re.denominator, c.im.denominator
    if re_den % PRIME == 0 or im_den % PRIME == 0:
        return None
    re = c.re.numerator * pow(re_den, -1, PRIME)
    im = c.im.numerator * pow(im_den, -1, PRIME)
    return (re + SQRT_MINUS_ONE * im) % PRIME


def image(P) -> list[int] | None:
    out = []
    for c in P.coeffs:
        v = image_scalar(c)
        if v is None:
            return None
        out.append(v)
    return out


def _mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    # Kronecker substitution: pack, multiply once, unpack.
    k = (2 * PRIME.bit_length() + min(len(a), len(b)).bit_length() + 7) // 8 * 8
    nbytes = k // 8
    A = int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in a), "little")
    B = int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in b), "little")
    raw = (A * B).to_bytes(nbytes * (len(a) + len(b)), "little")
    count = len(a) + len(b) - 1
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") % PRIME for i in range(count)]


def _trim(a: list[int]) -> list[int]:
    while a and not a[-1]:
        a.pop()
    return a


def _add_const(a: list[int], c: int) -> list[int]:
    if not a:
        return [c % PRIME] if c % PRIME else []
    a = list(a)
    a[0] = (a[0] + c) % PRIME
    return _trim(a)


def compose(P: list[int], Q: list[int]) -> list[int]:
    acc: list[int] = []
    for c in reversed(P):
        acc = _add_const(_mul(acc, Q), c)
    return acc


def _divmod(a: list[int], h: list[int], lead_inv: int) -> tuple[list[int], list[int]]:
    a = list(a)
    dh = len(h) - 1
    if len(a) - 1 < dh:
        return [], a
    q = [0] * (len(a) - dh)
    for i in range(len(a) - 1 - dh, -1, -1):
        c = a[i + dh] * lead_inv % PRIME
        if c:
            q[i] = c
            for j in range(dh):
                a[i + j] = (a[i + j] - c * h[j]) % PRIME
        a[i + dh] = 0
    return _trim(q), _trim(a[:dh])


def digits_constant(P: list[int], H: list[int]) -> bool:
    """Whether every base-H digit of P is constant modulo the prime."""
    lead_inv = pow(H[-1], -1, PRIME)
    rest = P
    while rest:
        rest, r = _divmod(rest, H, lead_inv)
        if len(r) > 1:
            return False
    return True


def left_quotient_possible(P, H) -> bool:
    """False only if P is certainly not of the form G o H."""
    p, h = image(P), image(H)
    if p is None or h is None or not h or len(h) != len(H.coeffs):
        return True
    return digits_constant(p, h)


def semiconjugacy_possible(X, B) -> bool:
    """False only if no A with A o X == X o B exists."""
    x, b = image(X), image(B)
    if x is None or b is None or len(x) != len(X.coeffs) or len(b) != len(B.coeffs):
        return True
    return digits_constant(compose(x, b), x)


def _truncate(a: list[int], k: int) -> list[int]:
    return _trim(a[:k])


def iterate_head(b: list[int], d: int, k: int) -> list[int]:
    """Image of the monic head computed by the exact enumeration (see there)."""
    n = len(b) - 1
    rev = [1]
    m = 1
    for _ in range(d):
        acc = [b[n]]
        for i in range(n - 1, -1, -1):
            acc = _truncate(_mul(acc, rev), k)
            shift = m * (n - i)
            if b[i] and shift < k:
                acc = acc + [0] * (shift + 1 - len(acc))
                acc[shift] = (acc[shift] + b[i]) % PRIME
        rev = acc
        m *= n
    inv = pow(rev[0], -1, PRIME)
    rev = rev + [0] * (k - len(rev))
    return [c * inv % PRIME for c in rev[:k]]


def series_root(q: list[int], r: int, terms: int) -> list[int]:
    """q(t)**(1/r) modulo t**terms, for q(0) = 1 and r, terms below the prime."""
    inv_r = pow(r, -1, PRIME)
    a = [1]
    for k in range(1, terms):
        acc = 0
        for j in range(1, min(k, len(q) - 1) + 1):
            if q[j]:
                # (1/r + 1) * j - k
                acc += q[j] * a[k - j] * ((inv_r + 1) * j - k)
        a.append(acc % PRIME * pow(k, -1, PRIME) % PRIME)
    return a


def candidate_semiconjugates(B, depth: int, level: int, degree: int) -> bool:
    """False only if the canonical degree-``degree`` right factor of the
    depth-fold iterate of B cannot semiconjugate B to anything."""
    b = image(B)
    if b is None or len(b) != len(B.coeffs):
        return True
    head = iterate_head(b, depth, degree)
    a = series_root(head, level // degree, degree)
    w = [0] + [a[degree - i] for i in range(1, degree)] + [1]
    return digits_constant(compose(w, b), w)

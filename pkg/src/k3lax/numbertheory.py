"""Integer helpers for the irrationality certificates: primality,
Legendre symbols, modular square roots, CRT, squarefree splitting."""

from __future__ import annotations

from math import gcd

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def invert(a: int, m: int) -> int:
    return pow(a, -1, m)


def tonelli(n: int, p: int) -> int:
    """A square root of n modulo an odd prime p.

    Standard Tonelli-Shanks: factor p - 1 = q * 2^s, walk the 2-Sylow
    tower with a fixed nonresidue.  Raises ValueError when n is not a
    residue, so callers cannot silently use garbage.
    """
    n %= p
    if n == 0:
        return 0
    if legendre(n, p) != 1:
        raise ValueError(f"{n} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, probe = 0, t
        while probe != 1:
            probe = probe * probe % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def crt(residues: list[int], moduli: list[int]) -> tuple[int, int]:
    """Combine congruences with pairwise coprime moduli.

    Returns (x, M) with x the unique solution modulo M, the product.
    """
    x, M = 0, 1
    for a, m in zip(residues, moduli):
        if gcd(M, m) != 1:
            raise ValueError(f"moduli {M} and {m} are not coprime")
        # x' = x mod M, x' = a mod m
        x = (x + M * ((a - x) * invert(M, m) % m)) % (M * m)
        M *= m
    return x, M


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for the small inputs here."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = m^2 * b with b squarefree; returns (m, b)."""
    m, b = 1, 1
    for p, e in factorize(n).items():
        m *= p ** (e // 2)
        if e % 2:
            b *= p
    return m, b


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n nonzero)."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v

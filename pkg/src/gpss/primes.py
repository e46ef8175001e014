"""Deterministic primality testing and upward prime search."""
from __future__ import annotations

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

# Strong probable-prime tests to the first 13 prime bases are exact below
# this bound (Sorenson and Webster, 2015).
DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981

# next_prime_at_least never returns a value wider than an unsigned 64-bit word.
WORD_LIMIT = (1 << 64) - 1


def _strong_probable_prime(n: int, d: int, s: int, base: int) -> bool:
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(u: int) -> bool:
    """Exact primality for ``0 <= u < DETERMINISTIC_LIMIT``.

    Miller-Rabin with a fixed witness set, so no randomness is involved.
    Larger inputs raise :class:`OverflowError` rather than risk a wrong answer.
    """
    u = int(u)
    if u < 0:
        raise ValueError("is_prime expects a non-negative integer")
    if u >= DETERMINISTIC_LIMIT:
        raise OverflowError(f"{u} exceeds the deterministic primality range")
    if u < 2:
        return False
    for p in _SMALL_PRIMES:
        if u % p == 0:
            return u == p
    if u < 43 * 43:
        return True
    d, s = u - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return all(_strong_probable_prime(u, d, s, b) for b in _SMALL_PRIMES)


def next_prime_at_least(m: int) -> int:
    """Smallest prime ``p >= m``, found by scanning odd candidates upward."""
    m = int(m)
    if m < 2:
        raise ValueError("next_prime_at_least expects m >= 2")
    if m == 2:
        return 2
    candidate = m | 1
    while True:
        if candidate > WORD_LIMIT:
            raise OverflowError(f"no prime >= {m} fits in 64 bits")
        if is_prime(candidate):
            return candidate
        candidate += 2

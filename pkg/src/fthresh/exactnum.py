"""Exact arithmetic substrate: arbitrary-precision rationals and F_p residues.

Rational values are `fractions.Fraction` (always reduced, denominator > 0,
exact comparison); the type is re-exported as `Rational` together with the
parsing/printing helpers used everywhere else.  Elements of F_p are plain
ints kept in the canonical range [0, p); the prime is carried by the ring
context, so the functions here take it explicitly.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

# Products of two canonical residues must fit comfortably in machine words
# downstream; every worked example uses tiny primes anyway.
MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def validate_prime(p: int) -> int:
    if not isinstance(p, int) or not 2 <= p < MAX_PRIME:
        raise ValueError(f"characteristic must be a prime in [2, 2^31), got {p!r}")
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    return p


def fp_normalize(c: int, p: int) -> int:
    return c % p


def fp_add(a: int, b: int, p: int) -> int:
    return (a + b) % p


def fp_sub(a: int, b: int, p: int) -> int:
    return (a - b) % p


def fp_neg(a: int, p: int) -> int:
    return (-a) % p


def fp_mul(a: int, b: int, p: int) -> int:
    return (a * b) % p


def fp_inv(a: int, p: int) -> int:
    if a % p == 0:
        raise ZeroDivisionError("inversion of zero in F_p")
    return pow(a, -1, p)


def fp_div(a: int, b: int, p: int) -> int:
    return (a * fp_inv(b, p)) % p


def fp_pow(a: int, n: int, p: int) -> int:
    return pow(a, n, p)


def format_rational(x: Fraction) -> str:
    """Canonical "num/den" text; plain "num" when the denominator is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def decimal_string(x: Fraction, places: int = 6) -> str:
    """Exact decimal rendering to `places` digits, marked approximate."""
    sign = "-" if x < 0 else ""
    n, d = abs(x.numerator), x.denominator
    scaled, rem = divmod(n * 10**places, d)
    if 2 * rem >= d:
        scaled += 1
    whole, frac = divmod(scaled, 10**places)
    return f"~{sign}{whole}.{frac:0{places}d}"

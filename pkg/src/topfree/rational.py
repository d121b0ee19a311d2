"""Exact rational helpers: parsing, formatting, p-adic valuation, primality."""

from __future__ import annotations

from fractions import Fraction

# Valuation of zero. A float only for its ordering: it compares above every int
# and never enters arithmetic with ball levels.
INFINITE_LEVEL = float("inf")


def padic_valuation(x: Fraction, p: int) -> int | float:
    """v_p(x) for exact rationals, with v_p(0) = INFINITE_LEVEL."""
    if x == 0:
        return INFINITE_LEVEL
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or integer literals. Raises ValueError on anything else."""
    text = text.strip()
    if "/" in text:
        num_text, _, den_text = text.partition("/")
        num = int(num_text)
        den = int(den_text)
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_prime(n: int) -> bool:
    """Trial division; configuration primes are tiny."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True

"""Prime-field substrate: context tables, additive and multiplicative characters.

A `FieldCtx` carries the prime p, the smallest primitive root g, and dense
tables (discrete logs, powers of g, unit roots, modular inverses) sized for
desk-scale primes (p <= 2^20).  Everything downstream reads these tables;
nothing mutates them after construction, so a context is freely shareable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import NotDivisor, NotPrime, TooLarge, ZeroArgument

P_MAX = 1 << 20

# Witness set sufficient for deterministic Miller-Rabin below 3.3 * 10^24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 64-bit integers."""
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n == w:
            return True
        if n % w == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors by trial division (n <= 2^20 here)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(p: int) -> int:
    """Smallest generator of F_p^*, by order testing of candidates 2, 3, ...."""
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise NotPrime(f"no primitive root found; {p} is not prime")


@dataclass(eq=False)
class FieldCtx:
    """Immutable prime-field context with precomputed lookup tables.

    dlog[a] is the k with g^k = a (dlog[0] = -1), exp[k] = g^k for
    0 <= k < p-1, unit_roots[a] = exp(2*pi*i*a/p), inv[a] = a^{-1} mod p
    (inv[0] = 0).
    """

    p: int
    g: int
    dlog: np.ndarray = field(repr=False)
    exp: np.ndarray = field(repr=False)
    unit_roots: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)

    def units(self) -> range:
        return range(1, self.p)


@lru_cache(maxsize=64)
def make_field(p: int) -> FieldCtx:
    """Build (and cache) the context for a prime 3 <= p <= 2^20."""
    if p > P_MAX:
        raise TooLarge(f"p={p} exceeds the table guard {P_MAX}")
    if p < 3 or not is_prime(p):
        raise NotPrime(f"p={p} is not a prime >= 3")
    g = smallest_primitive_root(p)
    dlog = np.full(p, -1, dtype=np.int64)
    exp = np.empty(p - 1, dtype=np.int64)
    a = 1
    for k in range(p - 1):
        exp[k] = a
        dlog[a] = k
        a = a * g % p
    inv = np.zeros(p, dtype=np.int64)
    inv[1] = 1
    for x in range(2, p):
        inv[x] = (p - (p // x)) * inv[p % x] % p
    unit_roots = np.exp(2j * math.pi * np.arange(p) / p)
    return FieldCtx(p=p, g=g, dlog=dlog, exp=exp, unit_roots=unit_roots, inv=inv)


def unit_root(p: int, a: int) -> complex:
    """exp(2*pi*i*a/p) from the formula, with no context table (any p >= 1)."""
    return cmath.exp(2j * math.pi * (a % p) / p)


def add_char(ctx: FieldCtx, a: int) -> complex:
    """Additive character value exp(2*pi*i*a/p) for a residue 0 <= a < p."""
    return complex(ctx.unit_roots[a % ctx.p])


def mult_char(ctx: FieldCtx, j: int, a: int) -> complex:
    """Multiplicative character of index j at a; j = 0 is the principal one.

    Raises ZeroArgument for a = 0: the characters live on F_p^* only.
    """
    p = ctx.p
    a %= p
    if a == 0:
        raise ZeroArgument("multiplicative character undefined at 0")
    j %= p - 1
    return cmath.exp(2j * math.pi * j * int(ctx.dlog[a]) / (p - 1))


def subgroup_elems(ctx: FieldCtx, order: int) -> tuple[int, ...]:
    """The multiplicative subgroup of the given order, as sorted residues."""
    p = ctx.p
    if order < 1 or (p - 1) % order != 0:
        raise NotDivisor(f"order {order} does not divide p-1 = {p - 1}")
    step = (p - 1) // order
    return tuple(sorted(int(ctx.exp[(k * step) % (p - 1)]) for k in range(order)))

"""Subsets of F_p^*, set algebra, weight containers, and seeded generators.

Set-algebra results are returned as plain Python sets of residues and may
contain 0 (a sumset or difference set can wrap onto it).  Converting such a
result back into an `FpSet` strips 0 and reports whether it was present, so
callers always see the loss instead of a silent drop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    BadTensorShape,
    ConfigError,
    CtxMismatch,
    NotDivisor,
    SizeTooLarge,
    ZeroArgument,
)
from .ffield import FieldCtx, subgroup_elems
from .rng import SplitMix64, derive_seed

WEIGHT_SLACK = 1e-12
TENSOR_GUARD = 10**8


@dataclass(frozen=True)
class FpSet:
    """A finite subset of F_p^*: strictly increasing residues, 0 excluded."""

    ctx: FieldCtx
    elems: tuple[int, ...]

    def __post_init__(self):
        p = self.ctx.p
        prev = 0
        for a in self.elems:
            if not 0 < a < p:
                raise ZeroArgument(f"element {a} outside F_{p}^*")
            if a <= prev:
                raise ValueError("elements must be strictly increasing")
            prev = a

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, a) -> bool:
        return a in set(self.elems)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.elems, dtype=np.int64)


def fpset(ctx: FieldCtx, residues: Iterable[int]) -> FpSet:
    """Strict construction: every residue must lie in F_p^*."""
    return FpSet(ctx, tuple(sorted({a % ctx.p for a in residues})))


def fpset_strip_zero(ctx: FieldCtx, residues: Iterable[int]) -> tuple[FpSet, bool]:
    """Construction that drops 0 and reports whether it was present."""
    pool = {a % ctx.p for a in residues}
    had_zero = 0 in pool
    pool.discard(0)
    return FpSet(ctx, tuple(sorted(pool))), had_zero


def full_units(ctx: FieldCtx) -> FpSet:
    return FpSet(ctx, tuple(range(1, ctx.p)))


def same_ctx(*sets: FpSet) -> FieldCtx:
    ctx = sets[0].ctx
    for s in sets[1:]:
        if s.ctx.p != ctx.p:
            raise CtxMismatch(f"sets over p={ctx.p} and p={s.ctx.p}")
    return ctx


def sumset(A: FpSet, B: FpSet) -> set[int]:
    p = same_ctx(A, B).p
    return {(a + b) % p for a in A.elems for b in B.elems}


def diffset(A: FpSet, B: FpSet) -> set[int]:
    p = same_ctx(A, B).p
    return {(a - b) % p for a in A.elems for b in B.elems}


def productset(A: FpSet, B: FpSet) -> set[int]:
    p = same_ctx(A, B).p
    return {a * b % p for a in A.elems for b in B.elems}


def powerset_k(A: FpSet, k: int) -> set[int]:
    """Image {a^k}; this is the power image, not the k-fold product set."""
    if k < 1:
        raise ValueError("k must be >= 1")
    p = A.ctx.p
    return {pow(a, k, p) for a in A.elems}


def gen_random(ctx: FieldCtx, size: int, seed: int) -> FpSet:
    """Uniform sample of `size` distinct units, via a partial Fisher-Yates pass."""
    p = ctx.p
    if not 1 <= size <= p - 1:
        raise SizeTooLarge(f"cannot draw {size} distinct units mod {p}")
    rng = SplitMix64(derive_seed(seed, p, size))
    pool = list(range(1, p))
    for i in range(size):
        j = i + rng.next_below(len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
    return FpSet(ctx, tuple(sorted(pool[:size])))


def gen_interval(ctx: FieldCtx, start: int, length: int) -> FpSet:
    """`length` consecutive residues from `start` upward, skipping 0 on wrap."""
    p = ctx.p
    if not 1 <= length <= p - 1:
        raise SizeTooLarge(f"cannot fit {length} units mod {p}")
    out = []
    a = start % p
    while len(out) < length:
        if a != 0:
            out.append(a)
        a = (a + 1) % p
    return FpSet(ctx, tuple(sorted(out)))


def gen_geometric(ctx: FieldCtx, base: int, length: int) -> FpSet:
    """{base, base^2, ..., base^length}; requires ord(base) >= length."""
    p = ctx.p
    b = base % p
    if b == 0:
        raise ZeroArgument("geometric base must be a unit")
    out = []
    seen = set()
    a = b
    for _ in range(length):
        if a in seen:
            raise SizeTooLarge(
                f"base {base} has multiplicative order {len(seen)} < {length}"
            )
        seen.add(a)
        out.append(a)
        a = a * b % p
    return FpSet(ctx, tuple(sorted(out)))


def _check_weights(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=np.complex128)
    if w.size and float(np.max(np.abs(w))) > 1.0 + WEIGHT_SLACK:
        raise ValueError("weight magnitude exceeds 1")
    return w


@dataclass(frozen=True)
class WeightVec:
    """Complex weights, one per element of the base set, each |w| <= 1."""

    base: FpSet
    w: np.ndarray

    def __post_init__(self):
        w = _check_weights(self.w)
        if w.shape != (len(self.base),):
            raise BadTensorShape(f"expected {len(self.base)} weights, got {w.shape}")
        object.__setattr__(self, "w", w)

    def l2_mass(self) -> float:
        """Sum of |w|^2, the A of the bilinear bound sqrt(p*A*B)."""
        return float(np.sum(np.abs(self.w) ** 2))


@dataclass(frozen=True)
class WeightTensor:
    """Dense weights over the product of all axes except the omitted one.

    Axis order of `w` follows the axes list with the omitted position skipped,
    so evaluation at a full coordinate tuple just drops that position.
    """

    axes: tuple[FpSet, ...]
    omitted: int
    w: np.ndarray

    def __post_init__(self):
        if not 0 <= self.omitted < len(self.axes):
            raise BadTensorShape(f"omitted index {self.omitted} out of range")
        shape = tuple(
            len(s) for i, s in enumerate(self.axes) if i != self.omitted
        )
        size = 1
        for n in shape:
            size *= n
        if size > TENSOR_GUARD:
            raise SizeTooLarge(f"tensor with {size} entries exceeds guard")
        w = _check_weights(self.w)
        if w.shape != shape:
            raise BadTensorShape(f"expected shape {shape}, got {w.shape}")
        object.__setattr__(self, "w", w)

    def value_at(self, idx: tuple[int, ...]) -> complex:
        """Weight at a full index tuple; the omitted coordinate is ignored."""
        kept = tuple(v for i, v in enumerate(idx) if i != self.omitted)
        return complex(self.w[kept])


def unit_weights(A: FpSet) -> WeightVec:
    return WeightVec(A, np.ones(len(A), dtype=np.complex128))


def random_unimodular_weights(A: FpSet, seed: int) -> WeightVec:
    rng = SplitMix64(derive_seed(seed, A.ctx.p, len(A), 1))
    angles = np.array([rng.next_float() for _ in range(len(A))])
    return WeightVec(A, np.exp(2j * np.pi * angles))


def random_disc_weights(A: FpSet, seed: int) -> WeightVec:
    """Weights uniform on the closed unit disc (radius = sqrt of a uniform)."""
    rng = SplitMix64(derive_seed(seed, A.ctx.p, len(A), 2))
    n = len(A)
    radii = np.sqrt(np.array([rng.next_float() for _ in range(n)]))
    angles = np.array([rng.next_float() for _ in range(n)])
    return WeightVec(A, radii * np.exp(2j * np.pi * angles))


WEIGHT_SCHEMES = ("unit", "random-unimodular", "random-disc")


def make_weights(A: FpSet, scheme: str, seed: int = 0) -> WeightVec:
    if scheme == "unit":
        return unit_weights(A)
    if scheme == "random-unimodular":
        return random_unimodular_weights(A, seed)
    if scheme == "random-disc":
        return random_disc_weights(A, seed)
    raise ValueError(f"unknown weight scheme {scheme!r}")


def unit_tensor(axes: tuple[FpSet, ...], omitted: int) -> WeightTensor:
    shape = tuple(len(s) for i, s in enumerate(axes) if i != omitted)
    return WeightTensor(axes, omitted, np.ones(shape, dtype=np.complex128))


def random_tensor(
    axes: tuple[FpSet, ...], omitted: int, seed: int, unimodular: bool = True
) -> WeightTensor:
    shape = tuple(len(s) for i, s in enumerate(axes) if i != omitted)
    size = 1
    for n in shape:
        size *= n
    rng = SplitMix64(derive_seed(seed, axes[0].ctx.p, len(axes), omitted))
    angles = np.array([rng.next_float() for _ in range(size)]).reshape(shape)
    w = np.exp(2j * np.pi * angles)
    if not unimodular:
        radii = np.sqrt(
            np.array([rng.next_float() for _ in range(size)]).reshape(shape)
        )
        w = radii * w
    return WeightTensor(axes, omitted, w)


def make_tensor(
    axes: tuple[FpSet, ...], omitted: int, scheme: str, seed: int = 0
) -> WeightTensor:
    if scheme == "unit":
        return unit_tensor(axes, omitted)
    if scheme == "random-unimodular":
        return random_tensor(axes, omitted, seed, unimodular=True)
    if scheme == "random-disc":
        return random_tensor(axes, omitted, seed, unimodular=False)
    raise ValueError(f"unknown weight scheme {scheme!r}")


def parse_set_spec(ctx: FieldCtx, spec: str, base_seed: int = 0) -> FpSet:
    """Build a set from a spec string.

    Forms: `random:<size>:<seed>`, `interval:<start>:<len>`, `subgroup:<T>`,
    `geom:<base>:<len>`, `explicit:{a,b,c}`.  The seed inside a `random` spec
    is folded together with `base_seed`, so one config-level seed shifts every
    random set at once while specs stay self-describing.
    """
    head, _, rest = spec.partition(":")
    try:
        if head == "random":
            size_s, _, seed_s = rest.partition(":")
            return gen_random(ctx, int(size_s), derive_seed(base_seed, int(seed_s)))
        if head == "interval":
            start_s, _, len_s = rest.partition(":")
            return gen_interval(ctx, int(start_s), int(len_s))
        if head == "subgroup":
            return FpSet(ctx, subgroup_elems(ctx, int(rest)))
        if head == "geom":
            base_s, _, len_s = rest.partition(":")
            return gen_geometric(ctx, int(base_s), int(len_s))
        if head == "explicit":
            body = rest.strip()
            if not (body.startswith("{") and body.endswith("}")):
                raise ConfigError(f"explicit spec needs braces: {spec!r}")
            elems = [int(tok) for tok in body[1:-1].split(",") if tok.strip()]
            if not elems:
                raise ConfigError(f"explicit spec is empty: {spec!r}")
            return fpset(ctx, elems)
    except (ValueError, ZeroArgument, SizeTooLarge, NotDivisor) as exc:
        raise ConfigError(f"bad set spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown set spec kind {head!r}")

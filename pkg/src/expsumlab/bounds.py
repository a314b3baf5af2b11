"""Closed-form bound evaluators and the ratio-audit plumbing.

Exponents are stored as exact fractions and evaluation runs in the log
domain, so bounds stay finite and accurate for any desk-scale p.  Implied
constants are never assumed: every bound is evaluated at c = 1 and the sweep
reports measured lhs/rhs ratios as the empirical constant.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateBound, OrderError

Fr = Fraction


@dataclass(frozen=True)
class BoundSpec:
    """A power-product bound c * prod(var^exponent), with optional p-epsilon."""

    name: str
    exponents: tuple[tuple[str, Fraction], ...]
    constant: float = 1.0
    epsilon: float = 0.0

    def evaluate(self, **vals: float) -> float:
        if self.constant == 0.0:
            return 0.0
        acc = math.log(self.constant)
        for var, e in self.exponents:
            v = float(vals[var])
            if v <= 0.0:
                raise ValueError(f"{var} must be positive, got {v}")
            exp = float(e) + (self.epsilon if var == "p" else 0.0)
            acc += exp * math.log(v)
        return math.exp(acc)

    def with_constant(self, c: float) -> "BoundSpec":
        return dataclasses.replace(self, constant=c)

    def with_epsilon(self, eps: float) -> "BoundSpec":
        return dataclasses.replace(self, epsilon=eps)


TRILINEAR = BoundSpec(
    "trilinear",
    (("p", Fr(1, 4)), ("X", Fr(3, 4)), ("Y", Fr(3, 4)), ("Z", Fr(7, 8))),
)
QUADRILINEAR = BoundSpec(
    "quadrilinear",
    (
        ("p", Fr(1, 8)),
        ("W", Fr(7, 8)),
        ("X", Fr(7, 8)),
        ("Y", Fr(15, 16)),
        ("Z", Fr(15, 16)),
    ),
)
PAIR_WEIGHT_TRILINEAR = BoundSpec(
    "pair_weight_trilinear",
    (("p", Fr(1, 8)), ("X", Fr(7, 8)), ("Y", Fr(29, 32)), ("Z", Fr(29, 32))),
)
TRIPLE_WEIGHT_QUADRILINEAR = BoundSpec(
    "triple_weight_quadrilinear",
    (
        ("p", Fr(1, 16)),
        ("W", Fr(15, 16)),
        ("X", Fr(61, 64)),
        ("Y", Fr(61, 64)),
        ("Z", Fr(31, 32)),
    ),
)
TRIVIAL_TRILINEAR = BoundSpec(
    "trivial_trilinear",
    (("p", Fr(1, 2)), ("X", Fr(1, 2)), ("Y", Fr(1, 2)), ("Z", Fr(1))),
)
PRIOR_TRILINEAR = BoundSpec(
    "prior_trilinear",
    (("p", Fr(5, 18)), ("X", Fr(13, 16)), ("Y", Fr(13, 16)), ("Z", Fr(13, 16))),
)

ALL_SUM_BOUNDS = (
    TRILINEAR,
    QUADRILINEAR,
    PAIR_WEIGHT_TRILINEAR,
    TRIPLE_WEIGHT_QUADRILINEAR,
    TRIVIAL_TRILINEAR,
    PRIOR_TRILINEAR,
)


def _ordered(*cards: int) -> bool:
    return all(a >= b for a, b in zip(cards, cards[1:])) and cards[-1] >= 1


def _below_p23(p: int, w: int) -> bool:
    # W <= p^(2/3) checked exactly as W^3 <= p^2
    return w**3 <= p**2


def trilinear_bound(p: int, X: int, Y: int, Z: int, c: float = 1.0) -> float:
    """Product-weight three-set bound; the ordering X >= Y >= Z is a hard
    precondition, not a flag."""
    if not _ordered(X, Y, Z):
        raise OrderError(f"need X >= Y >= Z >= 1, got {X}, {Y}, {Z}")
    return c * TRILINEAR.evaluate(p=p, X=X, Y=Y, Z=Z)


def quadrilinear_bound(
    p: int, W: int, X: int, Y: int, Z: int, c: float = 1.0
) -> tuple[float, bool]:
    """Product-weight four-set bound and whether p^(2/3) >= W >= X >= Y >= Z."""
    ok = _ordered(W, X, Y, Z) and _below_p23(p, W)
    return c * QUADRILINEAR.evaluate(p=p, W=W, X=X, Y=Y, Z=Z), ok


def pair_weight_trilinear_bound(
    p: int, X: int, Y: int, Z: int, c: float = 1.0
) -> tuple[float, bool]:
    """Three-set bound for weights on coordinate pairs; flags X >= Y >= Z."""
    ok = _ordered(X, Y, Z)
    return c * PAIR_WEIGHT_TRILINEAR.evaluate(p=p, X=X, Y=Y, Z=Z), ok


def triple_weight_quadrilinear_bound(
    p: int, W: int, X: int, Y: int, Z: int, c: float = 1.0
) -> tuple[float, bool]:
    """Four-set bound for weights on coordinate triples; flags the ordering
    and the p^(2/3) cap."""
    ok = _ordered(W, X, Y, Z) and _below_p23(p, W)
    return c * TRIPLE_WEIGHT_QUADRILINEAR.evaluate(p=p, W=W, X=X, Y=Y, Z=Z), ok


def trivial_trilinear_bound(p: int, X: int, Y: int, Z: int) -> float:
    """sqrt(p * X * Y) * Z, immediate from the bilinear bound."""
    return TRIVIAL_TRILINEAR.evaluate(p=p, X=X, Y=Y, Z=Z)


def prior_trilinear_bound(
    p: int, X: int, Y: int, Z: int, epsilon: float = 0.0
) -> float:
    """(XYZ)^(13/16) * p^(5/18 + epsilon), the earlier benchmark bound."""
    return PRIOR_TRILINEAR.with_epsilon(epsilon).evaluate(p=p, X=X, Y=Y, Z=Z)


@dataclass(frozen=True)
class CountingBounds:
    """The four counting upper bounds at constant 1, for one (p, U, V, W)."""

    product_diff_small_sets: float  # U^1.5 V^1.5 W^1.5 + max(U,V,W) UVW
    product_diff_all_ranges: float  # adds U^2 V^2 W^2 / p
    collinear_triples: float  # U^6/p + U^4.5
    diff_mult_energy: float  # U^8/p + U^6.5


def counting_bounds(p: int, U: int, V: int, W: int) -> CountingBounds:
    m = max(U, V, W)
    small = (U * V * W) ** 1.5 + m * U * V * W
    return CountingBounds(
        product_diff_small_sets=small,
        product_diff_all_ranges=(U * V * W) ** 2 / p + small,
        collinear_triples=U**6 / p + U**4.5,
        diff_mult_energy=U**8 / p + U**6.5,
    )


@dataclass(frozen=True)
class AuditRecord:
    bound: str
    p: int
    cards: tuple[int, ...]
    lhs: float
    rhs: float
    ratio: float
    seed: int
    ms: int = 0

    def __post_init__(self):
        assert self.ratio >= 0.0 and math.isfinite(self.ratio)


def audit(
    lhs: float,
    spec: BoundSpec,
    values: dict[str, float],
    seed: int = 0,
    ms: int = 0,
) -> AuditRecord:
    rhs = spec.evaluate(**values)
    cards = tuple(int(values[k]) for k in sorted(values) if k != "p")
    return audit_raw(lhs, spec.name, rhs, int(values["p"]), cards, seed, ms)


def audit_raw(
    lhs: float,
    name: str,
    rhs: float,
    p: int,
    cards: tuple[int, ...],
    seed: int = 0,
    ms: int = 0,
) -> AuditRecord:
    if rhs == 0.0:
        raise DegenerateBound(f"bound {name} evaluated to 0")
    return AuditRecord(name, p, tuple(cards), float(lhs), float(rhs),
                       float(lhs) / float(rhs), seed, ms)


@dataclass(frozen=True)
class RatioSummary:
    count: int
    max_ratio: float
    mean_ratio: float
    min_ratio: float


def aggregate(records) -> dict[str, RatioSummary]:
    """Per-bound ratio summary; max_ratio is the empirical implied constant."""
    grouped: dict[str, list[float]] = {}
    for r in records:
        grouped.setdefault(r.bound, []).append(r.ratio)
    return {
        name: RatioSummary(
            len(rs), max(rs), math.fsum(rs) / len(rs), min(rs)
        )
        for name, rs in sorted(grouped.items())
    }


def dominates_prior_on_grid(
    p_hi: int = 1000, card_max: int = 64, tol: float = 1e-12
) -> bool:
    """Whether the trilinear bound at c = 1 never exceeds the prior benchmark
    at eps = 0 over every p in [2, p_hi] and every ordered X >= Y >= Z grid
    triple.  Log-domain and vectorized per p; exponents come straight from the
    registered specs."""
    import numpy as np

    lx, ly, lz = [], [], []
    for X in range(1, card_max + 1):
        for Y in range(1, X + 1):
            for Z in range(1, Y + 1):
                lx.append(X)
                ly.append(Y)
                lz.append(Z)
    lx = np.log(np.array(lx, dtype=np.float64))
    ly = np.log(np.array(ly, dtype=np.float64))
    lz = np.log(np.array(lz, dtype=np.float64))
    el = dict(TRILINEAR.exponents)
    er = dict(PRIOR_TRILINEAR.exponents)
    lhs_cards = float(el["X"]) * lx + float(el["Y"]) * ly + float(el["Z"]) * lz
    rhs_cards = float(er["X"]) * lx + float(er["Y"]) * ly + float(er["Z"]) * lz
    for p in range(2, p_hi + 1):
        lp = math.log(p)
        lhs = float(el["p"]) * lp + lhs_cards
        rhs = float(er["p"]) * lp + rhs_cards
        if not np.all(lhs <= rhs + tol):
            return False
    return True

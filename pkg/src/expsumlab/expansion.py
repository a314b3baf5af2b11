"""Image-set sizes, covering checks, and the solution counts behind them.

Everything is exact: images come from dense representation-count tables over
F_p, so the same tables serve the set sizes, the hit counts, and the spectrum
moments.  Bound expressions are evaluated at constant 1 and returned next to
the exact quantity; nothing here asserts an implied constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import GuardTripped, NotSubgroup, OrderError
from .sets import FpSet, same_ctx, sumset

# elementary-operation cap per image/count computation
OP_GUARD = 10**9


def _rep_counts_product(A: FpSet, B: FpSet) -> np.ndarray:
    """counts[v] = #{(a, b): a*b = v}; all values are units."""
    p = A.ctx.p
    prods = A.as_array()[:, None] * B.as_array()[None, :] % p
    return np.bincount(prods.ravel(), minlength=p)


def _fold_product(counts: np.ndarray, C: FpSet) -> np.ndarray:
    """counts'[v] = sum_{c} counts[v * c^-1]; multiply the support by C."""
    ctx = C.ctx
    p = ctx.p
    out = np.zeros(p, dtype=np.int64)
    lanes = np.arange(p, dtype=np.int64)
    for c in C.elems:
        out[c * lanes % p] += counts
    return out


def _fold_shift(counts: np.ndarray, D: FpSet) -> np.ndarray:
    """counts'[v] = sum_{d} counts[v - d]; add D to the support."""
    out = np.zeros(len(counts), dtype=np.int64)
    for d in D.elems:
        out += np.roll(counts, d)
    return out


def shift_rep_counts(A: FpSet, B: FpSet, C: FpSet, D: FpSet) -> np.ndarray:
    """counts[h] = #{(a, b, c, d): a*b*c + d = h}, exact over F_p."""
    ctx = same_ctx(A, B, C, D)
    ops = len(A) * len(B) + ctx.p * (len(C) + len(D))
    if ops > OP_GUARD:
        raise GuardTripped(f"{ops} elementary operations exceed the guard")
    return _fold_shift(_fold_product(_rep_counts_product(A, B), C), D)


@dataclass(frozen=True)
class ImageReport:
    """Exact image size next to its constant-1 error term and lower bound."""

    size: int
    error_term: float
    lower_bound: float
    hyp_ok: bool


def triple_product_shift_image(
    A: FpSet, B: FpSet, C: FpSet, D: FpSet
) -> ImageReport:
    """|A*B*C + D| with the four-set asymptotic error and lower bound.

    The cardinality ordering A >= B >= C is a hard precondition.
    """
    if not len(A) >= len(B) >= len(C) >= 1:
        raise OrderError(
            f"need |A| >= |B| >= |C|, got {len(A)}, {len(B)}, {len(C)}"
        )
    p = A.ctx.p
    counts = shift_rep_counts(A, B, C, D)
    size = int(np.count_nonzero(counts))
    a, b, c, d = (float(len(s)) for s in (A, B, C, D))
    error = p**2.5 * a**-0.5 * b**-0.5 * c**-0.25 / d
    lower = min(float(p), a**0.5 * b**0.5 * c**0.25 * d / p**0.5)
    return ImageReport(size, error, lower, True)


def _cube_base_image(A: FpSet, B: FpSet, C: FpSet) -> np.ndarray:
    """Distinct values of (a+b+c)^3; the intermediate sumset keeps 0."""
    p = A.ctx.p
    base = np.array(sorted(sumset(A, B)), dtype=np.int64)
    full = np.unique((base[:, None] + C.as_array()[None, :]) % p)
    return np.unique(full * full % p * full % p)


def cubed_sumset_shift_image(
    A: FpSet, B: FpSet, C: FpSet, D: FpSet
) -> ImageReport:
    """|(A+B+C)^3 + D| with its error term and lower bound.

    Violating p^(2/3) >= |A| >= |B| >= |C| only clears hyp_ok.
    """
    ctx = same_ctx(A, B, C, D)
    p = ctx.p
    cubes = _cube_base_image(A, B, C)
    image = np.zeros(p, dtype=bool)
    for d in D.elems:
        image[(cubes + d) % p] = True
    size = int(np.count_nonzero(image))
    a, b, c, d = (float(len(s)) for s in (A, B, C, D))
    error = p**2.25 * a**-0.25 * b**-0.1875 * c**-0.1875 / d
    lower = min(float(p), a**0.25 * b**0.1875 * c**0.1875 * d / p**0.25)
    hyp = len(A) >= len(B) >= len(C) and len(A) ** 3 <= p**2
    return ImageReport(size, error, lower, hyp)


def covers_field(
    A: FpSet, B: FpSet, C: FpSet, D: FpSet, E: FpSet, shape: str
) -> tuple[bool, float]:
    """Exact coverage of F_p plus the scaled hypothesis quantity.

    shape 'product' checks A*B*C + D + E with hypothesis quantity
    A B sqrt(C) D^2 E^2 / p^5; shape 'cube' checks (A+B+C)^3 + D + E with
    A B^(3/4) C^(3/4) D^4 E^4 / p^9.  Coverage is expected once the quantity
    passes some absolute threshold; sweeps locate that threshold empirically.
    """
    ctx = same_ctx(A, B, C, D, E)
    p = ctx.p
    a, b, c, d, e = (float(len(s)) for s in (A, B, C, D, E))
    if shape == "product":
        support = np.nonzero(shift_rep_counts(A, B, C, D))[0]
        hyp = a * b * c**0.5 * d**2 * e**2 / p**5
    elif shape == "cube":
        cubes = _cube_base_image(A, B, C)
        mask = np.zeros(p, dtype=bool)
        for dv in D.elems:
            mask[(cubes + dv) % p] = True
        support = np.nonzero(mask)[0]
        hyp = a * b**0.75 * c**0.75 * d**4 * e**4 / p**9
    else:
        raise ValueError(f"unknown shape {shape!r}")
    covered = np.zeros(p, dtype=bool)
    for ev in E.elems:
        covered[(support + ev) % p] = True
    return bool(covered.all()), hyp


@dataclass(frozen=True)
class DichotomyReport:
    """Exact |A*B*C| and |A+D| against the two disjunct right-hand sides."""

    U: int
    V: int
    first_rhs: float
    second_rhs: float
    first_holds: bool
    second_holds: bool


def product_sumset_dichotomy(
    A: FpSet, B: FpSet, C: FpSet, D: FpSet
) -> DichotomyReport:
    """Either U*V clears p*A or U^3*V^2 clears A^4 B sqrt(C) D^2 / p
    (at constant 1; the guarantee is up to an implied constant)."""
    ctx = same_ctx(A, B, C, D)
    p = ctx.p
    U = int(np.count_nonzero(_fold_product(_rep_counts_product(A, B), C)))
    V = len(sumset(A, D))
    a, b, c, d = (float(len(s)) for s in (A, B, C, D))
    first_rhs = float(p) * a
    second_rhs = a**4 * b * c**0.5 * d**2 / p
    return DichotomyReport(
        U=U,
        V=V,
        first_rhs=first_rhs,
        second_rhs=second_rhs,
        first_holds=U * V >= first_rhs,
        second_holds=U**3 * V**2 >= second_rhs,
    )


def subgroup_sumset_size(G: FpSet, S: FpSet) -> tuple[int, float]:
    """Exact |G + S| for a multiplicative subgroup G, with the constant-1
    lower-bound expression min(p, S * T^(5/4) / sqrt(p))."""
    ctx = same_ctx(G, S)
    p = ctx.p
    members = set(G.elems)
    if 1 not in members:
        raise NotSubgroup("1 is missing")
    for g in G.elems:
        if any(g * h % p not in members for h in G.elems):
            raise NotSubgroup(f"not closed at {g}")
    size = len(sumset(G, S))
    t, s = float(len(G)), float(len(S))
    return size, min(float(p), s * t**1.25 / p**0.5)


def count_solutions_with_shift(
    A: FpSet, B: FpSet, C: FpSet, D: FpSet, E: Iterable[int]
) -> int:
    """#{(a,b,c,d,e) : a*b*c + d = e} with e drawn from plain residues."""
    counts = shift_rep_counts(A, B, C, D)
    return int(sum(int(counts[e % A.ctx.p]) for e in set(E)))


def complement_hit_count(A: FpSet, B: FpSet, C: FpSet, D: FpSet) -> int:
    """Solution count with the target set taken as the complement of the
    image A*B*C + D; must come back 0, a self-test of the counting tables."""
    p = A.ctx.p
    image = np.nonzero(shift_rep_counts(A, B, C, D))[0]
    complement = set(range(p)) - {int(v) for v in image}
    return count_solutions_with_shift(A, B, C, D, complement)


def shift_rep_second_moment(A: FpSet, B: FpSet, C: FpSet, D: FpSet) -> int:
    """sum over h of (#{a*b*c + d = h})^2, with the first moment re-checked."""
    counts = shift_rep_counts(A, B, C, D)
    first = int(counts.sum())
    assert first == len(A) * len(B) * len(C) * len(D)
    return int((counts.astype(object) ** 2).sum())

"""Exact counting: spectra of product/difference expressions and their moments.

Every quantity here is an exact integer.  Spectra are dense length-p int64
tables (counts stay far below 2^63 at desk scale); second moments go through
Python ints via object-dtype arithmetic, so no moment ever overflows.  Each
fast count has an exhaustive all-pairs oracle used by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooLarge
from .ffield import FieldCtx
from .sets import FpSet, same_ctx

# cap on pairwise comparisons inside the exhaustive oracles
ORACLE_GUARD = 10**8


@dataclass(frozen=True)
class Spectrum:
    """Exact integer distribution value -> count over F_p (index 0 = value 0)."""

    ctx: FieldCtx
    counts: np.ndarray

    def total(self) -> int:
        return int(self.counts.sum())

    def second_moment(self, skip_zero: bool = False) -> int:
        c = self.counts[1:] if skip_zero else self.counts
        return int((c.astype(object) ** 2).sum())


@dataclass(frozen=True)
class EnergyReport:
    name: str
    value: int
    method: str
    inputs: str

    def __post_init__(self):
        assert self.value >= 0


def _descr(*sets: FpSet) -> str:
    p = sets[0].ctx.p
    return f"p={p} " + " ".join(str(len(s)) for s in sets)


def _pair_count(vals: np.ndarray) -> int:
    """Number of ordered pairs (i, j) with vals[i] == vals[j], chunked."""
    n = len(vals)
    if n * n > ORACLE_GUARD:
        raise TooLarge(f"{n * n} pairwise comparisons exceed the oracle guard")
    total = 0
    for i0 in range(0, n, 512):
        block = vals[i0 : i0 + 512]
        total += int(np.sum(block[:, None] == vals[None, :]))
    return total


def _diff_counts(A: FpSet, B: FpSet) -> np.ndarray:
    """counts[d] = #{(a, b) in A x B : a - b = d mod p}."""
    p = A.ctx.p
    d = (A.as_array()[:, None] - B.as_array()[None, :]) % p
    return np.bincount(d.ravel(), minlength=p)


def _scatter_products(p: int, ca: np.ndarray, cb: np.ndarray) -> np.ndarray:
    """out[m] = sum over nonzero d1, d2 with d1*d2 = m of ca[d1]*cb[d2]."""
    out = np.zeros(p, dtype=np.int64)
    sa = np.nonzero(ca[1:])[0] + 1
    sb = np.nonzero(cb[1:])[0] + 1
    if len(sa) == 0 or len(sb) == 0:
        return out
    prods = sa[:, None] * sb[None, :] % p
    weights = ca[sa][:, None] * cb[sb][None, :]
    np.add.at(out, prods.ravel(), weights.ravel())
    return out


def product_diff_spectrum(U: FpSet, V: FpSet, W: FpSet) -> Spectrum:
    """r(m) = #{(u, v, w) : u*(v - w) = m}, built from the (V, W) diff table."""
    ctx = same_ctx(U, V, W)
    p = ctx.p
    dc = _diff_counts(V, W)
    r = np.zeros(p, dtype=np.int64)
    lanes = np.arange(p, dtype=np.int64)
    for u in U.elems:
        # multiplication by a unit permutes residues, so plain fancy add is safe
        r[u * lanes % p] += dc
    return Spectrum(ctx, r)


def product_diff_energy(
    U: FpSet, V: FpSet, W: FpSet, nonzero_only: bool = False
) -> EnergyReport:
    """Solutions of u1*(v1 - w1) = u2*(v2 - w2), as a spectrum second moment.

    Zero-solutions (both sides 0) are counted by default; `nonzero_only`
    restricts to nonzero common values.
    """
    spec = product_diff_spectrum(U, V, W)
    value = spec.second_moment(skip_zero=nonzero_only)
    return EnergyReport("product_diff_energy", value, "fast", _descr(U, V, W))


def product_diff_energy_oracle(
    U: FpSet, V: FpSet, W: FpSet, nonzero_only: bool = False
) -> EnergyReport:
    p = same_ctx(U, V, W).p
    vals = np.array(
        [u * (v - w) % p for u in U.elems for v in V.elems for w in W.elems],
        dtype=np.int64,
    )
    if nonzero_only:
        vals = vals[vals != 0]
    value = _pair_count(vals)
    return EnergyReport("product_diff_energy", value, "oracle", _descr(U, V, W))


def collinear_triples(U: FpSet, all_nonzero: bool = False) -> EnergyReport:
    """Pairs of triples with equal difference ratio (u1-v)/(u2-v).

    Convention: denominators are required nonzero (u2 != v), numerators are
    free, so the ratio 0 participates.  `all_nonzero` also excludes u1 = v.
    """
    ctx = U.ctx
    p = ctx.p
    arr = U.as_array()
    rho = np.zeros(p, dtype=np.int64)
    for v in U.elems:
        diffs = (arr - v) % p
        dens = diffs[diffs != 0]
        nums = diffs[diffs != 0] if all_nonzero else diffs
        if len(dens) == 0:
            continue
        lam = nums[:, None] * ctx.inv[dens][None, :] % p
        rho += np.bincount(lam.ravel(), minlength=p)
    value = int((rho.astype(object) ** 2).sum())
    return EnergyReport("collinear_triples", value, "fast", _descr(U))


def collinear_triples_oracle(U: FpSet, all_nonzero: bool = False) -> EnergyReport:
    ctx = U.ctx
    p = ctx.p
    vals = []
    for v in U.elems:
        for u1 in U.elems:
            if all_nonzero and u1 == v:
                continue
            for u2 in U.elems:
                if u2 == v:
                    continue
                vals.append((u1 - v) * int(ctx.inv[(u2 - v) % p]) % p)
    value = _pair_count(np.array(vals, dtype=np.int64))
    return EnergyReport("collinear_triples", value, "oracle", _descr(U))


def diff_mult_energy(U: FpSet) -> EnergyReport:
    """Solutions of (u1-v1)(u2-v2) = (u3-v3)(u4-v4) over U^8."""
    p = U.ctx.p
    n = len(U)
    dc = _diff_counts(U, U)
    s = _scatter_products(p, dc, dc)
    # pairs hitting 0: first factor zero, plus second zero, minus both
    s[0] = 2 * n**3 - n**2
    value = int((s.astype(object) ** 2).sum())
    return EnergyReport("diff_mult_energy", value, "fast", _descr(U))


def diff_mult_energy_oracle(U: FpSet) -> EnergyReport:
    p = U.ctx.p
    e = U.elems
    vals = np.array(
        [
            (u1 - v1) * (u2 - v2) % p
            for u1 in e
            for v1 in e
            for u2 in e
            for v2 in e
        ],
        dtype=np.int64,
    )
    return EnergyReport("diff_mult_energy", _pair_count(vals), "oracle", _descr(U))


def mult_energy(U: FpSet) -> EnergyReport:
    """Solutions of u1*u2 = u3*u4 over U^4."""
    p = U.ctx.p
    arr = U.as_array()
    m = np.bincount((arr[:, None] * arr[None, :] % p).ravel(), minlength=p)
    value = int((m.astype(object) ** 2).sum())
    return EnergyReport("mult_energy", value, "fast", _descr(U))


def mult_energy_oracle(U: FpSet) -> EnergyReport:
    p = U.ctx.p
    vals = np.array(
        [u1 * u2 % p for u1 in U.elems for u2 in U.elems], dtype=np.int64
    )
    return EnergyReport("mult_energy", _pair_count(vals), "oracle", _descr(U))


def diff_product_spectrum(Y: FpSet, Z: FpSet, mode: str) -> Spectrum:
    """Distribution of (y1-y2)*(z1-z2) (quadruple) or (y1-y2)*z (triple)."""
    ctx = same_ctx(Y, Z)
    p = ctx.p
    ny, nz = len(Y), len(Z)
    dy = _diff_counts(Y, Y)
    if mode == "quadruple":
        dz = _diff_counts(Z, Z)
        counts = _scatter_products(p, dy, dz)
        counts[0] = ny * nz**2 + ny**2 * nz - ny * nz
    elif mode == "triple":
        ze = np.bincount(Z.as_array(), minlength=p)
        counts = _scatter_products(p, dy, ze)
        counts[0] = ny * nz
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return Spectrum(ctx, counts)


def diff_product_energy(Y: FpSet, Z: FpSet) -> EnergyReport:
    """Second moment over nonzero values of the quadruple-mode spectrum."""
    spec = diff_product_spectrum(Y, Z, "quadruple")
    value = spec.second_moment(skip_zero=True)
    return EnergyReport("diff_product_energy", value, "fast", _descr(Y, Z))


def _abs_char_sums_sq(ctx: FieldCtx, counts: np.ndarray) -> np.ndarray:
    """|sum_d counts[d] chi_j(d)|^2 for every character index j, via one DFT.

    Zero arguments contribute nothing (counts[0] is ignored).
    """
    p = ctx.p
    a = np.zeros(p - 1, dtype=np.float64)
    support = np.nonzero(counts[1:])[0] + 1
    a[ctx.dlog[support]] = counts[support]
    return np.abs(np.fft.fft(a)) ** 2


def diff_product_energy_char(Y: FpSet, Z: FpSet) -> tuple[float, float]:
    """The nonzero-product second moment two ways: spectrum vs character sums.

    Averaging |sum chi(y1-y2)|^2 |sum chi(z1-z2)|^2 over all p-1 characters
    reproduces the direct count exactly (up to FFT roundoff).
    """
    ctx = same_ctx(Y, Z)
    direct = float(diff_product_energy(Y, Z).value)
    fy = _abs_char_sums_sq(ctx, _diff_counts(Y, Y))
    fz = _abs_char_sums_sq(ctx, _diff_counts(Z, Z))
    via_chars = float(np.dot(fy, fz)) / (ctx.p - 1)
    return direct, via_chars


def product_diff_energy_window(
    U: FpSet, V: FpSet, W: FpSet
) -> tuple[int, float, float]:
    """(exact count, main term U^2V^2W^2/(p-1), allowed radius p*U*V*W)."""
    ctx = same_ctx(U, V, W)
    n = product_diff_energy(U, V, W).value
    nu, nv, nw = len(U), len(V), len(W)
    center = (nu * nv * nw) ** 2 / (ctx.p - 1)
    radius = float(ctx.p * nu * nv * nw)
    return n, center, radius


def max_char_diff_sum(V: FpSet, W: FpSet) -> float:
    """max over nonprincipal characters of |sum_{v,w} chi(v - w)|."""
    ctx = same_ctx(V, W)
    mags = np.sqrt(_abs_char_sums_sq(ctx, _diff_counts(V, W)))
    return float(mags[1:].max()) if len(mags) > 1 else 0.0


def additive_char_second_moment(X: FpSet) -> tuple[float, float]:
    """(sum over all lambda of |sum_x e_p(lambda x)|^2, its exact value p*|X|)."""
    ctx = X.ctx
    p = ctx.p
    phases = ctx.unit_roots[np.arange(p)[:, None] * X.as_array()[None, :] % p]
    measured = float(np.sum(np.abs(phases.sum(axis=1)) ** 2))
    return measured, float(p * len(X))

"""Weighted exponential sums over products of sets, naive and transform paths.

All evaluators share the twist convention: the additive character applied is
a |-> e_p(t*a), so t = 1 recovers the plain character and other units realize
the twisted characters that the reduction machinery generates internally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadTensorShape, CtxMismatch, TooLarge, TooManyVariables
from .ffield import FieldCtx
from .sets import FpSet, WeightTensor, WeightVec, same_ctx

# direct cyclic convolution below this length, FFT above
_CONV_DIRECT_MAX = 1 << 12
# refuse naive grids past this many cells
_GRID_GUARD = 10**7


def rel_close(a: complex, b: complex, tol: float) -> bool:
    """Relative closeness with an absolute floor of 1, safe near zero sums."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class SumResult:
    value: complex
    n_terms: int
    path: str

    def __post_init__(self):
        # triangle inequality for unit-bounded weights
        assert abs(self.value) <= self.n_terms * (1 + 1e-9) + 1e-6


def _vec_ctx(*ws: WeightVec) -> FieldCtx:
    return same_ctx(*(w.base for w in ws))


def bilinear_sum(Xw: WeightVec, Yw: WeightVec, t: int) -> SumResult:
    """sum_x sum_y alpha_x beta_y e_p(t*x*y)."""
    ctx = _vec_ctx(Xw, Yw)
    p = ctx.p
    x = Xw.base.as_array()
    y = Yw.base.as_array()
    phases = ctx.unit_roots[(t % p) * np.outer(x, y) % p]
    value = complex(Xw.w @ phases @ Yw.w)
    return SumResult(value, len(x) * len(y), "naive")


def trilinear_sum(Xw: WeightVec, Yw: WeightVec, Zw: WeightVec, t: int) -> SumResult:
    """sum alpha_x beta_y gamma_z e_p(t*x*y*z), row-major over sorted sets."""
    ctx = _vec_ctx(Xw, Yw, Zw)
    p = ctx.p
    yz = np.outer(Yw.base.as_array(), Zw.base.as_array()) % p
    value = 0j
    for ax, xv in zip(Xw.w, Xw.base.elems):
        phases = ctx.unit_roots[(t % p) * xv * yz % p]
        value += ax * complex(Yw.w @ phases @ Zw.w)
    n = len(Xw.base) * len(Yw.base) * len(Zw.base)
    return SumResult(complex(value), n, "naive")


def quadrilinear_sum(
    Ww: WeightVec, Xw: WeightVec, Yw: WeightVec, Zw: WeightVec, t: int
) -> SumResult:
    ctx = _vec_ctx(Ww, Xw, Yw, Zw)
    p = ctx.p
    yz = np.outer(Yw.base.as_array(), Zw.base.as_array()) % p
    value = 0j
    for aw, wv in zip(Ww.w, Ww.base.elems):
        for ax, xv in zip(Xw.w, Xw.base.elems):
            phases = ctx.unit_roots[(t % p) * (wv * xv % p) * yz % p]
            value += aw * ax * complex(Yw.w @ phases @ Zw.w)
    n = len(Ww.base) * len(Xw.base) * len(Yw.base) * len(Zw.base)
    return SumResult(complex(value), n, "naive")


def _cyclic_conv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a)
    if n <= _CONV_DIRECT_MAX:
        lin = np.convolve(a, b)
        out = lin[:n].copy()
        out[: n - 1] += lin[n:]
        return out
    return np.fft.ifft(np.fft.fft(a) * np.fft.fft(b))


def trilinear_sum_fast(
    Xw: WeightVec, Yw: WeightVec, Zw: WeightVec, t: int
) -> SumResult:
    """Same sum via dlog transport: two cyclic convolutions on Z/(p-1), then
    one length-p character sum against the weighted representation function."""
    ctx = _vec_ctx(Xw, Yw, Zw)
    p = ctx.p
    n = p - 1

    def lift(wv: WeightVec) -> np.ndarray:
        f = np.zeros(n, dtype=np.complex128)
        f[ctx.dlog[wv.base.as_array()]] = wv.w
        return f

    f = _cyclic_conv(_cyclic_conv(lift(Xw), lift(Yw)), lift(Zw))
    phases = ctx.unit_roots[(t % p) * ctx.exp % p]
    value = complex(f @ phases)
    n_terms = len(Xw.base) * len(Yw.base) * len(Zw.base)
    return SumResult(value, n_terms, "transform")


def _grid_size(sets: list[FpSet] | tuple[FpSet, ...]) -> int:
    size = 1
    for s in sets:
        size *= len(s)
    if size > _GRID_GUARD:
        raise TooLarge(f"naive grid of {size} cells exceeds guard")
    return size


def _phase_grid(ctx: FieldCtx, sets, t: int) -> np.ndarray:
    """e_p(t * x_1 * ... * x_n) over the full Cartesian grid."""
    p = ctx.p
    prod = np.asarray([t % p], dtype=np.int64)
    for s in sets:
        prod = prod[..., None] * s.as_array() % p
    return ctx.unit_roots[prod[0]]


def multilinear_T(sets, weights, t: int) -> SumResult:
    """Coordinate-omitting-weight sum: each weights[i] ignores coordinate i."""
    n = len(sets)
    if n > 4:
        raise TooManyVariables(f"{n} variables not supported")
    if n < 2:
        raise ValueError("need at least two variables")
    if len(weights) != n:
        raise BadTensorShape(f"{n} sets but {len(weights)} weight tensors")
    ctx = same_ctx(*sets)
    elems = tuple(s.elems for s in sets)
    for i, tensor in enumerate(weights):
        if tensor.omitted != i:
            raise BadTensorShape(f"tensor {i} omits coordinate {tensor.omitted}")
        if tuple(s.elems for s in tensor.axes) != elems:
            raise BadTensorShape(f"tensor {i} axes disagree with the sets")
    size = _grid_size(sets)
    phases = _phase_grid(ctx, sets, t)
    wprod = np.ones(phases.shape, dtype=np.complex128)
    for i, tensor in enumerate(weights):
        wprod *= np.expand_dims(tensor.w, axis=i)
    return SumResult(complex((wprod * phases).sum()), size, "naive")


def poly_arg_sum(sets, F: dict[tuple[int, ...], int], t: int) -> SumResult:
    """sum e_p(t * F(x_1,...,x_n)) for F a coefficient map over monomials."""
    n = len(sets)
    if n > 4:
        raise TooManyVariables(f"{n} variables not supported")
    ctx = same_ctx(*sets)
    p = ctx.p
    size = _grid_size(sets)
    shape = tuple(len(s) for s in sets)
    total = np.zeros(shape, dtype=np.int64)
    for mono, coeff in F.items():
        if len(mono) != n:
            raise BadTensorShape(f"monomial {mono} has wrong arity")
        term = np.full(shape, coeff % p, dtype=np.int64)
        for i, e in enumerate(mono):
            col = np.array([pow(a, e, p) for a in sets[i].elems], dtype=np.int64)
            term = term * np.expand_dims(
                col, axis=tuple(j for j in range(n) if j != i)
            ) % p
        total = (total + term) % p
    value = complex(ctx.unit_roots[(t % p) * total % p].sum())
    return SumResult(value, size, "naive")


def reduction_check(sets, weights, t: int) -> tuple[float, float]:
    """Both sides of the Cauchy-Hoelder reduction of an n-linear sum.

    lhs = |T|^(2^(n-1)); rhs multiplies the stated cardinality powers by the
    full sum over (x_j, y_j), j >= 2, of |sum_{x_1} e_p(t x_1 (x_2-y_2)...)|.
    The contract across the suite is lhs <= rhs up to accumulation error.
    """
    n = len(sets)
    if n not in (2, 3, 4):
        raise TooManyVariables(f"reduction stated for 2..4 variables, got {n}")
    ctx = same_ctx(*sets)
    p = ctx.p
    m = 1 << (n - 1)
    lhs = abs(multilinear_T(sets, weights, t).value) ** m

    # counts of the product (x_2-y_2)...(x_n-y_n) over all choices
    gcounts = np.zeros(p, dtype=np.int64)
    prod = np.asarray([1], dtype=np.int64)
    for s in sets[1:]:
        arr = s.as_array()
        diffs = (arr[:, None] - arr[None, :]) % p
        prod = prod[:, None] * diffs.ravel() % p
        prod = prod.ravel()
    np.add.at(gcounts, prod, 1)

    x1 = sets[0].as_array()
    inner = np.abs(
        ctx.unit_roots[((t % p) * np.arange(p))[:, None] * x1 % p].sum(axis=1)
    )
    coeff = len(sets[0]) ** (m - 1)
    rest = 1
    for s in sets[1:]:
        rest *= len(s)
    coeff *= rest ** (m - 2)
    rhs = float(coeff) * float(gcounts @ inner)
    return float(lhs), rhs

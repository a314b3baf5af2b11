"""Acceptance gate: seventeen numbered end-to-end checks at pinned tolerances.

Each test emits one `criterion NN PASS/FAIL` line (collected by conftest and
printed after the run), so a full invocation doubles as a go/no-go report.
"""

import itertools
import time
from functools import lru_cache

from conftest import record_criterion

from expsumlab import (
    SplitMix64,
    bilinear_sum,
    collinear_triples,
    complement_hit_count,
    covers_field,
    derive_seed,
    diff_mult_energy,
    diff_product_energy,
    diff_product_energy_char,
    diff_product_spectrum,
    dominates_prior_on_grid,
    fpset,
    gen_random,
    make_field,
    make_tensor,
    make_weights,
    max_char_diff_sum,
    mult_energy,
    product_diff_energy,
    product_diff_energy_window,
    reduction_check,
    rel_close,
    shift_rep_counts,
    trilinear_sum,
    trilinear_sum_fast,
)
from expsumlab.energies import (
    additive_char_second_moment,
    collinear_triples_oracle,
    diff_mult_energy_oracle,
    mult_energy_oracle,
    product_diff_energy_oracle,
)
from expsumlab.experiments import make_config, render_csv, run


def _verdict(nn: int, desc: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {nn:02d} {'PASS' if ok else 'FAIL'} - {desc}"
    if detail:
        line += f" ({detail})"
    record_criterion(line)
    assert ok, line


def _size(rng: SplitMix64, lo: int, hi: int) -> int:
    return lo + rng.next_below(hi - lo + 1)


def test_criterion_01_bilinear_constant_one():
    worst = 0.0
    ok = True
    for p in (31, 101, 257):
        ctx = make_field(p)
        for i in range(200):
            rng = SplitMix64(derive_seed(101, p, i))
            X = gen_random(ctx, _size(rng, 1, min(24, p - 1)), rng.next_u64())
            Y = gen_random(ctx, _size(rng, 1, min(24, p - 1)), rng.next_u64())
            Xw = make_weights(X, "random-disc", rng.next_u64())
            Yw = make_weights(Y, "random-disc", rng.next_u64())
            t = 1 + rng.next_below(p - 1)
            lhs = abs(bilinear_sum(Xw, Yw, t).value)
            rhs = (p * len(X) * len(Y)) ** 0.5 + 1e-6
            worst = max(worst, lhs / rhs)
            ok = ok and lhs <= rhs
    _verdict(1, "bilinear sum within sqrt(p|X||Y|) on 600 draws", ok,
             f"max ratio {worst:.4f}")


def test_criterion_02_product_diff_window():
    worst = 0.0
    ok = True
    for p in (31, 101):
        ctx = make_field(p)
        for i in range(100):
            rng = SplitMix64(derive_seed(102, p, i))
            U = gen_random(ctx, _size(rng, 1, min(16, p - 1)), rng.next_u64())
            V = gen_random(ctx, _size(rng, 1, min(16, p - 1)), rng.next_u64())
            W = gen_random(ctx, _size(rng, 1, min(16, p - 1)), rng.next_u64())
            n, center, radius = product_diff_energy_window(U, V, W)
            gap = abs(n - center)
            worst = max(worst, gap / radius)
            ok = ok and gap <= radius + 1e-6
    _verdict(2, "product-difference count stays in the +-p|U||V||W| window",
             ok, f"max |N-center|/radius {worst:.4f}")


def test_criterion_03_additive_char_orthogonality():
    worst = 0.0
    ok = True
    for p in (31, 101, 257):
        ctx = make_field(p)
        for size in (5, 20):
            for i in range(4):
                X = gen_random(ctx, size, derive_seed(103, p, size, i))
                measured, exact = additive_char_second_moment(X)
                err = abs(measured - exact) / exact
                worst = max(worst, err)
                ok = ok and err <= 1e-9
    _verdict(3, "additive character second moment equals p|X|", ok,
             f"max rel err {worst:.2e}")


def _subset_family_f7():
    ctx = make_field(7)
    fam = []
    for k in range(1, 5):
        for combo in itertools.combinations(range(1, 7), k):
            fam.append(fpset(ctx, combo))
    return fam


def test_criterion_04_triple_moment_identity():
    fam = _subset_family_f7()
    ok = True
    checked = 0
    for Y in fam:
        for Z in fam:
            lhs = diff_product_spectrum(Y, Z, "triple").second_moment()
            ok = ok and lhs == product_diff_energy(Z, Y, Y).value
            checked += 1
    ctx = make_field(31)
    for i in range(50):
        rng = SplitMix64(derive_seed(104, i))
        Y = gen_random(ctx, _size(rng, 1, 8), rng.next_u64())
        Z = gen_random(ctx, _size(rng, 1, 8), rng.next_u64())
        lhs = diff_product_spectrum(Y, Z, "triple").second_moment()
        ok = ok and lhs == product_diff_energy(Z, Y, Y).value
        checked += 1
    _verdict(4, "sum of squared triple counts equals the N energy exactly",
             ok, f"{checked} instances")


@lru_cache(maxsize=1)
def _k_instances():
    out = []
    for p in (7, 31, 101):
        ctx = make_field(p)
        for i in range(17):
            rng = SplitMix64(derive_seed(105, p, i))
            cap = min(10, p - 1)
            Y = gen_random(ctx, _size(rng, 1, cap), rng.next_u64())
            Z = gen_random(ctx, _size(rng, 1, cap), rng.next_u64())
            out.append((Y, Z))
    return out


def test_criterion_05_k_character_identity():
    worst = 0.0
    ok = True
    for Y, Z in _k_instances():
        direct, via = diff_product_energy_char(Y, Z)
        err = abs(direct - via) / max(1.0, direct)
        worst = max(worst, err)
        ok = ok and err <= 1e-6
    _verdict(5, "difference-product energy matches its character-sum form",
             ok, f"max rel err {worst:.2e}")


def test_criterion_06_k_cauchy():
    ok = True
    for Y, Z in _k_instances():
        k = diff_product_energy(Y, Z).value
        ok = ok and k * k <= diff_mult_energy(Y).value * diff_mult_energy(Z).value
    _verdict(6, "K^2 never exceeds Dx(Y)*Dx(Z)", ok,
             f"{len(_k_instances())} instances")


@lru_cache(maxsize=1)
def _oracle_family():
    singles = list(_subset_family_f7())
    ctx = make_field(31)
    for i in range(50):
        rng = SplitMix64(derive_seed(107, i))
        singles.append(gen_random(ctx, _size(rng, 1, 8), rng.next_u64()))
    return singles


def test_criterion_07_oracle_equivalence():
    ctx5 = make_field(5)
    pinned = (
        (product_diff_energy(fpset(ctx5, [1]), fpset(ctx5, [1, 2]),
                             fpset(ctx5, [3])),
         product_diff_energy_oracle(fpset(ctx5, [1]), fpset(ctx5, [1, 2]),
                                    fpset(ctx5, [3])), 2),
        (diff_mult_energy(fpset(ctx5, [1, 2])),
         diff_mult_energy_oracle(fpset(ctx5, [1, 2])), 152),
        (collinear_triples(fpset(ctx5, [1, 2])),
         collinear_triples_oracle(fpset(ctx5, [1, 2])), 8),
        (mult_energy(fpset(ctx5, [1, 2])),
         mult_energy_oracle(fpset(ctx5, [1, 2])), 6),
    )
    ok = all(f.value == o.value == want for f, o, want in pinned)
    checked = 4
    ctx31 = make_field(31)
    for i in range(50):
        rng = SplitMix64(derive_seed(117, i))
        U = gen_random(ctx31, _size(rng, 1, 8), rng.next_u64())
        V = gen_random(ctx31, _size(rng, 1, 8), rng.next_u64())
        W = gen_random(ctx31, _size(rng, 1, 8), rng.next_u64())
        ok = ok and (product_diff_energy(U, V, W).value
                     == product_diff_energy_oracle(U, V, W).value)
        checked += 1
    for U in _oracle_family():
        ok = ok and collinear_triples(U).value == collinear_triples_oracle(U).value
        ok = ok and diff_mult_energy(U).value == diff_mult_energy_oracle(U).value
        ok = ok and mult_energy(U).value == mult_energy_oracle(U).value
        checked += 3
    _verdict(7, "fast counts agree with exhaustive oracles and pinned values",
             ok, f"{checked} comparisons")


def test_criterion_08_reduction_inequality():
    ctx = make_field(31)
    worst = 0.0
    ok = True
    for n in (2, 3, 4):
        for i in range(50):
            rng = SplitMix64(derive_seed(108, n, i))
            sets = [gen_random(ctx, _size(rng, 2, 4), rng.next_u64())
                    for _ in range(n)]
            tens = [make_tensor(tuple(sets), j, "random-unimodular",
                                rng.next_u64()) for j in range(n)]
            t = 1 + rng.next_below(30)
            lhs, rhs = reduction_check(sets, tens, t)
            if rhs > 0:
                worst = max(worst, lhs / rhs)
            ok = ok and lhs <= rhs * (1 + 1e-6)
    _verdict(8, "multilinear sums obey the Cauchy-Hoelder reduction", ok,
             f"max lhs/rhs {worst:.6f}")


def test_criterion_09_energy_decomposition():
    ok = True
    for U in _oracle_family():
        u = len(U)
        bound = u * u * collinear_triples(U).value + (2 * u**3 - u**2) ** 2
        ok = ok and diff_mult_energy(U).value <= bound
    _verdict(9, "Dx(U) bounded by U^2 T(U) plus the zero-class square", ok,
             f"{len(_oracle_family())} sets")


def test_criterion_10_double_char_bound():
    worst = 0.0
    ok = True
    for p in (31, 101):
        ctx = make_field(p)
        for i in range(50):
            rng = SplitMix64(derive_seed(110, p, i))
            V = gen_random(ctx, _size(rng, 2, min(12, p - 1)), rng.next_u64())
            W = gen_random(ctx, _size(rng, 2, min(12, p - 1)), rng.next_u64())
            lhs = max_char_diff_sum(V, W)
            rhs = (p * len(V) * len(W)) ** 0.5 + 1e-6
            worst = max(worst, lhs / rhs)
            ok = ok and lhs <= rhs
    _verdict(10, "largest nonprincipal character sum within sqrt(p|V||W|)",
             ok, f"max ratio {worst:.4f}")


def test_criterion_11_naive_transform_equivalence():
    primes = (7, 13, 31, 61, 101, 151, 257)
    ok = True
    for i in range(100):
        p = primes[i % len(primes)]
        ctx = make_field(p)
        rng = SplitMix64(derive_seed(111, i))
        cap = min(8, p - 1)
        ws = [make_weights(gen_random(ctx, _size(rng, 1, cap), rng.next_u64()),
                           "random-disc", rng.next_u64()) for _ in range(3)]
        t = 1 + rng.next_below(p - 1)
        a = trilinear_sum(*ws, t).value
        b = trilinear_sum_fast(*ws, t).value
        ok = ok and rel_close(a, b, 1e-9)
    _verdict(11, "direct and transform trilinear paths agree to 1e-9", ok,
             "100 instances")


@lru_cache(maxsize=1)
def _audit_sweep():
    cfg = make_config({"primes": [31, 101, 257], "reps": 2, "seed": 0},
                      kind="audit-bounds")
    t0 = time.perf_counter()
    result = run(cfg)
    elapsed = time.perf_counter() - t0
    return cfg, result, elapsed


def test_criterion_12_trivial_bound_never_exceeded():
    _, result, _ = _audit_sweep()
    rows = [r for r in result.rows
            if r.bound == "trivial_trilinear" and r.exp_id != "summary"]
    ok = bool(rows) and all(r.ratio <= 1 + 1e-6 for r in rows)
    ok = ok and not result.violations
    _verdict(12, "trivial trilinear bound holds across the audit sweep", ok,
             f"{len(rows)} rows, max ratio "
             f"{max((r.ratio for r in rows), default=0.0):.4f}")


def test_criterion_13_new_bound_dominates_prior():
    ok = dominates_prior_on_grid(p_hi=1000, card_max=64)
    _verdict(13, "explicit bound beats the benchmark on the whole grid", ok,
             "p in 2..1000, ordered cards in 1..64")


@lru_cache(maxsize=1)
def _shift_instances():
    out = []
    for p in (31, 101):
        ctx = make_field(p)
        for i in range(50):
            rng = SplitMix64(derive_seed(114, p, i))
            out.append(tuple(
                gen_random(ctx, _size(rng, 2, 8), rng.next_u64())
                for _ in range(4)
            ))
    return out


def test_criterion_14_complement_count_vanishes():
    ok = all(complement_hit_count(*inst) == 0 for inst in _shift_instances())
    _verdict(14, "no solutions land outside the abc+d image", ok,
             f"{len(_shift_instances())} instances")


def test_criterion_15_first_moment_and_cauchy():
    ok = True
    for A, B, C, D in _shift_instances():
        counts = shift_rep_counts(A, B, C, D)
        abcd = len(A) * len(B) * len(C) * len(D)
        ok = ok and int(counts.sum()) == abcd
        size = int((counts > 0).sum())
        second = int(sum(int(c) ** 2 for c in counts))
        ok = ok and abcd * abcd <= size * second
    _verdict(15, "representation counts have exact mass and obey Cauchy", ok,
             f"{len(_shift_instances())} instances")


def test_criterion_16_large_sets_cover():
    ok = True
    checked = 0
    for p in (11, 31, 101):
        ctx = make_field(p)
        size = p // 2 + 1
        for i in range(3):
            rng = SplitMix64(derive_seed(116, p, i))
            sets = tuple(gen_random(ctx, size, rng.next_u64())
                         for _ in range(5))
            for shape in ("product", "cube"):
                covered, _ = covers_field(*sets, shape)
                ok = ok and covered
                checked += 1
    _verdict(16, "five sets larger than p/2 always cover the field", ok,
             f"{checked} shape checks")


def test_criterion_17_audit_sweep_report():
    cfg, result, elapsed = _audit_sweep()
    rows = result.rows
    summary = [r for r in rows if r.exp_id == "summary"]
    bounds_seen = {r.bound for r in rows if r.exp_id != "summary"}
    ok = bool(summary) and {r.bound for r in summary} == bounds_seen
    ok = ok and elapsed < 300.0
    rerun = run(cfg)
    ok = ok and render_csv(rerun.rows) == render_csv(rows)
    _verdict(17, "bound audit completes, aggregates, and is deterministic",
             ok, f"{len(rows)} rows, {len(summary)} bounds, {elapsed:.1f}s")

"""Seeded experiment sweeps over the evaluator modules, with deterministic
CSV/JSON reports.

A config fixes (kind, primes, set specs, weight scheme, seed, reps); the
runner fans independent jobs over a thread pool, collects rows in job order,
sorts them, and formats floats at 17 significant digits, so a fixed config
always produces byte-identical report files.  The ms column is 0 unless
timing is switched on, which deliberately breaks byte-identity.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from . import bounds as bd
from . import energies as en
from . import expansion as ex
from . import expsums as es
from .errors import ConfigError, LabError
from .ffield import make_field, subgroup_elems
from .rng import SplitMix64, derive_seed
from .sets import (
    WEIGHT_SCHEMES,
    FpSet,
    fpset,
    gen_interval,
    gen_random,
    make_tensor,
    make_weights,
    parse_set_spec,
)

KINDS = ("sum", "energy", "audit-bounds", "expansion", "identity-suite")

CSV_HEADER = "exp_id,kind,p,sets,cards,quantity,lhs,bound,rhs,ratio,method,seed,ms"

# bounds that hold with constant 1: exceeding them is a hard invariant breach
HARD_TOL = 1e-6


@dataclass(frozen=True)
class ReportRow:
    exp_id: str
    kind: str
    p: int
    sets: str
    cards: str
    quantity: str
    lhs: float
    bound: str
    rhs: float
    ratio: float
    method: str
    seed: int
    ms: int


@dataclass
class RunResult:
    rows: list[ReportRow]
    violations: list[str]

    @property
    def exit_code(self) -> int:
        return 2 if self.violations else 0


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    primes: tuple[int, ...] = (31,)
    sets: tuple[str, ...] = ()
    weights: str = "unit"
    seed: int = 0
    reps: int = 1
    out: str | None = None
    threads: int = 1
    timing: bool = False


_CONFIG_KEYS = {
    "kind", "primes", "sets", "weights", "seed", "reps", "out", "threads",
    "timing",
}

_DEFAULT_SETS = {
    "sum": ("random:6:1", "random:5:2", "random:4:3"),
    "energy": ("random:6:1", "random:5:2", "random:4:3"),
    "expansion": ("random:5:1", "random:4:2", "random:3:3", "random:4:4",
                  "random:5:5"),
    "audit-bounds": (),
    "identity-suite": (),
}


def load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    return data


def make_config(data: dict, kind: str | None = None) -> ExperimentConfig:
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    merged = dict(data)
    if kind is not None:
        if "kind" in merged and merged["kind"] != kind:
            raise ConfigError(
                f"config kind {merged['kind']!r} conflicts with command {kind!r}"
            )
        merged["kind"] = kind
    if "kind" not in merged:
        raise ConfigError("experiment kind missing")
    if merged["kind"] not in KINDS:
        raise ConfigError(f"unknown kind {merged['kind']!r}")
    if not merged.get("sets"):
        merged["sets"] = _DEFAULT_SETS[merged["kind"]]
    cfg = ExperimentConfig(
        kind=merged["kind"],
        primes=tuple(int(p) for p in merged.get("primes", (31,))),
        sets=tuple(str(s) for s in merged["sets"]),
        weights=str(merged.get("weights", "unit")),
        seed=int(merged.get("seed", 0)),
        reps=int(merged.get("reps", 1)),
        out=merged.get("out"),
        threads=int(merged.get("threads", 1)),
        timing=bool(merged.get("timing", False)),
    )
    _validate(cfg)
    return cfg


def _validate(cfg: ExperimentConfig) -> None:
    if cfg.reps < 1:
        raise ConfigError("reps must be >= 1")
    if cfg.threads < 1:
        raise ConfigError("threads must be >= 1")
    if cfg.weights not in WEIGHT_SCHEMES:
        raise ConfigError(f"unknown weight scheme {cfg.weights!r}")
    if not cfg.primes:
        raise ConfigError("need at least one prime")
    for p in cfg.primes:
        try:
            make_field(p)
        except LabError as exc:
            raise ConfigError(f"bad prime {p}: {exc}") from exc
    n = len(cfg.sets)
    if cfg.kind == "sum" and n not in (3, 4):
        raise ConfigError(f"sum experiment needs 3 or 4 set specs, got {n}")
    if cfg.kind == "energy" and n != 3:
        raise ConfigError(f"energy experiment needs 3 set specs, got {n}")
    if cfg.kind == "expansion" and n != 5:
        raise ConfigError(f"expansion experiment needs 5 set specs, got {n}")


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def render_csv(rows: list[ReportRow]) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in rows:
        writer.writerow(
            [
                r.exp_id, r.kind, r.p, r.sets, r.cards, r.quantity,
                format_float(r.lhs), r.bound, format_float(r.rhs),
                format_float(r.ratio), r.method, r.seed, r.ms,
            ]
        )
    return buf.getvalue()


def render_json(rows: list[ReportRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2, sort_keys=True) + "\n"


def write_report(rows: list[ReportRow], path: str, fmt: str = "csv") -> None:
    text = render_csv(rows) if fmt == "csv" else render_json(rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


class _Recorder:
    """Collects rows for one job and flags hard-bound violations."""

    def __init__(self, exp_id: str, cfg: ExperimentConfig, p: int, sets_str: str,
                 cards: str):
        self.exp_id = exp_id
        self.cfg = cfg
        self.p = p
        self.sets_str = sets_str
        self.cards = cards
        self.rows: list[ReportRow] = []
        self.violations: list[str] = []
        self._t0 = time.perf_counter()

    def _elapsed_ms(self) -> int:
        if not self.cfg.timing:
            return 0
        return int((time.perf_counter() - self._t0) * 1000)

    def add(self, quantity: str, lhs: float, bound: str, rhs: float,
            method: str = "fast", hard: bool = False, sets_str: str | None = None,
            cards: str | None = None) -> None:
        ratio = float(lhs) / float(rhs) if rhs != 0 else 0.0
        row = ReportRow(
            exp_id=self.exp_id, kind=self.cfg.kind, p=self.p,
            sets=self.sets_str if sets_str is None else sets_str,
            cards=self.cards if cards is None else cards,
            quantity=quantity, lhs=float(lhs), bound=bound, rhs=float(rhs),
            ratio=ratio, method=method, seed=self.cfg.seed,
            ms=self._elapsed_ms(),
        )
        self.rows.append(row)
        if hard and ratio > 1.0 + HARD_TOL:
            self.violations.append(
                f"{self.exp_id}: {quantity} exceeded {bound}: "
                f"{format_float(lhs)} > {format_float(rhs)} at p={self.p}"
            )


def _cards_str(*sets: FpSet) -> str:
    return "x".join(str(len(s)) for s in sets)


def _build_sets(cfg: ExperimentConfig, p: int, rep: int) -> list[FpSet]:
    ctx = make_field(p)
    base = derive_seed(cfg.seed, p, rep)
    out = []
    for i, spec in enumerate(cfg.sets):
        out.append(parse_set_spec(ctx, spec, base_seed=derive_seed(base, i)))
    return out


def _twist(cfg: ExperimentConfig, p: int, rep: int) -> int:
    rng = SplitMix64(derive_seed(cfg.seed, p, rep, 7))
    return 1 + rng.next_below(p - 1)


def _job_sum(cfg: ExperimentConfig, exp_id: str, p: int, rep: int) -> _Recorder:
    sets = _build_sets(cfg, p, rep)
    rec = _Recorder(exp_id, cfg, p, "|".join(cfg.sets), _cards_str(*sets))
    wseed = derive_seed(cfg.seed, p, rep, 1)
    vecs = [make_weights(s, cfg.weights, derive_seed(wseed, i))
            for i, s in enumerate(sets)]
    t = _twist(cfg, p, rep)
    if len(sets) == 3:
        use_fast = p > 257
        res = (es.trilinear_sum_fast if use_fast else es.trilinear_sum)(*vecs, t)
        lhs = abs(res.value)
        cards = sorted((len(s) for s in sets), reverse=True)
        rec.add("trilinear_sum", lhs, "trivial_trilinear",
                bd.trivial_trilinear_bound(p, *cards), method=res.path, hard=True)
        rec.add("trilinear_sum", lhs, "trilinear",
                bd.trilinear_bound(p, *cards), method=res.path)
        rec.add("trilinear_sum", lhs, "prior_trilinear",
                bd.prior_trilinear_bound(p, *cards), method=res.path)
    else:
        res = es.quadrilinear_sum(*vecs, t)
        lhs = abs(res.value)
        cards = sorted((len(s) for s in sets), reverse=True)
        rhs, ok = bd.quadrilinear_bound(p, *cards)
        rec.add("quadrilinear_sum", lhs,
                "quadrilinear" + ("" if ok else "!hyp"), rhs, method=res.path)
    return rec


def _job_energy(cfg: ExperimentConfig, exp_id: str, p: int, rep: int) -> _Recorder:
    U, V, W = _build_sets(cfg, p, rep)
    rec = _Recorder(exp_id, cfg, p, "|".join(cfg.sets), _cards_str(U, V, W))
    u, v, w = len(U), len(V), len(W)
    n, center, radius = en.product_diff_energy_window(U, V, W)
    rec.add("product_diff_energy", abs(n - center), "window_radius", radius,
            hard=True)
    cb = bd.counting_bounds(p, u, v, w)
    rec.add("product_diff_energy", n, "product_diff_all_ranges",
            cb.product_diff_all_ranges)
    small_name = "product_diff_small_sets" + ("" if u * v * w < p * p else "!hyp")
    rec.add("product_diff_energy", n, small_name, cb.product_diff_small_sets)
    rec.add("collinear_triples", en.collinear_triples(U).value,
            "collinear_triples_bound", cb.collinear_triples)
    dx_u = en.diff_mult_energy(U).value
    rec.add("diff_mult_energy", dx_u, "diff_mult_energy_bound",
            cb.diff_mult_energy)
    rec.add("mult_energy", en.mult_energy(U).value, "cube_cardinality",
            float(u) ** 3, hard=True)
    k = en.diff_product_energy(V, W).value
    rec.add("diff_product_energy", k, "k_cauchy_product",
            (en.diff_mult_energy(V).value * en.diff_mult_energy(W).value) ** 0.5,
            hard=True)
    return rec


def _job_expansion(cfg: ExperimentConfig, exp_id: str, p: int, rep: int) -> _Recorder:
    sets = _build_sets(cfg, p, rep)
    A, B, C, D, E = sets
    rec = _Recorder(exp_id, cfg, p, "|".join(cfg.sets), _cards_str(*sets))
    # the triple product is symmetric, so order the first three by size
    A, B, C = sorted((A, B, C), key=len, reverse=True)
    rep1 = ex.triple_product_shift_image(A, B, C, D)
    rec.add("triple_product_shift_image", abs(rep1.size - p),
            "image_error_term", rep1.error_term)
    rec.add("triple_product_shift_image", rep1.size, "image_lower_bound",
            rep1.lower_bound)
    rep2 = ex.cubed_sumset_shift_image(A, B, C, D)
    suffix = "" if rep2.hyp_ok else "!hyp"
    rec.add("cubed_sumset_shift_image", abs(rep2.size - p),
            "cube_error_term" + suffix, rep2.error_term)
    rec.add("cubed_sumset_shift_image", rep2.size, "cube_lower_bound" + suffix,
            rep2.lower_bound)
    for shape in ("product", "cube"):
        covered, hyp = ex.covers_field(A, B, C, D, E, shape)
        rec.add(f"covers_field_{shape}", float(covered), "hyp_quantity",
                hyp if hyp > 0 else 1.0)
    dich = ex.product_sumset_dichotomy(A, B, C, D)
    rec.add("product_sumset_dichotomy", dich.U * dich.V, "first_disjunct",
            dich.first_rhs)
    rec.add("product_sumset_dichotomy", dich.U**3 * dich.V**2,
            "second_disjunct", dich.second_rhs)
    hits = ex.complement_hit_count(A, B, C, D)
    rec.add("complement_hit_count", hits, "exact_zero", 0.5, hard=True)
    j2 = ex.shift_rep_second_moment(A, B, C, D)
    abcd = len(A) * len(B) * len(C) * len(D)
    rec.add("image_energy_cauchy", abcd**2, "cauchy_product",
            float(rep1.size) * float(j2), hard=True)
    return rec


def _exact(rec: _Recorder, quantity: str, gap: float, method: str = "fast",
           **kw) -> None:
    # integer-exact identities: any nonzero gap trips the 0.5 threshold
    rec.add(quantity, gap, "exact_match", 0.5, method=method, hard=True, **kw)


def _job_identity(cfg: ExperimentConfig, exp_id: str, p: int, rep: int) -> _Recorder:
    ctx = make_field(p)
    rec = _Recorder(exp_id, cfg, p, "suite", "")
    seed = derive_seed(cfg.seed, p, rep)
    cap = p - 1

    def rnd(size: int, tag: int) -> FpSet:
        return gen_random(ctx, min(size, cap), derive_seed(seed, tag))

    X, Y, Z = rnd(8, 1), rnd(7, 2), rnd(6, 3)
    Xw = make_weights(X, "random-disc", derive_seed(seed, 4))
    Yw = make_weights(Y, "random-unimodular", derive_seed(seed, 5))
    Zw = make_weights(Z, "random-disc", derive_seed(seed, 6))
    t = 1 + SplitMix64(derive_seed(seed, 7)).next_below(p - 1)

    s2 = es.bilinear_sum(Xw, Yw, t)
    rec.add("bilinear_sum", abs(s2.value), "bilinear_l2",
            (p * Xw.l2_mass() * Yw.l2_mass()) ** 0.5 + 1e-6, method="naive",
            hard=True)
    s3 = es.trilinear_sum(Xw, Yw, Zw, t)
    cards = sorted((len(X), len(Y), len(Z)), reverse=True)
    rec.add("trilinear_sum", abs(s3.value), "trivial_trilinear",
            bd.trivial_trilinear_bound(p, *cards), method="naive", hard=True)
    f3 = es.trilinear_sum_fast(Xw, Yw, Zw, t)
    gap = abs(s3.value - f3.value)
    rec.add("trilinear_fast_gap", gap, "rel_tol",
            1e-9 * max(1.0, abs(s3.value), abs(f3.value)), method="transform",
            hard=True)

    measured, exact = en.additive_char_second_moment(X)
    rec.add("additive_char_second_moment", abs(measured - exact), "rel_tol",
            1e-9 * exact, hard=True)

    n, center, radius = en.product_diff_energy_window(X, Y, Z)
    rec.add("product_diff_energy", abs(n - center), "window_radius", radius,
            hard=True)

    _exact(rec, "triple_moment_identity",
           abs(en.diff_product_spectrum(Y, Z, "triple").second_moment()
               - en.product_diff_energy(Z, Y, Y).value))

    direct, via = en.diff_product_energy_char(Y, Z)
    rec.add("diff_product_energy_char", abs(direct - via), "rel_tol",
            1e-6 * max(1.0, direct), hard=True)
    k = en.diff_product_energy(Y, Z).value
    rec.add("diff_product_energy", float(k), "k_cauchy_product",
            (en.diff_mult_energy(Y).value * en.diff_mult_energy(Z).value) ** 0.5,
            hard=True)

    u = len(Z)
    rec.add("diff_mult_energy", en.diff_mult_energy(Z).value, "decomposition",
            u**2 * en.collinear_triples(Z).value + (2 * u**3 - u**2) ** 2,
            hard=True)

    for n_vars in (2, 3, 4):
        vsets = [rnd(4, 10 + n_vars * 8 + i) for i in range(n_vars)]
        tens = [make_tensor(tuple(vsets), i, "random-unimodular",
                            derive_seed(seed, 40 + n_vars * 8 + i))
                for i in range(n_vars)]
        lhs, rhs = es.reduction_check(vsets, tens, t)
        rec.add(f"reduction_{n_vars}", lhs, "reduction_rhs", rhs + 1e-9,
                method="naive", hard=True)

    rec.add("max_char_diff_sum", en.max_char_diff_sum(Y, Z), "char_diff_bound",
            (p * len(Y) * len(Z)) ** 0.5 + 1e-6, hard=True)

    if cap >= 4:
        A, B, C, D = rnd(4, 70), rnd(4, 71), rnd(3, 72), rnd(3, 73)
        _exact(rec, "complement_hit_count",
               float(ex.complement_hit_count(A, B, C, D)))
        counts = ex.shift_rep_counts(A, B, C, D)
        _exact(rec, "shift_rep_first_moment",
               abs(int(counts.sum()) - len(A) * len(B) * len(C) * len(D)))
        A3, B3, C3 = sorted((A, B, C), key=len, reverse=True)
        size = ex.triple_product_shift_image(A3, B3, C3, D).size
        j2 = ex.shift_rep_second_moment(A3, B3, C3, D)
        abcd = len(A) * len(B) * len(C) * len(D)
        rec.add("image_energy_cauchy", abcd**2, "cauchy_product",
                float(size) * float(j2), hard=True)

    for name, fast, oracle in (
        ("product_diff_energy", en.product_diff_energy(Z, Y, Y),
         en.product_diff_energy_oracle(Z, Y, Y)),
        ("collinear_triples", en.collinear_triples(Z),
         en.collinear_triples_oracle(Z)),
        ("mult_energy", en.mult_energy(Z), en.mult_energy_oracle(Z)),
    ):
        _exact(rec, f"{name}_oracle_gap", abs(fast.value - oracle.value))
    return rec


def _subgroup_orders(p: int, want: int = 4, cap: int = 12) -> list[int]:
    divs = [d for d in range(2, min(cap, p - 1) + 1) if (p - 1) % d == 0]
    if not divs:
        divs = [1]
    divs = sorted(divs, reverse=True)
    return [divs[min(i, len(divs) - 1)] for i in range(want)]


_FAMILY_TAG = {"random": 1, "interval": 2, "subgroup": 3}


def _family_sets(cfg: ExperimentConfig, p: int, family: str, rep: int,
                 count: int, sizes: tuple[int, ...]) -> list[FpSet]:
    ctx = make_field(p)
    if family not in _FAMILY_TAG:
        raise ConfigError(f"unknown family {family!r}")
    seed = derive_seed(cfg.seed, p, rep, _FAMILY_TAG[family])
    cap = p - 1
    if family == "random":
        return [gen_random(ctx, min(sizes[i], cap), derive_seed(seed, i))
                for i in range(count)]
    if family == "interval":
        rng = SplitMix64(seed)
        return [gen_interval(ctx, 1 + rng.next_below(cap),
                             min(sizes[i], cap)) for i in range(count)]
    if family == "subgroup":
        orders = _subgroup_orders(p, want=count)
        return [fpset(ctx, subgroup_elems(ctx, orders[i])) for i in range(count)]
    raise ConfigError(f"unknown family {family!r}")


AUDIT_FAMILIES = ("random", "interval", "subgroup")


def _job_audit(cfg: ExperimentConfig, exp_id: str, p: int, family: str,
               rep: int) -> _Recorder:
    sets4 = _family_sets(cfg, p, family, rep, 4, (8, 7, 6, 5))
    sets4 = sorted(sets4, key=len, reverse=True)
    Wx, X, Y, Z = sets4
    rec = _Recorder(exp_id, cfg, p, family, _cards_str(*sets4))
    seed = derive_seed(cfg.seed, p, rep, 99)
    t = 1 + SplitMix64(seed).next_below(p - 1)
    scheme = cfg.weights

    vec3 = [make_weights(s, scheme, derive_seed(seed, i))
            for i, s in enumerate((X, Y, Z))]
    s3 = abs(es.trilinear_sum(*vec3, t).value)
    c3 = sorted((len(X), len(Y), len(Z)), reverse=True)
    rec.add("trilinear_sum", s3, "trivial_trilinear",
            bd.trivial_trilinear_bound(p, *c3), method="naive", hard=True)
    rec.add("trilinear_sum", s3, "trilinear", bd.trilinear_bound(p, *c3),
            method="naive")
    rec.add("trilinear_sum", s3, "prior_trilinear",
            bd.prior_trilinear_bound(p, *c3), method="naive")

    vec4 = [make_weights(s, scheme, derive_seed(seed, 10 + i))
            for i, s in enumerate(sets4)]
    s4 = abs(es.quadrilinear_sum(*vec4, t).value)
    c4 = sorted((len(s) for s in sets4), reverse=True)
    rhs4, ok4 = bd.quadrilinear_bound(p, *c4)
    rec.add("quadrilinear_sum", s4, "quadrilinear" + ("" if ok4 else "!hyp"),
            rhs4, method="naive")

    sets3 = [X, Y, Z]
    tens3 = [make_tensor(tuple(sets3), i, "random-unimodular",
                         derive_seed(seed, 20 + i)) for i in range(3)]
    t3 = abs(es.multilinear_T(sets3, tens3, t).value)
    rhs_t3, ok_t3 = bd.pair_weight_trilinear_bound(p, *c3)
    rec.add("pair_weight_trilinear_sum", t3,
            "pair_weight_trilinear" + ("" if ok_t3 else "!hyp"), rhs_t3,
            method="naive")

    tens4 = [make_tensor(tuple(sets4), i, "random-unimodular",
                         derive_seed(seed, 30 + i)) for i in range(4)]
    t4 = abs(es.multilinear_T(sets4, tens4, t).value)
    rhs_t4, ok_t4 = bd.triple_weight_quadrilinear_bound(p, *c4)
    rec.add("triple_weight_quadrilinear_sum", t4,
            "triple_weight_quadrilinear" + ("" if ok_t4 else "!hyp"), rhs_t4,
            method="naive")

    u, v, w = len(Z), len(Y), len(X)
    cb = bd.counting_bounds(p, u, v, w)
    n_uvw = en.product_diff_energy(Z, Y, X).value
    small = "product_diff_small_sets" + ("" if u * v * w < p * p else "!hyp")
    rec.add("product_diff_energy", n_uvw, small, cb.product_diff_small_sets)
    rec.add("product_diff_energy", n_uvw, "product_diff_all_ranges",
            cb.product_diff_all_ranges)
    rec.add("collinear_triples", en.collinear_triples(Z).value,
            "collinear_triples_bound", cb.collinear_triples)
    rec.add("diff_mult_energy", en.diff_mult_energy(Z).value,
            "diff_mult_energy_bound", cb.diff_mult_energy)

    A, B, C = sorted((Wx, X, Y), key=len, reverse=True)
    D = Z
    img = ex.triple_product_shift_image(A, B, C, D)
    rec.add("triple_product_shift_image", abs(img.size - p),
            "image_error_term", img.error_term)
    rec.add("triple_product_shift_image", img.size, "image_lower_bound",
            img.lower_bound)
    img2 = ex.cubed_sumset_shift_image(A, B, C, D)
    sfx = "" if img2.hyp_ok else "!hyp"
    rec.add("cubed_sumset_shift_image", abs(img2.size - p),
            "cube_error_term" + sfx, img2.error_term)
    rec.add("cubed_sumset_shift_image", img2.size, "cube_lower_bound" + sfx,
            img2.lower_bound)
    dich = ex.product_sumset_dichotomy(A, B, C, D)
    rec.add("product_sumset_dichotomy", dich.U * dich.V, "first_disjunct",
            dich.first_rhs)
    rec.add("product_sumset_dichotomy", dich.U**3 * dich.V**2,
            "second_disjunct", dich.second_rhs)
    if family == "subgroup":
        size, rhs = ex.subgroup_sumset_size(Wx, Z)
        rec.add("subgroup_sumset", size, "subgroup_sumset_lower", rhs)
    return rec


def _summary_rows(cfg: ExperimentConfig, rows: list[ReportRow]) -> list[ReportRow]:
    grouped: dict[str, list[float]] = {}
    for r in rows:
        grouped.setdefault(r.bound, []).append(r.ratio)
    out = []
    for bound in sorted(grouped):
        ratios = grouped[bound]
        out.append(ReportRow(
            exp_id="summary", kind=cfg.kind, p=0, sets="", cards="",
            quantity=bound, lhs=max(ratios), bound=bound,
            rhs=sum(ratios) / len(ratios), ratio=min(ratios),
            method="summary", seed=cfg.seed, ms=0,
        ))
    return out


def run(cfg: ExperimentConfig) -> RunResult:
    jobs: list[tuple] = []
    if cfg.kind == "audit-bounds":
        for p in cfg.primes:
            for family in AUDIT_FAMILIES:
                for rep in range(cfg.reps):
                    jobs.append((p, family, rep))
        worker = lambda args, i: _job_audit(cfg, f"{i:04d}", args[0], args[1],
                                            args[2])
    else:
        job_fn = {
            "sum": _job_sum,
            "energy": _job_energy,
            "expansion": _job_expansion,
            "identity-suite": _job_identity,
        }[cfg.kind]
        for p in cfg.primes:
            for rep in range(cfg.reps):
                jobs.append((p, rep))
        worker = lambda args, i: job_fn(cfg, f"{i:04d}", args[0], args[1])

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            recs = list(pool.map(lambda ij: worker(ij[1], ij[0]),
                                 enumerate(jobs)))
    else:
        recs = [worker(args, i) for i, args in enumerate(jobs)]

    rows: list[ReportRow] = []
    violations: list[str] = []
    for rec in recs:
        rows.extend(rec.rows)
        violations.extend(rec.violations)
    rows.sort(key=lambda r: (r.exp_id, r.quantity, r.bound))
    if cfg.kind == "audit-bounds":
        rows = rows + _summary_rows(cfg, rows)
    return RunResult(rows=rows, violations=violations)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expsumlab.errors import NotDivisor, NotPrime, TooLarge, ZeroArgument
from expsumlab.ffield import (
    add_char,
    is_prime,
    make_field,
    mult_char,
    smallest_primitive_root,
    subgroup_elems,
    unit_root,
)

PRIMES = [3, 5, 7, 11, 31, 101, 257]


def oracle_primitive_root(p):
    """Smallest g whose powers enumerate all of F_p^*, by direct orbit walk."""
    for g in range(2, p):
        seen = set()
        a = 1
        for _ in range(p - 1):
            seen.add(a)
            a = a * g % p
        if len(seen) == p - 1:
            return g
    raise AssertionError("no generator")


def test_is_prime_small():
    known = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in known)


def test_make_field_rejects_composite_and_small():
    with pytest.raises(NotPrime):
        make_field(4)
    with pytest.raises(NotPrime):
        make_field(2)
    with pytest.raises(NotPrime):
        make_field(1)


def test_make_field_rejects_huge():
    with pytest.raises(TooLarge):
        make_field((1 << 20) + 7)


def test_smallest_root_matches_oracle():
    for p in PRIMES:
        assert smallest_primitive_root(p) == oracle_primitive_root(p)


def test_make_field_7_generator():
    assert make_field(7).g == 3


def test_dlog_bijection_p5():
    ctx = make_field(5)
    assert sorted(int(ctx.dlog[a]) for a in range(1, 5)) == [0, 1, 2, 3]
    assert ctx.dlog[0] == -1


def test_dlog_roundtrip():
    for p in PRIMES:
        ctx = make_field(p)
        for a in range(1, p):
            assert int(ctx.exp[ctx.dlog[a]]) == a
        for k in range(p - 1):
            assert int(ctx.dlog[ctx.exp[k]]) == k


def test_inverse_table():
    for p in PRIMES:
        ctx = make_field(p)
        assert ctx.inv[0] == 0
        for a in range(1, p):
            assert int(ctx.inv[a]) * a % p == 1


def test_make_field_cached():
    assert make_field(31) is make_field(31)


def test_add_char_values():
    ctx = make_field(5)
    assert add_char(ctx, 0) == pytest.approx(1.0)
    assert add_char(ctx, 1) == pytest.approx(0.309017 + 0.951057j, abs=1e-6)
    # table-free helper covers moduli below the context floor
    assert unit_root(2, 1) == pytest.approx(-1.0, abs=1e-12)
    assert unit_root(5, 1) == pytest.approx(add_char(ctx, 1), abs=1e-12)


def test_add_char_unimodular_and_homomorphic():
    for p in PRIMES:
        ctx = make_field(p)
        vals = [add_char(ctx, a) for a in range(p)]
        for v in vals:
            assert abs(abs(v) - 1.0) <= 1e-12
        for a in range(p):
            for b in range(p):
                assert vals[a] * vals[b] == pytest.approx(vals[(a + b) % p], abs=1e-9)


def test_mult_char_principal_and_zero():
    ctx = make_field(7)
    assert mult_char(ctx, 0, 5) == pytest.approx(1.0)
    with pytest.raises(ZeroArgument):
        mult_char(ctx, 2, 0)


def test_mult_char_orthogonality_sum():
    ctx = make_field(7)
    s = sum(mult_char(ctx, 2, a) for a in range(1, 7))
    assert abs(s) <= 1e-9


def test_mult_char_multiplicative():
    for p in (7, 31):
        ctx = make_field(p)
        for j in range(p - 1):
            for a in range(1, p):
                for b in range(1, p):
                    lhs = mult_char(ctx, j, a) * mult_char(ctx, j, b)
                    assert lhs == pytest.approx(mult_char(ctx, j, a * b % p), abs=1e-9)


def test_char_orthogonality_pointwise():
    # (1/(p-1)) sum_j chi_j(a) conj(chi_j(b)) detects a == b
    for p in (7, 11):
        ctx = make_field(p)
        for a in range(1, p):
            for b in range(1, p):
                acc = sum(
                    mult_char(ctx, j, a) * mult_char(ctx, j, b).conjugate()
                    for j in range(p - 1)
                )
                want = float(p - 1) if a == b else 0.0
                assert abs(acc - want) <= 1e-6 * (p - 1)


def test_subgroup_examples():
    ctx = make_field(7)
    assert subgroup_elems(ctx, 3) == (1, 2, 4)
    assert subgroup_elems(ctx, 1) == (1,)
    with pytest.raises(NotDivisor):
        subgroup_elems(ctx, 4)


def test_subgroup_closed_under_multiplication():
    for p, order in [(7, 3), (7, 6), (31, 5), (31, 6), (101, 20)]:
        ctx = make_field(p)
        elems = subgroup_elems(ctx, order)
        assert len(elems) == order
        assert 1 in elems
        group = set(elems)
        for a in elems:
            for b in elems:
                assert a * b % p in group


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(min_value=0, max_value=10**6))
def test_add_char_period(p, a):
    ctx = make_field(p)
    assert add_char(ctx, a % p) == pytest.approx(unit_root(p, a), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([7, 31, 101]), st.data())
def test_mult_char_power_rule(p, data):
    ctx = make_field(p)
    j = data.draw(st.integers(min_value=0, max_value=p - 2))
    a = data.draw(st.integers(min_value=1, max_value=p - 1))
    k = data.draw(st.integers(min_value=1, max_value=6))
    assert mult_char(ctx, j, pow(a, k, p)) == pytest.approx(
        mult_char(ctx, j, a) ** k, abs=1e-9
    )


def test_unit_roots_table_matches_formula():
    ctx = make_field(31)
    want = np.exp(2j * np.pi * np.arange(31) / 31)
    assert np.allclose(ctx.unit_roots, want, atol=1e-12)

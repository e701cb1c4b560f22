import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF, Poly, nextprime, primitive_root, symbols

from cyclosum.errors import CacheMismatch, CongruenceFailed, DegenerateField, NotPrime, ZeroArgument
from cyclosum.ff import (
    MAX_Q,
    build_index_table,
    cache_path,
    cached_index_table,
    field_add,
    field_mul,
    field_neg,
    field_pow,
    ind,
    is_irreducible,
    load_index_table,
    make_field,
    save_index_table,
    smallest_irreducible,
)

X = symbols("X")


def sympy_irreducible(coeffs, p):
    return Poly(list(reversed(coeffs)), X, domain=GF(p)).is_irreducible


@pytest.fixture(scope="module")
def f19():
    return make_field(19, 1, 3)


@pytest.fixture(scope="module")
def t19(f19):
    return build_index_table(f19)


@pytest.fixture(scope="module")
def f343():
    return make_field(7, 3, 3)


@pytest.fixture(scope="module")
def t343(f343):
    return build_index_table(f343)


def test_make_field_prime(f19):
    assert (f19.q, f19.k, f19.gamma, f19.e_max) == (19, 1, 2, 18)
    # 2 is a primitive root mod 19: no proper divisor of 18 kills it
    assert all(pow(2, d, 19) != 1 for d in (9, 6, 2))


def test_make_field_extension(f343):
    assert (f343.q, f343.k) == (343, 19)
    assert len(f343.modulus) == 4 and f343.modulus[-1] == 1


@pytest.mark.parametrize(
    "args, exc",
    [
        ((11, 1, 3), CongruenceFailed),
        ((15, 1, 3), NotPrime),
        ((19, 1, 4), NotPrime),
        ((2, 1, 3), DegenerateField),
        ((3, 4, 3), DegenerateField),
        ((19, 0, 3), DegenerateField),
    ],
)
def test_make_field_errors(args, exc):
    with pytest.raises(exc):
        make_field(*args)


def test_make_field_rejects_large_q():
    p = MAX_Q
    while True:
        p = nextprime(p)
        if p % 18 == 1:
            break
    with pytest.raises(DegenerateField, match="enumeration limit"):
        make_field(p, 1, 3)


@pytest.mark.parametrize("p", [19, 37, 73, 109, 127, 101, 151, 197, 491])
def test_prime_generator_is_least_primitive_root(p):
    l = 3 if p % 18 == 1 else 5 if p % 50 == 1 else 7
    assert make_field(p, 1, l).gamma == primitive_root(p)


@pytest.mark.parametrize("p, r", [(7, 3), (19, 2), (5, 2), (3, 3), (5, 3), (7, 2)])
def test_smallest_irreducible_matches_enumeration(p, r):
    expected = None
    for low in itertools.product(range(p), repeat=r):
        if sympy_irreducible(list(low) + [1], p):
            expected = low + (1,)
            break
    assert smallest_irreducible(p, r) == expected


@pytest.mark.parametrize("p, r", [(3, 2), (3, 4), (5, 3), (2, 6)])
def test_rabin_agrees_with_sympy(p, r):
    for low in itertools.product(range(p), repeat=r):
        poly = list(low) + [1]
        assert is_irreducible(poly, p) == sympy_irreducible(poly, p), poly


def test_index_table_small(t19):
    assert t19.logs[1] == 0 and t19.logs[2] == 1 and t19.logs[4] == 2
    assert len(t19) == 18
    assert sorted(t19.logs[1:]) == list(range(18))


def test_index_table_extension(f343, t343):
    assert len(t343) == 342
    assert sorted(t343.logs[1:]) == list(range(342))
    assert t343[f343.gamma_element] == 1
    assert t343[f343.element(1)] == 0


def test_ind_examples(t19):
    assert ind(t19, 2) == 1
    assert ind(t19, 1) == 0
    assert pow(2, 9, 19) == 18
    assert ind(t19, 18) == 9
    with pytest.raises(ZeroArgument):
        ind(t19, 0)


@pytest.mark.parametrize("fixture", ["t19", "t343"])
def test_ind_of_minus_one(fixture, request):
    t = request.getfixturevalue(fixture)
    f = t.field
    assert ind(t, f.element(-1)) == (f.q - 1) // 2


def test_two_in_extension(f343, t343):
    w = ind(t343, f343.element(2))
    assert field_pow(f343, f343.gamma_element, w) == f343.element(2)
    assert f343.element(2) == field_add(f343, f343.element(1), f343.element(1))


def test_field_ops_prime(f19):
    assert field_add(f19, 18, 1) == 0
    assert field_mul(f19, 5, 4) == 1
    assert field_neg(f19, 5) == 14


def test_field_cube_reduces_by_modulus(f343):
    x = (0, 1, 0)
    cube = field_mul(f343, field_mul(f343, x, x), x)
    # x^3 = -(m0 + m1 x + m2 x^2)
    assert cube == tuple(-c % 7 for c in f343.modulus[:3])


def _elements(f):
    return st.integers(1, f.q - 1).map(f.decode)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_ind_is_a_homomorphism(data):
    for f, t in ((F19, T19), (F343, T343)):
        a = data.draw(_elements(f))
        b = data.draw(_elements(f))
        assert ind(t, field_mul(f, a, b)) == (ind(t, a) + ind(t, b)) % (f.q - 1)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_field_axioms_extension(data):
    f = F343
    a, b, c = (data.draw(st.integers(0, f.q - 1).map(f.decode)) for _ in range(3))
    assert field_mul(f, a, field_add(f, b, c)) == field_add(f, field_mul(f, a, b), field_mul(f, a, c))
    assert field_add(f, a, field_neg(f, a)) == f.element(0)


def test_powers_are_injective(t343):
    assert len(set(t343.powers)) == 342


def test_cache_round_trip(tmp_path, f343, t343):
    path = tmp_path / "t.txt"
    save_index_table(t343, path)
    lines = path.read_text().splitlines()
    assert lines[0] == f"7 3 343 {f343.gamma} 3"
    assert len(lines) == 343
    loaded = load_index_table(f343, path)
    assert loaded.logs == t343.logs and loaded.powers == t343.powers


def test_cache_rejects_mismatched_header(tmp_path, f19, t19):
    path = tmp_path / "t.txt"
    save_index_table(t19, path)
    with pytest.raises(CacheMismatch):
        load_index_table(make_field(37, 1, 3), path)


def test_cache_rejects_corrupt_body(tmp_path, f19, t19):
    path = tmp_path / "t.txt"
    save_index_table(t19, path)
    lines = path.read_text().splitlines()
    lines[3] = "3 5"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(CacheMismatch):
        load_index_table(f19, path)


def test_cached_index_table_rebuilds(tmp_path, f19, t19):
    table = cached_index_table(f19, tmp_path)
    path = cache_path(f19, tmp_path)
    assert path.exists() and table.logs == t19.logs
    path.write_text("garbage\n")
    assert cached_index_table(f19, tmp_path).logs == t19.logs
    assert load_index_table(f19, path).logs == t19.logs


F19 = make_field(19, 1, 3)
T19 = build_index_table(F19)
F343 = make_field(7, 3, 3)
T343 = build_index_table(F343)

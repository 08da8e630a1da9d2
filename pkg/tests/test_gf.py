from __future__ import annotations

import itertools

import numpy as np
import pytest

from conftest import poly_mul_mod
from sepsym import errors
from sepsym.gf import GF, field_new, field_of_order, is_irreducible, modulus_table, prime_power

TABLE_ORDERS = sorted(modulus_table())
SMALL_ORDERS = [q for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64] if q <= 64]


def brute_irreducible(modulus, p):
    """A polynomial of degree e is irreducible iff no monic factor of degree 1..e//2 divides it."""
    e = len(modulus) - 1
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            rem = list(modulus)
            for i in range(len(rem) - 1, d - 1, -1):
                c = rem[i]
                if c:
                    for j in range(d + 1):
                        rem[i - d + j] = (rem[i - d + j] - c * divisor[j]) % p
            if not any(rem[:d]):
                return False
    return True


def test_field_new_examples():
    f = field_new(3, 1)
    assert list(f.elements()) == [0, 1, 2]
    assert field_new(2, 2).modulus == (1, 1, 1)
    with pytest.raises(errors.NotPrime):
        field_new(4, 1)


def test_gf4_modulus_is_the_only_irreducible_quadratic():
    quads = [(a, b, 1) for a in range(2) for b in range(2) if brute_irreducible((a, b, 1), 2)]
    assert quads == [(1, 1, 1)]


@pytest.mark.parametrize("q", TABLE_ORDERS)
def test_tabulated_moduli_irreducible(q):
    p, _ = prime_power(q)
    mod = modulus_table()[q]
    assert mod[-1] == 1
    assert is_irreducible(list(mod), p)
    if q <= 256:
        assert brute_irreducible(list(mod), p)


def test_field_new_rejects_bad_input():
    with pytest.raises(errors.NotPrime):
        field_of_order(6)
    with pytest.raises(errors.TooLarge):
        field_new(2, 20)
    with pytest.raises(errors.NoModulusAvailable):
        field_of_order(17**2)


def test_modulus_table_env_override(tmp_path, monkeypatch):
    path = tmp_path / "moduli.txt"
    path.write_text("4 1 1 1\n")
    monkeypatch.setenv("SEPSYM_MODULUS_TABLE", str(path))
    assert modulus_table() == {4: (1, 1, 1)}
    monkeypatch.delenv("SEPSYM_MODULUS_TABLE")
    assert 9 in modulus_table()


def test_arith_examples():
    assert field_of_order(7).mul(3, 5) == 1
    assert field_of_order(4).mul(2, 2) == 3
    for q in (3, 4, 9):
        f = field_of_order(q)
        assert all(f.add(x, 0) == x for x in f.elements())
    assert field_of_order(5).pow(2, 4) == 1
    assert field_of_order(3).pow(0, 0) == 1
    with pytest.raises(errors.DivisionByZero):
        field_of_order(5).div(1, 0)


def test_pth_root_examples():
    assert all(field_of_order(9).pth_root(a, 0) == a for a in range(9))
    assert field_of_order(3).pth_root(2, 1) == 2
    assert field_of_order(4).pth_root(3, 1) == 2


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    """Every axiom on all pairs/triples, vectorized; scalar ops agree with the vector ops."""
    f = field_of_order(q)
    p = f.p
    x = np.arange(q)
    a, b = np.meshgrid(x, x, indexing="ij")
    a, b = a.ravel(), b.ravel()
    add, mul = f.vadd(a, b), f.vmul(a, b)
    # multiplication against the schoolbook oracle
    oracle = [f.from_digits(poly_mul_mod(f.digits(i), f.digits(j), f.modulus, p)) if f.e > 1 else i * j % p
              for i, j in zip(a, b)]
    assert list(mul) == oracle
    assert list(add) == [f.from_digits([(u + v) % p for u, v in zip(f.digits(i), f.digits(j))]) for i, j in zip(a, b)]
    assert np.array_equal(add, f.vadd(b, a)) and np.array_equal(mul, f.vmul(b, a))
    assert np.array_equal(f.vadd(x, 0 * x), x) and np.array_equal(f.vmul(x, np.ones_like(x)), x)
    assert np.all(f.vadd(x, f.vneg(x)) == 0)
    assert np.array_equal(f.vsub(a, b), f.vadd(a, f.vneg(b)))
    for i in range(1, q):
        assert f.mul(i, f.inv(i)) == 1
    # associativity and distributivity over all triples
    A = np.repeat(a, q)
    B = np.repeat(b, q)
    C = np.tile(x, q * q)
    assert np.array_equal(f.vadd(f.vadd(A, B), C), f.vadd(A, f.vadd(B, C)))
    assert np.array_equal(f.vmul(f.vmul(A, B), C), f.vmul(A, f.vmul(B, C)))
    assert np.array_equal(f.vmul(A, f.vadd(B, C)), f.vadd(f.vmul(A, B), f.vmul(A, C)))
    # scalar and vector agree
    for i, j, s, t in zip(a[:: max(1, q // 3)], b[:: max(1, q // 3)], add[:: max(1, q // 3)], mul[:: max(1, q // 3)]):
        assert f.add(int(i), int(j)) == s and f.mul(int(i), int(j)) == t
    # Frobenius fixes every element after e steps and pow(a, q) == a
    assert all(f.pow(i, q) == i for i in range(q))
    assert np.array_equal(f.vpow(x, q), x)
    for k in range(f.e + 1):
        assert all(f.frobenius(f.pth_root(i, k), k) == i for i in range(q))


def test_log_table_generator_has_full_order():
    for q in (4, 8, 9, 25, 64):
        f = field_of_order(q)
        g = f.generator
        powers = {f.pow(g, i) for i in range(q - 1)}
        assert powers == set(range(1, q))


def test_field_identity_and_hash():
    assert field_of_order(9) == field_new(3, 2)
    assert hash(field_of_order(9)) == hash(field_new(3, 2))
    assert field_of_order(9) != field_of_order(3)
    assert isinstance(field_of_order(8), GF)

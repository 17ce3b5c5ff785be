from itertools import combinations

import pytest

from kuniform.tools.errors import PauliParseError, PauliSizeError
from kuniform.tools.graph_core import correlation_operators
from kuniform.tools.pauli_algebra import (PauliWord, commutes, from_string, identity, is_hermitian,
                                          multiply, product, sign_exp, to_string, weight,
                                          xz_phase_exp)
from tests.conftest import random_graph


def random_word(rng, n):
    return PauliWord(n, int(rng.integers(2 ** n)), int(rng.integers(2 ** n)), int(rng.integers(4)))


def test_single_qubit_products_track_the_phase():
    x, y, z = from_string('X'), from_string('Y'), from_string('Z')
    assert to_string(multiply(x, z)) == '-iY', "XZ should be -iY"
    assert to_string(multiply(z, x)) == '+iY', "ZX should be +iY"
    assert to_string(multiply(x, y)) == '+iZ'
    assert to_string(multiply(y, y)) == '+I', "Y squared should be the identity"


def test_products_of_star_generators(star4):
    k = correlation_operators(star4)
    assert [to_string(p) for p in k] == ['+XZII', '+ZXZZ', '+IZXI', '+IZIX']
    assert to_string(k[0] * k[1]) == '+YYZZ'
    assert to_string(k[1] * k[2]) == '+ZYYZ'
    assert to_string(product(k[:3])) == '-YXYZ'
    assert to_string(product(k)) == '-YYYY'


@pytest.mark.parametrize('n', range(1, 9))
def test_multiply_is_associative(rng, n):
    for _ in range(200):
        a, b, c = (random_word(rng, n) for _ in range(3))
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@pytest.mark.parametrize('n', range(1, 9))
def test_identity_is_a_two_sided_unit(rng, n):
    for _ in range(50):
        a = random_word(rng, n)
        assert multiply(identity(n), a) == a
        assert multiply(a, identity(n)) == a


@pytest.mark.parametrize('n', range(1, 9))
def test_bits_combine_by_xor(rng, n):
    for _ in range(100):
        a, b = random_word(rng, n), random_word(rng, n)
        ab = multiply(a, b)
        assert (ab.x_bits, ab.z_bits) == (a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits)


@pytest.mark.parametrize('n', range(1, 9))
def test_reversed_products_differ_by_a_sign(rng, n):
    for _ in range(100):
        a, b = random_word(rng, n), random_word(rng, n)
        ab, ba = multiply(a, b), multiply(b, a)
        assert (ab.x_bits, ab.z_bits) == (ba.x_bits, ba.z_bits)
        shift = (ab.phase_exp - ba.phase_exp) % 4
        assert shift == (0 if commutes(a, b) else 2), f"{to_string(a)} and {to_string(b)}"


def test_multiply_rejects_mismatched_sizes():
    with pytest.raises(PauliSizeError):
        multiply(from_string('XX'), from_string('XXX'))
    # argument errors stay catchable as ValueError
    with pytest.raises(ValueError):
        multiply(identity(1), identity(2))


def test_weight():
    assert weight(from_string('ZXZZ')) == 4
    assert weight(from_string('IXIY')) == 2
    assert weight(identity(5)) == 0


def test_from_string_bit_layout():
    p = from_string('ZXZZ')
    assert (p.x_bits, p.z_bits, p.phase_exp) == (0b0010, 0b1101, 0)
    assert from_string('XZII') == from_string('+XZII')


def test_phase_exp_is_the_printed_sign():
    assert from_string('ZXZZ').phase_exp == 0
    assert from_string('−YXYZ').phase_exp == 2
    assert from_string('-iXY').phase_exp == 3
    assert sign_exp(from_string('+iY')) == 1
    # Y = i·XZ
    assert xz_phase_exp(from_string('Y')) == 1
    assert xz_phase_exp(from_string('-YYYY')) == 2


@pytest.mark.parametrize('n', range(1, 9))
def test_generator_products_have_real_signs(rng, n):
    g = random_graph(rng, n)
    k = correlation_operators(g)
    for size in range(1, n + 1):
        for subset in combinations(k, size):
            p = product(subset)
            assert p.phase_exp in (0, 2), f"{to_string(p)} should carry a sign of +1 or -1"
            assert is_hermitian(p)


def test_from_string_signs():
    assert to_string(from_string('-YYYY')) == '-YYYY'
    assert to_string(from_string('−YXYZ')) == '-YXYZ', "unicode minus should parse as '-'"
    assert to_string(from_string('-iXY')) == '-iXY'
    assert to_string(from_string('iZ')) == '+iZ'


@pytest.mark.parametrize('text', ['', '+', '-i', 'XQZ', '++X', 'xz', '+-X'])
def test_from_string_rejects_malformed_text(text):
    with pytest.raises(PauliParseError):
        from_string(text)


def test_bits_must_fit_the_qubit_count():
    with pytest.raises(PauliSizeError):
        PauliWord(2, x_bits=0b100)


def test_commutation_and_hermiticity(star4):
    k = correlation_operators(star4)
    assert all(commutes(a, b) for a in k for b in k), "correlation operators must commute"
    assert not commutes(from_string('X'), from_string('Z'))
    assert commutes(from_string('XX'), from_string('ZZ'))
    assert is_hermitian(from_string('-YYYY'))
    assert not is_hermitian(from_string('+iX'))

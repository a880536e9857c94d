"""Matrix arithmetic over Z/2^k against a plain-integer oracle."""

import random

import pytest

from torsionlab import (
    ModMatrix,
    ModScalar,
    SingularMatrixError,
    StructuralError,
    mat_inverse,
    mat_mul,
    pack_key,
    unpack_key,
)


def int_mat_mul(a, b):
    """Independent oracle: schoolbook integer product of nested lists."""
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def test_identity_multiplication():
    m = ModMatrix([[3, 5], [2, 7]], 3)
    eye = ModMatrix.identity(2, 3)
    assert mat_mul(eye, m) == m
    assert mat_mul(m, eye) == m


def test_word_product_matches_integer_oracle():
    # tau * sigma^-1 * tau^-1 * sigma at level 5
    sigma = [[1, -2], [0, 1]]
    tau = [[1, 0], [2, 1]]
    sigma_inv = [[1, 2], [0, 1]]
    tau_inv = [[1, 0], [-2, 1]]
    expected = int_mat_mul(int_mat_mul(tau, sigma_inv), int_mat_mul(tau_inv, sigma))
    assert [[x % 32 for x in row] for row in expected] == [[29, 8], [24, 21]]
    got = mat_mul(
        mat_mul(ModMatrix(tau, 5), ModMatrix(sigma_inv, 5)),
        mat_mul(ModMatrix(tau_inv, 5), ModMatrix(sigma, 5)),
    )
    assert got == ModMatrix([[29, 8], [24, 21]], 5)


def test_inverse_unipotent():
    sigma = ModMatrix([[1, -2], [0, 1]], 4)
    assert mat_inverse(sigma) == ModMatrix([[1, 2], [0, 1]], 4)
    assert mat_mul(sigma, mat_inverse(sigma)) == ModMatrix.identity(2, 4)
    eye = ModMatrix.identity(2, 4)
    assert mat_inverse(eye) == eye


def test_inverse_general_mod16():
    m = ModMatrix([[13, 8], [8, 5]], 4)
    inv = mat_inverse(m)
    assert mat_mul(m, inv) == ModMatrix.identity(2, 4)
    assert mat_mul(inv, m) == ModMatrix.identity(2, 4)


def test_reduction_commutes_with_integer_products():
    rng = random.Random(20240817)
    for dim in (2, 4):
        for level in (3, 5):
            for _ in range(25):
                a = [[rng.randrange(-50, 50) for _ in range(dim)] for _ in range(dim)]
                b = [[rng.randrange(-50, 50) for _ in range(dim)] for _ in range(dim)]
                exact = int_mat_mul(a, b)
                reduced = mat_mul(ModMatrix(a, level), ModMatrix(b, level))
                assert reduced == ModMatrix(exact, level)


def test_associativity_sample():
    rng = random.Random(7)
    for _ in range(20):
        mats = [
            ModMatrix([[rng.randrange(32) for _ in range(2)] for _ in range(2)], 5)
            for _ in range(3)
        ]
        a, b, c = mats
        assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


def test_level_mismatch_rejected():
    a = ModMatrix([[1, 0], [0, 1]], 3)
    b = ModMatrix([[1, 0], [0, 1]], 4)
    with pytest.raises(StructuralError):
        mat_mul(a, b)


def test_singular_inverse_rejected():
    with pytest.raises(SingularMatrixError):
        mat_inverse(ModMatrix([[2, 0], [0, 1]], 4))


def test_scalar_arithmetic():
    a = ModScalar(13, 4)
    assert (a + 5).value == 2
    assert (a * a).value == (13 * 13) % 16
    assert a.inverse().value == pow(13, -1, 16)
    with pytest.raises(StructuralError):
        a + ModScalar(1, 3)
    with pytest.raises(SingularMatrixError):
        ModScalar(2, 4).inverse()


def test_pack_unpack_roundtrip():
    rng = random.Random(99)
    for _ in range(50):
        m = ModMatrix([[rng.randrange(8) for _ in range(4)] for _ in range(4)], 3)
        assert unpack_key(pack_key(m), 4, 3) == m


def test_serialization_roundtrip():
    m = ModMatrix([[29, 8], [24, 21]], 5)
    data = m.serialize()
    assert data == {"dim": 2, "level": 5, "entries": [29, 8, 24, 21]}
    assert ModMatrix.deserialize(data) == m

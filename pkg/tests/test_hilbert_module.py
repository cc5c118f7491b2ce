import math

import numpy as np
import pytest

from spherecodes.algebra import SCALAR, diag, identity, is_positive, matrix_algebra, operator_norm
from spherecodes.errors import ShapeError
from spherecodes.catalog import gen_kissing, random_unit_module_vector
from spherecodes.codes import embed_classical
from spherecodes.hilbert_module import (
    ModuleVector,
    basis_vector,
    from_real_vector,
    gram,
    inner_product,
    module_norm,
    unit_defect,
)
from tests.conftest import random_complex

M2 = matrix_algebra(2)


def rand_vec(rng, desc, d):
    return ModuleVector(desc, [random_complex(rng, desc.m) for _ in range(d)])


class TestInnerProduct:
    def test_basis_examples(self):
        e1, e2 = basis_vector(M2, 2, 0), basis_vector(M2, 2, 1)
        assert inner_product(e1, e1).allclose(identity(M2))
        assert inner_product(e1, e2).allclose(0 * identity(M2))

    def test_normalized_sum(self):
        x = ModuleVector(M2, [np.eye(2) / math.sqrt(2), np.eye(2) / math.sqrt(2)])
        assert inner_product(x, x).allclose(identity(M2))

    def test_linear_in_first_slot(self, rng):
        # <a x, y> = a <x, y> for left multiplication, and <x, y>* = <y, x>
        x, y = rand_vec(rng, M2, 3), rand_vec(rng, M2, 3)
        a = random_complex(rng, 2)
        ax = ModuleVector(M2, [a @ c.entries for c in x.components])
        assert np.allclose(inner_product(ax, y).entries, a @ inner_product(x, y).entries)
        assert np.allclose(inner_product(x, y).entries.conj().T, inner_product(y, x).entries)

    def test_explicit_formula(self, rng):
        x, y = rand_vec(rng, M2, 3), rand_vec(rng, M2, 3)
        oracle = sum(xc.entries @ yc.entries.conj().T for xc, yc in zip(x.components, y.components))
        assert np.allclose(inner_product(x, y).entries, oracle)

    def test_scalar_reduces_to_dot_product(self, rng):
        u, v = rng.standard_normal(5) + 1j * rng.standard_normal(5), rng.standard_normal(5) + 1j * rng.standard_normal(5)
        x, y = ModuleVector(SCALAR, u.reshape(5, 1, 1)), ModuleVector(SCALAR, v.reshape(5, 1, 1))
        assert inner_product(x, y).entries[0, 0] == pytest.approx(np.sum(u * v.conj()))

    def test_self_inner_positive(self, rng):
        for _ in range(50):
            assert is_positive(inner_product(*(2 * [rand_vec(rng, matrix_algebra(3), 4)])))

    def test_mismatch(self):
        with pytest.raises(ShapeError):
            inner_product(basis_vector(M2, 2, 0), basis_vector(M2, 3, 0))


class TestNorm:
    def test_examples(self):
        assert module_norm(basis_vector(M2, 3, 1)) == pytest.approx(1)
        assert module_norm(ModuleVector(M2, [np.zeros((2, 2))])) == 0
        assert module_norm(ModuleVector(M2, [diag([2, 1], kind="matrix")])) == pytest.approx(2)

    def test_cauchy_schwarz(self, rng):
        for _ in range(200):
            x, y = rand_vec(rng, M2, 3), rand_vec(rng, M2, 3)
            assert operator_norm(inner_product(x, y)) <= module_norm(x) * module_norm(y) + 1e-9

    def test_unit_defect(self, rng):
        assert unit_defect(basis_vector(M2, 2, 0)) == 0
        assert unit_defect(random_unit_module_vector(matrix_algebra(3), 4, rng)) < 1e-12


class TestGram:
    def test_orthonormal_basis(self):
        g = gram([basis_vector(M2, 3, i) for i in range(3)])
        for j in range(3):
            for k in range(3):
                assert np.allclose(g.inner[j, k], np.eye(2) * (j == k))
                assert np.allclose(g.diff[j, k], 2 * np.eye(2) * (j != k))

    def test_single_vector(self):
        g = gram([basis_vector(M2, 1, 0)])
        assert g.diff.shape == (1, 1, 2, 2) and np.all(g.diff == 0)

    def test_hexagon_entries(self):
        g = gram(embed_classical(gen_kissing(2)).vectors)
        values = np.round(g.inner[..., 0, 0].real, 12)
        assert set(np.unique(values)) <= {1.0, 0.5, -0.5, -1.0}

    def test_adjoint_symmetry_and_identity(self, rng):
        vecs = [random_unit_module_vector(matrix_algebra(3), 2, rng) for _ in range(12)]
        g = gram(vecs)
        assert np.allclose(g.inner, np.conj(np.swapaxes(g.inner.transpose(1, 0, 2, 3), -1, -2)))
        eye = np.eye(3)
        for j in range(12):
            assert np.allclose(g.diff[j, j], 0)
            for k in range(12):
                identity_form = 2 * eye - g.inner[j, k] - g.inner[k, j]
                assert np.linalg.norm(g.diff[j, k] - identity_form, 2) <= 1e-9
                assert np.linalg.eigvalsh(g.diff[j, k])[0] >= -1e-10

    def test_non_unit_diff_is_direct(self, rng):
        vecs = [rand_vec(rng, M2, 2) for _ in range(4)]
        g = gram(vecs)
        x, y = vecs[0], vecs[1]
        z = x - y
        assert np.allclose(g.diff[0, 1], inner_product(z, z).entries)

    def test_thread_count_does_not_change_result(self, rng):
        vecs = [random_unit_module_vector(matrix_algebra(2), 3, rng) for _ in range(37)]
        g1, g4 = gram(vecs, threads=1), gram(vecs, threads=4)
        assert np.array_equal(g1.inner, g4.inner) and np.array_equal(g1.diff, g4.diff)

    def test_from_real_vector(self):
        x = from_real_vector([0.6, 0.8])
        assert x.descriptor == SCALAR and module_norm(x) == pytest.approx(1)

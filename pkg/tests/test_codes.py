import math

import numpy as np
import pytest
from scipy.stats import special_ortho_group

from spherecodes import catalog as cat
from spherecodes.algebra import diagonal_algebra, matrix_algebra
from spherecodes.codes import (
    ClassicalCode,
    ModularCode,
    diagonal_product,
    embed_classical,
    max_admissible_cos,
    permute,
    verify_classical,
    verify_modular,
    verify_modular_norm_only,
)
from spherecodes.errors import DomainError, ShapeError
from spherecodes.hilbert_module import ModuleVector
from tests.conftest import PI_3

M2 = matrix_algebra(2)


class TestClassical:
    def test_hexagon_tight(self):
        rep = verify_classical(cat.gen_kissing(2))
        assert rep.valid and abs(rep.margin) <= 1e-9 and rep.n == 6

    def test_antipodal_at_pi(self):
        assert verify_classical(ClassicalCode(1, math.pi, [[1.0], [-1.0]])).valid

    def test_simplex_too_wide_angle(self):
        code = cat.gen_simplex(3).with_theta(math.acos(-0.4))
        rep = verify_classical(code)
        assert not rep.valid
        assert rep.margin == pytest.approx(-0.4 + 1 / 3)

    def test_single_point_vacuous(self):
        rep = verify_classical(ClassicalCode(3, 1.0, [[0, 0, 1.0]]))
        assert rep.valid and rep.worst_pair is None and rep.to_dict()["margin"] is None

    def test_non_unit_rejected(self):
        with pytest.raises(DomainError):
            verify_classical(ClassicalCode(2, 1.0, [[1.0, 0.0], [0.0, 1.1]]))

    def test_theta_range(self):
        with pytest.raises(DomainError):
            ClassicalCode(2, 2 * math.pi, [[1.0, 0.0]])
        with pytest.raises(DomainError):
            ClassicalCode(2, -0.1, [[1.0, 0.0]])

    def test_shape(self):
        with pytest.raises(ShapeError):
            ClassicalCode(3, 1.0, [[1.0, 0.0]])

    def test_margin_oracle(self, rng):
        # margin = cos(theta) - max off-diagonal inner product, recomputed by brute force
        for _ in range(20):
            code = cat.random_classical_code(4, 15, rng)
            code = code.with_theta(code.theta * 0.97)
            P = code.points
            best = max(P[i] @ P[j] for i in range(15) for j in range(i + 1, 15))
            assert verify_classical(code).margin == pytest.approx(math.cos(code.theta) - best, abs=1e-12)

    def test_orthogonal_invariance(self, rng):
        for d in (2, 3, 4, 8):
            code = cat.random_classical_code(d, 20, rng)
            Q = special_ortho_group.rvs(d, random_state=int(rng.integers(1 << 31))) if d > 1 else np.eye(1)
            rotated = ClassicalCode(d, code.theta, code.points @ Q.T)
            assert abs(verify_classical(rotated).margin - verify_classical(code).margin) <= 1e-9

    def test_permutation_invariance(self, rng):
        code = cat.gen_kissing(4)
        order = rng.permutation(code.n)
        a, b = verify_classical(code), verify_classical(permute(code, order))
        assert a.valid == b.valid and a.margin == pytest.approx(b.margin, abs=1e-15)

    def test_deterministic_tie_break(self):
        # every pair of the cross-polytope at pi/2 is tied at margin 0 except antipodes
        rep = verify_classical(cat.gen_cross_polytope(3))
        assert rep.worst_pair == (0, 1)


class TestModular:
    def test_orthonormal_valid_below_right_angle(self):
        for d in (1, 2, 3, 5):
            for theta in (0.0, PI_3, math.pi / 2 - 1e-3):
                assert verify_modular(cat.gen_orthonormal_modular(M2, d, theta)).valid

    def test_orthonormal_invalid_at_two_thirds_pi(self):
        rep = verify_modular(cat.gen_orthonormal_modular(M2, 3, 2 * math.pi / 3))
        assert not rep.valid
        # diff = 2I against the requirement 3I; margin in cosine units is -1/2
        assert rep.margin == pytest.approx(-0.5)

    def test_scalar_reduction_examples(self):
        for d in (1, 2, 3):
            code = cat.gen_kissing(d)
            a, b = verify_classical(code), verify_modular(embed_classical(code))
            assert a.valid == b.valid and a.margin == pytest.approx(b.margin, abs=1e-9)

    def test_scalar_reduction_random(self, rng):
        for i in range(200):
            d = (2, 3, 4, 8)[i % 4]
            code = cat.random_classical_code(d, int(rng.integers(2, 12)), rng)
            theta = code.theta * float(rng.uniform(0.9, 1.1))
            code = code.with_theta(min(theta, math.pi))
            a, b = verify_classical(code), verify_modular(embed_classical(code))
            assert a.valid == b.valid
            assert a.margin == pytest.approx(b.margin, abs=1e-9)

    def test_icosahedron_modular(self):
        rep = verify_modular(embed_classical(cat.gen_kissing(3)))
        assert rep.valid and rep.n == 12

    def test_gap_pair(self):
        code = cat.gen_norm_order_gap_pair()
        assert verify_modular_norm_only(code).valid
        rep = verify_modular(code)
        assert not rep.valid and rep.worst_pair == (0, 1)
        # lambda_min(diag(4, 0)) = 0 against 2: halved slack is -1
        assert rep.margin == pytest.approx(-1.0)

    def test_order_implies_norm(self, rng):
        codes = [cat.gen_orthonormal_modular(M2, 3, PI_3), embed_classical(cat.gen_kissing(4))]
        for m, kind in ((2, "matrix"), (3, "diagonal"), (1, "scalar")):
            from spherecodes.algebra import AlgebraDescriptor

            for _ in range(15):
                codes.append(cat.random_modular_code(AlgebraDescriptor(kind, m), 3, 6, rng))
        for code in codes:
            if verify_modular(code).valid:
                assert verify_modular_norm_only(code).valid

    def test_single_vector(self):
        code = cat.gen_orthonormal_modular(M2, 1, 2.0)
        assert verify_modular(code).valid and verify_modular_norm_only(code).valid

    def test_non_unit_reported(self):
        v = ModuleVector(M2, [2 * np.eye(2)])
        w = ModuleVector(M2, [np.zeros((2, 2))])
        rep = verify_modular(ModularCode(M2, 1, 1.0, (v, w)))
        assert not rep.valid

    def test_non_hermitian_never_symmetrised(self):
        # unit vectors still give Hermitian diffs; a corrupted Gram is caught by the module layer
        code = cat.gen_orthonormal_modular(M2, 2, 1.0)
        assert verify_modular(code).valid

    def test_threads_identical(self, rng):
        code = cat.random_modular_code(matrix_algebra(3), 2, 30, rng)
        a, b = verify_modular(code, threads=1), verify_modular(code, threads=3)
        assert a.to_dict() == b.to_dict()

    def test_permutation_invariance(self, rng):
        code = cat.random_modular_code(M2, 3, 10, rng).with_theta(0.2)
        order = rng.permutation(10)
        a, b = verify_modular(code), verify_modular(permute(code, order))
        assert a.valid == b.valid and a.margin == pytest.approx(b.margin, abs=1e-12)

    def test_max_admissible_cos(self, rng):
        code = cat.random_modular_code(M2, 3, 8, rng)
        c = max_admissible_cos(code)
        assert verify_modular(code.with_theta(math.acos(min(1, c + 1e-7)))).valid
        assert not verify_modular(code.with_theta(math.acos(c - 1e-6))).valid


class TestDiagonalProduct:
    def test_two_hexagons(self):
        code = diagonal_product([cat.gen_kissing(2)] * 2)
        assert code.algebra == diagonal_algebra(2) and code.n == 6
        assert verify_modular(code).valid

    def test_single_copy_matches_embedding(self):
        hexagon = cat.gen_kissing(2)
        a, b = verify_modular(diagonal_product([hexagon])), verify_modular(embed_classical(hexagon))
        assert a.valid == b.valid and a.margin == pytest.approx(b.margin, abs=1e-15)

    def test_rotated_hexagon(self):
        hexagon = cat.gen_kissing(2)
        t = 0.37
        R = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
        rotated = ClassicalCode(2, hexagon.theta, hexagon.points @ R.T)
        assert verify_modular(diagonal_product([hexagon, rotated])).valid

    def test_kissing_copies(self):
        for d in (2, 4, 8):
            assert verify_modular(diagonal_product([cat.gen_kissing(d)] * 3)).valid

    def test_mismatched_codes(self):
        with pytest.raises(ShapeError):
            diagonal_product([cat.gen_kissing(2), cat.gen_kissing(3)])

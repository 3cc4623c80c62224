import numpy as np
import pytest
from helpers import bf_mle, clique_similarity, random_set_function, random_similarity

from conftest import DEMO3_MOBIUS, DEMO3_VALUES
from simpart.errors import CapacityError, ValidationError
from simpart.score import (
    QuadraticScore,
    ScoreFunction,
    SimilarityMatrix,
    evaluate,
    mle_evaluate,
    mobius_transform,
    quadratic_from_similarity,
    similarity_from_distances,
    zeta_transform,
)

approx = lambda x: pytest.approx(x, abs=1e-9)


class TestSimilarityFromDistances:
    def test_max_normalize_two_points(self):
        sim = similarity_from_distances([[0, 1], [1, 0]])
        assert sim.entries.tolist() == [[1, 0], [0, 1]]

    def test_all_zero_distances(self):
        sim = similarity_from_distances([[0, 0], [0, 0]])
        assert sim.entries.tolist() == [[1, 1], [1, 1]]

    def test_already_normalized(self):
        d = [[0, 0.5, 1], [0.5, 0, 0.5], [1, 0.5, 0]]
        sim = similarity_from_distances(d, mode="already-normalized")
        expected = [[1, 0.5, 0], [0.5, 1, 0.5], [0, 0.5, 1]]
        np.testing.assert_allclose(sim.entries, expected, atol=1e-12)

    def test_rejects_asymmetry(self):
        with pytest.raises(ValidationError, match="asymmetric"):
            similarity_from_distances([[0, 1], [2, 0]])

    def test_rejects_negative(self):
        with pytest.raises(ValidationError, match="negative"):
            similarity_from_distances([[0, -1], [-1, 0]])

    def test_rejects_unnormalized_above_one(self):
        with pytest.raises(ValidationError, match="above 1"):
            similarity_from_distances([[0, 2], [2, 0]], mode="already-normalized")


class TestSimilarityMatrix:
    def test_rejects_bad_diagonal(self):
        with pytest.raises(ValidationError, match="diagonal"):
            SimilarityMatrix([[0.5, 0.1], [0.1, 1.0]])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError, match=r"row 0, col 1"):
            SimilarityMatrix([[1.0, 1.2], [1.2, 1.0]])


class TestQuadraticFromSimilarity:
    def test_two_points(self):
        s = 0.3
        quad = quadratic_from_similarity(SimilarityMatrix([[1, s], [s, 1]]))
        np.testing.assert_allclose(quad.singleton_coeffs, [(1 - s) / 2] * 2)
        assert quad.pair_coeff(0, 1) == approx(2 * s - 1)

    def test_identical_points_score_zero(self):
        quad = quadratic_from_similarity(SimilarityMatrix(np.ones((4, 4))))
        np.testing.assert_allclose(quad.singleton_coeffs, 0.0, atol=1e-12)

    def test_rejects_single_point(self):
        with pytest.raises(ValidationError):
            quadratic_from_similarity(SimilarityMatrix([[1.0]]))

    def test_clique_values_n5(self):
        n = 5
        mask = 0b11111
        for a, expected in zip(range(1, 6), [0.5, 1.0, 2.25, 5.0, 10.0]):
            clique = (1 << a) - 1
            quad = quadratic_from_similarity(SimilarityMatrix(clique_similarity(n, clique)))
            assert quad.evaluate(clique) == approx(expected)
        assert mask == (1 << n) - 1

    @pytest.mark.parametrize("n", range(3, 11))
    def test_clique_closed_form(self, n):
        for a in range(1, n + 1):
            clique = (1 << a) - 1
            quad = quadratic_from_similarity(SimilarityMatrix(clique_similarity(n, clique)))
            expected = a * (a * a - 3 * a + n + 1) / (2 * (n - 1))
            assert quad.evaluate(clique) == approx(expected)

    def test_pair_values_pin_similarity(self):
        rng = np.random.default_rng(7)
        s = random_similarity(rng, 6)
        quad = quadratic_from_similarity(SimilarityMatrix(s))
        for i in range(6):
            for j in range(i + 1, 6):
                assert quad.evaluate((1 << i) | (1 << j)) == approx(s[i, j])


class TestEvaluate:
    def test_demo3_pair(self, demo3):
        assert evaluate(demo3, 0b011) == approx(0.8)

    def test_empty_set(self, demo3):
        assert evaluate(demo3, 0) == 0.0

    def test_demo3_full(self, demo3):
        assert evaluate(demo3, 0b111) == approx(0.7)

    def test_out_of_range_mask(self, demo3):
        with pytest.raises(ValidationError):
            evaluate(demo3, 1 << 3)


class TestTransforms:
    def test_demo3_mobius(self):
        np.testing.assert_allclose(mobius_transform(DEMO3_VALUES), DEMO3_MOBIUS, atol=1e-9)

    def test_zero_function(self):
        np.testing.assert_array_equal(mobius_transform(np.zeros(16)), np.zeros(16))

    def test_additive_function_has_singleton_support(self):
        rng = np.random.default_rng(3)
        c = rng.random(5)
        values = np.array([c[[i for i in range(5) if (m >> i) & 1]].sum() for m in range(32)])
        mob = mobius_transform(values)
        for mask in range(32):
            if mask.bit_count() >= 2:
                assert abs(mob[mask]) < 1e-9

    def test_roundtrip_demo3(self):
        np.testing.assert_allclose(zeta_transform(DEMO3_MOBIUS), DEMO3_VALUES, atol=1e-9)

    def test_roundtrip_random(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(2, 13))
            values = random_set_function(rng, n)
            np.testing.assert_allclose(zeta_transform(mobius_transform(values)), values, atol=1e-9)

    def test_singleton_mobius_counts(self):
        mob = np.zeros(16)
        for i in range(4):
            mob[1 << i] = 1.0
        values = zeta_transform(mob)
        for mask in range(16):
            assert values[mask] == mask.bit_count()

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            mobius_transform(np.zeros(1 << 21))


class TestMle:
    def test_vertex_agreement_demo3(self, demo3):
        assert mle_evaluate(demo3, [1, 1, 0]) == approx(0.8)

    def test_center_demo3(self, demo3):
        assert mle_evaluate(demo3, [0.5, 0.5, 0.5]) == approx(0.375)

    def test_origin(self, demo3):
        assert mle_evaluate(demo3, [0, 0, 0]) == 0.0

    def test_rejects_out_of_box(self, demo3):
        with pytest.raises(ValidationError):
            mle_evaluate(demo3, [0.5, 1.5, 0.0])
        with pytest.raises(ValidationError):
            mle_evaluate(demo3, [-0.1, 0.5, 0.0])

    def test_vertex_agreement_exhaustive(self):
        rng = np.random.default_rng(5)
        for n in (4, 7, 10):
            score = ScoreFunction.from_values(random_set_function(rng, n))
            for mask in range(1 << n):
                chi = np.array([(mask >> i) & 1 for i in range(n)], dtype=float)
                assert mle_evaluate(score, chi) == approx(score.evaluate(mask))

    def test_matches_bruteforce(self, demo3):
        rng = np.random.default_rng(9)
        for _ in range(20):
            q = rng.random(3)
            assert mle_evaluate(demo3, q) == approx(bf_mle(demo3.mobius, q))

    def test_affine_in_each_coordinate(self, demo3):
        rng = np.random.default_rng(13)
        for i in range(3):
            q = rng.random(3)
            vals = []
            for t in (0.0, 0.5, 1.0):
                q[i] = t
                vals.append(mle_evaluate(demo3, q))
            assert vals[1] == approx((vals[0] + vals[2]) / 2)


class TestQuadraticScore:
    def test_dense_agreement(self):
        rng = np.random.default_rng(17)
        for n in (3, 6, 9, 12):
            quad = quadratic_from_similarity(SimilarityMatrix(random_similarity(rng, n)))
            dense = quad.to_dense()
            assert dense.degree <= 2
            for mask in rng.integers(0, 1 << n, 50):
                assert quad.evaluate(int(mask)) == approx(dense.evaluate(int(mask)))
            q = rng.random(n)
            assert quad.mle(q) == approx(dense.mle(q))

    def test_dense_mobius_vanishes_above_pairs(self):
        rng = np.random.default_rng(19)
        quad = quadratic_from_similarity(SimilarityMatrix(random_similarity(rng, 8)))
        mob = quad.to_dense().mobius
        for mask in range(1 << 8):
            if mask.bit_count() > 2:
                assert abs(mob[mask]) < 1e-12

    def test_rejected_singleton_choices_are_degenerate(self):
        # The two discarded constructions: unit singleton scores force
        # sub-additivity, zero singleton scores force super-additivity.
        rng = np.random.default_rng(23)
        n = 6
        s = random_similarity(rng, n)
        iu = np.triu_indices(n, k=1)
        sub = QuadraticScore(n, np.ones(n), (s - 2.0)[iu])
        sup = QuadraticScore(n, np.zeros(n), s[iu])
        for _ in range(200):
            a = int(rng.integers(1, 1 << n))
            b = int(rng.integers(1, 1 << n)) & ~a
            if not b:
                continue
            assert sub.evaluate(a | b) <= sub.evaluate(a) + sub.evaluate(b) + 1e-12
            assert sup.evaluate(a | b) >= sup.evaluate(a) + sup.evaluate(b) - 1e-12


class TestScoreFunctionConstruction:
    def test_requires_zero_empty_value(self):
        with pytest.raises(ValidationError):
            ScoreFunction.from_values([1.0, 0.5, 0.5, 0.2])

    def test_degree(self, demo3):
        assert demo3.degree == 3

import numpy as np
import pytest

from subspace_sets.algebra import (
    Subspace,
    complement,
    format_subspace,
    hard_membership,
    intersection,
    parse_subspace,
    parse_vectors,
    soft_membership,
    span,
    subspace_equal,
    union,
)
from subspace_sets.errors import DimensionMismatch, InvalidInput, ParseError

E1, E2, E3 = np.eye(3)


def random_subspace(rng, rank, dim):
    return span(list(rng.standard_normal((rank, dim))), dim=dim)


class TestSpan:
    def test_two_axes(self):
        s = span([E1, E2])
        assert s.rank == 2
        np.testing.assert_allclose(s.projector(), np.diag([1.0, 1, 0]), atol=1e-12)

    def test_scale_invariance(self):
        s = span([np.array([2.0, 0, 0])])
        assert s.rank == 1
        np.testing.assert_allclose(s.projector(), np.diag([1.0, 0, 0]), atol=1e-12)

    def test_empty(self):
        s = span([], dim=3)
        assert s.rank == 0 and s.ambient_dim == 3

    def test_empty_without_dim(self):
        with pytest.raises(InvalidInput):
            span([])

    def test_mixed_dimensions(self):
        with pytest.raises(DimensionMismatch):
            span([E1, np.array([1.0, 0])])

    def test_duplicates_absorbed(self):
        s = span([E1, E1, E1])
        assert s.rank == 1

    def test_permutation_invariance(self):
        rng = np.random.default_rng(10)
        vectors = list(rng.standard_normal((5, 6)))
        a = span(vectors)
        b = span([vectors[i] for i in rng.permutation(5)])
        assert subspace_equal(a, b, 1e-9)


class TestUnion:
    def test_orthogonal_lines(self):
        u = union(span([E1]), span([E2]))
        np.testing.assert_allclose(u.projector(), np.diag([1.0, 1, 0]), atol=1e-12)

    def test_idempotent(self):
        a = span([E1])
        assert subspace_equal(union(a, a), a, 1e-8)

    def test_oblique_line_completes_plane(self):
        diag = np.array([1.0, 1.0, 0]) / np.sqrt(2)
        u = union(span([diag]), span([E1]))
        np.testing.assert_allclose(u.projector(), np.diag([1.0, 1, 0]), atol=1e-12)

    def test_rank_bounds(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            d = 8
            ra, rb = rng.integers(0, 4, size=2)
            a, b = random_subspace(rng, ra, d), random_subspace(rng, rb, d)
            u = union(a, b)
            assert max(a.rank, b.rank) <= u.rank <= min(a.rank + b.rank, d)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            union(span([E1]), span([np.array([1.0, 0])]))


class TestIntersection:
    def test_shared_axis(self):
        got = intersection(span([E1, E2]), span([E2, E3]))
        assert got.rank == 1
        assert subspace_equal(got, span([E2]), 1e-8)

    def test_orthogonal_lines_trivial(self):
        got = intersection(span([E1]), span([E2]))
        assert got.rank == 0

    def test_random_planes_share_a_line(self):
        # Oracle: the intersection line of two planes in R^3 is the
        # eigenvector of (I - Pa) + (I - Pb) with eigenvalue ~ 0.
        rng = np.random.default_rng(12)
        for _ in range(10):
            a = random_subspace(rng, 2, 3)
            b = random_subspace(rng, 2, 3)
            got = intersection(a, b)
            assert got.rank == 1
            m = (np.eye(3) - a.projector()) + (np.eye(3) - b.projector())
            eigvals, eigvecs = np.linalg.eigh(m)
            assert eigvals[0] < 1e-10
            line = eigvecs[:, 0]
            cosine = abs(float(got.basis[0] @ line))
            assert np.arccos(min(cosine, 1.0)) < 1e-6

    def test_result_contained_in_both(self):
        rng = np.random.default_rng(13)
        shared = rng.standard_normal((2, 10))
        a = span(list(shared) + list(rng.standard_normal((2, 10))))
        b = span(list(shared) + list(rng.standard_normal((3, 10))))
        got = intersection(a, b)
        assert got.rank == 2
        for row in got.basis:
            assert soft_membership(row, a) >= 1 - 1e-6
            assert soft_membership(row, b) >= 1 - 1e-6

    def test_rank_zero_operand(self):
        a = span([], dim=3)
        assert intersection(a, span([E1])).rank == 0

    def test_alpha_validated(self):
        with pytest.raises(InvalidInput):
            intersection(span([E1]), span([E1]), alpha=0.5)
        with pytest.raises(InvalidInput):
            intersection(span([E1]), span([E1]), alpha=-1e-9)


class TestComplement:
    def test_line_in_r3(self):
        c = complement(span([E1]))
        np.testing.assert_allclose(c.projector(), np.diag([0.0, 1, 1]), atol=1e-12)

    def test_double_complement(self):
        rng = np.random.default_rng(14)
        for rank in (0, 1, 3, 5):
            a = random_subspace(rng, rank, 5) if rank else span([], dim=5)
            assert subspace_equal(complement(complement(a)), a, 1e-8)

    def test_full_space_has_trivial_complement(self):
        full = span([np.array([1.0, 0]), np.array([0.0, 1])])
        assert complement(full).rank == 0

    def test_projectors_sum_to_identity(self):
        rng = np.random.default_rng(15)
        a = random_subspace(rng, 3, 7)
        total = a.projector() + complement(a).projector()
        assert np.linalg.norm(total - np.eye(7)) < 1e-8


class TestMembership:
    def test_hard_inside_and_outside(self):
        plane = span([E1, E2])
        assert hard_membership(E1, plane, 1e-8)
        assert not hard_membership(E3, plane, 1e-8)
        assert not hard_membership(np.ones(3) / np.sqrt(3), plane, 1e-8)

    def test_soft_45_degrees(self):
        v = np.array([1.0, 1.0, 0]) / np.sqrt(2)
        np.testing.assert_allclose(
            soft_membership(v, span([E1])), np.sqrt(2) / 2, atol=1e-12
        )

    def test_soft_projection_norm_identity(self):
        got = soft_membership(np.ones(3), span([E1, E2]))
        np.testing.assert_allclose(got, np.sqrt(2.0 / 3.0), atol=1e-12)

    def test_soft_matches_projector_oracle(self):
        rng = np.random.default_rng(16)
        for _ in range(50):
            a = random_subspace(rng, 3, 8)
            v = rng.standard_normal(8)
            v_hat = v / np.linalg.norm(v)
            oracle = np.linalg.norm(a.projector() @ v_hat)
            assert abs(soft_membership(v, a) - oracle) < 1e-10

    def test_soft_rank0_is_exact_zero(self):
        assert soft_membership(E1, span([], dim=3)) == 0.0

    def test_rank1_reduces_to_abs_cosine(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            v, w = rng.standard_normal((2, 6))
            cosine = v @ w / (np.linalg.norm(v) * np.linalg.norm(w))
            assert abs(soft_membership(v, span([w])) - abs(cosine)) < 1e-10

    def test_scale_invariance(self):
        rng = np.random.default_rng(18)
        a = random_subspace(rng, 2, 5)
        v = rng.standard_normal(5)
        base = soft_membership(v, a)
        for c in (2.0, -3.0, 1e-6, 1e6):
            assert abs(soft_membership(c * v, a) - base) <= 1e-12

    def test_soft_one_iff_hard(self):
        rng = np.random.default_rng(19)
        a = random_subspace(rng, 3, 8)
        inside = a.basis.T @ rng.standard_normal(3)
        outside = rng.standard_normal(8)
        assert soft_membership(inside, a) > 1 - 1e-9
        assert hard_membership(inside, a, 1e-6)
        assert soft_membership(outside, a) < 1 - 1e-9
        assert not hard_membership(outside, a, 1e-6)

    def test_complement_annihilates_members(self):
        rng = np.random.default_rng(20)
        a = random_subspace(rng, 3, 8)
        inside = a.basis.T @ rng.standard_normal(3)
        assert soft_membership(inside, complement(a)) < 1e-9

    def test_zero_vector_rejected(self):
        with pytest.raises(InvalidInput):
            soft_membership(np.zeros(3), span([E1]))
        with pytest.raises(InvalidInput):
            hard_membership(np.zeros(3), span([E1]), 1e-6)


class TestEquality:
    def test_scaled_generator(self):
        assert subspace_equal(span([E1]), span([np.array([2.0, 0, 0])]), 1e-9)

    def test_different_lines(self):
        assert not subspace_equal(span([E1]), span([E2]), 1e-8)

    def test_same_plane_different_bases(self):
        a = span([E1, E2])
        b = span([np.array([1.0, 1, 0]) / np.sqrt(2), np.array([1.0, -1, 0]) / np.sqrt(2)])
        assert subspace_equal(a, b, 1e-9)


class TestQuantumLogicLaws:
    def test_de_morgan_both_forms(self):
        rng = np.random.default_rng(21)
        for trial in range(30):
            d = (4, 8, 16)[trial % 3]
            a = random_subspace(rng, int(rng.integers(1, d // 2 + 1)), d)
            b = random_subspace(rng, int(rng.integers(1, d // 2 + 1)), d)
            lhs1 = complement(union(a, b))
            rhs1 = intersection(complement(a), complement(b), 1e-6)
            assert subspace_equal(lhs1, rhs1, 1e-7)
            lhs2 = complement(intersection(a, b, 1e-6))
            rhs2 = union(complement(a), complement(b))
            assert subspace_equal(lhs2, rhs2, 1e-7)

    def test_idempotence(self):
        rng = np.random.default_rng(22)
        a = random_subspace(rng, 3, 9)
        assert subspace_equal(union(a, a), a, 1e-8)
        assert subspace_equal(intersection(a, a, 1e-6), a, 1e-8)

    def test_monotonicity(self):
        rng = np.random.default_rng(23)
        shared = rng.standard_normal((2, 12))
        a = span(list(shared) + list(rng.standard_normal((2, 12))))
        b = span(list(shared) + list(rng.standard_normal((2, 12))))
        inter = intersection(a, b, 1e-6)
        u = union(a, b)
        for row in inter.basis:
            assert soft_membership(row, a) >= 1 - 1e-6
            assert soft_membership(row, b) >= 1 - 1e-6
        for row in a.basis:
            assert soft_membership(row, u) >= 1 - 1e-6
        for row in b.basis:
            assert soft_membership(row, u) >= 1 - 1e-6


class TestSerialization:
    def test_round_trip(self):
        rng = np.random.default_rng(24)
        a = random_subspace(rng, 3, 5)
        text = format_subspace(a)
        b = parse_subspace(text)
        assert b.ambient_dim == 5 and b.rank == 3
        np.testing.assert_array_equal(a.basis, b.basis)
        assert format_subspace(b) == text

    def test_rank_zero_round_trip(self):
        a = span([], dim=4)
        b = parse_subspace(format_subspace(a))
        assert b.rank == 0 and b.ambient_dim == 4

    def test_header_errors(self):
        with pytest.raises(ParseError) as err:
            parse_subspace("nonsense 3 1\n1 0 0\n")
        assert err.value.line_no == 1
        with pytest.raises(ParseError):
            parse_subspace("")

    def test_short_row_reports_line(self):
        with pytest.raises(ParseError) as err:
            parse_subspace("subspace 3 2\n1 0 0\n0 1\n")
        assert err.value.line_no == 3

    def test_non_orthonormal_file_rejected(self):
        with pytest.raises(InvalidInput):
            parse_subspace("subspace 2 1\n1 1\n")

    def test_vector_file(self):
        vectors = parse_vectors("1 0 0\n0 2 0\n")
        assert len(vectors) == 2
        with pytest.raises(ParseError) as err:
            parse_vectors("1 0\n1 2 3\n")
        assert err.value.line_no == 2


class TestSubspaceType:
    def test_basis_immutable(self):
        a = span([E1, E2])
        with pytest.raises(ValueError):
            a.basis[0, 0] = 7.0

    def test_rejects_non_orthonormal_basis(self):
        with pytest.raises(InvalidInput):
            Subspace(np.array([[1.0, 1.0, 0.0]]))

"""Matrix superalgebras, root data, Borel choices, ordered lowering bases."""

import itertools

import pytest

from superflag.linalg import Rat
from superflag.liesuper import (
    DegenerateFunctionalError,
    RootDecompositionError,
    SuperMatrix,
    UnsupportedFamilyError,
    build_algebra,
    build_context,
    choose_borel,
    negative_basis,
    root_decomposition,
    superbracket,
)


def brackets_of(algebra):
    return [(x, px) for x, px in zip(algebra.basis, algebra.parities)]


class TestSuperMatrix:
    def test_unit_and_parity(self):
        e = SuperMatrix.unit(1, 2, 0, 2)
        assert e.parity() == 1  # crosses the block boundary
        assert SuperMatrix.unit(1, 2, 1, 2).parity() == 0

    def test_supertrace_sign(self):
        top = SuperMatrix.unit(1, 1, 0, 0)
        bottom = SuperMatrix.unit(1, 1, 1, 1)
        assert top.supertrace() == 1
        assert bottom.supertrace() == -1

    def test_matmul(self):
        a = SuperMatrix.unit(1, 1, 0, 1)
        b = SuperMatrix.unit(1, 1, 1, 0)
        assert (a @ b).rows[0][0] == 1
        assert (b @ a).rows[1][1] == 1


class TestAlgebraConstruction:
    @pytest.mark.parametrize(
        "family,m,n,expected",
        [
            ("gl", 1, 1, (2, 2)),
            ("sl", 1, 2, (4, 4)),
            ("osp", 1, 2, (10, 4)),
            ("sl", 2, 0, (3, 0)),
            ("sl", 3, 0, (8, 0)),
        ],
    )
    def test_dimensions(self, family, m, n, expected):
        algebra = build_algebra(family, m, n)
        assert (algebra.dim_even, algebra.dim_odd) == expected

    def test_unknown_family(self):
        with pytest.raises(UnsupportedFamilyError):
            build_algebra("xx", 1, 1)

    def test_equal_block_special_warns(self):
        with pytest.warns(UserWarning):
            build_algebra("sl", 2, 2)

    def test_orthosymplectic_small_even_part_warns(self):
        with pytest.warns(UserWarning):
            build_algebra("osp", 2, 1)

    def test_special_families_are_supertraceless(self):
        for family, m, n in (("sl", 1, 2), ("sl", 3, 0), ("osp", 1, 2)):
            algebra = build_algebra(family, m, n)
            for x in algebra.basis:
                assert x.supertrace() == 0

    def test_closure_under_bracket(self):
        for family, m, n in (("gl", 1, 1), ("sl", 1, 2), ("osp", 1, 2)):
            algebra = build_algebra(family, m, n)
            for x in algebra.basis:
                for y in algebra.basis:
                    algebra.coordinates(superbracket(x, y))  # raises if outside

    def test_super_skew_symmetry(self):
        for family, m, n in (("gl", 1, 1), ("osp", 1, 2)):
            algebra = build_algebra(family, m, n)
            for (x, px), (y, py) in itertools.product(
                brackets_of(algebra), repeat=2
            ):
                lhs = superbracket(x, y)
                rhs = superbracket(y, x).scaled(-1 if px * py == 0 else 1)
                assert (lhs + rhs.scaled(-1)).is_zero() or (
                    lhs.flatten().entries == rhs.flatten().entries
                )

    def test_super_jacobi(self):
        # graded Jacobi on every basis triple of the smaller algebras
        for family, m, n in (("gl", 1, 1), ("sl", 1, 2)):
            algebra = build_algebra(family, m, n)
            elems = brackets_of(algebra)
            for (x, px), (y, py), (z, pz) in itertools.product(elems, repeat=3):
                t1 = superbracket(x, superbracket(y, z))
                t2 = superbracket(superbracket(x, y), z)
                t3 = superbracket(y, superbracket(x, z)).scaled(
                    -1 if px * py else 1
                )
                total = t1 + t2.scaled(-1) + t3.scaled(-1)
                assert total.is_zero()

    def test_super_jacobi_osp_sampled(self):
        algebra = build_algebra("osp", 1, 2)
        elems = brackets_of(algebra)
        # all triples on a 14-element basis: 2744 bracket triples, still fast
        for (x, px), (y, py), (z, pz) in itertools.product(elems, repeat=3):
            t1 = superbracket(x, superbracket(y, z))
            t2 = superbracket(superbracket(x, y), z)
            t3 = superbracket(y, superbracket(x, z)).scaled(-1 if px * py else 1)
            assert (t1 + t2.scaled(-1) + t3.scaled(-1)).is_zero()


class TestRootDecomposition:
    def test_root_counts(self):
        datum = root_decomposition(build_algebra("osp", 1, 2))
        assert len(datum.even_roots) == 8
        assert len(datum.odd_roots) == 4
        datum = root_decomposition(build_algebra("sl", 1, 2))
        assert len(datum.even_roots) == 2
        assert len(datum.odd_roots) == 4
        datum = root_decomposition(build_algebra("gl", 1, 1))
        assert len(datum.even_roots) == 0
        assert len(datum.odd_roots) == 2

    def test_roots_plus_cartan_fill_the_algebra(self):
        for family, m, n in (("gl", 1, 1), ("sl", 1, 2), ("osp", 1, 2)):
            algebra = build_algebra(family, m, n)
            datum = root_decomposition(algebra)
            assert len(datum.roots) + len(datum.cartan) == algebra.dim

    def test_root_vectors_are_simultaneous_eigenvectors(self):
        algebra = build_algebra("osp", 1, 2)
        datum = root_decomposition(algebra)
        for r in datum.roots:
            for k, h in enumerate(datum.cartan):
                expected = r.vector.scaled(r.coords[k])
                assert (superbracket(h, r.vector) + expected.scaled(-1)).is_zero()

    def test_roots_come_in_opposite_pairs(self):
        datum = root_decomposition(build_algebra("osp", 1, 2))
        coords = {r.coords for r in datum.roots}
        for c in coords:
            assert tuple(-x for x in c) in coords

    def test_rational_multiplicity_failure_detected(self):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            algebra = build_algebra("osp", 2, 1)
        with pytest.raises(RootDecompositionError):
            root_decomposition(algebra)

    def test_osp_labels(self):
        datum = root_decomposition(build_algebra("osp", 1, 2))
        labels = {r.label for r in datum.roots}
        assert labels == {
            "d1", "-d1", "d2", "-d2",
            "2d1", "-2d1", "2d2", "-2d2",
            "d1-d2", "-d1+d2", "d1+d2", "-d1-d2",
        }


class TestBorelChoice:
    def test_positive_system_sizes(self):
        datum = root_decomposition(build_algebra("osp", 1, 2))
        borel = choose_borel(datum, (2, 1))
        even_pos = [r for r in borel.positive_roots if r.parity == 0]
        odd_pos = [r for r in borel.positive_roots if r.parity == 1]
        assert len(even_pos) == 4
        assert len(odd_pos) == 2

    def test_simple_roots(self):
        datum = root_decomposition(build_algebra("osp", 1, 2))
        borel = choose_borel(datum, (2, 1))
        assert {r.label for r in borel.simple_roots} == {"d1-d2", "d2"}

    def test_negating_the_functional_swaps_positives(self):
        datum = root_decomposition(build_algebra("osp", 1, 2))
        plus = choose_borel(datum, (2, 1))
        minus = choose_borel(datum, (-2, -1))
        assert {r.coords for r in plus.positive_roots} == {
            r.coords for r in minus.negative_roots
        }

    def test_degenerate_functional_rejected(self):
        datum = root_decomposition(build_algebra("osp", 1, 2))
        with pytest.raises(DegenerateFunctionalError):
            choose_borel(datum, (1, 1))  # vanishes on d1-d2


class TestNegativeBasis:
    def test_default_order_rank_two_orthosymplectic(self):
        context = build_context("osp", 1, 2, (2, 1))
        labels = [e.positive_label for e in context.basis.elements]
        assert labels == ["d2", "d1-d2", "2d2", "d1", "d1+d2", "2d1"]
        parities = [e.parity for e in context.basis.elements]
        assert parities == [1, 0, 0, 1, 0, 0]
        assert context.basis.n == 4
        assert context.basis.q == 2

    def test_default_order_special_linear_superalgebra(self):
        context = build_context("sl", 1, 2, (3, -1))
        labels = [e.positive_label for e in context.basis.elements]
        assert labels == ["e1-e2", "e2-e3", "e1-e3"]
        parities = [e.parity for e in context.basis.elements]
        assert parities == [1, 0, 1]

    def test_variable_labels(self):
        context = build_context("osp", 1, 2, (2, 1))
        assert context.basis.labels() == {
            "x1": "d1-d2",
            "x2": "2d2",
            "x3": "d1+d2",
            "x4": "2d1",
            "xi1": "d2",
            "xi2": "d1",
        }

    def test_permutation_reorders_default(self):
        context = build_context("osp", 1, 2, (2, 1))
        perm = (5, 4, 3, 2, 1, 0)
        basis = negative_basis(context.borel, perm)
        assert [e.positive_label for e in basis.elements] == [
            "2d1", "d1+d2", "d1", "2d2", "d1-d2", "d2",
        ]

    def test_elements_are_negative_root_vectors(self):
        context = build_context("osp", 1, 2, (2, 1))
        pos_coords = {r.coords for r in context.borel.positive_roots}
        for e in context.basis.elements:
            assert tuple(-c for c in e.coords) in pos_coords

    def test_labeled_exponent_rendering(self):
        from superflag.superpoly import MultiExponent

        context = build_context("osp", 1, 2, (2, 1))
        exp = MultiExponent((1, 0), (0, 0, 0, 2))
        assert context.basis.exponent_as_labeled(exp) == frozenset(
            {("d2", 1), ("2d1", 2)}
        )

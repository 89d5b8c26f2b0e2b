"""Structure constants, presentation ring, graded kernel, lifts, t-family."""

import pytest

from superflag.degeneration import (
    BOTTOM,
    GradedRelation,
    LevelTower,
    LiftError,
    SRing,
    evaluate_in_tower,
    family_ideal,
    find_weight_vector,
    gr_ideal,
    hilbert_check,
    lift_relations,
    structure_constants,
)
from superflag.linalg import Rat
from superflag.superpoly import MultiExponent, SuperPolynomial, koszul_count


def me(odd, even):
    return MultiExponent(tuple(odd), tuple(even))


@pytest.fixture(scope="module")
def sl2_tower(sl2_context):
    from superflag.modules import build_realization

    real = build_realization(sl2_context, [("natural", 0), ("natural", 0)])
    return LevelTower(sl2_context.basis, real)


@pytest.fixture(scope="module")
def sl12_tower(sl12_context, sl12_real):
    return LevelTower(sl12_context.basis, sl12_real)


class TestStructureConstants:
    @pytest.mark.parametrize("tower_name", ["osp_tower", "sl12_tower"])
    def test_leading_coefficient_law(self, tower_name, request):
        from superflag.degeneration import sort_key_component

        tower = request.getfixturevalue(tower_name)
        table = structure_constants(tower, 1, 1)
        es1 = tower.essential(1).monomials
        checked = 0
        for e1 in es1:
            for e2 in es1:
                combined = e1.combine(e2)
                if combined is None:
                    continue
                expected_sign = (
                    -1 if koszul_count(e2.odd, e1.odd) % 2 else 1
                )
                product = table.product(e1, e2)
                # the coefficient on the sum is the reordering sign ...
                assert product[combined] == Rat(expected_sign), (
                    str(e1), str(e2),
                )
                # ... and every other contribution is strictly larger
                lead_key = sort_key_component((combined, 2))
                for u in product:
                    if u != combined:
                        assert sort_key_component((u, 2)) > lead_key
                checked += 1
        assert checked > 0

    def test_products_are_supercommutative(self, osp_tower):
        table = structure_constants(osp_tower, 1, 1)
        es1 = osp_tower.essential(1).monomials
        for e1 in es1:
            for e2 in es1:
                sign = -1 if (e1.parity and e2.parity) else 1
                lhs = table.product(e1, e2)
                rhs = {
                    u: sign * c for u, c in table.product(e2, e1).items()
                }
                assert lhs == rhs

    def test_odd_collisions_vanish(self, osp_tower):
        table = structure_constants(osp_tower, 1, 1)
        odd_gen = next(
            e for e in osp_tower.essential(1).monomials if e.parity
        )
        assert table.product(odd_gen, odd_gen) == {}


class TestPresentationRing:
    def test_orthosymplectic_generator_split(self, osp_tower):
        ring = SRing(osp_tower.essential(1))
        assert (ring.nS, ring.qS) == (4, 1)
        names = ring.generator_names()
        assert names["x1"] == me((0, 0), (0, 0, 0, 0))
        assert names["xi1"].parity == 1

    def test_monomial_counts(self, sl2_tower):
        ring = SRing(sl2_tower.essential(1))
        assert len(ring.monomials_of_degree(1)) == 3
        assert len(ring.monomials_of_degree(2)) == 6

    def test_gamma_adds_module_exponents_with_level(self, sl2_tower):
        ring = SRing(sl2_tower.essential(1))
        # x2 * x3 -> module exponent (1) + (2) = (3) at level 2
        sexp = me((), (0, 1, 1))
        comp, sign = ring.gamma_and_sign(sexp)
        assert comp == (me((), (3,)), 2)
        assert sign == 1

    def test_gamma_detects_bottom(self, sl12_tower):
        ring = SRing(sl12_tower.essential(1))
        if ring.qS < 2:
            pytest.skip("ring has fewer than two odd generators")
        # two odd ring generators sharing a module odd coordinate
        sexp = MultiExponent((1, 1), (0,) * ring.nS)
        comp, sign = ring.gamma_and_sign(sexp)
        if comp is BOTTOM:
            assert sign == 0
        else:
            assert sign in (1, -1)

    def test_factors_round_trip_through_exponent_of_chain(self, osp_tower):
        ring = SRing(osp_tower.essential(1))
        sexp = me((1,), (1, 0, 1, 0))
        factors = ring.factors(sexp)
        assert ring.exponent_of_chain(factors) == sexp


class TestGradedKernel:
    def test_empty_for_multiplicity_free_towers(self, osp_tower, sl12_tower):
        for tower in (osp_tower, sl12_tower):
            ring = SRing(tower.essential(1))
            assert gr_ideal(ring, 2) == []

    def test_quadric_for_squared_classical_module(self, sl2_tower):
        ring = SRing(sl2_tower.essential(1))
        graded = gr_ideal(ring, 2)
        assert len(graded) == 1
        rel = graded[0]
        assert rel.degree == 2
        assert rel.component == (me((), (2,)), 2)
        assert rel.lead == SuperPolynomial.parse("x1*x3 - x2^2", 3, 0)
        assert rel.corrections == []

    def test_rank_three_kernel_size(self, sl3_tower):
        ring = SRing(sl3_tower.essential(1))
        graded = gr_ideal(ring, 2)
        assert len(graded) == 9

    def test_graded_leads_vanish_on_their_component(self, sl3_tower):
        ring = SRing(sl3_tower.essential(1))
        for rel in gr_ideal(ring, 2):
            residual = evaluate_in_tower(sl3_tower, ring, rel.lead)
            assert rel.component not in residual


class TestLifting:
    def test_lifted_relations_evaluate_to_zero(self, sl3_tower):
        ring = SRing(sl3_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), sl3_tower, ring)
        assert len(lifted) == 9
        for rel in lifted:
            assert evaluate_in_tower(sl3_tower, ring, rel.total()) == {}

    def test_frozen_correction_pattern(self, sl3_tower):
        ring = SRing(sl3_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), sl3_tower, ring)
        with_corrections = [rel for rel in lifted if rel.corrections]
        assert len(with_corrections) == 5
        by_lead = {rel.lead.to_text(): rel for rel in lifted}
        rel = by_lead["x1*x5 - x2^2"]
        assert len(rel.corrections) == 1
        (comp, level), poly = rel.corrections[0]
        assert (comp, level) == (me((), (1, 1, 1)), 2)
        assert poly == SuperPolynomial.parse("x2*x8", 8, 0)
        rel = by_lead["x3*x7 - x4*x6"]
        assert rel.corrections[0][0] == (me((), (2, 2, 0)), 2)
        assert rel.corrections[0][1] == SuperPolynomial.parse("-x8^2", 8, 0)
        assert by_lead["x5*x8 - x6*x7"].corrections == []

    def test_correction_components_exceed_leads(self, sl3_tower):
        from superflag.degeneration import sort_key_component

        ring = SRing(sl3_tower.essential(1))
        for rel in lift_relations(gr_ideal(ring, 2), sl3_tower, ring):
            for (comp, _poly) in rel.corrections:
                assert sort_key_component(comp) > sort_key_component(
                    rel.component
                )


class TestWeightVector:
    def test_rank_three_frozen_vector(self, sl3_tower):
        ring = SRing(sl3_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), sl3_tower, ring)
        assert find_weight_vector(lifted) == (0, 0, -1)

    def test_no_corrections_gives_zero_vector(self, sl2_tower):
        ring = SRing(sl2_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), sl2_tower, ring)
        assert find_weight_vector(lifted) == (0,)

    def test_infeasible_corrections_return_none(self):
        zero = SuperPolynomial.zero(2, 0)
        a = (me((), (1, 0)), 2)
        b = (me((), (0, 1)), 2)
        rels = [
            GradedRelation(degree=2, component=a, lead=zero,
                           corrections=[(b, zero)]),
            GradedRelation(degree=2, component=b, lead=zero,
                           corrections=[(a, zero)]),
        ]
        assert find_weight_vector(rels) is None


class TestFamily:
    def test_classical_quadric_family(self, sl2_tower):
        ring = SRing(sl2_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), sl2_tower, ring)
        family = family_ideal(lifted, (0,), sl2_tower, ring, 2)
        assert len(family.generators) == 1
        assert len(family.exchange) == 0
        gen = family.generators[0]
        assert set(gen.pieces) == {0}
        conic = SuperPolynomial.parse("x1*x3 - x2^2", 3, 0)
        assert gen.specialize(Rat(0)) == conic
        assert gen.specialize(Rat(7)) == conic

    def test_rank_three_family_structure(self, sl3_tower):
        ring = SRing(sl3_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), sl3_tower, ring)
        weight = find_weight_vector(lifted)
        family = family_ideal(lifted, weight, sl3_tower, ring, 2)
        assert len(family.generators) == 9
        assert len(family.exchange) == 0
        for gen in family.generators:
            for power in gen.pieces:
                assert power == 0 or power >= 1
        # t = 1 recovers the exact lifted relations
        at_one = {p.to_text() for p in family.all_specialized(Rat(1))}
        assert at_one == {rel.total().to_text() for rel in lifted}
        # t = 0 recovers the pure graded leads
        at_zero = {p.to_text() for p in family.all_specialized(Rat(0))}
        assert at_zero == {rel.lead.to_text() for rel in lifted}

    def test_zero_weight_with_corrections_rejected(self, sl3_tower):
        ring = SRing(sl3_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), sl3_tower, ring)
        with pytest.raises(LiftError, match="non-positive power"):
            family_ideal(lifted, (0, 0, 0), sl3_tower, ring, 2)


class TestHilbert:
    def test_classical_quadric_dimensions(self, sl2_tower):
        ring = SRing(sl2_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), sl2_tower, ring)
        family = family_ideal(lifted, (0,), sl2_tower, ring, 2)
        report = hilbert_check(family, sl2_tower, [0, 1, 3], 3)
        assert report.passed
        assert report.expected == {1: 3, 2: 5, 3: 7}

    def test_rank_three_fibers_agree(self, sl3_tower):
        ring = SRing(sl3_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), sl3_tower, ring)
        weight = find_weight_vector(lifted)
        family = family_ideal(lifted, weight, sl3_tower, ring, 2)
        report = hilbert_check(family, sl3_tower, [0, 1, 2, 5], 2)
        assert report.passed
        assert report.expected == {1: 8, 2: 27}
        for a in report.samples:
            assert report.table[(a, 2)] == 27

    def test_orthosymplectic_fibers(self, osp_tower):
        ring = SRing(osp_tower.essential(1))
        lifted = lift_relations(gr_ideal(ring, 2), osp_tower, ring)
        family = family_ideal(
            lifted, (0,) * 6, osp_tower, ring, 2
        )
        report = hilbert_check(family, osp_tower, [0, 1], 2)
        assert report.passed
        assert report.expected == {1: 5, 2: 14}

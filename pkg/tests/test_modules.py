"""Representations, highest-weight realizations, cyclic spans, expansions."""

import pytest

from superflag.linalg import Rat, SparseVector
from superflag.liesuper import negative_basis
from superflag.modules import (
    NotConvergedError,
    act_via_expansion,
    build_realization,
    cartan_expand,
    cyclic_span,
    dual_natural,
    exponent_weight,
    flip_parities,
    natural,
    pbw_act,
    single_block_realization,
    tensor,
    tensor_power,
    tensor_representations,
)
from superflag.superpoly import MonomialOrder, MultiExponent


def exp_of(basis, **labeled):
    """Build a MultiExponent from positive-root labels, e.g. exp_of(b, d1=1)."""
    labels = basis.labels()
    odd = [0] * basis.q
    even = [0] * basis.n
    for name, mult in labeled.items():
        target = name.replace("_", "-").replace("p", "+")
        for var, lab in labels.items():
            if lab == target:
                if var.startswith("xi"):
                    odd[int(var[2:]) - 1] = mult
                else:
                    even[int(var[1:]) - 1] = mult
                break
        else:
            raise KeyError(target)
    return MultiExponent(tuple(odd), tuple(even))


class TestRepresentations:
    @pytest.mark.parametrize("maker", [natural, dual_natural])
    def test_axioms(self, maker, gl11_context, sl12_context, osp_context):
        for context in (gl11_context, sl12_context, osp_context):
            rep = maker(context.algebra)
            rep.validate()

    def test_flip_keeps_weights_and_flips_parities(self, osp_context):
        rep = natural(osp_context.algebra)
        flipped = flip_parities(rep)
        flipped.validate()
        assert flipped.weights == rep.weights
        assert tuple(flipped.parities) == tuple(1 - p for p in rep.parities)

    def test_dual_weights_are_negated(self, sl12_context):
        rep = natural(sl12_context.algebra)
        dual = dual_natural(sl12_context.algebra)
        assert sorted(dual.weights) == sorted(
            tuple(-c for c in w) for w in rep.weights
        )

    def test_tensor_axioms_and_weight_additivity(self, gl11_context):
        rep = natural(gl11_context.algebra)
        square = tensor_representations(rep, rep)
        square.validate()
        d = rep.dim
        for i1 in range(d):
            for i2 in range(d):
                w = square.weights[i1 * d + i2]
                assert w == tuple(
                    a + b for a, b in zip(rep.weights[i1], rep.weights[i2])
                )
                assert square.parities[i1 * d + i2] == (
                    rep.parities[i1] + rep.parities[i2]
                ) % 2


class TestRealizations:
    def test_flip_natural_highest_weight(self, osp_context, osp_real):
        assert osp_real.level == 1
        assert osp_real.rep.parities[osp_real.hw_index] == 0
        assert osp_real.weight == (1, 0)

    def test_odd_candidate_rejected(self, osp_context):
        # the natural (unflipped) block has odd vectors at the sp indices
        with pytest.raises(ValueError, match="even"):
            single_block_realization(osp_context, "natural", 1)

    def test_non_highest_candidate_rejected(self, sl3_context):
        with pytest.raises(ValueError, match="annihilated"):
            single_block_realization(sl3_context, "natural", 1)

    def test_tensor_adds_weights_and_levels(self, osp_real):
        square = tensor(osp_real, osp_real)
        assert square.weight == (2, 0)
        assert square.level == 2
        assert square.hw_index == osp_real.hw_index * osp_real.rep.dim + (
            osp_real.hw_index
        )
        cube = tensor_power(osp_real, 3)
        assert cube.weight == (3, 0)
        assert cube.level == 3

    def test_composite_base_realization_stays_level_one(self, sl3_adjoint):
        assert sl3_adjoint.level == 1
        assert sl3_adjoint.weight == (1, 1)


class TestPbwAct:
    def test_zero_exponent_returns_highest_weight_vector(
        self, osp_context, osp_real
    ):
        v = pbw_act(osp_real, osp_context.basis, MultiExponent.zero(4, 2))
        assert v == osp_real.hw_vector

    def test_single_lowering_in_smallest_superalgebra(
        self, gl11_context, gl11_real
    ):
        e = MultiExponent((1,), ())
        v = pbw_act(gl11_real, gl11_context.basis, e)
        assert list(sorted(v.entries)) == [1]

    def test_divided_power_normalization(self, osp_context, osp_real):
        square = tensor(osp_real, osp_real)
        e = exp_of(osp_context.basis, **{"2d1": 2})
        plain = pbw_act(square, osp_context.basis, e, divided=False)
        divided = pbw_act(square, osp_context.basis, e, divided=True)
        assert divided == plain.scaled(Rat(1, 2))

    def test_result_lies_in_predicted_weight_space(self, osp_context, osp_real):
        basis = osp_context.basis
        for e in (
            exp_of(basis, d1=1),
            exp_of(basis, **{"d1+d2": 1}),
            exp_of(basis, **{"2d1": 1, "d1": 1}),
        ):
            v = pbw_act(osp_real, basis, e)
            target = exponent_weight(basis, osp_real.weight, e)
            for idx in v.entries:
                assert osp_real.rep.weights[idx] == target

    def test_odd_square_is_zero(self, gl11_context, gl11_real):
        # an odd lowering applied twice kills every vector
        basis = gl11_context.basis
        e = MultiExponent((1,), ())
        op = gl11_real.rep.element_action(
            basis.elements[0].algebra_coords
        )
        v = pbw_act(gl11_real, basis, e)
        assert gl11_real.rep.apply(op, v).is_zero()


class TestCyclicSpan:
    def test_smallest_superalgebra_dimension_two(self, gl11_context, gl11_real):
        module = cyclic_span(gl11_real, gl11_context.basis)
        assert module.dimension == 2
        assert module.essential_exponents() == [
            MultiExponent((0,), ()),
            MultiExponent((1,), ()),
        ]

    def test_special_linear_natural_dimension_three(
        self, sl12_context, sl12_real
    ):
        module = cyclic_span(sl12_real, sl12_context.basis)
        assert module.dimension == 3

    def test_orthosymplectic_fundamental_frozen_set(
        self, osp_context, osp_real
    ):
        basis = osp_context.basis
        module = cyclic_span(osp_real, basis)
        assert module.dimension == 5
        assert module.stabilization_degree == 1
        expected = {
            MultiExponent.zero(4, 2),
            exp_of(basis, d1=1),
            exp_of(basis, **{"2d1": 1}),
            exp_of(basis, **{"d1+d2": 1}),
            exp_of(basis, **{"d1-d2": 1}),
        }
        assert set(module.essential_exponents()) == expected

    def test_level_two_and_three_dimensions(self, osp_context, osp_real):
        basis = osp_context.basis
        assert cyclic_span(tensor_power(osp_real, 2), basis).dimension == 14
        assert cyclic_span(tensor_power(osp_real, 3), basis).dimension == 30

    def test_not_converged_when_capped(self, osp_context, osp_real):
        with pytest.raises(NotConvergedError):
            cyclic_span(osp_real, osp_context.basis, degree_cap=0)

    def test_dimension_is_basis_order_independent(self, osp_context, osp_real):
        basis = negative_basis(osp_context.borel, (5, 4, 3, 2, 1, 0))
        module = cyclic_span(osp_real, basis)
        assert module.dimension == 5

    def test_revlex_scan_same_dimension(self, osp_context, osp_real):
        module = cyclic_span(
            osp_real, osp_context.basis, order=MonomialOrder("graded-revlex")
        )
        assert module.dimension == 5

    def test_expand_essential_is_identity(self, osp_context, osp_real):
        module = cyclic_span(osp_real, osp_context.basis)
        for e in module.essential_exponents():
            assert module.expand(e) == {e: Rat(1)}

    def test_expand_nonessential_monomial(self, osp_context, osp_real):
        basis = osp_context.basis
        square = tensor_power(osp_real, 2)
        module = cyclic_span(square, basis)
        ess = set(module.essential_exponents())
        # pick a degree-2 exponent outside the essential set with a
        # nonzero image: its expansion must reproduce pbw_act exactly
        checked = 0
        from superflag.superpoly import enumerate_monomials

        for e in enumerate_monomials(MonomialOrder("graded-lex"), 2, 4, 2):
            if e.degree != 2 or e in ess:
                continue
            vec = pbw_act(square, basis, e)
            if vec.is_zero():
                continue
            combo = module.expand(e)
            recon = SparseVector()
            for u, c in combo.items():
                recon = recon.add_scaled(
                    pbw_act(square, basis, u), c
                )
            assert recon == vec
            checked += 1
        assert checked > 0


class TestCartanExpand:
    def test_even_square_binomials(self):
        e = MultiExponent((), (2,))
        undivided = dict(cartan_expand(e, divided=False))
        assert undivided == {
            (MultiExponent((), (0,)), MultiExponent((), (2,))): Rat(1),
            (MultiExponent((), (1,)), MultiExponent((), (1,))): Rat(2),
            (MultiExponent((), (2,)), MultiExponent((), (0,))): Rat(1),
        }
        divided = dict(cartan_expand(e, divided=True))
        assert set(divided.values()) == {Rat(1)}

    def test_two_odd_bits_sign_pattern(self):
        e = MultiExponent((1, 1), ())
        table = dict(cartan_expand(e))
        z = ()
        def me(bits):
            return MultiExponent(bits, z)
        assert table[(me((1, 1)), me((0, 0)))] == Rat(1)
        assert table[(me((0, 0)), me((1, 1)))] == Rat(1)
        assert table[(me((0, 1)), me((1, 0)))] == Rat(1)
        assert table[(me((1, 0)), me((0, 1)))] == Rat(-1)

    @pytest.mark.parametrize("divided", [False, True])
    def test_tensor_action_matches_direct_application(
        self, divided, gl11_context, gl11_real, osp_context, osp_real
    ):
        from superflag.superpoly import enumerate_monomials

        for context, real in (
            (gl11_context, gl11_real),
            (osp_context, osp_real),
        ):
            basis = context.basis
            square = tensor(real, real)
            for e in enumerate_monomials(
                MonomialOrder("graded-lex"), 2, basis.n, basis.q
            ):
                via = act_via_expansion(real, real, basis, e, divided=divided)
                direct = pbw_act(square, basis, e, divided=divided)
                assert via == direct, str(e)

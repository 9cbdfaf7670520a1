"""Derived algebras and hypothesis checks built on top of the core model."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as hs

from supertrial.constructions import (
    averaging_check,
    commutator_construct,
    conjugate_automorphism,
    direct_sum,
    graph_subalgebra_check,
    rota_baxter_check,
    rota_baxter_induce,
    sum_product_construct,
    swap_construct,
    total_product_construct,
    yau_twist,
)
from supertrial.core import (
    LinearMap,
    SuperalgebraSpec,
    TrialgebraSpec,
    check_bihom,
    identity_map,
)
from supertrial.errors import (
    CommutationError,
    InputError,
    ModeError,
    NotAutomorphismError,
    ParityError,
    SingularMapError,
)
from supertrial.fixtures import FIXTURE_NAMES, builtin
from supertrial.linalg import Matrix, invert, rank

F = Fraction

DUAL = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}
ID2 = [[1, 0], [0, 1]]


def square_map(spec, rows):
    return LinearMap.square(spec.basis, Matrix.from_rows(rows))


def small_invertible_2x2():
    return hs.lists(hs.integers(-2, 2), min_size=4, max_size=4).map(
        lambda e: Matrix(2, 2, tuple(F(x) for x in e))
    )


class TestYauTwist:
    def test_identity_map_is_a_fixed_point(self):
        spec = builtin("dual2-twisted")
        res = yau_twist(spec, identity_map(spec.basis))
        assert res.twisted == spec
        assert res.constants_match
        assert res.report.passed

    def test_diagonal_twist_rescales_constants(self):
        spec = builtin("dual2")
        res = yau_twist(spec, square_map(spec, [[1, 0], [0, 2]]))
        # l(l^-1(e1) o l^-1(e2)) = l(e1 o e2/2) = e2
        assert dict(res.twisted.left.items()) == {
            (0, 0, 0): F(1),
            (0, 1, 1): F(1),
            (1, 0, 1): F(1),
        }
        assert res.constants_match
        assert res.twisted.name == "dual2"

    def test_shear_twist_worked_example(self):
        spec = builtin("dual2")
        res = yau_twist(spec, square_map(spec, [[1, 1], [0, 1]]))
        # only e2 o' e2 changes: l((e2 - e1)^2) = l(e1 - 2 e2) = -e1 - 2 e2
        expected = {
            (0, 0, 0): F(1),
            (0, 1, 1): F(1),
            (1, 0, 1): F(1),
            (1, 1, 0): F(-1),
            (1, 1, 1): F(-2),
        }
        assert dict(res.twisted.left.items()) == expected
        assert dict(res.twisted.perp.items()) == expected
        assert res.constants_match
        assert res.report.passed

    def test_structure_maps_are_conjugated(self):
        spec = builtin("dual2-twisted")
        l = square_map(spec, [[1, 1], [0, 1]])
        res = yau_twist(spec, l)
        linv = invert(l.matrix)
        assert res.conjugated_gamma.matrix == l.matrix @ spec.gamma.matrix @ linv
        assert res.conjugated_xi.matrix == l.matrix @ spec.xi.matrix @ linv
        assert res.twisted.gamma == res.conjugated_gamma

    def test_singular_map_rejected(self):
        spec = builtin("dual2")
        with pytest.raises(SingularMapError):
            yau_twist(spec, square_map(spec, [[1, 1], [1, 1]]))

    def test_odd_map_rejected(self):
        spec = builtin("grassmann2")
        with pytest.raises(ParityError):
            yau_twist(spec, square_map(spec, [[0, 1], [1, 0]]))

    def test_wrong_shape_rejected(self):
        spec = builtin("dual2")
        wrong = LinearMap.square(builtin("idem1").basis, Matrix.identity(1))
        with pytest.raises(InputError):
            yau_twist(spec, wrong)

    def test_needs_xi(self):
        spec = TrialgebraSpec.build("h", [0], {}, {}, {}, [[1]])
        with pytest.raises(ModeError):
            yau_twist(spec, identity_map(spec.basis))

    @settings(max_examples=40)
    @given(small_invertible_2x2())
    def test_roundtrip_restores_exactly(self, m):
        assume(rank(m) == 2)
        spec = builtin("dual2-twisted")
        l = LinearMap.square(spec.basis, m)
        res = yau_twist(spec, l)
        assert res.report.passed
        assert res.constants_match
        back = yau_twist(res.twisted, LinearMap.square(spec.basis, invert(m)))
        assert back.twisted == spec


class TestConjugateAutomorphism:
    def test_diagonal_automorphism_survives_conjugation(self):
        spec = builtin("dual2")
        l = square_map(spec, [[1, 1], [0, 1]])
        phi = square_map(spec, [[1, 0], [0, 3]])
        assert conjugate_automorphism(spec, l, phi).passed

    def test_non_morphism_rejected(self):
        spec = builtin("dual2")
        phi = square_map(spec, [[2, 0], [0, 2]])
        with pytest.raises(NotAutomorphismError):
            conjugate_automorphism(spec, identity_map(spec.basis), phi)

    def test_singular_morphism_rejected(self):
        spec = builtin("dual2")
        phi = square_map(spec, [[0, 0], [0, 0]])
        with pytest.raises(NotAutomorphismError):
            conjugate_automorphism(spec, identity_map(spec.basis), phi)


class TestDirectSum:
    def test_blocks_do_not_interact(self):
        total = direct_sum(builtin("zero2"), builtin("idem1"))
        assert total.dimension == 3
        assert total.basis.parities == (0, 1, 0)
        assert total.name == "dsum(zero2,idem1)"
        assert dict(total.left.items()) == {(2, 2, 2): F(1)}
        assert total.gamma.matrix == Matrix.identity(3)
        assert check_bihom(total).passed

    def test_summands_keep_their_constants(self):
        total = direct_sum(builtin("dual2"), builtin("dual2-twisted"))
        assert total.left.coefficient(0, 1, 1) == 1
        assert total.left.coefficient(2, 3, 3) == 2
        assert total.left.coefficient(0, 2, 2) == 0
        assert total.xi.matrix == Matrix.diagonal([1, 1, 1, 2])
        assert check_bihom(total).passed

    def test_mode_must_agree(self):
        with_xi = builtin("dual2")
        without = TrialgebraSpec.build("h", [0], {}, {}, {}, [[1]])
        with pytest.raises(InputError):
            direct_sum(with_xi, without)

    def test_two_hom_mode_summands(self):
        a = TrialgebraSpec.build("h1", [0], {(0, 0, 0): 1}, {(0, 0, 0): 1}, {(0, 0, 0): 1}, [[1]])
        total = direct_sum(a, a)
        assert total.xi is None
        assert total.dimension == 2


class TestGraphCheck:
    def test_morphism_graph_is_closed(self):
        spec = builtin("dual2")
        res = graph_subalgebra_check(spec, spec, identity_map(spec.basis))
        assert res.is_subalgebra and res.is_morphism
        assert res.morphism_report.passed
        assert res.sum.dimension == 4

    def test_non_morphism_graph_is_open(self):
        spec = builtin("dual2")
        res = graph_subalgebra_check(spec, spec, square_map(spec, [[2, 0], [0, 2]]))
        assert not res.is_subalgebra
        assert not res.is_morphism

    def test_rectangular_graph(self):
        src, dst = builtin("dual2"), builtin("idem1")
        pi = LinearMap.between(src.basis, dst.basis, Matrix.from_rows([[1, 0]]))
        res = graph_subalgebra_check(src, dst, pi)
        assert res.is_subalgebra and res.is_morphism

    def test_shape_guard(self):
        src, dst = builtin("dual2"), builtin("idem1")
        with pytest.raises(InputError):
            graph_subalgebra_check(src, dst, identity_map(src.basis))

    @settings(max_examples=60)
    @given(small_invertible_2x2())
    def test_closure_iff_morphism(self, m):
        spec = builtin("dual2")
        res = graph_subalgebra_check(spec, spec, LinearMap.square(spec.basis, m))
        assert res.is_subalgebra == res.is_morphism


class TestRotaBaxterCheck:
    @pytest.mark.parametrize("c", [0, 1, 2, -1])
    def test_negated_scalar_operator_has_matching_weight(self, c):
        spec = builtin("idem1")
        lam = square_map(spec, [[-c]])
        assert rota_baxter_check(spec, lam, F(c)).passed

    def test_identity_fails_weight_one_everywhere(self):
        spec = builtin("idem1")
        report = rota_baxter_check(spec, identity_map(spec.basis), F(1))
        assert {v.axiom_id for v in report.violations} == {"rb-left", "rb-right", "rb-perp"}
        for v in report.violations:
            assert v.indices == (0, 0)
            assert (v.lhs, v.rhs) == ((F(1),), (F(3),))

    def test_zero_operator_works_for_any_weight(self):
        spec = builtin("dual2")
        lam = square_map(spec, [[0, 0], [0, 0]])
        assert rota_baxter_check(spec, lam, "7/3").passed

    def test_nilpotent_annihilator_operator(self):
        spec = builtin("dual2")
        lam = square_map(spec, [[0, 0], [0, -1]])
        assert rota_baxter_check(spec, lam, F(1)).passed

    def test_literal_mode_crosses_products(self):
        spec = TrialgebraSpec.build("p", [0], {}, {}, {(0, 0, 0): 1}, [[1]], [[1]])
        report = rota_baxter_check(spec, identity_map(spec.basis), F(1), literal=True)
        assert {v.axiom_id for v in report.violations} == {"rb-literal-perp"}

    def test_literal_ids_on_full_failure(self):
        spec = builtin("idem1")
        report = rota_baxter_check(spec, identity_map(spec.basis), F(1), literal=True)
        assert {v.axiom_id for v in report.violations} == {
            "rb-literal-left",
            "rb-literal-right",
            "rb-literal-perp",
        }

    def test_non_commuting_operator_rejected(self):
        spec = builtin("dual2-twisted")
        lam = square_map(spec, [[0, 1], [0, 0]])
        with pytest.raises(CommutationError):
            rota_baxter_check(spec, lam, F(0))

    def test_odd_operator_rejected(self):
        spec = builtin("grassmann2")
        lam = square_map(spec, [[0, 1], [1, 0]])
        with pytest.raises(ParityError):
            rota_baxter_check(spec, lam, F(0))


class TestRotaBaxterInduce:
    def idem_super(self):
        return SuperalgebraSpec.build("idem1", [0], {(0, 0, 0): 1}, [[1]], [[1]])

    def test_zero_operator_induces_zero_products(self):
        alg = self.idem_super()
        lam = LinearMap.square(alg.basis, Matrix.zero(1, 1))
        res = rota_baxter_induce(alg, lam, F(0))
        assert res.spec.left.is_zero and res.spec.right.is_zero and res.spec.perp.is_zero
        assert res.spec.name == "rb(idem1)"
        assert res.report.passed

    def test_negated_identity_reports_honest_failure(self):
        """The split products satisfy most axioms but not the chained pair
        equalities; the construction returns them with the failing report."""
        alg = self.idem_super()
        lam = LinearMap.square(alg.basis, Matrix.from_rows([[-1]]))
        res = rota_baxter_induce(alg, lam, F(1))
        assert dict(res.spec.left.items()) == {(0, 0, 0): F(-1)}
        assert dict(res.spec.right.items()) == {(0, 0, 0): F(-1)}
        assert dict(res.spec.perp.items()) == {(0, 0, 0): F(1)}
        failing = [(v.axiom_id, v.indices) for v in res.report.violations]
        assert failing == [("ii-b", (0, 0, 0)), ("iv-b", (0, 0, 0))]
        for v in res.report.violations:
            assert (v.lhs, v.rhs) == ((F(1),), (F(-1),))

    def test_split_product_formulas(self):
        alg = SuperalgebraSpec.build("dual2s", [0, 0], DUAL, ID2, ID2)
        lam = LinearMap.square(alg.basis, Matrix.diagonal([0, -1]))
        res = rota_baxter_induce(alg, lam, F(1))
        assert dict(res.spec.left.items()) == {(0, 1, 1): F(-1)}
        assert dict(res.spec.right.items()) == {(1, 0, 1): F(-1)}
        assert dict(res.spec.perp.items()) == {k: F(v) for k, v in DUAL.items()}

    def test_non_rota_baxter_operator_rejected_with_pair(self):
        alg = self.idem_super()
        lam = LinearMap.square(alg.basis, Matrix.identity(1))
        with pytest.raises(InputError, match=r"\(0, 0\)"):
            rota_baxter_induce(alg, lam, F(1))

    def test_non_associative_input_rejected(self):
        alg = SuperalgebraSpec.build("bad", [0, 0], DUAL, ID2, [[1, 0], [0, 2]])
        lam = LinearMap.square(alg.basis, Matrix.zero(2, 2))
        with pytest.raises(InputError, match="associativity"):
            rota_baxter_induce(alg, lam, F(0))


class TestAveragingCheck:
    def test_identity_and_scalars_average(self):
        spec = builtin("dual2")
        assert averaging_check(spec, identity_map(spec.basis)).passed
        assert averaging_check(spec, square_map(spec, [[2, 0], [0, 2]])).passed

    def test_projection_fails_with_frozen_witness(self):
        spec = builtin("dual2")
        report = averaging_check(spec, square_map(spec, [[0, 0], [0, 1]]))
        v = next(x for x in report.violations if x.axiom_id == "avg-left-1")
        assert v.indices == (1, 0)
        assert (v.lhs, v.rhs) == ((F(0), F(1)), (F(0), F(0)))

    def test_annihilator_projection_averages(self):
        spec = builtin("dual2")
        report = averaging_check(spec, square_map(spec, [[0, 0], [0, 1]]))
        assert not report.passed
        nil = square_map(spec, [[0, 0], [1, 0]])
        assert averaging_check(spec, nil).passed

    def test_structure_map_commutation_reported_not_raised(self):
        spec = builtin("dual2-twisted")
        report = averaging_check(spec, square_map(spec, [[0, 1], [0, 0]]))
        ids = {v.axiom_id for v in report.violations}
        assert "avg-gamma-commute" in ids and "avg-xi-commute" in ids
        v = next(x for x in report.violations if x.axiom_id == "avg-gamma-commute")
        assert v.indices == (1,)
        assert (v.lhs, v.rhs) == ((F(2), F(0)), (F(1), F(0)))

    def test_multiplicative_twist_is_not_averaging(self):
        spec = builtin("dual2-twisted")
        report = averaging_check(spec, spec.gamma)
        assert any(v.axiom_id == "avg-left-1" and v.indices == (1, 0) for v in report.violations)


class TestSwap:
    def test_identity_maps_swap_to_same_spec(self):
        spec = builtin("dual2")
        res = swap_construct(spec)
        assert res.hypothesis_holds
        assert res.swapped == spec
        assert res.swapped_passes

    def test_non_involutive_maps_flagged_but_swapped_still_checked(self):
        spec = builtin("dual2-twisted")
        res = swap_construct(spec)
        assert not res.hypothesis_holds
        assert res.swapped_passes
        assert res.swapped.gamma == spec.xi and res.swapped.xi == spec.gamma

    def test_swap_can_break_the_axioms(self):
        spec = TrialgebraSpec(
            name="lop",
            basis=builtin("dual2").basis,
            left=builtin("dual2").left,
            right=builtin("dual2").right,
            perp=builtin("dual2").perp,
            gamma=square_map(builtin("dual2"), [[1, 0], [0, -1]]),
            xi=identity_map(builtin("dual2").basis),
        )
        res = swap_construct(spec)
        assert not res.hypothesis_holds
        assert not res.swapped_passes
        assert not res.report.passed


class TestSumProduct:
    def test_zero_products_stay_valid(self):
        res = sum_product_construct(builtin("zero2"))
        assert res.spec.name == "sum(zero2)"
        assert res.report.passed

    def test_doubling_breaks_pair_axioms(self):
        res = sum_product_construct(builtin("idem1"))
        assert dict(res.spec.right.items()) == {(0, 0, 0): F(2)}
        assert not res.report.passed
        v = next(x for x in res.report.violations if x.axiom_id == "ii-a")
        assert v.indices == (0, 0, 0)
        assert (v.lhs, v.rhs) == ((F(1),), (F(2),))

    def test_left_and_perp_untouched(self):
        res = sum_product_construct(builtin("dual2"))
        orig = builtin("dual2")
        assert res.spec.left == orig.left
        assert res.spec.perp == orig.perp


class TestCommutator:
    def test_zero_algebra_gives_zero_brackets(self):
        res = commutator_construct(builtin("zero2"))
        assert res.pair.star.is_zero and res.pair.bracket.is_zero
        assert res.leibniz.passed

    def test_commutative_inputs_collapse(self):
        res = commutator_construct(builtin("dual2"))
        assert res.pair.star.is_zero and res.pair.bracket.is_zero
        assert res.leibniz.passed
        assert res.pair.name == "comm(dual2)"

    def test_graded_sign_collapses_grassmann(self):
        res = commutator_construct(builtin("grassmann2"))
        assert res.pair.star.is_zero
        assert res.leibniz.passed

    def test_triangular_matrices_give_solvable_bracket(self):
        tri = {(0, 0, 0): 1, (0, 1, 1): 1}
        spec = TrialgebraSpec.build("tri2", [0, 0], tri, tri, tri, ID2, ID2)
        assert check_bihom(spec).passed
        res = commutator_construct(spec)
        assert dict(res.pair.star.items()) == {(0, 1, 1): F(1), (1, 0, 1): F(-1)}
        assert res.leibniz.passed

    def test_odd_square_contributes_twice(self):
        cliff = dict(DUAL)
        cliff[(1, 1, 0)] = 1
        spec = TrialgebraSpec.build("cliff2", [0, 1], cliff, cliff, cliff, ID2, ID2)
        assert check_bihom(spec).passed
        res = commutator_construct(spec)
        assert dict(res.pair.star.items()) == {(1, 1, 0): F(2)}
        assert res.leibniz.passed


class TestTotalProduct:
    def test_constants_triple(self):
        res = total_product_construct(builtin("dual2"))
        assert res.alg.name == "total(dual2)"
        assert dict(res.alg.star.items()) == {k: F(3 * v) for k, v in DUAL.items()}
        assert res.report.passed

    @pytest.mark.parametrize("name", FIXTURE_NAMES)
    def test_corpus_totals_stay_associative(self, name):
        assert total_product_construct(builtin(name)).report.passed

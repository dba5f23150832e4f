import random
from fractions import Fraction

import pytest

from gtqft import (
    GFrobeniusAlgebra,
    action_on_dual_basis_check,
    builtin,
    check_axioms,
    check_cocommutativity,
    check_frobenius_diagram,
    derive,
    frobenius_untwisted,
    group_algebra,
    load_algebra,
    save_algebra,
)
from gtqft.algebra import pairing_matrix
from gtqft.errors import CoproductMismatch, DegeneratePairing, SchemaError, ShapeError
from gtqft.exactlin import Matrix, Tensor3, basis_vector

F = Fraction

CRITERION_GROUPS = [
    ("cyclic", 1),
    ("cyclic", 2),
    ("cyclic", 3),
    ("cyclic", 4),
    ("cyclic", 5),
    ("cyclic", 6),
    ("dihedral", 3),
    ("dihedral", 4),
    ("symmetric", 3),
    ("quaternion8", None),
]


def trivial_algebra_doc(group_spec="cyclic:2"):
    return {
        "group": group_spec,
        "dims": {"e": 1},
        "product": [{"g": "e", "h": "e", "i": 0, "j": 0, "k": 0, "value": "1"}],
        "action": [
            {"k": "e", "g": "e", "i": 0, "j": 0, "value": "1"},
            {"k": "g1", "g": "e", "i": 0, "j": 0, "value": "1"},
        ],
        "unit": ["1"],
        "trace": ["1"],
    }


class TestLoad:
    def test_trivial_algebra_loads(self):
        # loading is shape-only validation; this document is well-formed
        a = load_algebra(trivial_algebra_doc())
        assert a.dims == (1, 0)
        assert a.unit == (F(1),) and a.trace == (F(1),)
        # concentrating everything at the identity over a larger group breaks
        # the torus law (the empty grade has no dual-basis sum on one side)
        report = check_axioms(a)
        assert not report.entry("torus-identity").passed

    def test_trivial_algebra_over_trivial_group(self):
        doc = trivial_algebra_doc("cyclic:1")
        doc["action"] = [{"k": "e", "g": "e", "i": 0, "j": 0, "value": "1"}]
        a = load_algebra(doc)
        assert check_axioms(a).passed

    def test_entry_outside_target_component(self):
        doc = trivial_algebra_doc()
        # a coefficient for g1*g1 would land in the e component, but the
        # (g1, g1) inputs themselves have dimension zero
        doc["product"].append({"g": "g1", "h": "g1", "i": 0, "j": 0, "k": 0, "value": "1"})
        with pytest.raises(ShapeError):
            load_algebra(doc)

    def test_target_index_out_of_range(self):
        doc = trivial_algebra_doc()
        doc["product"].append({"g": "e", "h": "e", "i": 0, "j": 0, "k": 1, "value": "1"})
        with pytest.raises(ShapeError, match="lands outside"):
            load_algebra(doc)

    @pytest.mark.parametrize(
        "mangle",
        [
            lambda d: d.update(group=7),
            lambda d: d.update(dims=[1]),
            lambda d: d["product"][0].update(value="1.5"),
            lambda d: d["product"][0].update(g="nope"),
            lambda d: d.update(unit=["1", "2"]),
            lambda d: d["product"].append(dict(d["product"][0])),
        ],
    )
    def test_schema_errors(self, mangle):
        doc = trivial_algebra_doc()
        mangle(doc)
        with pytest.raises(SchemaError):
            load_algebra(doc)

    def test_round_trip_s3(self, s3):
        a = group_algebra(s3)
        assert load_algebra(save_algebra(a)) == a

    def test_round_trip_rich(self, rich_s3):
        assert load_algebra(save_algebra(rich_s3)) == rich_s3


class TestGroupAlgebra:
    def test_trivial_group(self, trivial_group):
        a = group_algebra(trivial_group)
        assert a.dims == (1,)
        assert a.trace == (F(1),)

    def test_z2_pairing(self, z2):
        a = group_algebra(z2)
        assert a.dims == (1, 1)
        assert a.apply_product(1, 1, (F(1),), (F(1),)) == (F(1),)
        assert pairing_matrix(a, 1) == Matrix.identity(1)

    def test_s3_passes_checker(self, s3_algebra):
        report = check_axioms(s3_algebra)
        assert report.passed, report.failures()

    @pytest.mark.parametrize("name,param", CRITERION_GROUPS)
    def test_all_builtins_pass(self, name, param):
        assert check_axioms(group_algebra(builtin(name, param))).passed


class TestUntwisted:
    def test_ground_field(self):
        a = frobenius_untwisted(1, Tensor3.from_entries(1, 1, 1, {(0, 0, 0): 1}), (1,), (1,))
        assert check_axioms(a).passed

    def test_dual_numbers_pass(self, dual_numbers):
        assert check_axioms(dual_numbers).passed

    def test_dual_numbers_wrong_trace_degenerate(self):
        # trace (1, 0) pairs (1,1)->1, (1,x)->0, (x,x)->0: Gram matrix singular
        product = Tensor3.from_entries(2, 2, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})
        a = frobenius_untwisted(2, product, (1, 0), (1, 0))
        gram = pairing_matrix(a, 0)
        assert gram.det() == 0  # independent determinant computation
        report = check_axioms(a)
        assert not report.entry("pairing-nondegenerate").passed
        with pytest.raises(DegeneratePairing):
            derive(a)


def mutated_group_algebra(group, rng) -> GFrobeniusAlgebra:
    """Randomly perturb one product entry, action entry or unit coordinate."""
    a = group_algebra(group)
    n = group.order
    product = dict(a.product)
    action = dict(a.action)
    unit = a.unit
    kind = rng.choice(["product", "action", "unit"])
    new_value = F(rng.choice([0, 2, -1]))
    if kind == "product":
        g, h = rng.randrange(n), rng.randrange(n)
        product[(g, h)] = Tensor3.from_entries(1, 1, 1, {(0, 0, 0): new_value})
    elif kind == "action":
        k, g = rng.randrange(n), rng.randrange(n)
        action[(k, g)] = Matrix.from_rows([[new_value]])
    else:
        unit = (new_value,)
    return GFrobeniusAlgebra(group, a.dims, product, action, unit, a.trace)


def algebra_fails_somewhere(a) -> bool:
    report = check_axioms(a)
    if not report.passed:
        witnessed = [e for e in report.failures() if e.witness is not None]
        assert witnessed, "failures must carry witnesses"
        return True
    try:
        d = derive(a)
    except (DegeneratePairing, CoproductMismatch):
        return True
    return not (
        check_frobenius_diagram(a, d).passed and check_cocommutativity(a, d).passed
    )


class TestCheckAxioms:
    def test_d4_passes(self, d4):
        assert check_axioms(group_algebra(d4)).passed

    def test_zeroed_product_entry_fails(self, s3):
        a = group_algebra(s3)
        product = dict(a.product)
        product[(1, 2)] = Tensor3.zeros(1, 1, 1)
        broken = GFrobeniusAlgebra(s3, a.dims, product, a.action, a.unit, a.trace)
        report = check_axioms(broken)
        assert not report.passed
        bad = report.failures()[0]
        assert bad.witness is not None and bad.witness.context

    def test_scaled_action_on_own_grade_fails(self, z3):
        a = group_algebra(z3)
        action = dict(a.action)
        action[(1, 1)] = Matrix.from_rows([[2]])
        broken = GFrobeniusAlgebra(z3, a.dims, a.product, action, a.unit, a.trace)
        report = check_axioms(broken)
        assert not report.entry("action-trivial-on-own-grade").passed

    def test_dimension_mismatch_reported_as_pairing_failure(self, z3):
        # grades of g and g^-1 must match for the pairing to be square
        dims = (1, 2, 1)
        product = {(0, 0): Tensor3.from_entries(1, 1, 1, {(0, 0, 0): 1})}
        action = {
            (k, g): Matrix.identity(dims[g]) for k in range(3) for g in range(3)
        }
        a = GFrobeniusAlgebra(z3, dims, product, action, (1,), (1,))
        report = check_axioms(a)
        entry = report.entry("pairing-nondegenerate")
        assert not entry.passed
        assert "dim" in entry.witness.left

    def test_mutation_sensitivity(self, s3):
        rng = random.Random(20260810)
        for _ in range(25):
            assert algebra_fails_somewhere(mutated_group_algebra(s3, rng))


class TestDerive:
    def test_group_algebra_coproduct_is_delta_pair(self, s3):
        a = group_algebra(s3)
        d = derive(a)
        # oracle: delta_gh * delta_{h^-1} = delta_g and delta_{g^-1} * delta_gh = delta_h,
        # so the coproduct of the (one) basis vector has single coefficient 1
        for g in s3.elements():
            for h in s3.elements():
                tensor = d.coproducts[(g, h)]
                assert tensor.dims == (1, 1, 1)
                assert tensor[(0, 0, 0)] == 1

    def test_dual_numbers_coproduct_frozen(self, dual_numbers):
        d = derive(dual_numbers)
        t = d.coproducts[(0, 0)]
        # dual basis of (1, x) is (x, 1): coproduct of 1 is 1*x + x*1, of x is x*x
        assert t.data[0] == ((F(0), F(1)), (F(1), F(0)))
        assert t.data[1] == ((F(0), F(0)), (F(0), F(1)))

    def test_group_algebra_euler_elements(self, s3):
        d = derive(group_algebra(s3))
        for g in s3.elements():
            assert d.euler[g] == Matrix.identity(1)

    def test_pairings_inverse_to_dual_bases(self, rich_s3):
        d = derive(rich_s3)
        for g in rich_s3.group.elements():
            dim = rich_s3.dims[g]
            assert d.pairings[g] @ d.dual_bases[g] == Matrix.identity(dim)


class TestDiagramChecks:
    def test_s3_frobenius_relation(self, s3_algebra):
        d = derive(s3_algebra)
        assert check_frobenius_diagram(s3_algebra, d).passed

    def test_dual_numbers_frobenius_relation(self, dual_numbers):
        d = derive(dual_numbers)
        assert check_frobenius_diagram(dual_numbers, d).passed

    def test_mutated_coproduct_detected(self, s3_algebra):
        d = derive(s3_algebra)
        coproducts = dict(d.coproducts)
        coproducts[(1, 2)] = Tensor3.from_entries(1, 1, 1, {(0, 0, 0): 5})
        from gtqft.algebra import DerivedStructure

        doctored = DerivedStructure(d.pairings, d.dual_bases, coproducts, d.euler)
        report = check_frobenius_diagram(s3_algebra, doctored)
        assert not report.passed
        assert report.failures()[0].witness.context

    def test_s3_cocommutativity(self, s3_algebra):
        d = derive(s3_algebra)
        assert check_cocommutativity(s3_algebra, d).passed

    def test_abelian_reduces_to_plain_cocommutativity(self, z4):
        a = group_algebra(z4)
        d = derive(a)
        assert check_cocommutativity(a, d).passed
        # for abelian groups the twisted form is literally the swap equation
        for g in z4.elements():
            for h in z4.elements():
                t = d.coproducts[(g, h)]
                swapped = d.coproducts[(h, g)]
                for c in range(t.dim0):
                    for i in range(t.dim1):
                        for j in range(t.dim2):
                            assert t[(c, i, j)] == swapped[(c, j, i)]

    def test_dual_numbers_coproduct_symmetric(self, dual_numbers):
        d = derive(dual_numbers)
        t = d.coproducts[(0, 0)]
        for c in range(2):
            for i in range(2):
                for j in range(2):
                    assert t[(c, i, j)] == t[(c, j, i)]
        assert check_cocommutativity(dual_numbers, d).passed


class TestDualBasisEquivariance:
    def test_group_algebra_by_construction(self, s3_algebra):
        d = derive(s3_algebra)
        assert action_on_dual_basis_check(s3_algebra, d).passed

    def test_identity_action_fixes_diagonal(self, rich_s3):
        d = derive(rich_s3)
        e = rich_s3.group.identity
        for g in rich_s3.group.elements():
            gi = rich_s3.group.inv(g)
            moved = (
                rich_s3.action[(e, g)] @ d.euler[g] @ rich_s3.action[(e, gi)].transpose()
            )
            assert moved == d.euler[g]

    @pytest.mark.parametrize("name,param", CRITERION_GROUPS)
    def test_all_builtins(self, name, param):
        a = group_algebra(builtin(name, param))
        assert action_on_dual_basis_check(a, derive(a)).passed


class TestCoproductCrossAssert:
    def test_rich_algebra_formulas_agree(self, rich_s3):
        # derive() raises if the two one-sided formulas ever disagree
        derive(rich_s3)

    def test_disagreement_raises(self, s3):
        # break twisted commutativity so the two formulas separate:
        # make one off-diagonal product entry lopsided
        a = group_algebra(s3)
        product = dict(a.product)
        product[(1, 3)] = Tensor3.from_entries(1, 1, 1, {(0, 0, 0): 7})
        broken = GFrobeniusAlgebra(s3, a.dims, product, a.action, a.unit, a.trace)
        with pytest.raises(CoproductMismatch):
            derive(broken)


def test_basis_vector_shape():
    assert basis_vector(3, 1) == (F(0), F(1), F(0))

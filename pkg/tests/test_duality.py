"""Koszul duals: pairing signs, complements, self-duality, duality identities."""

import pytest

from opdkit.catalog import builtin
from opdkit.cli import expected_multi_diff_dual
from opdkit.compat import build_mat
from opdkit.duality import (
    check_dual_identity,
    is_self_dual,
    koszul_dual,
    pairing_form,
    shape_sign,
    standard_slots,
)
from opdkit.linalg import RationalMatrix, orthogonal_complement, rank, span_equal
from opdkit.presentation import (
    ColorSet,
    component_matrix,
    presentation_span_equal,
    rename_generators,
)
from opdkit.trees import Generator, enumerate_basis, tree_text

TWO = ColorSet.of(2)
D = Generator("d", 1)
M = Generator("m", 2)


def test_pairing_form_by_component():
    arity3 = enumerate_basis([M], 3, 2)
    assert pairing_form(arity3).signs == (1, -1)  # left comb, right comb
    arity2 = enumerate_basis([D, M], 2, 2)
    by_text = dict(zip((tree_text(t) for t in arity2.basis), pairing_form(arity2).signs))
    assert by_text == {"d(m(x1,x2))": -1, "m(d(x1),x2)": 1, "m(x1,d(x2))": 1}
    arity1 = enumerate_basis([D], 1, 2)
    assert pairing_form(arity1).signs == (1,)


def test_pairing_form_needs_weight_two():
    with pytest.raises(ValueError):
        pairing_form(enumerate_basis([M], 4, 3))
    with pytest.raises(ValueError):
        shape_sign(enumerate_basis([M], 4, 3).basis[0])


def test_standard_slots_match_catalog_convention():
    assoc = builtin("as").relation("assoc")
    for term in assoc.terms:
        assert standard_slots(term.tree) == term.slots
    leibniz = builtin("diff").relation("leibniz")
    for term in leibniz.terms:
        assert standard_slots(term.tree) == term.slots
    chain = builtin("d1d2").relation("dd_b")
    assert standard_slots(chain.terms[0].tree) == chain.terms[0].slots


def test_dual_of_as_is_as():
    dual = koszul_dual(builtin("as"))
    renamed = rename_generators(dual, {g: g.dual() for g in dual.generators})
    assert presentation_span_equal(renamed, builtin("as"))


def test_dual_of_cubic_rejected():
    with pytest.raises(ValueError, match="non-quadratic"):
        koszul_dual(builtin("hom_as"))
    with pytest.raises(ValueError, match="non-quadratic"):
        koszul_dual(builtin("rba0"))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dual_of_commuting_derivations(n):
    dual = koszul_dual(builtin("multi_diff", n))
    dims = {}
    for arity in (1, 2, 3):
        _, matrix = component_matrix(dual.generators, dual.relations, arity, 2)
        dims[arity] = rank(matrix)
    assert (dims[1], dims[2], dims[3]) == (n * (n + 1) // 2, 2 * n, 1)
    assert presentation_span_equal(dual, expected_multi_diff_dual(n))


def test_dimension_bookkeeping_per_arity():
    for key, param in [("as", None), ("multi_diff", 2), ("d1d2", None), ("dend", None)]:
        pres = builtin(key, param) if param else builtin(key)
        dual = koszul_dual(pres)
        for arity in (1, 2, 3):
            component, primal = component_matrix(pres.generators, pres.relations, arity, 2)
            if component.dimension == 0:
                continue
            _, dual_rows = component_matrix(dual.generators, dual.relations, arity, 2)
            assert rank(primal) + rank(dual_rows) == component.dimension


def test_double_dual_involution():
    for key, param in [("as", None), ("diff", None), ("multi_diff", 2), ("d1d2", None), ("dend", None)]:
        pres = builtin(key, param) if param else builtin(key)
        twice = koszul_dual(koszul_dual(pres))
        assert set(twice.generators) == set(pres.generators)
        assert presentation_span_equal(twice, pres), key


def test_self_duality():
    assert is_self_dual(builtin("as"))
    assert is_self_dual(builtin("d1d2"))  # via the operator swap
    assert not is_self_dual(builtin("multi_diff", 1))
    assert not is_self_dual(builtin("dend"))
    assert is_self_dual(build_mat(builtin("as"), TWO))
    assert is_self_dual(build_mat(builtin("d1d2"), TWO))


def test_d1d2_dual_needs_the_swap():
    pres = builtin("d1d2")
    dual = koszul_dual(pres)
    identity = rename_generators(dual, {g.dual(): g for g in pres.generators})
    assert not presentation_span_equal(identity, pres)
    d1, d2 = pres.unary
    swap = {d1.dual(): d2, d2.dual(): d1, pres.binary[0].dual(): pres.binary[0]}
    assert presentation_span_equal(rename_generators(dual, swap), pres)


@pytest.mark.parametrize("n", [2, 3])
def test_matching_duality_identity(n):
    omega = ColorSet.of(n)
    for key, param in [("as", None), ("multi_diff", 1), ("multi_diff", 2), ("d1d2", None), ("dend", None)]:
        pres = builtin(key, param) if param else builtin(key)
        assert check_dual_identity("matching", pres, omega), (key, param, n)


def test_linear_total_duality_identities_where_supports_cover():
    # The identity requires every tree of a nonzero graded component to occur
    # in some relation's support (on the appropriate side); `as` and `dend`
    # satisfy that, and so does multi_diff for the linear direction.
    for key in ("as", "dend"):
        pres = builtin(key)
        assert check_dual_identity("linear", pres, TWO)
        assert check_dual_identity("total", pres, TWO)
    assert check_dual_identity("linear", builtin("multi_diff", 1), TWO)
    assert check_dual_identity("linear", builtin("multi_diff", 2), TWO)


def test_linear_total_duality_fails_on_sparse_supports():
    # Documented defect: with one derivation the total construction has no
    # arity-1 relations at all, so its dual is the full 4-dimensional arity-1
    # component, while the linear construction of the dual spans only 3 of
    # those dimensions.  See notes on the decision record.
    assert not check_dual_identity("total", builtin("multi_diff", 1), TWO)
    assert not check_dual_identity("total", builtin("multi_diff", 2), TWO)
    assert not check_dual_identity("linear", builtin("d1d2"), TWO)
    assert not check_dual_identity("total", builtin("d1d2"), TWO)


def test_singleton_color_duality_trivial():
    one = ColorSet.of(1)
    for kind in ("matching", "linear", "total"):
        assert check_dual_identity(kind, builtin("as"), one)


def test_restricted_complement_lemma():
    # Splitting the ambient by constant-color vs mixed-color trees, the
    # complement of a union of relation sets supported on the two halves is
    # the direct sum of the restricted complements.
    mat = build_mat(builtin("multi_diff", 2), TWO)
    gens = mat.generators
    for arity in (1, 2, 3):
        component, rows = component_matrix(gens, mat.relations, arity, 2)
        form = pairing_form(component)
        constant_idx = [
            i
            for i, t in enumerate(component.basis)
            if len({g.color for g in t.internal_generators()}) == 1
        ]
        mixed_idx = [i for i in range(component.dimension) if i not in constant_idx]
        full = orthogonal_complement(rows, form)

        def restricted(indices):
            sub_rows = []
            for row in rows.rows:
                sub = tuple(row[i] for i in indices)
                if any(sub):
                    sub_rows.append(sub)
            sub_form_signs = tuple(form.signs[i] for i in indices)
            from opdkit.linalg import DiagonalForm

            comp = orthogonal_complement(
                RationalMatrix(tuple(sub_rows), len(indices)),
                DiagonalForm(sub_form_signs),
            )
            embedded = []
            for row in comp.rows:
                vec = [0] * component.dimension
                for value, i in zip(row, indices):
                    vec[i] = value
                embedded.append(tuple(vec))
            return embedded

        pieces = restricted(constant_idx) + restricted(mixed_idx)
        assert span_equal(
            RationalMatrix.from_rows(pieces, component.dimension), full
        ), arity

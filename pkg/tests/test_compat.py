"""The three compatible constructions and the linear-encoding check."""

import itertools

import pytest

from opdkit.catalog import builtin, default_grid
from opdkit.compat import (
    build_lin,
    build_mat,
    build_tot,
    expand_formal,
    support,
    transposition_relations,
    verify_lin_encoding,
)
from opdkit.linalg import rank, span_equal
from opdkit.presentation import (
    ColorSet,
    Relation,
    Term,
    component_matrix,
    presentation_span_contains,
    presentation_span_equal,
    rename_generators,
)
from opdkit.trees import Generator, tree_text

TWO = ColorSet.of(2)
THREE = ColorSet.of(3)


def test_support_of_assoc_and_rb():
    assoc = builtin("as").relation("assoc")
    assert [tree_text(t) for t, _ in support(assoc)] == [
        "m(m(x1,x2),x3)",
        "m(x1,m(x2,x3))",
    ]
    rb = builtin("rba0").relation("rb")
    assert len(support(rb)) == 3


def test_support_drops_cancelled_terms():
    assoc = builtin("as").relation("assoc")
    extra = Term(-assoc.terms[0].coeff, assoc.terms[0].tree, assoc.terms[0].slots)
    cancelled = Relation("r", assoc.terms + (extra,))
    assert [tree_text(t) for t, _ in support(cancelled)] == ["m(x1,m(x2,x3))"]


def test_build_mat_assoc_family():
    mat = build_mat(builtin("as"), TWO)
    assert len(mat.relations) == 4
    texts = {
        rel.name: sorted(tree_text(t.tree) for t in rel.terms)
        for rel in mat.relations
    }
    assert texts["assoc__1,2"] == ["m#1(x1,m#2(x2,x3))", "m#2(m#1(x1,x2),x3)"]


def test_build_mat_relation_counts():
    # one colored relation per color tuple, |colors|^weight each
    for label, pres in default_grid():
        mat = build_mat(pres, TWO)
        expected = sum(2 ** rel.weight for rel in pres.relations)
        assert len(mat.relations) == expected, label


def test_build_lin_as_two_colors_exact_relations():
    # two constant-color copies plus one four-term mixed associativity
    lin = build_lin(builtin("as"), TWO)
    assert len(lin.relations) == 3
    mixed = lin.relation("assoc__L_1,2")
    texts = {(str(t.coeff), tree_text(t.tree)) for t in mixed.terms}
    assert texts == {
        ("1", "m#2(m#1(x1,x2),x3)"),
        ("1", "m#1(m#2(x1,x2),x3)"),
        ("-1", "m#1(x1,m#2(x2,x3))"),
        ("-1", "m#2(x1,m#1(x2,x3))"),
    }
    for w in ("1", "2"):
        constant = lin.relation(f"assoc__{w},{w}")
        assert {tree_text(t.tree) for t in constant.terms} == {
            f"m#{w}(m#{w}(x1,x2),x3)",
            f"m#{w}(x1,m#{w}(x2,x3))",
        }


def test_build_lin_quadratic_counts():
    # n_colors constant copies plus one symmetrized sum per unordered pair
    lin = build_lin(builtin("dend"), THREE)
    per_family = 3 + 3
    assert len(lin.relations) == 3 * per_family


def test_singleton_collapse():
    one = ColorSet.of(1)
    for label, pres in default_grid():
        for build in (build_lin, build_mat, build_tot):
            collapsed = build(pres, one)
            back = rename_generators(
                collapsed, {g: g.uncolored() for g in collapsed.generators}
            )
            assert presentation_span_equal(back, pres), (label, build.__name__)


def test_epimorphism_chain():
    for label, pres in default_grid():
        for omega in (TWO, THREE):
            lin = build_lin(pres, omega)
            mat = build_mat(pres, omega)
            tot = build_tot(pres, omega)
            assert presentation_span_contains(mat, lin), label
            assert presentation_span_contains(tot, mat), label


def test_transpositions_of_assoc():
    assoc = builtin("as").relation("assoc")
    rels = transposition_relations(assoc, "1", "2")
    assert len(rels) == 2
    texts = [sorted((str(t.coeff), tree_text(t.tree)) for t in rel.terms) for rel in rels]
    assert [("-1", "m#1(m#2(x1,x2),x3)"), ("1", "m#2(m#1(x1,x2),x3)")] in texts
    assert [("-1", "m#2(x1,m#1(x2,x3))"), ("1", "m#1(x1,m#2(x2,x3))")] in texts


def test_transpositions_weight3_two_per_tree():
    rb = builtin("rba0").relation("rb")
    rels = transposition_relations(rb, "1", "2")
    assert len(rels) == 6
    with pytest.raises(ValueError):
        transposition_relations(rb, "1", "1")


def test_transpositions_single_tree_weight2():
    rel = builtin("d1d2").relation("dd_a")
    assert len(transposition_relations(rel, "1", "2")) == 1


def test_build_tot_as_span():
    tot = build_tot(builtin("as"), TWO)
    # matching family plus both comb transpositions
    names = {rel.name for rel in tot.relations}
    assert "assoc__T_0_1,2" in names and "assoc__T_1_2,1" in names
    gens = tot.generators
    _, matrix = component_matrix(gens, tot.relations, 3, 2)
    assert rank(matrix) == 5  # of the 8-dimensional ambient


def test_expand_formal_monomials():
    expansions = expand_formal(builtin("rba0"), TWO)
    by_name = {e.relation: e for e in expansions}
    rb = by_name["rb"]
    assert set(rb.coefficients) == {
        ("1", "1", "1"),
        ("1", "1", "2"),
        ("1", "2", "2"),
        ("2", "2", "2"),
    }
    # diagonal monomial is the constant-color copy
    diag = rb.coefficients[("1", "1", "1")]
    gens = [g for g in build_mat(builtin("rba0"), TWO).generators]
    from opdkit.compat import build_mat as _bm

    constant = _bm(builtin("rba0"), TWO).relation("rb__1,1,1")
    _, a = component_matrix(gens, [diag], 2, 3)
    _, b = component_matrix(gens, [constant], 2, 3)
    assert span_equal(a, b)
    # the square monomial carries 9 terms: three colorings of three trees
    assert len(rb.coefficients[("1", "1", "2")].terms) == 9


def test_expand_formal_assoc_mixed_is_elementwise_sum():
    expansions = expand_formal(builtin("as"), TWO)
    mixed = expansions[0].coefficients[("1", "2")]
    lin = build_lin(builtin("as"), TWO)
    gens = lin.generators
    _, a = component_matrix(gens, [mixed], 3, 2)
    _, b = component_matrix(gens, [lin.relation("assoc__L_1,2")], 3, 2)
    assert span_equal(a, b)


@pytest.mark.parametrize("n", [2, 3])
def test_verify_lin_encoding_catalog(n):
    for label, pres in default_grid():
        assert verify_lin_encoding(pres, ColorSet.of(n)), (label, n)


def test_verify_lin_encoding_singleton_trivial():
    assert verify_lin_encoding(builtin("rba0"), ColorSet.of(1))


def test_color_symmetry_of_lin_and_tot():
    for key in ("rba0", "dend"):
        pres = builtin(key)
        for build in (build_lin, build_tot):
            built = build(pres, THREE)
            for perm in itertools.permutations(THREE.labels):
                sigma = dict(zip(THREE.labels, perm))
                mapping = {
                    g: Generator(g.name, g.arity, sigma[g.color], g.dualized)
                    for g in built.generators
                }
                assert presentation_span_equal(
                    rename_generators(built, mapping), built
                ), (key, build.__name__, perm)

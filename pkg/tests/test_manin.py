"""Manin square products and the product-duality identity."""

import pytest

from opdkit.catalog import builtin
from opdkit.compat import build_lin, build_mat, build_tot
from opdkit.duality import koszul_dual
from opdkit.manin import (
    black_square,
    check_product_duality,
    colorize_tensor_map,
    compare_white_readings,
    tensor_map,
    white_square,
)
from opdkit.presentation import (
    ColorSet,
    presentation_span_equal,
    rename_generators,
)

TWO = ColorSet.of(2)
THREE = ColorSet.of(3)


def unit_rename(q):
    tm = tensor_map(builtin("as").binary, q.binary)
    return {t: f for (e, f), t in tm.items()}


def test_black_unit_law():
    for key in ("as", "dend"):
        q = builtin(key)
        product = black_square(builtin("as"), q)
        assert presentation_span_equal(rename_generators(product, unit_rename(q)), q)


def test_white_unit_law():
    for key in ("as", "dend"):
        q = builtin(key)
        product = white_square(builtin("as"), q, "white_dual")
        assert presentation_span_equal(rename_generators(product, unit_rename(q)), q)


def test_black_rejects_unary_and_cubic():
    with pytest.raises(ValueError, match="unary"):
        black_square(builtin("rba0"), builtin("as"))
    with pytest.raises(ValueError, match="cubic"):
        black_square(builtin("cubic_as"), builtin("as"))


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("key", ["as", "dend"])
def test_black_with_replicated_assoc_is_lin(key, n):
    omega = ColorSet.of(n)
    lin_as = build_lin(builtin("as"), omega)
    q = builtin(key)
    product = black_square(lin_as, q)
    renamed = rename_generators(product, colorize_tensor_map(lin_as.binary, q.binary))
    assert presentation_span_equal(renamed, build_lin(q, omega))


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("key", ["as", "dend"])
def test_matching_products_both_kinds(key, n):
    omega = ColorSet.of(n)
    mat_as = build_mat(builtin("as"), omega)
    q = builtin(key)
    target = build_mat(q, omega)
    rename = colorize_tensor_map(mat_as.binary, q.binary)
    black = rename_generators(black_square(mat_as, q), rename)
    assert presentation_span_equal(black, target)
    white = rename_generators(white_square(mat_as, q, "white_dual"), rename)
    assert presentation_span_equal(white, target)


@pytest.mark.parametrize("n", [2])
@pytest.mark.parametrize("key", ["as", "dend"])
def test_total_white_product(key, n):
    omega = ColorSet.of(n)
    tot_as = build_tot(builtin("as"), omega)
    q = builtin(key)
    product = white_square(tot_as, q, "white_dual")
    renamed = rename_generators(product, colorize_tensor_map(tot_as.binary, q.binary))
    assert presentation_span_equal(renamed, build_tot(q, omega))


def test_white_square_of_as_is_as():
    product = white_square(builtin("as"), builtin("as"), "white_dual")
    assert len(product.binary) == 1
    q = builtin("as")
    assert presentation_span_equal(rename_generators(product, unit_rename(q)), q)


def test_product_duality_identity():
    for left, right in [("as", "as"), ("dend", "as")]:
        holds, report = check_product_duality(builtin(left), builtin(right))
        assert holds
        assert not report.agree  # the literal reading differs from the dual route


def test_product_duality_with_matching_factor():
    mat_as = build_mat(builtin("as"), TWO)
    holds, _ = check_product_duality(mat_as, builtin("dend"))
    assert holds


def test_white_literal_disagrees_on_as():
    report = compare_white_readings(builtin("as"), builtin("as"))
    assert not report.agree
    literal = white_square(builtin("as"), builtin("as"), "white_literal")
    # the literal reading flips the right-comb sign: x(yz) + (xy)z
    coeffs = sorted(term.coeff for term in literal.relations[0].terms)
    assert coeffs == [1, 1]


def test_dual_of_black_is_white_of_duals_explicitly():
    p, q = builtin("dend"), builtin("as")
    lhs = koszul_dual(black_square(p, q))
    rhs = white_square(koszul_dual(p), koszul_dual(q), "white_dual")
    outer = tensor_map(p.binary, q.binary)
    inner = tensor_map([g.dual() for g in p.binary], [g.dual() for g in q.binary])
    mapping = {
        outer[(gp, gq)].dual(): inner[(gp.dual(), gq.dual())]
        for gp in p.binary
        for gq in q.binary
    }
    assert presentation_span_equal(rename_generators(lhs, mapping), rhs)

"""The three compatible operads over a finite color set.

Given a presentation P and colors W, three quotients of the free operad on
the replicated generators are built, with increasingly strict relations:

* linear   -- every constant-color copy of each relation, plus for each
  quadratic relation the symmetrized two-color sums, for each cubic relation
  the three-pattern sums (a,a,b)+(a,b,a)+(b,a,a) and the fully symmetrized
  sums over three distinct colors;
* matching -- every coloring of every relation, over all color tuples;
* total    -- the matching relations plus, for every support tree, the
  transposition relations equating colorings that differ by swapping the
  colors of two slots.

``expand_formal``/``verify_lin_encoding`` mechanize the argument that the
linear construction encodes exactly the algebras closed under arbitrary
linear combinations of the replicated operations: substituting a formal sum
sum_w c_w g#w into every slot and collecting coefficients of each monomial
in the c's must yield the same componentwise span as the linear relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .linalg import span_equal
from .presentation import (
    ColorSet,
    Presentation,
    Relation,
    Term,
    color_relation,
    component_matrix,
    elementwise_sum,
    relation_gradings,
    replicate,
    require_valid,
)
from .trees import Generator, Tree

__all__ = [
    "CompatKind",
    "FormalExpansion",
    "support",
    "build_lin",
    "build_mat",
    "build_tot",
    "build_compatible",
    "transposition_relations",
    "expand_formal",
    "verify_lin_encoding",
]

CompatKind = Literal["linear", "matching", "total"]


def support(rel: Relation) -> list[tuple[Tree, tuple[int, ...]]]:
    """Duplicate-free (tree, slot map) pairs carrying a nonzero net coefficient."""
    totals: dict[tuple[Tree, tuple[int, ...]], Fraction] = {}
    order: list[tuple[Tree, tuple[int, ...]]] = []
    for term in rel.terms:
        key = (term.tree, term.slots)
        if key not in totals:
            totals[key] = Fraction(0)
            order.append(key)
        totals[key] += term.coeff
    return [key for key in order if totals[key] != 0]


def _colored_gens(p: Presentation, omega: ColorSet) -> tuple[list[Generator], list[Generator]]:
    gens = replicate(p, omega)
    return [g for g in gens if g.arity == 1], [g for g in gens if g.arity == 2]


def _named(rel: Relation, base: str, colors) -> Relation:
    return rel.renamed(f"{base}__{','.join(colors)}")


def build_mat(p: Presentation, omega: ColorSet) -> Presentation:
    """Matching operad: every coloring of every relation, all color tuples."""
    require_valid(p)
    omega = ColorSet.of(omega)
    unary, binary = _colored_gens(p, omega)
    rels = []
    for rel in p.relations:
        for colors in itertools.product(omega.labels, repeat=rel.weight):
            rels.append(_named(color_relation(rel, colors, omega), rel.name, colors))
    return Presentation(
        f"mat_{p.name}__{'_'.join(omega.labels)}", tuple(unary), tuple(binary), tuple(rels)
    )


def build_lin(p: Presentation, omega: ColorSet) -> Presentation:
    """Linearly compatible operad."""
    require_valid(p)
    omega = ColorSet.of(omega)
    unary, binary = _colored_gens(p, omega)
    labels = omega.labels
    rels = []
    for rel in p.relations:
        w = rel.weight
        for c in labels:
            rels.append(_named(color_relation(rel, (c,) * w, omega), rel.name, (c,) * w))
        if w == 2:
            # The (mu,nu)+(nu,mu) sum equals its own transpose, so unordered
            # pairs suffice; correctness is asserted by span, never by list.
            for i, mu in enumerate(labels):
                for nu in labels[i + 1 :]:
                    summed = elementwise_sum(
                        [color_relation(rel, (mu, nu), omega)],
                        [color_relation(rel, (nu, mu), omega)],
                    )[0]
                    rels.append(summed.renamed(f"{rel.name}__L_{mu},{nu}"))
        else:
            for mu, nu in itertools.permutations(labels, 2):
                summed = elementwise_sum(
                    elementwise_sum(
                        [color_relation(rel, (mu, mu, nu), omega)],
                        [color_relation(rel, (mu, nu, mu), omega)],
                    ),
                    [color_relation(rel, (nu, mu, mu), omega)],
                )[0]
                rels.append(summed.renamed(f"{rel.name}__L_{mu},{nu}"))
            # Squarefree part: the coefficient of c_mu c_nu c_om is the sum
            # over all orderings of the three distinct colors; the orderings
            # are not individually extractable from commuting scalars.
            for combo in itertools.combinations(labels, 3):
                summed = [color_relation(rel, combo, omega)]
                for perm in itertools.permutations(combo):
                    if perm == combo:
                        continue
                    summed = elementwise_sum(summed, [color_relation(rel, perm, omega)])
                rels.append(summed[0].renamed(f"{rel.name}__S_{','.join(combo)}"))
    return Presentation(
        f"lin_{p.name}__{'_'.join(labels)}", tuple(unary), tuple(binary), tuple(rels)
    )


def transposition_relations(rel: Relation, mu: str, nu: str) -> list[Relation]:
    """Color-swap relations on every support tree of ``rel``.

    Weight 2: t(mu,nu) - t(nu,mu).  Weight 3: t(mu,nu,mu) - t(nu,mu,mu) and
    t(mu,nu,mu) - t(mu,mu,nu), i.e. the swap of slots 1,2 and of slots 2,3.
    """
    if mu == nu:
        raise ValueError("transposition needs two distinct colors")
    if rel.weight not in (2, 3):
        raise ValueError(f"relation {rel.name} has weight {rel.weight}, expected 2 or 3")

    def colored_term(tree: Tree, slots: tuple[int, ...], colors, sign: int) -> Term:
        single = Relation("_", (Term(Fraction(sign), tree, slots),))
        return color_relation(single, colors).terms[0]

    out = []
    for idx, (tree, slots) in enumerate(support(rel)):
        if rel.weight == 2:
            out.append(
                Relation(
                    f"{rel.name}__T_{idx}_{mu},{nu}",
                    (
                        colored_term(tree, slots, (mu, nu), 1),
                        colored_term(tree, slots, (nu, mu), -1),
                    ),
                )
            )
        else:
            base = colored_term(tree, slots, (mu, nu, mu), 1)
            out.append(
                Relation(
                    f"{rel.name}__T_{idx}a_{mu},{nu}",
                    (base, colored_term(tree, slots, (nu, mu, mu), -1)),
                )
            )
            out.append(
                Relation(
                    f"{rel.name}__T_{idx}b_{mu},{nu}",
                    (base, colored_term(tree, slots, (mu, mu, nu), -1)),
                )
            )
    return out


def build_tot(p: Presentation, omega: ColorSet) -> Presentation:
    """Totally compatible operad: matching relations plus all transpositions."""
    omega = ColorSet.of(omega)
    mat = build_mat(p, omega)
    extra = []
    for rel in p.relations:
        for mu, nu in itertools.permutations(omega.labels, 2):
            extra.extend(transposition_relations(rel, mu, nu))
    return Presentation(
        f"tot_{p.name}__{'_'.join(omega.labels)}",
        mat.unary,
        mat.binary,
        mat.relations + tuple(extra),
    )


def build_compatible(kind: CompatKind, p: Presentation, omega: ColorSet) -> Presentation:
    builder = {"linear": build_lin, "matching": build_mat, "total": build_tot}[kind]
    return builder(p, omega)


@dataclass(frozen=True)
class FormalExpansion:
    """Coefficients of one relation after substituting formal sums into slots.

    Keys are color monomials (sorted tuples of labels, one per slot); values
    are the extracted homogeneous relations in the colored generators.
    """

    relation: str
    coefficients: dict[tuple[str, ...], Relation]


def expand_formal(p: Presentation, omega: ColorSet) -> list[FormalExpansion]:
    """Substitute sum_w c_w g#w into every slot and collect by monomial in the c's."""
    require_valid(p)
    omega = ColorSet.of(omega)
    out = []
    for rel in p.relations:
        buckets: dict[tuple[str, ...], list[Term]] = {}
        for colors in itertools.product(omega.labels, repeat=rel.weight):
            monomial = tuple(sorted(colors))
            buckets.setdefault(monomial, []).extend(
                color_relation(rel, colors, omega).terms
            )
        coefficients = {
            monomial: Relation(f"{rel.name}__c_{'.'.join(monomial)}", tuple(terms))
            for monomial, terms in sorted(buckets.items())
        }
        out.append(FormalExpansion(rel.name, coefficients))
    return out


def verify_lin_encoding(p: Presentation, omega: ColorSet) -> bool:
    """Span of all formal-expansion coefficients == span of the linear relations.

    Checked separately in every (arity, weight) component.
    """
    omega = ColorSet.of(omega)
    lin = build_lin(p, omega)
    extracted = [
        rel
        for expansion in expand_formal(p, omega)
        for rel in expansion.coefficients.values()
    ]
    gens = lin.generators
    for arity, weight in relation_gradings(list(lin.relations) + extracted):
        _, lhs = component_matrix(gens, extracted, arity, weight)
        _, rhs = component_matrix(gens, lin.relations, arity, weight)
        if not span_equal(lhs, rhs):
            return False
    return True

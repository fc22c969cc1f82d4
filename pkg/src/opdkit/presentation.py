"""Finitely presented unary-binary operads with homogeneous relations.

A relation is a rational linear combination of decorated trees of one fixed
(arity, weight), each tree annotated with slot indices.  Slots name the
positional roles of internal vertices inside a relation template so that a
coloring can be applied uniformly across all terms: slot j of every term
receives the same color even when the decorating generators differ from
term to term (as in a commutator).

The module also carries the span machinery used throughout: relations of a
presentation are turned into coefficient vectors over the canonical tree
basis of their graded component, and presentations are compared componentwise
by exact row-space equality or containment.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .linalg import RationalMatrix, span_contains, span_equal
from .trees import Generator, GradedComponent, Tree, enumerate_basis, tree_key

__all__ = [
    "Term",
    "Relation",
    "Presentation",
    "ColorSet",
    "ValidationReport",
    "validate",
    "replicate",
    "color_relation",
    "elementwise_sum",
    "rename_generators",
    "tensor_generators",
    "tensor_atom_name",
    "relation_gradings",
    "component_matrix",
    "presentation_span_equal",
    "presentation_span_contains",
    "component_dimensions",
]


@dataclass(frozen=True)
class Term:
    """One summand of a relation: coefficient, tree, and per-vertex slots.

    ``slots`` assigns a slot index to each internal vertex, listed in
    preorder; a valid relation of weight w uses exactly the slots 1..w
    once per term.
    """

    coeff: Fraction
    tree: Tree
    slots: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.slots) != self.tree.weight:
            raise ValueError(
                f"term has {self.tree.weight} internal vertices "
                f"but {len(self.slots)} slot annotations"
            )

    def sort_key(self) -> tuple:
        return (tree_key(self.tree), self.slots, self.coeff)


@dataclass(frozen=True)
class Relation:
    """A named linear combination of slotted trees.

    Terms are kept in canonical order (no cancellation or merging happens),
    so structurally equal relations compare equal however they were written.
    """

    name: str
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError(f"relation {self.name!r} has no terms")
        ordered = tuple(sorted(self.terms, key=Term.sort_key))
        if ordered != self.terms:
            object.__setattr__(self, "terms", ordered)

    @property
    def arity(self) -> int:
        return self.terms[0].tree.arity

    @property
    def weight(self) -> int:
        return self.terms[0].tree.weight

    def grading(self) -> tuple[int, int]:
        return (self.arity, self.weight)

    def renamed(self, name: str) -> "Relation":
        return dataclasses.replace(self, name=name)


@dataclass(frozen=True)
class Presentation:
    """Generators plus relations, presenting the quotient of a free operad.

    Generators keep declaration order; relations are kept sorted by name so
    that structural equality and serialization agree.
    """

    name: str
    unary: tuple[Generator, ...]
    binary: tuple[Generator, ...]
    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.relations, key=lambda r: (r.name, r.terms and r.terms[0].sort_key())))
        if ordered != self.relations:
            object.__setattr__(self, "relations", ordered)

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self.unary + self.binary

    @property
    def is_quadratic(self) -> bool:
        return all(r.weight == 2 for r in self.relations)

    def relation(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)


@dataclass(frozen=True)
class ColorSet:
    """An ordered finite set of distinct color labels."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValueError("color set must be nonempty")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate color labels")

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    @classmethod
    def of(cls, spec) -> "ColorSet":
        """Accept an int n (labels 1..n), an explicit label sequence, or a ColorSet."""
        if isinstance(spec, ColorSet):
            return spec
        if isinstance(spec, int):
            if spec < 1:
                raise ValueError("color set size must be >= 1")
            return cls(tuple(str(i) for i in range(1, spec + 1)))
        return cls(tuple(str(x) for x in spec))


@dataclass
class ValidationReport:
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(self.problems)


def validate(p: Presentation) -> ValidationReport:
    """Check every presentation and relation invariant; never raises."""
    problems: list[str] = []
    seen_triples = set()
    for g in p.unary:
        if g.arity != 1:
            problems.append(f"generator {g.serialized()} listed as unary has arity {g.arity}")
    for g in p.binary:
        if g.arity != 2:
            problems.append(f"generator {g.serialized()} listed as binary has arity {g.arity}")
    for g in p.generators:
        triple = (g.name, g.color, g.dualized)
        if triple in seen_triples:
            problems.append(f"duplicate generator {g.serialized()}")
        seen_triples.add(triple)
    known = set(p.generators)

    for rel in p.relations:
        gradings = {(t.tree.arity, t.tree.weight) for t in rel.terms}
        if len(gradings) > 1:
            problems.append(
                f"relation {rel.name}: non-homogeneous relation, mixes gradings {sorted(gradings)}"
            )
            continue
        arity, weight = rel.grading()
        if weight not in (2, 3):
            problems.append(
                f"relation {rel.name}: weight {weight} not quadratic or cubic"
            )
        if arity not in (1, 2, 3, 4):
            problems.append(f"relation {rel.name}: arity {arity} out of range 1..4")
        slot_arity: dict[int, int] = {}
        for idx, term in enumerate(rel.terms):
            for g in term.tree.internal_generators():
                if g not in known:
                    problems.append(
                        f"relation {rel.name} term {idx}: unknown generator {g.serialized()}"
                    )
            if sorted(term.slots) != list(range(1, weight + 1)):
                problems.append(
                    f"relation {rel.name} term {idx}: slots {term.slots} "
                    f"are not a permutation of 1..{weight}"
                )
                continue
            for g, slot in zip(term.tree.internal_generators(), term.slots):
                prev = slot_arity.setdefault(slot, g.arity)
                if prev != g.arity:
                    problems.append(
                        f"relation {rel.name} term {idx}: slot arity mismatch at slot {slot}"
                    )
    return ValidationReport(problems)


def require_valid(p: Presentation) -> None:
    report = validate(p)
    if not report.ok:
        raise ValueError(f"invalid presentation {p.name}: {report}")


def replicate(p: Presentation, omega: ColorSet) -> list[Generator]:
    """The colored generator family: one copy g#w of every generator per color."""
    for g in p.generators:
        if g.color is not None:
            raise ValueError(
                f"cannot replicate already-colored generator {g.serialized()}"
            )
    return [g.colored(w) for g in p.generators for w in omega]


def _retree(tree: Tree, new_gens: Sequence[Generator]) -> Tree:
    """Rebuild ``tree`` with internal vertices decorated by ``new_gens`` in preorder."""
    it = iter(new_gens)

    def go(node: Tree) -> Tree:
        if node.is_leaf:
            return node
        g = next(it)
        return Tree(g, tuple(go(c) for c in node.children))

    return go(tree)


def color_relation(
    rel: Relation,
    colors: Sequence[str],
    omega: Optional[ColorSet] = None,
) -> Relation:
    """Apply ``colors[j-1]`` to the generator sitting at slot j of every term."""
    if len(colors) != rel.weight:
        raise ValueError(
            f"relation {rel.name} has weight {rel.weight}, got {len(colors)} colors"
        )
    if omega is not None:
        for c in colors:
            if c not in omega.labels:
                raise ValueError(f"color label {c!r} not in the ambient color set")
    new_terms = []
    for term in rel.terms:
        gens = term.tree.internal_generators()
        recolored = [g.colored(colors[slot - 1]) for g, slot in zip(gens, term.slots)]
        new_terms.append(Term(term.coeff, _retree(term.tree, recolored), term.slots))
    return Relation(rel.name, tuple(new_terms))


def elementwise_sum(a: Sequence[Relation], b: Sequence[Relation]) -> list[Relation]:
    """Index-wise formal sum of two equally long relation lists.

    Terms are concatenated without cancellation; slot maps travel with their
    terms.  Grading must agree pairwise.
    """
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    out = []
    for ra, rb in zip(a, b):
        if ra.grading() != rb.grading():
            raise ValueError(
                f"grading mismatch: {ra.name} is {ra.grading()}, {rb.name} is {rb.grading()}"
            )
        out.append(Relation(ra.name, ra.terms + rb.terms))
    return out


def rename_generators(
    p: Presentation, mapping: Mapping[Generator, Generator]
) -> Presentation:
    """Structurally identical presentation over renamed generators."""
    for g in p.generators:
        if g not in mapping:
            raise ValueError(f"rename map misses generator {g.serialized()}")
        if mapping[g].arity != g.arity:
            raise ValueError(
                f"rename map changes arity of {g.serialized()} "
                f"({g.arity} -> {mapping[g].arity})"
            )
    images = [mapping[g] for g in p.generators]
    if len(set(images)) != len(images):
        raise ValueError("rename map is not injective on the generator list")

    def rename_rel(rel: Relation) -> Relation:
        terms = []
        for term in rel.terms:
            new_gens = [mapping[g] for g in term.tree.internal_generators()]
            terms.append(Term(term.coeff, _retree(term.tree, new_gens), term.slots))
        return Relation(rel.name, tuple(terms))

    return Presentation(
        p.name,
        tuple(mapping[g] for g in p.unary),
        tuple(mapping[g] for g in p.binary),
        tuple(rename_rel(r) for r in p.relations),
    )


def tensor_atom_name(g: Generator) -> str:
    """Name of a generator as it appears inside a tensor-product name.

    The dual marker is spelled with a bare ``*`` here so that tensor names
    stay single unambiguous tokens; ``^*`` is reserved for the dual flag of
    a whole generator.
    """
    out = g.name
    if g.color is not None:
        out += f"#{g.color}"
    if g.dualized:
        out += "*"
    return out


def tensor_generators(
    e: Sequence[Generator], f: Sequence[Generator]
) -> list[Generator]:
    """One binary generator per pair, named ``e~f``, in lexicographic pair order."""
    for g in list(e) + list(f):
        if g.arity != 2:
            raise ValueError(f"unary generator {g.serialized()} in tensor product")
    pairs = sorted(
        ((ge, gf) for ge in e for gf in f),
        key=lambda p: (p[0].sort_key, p[1].sort_key),
    )
    return [
        Generator(f"{tensor_atom_name(ge)}~{tensor_atom_name(gf)}", 2)
        for ge, gf in pairs
    ]


# ---------------------------------------------------------------------------
# Span machinery


def relation_gradings(relations: Iterable[Relation]) -> list[tuple[int, int]]:
    return sorted({r.grading() for r in relations})


def relation_vector(rel: Relation, component: GradedComponent) -> tuple[Fraction, ...]:
    index = component.index()
    vec = [Fraction(0)] * component.dimension
    for term in rel.terms:
        try:
            vec[index[term.tree]] += term.coeff
        except KeyError:
            raise ValueError(
                f"relation {rel.name} contains a tree outside its graded component"
            ) from None
    return tuple(vec)


def component_matrix(
    gens: Sequence[Generator],
    relations: Iterable[Relation],
    arity: int,
    weight: int,
) -> tuple[GradedComponent, RationalMatrix]:
    """Coefficient rows of the relations of one grading over the canonical basis."""
    component = enumerate_basis(gens, arity, weight)
    rows = [
        relation_vector(r, component)
        for r in relations
        if r.grading() == (arity, weight)
    ]
    return component, RationalMatrix(tuple(rows), component.dimension)


def _common_generators(p: Presentation, q: Presentation) -> tuple[Generator, ...]:
    if set(p.generators) != set(q.generators):
        ours = {g.serialized() for g in p.generators}
        theirs = {g.serialized() for g in q.generators}
        raise ValueError(
            "presentations live over different generators: "
            f"{sorted(ours ^ theirs)} not shared"
        )
    return p.generators


def presentation_span_equal(p: Presentation, q: Presentation) -> bool:
    """Componentwise row-space equality of the two relation sets."""
    gens = _common_generators(p, q)
    for arity, weight in relation_gradings(list(p.relations) + list(q.relations)):
        _, mp = component_matrix(gens, p.relations, arity, weight)
        _, mq = component_matrix(gens, q.relations, arity, weight)
        if not span_equal(mp, mq):
            return False
    return True


def presentation_span_contains(big: Presentation, small: Presentation) -> bool:
    """True iff every relation of ``small`` lies in the componentwise span of ``big``."""
    gens = _common_generators(big, small)
    for arity, weight in relation_gradings(small.relations):
        _, mb = component_matrix(gens, big.relations, arity, weight)
        _, ms = component_matrix(gens, small.relations, arity, weight)
        if not span_contains(mb, ms):
            return False
    return True


def component_dimensions(p: Presentation) -> dict[tuple[int, int], tuple[int, int]]:
    """Per grading: (span dimension of the relations, ambient dimension)."""
    from .linalg import rank

    out = {}
    for arity, weight in relation_gradings(p.relations):
        component, matrix = component_matrix(p.generators, p.relations, arity, weight)
        out[(arity, weight)] = (rank(matrix), component.dimension)
    return out

"""Text DSL for presentations, plus canonical DSL/JSON serialization.

Grammar (one declaration per line, ``#`` starts a comment):

    presentation := "operad" NAME line*
    line         := ("unary" | "binary") NAME+
                  | "relation" NAME ":" term (("+" | "-") term)*
    term         := [coeff "*"] expr
    expr         := NAME "@" SLOT "(" expr ("," expr)* ")" | LEAF
    coeff        := INT | INT "/" INT

Leaves are x1, x2, ... and must appear consecutively from x1 in strictly
increasing left-to-right order; every internal vertex carries a mandatory
slot annotation.  Generator names may carry a color (``m#1``), a dual
marker (``P^*``), or be tensor pairs (``m#1~prec``); a ``#`` directly
attached to a name is part of the name, otherwise it opens a comment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .presentation import Presentation, Relation, Term
from .trees import Generator, Tree, leaf, tree_text

__all__ = [
    "SourceSpan",
    "ParseError",
    "parse_presentation",
    "serialize",
    "presentation_to_json",
    "split_generator_token",
]


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME, INT, punctuation kinds
    text: str
    span: SourceSpan


_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_NAME_CHARS = _NAME_START | set("0123456789~")
_PUNCT = {"@": "AT", "(": "LPAREN", ")": "RPAREN", ",": "COMMA", ":": "COLON",
          "+": "PLUS", "-": "MINUS", "*": "STAR", "/": "SLASH"}


def _lex_line(text: str, lineno: int) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r":
            i += 1
            continue
        if c == "#":
            break  # a detached # opens a comment
        start = i
        if c in _NAME_START:
            i += 1
            while i < n:
                c = text[i]
                if c in _NAME_CHARS:
                    i += 1
                elif c == "#" and i + 1 < n and text[i + 1] in _NAME_CHARS:
                    i += 1  # attached color marker, e.g. m#1
                elif c == "^" and i + 1 < n and text[i + 1] == "*":
                    i += 2  # dual marker ^*
                elif c == "*" and (
                    "~" in text[start:i]
                    or (i + 1 < n and text[i + 1] == "~")
                ):
                    i += 1  # dual marker inside a tensor name, e.g. m*~prec
                else:
                    break
            tokens.append(
                _Token("NAME", text[start:i], SourceSpan(lineno, start + 1, i - start))
            )
        elif c.isdigit():
            i += 1
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(
                _Token("INT", text[start:i], SourceSpan(lineno, start + 1, i - start))
            )
        elif c in _PUNCT:
            tokens.append(_Token(_PUNCT[c], c, SourceSpan(lineno, start + 1, 1)))
            i += 1
        else:
            raise ParseError(f"lexical error: unexpected character {c!r}",
                             SourceSpan(lineno, start + 1, 1))
    return tokens


def split_generator_token(token: str) -> tuple[str, Optional[str], bool]:
    """(name, color, dualized) of a generator token.

    A trailing ``^*`` is the dual flag; a ``#`` splits name from color except
    inside tensor names (those contain ``~`` and keep everything as name).
    """
    dualized = token.endswith("^*")
    if dualized:
        token = token[:-2]
    if "~" in token:
        return token, None, dualized
    name, sep, color = token.partition("#")
    return name, (color if sep else None), dualized


class _Parser:
    def __init__(self, text: str):
        self.lines = text.split("\n")

    def parse(self) -> Presentation:
        name = None
        unary: list[Generator] = []
        binary: list[Generator] = []
        relations: list[Relation] = []
        by_token: dict[str, Generator] = {}

        for lineno, raw in enumerate(self.lines, start=1):
            tokens = _lex_line(raw, lineno)
            if not tokens:
                continue
            head = tokens[0]
            if name is None:
                if head.kind != "NAME" or head.text != "operad":
                    raise ParseError("expected 'operad NAME' header", head.span)
                if len(tokens) != 2 or tokens[1].kind != "NAME":
                    raise ParseError("expected a single presentation name",
                                     tokens[-1].span)
                name = tokens[1].text
                continue
            if head.kind == "NAME" and head.text in ("unary", "binary"):
                arity = 1 if head.text == "unary" else 2
                if len(tokens) == 1:
                    raise ParseError("expected generator names", head.span)
                for tok in tokens[1:]:
                    if tok.kind != "NAME":
                        raise ParseError("expected a generator name", tok.span)
                    gname, color, dualized = split_generator_token(tok.text)
                    gen = Generator(gname, arity, color, dualized)
                    if tok.text in by_token:
                        raise ParseError(f"duplicate generator {tok.text}", tok.span)
                    by_token[tok.text] = gen
                    (unary if arity == 1 else binary).append(gen)
                continue
            if head.kind == "NAME" and head.text == "relation":
                relations.append(self._relation(tokens, by_token))
                continue
            raise ParseError(
                "expected 'unary', 'binary' or 'relation'", head.span
            )
        if name is None:
            raise ParseError("empty input: missing 'operad' header", SourceSpan(1, 1, 1))
        return Presentation(name, tuple(unary), tuple(binary), tuple(relations))

    def _relation(self, tokens: list[_Token], by_token: dict[str, Generator]) -> Relation:
        # The relation name is everything up to the colon; built presentations
        # carry color lists like assoc__1,2 there, so commas are allowed.
        pos = 1
        if pos >= len(tokens) or tokens[pos].kind != "NAME":
            raise ParseError("expected a relation name", tokens[min(pos, len(tokens) - 1)].span)
        name_parts = []
        while pos < len(tokens) and tokens[pos].kind != "COLON":
            name_parts.append(tokens[pos].text)
            pos += 1
        rel_name = "".join(name_parts)
        if pos >= len(tokens):
            raise ParseError("expected ':' after the relation name",
                             tokens[len(tokens) - 1].span)
        pos += 1

        terms: list[Term] = []
        sign = Fraction(1)
        first = True
        while pos < len(tokens):
            tok = tokens[pos]
            if first and tok.kind == "MINUS":
                sign = Fraction(-1)
                pos += 1
            elif not first:
                if tok.kind == "PLUS":
                    sign = Fraction(1)
                elif tok.kind == "MINUS":
                    sign = Fraction(-1)
                else:
                    raise ParseError("expected '+' or '-' between terms", tok.span)
                pos += 1
            coeff, pos = self._coefficient(tokens, pos)
            tree, slots, pos = self._expr(tokens, pos, by_token, rel_name)
            terms.append(Term(sign * coeff, tree, tuple(slots)))
            first = False
        if not terms:
            span = tokens[-1].span
            raise ParseError("relation has no terms", span)
        return Relation(rel_name, tuple(terms))

    def _coefficient(self, tokens: list[_Token], pos: int) -> tuple[Fraction, int]:
        if pos < len(tokens) and tokens[pos].kind == "INT":
            num_tok = tokens[pos]
            num = int(num_tok.text)
            pos += 1
            den = 1
            if pos < len(tokens) and tokens[pos].kind == "SLASH":
                pos += 1
                if pos >= len(tokens) or tokens[pos].kind != "INT":
                    raise ParseError("expected a denominator", tokens[pos - 1].span)
                den = int(tokens[pos].text)
                if den == 0:
                    raise ParseError("zero denominator", tokens[pos].span)
                pos += 1
            if pos >= len(tokens) or tokens[pos].kind != "STAR":
                raise ParseError("expected '*' after a coefficient",
                                 tokens[min(pos, len(tokens) - 1)].span)
            pos += 1
            return Fraction(num, den), pos
        return Fraction(1), pos

    def _expr(self, tokens, pos, by_token, rel_name):
        """Parse one term body; returns (tree, slot list, next position)."""
        used_slots: set[int] = set()
        expected_leaf = [1]

        def parse_node(pos: int) -> tuple[Tree, list[int], int]:
            if pos >= len(tokens):
                raise ParseError("unexpected end of relation", tokens[-1].span)
            tok = tokens[pos]
            if tok.kind != "NAME":
                raise ParseError("expected a generator or leaf", tok.span)
            if tok.text[0] == "x" and tok.text[1:].isdigit():
                idx = int(tok.text[1:])
                if idx != expected_leaf[0]:
                    raise ParseError(
                        f"leaf-order violation: expected x{expected_leaf[0]}, got {tok.text}",
                        tok.span,
                    )
                expected_leaf[0] += 1
                return leaf(), [], pos + 1
            gen = by_token.get(tok.text)
            if gen is None:
                raise ParseError(f"unknown generator {tok.text}", tok.span)
            pos += 1
            if pos >= len(tokens) or tokens[pos].kind != "AT":
                raise ParseError(f"missing '@slot' on {tok.text}",
                                 tokens[min(pos, len(tokens) - 1)].span)
            pos += 1
            if pos >= len(tokens) or tokens[pos].kind != "INT":
                raise ParseError("expected a slot index",
                                 tokens[min(pos, len(tokens) - 1)].span)
            slot = int(tokens[pos].text)
            if slot < 1:
                raise ParseError("slot indices start at 1", tokens[pos].span)
            if slot in used_slots:
                raise ParseError(f"slot {slot} reused within a term", tokens[pos].span)
            used_slots.add(slot)
            pos += 1
            if pos >= len(tokens) or tokens[pos].kind != "LPAREN":
                raise ParseError("expected '(' after the slot",
                                 tokens[min(pos, len(tokens) - 1)].span)
            pos += 1
            children = []
            child_slots: list[int] = []
            while True:
                child, slots, pos = parse_node(pos)
                children.append(child)
                child_slots.extend(slots)
                if pos >= len(tokens):
                    raise ParseError("unclosed '('", tokens[-1].span)
                if tokens[pos].kind == "COMMA":
                    pos += 1
                    continue
                if tokens[pos].kind == "RPAREN":
                    pos += 1
                    break
                raise ParseError("expected ',' or ')'", tokens[pos].span)
            if len(children) != gen.arity:
                raise ParseError(
                    f"arity mismatch: {tok.text} takes {gen.arity} arguments, got {len(children)}",
                    tok.span,
                )
            return Tree(gen, tuple(children)), [slot] + child_slots, pos

        return parse_node(pos)


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).parse()


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_term(term: Term) -> str:
    body = tree_text(term.tree, term.slots)
    mag = abs(term.coeff)
    if mag == 1:
        return body
    return f"{_format_coeff(mag)}*{body}"


def _sorted_terms(rel: Relation) -> tuple[Term, ...]:
    return rel.terms  # canonical order is maintained by the Relation type


def serialize(p: Presentation, fmt: str = "dsl") -> str:
    """Deterministic text: declaration-order generators, name-ordered relations,
    canonically ordered terms.  ``fmt`` is "dsl" or "json"."""
    if fmt == "json":
        return json.dumps(presentation_to_json(p), indent=2) + "\n"
    if fmt != "dsl":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"operad {p.name}"]
    if p.unary:
        lines.append("unary " + " ".join(g.serialized() for g in p.unary))
    if p.binary:
        lines.append("binary " + " ".join(g.serialized() for g in p.binary))
    for rel in sorted(p.relations, key=lambda r: r.name):
        parts = []
        for i, term in enumerate(_sorted_terms(rel)):
            rendered = _format_term(term)
            if i == 0:
                parts.append(("-" if term.coeff < 0 else "") + rendered)
            else:
                parts.append(("- " if term.coeff < 0 else "+ ") + rendered)
        lines.append(f"relation {rel.name}: " + " ".join(parts))
    return "\n".join(lines) + "\n"


def presentation_to_json(p: Presentation) -> dict:
    """JSON document with canonical key order; trees rendered in canonical text
    with slots carried separately (one per internal vertex, preorder)."""
    return {
        "name": p.name,
        "unary": [g.serialized() for g in p.unary],
        "binary": [g.serialized() for g in p.binary],
        "relations": [
            {
                "name": rel.name,
                "terms": [
                    {
                        "coeff": _format_coeff(term.coeff),
                        "tree": tree_text(term.tree),
                        "slots": list(term.slots),
                    }
                    for term in _sorted_terms(rel)
                ],
            }
            for rel in sorted(p.relations, key=lambda r: r.name)
        ],
    }

"""Text format for algebra descriptions.

Grammar (one statement per line, '#' starts a comment):

    file     : line*
    stmt     : "algebra" NAME
             | "basis" LABEL+
             | "bracket" LABEL LABEL "=" pair+
             | "grading" NAME "=" ("carnot" LABEL+ | pair+)
    pair     : LABEL ":" RATIONAL
    RATIONAL : "-"? DIGITS ("/" DIGITS)?

The algebra line comes first, then the basis, then any brackets and
gradings.  Rationals round-trip exactly; serialization is canonical
(brackets by basis order, grading weights in basis order), so
parse(serialize(parse(text))) == parse(text).
"""

import re
from dataclasses import dataclass

from .rationals import rat
from .algebra import LieAlgebra, carnot_grading, derivation_grading

_TOKEN = re.compile(r"\S+")


class ParseError(Exception):
    def __init__(self, line, col, message):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class SemanticError(Exception):
    pass


@dataclass(frozen=True)
class GradingDecl:
    """Either a stratified declaration (layer-1 labels) or explicit weights."""

    name: str
    layer1: tuple = None     # carnot form
    weights: tuple = None    # ((label, Rat), ...) explicit form

    def build(self, alg):
        if self.layer1 is not None:
            return carnot_grading(alg, self.layer1)
        return derivation_grading(alg, dict(self.weights))


@dataclass(frozen=True)
class ParsedSpec:
    algebra: LieAlgebra
    grading_decls: tuple

    def grading_names(self):
        return [d.name for d in self.grading_decls]

    def grading(self, name):
        for d in self.grading_decls:
            if d.name == name:
                return d.build(self.algebra)
        raise KeyError(f"no grading named {name!r}; "
                       f"available: {', '.join(self.grading_names()) or 'none'}")

    def gradings(self):
        return {d.name: d.build(self.algebra) for d in self.grading_decls}


def _tokenize(line_text, line_no):
    return [(m.group(), line_no, m.start() + 1) for m in _TOKEN.finditer(line_text)]


def _parse_rational(text, line, col):
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise ParseError(line, col, f"expected a rational, got {text!r}")
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, col, f"bad rational {text!r}") from None


def _parse_pairs(tokens):
    pairs = []
    for text, line, col in tokens:
        if ":" not in text:
            raise ParseError(line, col, f"expected label:rational, got {text!r}")
        label, _, value = text.partition(":")
        if not label:
            raise ParseError(line, col, "empty label before ':'")
        pairs.append((label, _parse_rational(value, line, col + len(label) + 1)))
    return pairs


def parse_spec(text):
    """Parse an algebra description; raises ParseError / SemanticError."""
    name = None
    basis = None
    brackets = []   # ((a, b), pairs, line, col)
    gradings = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("#", 1)[0]
        tokens = _tokenize(code, line_no)
        if not tokens:
            continue
        head, hline, hcol = tokens[0]
        body = tokens[1:]
        if head == "algebra":
            if name is not None:
                raise ParseError(hline, hcol, "duplicate algebra statement")
            if len(body) != 1:
                raise ParseError(hline, hcol, "algebra takes exactly one name")
            name = body[0][0]
        elif head == "basis":
            if name is None:
                raise ParseError(hline, hcol, "basis before algebra statement")
            if basis is not None:
                raise ParseError(hline, hcol, "duplicate basis statement")
            if not body:
                raise ParseError(hline, hcol, "basis needs at least one label")
            basis = [t[0] for t in body]
        elif head == "bracket":
            if basis is None:
                raise ParseError(hline, hcol, "bracket before basis statement")
            if len(body) < 4 or body[2][0] != "=":
                raise ParseError(hline, hcol,
                                 "expected: bracket A B = label:rational ...")
            a, b = body[0][0], body[1][0]
            brackets.append(((a, b), _parse_pairs(body[3:]), hline, hcol))
        elif head == "grading":
            if basis is None:
                raise ParseError(hline, hcol, "grading before basis statement")
            if len(body) < 3 or body[1][0] != "=":
                raise ParseError(hline, hcol,
                                 "expected: grading NAME = carnot L... | label:rational ...")
            gname = body[0][0]
            rest = body[2:]
            if rest[0][0] == "carnot":
                labels = [t[0] for t in rest[1:]]
                if not labels:
                    raise ParseError(rest[0][1], rest[0][2],
                                     "carnot grading needs layer-1 labels")
                gradings.append(GradingDecl(gname, layer1=tuple(labels)))
            else:
                gradings.append(GradingDecl(gname, weights=tuple(_parse_pairs(rest))))
        else:
            raise ParseError(hline, hcol, f"unknown statement {head!r}")
    if name is None:
        raise SemanticError("missing algebra statement")
    if basis is None:
        raise SemanticError("missing basis statement")
    if len(set(basis)) != len(basis):
        dup = sorted({b for b in basis if basis.count(b) > 1})
        raise SemanticError(f"duplicate basis labels: {', '.join(dup)}")
    known = set(basis)
    seen_pairs = set()
    bracket_map = {}
    for (a, b), pairs, line, col in brackets:
        for lab in (a, b):
            if lab not in known:
                raise SemanticError(f"unknown label {lab!r} in bracket")
        key = frozenset((a, b))
        if a == b:
            raise SemanticError(f"bracket [{a},{a}] must be zero")
        if key in seen_pairs:
            raise SemanticError(f"duplicate bracket for ({a},{b})")
        seen_pairs.add(key)
        targets = {}
        for lab, value in pairs:
            if lab not in known:
                raise SemanticError(f"unknown label {lab!r} in bracket value")
            if lab in targets:
                raise SemanticError(f"label {lab!r} repeated in one bracket")
            targets[lab] = value
        bracket_map[(a, b)] = targets
    seen_gradings = set()
    for decl in gradings:
        if decl.name in seen_gradings:
            raise SemanticError(f"duplicate grading name {decl.name!r}")
        seen_gradings.add(decl.name)
        if decl.layer1 is not None:
            for lab in decl.layer1:
                if lab not in known:
                    raise SemanticError(f"unknown label {lab!r} in grading")
        else:
            labels = [lab for lab, _ in decl.weights]
            for lab in labels:
                if lab not in known:
                    raise SemanticError(f"unknown label {lab!r} in grading")
            if len(set(labels)) != len(labels):
                raise SemanticError(f"repeated label in grading {decl.name!r}")
            if set(labels) != known:
                missing = sorted(known - set(labels))
                raise SemanticError(
                    f"grading {decl.name!r} misses weights for: {', '.join(missing)}")
            for lab, w in decl.weights:
                if w <= 0:
                    raise SemanticError(
                        f"weight of {lab!r} in grading {decl.name!r} must be positive")
    alg = LieAlgebra.from_brackets(name, basis, bracket_map)
    return ParsedSpec(alg, tuple(gradings))


def serialize_spec(spec):
    """Canonical text form of a parsed description."""
    alg = spec.algebra
    lines = [f"algebra {alg.name}", "basis " + " ".join(alg.basis)]
    for (i, j) in sorted(alg.brackets):
        targets = alg.brackets[(i, j)]
        pairs = " ".join(f"{alg.basis[k]}:{targets[k]}" for k in sorted(targets))
        lines.append(f"bracket {alg.basis[i]} {alg.basis[j]} = {pairs}")
    order = {lab: i for i, lab in enumerate(alg.basis)}
    for decl in spec.grading_decls:
        if decl.layer1 is not None:
            labs = sorted(decl.layer1, key=order.get)
            lines.append(f"grading {decl.name} = carnot " + " ".join(labs))
        else:
            pairs = sorted(decl.weights, key=lambda lw: order[lw[0]])
            body = " ".join(f"{lab}:{w}" for lab, w in pairs)
            lines.append(f"grading {decl.name} = {body}")
    return "\n".join(lines) + "\n"

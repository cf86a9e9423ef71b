"""Turtle subset for exchanging instance datasets.

Supported syntax: @prefix, prefixed names, the `a` keyword, object lists,
predicate lists, plain and typed literals, and line comments.  Blank nodes,
collections and base-IRI resolution are out of scope.  Serialization is a
pure function of the triple set: prefix declarations sorted by prefix,
subjects sorted, rdf:type first per subject, then predicates and objects
sorted, so equal graphs always produce identical bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import TurtleSyntaxError, UnknownPrefix
from .ontology import (
    Dataset,
    Iri,
    Literal,
    Ontology,
    OWL_THING,
    PREFIXES,
    RDF_TYPE,
)

_XSD_TO_DATATYPE = {
    "string": "string",
    "decimal": "decimal",
    "integer": "decimal",
    "double": "double",
    "float": "double",
    "dateTime": "dateTime",
    "boolean": "boolean",
}


@dataclass(frozen=True, order=True)
class FullIri:
    """An absolute IRI outside the registered namespaces, kept verbatim."""

    value: str

    def __str__(self) -> str:
        return f"<{self.value}>"


Node = Union[Iri, FullIri]
Term = Union[Iri, FullIri, Literal]


def render_term(term: Term) -> str:
    if isinstance(term, Literal):
        lexical = _escape(term.lexical)
        if term.datatype == "string":
            return f'"{lexical}"'
        return f'"{lexical}"^^xsd:{term.datatype}'
    return str(term)


@dataclass(frozen=True)
class Triple:
    subject: Node
    predicate: Node
    object: Term

    def sort_key(self):
        return (
            render_term(self.subject),
            render_term(self.predicate),
            render_term(self.object),
        )


@dataclass
class Graph:
    prefix_decls: dict[str, str] = field(default_factory=dict)
    triples: set[Triple] = field(default_factory=set)

    def add(self, subject: Node, predicate: Node, obj: Term) -> None:
        self.triples.add(Triple(subject, predicate, obj))

    def __len__(self) -> int:
        return len(self.triples)

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples, key=Triple.sort_key)


# -- tokenizer ----------------------------------------------------------------

_NUMBER_RE = re.compile(r"[+-]?(?:\d+\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+|\d+)")
_PNAME_PREFIX_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_LOCAL_CHARS = re.compile(r"[A-Za-z0-9_.\-]")
_ESCAPES = {"t": "\t", "n": "\n", "r": "\r", '"': '"', "\\": "\\"}


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    line: int
    column: int
    extra: str = ""


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str, line: int | None = None, col: int | None = None):
        raise TurtleSyntaxError(line or self.line, col or self.col, message)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos >= len(self.text):
                return
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _peek(self, offset: int = 0) -> str:
        index = self.pos + offset
        return self.text[index] if index < len(self.text) else ""

    def _skip_trivia(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance()
            elif ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def tokens(self) -> list[_Token]:
        out: list[_Token] = []
        while True:
            self._skip_trivia()
            if self.pos >= len(self.text):
                out.append(_Token("EOF", "", self.line, self.col))
                return out
            out.append(self._next_token())

    def _next_token(self) -> _Token:
        line, col = self.line, self.col
        ch = self._peek()
        if ch == ".":
            self._advance()
            return _Token("DOT", ".", line, col)
        if ch == ";":
            self._advance()
            return _Token("SEMI", ";", line, col)
        if ch == ",":
            self._advance()
            return _Token("COMMA", ",", line, col)
        if ch == "^" and self._peek(1) == "^":
            self._advance(2)
            return _Token("DTYPE", "^^", line, col)
        if ch == "@":
            self._advance()
            word = self._read_while(str.isalpha)
            if word == "prefix":
                return _Token("PREFIX", "@prefix", line, col)
            self.error(f"unsupported directive or language tag: @{word}", line, col)
        if ch == "<":
            return self._read_iriref(line, col)
        if ch == '"':
            return self._read_string(line, col)
        if ch.isdigit() or (ch in "+-" and self._peek(1).isdigit()):
            match = _NUMBER_RE.match(self.text, self.pos)
            if not match:
                self.error("malformed number", line, col)
            lexical = match.group(0)
            self._advance(len(lexical))
            return _Token("NUMBER", lexical, line, col)
        if ch.isalpha() or ch == "_" or ch == ":":
            return self._read_name(line, col)
        self.error(f"unexpected character {ch!r}", line, col)
        raise AssertionError("unreachable")

    def _read_while(self, predicate) -> str:
        start = self.pos
        while self.pos < len(self.text) and predicate(self.text[self.pos]):
            self._advance()
        return self.text[start : self.pos]

    def _read_iriref(self, line: int, col: int) -> _Token:
        self._advance()  # '<'
        start = self.pos
        while True:
            if self.pos >= len(self.text):
                self.error("unterminated IRI reference", line, col)
            ch = self.text[self.pos]
            if ch == ">":
                value = self.text[start : self.pos]
                self._advance()
                return _Token("IRIREF", value, line, col)
            if ch in '<"{}|^`' or ch <= " ":
                self.error(f"illegal character in IRI reference: {ch!r}")
            self._advance()

    def _read_string(self, line: int, col: int) -> _Token:
        self._advance()  # opening quote
        chunks: list[str] = []
        while True:
            if self.pos >= len(self.text):
                self.error("unterminated string literal", line, col)
            ch = self.text[self.pos]
            if ch == '"':
                self._advance()
                return _Token("STRING", "".join(chunks), line, col)
            if ch == "\n":
                self.error("newline inside string literal", line, col)
            if ch == "\\":
                self._advance()
                esc = self._peek()
                if esc in _ESCAPES:
                    chunks.append(_ESCAPES[esc])
                    self._advance()
                elif esc in ("u", "U"):
                    width = 4 if esc == "u" else 8
                    self._advance()
                    digits = self.text[self.pos : self.pos + width]
                    if len(digits) < width or any(
                        c not in "0123456789abcdefABCDEF" for c in digits
                    ):
                        self.error("malformed unicode escape")
                    chunks.append(chr(int(digits, 16)))
                    self._advance(width)
                else:
                    self.error(f"unknown escape sequence: \\{esc}")
            else:
                chunks.append(ch)
                self._advance()

    def _read_name(self, line: int, col: int) -> _Token:
        prefix = ""
        match = _PNAME_PREFIX_RE.match(self.text, self.pos)
        if match:
            prefix = match.group(0)
            self._advance(len(prefix))
        if self._peek() != ":":
            if prefix in ("a", "true", "false"):
                return _Token("WORD", prefix, line, col)
            self.error(f"unexpected token {prefix!r}", line, col)
        self._advance()  # ':'
        start = self.pos
        while self.pos < len(self.text) and _LOCAL_CHARS.match(self.text[self.pos]):
            self._advance()
        local = self.text[start : self.pos]
        # a trailing dot belongs to the statement, not the name
        while local.endswith("."):
            local = local[:-1]
            self.pos -= 1
            self.col -= 1
        return _Token("PNAME", prefix, line, col, extra=local)


# -- parser -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = _Tokenizer(text).tokens()
        self.index = 0
        self.graph = Graph()

    def _peek(self) -> _Token:
        return self.tokens[self.index]

    def _next(self) -> _Token:
        token = self.tokens[self.index]
        if token.kind != "EOF":
            self.index += 1
        return token

    def _expect(self, kind: str, what: str) -> _Token:
        token = self._next()
        if token.kind != kind:
            raise TurtleSyntaxError(
                token.line, token.column, f"expected {what}, found {token.value!r}"
            )
        return token

    def parse(self) -> Graph:
        while True:
            token = self._peek()
            if token.kind == "EOF":
                return self.graph
            if token.kind == "PREFIX":
                self._parse_prefix_decl()
            else:
                self._parse_triples()

    def _parse_prefix_decl(self) -> None:
        self._next()  # @prefix
        name = self._expect("PNAME", "a prefix name")
        if name.extra:
            raise TurtleSyntaxError(
                name.line, name.column, "prefix declaration must end with ':'"
            )
        iriref = self._expect("IRIREF", "an IRI reference")
        self._expect("DOT", "'.'")
        self.graph.prefix_decls[name.value] = iriref.value

    def _parse_triples(self) -> None:
        subject = self._parse_node("subject")
        while True:
            predicate = self._parse_verb()
            while True:
                obj = self._parse_object()
                self.graph.add(subject, predicate, obj)
                if self._peek().kind == "COMMA":
                    self._next()
                    continue
                break
            token = self._peek()
            if token.kind == "SEMI":
                self._next()
                if self._peek().kind == "DOT":
                    break
                continue
            break
        self._expect("DOT", "'.'")

    def _parse_verb(self) -> Node:
        token = self._peek()
        if token.kind == "WORD" and token.value == "a":
            self._next()
            return RDF_TYPE
        return self._parse_node("predicate")

    def _parse_node(self, role: str) -> Node:
        token = self._next()
        if token.kind == "IRIREF":
            return compress_iri(token.value)
        if token.kind == "PNAME":
            return self._resolve_pname(token)
        raise TurtleSyntaxError(
            token.line, token.column, f"expected an IRI as {role}, found {token.value!r}"
        )

    def _parse_object(self) -> Term:
        token = self._peek()
        if token.kind == "STRING":
            return self._parse_literal()
        if token.kind == "NUMBER":
            self._next()
            datatype = "double" if "e" in token.value.lower() else "decimal"
            return Literal(token.value, datatype)
        if token.kind == "WORD" and token.value in ("true", "false"):
            self._next()
            return Literal(token.value, "boolean")
        return self._parse_node("object")

    def _parse_literal(self) -> Literal:
        token = self._next()
        datatype = "string"
        if self._peek().kind == "DTYPE":
            self._next()
            dt_token = self._next()
            dt_iri: Node
            if dt_token.kind == "PNAME":
                dt_iri = self._resolve_pname(dt_token)
            elif dt_token.kind == "IRIREF":
                dt_iri = compress_iri(dt_token.value)
            else:
                raise TurtleSyntaxError(
                    dt_token.line, dt_token.column, "expected a datatype IRI after ^^"
                )
            if (
                not isinstance(dt_iri, Iri)
                or dt_iri.prefix != "xsd"
                or dt_iri.local not in _XSD_TO_DATATYPE
            ):
                raise TurtleSyntaxError(
                    dt_token.line,
                    dt_token.column,
                    f"unsupported literal datatype: {dt_iri}",
                )
            datatype = _XSD_TO_DATATYPE[dt_iri.local]
        try:
            return Literal(token.value, datatype)
        except ValueError as exc:
            raise TurtleSyntaxError(token.line, token.column, str(exc)) from None

    def _resolve_pname(self, token: _Token) -> Node:
        prefix, local = token.value, token.extra
        declared = self.graph.prefix_decls
        if prefix not in declared and prefix not in PREFIXES:
            raise UnknownPrefix(
                token.line, token.column, f"undeclared prefix: {prefix!r}"
            )
        if prefix not in declared:
            raise UnknownPrefix(
                token.line,
                token.column,
                f"prefix {prefix!r} must be declared with @prefix",
            )
        if prefix in PREFIXES:
            try:
                return Iri(prefix, local)
            except ValueError as exc:
                raise TurtleSyntaxError(token.line, token.column, str(exc)) from None
        return FullIri(declared[prefix] + local)


def compress_iri(full: str) -> Node:
    """Fold an absolute IRI into a registered prefixed name where possible."""
    best: tuple[str, str] | None = None
    for prefix, expansion in PREFIXES.items():
        if full.startswith(expansion):
            if best is None or len(expansion) > len(PREFIXES[best[0]]):
                best = (prefix, full[len(expansion) :])
    if best is not None:
        try:
            return Iri(best[0], best[1])
        except ValueError:
            pass
    return FullIri(full)


def parse_turtle(text: str) -> Graph:
    """Parse Turtle text; malformed input raises TurtleSyntaxError."""
    return _Parser(text).parse()


def _escape(text: str) -> str:
    return (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )


def _used_prefixes(triples: Iterable[Triple]) -> list[str]:
    used: set[str] = set()
    for triple in triples:
        for term in (triple.subject, triple.predicate, triple.object):
            if isinstance(term, Iri):
                if term == RDF_TYPE:
                    continue  # rendered as 'a'
                used.add(term.prefix)
            elif isinstance(term, Literal) and term.datatype != "string":
                used.add("xsd")
    return sorted(used)


def serialize_turtle(graph: Graph) -> str:
    """Deterministic text form; depends only on the triple set."""
    triples = graph.sorted_triples()
    lines = [f"@prefix {p}: <{PREFIXES[p]}> ." for p in _used_prefixes(triples)]
    by_subject: dict[str, list[Triple]] = {}
    for triple in triples:
        by_subject.setdefault(render_term(triple.subject), []).append(triple)
    blocks: list[str] = []
    for subject_text in sorted(by_subject):
        group = by_subject[subject_text]
        types = sorted(
            (render_term(t.object) for t in group if t.predicate == RDF_TYPE)
        )
        others: dict[str, list[str]] = {}
        for triple in group:
            if triple.predicate == RDF_TYPE:
                continue
            others.setdefault(render_term(triple.predicate), []).append(
                render_term(triple.object)
            )
        parts: list[str] = []
        if types:
            parts.append("a " + " , ".join(types))
        for predicate_text in sorted(others):
            objects = " , ".join(sorted(others[predicate_text]))
            parts.append(f"{predicate_text} {objects}")
        blocks.append(subject_text + " " + " ;\n    ".join(parts) + " .")
    sections = []
    if lines:
        sections.append("\n".join(lines))
    if blocks:
        sections.append("\n\n".join(blocks))
    if not sections:
        return ""
    return "\n\n".join(sections) + "\n"


# -- dataset mapping ----------------------------------------------------------


@dataclass(frozen=True)
class ImportIssue:
    """Non-fatal finding while mapping a graph onto a dataset."""

    kind: str  # UnknownClass | UnknownProperty | UntypedSubject | ForeignTerm | BadAssertion
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.subject}: {self.detail}"


def dataset_from_graph(graph: Graph, ontology: Ontology) -> tuple[Dataset, list[ImportIssue]]:
    """Map rdf:type triples to types and the rest to assertions.

    Unknown classes/properties are reported as issues, never silently
    dropped; subjects left without a usable type fall back to owl:Thing.
    """
    ds = Dataset(ontology)
    issues: list[ImportIssue] = []
    triples = graph.sorted_triples()

    types_by_subject: dict[Iri, list[Iri]] = {}
    subjects_in_order: list[Iri] = []
    for triple in triples:
        if triple.predicate != RDF_TYPE:
            continue
        if not isinstance(triple.subject, Iri):
            issues.append(
                ImportIssue(
                    "ForeignTerm",
                    render_term(triple.subject),
                    "subject outside the registered namespaces was skipped",
                )
            )
            continue
        subject = triple.subject
        if subject not in types_by_subject:
            types_by_subject[subject] = []
            subjects_in_order.append(subject)
        obj = triple.object
        if isinstance(obj, Iri) and ontology.has_class(obj):
            types_by_subject[subject].append(ontology.resolve_class(obj))
        else:
            issues.append(
                ImportIssue("UnknownClass", str(subject), f"unknown class {render_term(obj)}")
            )

    for subject in subjects_in_order:
        types = types_by_subject[subject]
        ind = ds.mint_individual(types[0] if types else OWL_THING, subject)
        for extra in types[1:]:
            ds.add_type(ind, extra)

    for triple in triples:
        if triple.predicate == RDF_TYPE:
            continue
        if not isinstance(triple.subject, Iri):
            issues.append(
                ImportIssue(
                    "ForeignTerm",
                    render_term(triple.subject),
                    "subject outside the registered namespaces was skipped",
                )
            )
            continue
        subject = triple.subject
        ind = ds.get(subject)
        if ind is None:
            ind = ds.mint_individual(OWL_THING, subject)
            issues.append(
                ImportIssue("UntypedSubject", str(subject), "subject has no rdf:type")
            )
        predicate = triple.predicate
        if not isinstance(predicate, Iri) or not ontology.has_property(predicate):
            issues.append(
                ImportIssue(
                    "UnknownProperty",
                    str(subject),
                    f"unknown property {render_term(predicate)}",
                )
            )
            continue
        pdef = ontology.property_def(predicate)
        obj = triple.object
        if pdef.kind == "data":
            if isinstance(obj, Literal):
                ds.assert_statement(ind, predicate, obj)
            else:
                issues.append(
                    ImportIssue(
                        "BadAssertion",
                        str(subject),
                        f"{predicate} expects a literal, found {render_term(obj)}",
                    )
                )
        else:
            if isinstance(obj, Iri):
                ds.assert_statement(ind, predicate, obj)
            elif isinstance(obj, FullIri):
                issues.append(
                    ImportIssue(
                        "ForeignTerm",
                        str(subject),
                        f"{predicate} target outside the registered namespaces",
                    )
                )
            else:
                issues.append(
                    ImportIssue(
                        "BadAssertion",
                        str(subject),
                        f"{predicate} expects an individual, found {render_term(obj)}",
                    )
                )
    return ds, issues


def graph_from_dataset(ds: Dataset, ontology: Ontology) -> Graph:
    """Inverse of dataset_from_graph up to triple-set equality."""
    graph = Graph()
    for ind in ds:
        for class_iri in sorted(ind.types, key=str):
            graph.add(ind.iri, RDF_TYPE, class_iri)
        for prop, target in sorted(ind.object_assertions, key=lambda p: (str(p[0]), str(p[1]))):
            graph.add(ind.iri, prop, target)
        for prop, literal in sorted(ind.data_assertions, key=lambda p: (str(p[0]), p[1])):
            graph.add(ind.iri, prop, literal)
    for prefix in _used_prefixes(graph.triples):
        graph.prefix_decls[prefix] = PREFIXES[prefix]
    return graph


__all__ = [
    "FullIri",
    "Graph",
    "ImportIssue",
    "Triple",
    "compress_iri",
    "dataset_from_graph",
    "graph_from_dataset",
    "parse_turtle",
    "render_term",
    "serialize_turtle",
]

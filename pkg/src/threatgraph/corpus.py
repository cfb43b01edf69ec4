"""Operation alphabet and the attack-vector expression DSL.

An attack vector is a finite regular expression over named system-level
operations: atoms compose with ``.`` (sequence) and ``+`` (alternative),
``.`` binding tighter than ``+``.  There is deliberately no repetition
operator, so every expression denotes a finite set of operation sequences.

Atoms are snake_case operation ids declared in an operation table.  The
legacy annotated form ``ch_i(Some Description)`` is also accepted and is
normalized to the snake_case id of the description.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DslSyntaxError, EmptyGroup, MalformedInput, UnknownOperation
from .features import (
    DOMAIN_FEATURE_INDEX,
    DOMAIN_TAGS,
    FEATURE_COUNT,
    FEATURE_INDEX,
    FEATURE_NAMES,
    HEAD_INDEX,
    TAIL_INDEX,
)

_ID_RE = re.compile(r"[a-z][a-z0-9_]*")


@dataclass(frozen=True)
class OperationDef:
    """One alphabet character: a named system-level operation.

    ``features`` is the full 19-position attribute vector; the head/tail
    positions are always zero here because they are graph-positional.
    """

    id: str
    display_name: str
    features: tuple[int, ...]
    domains: frozenset[str]
    description: str = ""

    def __post_init__(self) -> None:
        if not _ID_RE.fullmatch(self.id):
            raise MalformedInput(f"invalid operation id {self.id!r}")
        if len(self.features) != FEATURE_COUNT:
            raise MalformedInput(
                f"operation {self.id!r} has {len(self.features)} features, "
                f"expected {FEATURE_COUNT}"
            )
        unknown = self.domains - set(DOMAIN_TAGS)
        if unknown:
            raise MalformedInput(f"operation {self.id!r} has unknown domains {sorted(unknown)}")


# --- expression AST -------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    op: str


@dataclass(frozen=True)
class Concat:
    parts: tuple["Expr", ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise MalformedInput("concatenation needs at least two parts")


@dataclass(frozen=True)
class Union:
    options: tuple["Expr", ...]

    def __post_init__(self) -> None:
        if len(self.options) < 2:
            raise MalformedInput("union needs at least two options")


Expr = Atom | Concat | Union


def snake_case(text: str) -> str:
    """Normalize free text to a stable operation id."""
    out = re.sub(r"[^a-z0-9]+", "_", text.lower()).strip("_")
    return out


# --- tokenizer / recursive-descent parser ---------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ch>ch_[a-z0-9]+\s*\((?P<desc>[^()]*)\))"
    r"|(?P<ident>[a-z][a-z0-9_]*)"
    r"|(?P<op>[.+()]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'atom', '.', '+', '(', ')', 'end'
    value: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise DslSyntaxError(at, ("operation id", "'.'", "'+'", "'('", "')'"), stripped[0])
        if match.group("ch") is not None:
            tokens.append(_Token("atom", snake_case(match.group("desc")), match.start("ch")))
        elif match.group("ident") is not None:
            tokens.append(_Token("atom", match.group("ident"), match.start("ident")))
        else:
            op = match.group("op")
            tokens.append(_Token(op, op, match.start("op")))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.current
        self.index += 1
        return token

    def parse(self) -> Expr:
        expr = self.union()
        if self.current.kind != "end":
            raise DslSyntaxError(self.current.position, ("'.'", "'+'", "end of input"), self.current.value)
        return expr

    def union(self) -> Expr:
        options = [self.concat()]
        while self.current.kind == "+":
            self.advance()
            options.append(self.concat())
        if len(options) == 1:
            return options[0]
        flattened: list[Expr] = []
        for option in options:
            if isinstance(option, Union):
                flattened.extend(option.options)
            else:
                flattened.append(option)
        return Union(tuple(flattened))

    def concat(self) -> Expr:
        parts = [self.factor()]
        while self.current.kind == ".":
            self.advance()
            parts.append(self.factor())
        if len(parts) == 1:
            return parts[0]
        flattened: list[Expr] = []
        for part in parts:
            if isinstance(part, Concat):
                flattened.extend(part.parts)
            else:
                flattened.append(part)
        return Concat(tuple(flattened))

    def factor(self) -> Expr:
        token = self.current
        if token.kind == "atom":
            self.advance()
            return Atom(token.value)
        if token.kind == "(":
            open_pos = token.position
            self.advance()
            if self.current.kind == ")":
                raise EmptyGroup(open_pos)
            inner = self.union()
            if self.current.kind != ")":
                raise DslSyntaxError(self.current.position, ("')'",), self.current.value or "end of input")
            self.advance()
            return inner
        raise DslSyntaxError(token.position, ("operation id", "'('"), token.value or "end of input")


def parse_expression(text: str, ops: dict[str, OperationDef] | None = None) -> Expr:
    """Parse DSL text into a flattened AST.

    When an operation table is supplied, every atom must be declared in it.
    """
    if not text.strip():
        raise DslSyntaxError(0, ("operation id", "'('"), "end of input")
    expr = _Parser(_tokenize(text)).parse()
    if ops is not None:
        for atom in iter_atoms(expr):
            if atom not in ops:
                raise UnknownOperation(atom)
    return expr


def iter_atoms(expr: Expr):
    """Yield atom ids in in-order traversal (with repetition)."""
    if isinstance(expr, Atom):
        yield expr.op
    elif isinstance(expr, Concat):
        for part in expr.parts:
            yield from iter_atoms(part)
    else:
        for option in expr.options:
            yield from iter_atoms(option)


def unparse(expr: Expr) -> str:
    """Serialize to canonical text: sorted unions, minimal parentheses."""
    if isinstance(expr, Atom):
        return expr.op
    if isinstance(expr, Concat):
        rendered = []
        for part in expr.parts:
            text = unparse(part)
            if isinstance(part, Union):
                text = f"({text})"
            rendered.append(text)
        return " . ".join(rendered)
    rendered = []
    for option in expr.options:
        text = unparse(option)
        if isinstance(option, Concat):
            text = f"({text})"
        rendered.append(text)
    return " + ".join(sorted(rendered))


def canonicalize(expr: Expr) -> Expr:
    """Flatten nested same-kind nodes and sort union options."""
    if isinstance(expr, Atom):
        return expr
    if isinstance(expr, Concat):
        parts: list[Expr] = []
        for part in expr.parts:
            part = canonicalize(part)
            if isinstance(part, Concat):
                parts.extend(part.parts)
            else:
                parts.append(part)
        return Concat(tuple(parts))
    options: list[Expr] = []
    for option in expr.options:
        option = canonicalize(option)
        if isinstance(option, Union):
            options.extend(option.options)
        else:
            options.append(option)
    options.sort(key=unparse)
    return Union(tuple(options))


def language_size(expr: Expr) -> int:
    """Structural count of operation sequences: unions add, sequences multiply."""
    if isinstance(expr, Atom):
        return 1
    if isinstance(expr, Concat):
        size = 1
        for part in expr.parts:
            size *= language_size(part)
        return size
    return sum(language_size(option) for option in expr.options)


def enumerate_language(expr: Expr) -> list[tuple[str, ...]]:
    """All operation sequences of the expression, with multiplicity.

    Independent of :func:`language_size`: recursion over union choices with
    explicit cartesian products, used as the counting oracle in tests.
    """
    if isinstance(expr, Atom):
        return [(expr.op,)]
    if isinstance(expr, Union):
        sequences: list[tuple[str, ...]] = []
        for option in expr.options:
            sequences.extend(enumerate_language(option))
        return sequences
    sequences = [()]
    for part in expr.parts:
        part_sequences = enumerate_language(part)
        sequences = [prefix + suffix for prefix in sequences for suffix in part_sequences]
    return sequences


# --- corpus files ----------------------------------------------------------

@dataclass(frozen=True)
class AttackVector:
    name: str
    domain: str
    expr: Expr


@dataclass(frozen=True)
class CorpusFile:
    operations: tuple[OperationDef, ...]
    vectors: tuple[AttackVector, ...]
    version: str = "1"

    def operation_table(self) -> dict[str, OperationDef]:
        return {op.id: op for op in self.operations}


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # 'error' | 'warning'
    message: str


@dataclass
class ValidationReport:
    issues: list[ValidationIssue] = field(default_factory=list)

    @property
    def errors(self) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, message: str) -> None:
        self.issues.append(ValidationIssue("error", message))

    def warning(self, message: str) -> None:
        self.issues.append(ValidationIssue("warning", message))


_OP_LINE_RE = re.compile(
    r'^op\s+(?P<id>\S+)\s+"(?P<name>[^"]*)"'
    r"(?:\s+features=(?P<features>\S*))?"
    r"(?:\s+domains=(?P<domains>\S+))?\s*$"
)
_VECTOR_SECTION_RE = re.compile(r"^\[vectors\s+domain=(?P<domain>\S+)\]$")
_VECTOR_LINE_RE = re.compile(r"^vector\s+(?P<name>\S+)\s*:\s*(?P<expr>.+)$")


def load_corpus(text: str) -> CorpusFile:
    """Parse a corpus file.

    Raises :class:`MalformedInput` on structural problems.  Dangling atom
    references and attribute inconsistencies are left to
    :func:`validate_corpus`, which reports instead of raising.
    """
    operations: list[OperationDef] = []
    vectors: list[AttackVector] = []
    version = "1"
    section: str | None = None
    section_domain: str | None = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("version "):
            version = line.split(None, 1)[1].strip()
            continue
        if line == "[ops]":
            section = "ops"
            continue
        section_match = _VECTOR_SECTION_RE.match(line)
        if section_match:
            section = "vectors"
            section_domain = section_match.group("domain")
            if section_domain not in DOMAIN_TAGS:
                raise MalformedInput(f"line {line_no}: unknown domain tag {section_domain!r}")
            continue
        if section == "ops":
            match = _OP_LINE_RE.match(line)
            if not match:
                raise MalformedInput(f"line {line_no}: malformed op line: {line!r}")
            features = [0] * FEATURE_COUNT
            feature_text = match.group("features") or ""
            for name in filter(None, feature_text.split(",")):
                if name not in FEATURE_INDEX:
                    raise MalformedInput(f"line {line_no}: unknown feature name {name!r}")
                features[FEATURE_INDEX[name]] = 1
            domain_text = match.group("domains") or ""
            domains = frozenset(filter(None, domain_text.split(",")))
            operations.append(
                OperationDef(
                    id=match.group("id"),
                    display_name=match.group("name"),
                    features=tuple(features),
                    domains=domains,
                )
            )
            continue
        if section == "vectors":
            match = _VECTOR_LINE_RE.match(line)
            if not match:
                raise MalformedInput(f"line {line_no}: malformed vector line: {line!r}")
            try:
                expr = parse_expression(match.group("expr"))
            except (DslSyntaxError, EmptyGroup) as exc:
                raise MalformedInput(f"line {line_no}: {exc}") from exc
            assert section_domain is not None
            vectors.append(AttackVector(match.group("name"), section_domain, expr))
            continue
        raise MalformedInput(f"line {line_no}: content outside any section: {line!r}")

    return CorpusFile(tuple(operations), tuple(vectors), version)


def validate_corpus(corpus: CorpusFile) -> ValidationReport:
    """Check referential and attribute consistency; never raises."""
    report = ValidationReport()
    table: dict[str, OperationDef] = {}
    for op in corpus.operations:
        if op.id in table:
            report.error(f"duplicate operation id {op.id!r}")
            continue
        table[op.id] = op
        for domain in DOMAIN_TAGS:
            bit = op.features[DOMAIN_FEATURE_INDEX[domain]]
            declared = domain in op.domains
            if bit and not declared:
                report.warning(
                    f"operation {op.id!r} sets the {domain} feature but does not list the domain"
                )
            elif declared and not bit:
                report.warning(
                    f"operation {op.id!r} lists domain {domain} but does not set its feature"
                )
        if any(op.features[i] for i in (HEAD_INDEX, HEAD_INDEX + 1)):
            report.warning(
                f"operation {op.id!r} sets a positional head/tail feature, which is ignored"
            )

    vector_names: set[tuple[str, str]] = set()
    for vector in corpus.vectors:
        key = (vector.domain, vector.name)
        if key in vector_names:
            report.error(f"duplicate vector name {vector.name!r} in domain {vector.domain}")
        vector_names.add(key)
        if vector.domain not in DOMAIN_TAGS:
            report.error(f"vector {vector.name!r} has unknown domain {vector.domain!r}")
        for atom in set(iter_atoms(vector.expr)):
            op = table.get(atom)
            if op is None:
                report.error(f"vector {vector.name!r} references unknown operation {atom!r}")
            elif vector.domain not in op.domains:
                report.error(
                    f"vector {vector.name!r} ({vector.domain}) uses operation {atom!r} "
                    f"which is not declared for that domain"
                )
    return report


def dump_corpus(corpus: CorpusFile) -> str:
    """Render a corpus back to its file format (canonical expression text)."""
    lines = [f"version {corpus.version}", "", "[ops]"]
    for op in corpus.operations:
        feature_names = [FEATURE_NAMES[i] for i, bit in enumerate(op.features) if bit]
        parts = [f'op {op.id} "{op.display_name}"']
        if feature_names:
            parts.append("features=" + ",".join(feature_names))
        if op.domains:
            parts.append("domains=" + ",".join(sorted(op.domains)))
        lines.append(" ".join(parts))
    for domain in DOMAIN_TAGS:
        domain_vectors = [v for v in corpus.vectors if v.domain == domain]
        if not domain_vectors:
            continue
        lines.append("")
        lines.append(f"[vectors domain={domain}]")
        for vector in domain_vectors:
            lines.append(f"vector {vector.name}: {unparse(vector.expr)}")
    return "\n".join(lines) + "\n"


__all__ = [
    "Atom",
    "AttackVector",
    "Concat",
    "CorpusFile",
    "Expr",
    "OperationDef",
    "Union",
    "ValidationIssue",
    "ValidationReport",
    "canonicalize",
    "dump_corpus",
    "enumerate_language",
    "iter_atoms",
    "language_size",
    "load_corpus",
    "parse_expression",
    "snake_case",
    "unparse",
    "validate_corpus",
]

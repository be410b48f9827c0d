"""Parser for the JAPE subset understood by the transducer.

A grammar file looks like::

    Input: Token
    Options: control = appelt

    Rule: PluralSingularPair
    Priority: 20
    (
      { Token.category =~ "^A.p" }
      { Token.category =~ "^N..s" }
    ): pair
    -->
    :pair.PSAgrError = { rule = "PluralSingularPair" }

Supported on the left-hand side: brace groups holding comma-separated
constraints (``Type``, ``Type.feat == "v"``, ``Type.feat =~ "re"``),
parenthesized groups with ``|`` alternatives, quantifiers ``? * +`` and
``: label`` bindings. Right-hand sides only create annotations with literal
feature values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import ParseError

APPELT, ALL = "appelt", "all"
CONTROLS = (APPELT, ALL)

ONE, OPTIONAL, STAR, PLUS = "one", "optional", "star", "plus"
_QUANT_SUFFIX = {"?": OPTIONAL, "*": STAR, "+": PLUS}
_SUFFIX_OF = {v: k for k, v in _QUANT_SUFFIX.items()}

EXISTS, EQUALS, REGEX = "exists", "equals", "regex"


@dataclass(frozen=True)
class Constraint:
    ann_type: str
    feature: str | None = None
    op: str = EXISTS
    value: str = ""
    compiled: re.Pattern | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if (self.op == EXISTS) != (self.feature is None):
            raise ValueError("a feature test needs an operator and vice versa")
        if self.op == REGEX and self.compiled is None:
            object.__setattr__(self, "compiled", compile_regex(self.value))

    def test(self, ann) -> bool:
        if ann.type != self.ann_type:
            return False
        if self.op == EXISTS:
            return True
        value = ann.features.get(self.feature)
        if value is None:
            return False
        if self.op == EQUALS:
            return value == self.value
        return self.compiled.search(value) is not None

    def source(self) -> str:
        if self.op == EXISTS:
            return self.ann_type
        op = "==" if self.op == EQUALS else "=~"
        return f"{self.ann_type}.{self.feature} {op} {_quote(self.value)}"


def compile_regex(source: str) -> re.Pattern:
    # '.' must match any character, newline included
    return re.compile(source, re.DOTALL)


@dataclass(frozen=True)
class Element:
    """One brace group: a conjunction of constraints on a single annotation."""

    constraints: tuple[Constraint, ...]
    quantifier: str = ONE
    label: str | None = None

    def test(self, ann) -> bool:
        return all(c.test(ann) for c in self.constraints)


@dataclass(frozen=True)
class Group:
    """Parenthesized sub-pattern; several alternatives when written with ``|``."""

    alternatives: tuple[tuple["Node", ...], ...]
    quantifier: str = ONE
    label: str | None = None


Node = Union[Element, Group]


@dataclass(frozen=True)
class Action:
    label: str
    new_type: str
    features: tuple[tuple[str, str], ...] = ()

    def feature_map(self) -> dict[str, str]:
        return dict(self.features)


@dataclass(frozen=True)
class Rule:
    name: str
    pattern: tuple[Node, ...]
    actions: tuple[Action, ...]
    priority: int = 0
    line: int = field(default=0, compare=False)

    @property
    def elements(self) -> list[Element]:
        return list(iter_elements(self.pattern))

    @property
    def labels(self) -> list[str]:
        return list(_iter_labels(self.pattern))

    def is_quantifier_free(self) -> bool:
        return all(q == ONE for q in _iter_quantifiers(self.pattern))


@dataclass(frozen=True)
class Grammar:
    input_types: tuple[str, ...]
    rules: tuple[Rule, ...] = ()
    control: str = APPELT
    phase: str | None = None

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def with_control(self, control: str) -> "Grammar":
        if control not in CONTROLS:
            raise ValueError(f"unknown control style {control!r}")
        return Grammar(self.input_types, self.rules, control, self.phase)

    def to_source(self) -> str:
        return format_grammar(self)


def iter_elements(nodes) -> Iterator[Element]:
    for node in nodes:
        if isinstance(node, Element):
            yield node
        else:
            for alt in node.alternatives:
                yield from iter_elements(alt)


def _iter_nodes(nodes) -> Iterator[Node]:
    for node in nodes:
        yield node
        if isinstance(node, Group):
            for alt in node.alternatives:
                yield from _iter_nodes(alt)


def _iter_labels(nodes) -> Iterator[str]:
    for node in _iter_nodes(nodes):
        if node.label:
            yield node.label


def _iter_quantifiers(nodes) -> Iterator[str]:
    for node in _iter_nodes(nodes):
        yield node.quantifier


# ---------------------------------------------------------------- lexer

_PUNCT = ("-->", "=~", "==", "(", ")", "{", "}", ":", ".", ",", "=", "?", "*", "+", "|")
_IDENT_RE = re.compile(r"[^\W\d]\w*")
_INT_RE = re.compile(r"[+-]?\d+")


@dataclass(frozen=True)
class _Tok:
    kind: str  # ident | string | int | punct | eof
    text: str
    line: int


def _lex(source: str, name: str | None) -> list[_Tok]:
    toks: list[_Tok] = []
    i, line, n = 0, 1, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            i += 1
        elif ch.isspace():
            i += 1
        elif source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
        elif source.startswith("/*", i):
            end = source.find("*/", i + 2)
            if end < 0:
                raise ParseError("unterminated comment", line, name)
            line += source.count("\n", i, end)
            i = end + 2
        elif ch == '"':
            start_line = line
            buf = []
            i += 1
            while True:
                if i >= n or source[i] == "\n":
                    raise ParseError("unterminated string", start_line, name)
                c = source[i]
                if c == "\\" and i + 1 < n:
                    buf.append(source[i + 1] if source[i + 1] in '"\\' else c + source[i + 1])
                    i += 2
                elif c == '"':
                    i += 1
                    break
                else:
                    buf.append(c)
                    i += 1
            toks.append(_Tok("string", "".join(buf), start_line))
        elif source.startswith("-->", i):
            toks.append(_Tok("punct", "-->", line))
            i += 3
        elif (m := _INT_RE.match(source, i)) and (ch.isdigit() or m.end() > i + 1):
            toks.append(_Tok("int", m.group(), line))
            i = m.end()
        elif m := _IDENT_RE.match(source, i):
            toks.append(_Tok("ident", m.group(), line))
            i = m.end()
        else:
            for p in _PUNCT:
                if source.startswith(p, i):
                    toks.append(_Tok("punct", p, line))
                    i += len(p)
                    break
            else:
                raise ParseError(f"unexpected character {ch!r}", line, name)
    toks.append(_Tok("eof", "", line))
    return toks


# ---------------------------------------------------------------- parser

_HEADER_DIRECTIVES = ("Input", "Options", "Phase")


class _Parser:
    def __init__(self, source: str, name: str | None):
        self.name = name
        self.toks = _lex(source, name)
        self.pos = 0

    # token helpers
    def peek(self, offset: int = 0) -> _Tok:
        return self.toks[min(self.pos + offset, len(self.toks) - 1)]

    def next(self) -> _Tok:
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Tok | None = None) -> ParseError:
        return ParseError(message, (tok or self.peek()).line, self.name)

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    def expect_punct(self, text: str, what: str | None = None) -> _Tok:
        tok = self.peek()
        if not (tok.kind == "punct" and tok.text == text):
            raise self.error(f"expected {what or repr(text)}, found {_describe(tok)}")
        return self.next()

    def expect_ident(self, what: str) -> _Tok:
        tok = self.peek()
        if tok.kind != "ident":
            raise self.error(f"expected {what}, found {_describe(tok)}")
        return self.next()

    def at_directive(self, name: str | None = None) -> bool:
        tok, colon = self.peek(), self.peek(1)
        return (
            tok.kind == "ident"
            and colon.kind == "punct"
            and colon.text == ":"
            and (name is None or tok.text == name)
        )

    # grammar
    def parse(self) -> Grammar:
        input_types: list[str] = []
        control = APPELT
        phase = None
        seen_input = False
        while self.at_directive() and self.peek().text != "Rule":
            tok = self.next()
            self.next()  # ':'
            if tok.text == "Input":
                if seen_input:
                    raise self.error("duplicate Input declaration", tok)
                seen_input = True
                while self.peek().kind == "ident" and self.peek().line == tok.line:
                    input_types.append(self.next().text)
                if not input_types:
                    raise self.error("Input needs at least one annotation type", tok)
            elif tok.text == "Options":
                control = self.parse_options(tok)
            elif tok.text == "Phase":
                phase = self.expect_ident("phase name").text
            else:
                raise self.error(f"unknown directive {tok.text!r}", tok)
        if not seen_input:
            raise self.error("grammar must start with an 'Input:' declaration")

        rules: list[Rule] = []
        names: set[str] = set()
        while self.peek().kind != "eof":
            if not self.at_directive():
                raise self.error(f"expected 'Rule:', found {_describe(self.peek())}")
            if self.peek().text != "Rule":
                raise self.error(f"unknown directive {self.peek().text!r}")
            rule = self.parse_rule(set(input_types))
            if rule.name in names:
                raise ParseError(f"duplicate rule name {rule.name!r}", rule.line, self.name)
            names.add(rule.name)
            rules.append(rule)
        return Grammar(tuple(input_types), tuple(rules), control, phase)

    def parse_options(self, directive: _Tok) -> str:
        control = APPELT
        while True:
            key = self.expect_ident("option name")
            self.expect_punct("=")
            value = self.next()
            if value.kind not in ("ident", "string"):
                raise self.error(f"bad value for option {key.text!r}", value)
            if key.text != "control":
                raise self.error(f"unknown option {key.text!r}", key)
            if value.text not in CONTROLS:
                raise self.error(f"unknown control style {value.text!r} (expected appelt or all)", value)
            control = value.text
            if not self.at_punct(","):
                return control
            self.next()

    def parse_rule(self, input_types: set[str]) -> Rule:
        rule_tok = self.next()
        self.next()  # ':'
        name = self.expect_ident("rule name").text
        priority = 0
        if self.at_directive("Priority"):
            self.next()
            self.next()
            tok = self.next()
            if tok.kind != "int":
                raise self.error(f"bad integer {tok.text or _describe(tok)!r} for Priority", tok)
            priority = int(tok.text)
        elif self.at_directive():
            raise self.error(f"unknown directive {self.peek().text!r}")

        self.rule_name = name
        self.input_types = input_types
        pattern = self.parse_sequence(stop=("-->",))
        if not pattern:
            raise ParseError(f"rule {name!r} has an empty pattern", rule_tok.line, self.name)
        if not self.at_punct("-->"):
            raise self.error(f"missing '-->' in rule {name!r}")
        self.next()

        labels = list(_iter_labels(pattern))
        dupes = {lbl for lbl in labels if labels.count(lbl) > 1}
        if dupes:
            raise ParseError(f"label {sorted(dupes)[0]!r} bound more than once in rule {name!r}",
                             rule_tok.line, self.name)

        actions = []
        while self.at_punct(":"):
            actions.append(self.parse_action(set(labels)))
            if self.at_punct(","):
                self.next()
        if not actions:
            raise self.error(f"rule {name!r} needs at least one ':label.Type = {{...}}' action")
        return Rule(name, tuple(pattern), tuple(actions), priority, rule_tok.line)

    def parse_sequence(self, stop: tuple[str, ...]) -> list[Node]:
        nodes: list[Node] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof" or self.at_directive("Rule"):
                return nodes
            if tok.kind == "punct" and tok.text in stop:
                return nodes
            if self.at_punct(":"):
                raise self.error(f"missing '-->' before the actions of rule {self.rule_name!r}")
            if self.at_punct("{"):
                node = self.parse_element()
            elif self.at_punct("("):
                node = self.parse_group()
            else:
                raise self.error(f"expected '{{' or '(' in pattern, found {_describe(tok)}")
            nodes.append(self.parse_suffix(node))

    def parse_suffix(self, node: Node) -> Node:
        quantifier, label = ONE, None
        tok = self.peek()
        if tok.kind == "punct" and tok.text in _QUANT_SUFFIX:
            quantifier = _QUANT_SUFFIX[self.next().text]
        if self.at_punct(":") and self.peek(1).kind == "ident":
            self.next()
            label = self.next().text
        if isinstance(node, Element):
            return Element(node.constraints, quantifier, label)
        return Group(node.alternatives, quantifier, label)

    def parse_group(self) -> Group:
        open_tok = self.expect_punct("(")
        alternatives = []
        while True:
            seq = self.parse_sequence(stop=(")", "|", "-->"))
            if not seq:
                raise self.error("empty alternative in group")
            alternatives.append(tuple(seq))
            if self.at_punct("|"):
                self.next()
                continue
            if self.at_punct(")"):
                self.next()
                return Group(tuple(alternatives))
            raise ParseError("unclosed '(' in pattern", open_tok.line, self.name)

    def parse_element(self) -> Element:
        self.expect_punct("{")
        constraints = [self.parse_constraint()]
        while self.at_punct(","):
            self.next()
            constraints.append(self.parse_constraint())
        self.expect_punct("}", "'}' closing the constraint group")
        types = {c.ann_type for c in constraints}
        if len(types) > 1:
            raise self.error(f"constraints in one group must share a type, got {sorted(types)}")
        return Element(tuple(constraints))

    def parse_constraint(self) -> Constraint:
        type_tok = self.expect_ident("annotation type")
        if type_tok.text not in self.input_types:
            raise self.error(f"type {type_tok.text!r} is not declared in Input", type_tok)
        if not self.at_punct("."):
            return Constraint(type_tok.text)
        self.next()
        feature = self.expect_ident("feature name").text
        op_tok = self.next()
        if op_tok.kind != "punct" or op_tok.text not in ("==", "=~"):
            raise self.error(f"expected '==' or '=~' after {type_tok.text}.{feature}", op_tok)
        value_tok = self.next()
        if value_tok.kind not in ("string", "ident", "int"):
            raise self.error(f"expected a value after {op_tok.text!r}", value_tok)
        if op_tok.text == "==":
            return Constraint(type_tok.text, feature, EQUALS, value_tok.text)
        try:
            compiled = compile_regex(value_tok.text)
        except re.error as exc:
            raise self.error(
                f"invalid regex {value_tok.text!r} in rule {self.rule_name!r}: {exc}", value_tok
            ) from None
        return Constraint(type_tok.text, feature, REGEX, value_tok.text, compiled)

    def parse_action(self, labels: set[str]) -> Action:
        self.expect_punct(":")
        label_tok = self.expect_ident("label")
        if label_tok.text not in labels:
            raise self.error(f"unbound label {label_tok.text!r} in rule {self.rule_name!r}", label_tok)
        self.expect_punct(".", "'.' after the label")
        new_type = self.expect_ident("annotation type").text
        self.expect_punct("=")
        self.expect_punct("{")
        features: list[tuple[str, str]] = []
        while not self.at_punct("}"):
            key = self.expect_ident("feature name").text
            if any(k == key for k, _ in features):
                raise self.error(f"duplicate feature {key!r} in action")
            self.expect_punct("=")
            value = self.next()
            if value.kind not in ("string", "ident", "int"):
                raise self.error(f"feature values must be literals, found {_describe(value)}", value)
            features.append((key, value.text))
            if self.at_punct(","):
                self.next()
            elif not self.at_punct("}"):
                raise self.error(f"expected ',' or '}}' in action, found {_describe(self.peek())}")
        self.next()
        return Action(label_tok.text, new_type, tuple(features))


def _describe(tok: _Tok) -> str:
    if tok.kind == "eof":
        return "end of file"
    if tok.kind == "string":
        return f'"{tok.text}"'
    return repr(tok.text)


def parse_grammar(source: str, name: str | None = None) -> Grammar:
    return _Parser(source, name).parse()


def load_grammar(path) -> Grammar:
    with open(path, encoding="utf-8-sig") as fh:
        return parse_grammar(fh.read(), str(path))


# ---------------------------------------------------------------- printer

def _quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _format_node(node: Node, indent: str) -> list[str]:
    suffix = _SUFFIX_OF.get(node.quantifier, "") + (f":{node.label}" if node.label else "")
    if isinstance(node, Element):
        return [f"{indent}{{ {', '.join(c.source() for c in node.constraints)} }}{suffix}"]
    lines = [f"{indent}("]
    for k, alt in enumerate(node.alternatives):
        if k:
            lines.append(f"{indent}|")
        for child in alt:
            lines.extend(_format_node(child, indent + "  "))
    lines.append(f"{indent}){suffix}")
    return lines


def format_grammar(g: Grammar) -> str:
    out = []
    if g.phase:
        out.append(f"Phase: {g.phase}")
    out.append("Input: " + " ".join(g.input_types))
    out.append(f"Options: control = {g.control}")
    for rule in g.rules:
        out.append("")
        out.append(f"Rule: {rule.name}")
        out.append(f"Priority: {rule.priority}")
        for node in rule.pattern:
            out.extend(_format_node(node, ""))
        out.append("-->")
        for a in rule.actions:
            feats = ", ".join(f"{k} = {_quote(v)}" for k, v in a.features)
            out.append(f":{a.label}.{a.new_type} = {{ {feats} }}")
    return "\n".join(out) + "\n"

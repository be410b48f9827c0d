import pytest
from hypothesis import given
from hypothesis import strategies as st

from aglint.errors import ParseError
from aglint.grammar import (ALL, APPELT, OPTIONAL, PLUS, REGEX, STAR, Element, Group,
                            format_grammar, load_grammar, parse_grammar)
from aglint.pipeline import bundled_path

from conftest import REFERENCE_GRAMMAR


def test_reference_grammar():
    g = parse_grammar(REFERENCE_GRAMMAR)
    assert g.input_types == ("Token",)
    assert g.control == APPELT
    (rule,) = g.rules
    assert rule.name == "PluralSingularPair"
    assert rule.priority == 20
    assert len(rule.elements) == 2
    assert [c.value for e in rule.elements for c in e.constraints] == ["^A.p", "^N..s"]
    assert all(c.op == REGEX and c.feature == "category" for e in rule.elements for c in e.constraints)
    (action,) = rule.actions
    assert (action.label, action.new_type, action.feature_map()) == (
        "pair", "PSAgrError", {"rule": "PluralSingularPair"})


def test_input_only():
    g = parse_grammar("Input: Token")
    assert g.input_types == ("Token",) and g.rules == ()


def test_bundled_grammar():
    g = load_grammar(bundled_path("agreement.jape"))
    assert g.control == ALL
    assert [(r.name, r.priority) for r in g.rules] == [
        ("PluralSingularPair", 20), ("SingularPluralPair", 20), ("GenderMismatchM", 10),
        ("GenderMismatchF", 10), ("GenderMismatchN", 10), ("DefiniteNounAfterAdjective", 5),
    ]
    assert {a.new_type for r in g.rules for a in r.actions} == {
        "PSAgrError", "SPAgrError", "GenderAgrError", "DefAgrError"}


def errors_for(source):
    with pytest.raises(ParseError) as err:
        parse_grammar(source)
    return err.value


def test_unbound_label():
    src = REFERENCE_GRAMMAR.replace(":pair.PSAgrError", ":pear.PSAgrError")
    err = errors_for(src)
    assert "unbound label 'pear'" in err.message
    assert err.line == 10


def test_missing_arrow():
    src = REFERENCE_GRAMMAR.replace("-->\n", "")
    err = errors_for(src)
    assert "missing '-->'" in err.message


def test_bad_priority():
    err = errors_for(REFERENCE_GRAMMAR.replace("Priority: 20", "Priority: high"))
    assert "bad integer" in err.message and err.line == 4


def test_unknown_directive():
    err = errors_for("Input: Token\nMacro: X\n")
    assert "unknown directive 'Macro'" in err.message and err.line == 2


def test_unknown_directive_inside_rule():
    err = errors_for(REFERENCE_GRAMMAR.replace("Priority: 20", "Weight: 20"))
    assert "unknown directive 'Weight'" in err.message and err.line == 4


def test_bad_regex_names_rule_and_pattern():
    err = errors_for(REFERENCE_GRAMMAR.replace("^A.p", "^A[.p"))
    assert "PluralSingularPair" in err.message and "^A[.p" in err.message
    assert err.line == 6


def test_undeclared_type():
    err = errors_for(REFERENCE_GRAMMAR.replace("{ Token.category =~ \"^A.p\" }", "{ Lookup }"))
    assert "not declared in Input" in err.message


def test_missing_input():
    assert "Input" in errors_for("Rule: X\n({Token}):a --> :a.Y = {}").message


def test_duplicate_rule_name():
    err = errors_for(REFERENCE_GRAMMAR + REFERENCE_GRAMMAR.replace("Input: Token\n", ""))
    assert "duplicate rule name" in err.message and err.line == 12


def test_error_message_has_line_prefix():
    err = errors_for("Input: Token\nOptions: control = sometimes\n")
    assert str(err).startswith("2: ")


def test_quantifiers_groups_and_alternatives():
    g = parse_grammar("""
Input: Token Lookup
Options: control = all
// a comment
Rule: NP  /* block
comment */
Priority: -3
(
  ({ Token.category =~ "^A" })*:mods
  ({ Token.kind == word, Token.category =~ "^N" } | { Lookup })
  { Token }?
  ({ Token.string == "\\"" })+
):np
-->
:np.NP = { kind = "np", n = 2 }, :mods.Mods = {}
""")
    (rule,) = g.rules
    assert rule.priority == -3
    (top,) = rule.pattern
    assert isinstance(top, Group) and top.label == "np"
    mods, head, opt, quotes = top.alternatives[0]
    assert (mods.quantifier, mods.label) == (STAR, "mods")
    assert len(head.alternatives) == 2
    assert isinstance(opt, Element) and opt.quantifier == OPTIONAL
    assert quotes.quantifier == PLUS
    assert quotes.alternatives[0][0].constraints[0].value == '"'
    assert [a.feature_map() for a in rule.actions] == [{"kind": "np", "n": "2"}, {}]
    assert not rule.is_quantifier_free()


def test_format_round_trip_bundled():
    g = load_grammar(bundled_path("agreement.jape"))
    assert parse_grammar(format_grammar(g)) == g


ident = st.sampled_from(["Token", "Lookup"])
feature = st.sampled_from(["category", "kind", "string"])
value = st.text(alphabet=st.sampled_from(list('ANas.^$[]|"\\ -')), max_size=6)


@st.composite
def constraints(draw):
    t = draw(ident)
    kind = draw(st.sampled_from(["exists", "equals", "regex"]))
    if kind == "exists":
        return t
    if kind == "equals":
        v = draw(value)
        return f'{t}.{draw(feature)} == "{v.replace(chr(92), chr(92) * 2).replace(chr(34), chr(92) + chr(34))}"'
    v = draw(st.sampled_from(["^A.p", "^N..s", "a|b", "[mf]s$", "x?y*z+", "(ab)"]))
    return f'{t}.{draw(feature)} =~ "{v}"'


@st.composite
def patterns(draw, depth=0):
    items = []
    for _ in range(draw(st.integers(1, 3))):
        if depth < 2 and draw(st.booleans()):
            alts = [draw(patterns(depth + 1)) for _ in range(draw(st.integers(1, 2)))]
            item = "(" + " | ".join(alts) + ")"
        else:
            t = draw(ident)
            cs = [draw(constraints()) for _ in range(draw(st.integers(1, 2)))]
            cs = [c if c.startswith(t) else t + c[c.index("."):] if "." in c else t for c in cs]
            item = "{" + ", ".join(cs) + "}"
        item += draw(st.sampled_from(["", "?", "*", "+"]))
        items.append(item)
    return " ".join(items)


@given(st.lists(patterns(), min_size=1, max_size=3), st.sampled_from(["appelt", "all"]))
def test_print_parse_round_trip(pats, control):
    rules = [f"Rule: R{i}\nPriority: {i}\n({p}):lbl\n-->\n:lbl.Out{i} = {{ rule = \"R{i}\" }}\n"
             for i, p in enumerate(pats)]
    src = f"Input: Token Lookup\nOptions: control = {control}\n" + "".join(rules)
    g = parse_grammar(src)
    assert parse_grammar(format_grammar(g)) == g

"""Independent reference matchers used by the transducer tests.

Nothing here touches the engine: regexes are recompiled from the grammar's
source strings and windows are enumerated exhaustively.
"""

import re

from aglint.tagset import Disagreement, PosClass, agreement_check, decode_tag

AGR_TYPE_TO_DISAGREEMENT = {
    "PSAgrError": Disagreement.NUMBER,
    "SPAgrError": Disagreement.NUMBER,
    "GenderAgrError": Disagreement.GENDER,
    "DefAgrError": Disagreement.DEFINITENESS,
}


def _holds(constraint, token_category, token_type="Token"):
    if constraint.ann_type != token_type:
        return False
    if constraint.op == "exists":
        return True
    if constraint.feature != "category":
        raise NotImplementedError("oracle only models the category feature")
    if constraint.op == "equals":
        return token_category == constraint.value
    return re.search(constraint.value, token_category, re.DOTALL) is not None


def sliding_window_matches(grammar, categories, offsets):
    """All (rule, start, end) found by testing every k-window against every rule.

    ``offsets[i]`` is the (start, end) of token i; rules must be quantifier free.
    """
    found = set()
    n = len(categories)
    for rule in grammar.rules:
        assert rule.is_quantifier_free()
        elems = rule.elements
        k = len(elems)
        for i in range(n - k + 1):
            if all(all(_holds(c, categories[i + j]) for c in elems[j].constraints) for j in range(k)):
                found.add((rule.name, offsets[i][0], offsets[i + k - 1][1]))
    return found


def expected_pair_disagreements(adj_tag, noun_tag):
    a, b = decode_tag(adj_tag), decode_tag(noun_tag)
    if a.pos_class is not PosClass.ADJECTIVE or b.pos_class is not PosClass.NOUN:
        return set()
    return set(agreement_check(a, b))

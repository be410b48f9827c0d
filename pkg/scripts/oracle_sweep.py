"""Randomized cross-check of the bundled grammar against two independent references.

For each random tagged sentence the engine (control=all) is compared with a
brute-force sliding-window matcher and with ``agreement_check`` applied pair
by pair. Prints mismatch counts and timings.

    python scripts/oracle_sweep.py --docs 5000 --max-tokens 12 --seed 1
"""

import argparse
import random
import re
import sys
import time

from aglint.grammar import ALL
from aglint.pipeline import build_pipeline
from aglint.tagger import ingest_pretagged
from aglint.tagset import Disagreement, PosClass, agreement_check, decode_tag
from aglint.transducer import run_transducer

TAGS = ["Ansi", "Amsi", "Afsi", "A-pi", "A-pd", "Ncnsi", "Ncmsi", "Ncfsi", "Ncnpi", "Ncmsd", "Vpitf", "Unknown"]
WIDE_TAGS = TAGS + ["Amsh", "Amsf", "Afsd", "Ansd", "Ncmsh", "Ncmsf", "Ncmt", "Npfsi", "A", "Am", "Nc", "M", "PT"]
TYPE_TO_KIND = {"PSAgrError": Disagreement.NUMBER, "SPAgrError": Disagreement.NUMBER,
                "GenderAgrError": Disagreement.GENDER, "DefAgrError": Disagreement.DEFINITENESS}


def window_oracle(grammar, tags, offsets):
    found = set()
    for rule in grammar.rules:
        elems = rule.elements
        k = len(elems)
        for i in range(len(tags) - k + 1):
            if all(re.search(c.value, tags[i + j], re.DOTALL) for j in range(k) for c in elems[j].constraints):
                found.add((rule.name, offsets[i][0], offsets[i + k - 1][1]))
    return found


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--docs", type=int, default=1000)
    ap.add_argument("--max-tokens", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--wide", action="store_true", help="also draw article, count-form and truncated tags")
    args = ap.parse_args()

    grammar = build_pipeline().grammar.with_control(ALL)
    pool = WIDE_TAGS if args.wide else TAGS
    rng = random.Random(args.seed)
    window_misses = pair_misses = matches = 0
    engine_time = 0.0
    for _ in range(args.docs):
        tags = [rng.choice(pool) for _ in range(rng.randint(0, args.max_tokens))]
        doc = ingest_pretagged([f"w{i}\t{t}" for i, t in enumerate(tags)])
        t0 = time.perf_counter()
        results = run_transducer(grammar, doc)
        engine_time += time.perf_counter() - t0
        matches += len(results)
        toks = doc.of_type("Token")
        offsets = [t.span for t in toks]
        window_misses += {(r.rule_name, *r.span) for r in results} != window_oracle(grammar, tags, offsets)

        by_span = {}
        for a in doc.annotations:
            if a.type in TYPE_TO_KIND:
                by_span.setdefault(a.span, set()).add(TYPE_TO_KIND[a.type])
        for x, y in zip(toks, toks[1:]):
            fa, fb = decode_tag(x.get("category")), decode_tag(y.get("category"))
            want = set()
            if fa.pos_class is PosClass.ADJECTIVE and fb.pos_class is PosClass.NOUN:
                want = set(agreement_check(fa, fb))
            pair_misses += by_span.get((x.start, y.end), set()) != want

    print(f"documents          {args.docs}")
    print(f"rule matches       {matches}")
    print(f"window mismatches  {window_misses}")
    print(f"pair mismatches    {pair_misses}")
    print(f"engine time        {engine_time:.3f} s")
    return 1 if window_misses or pair_misses else 0


if __name__ == "__main__":
    sys.exit(main())

"""Run the textbook agreement examples through the full pipeline and print what fires."""

from aglint.annotations import Corpus, Document
from aglint.pipeline import build_pipeline, run_pipeline

PHRASES = [
    "щастливи дете",    # plural adjective, singular noun
    "щастливо деца",    # singular adjective, plural noun
    "щастлив дете",     # masculine adjective, neuter noun
    "щастливо дете",    # agrees
    "щастливи деца",    # agrees
    "хубава книгата",   # article on the noun instead of the adjective
    "хубавата книга",   # agrees
    "два нови дена",    # count form after a numeral
]


def main():
    pipeline = build_pipeline()
    summary = run_pipeline(pipeline, Corpus([Document(p, p) for p in PHRASES]))
    for doc in summary.documents:
        found = ", ".join(f"{e.annotation_type}({e.rule})" for e in doc.errors) or "-"
        print(f"{doc.source:<16} {found}")


if __name__ == "__main__":
    main()

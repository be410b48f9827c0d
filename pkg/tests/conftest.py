import pytest

from aglint.pipeline import build_pipeline
from aglint.tagger import ingest_pretagged

REFERENCE_GRAMMAR = """\
Input: Token

Rule: PluralSingularPair
Priority: 20
(
  { Token.category =~ "^A.p" }
  { Token.category =~ "^N..s" }
): pair
-->
:pair.PSAgrError = { rule = "PluralSingularPair" }
"""


def tagged_doc(tags, forms=None, source="-"):
    """Single-sentence pretagged document with one token per tag."""
    forms = forms or [f"w{i}" for i in range(len(tags))]
    lines = [f"{f}\t{t}" for f, t in zip(forms, tags)]
    return ingest_pretagged(lines, source)


@pytest.fixture(scope="session")
def bundled_pipeline():
    return build_pipeline()


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance.items():
        terminalreporter.write_line(f"{outcome}  {name}")

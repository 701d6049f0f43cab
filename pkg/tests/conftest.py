import numpy as np
import pytest

from amrkit.penman import parse_penman

AMR1 = """(c / colonoscopy-01 :polarity -
      :arg1 (h / he)
      :arg2 (s2 / screen-01
            :arg1 h))"""

AMR2 = """(c1 / colonoscopy-01 :polarity -
      :arg1 (s / she)
      :arg2 (s2 / screen-01
            :arg1 s))"""

TETANUS = """(d / decline-02
      :ARG1 (s / shot-13 :implicit +
            :ARG3 (d2 / disease-disorder :name (n / name :op1 "tetanus"))))"""

# Decomposed edge lists as printed for the two graphs above.
EDGE_LIST_1 = """
instance(c, colonoscopy-01)
instance(h, he)
instance(s2, screen-01)
polarity(c, -)
arg1(c, h)
arg2(c, s2)
arg1(s2, h)
"""

EDGE_LIST_2 = """
instance(c1, colonoscopy-01)
instance(s, she)
instance(s2, screen-01)
polarity(c1, -)
arg1(c1, s)
arg2(c1, s2)
arg1(s2, s)
"""


@pytest.fixture
def amr1():
    return parse_penman(AMR1)


@pytest.fixture
def amr2():
    return parse_penman(AMR2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def synthetic_corpus(n, name="clinical", prefix=None):
    """Cheap corpus of n distinct documents sharing one small graph shape."""
    from amrkit.corpus import Corpus
    from amrkit.documents import CorpusDocument

    prefix = prefix or name
    docs = []
    for i in range(n):
        g = parse_penman(f'(s / sentence :quant {i})')
        docs.append(CorpusDocument(f"{prefix}.{i}", f"sentence {i}", g, {}, name))
    return Corpus(tuple(docs), name)


_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or (rep.when != "call" and rep.passed):
        return
    number, title = marker.args
    detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
    _CRITERIA[number] = (title, "PASS" if rep.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status, detail = _CRITERIA[number]
        line = f"criterion {number} {status}: {title}"
        terminalreporter.write_line(line + (f" [{detail}]" if detail else ""))

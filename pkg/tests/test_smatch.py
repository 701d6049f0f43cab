from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from amrkit.documents import CorpusDocument
from amrkit.graph import AmrError
from amrkit.penman import parse_penman
from amrkit.random_graphs import random_graph, random_pair
from amrkit.rng import derive_seed, make_rng
from amrkit.smatch import (
    AlignmentError,
    Alignment,
    Score,
    SmatchConfig,
    align_exact,
    align_greedy,
    default_seed,
    matched_count,
    per_document_scores,
    score_corpus,
    score_pair,
)
from amrkit.triples import decompose

from conftest import EDGE_LIST_1, EDGE_LIST_2
from oracles import as_tuples, best_count, parse_edge_list, partial_injections, substituted_count

# Values computed by the brute-force oracle over the printed edge lists.
WORKED_BEST = 6
WORKED_MAPPING = {"c1": "c", "s": "h", "s2": "s2"}


def test_oracle_on_printed_lists():
    a, b = parse_edge_list(EDGE_LIST_2), parse_edge_list(EDGE_LIST_1)
    assert best_count(a, b) == WORKED_BEST
    winners = [m for m in partial_injections(["c1", "s", "s2"], ["c", "h", "s2"])
               if substituted_count(a, b, m) == WORKED_BEST]
    assert winners == [WORKED_MAPPING]


def test_worked_example(amr1, amr2):
    s = score_pair(amr2, amr1)
    assert (s.n_correct, s.n_predicted, s.n_reference) == (6, 7, 7)
    assert Fraction(s.n_correct, s.n_predicted) == Fraction(6, 7)
    for v in (s.precision, s.recall, s.f1):
        assert abs(v - 6 / 7) <= 1e-12
    assert s.line() == "0.8571 0.8571 0.8571"


def test_worked_alignment(amr1, amr2):
    a, b = decompose(amr2), decompose(amr1)
    m, n = align_exact(a, b)
    assert (m.mapping, n) == (WORKED_MAPPING, 6)
    g, n = align_greedy(a, b, restarts=4, seed=0)
    assert (g.mapping, n) == (WORKED_MAPPING, 6)
    assert matched_count(a, b, m) == 6


def test_she_to_he_mismatch_only(amr1, amr2):
    # every triple except instance(s, she) finds a partner
    a, b = decompose(amr2), decompose(amr1)
    misses = [t for t in a if matched_count(type(a)((t,), a.variables), b, WORKED_MAPPING) == 0]
    assert [str(t) for t in misses] == ["instance(s, she)"]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_exact_equals_bruteforce(seed):
    a, b = random_pair(np.random.default_rng(seed), max_vars=4)
    ta, tb = decompose(a), decompose(b)
    assert align_exact(ta, tb)[1] == best_count(as_tuples(ta), as_tuples(tb))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_greedy_bounded_by_exact(seed):
    a, b = random_pair(np.random.default_rng(seed), max_vars=6)
    ta, tb = decompose(a), decompose(b)
    m, n = align_greedy(ta, tb, restarts=4, seed=seed)
    assert n <= align_exact(ta, tb)[1]
    assert matched_count(ta, tb, m) == n


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_symmetry(seed):
    a, b = random_pair(np.random.default_rng(seed), max_vars=6)
    ab, ba = score_pair(a, b), score_pair(b, a)
    assert ab.n_correct == ba.n_correct
    assert ab.f1 == ba.f1
    assert (ab.precision, ab.recall) == (ba.recall, ba.precision)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_self_score_is_perfect(seed):
    g = random_graph(np.random.default_rng(seed), max_nodes=14)
    s = score_pair(g, g)
    assert (s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_scores_in_unit_interval(seed):
    a, b = random_pair(np.random.default_rng(seed), max_vars=12)
    s = score_pair(a, b)
    assert 0 <= s.precision <= 1 and 0 <= s.recall <= 1 and 0 <= s.f1 <= 1
    assert s.n_correct <= min(s.n_predicted, s.n_reference)


def test_greedy_deterministic():
    rng = np.random.default_rng(5)
    a = random_graph(rng, min_nodes=15, max_nodes=20)
    b = random_graph(rng, min_nodes=15, max_nodes=20)
    ta, tb = decompose(a), decompose(b)
    runs = {align_greedy(ta, tb, restarts=6, seed=9)[0].pairs() for _ in range(3)}
    assert len(runs) == 1


def test_large_graphs_use_greedy():
    rng = np.random.default_rng(1)
    a = random_graph(rng, min_nodes=12, max_nodes=12)
    b = random_graph(rng, min_nodes=12, max_nodes=12)
    with pytest.raises(AlignmentError):
        align_exact(decompose(a), decompose(b))
    s1 = score_pair(a, b, doc_id="x")
    s2 = score_pair(a, b, SmatchConfig(use_exact=False), doc_id="x")
    assert s1 == s2


def test_restarts_must_be_positive(amr1):
    with pytest.raises(ValueError):
        align_greedy(decompose(amr1), decompose(amr1), restarts=0)


def test_alignment_injective():
    with pytest.raises(AlignmentError):
        Alignment({"a": "x", "b": "x"})


def test_corpus_micro_average(amr1, amr2):
    s = score_corpus([(amr2, amr1), (amr1, amr1)])
    assert (s.n_correct, s.n_predicted, s.n_reference) == (13, 14, 14)
    assert abs(s.f1 - 13 / 14) <= 1e-12


def test_corpus_errors(amr1):
    with pytest.raises(AmrError, match="empty"):
        score_corpus([])
    d1 = CorpusDocument("a", "", amr1)
    d2 = CorpusDocument("b", "", amr1)
    with pytest.raises(AmrError, match="mismatch"):
        score_corpus([(d1, d2)])


def test_per_document_ids(amr1, amr2):
    docs = [(CorpusDocument("x", "", amr2), CorpusDocument("x", "", amr1))]
    [(doc_id, s)] = per_document_scores(docs)
    assert doc_id == "x" and s.n_correct == 6


def test_score_zero_cases():
    assert Score.from_counts(0, 0, 0).f1 == 0.0
    assert Score.from_counts(0, 0, 0, empty_is_perfect=True).f1 == 1.0
    assert Score.from_counts(0, 3, 0).precision == 0.0
    with pytest.raises(ValueError):
        Score.from_counts(4, 3, 5)


def test_top_triple_changes_counts(amr1, amr2):
    s = score_pair(amr2, amr1, SmatchConfig(top_triple=True))
    assert (s.n_correct, s.n_predicted, s.n_reference) == (7, 8, 8)


def test_default_seed_env(monkeypatch):
    monkeypatch.delenv("AMRKIT_SEED", raising=False)
    assert default_seed() == 42
    monkeypatch.setenv("AMRKIT_SEED", "7")
    assert default_seed() == 7


def test_named_streams():
    a = make_rng(1, "smatch", "doc1").integers(1 << 30, size=4)
    b = make_rng(1, "smatch", "doc1").integers(1 << 30, size=4)
    c = make_rng(1, "smatch", "doc2").integers(1 << 30, size=4)
    assert a.tolist() == b.tolist()
    assert a.tolist() != c.tolist()
    assert derive_seed(1, "x") == derive_seed(1, "x") != derive_seed(2, "x")


def test_duplicate_triples_count_once_per_occurrence():
    g = parse_penman("(a / and :op1 (b / boy) :op2 (b2 / boy))")
    h = parse_penman("(a / and :op1 (b / boy))")
    s = score_pair(g, h)
    assert (s.n_correct, s.n_predicted, s.n_reference) == (3, 5, 3)

import json

import pytest

from amrkit.corpus import (
    EXHAUST_PRIMARY,
    Corpus,
    MixSpec,
    iaa,
    manifest,
    mix,
    mix_total,
    primary_quota,
    split,
    subsample_curve,
)
from amrkit.documents import CorpusDocument, CorpusError, format_corpus, parse_corpus

from conftest import AMR1, AMR2, synthetic_corpus


@pytest.fixture(scope="module")
def big():
    return synthetic_corpus(8327)


def test_split_sizes_and_partition(big):
    train, dev, test = split(big, (4955, 1641, 1731), seed=7)
    assert (len(train), len(dev), len(test)) == (4955, 1641, 1731)
    ids = train.ids + dev.ids + test.ids
    assert sorted(ids) == sorted(big.ids)
    assert len(set(ids)) == len(ids)


def test_split_deterministic(big):
    a = [format_corpus(p) for p in split(big, (4955, 1641, 1731), seed=7)]
    b = [format_corpus(p) for p in split(big, (4955, 1641, 1731), seed=7)]
    c = [format_corpus(p) for p in split(big, (4955, 1641, 1731), seed=8)]
    assert a == b
    assert a != c


def test_split_size_mismatch(big):
    with pytest.raises(CorpusError, match="sum"):
        split(big, (10, 10, 10), seed=7)


def test_mix_fixed_total():
    spec = MixSpec(synthetic_corpus(2000, "clinical"), synthetic_corpus(500, "general"), (12, 1), 1300, 3)
    m = mix(spec)
    tags = [d.source_tag for d in m]
    assert (tags.count("clinical"), tags.count("general")) == (1200, 100)
    assert len(set(m.ids)) == 1300
    n_p = 0
    for n, tag in enumerate(tags, 1):
        n_p += tag == "clinical"
        assert abs(n_p - n * 12 / 13) <= 1
        assert abs((n - n_p) - n / 13) <= 1


def test_mix_exhaust_primary():
    prim = synthetic_corpus(4955, "clinical")
    m = mix(MixSpec(prim, synthetic_corpus(1000, "general"), (12, 1), EXHAUST_PRIMARY, 3))
    tags = [d.source_tag for d in m]
    assert len(m) == mix_total(4955, (12, 1)) == 5368
    assert tags.count("clinical") == 4955 and tags.count("general") == 413
    assert set(d.id for d in m if d.source_tag == "clinical") == set(prim.ids)


def test_mix_alternates_at_one_to_one():
    m = mix(MixSpec(synthetic_corpus(10, "a"), synthetic_corpus(10, "b"), (1, 1), 8, 0))
    assert [d.source_tag for d in m] == ["b", "a"] * 4


def test_mix_quota():
    assert [primary_quota(n, (12, 1)) for n in (0, 1, 12, 13, 14, 1300)] == [0, 0, 11, 12, 12, 1200]


def test_mix_deterministic_and_seeded():
    p, s = synthetic_corpus(300, "clinical"), synthetic_corpus(100, "general")
    a = format_corpus(mix(MixSpec(p, s, (12, 1), 130, 1)))
    assert a == format_corpus(mix(MixSpec(p, s, (12, 1), 130, 1)))
    assert a != format_corpus(mix(MixSpec(p, s, (12, 1), 130, 2)))
    assert "# ::source clinical" in a


def test_mix_errors():
    p, s = synthetic_corpus(10, "clinical"), synthetic_corpus(10, "general")
    with pytest.raises(CorpusError, match="needs"):
        mix(MixSpec(p, s, (12, 1), 1300))
    with pytest.raises(CorpusError, match="share"):
        mix(MixSpec(p, synthetic_corpus(5, "other", prefix="clinical"), (1, 1), 4))
    with pytest.raises(ValueError):
        MixSpec(p, s, (0, 1))


def test_curve_nested(big):
    pool = split(big, (4955, 1641, 1731), seed=7)[0]
    sizes = [500, 1000, 2000, 3000, 4000, 4955]
    snaps = subsample_curve(pool, sizes, seed=7)
    assert [len(c) for c in snaps] == sizes
    for small, large in zip(snaps, snaps[1:]):
        assert set(small.ids) <= set(large.ids)
    assert set(snaps[-1].ids) == set(pool.ids)
    again = subsample_curve(pool, sizes, seed=7)
    assert [c.ids for c in again] == [c.ids for c in snaps]


def test_curve_independent():
    pool = synthetic_corpus(200)
    snaps = subsample_curve(pool, [50, 100], seed=1, nested=False)
    assert [len(c) for c in snaps] == [50, 100]
    assert all(len(set(c.ids)) == len(c) for c in snaps)


def test_curve_errors():
    pool = synthetic_corpus(20)
    with pytest.raises(CorpusError):
        subsample_curve(pool, [10, 5], seed=1)
    with pytest.raises(CorpusError):
        subsample_curve(pool, [30], seed=1)


def test_duplicate_ids_rejected():
    d = CorpusDocument("x", "", synthetic_corpus(1).documents[0].graph)
    with pytest.raises(CorpusError, match="duplicate"):
        Corpus((d, d))


def annotation(text_a, text_b):
    return Corpus(tuple(parse_corpus(f"# ::id a\n{text_a}\n\n# ::id b\n{text_b}\n")))


def test_iaa_table():
    table = iaa([("A1", annotation(AMR1, AMR1)), ("A2", annotation(AMR2, AMR1)), ("A3", annotation(AMR1, AMR1))])
    rows = table.rows()
    assert [name for name, _ in rows] == ["A1 vs A2", "A1 vs A3", "A2 vs A3"]
    assert rows[0][1].n_correct == 13
    assert rows[1][1].f1 == 1.0
    assert table.matrix[0][1].f1 == table.matrix[1][0].f1
    assert table.to_tsv().splitlines()[1] == "A1 vs A2\t0.9286\t0.9286\t0.9286"
    assert json.loads(table.to_json())["labels"] == ["A1", "A2", "A3"]


def test_iaa_errors():
    with pytest.raises(CorpusError):
        iaa([("A1", annotation(AMR1, AMR1))])
    other = Corpus(tuple(parse_corpus(f"# ::id z\n{AMR1}\n")))
    with pytest.raises(CorpusError, match="different"):
        iaa([("A1", annotation(AMR1, AMR1)), ("A2", other)])


def test_manifest():
    p, s = synthetic_corpus(24, "clinical"), synthetic_corpus(4, "general")
    m = mix(MixSpec(p, s, (12, 1), 26))
    doc = json.loads(manifest({"mix": m}, 42, ratio=[12, 1]))
    assert doc["parts"]["mix"] == {"size": 26, "source_tags": {"general": 2, "clinical": 24}}
    assert doc["schema_version"] == 1 and doc["ratio"] == [12, 1]


def test_corpus_file_round_trip(tmp_path):
    text = f"# ::id one ::snt He had never undergone a screening colonoscopy.\n{AMR1}\n\n{AMR2}\n"
    docs = parse_corpus(text, "notes")
    assert [d.id for d in docs] == ["one", "notes.2"]
    assert docs[0].snt == "He had never undergone a screening colonoscopy."
    again = parse_corpus(format_corpus(docs), "notes")
    assert [(d.id, d.graph) for d in again] == [(d.id, d.graph) for d in docs]


def test_corpus_parse_error_line():
    from amrkit.penman import PenmanError

    with pytest.raises(PenmanError) as exc:
        parse_corpus(f"{AMR1}\n\n# ::id x\n(a / alpha :arg0 b9)\n")
    assert exc.value.line == 7

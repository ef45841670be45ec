import pytest

from wgss import PipelineConfig, Summarizer, split_sentences, summarize
from wgss.errors import ResourceError

from conftest import two_topic_text, two_topic_vectors, write_vec


def make(table, **kw):
    kw.setdefault("sigma", 1.0)
    return Summarizer(PipelineConfig(language_tag="generic", **kw), table, stopwords=set())


def sentences_of(text):
    return split_sentences(text, "generic")


def test_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(proportion=1.0)
    with pytest.raises(ValueError):
        PipelineConfig(sigma=0)
    with pytest.raises(ValueError):
        PipelineConfig(sigma="median")
    with pytest.raises(ValueError):
        PipelineConfig(kernel="cosine")
    with pytest.raises(ValueError):
        PipelineConfig(strategy="random")
    with pytest.raises(ValueError):
        PipelineConfig(language_tag="xx")
    assert PipelineConfig().sigma == 5e-11


def test_ten_sentences_two_in_order(topic_table):
    text, _ = two_topic_text(n_a=5, n_b=5)
    result = make(topic_table).summarize(text)
    chosen = result.diagnostics.chosen_indexes
    assert result.diagnostics.k == 2 and len(chosen) == 2
    assert chosen == sorted(chosen)
    sents = sentences_of(text)
    assert result.summary == " ".join(sents[i] for i in chosen)


def test_single_sentence_fallback(topic_table):
    result = make(topic_table).summarize("a1 a2 a3.")
    assert result.summary == "a1 a2 a3."
    assert result.diagnostics.fallback
    assert result.diagnostics.k == 1


def test_fallback_when_k_reaches_eligible(topic_table):
    # Two eligible sentences, ratio 0.9 -> k = 2 = eligible.
    result = make(topic_table, proportion=0.9).summarize("a1 a2. b1 b2.")
    assert result.diagnostics.fallback and result.summary == "a1 a2. b1 b2."


def test_ineligible_sentences_are_never_chosen(topic_table):
    text = "zzz qqq. a1 a2. a3 a4. a5. b1 b2. b3. b4 b5. a6 a7. b6. b7 b8. a8."
    result = make(topic_table).summarize(text)
    assert 0 not in result.diagnostics.chosen_indexes
    assert result.diagnostics.eligible_count == 10
    assert result.diagnostics.oov_tokens == 2


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("sigma", [1.0, "auto"])
def test_one_sentence_per_topic(topic_table, seed, sigma):
    text, labels = two_topic_text(n_a=6, n_b=4, seed=seed)
    result = make(topic_table, sigma=sigma).summarize(text)
    chosen = result.diagnostics.chosen_indexes
    assert sorted(labels[i] for i in chosen) == ["a", "b"]
    assert sorted(result.diagnostics.cluster_sizes) == [4, 6]


def test_average_kernel_separates_topics(topic_table):
    text, labels = two_topic_text(n_a=5, n_b=5, seed=3)
    result = make(topic_table, kernel="average").summarize(text)
    assert sorted(labels[i] for i in result.diagnostics.chosen_indexes) == ["a", "b"]


def test_diagnostics_contents(topic_table):
    text, _ = two_topic_text()
    d = make(topic_table, sigma="auto").summarize(text).diagnostics
    assert d.sigma_mode == "auto" and d.sigma > 0
    assert d.sentence_count == 10 and d.eligible_count == 10
    assert 0.0 <= d.underflow_fraction <= 1.0
    assert set(d.as_dict()) >= {"k", "cluster_sizes", "sigma", "underflow_fraction", "fallback"}


def test_tiny_sigma_underflow_is_reported(topic_table):
    text, _ = two_topic_text()
    d = make(topic_table, sigma=5e-11).summarize(text).diagnostics
    assert d.underflow_fraction == 1.0
    assert len(d.chosen_indexes) == 2


@pytest.mark.parametrize("p", [0.1, 0.2, 0.35, 0.5, 0.8])
def test_extractive_and_count(topic_table, p):
    text, _ = two_topic_text(n_a=9, n_b=8, seed=4)
    result = make(topic_table, proportion=p).summarize(text)
    sents = sentences_of(text)
    chosen = result.diagnostics.chosen_indexes
    assert len(chosen) == min(result.diagnostics.k, result.diagnostics.eligible_count)
    assert result.summary == " ".join(sents[i] for i in chosen)


def test_deterministic(topic_table):
    text, _ = two_topic_text(n_a=30, n_b=20, seed=7)
    a = make(topic_table).summarize(text).summary
    b = make(topic_table).summarize(text).summary
    assert a.encode() == b.encode()


def test_lead_strategy_picks_first_of_each_cluster(topic_table):
    text, labels = two_topic_text(n_a=6, n_b=4, seed=2)
    result = make(topic_table, strategy="lead").summarize(text)
    assert result.diagnostics.chosen_indexes == sorted({labels.index("a"), labels.index("b")})


def test_with_config_shares_resources(topic_table):
    s = make(topic_table)
    t = s.with_config(kernel="average")
    assert t.table is s.table and t.config.kernel == "average"


def test_prepared_reuse_matches_direct(topic_table):
    text, _ = two_topic_text(seed=5)
    s = make(topic_table)
    prepared = s.prepare(text)
    for sigma in (0.3, 1.0, 4.0, "auto"):
        assert s.summarize_prepared(prepared, sigma=sigma).summary == s.summarize(text, sigma=sigma).summary


def test_module_level_summarize(tmp_path):
    vec = write_vec(tmp_path / "t.vec", two_topic_vectors())
    text, _ = two_topic_text()
    config = PipelineConfig(language_tag="generic", embedding_path=str(vec), sigma="auto")
    result = summarize(text, config)
    assert len(result.diagnostics.chosen_indexes) == 2


def test_from_config_requires_embeddings():
    with pytest.raises(ValueError):
        Summarizer.from_config(PipelineConfig())


def test_from_config_missing_file(tmp_path):
    with pytest.raises((ResourceError, OSError)):
        Summarizer.from_config(PipelineConfig(embedding_path=str(tmp_path / "nope.vec")))

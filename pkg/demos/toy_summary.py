"""
Summarizing a two-topic toy document
====================================

Synthetic 8-d word vectors form two tight clouds. Sentences draw words from
one cloud only, so a two-way split of the sentence graph should follow the
topics and the summary should carry one sentence from each.
"""

import numpy as np

from wgss import EmbeddingTable, PipelineConfig, Summarizer, split_sentences

rng = np.random.default_rng(0)
center = np.zeros(8)
center[0] = 3.0
vectors = {}
for i in range(12):
    vectors[f"sun{i}"] = center + rng.normal(scale=0.05, size=8)
    vectors[f"rain{i}"] = -center + rng.normal(scale=0.05, size=8)
table = EmbeddingTable.from_mapping(vectors, source_id="toy")

topics = [str(t) for t in rng.permutation(["sun"] * 6 + ["rain"] * 4)]
text = " ".join(" ".join(f"{t}{j}" for j in rng.integers(0, 12, size=5)) + "." for t in topics)
for i, s in enumerate(split_sentences(text, "generic")):
    print(i, s)

#%%
# sigma="auto" takes the median nearest-word distance of the document.
summarizer = Summarizer(PipelineConfig(language_tag="generic", sigma="auto"), table, stopwords=set())
result = summarizer.summarize(text)
print("\nsummary:", result.summary)
print("topics of chosen sentences:", [topics[i] for i in result.diagnostics.chosen_indexes])

d = result.diagnostics
print(f"k={d.k} sizes={d.cluster_sizes} sigma={d.sigma:.3g} underflow={d.underflow_fraction:.2f}")

#%%
# With sigma=5e-11 every off-diagonal affinity underflows and the
# diagnostics say so.
tiny = summarizer.with_config(sigma=5e-11).summarize(text).diagnostics
print(f"sigma=5e-11 underflow={tiny.underflow_fraction:.2f} sizes={tiny.cluster_sizes}")

"""
ROUGE-1, ROUGE-2 and ROUGE-L by hand
====================================
"""

from wgss import rouge_lcs, rouge_n, score_summary

cand, ref = "a b c".split(), "a c d".split()
print("rouge1", rouge_n(cand, ref, 1))
print("rouge2", rouge_n(cand, ref, 2))
print("rougeL", rouge_lcs(cand, ref))

#%%
# Counts are clipped: repeating a matched word does not raise precision.
print(rouge_n(["a", "a", "a"], ["a"], 1))

#%%
# With several references the best one per metric is kept.
scores = score_summary("আমি ভাত খাই।", ["সে বাড়ি যায়।", "আমি রোজ ভাত খাই।"])
for metric, s in scores.items():
    print(metric, f"P={s.precision:.3f} R={s.recall:.3f} F={s.f1:.3f}")

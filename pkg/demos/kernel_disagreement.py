"""
Word-pair kernel versus centroid kernel
=======================================

Two 2-D sentence pairs. In pair A every word has a close partner in the
other sentence, but the sentences have different lengths so the centroids
drift apart. In pair B the centroids coincide while no word is near any
word of the other sentence.
"""

import numpy as np

from wgss import average_similarity, wgss_similarity
from wgss.similarity import collect_distances

pair_a = (np.array([[0.0, 0.0], [4.0, 0.0], [4.0, 1.0]]), np.array([[0.0, 0.5], [4.0, 0.5]]))
pair_b = (np.array([[0.0, 0.0], [4.0, 0.0]]), np.array([[2.0, 2.0], [2.0, -2.0]]))

# Nearest-word distances, both directions
for name, (x, y) in (("A", pair_a), ("B", pair_b)):
    d = collect_distances(x, y)
    print(f"pair {name}: {d.count} distances, squared sum {d.squared_sum:.3f}")

#%%
# The centroid kernel prefers B, the word-pair kernel prefers A.
print(f"{'sigma':>6} {'wgss A':>8} {'wgss B':>8} {'avg A':>8} {'avg B':>8}")
for sigma in (0.5, 1.0, 2.0, 5.0):
    print(f"{sigma:>6} {wgss_similarity(*pair_a, sigma):8.4f} {wgss_similarity(*pair_b, sigma):8.4f} "
          f"{average_similarity(*pair_a, sigma):8.4f} {average_similarity(*pair_b, sigma):8.4f}")

#%%
# The default sigma of 5e-11 is tiny next to distances of order 1, so every
# off-diagonal value underflows to zero.
print("sigma=5e-11:", wgss_similarity(*pair_a, 5e-11), wgss_similarity(*pair_b, 5e-11))

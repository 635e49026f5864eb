import numpy as np

from subspace_sets.embeddings import EmbeddingFormat, EmbeddingTable
from subspace_sets.retrieval import WordSetSpec


def make_cluster_table(seed=7, dim=50, n_clusters=5, per_cluster=50, eps=0.05):
    """Unit-norm words around mutually orthogonal centroids.

    Words are named ``w<cluster>_<i>``; the first five words of each cluster
    are its span words, the rest its test words.
    """
    rng = np.random.default_rng(seed)
    words, rows, specs = [], [], []
    for c in range(n_clusters):
        centroid = np.zeros(dim)
        centroid[c] = 1.0
        for i in range(per_cluster):
            v = centroid + eps * rng.standard_normal(dim)
            rows.append(v / np.linalg.norm(v))
            words.append(f"w{c}_{i}")
        cluster_words = [f"w{c}_{i}" for i in range(per_cluster)]
        specs.append(
            WordSetSpec(f"cluster{c}", tuple(cluster_words[:5]),
                        tuple(cluster_words[5:]))
        )
    table = EmbeddingTable(words, np.vstack(rows), EmbeddingFormat.GLOVE_TEXT)
    return table, specs

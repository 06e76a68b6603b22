"""Word-embedding table with cosine similarity, loaded from a flat file."""

from __future__ import annotations

import numpy as np


class EmbeddingProvider:
    """Maps words to fixed-dimension vectors; similarity is the cosine.

    The table is a plain dict handed in at construction; any word missing
    from it scores 0 against everything.
    """

    def __init__(self, vectors: dict[str, list[float]]):
        dims = {len(v) for v in vectors.values()}
        if len(dims) > 1:
            raise ValueError(f"inconsistent vector dimensions: {sorted(dims)}")
        self._vectors = {w: np.asarray(v, dtype=float) for w, v in vectors.items()}
        self.dimension = dims.pop() if dims else 0

    def __contains__(self, word: str) -> bool:
        return word in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def vector(self, word: str) -> np.ndarray | None:
        return self._vectors.get(word)

    def similarity(self, a: str, b: str) -> float:
        """Cosine of the two word vectors; 0.0 if either word is unknown or zero."""
        va = self._vectors.get(a)
        vb = self._vectors.get(b)
        if va is None or vb is None:
            return 0.0
        na = float(np.linalg.norm(va))
        nb = float(np.linalg.norm(vb))
        if na == 0.0 or nb == 0.0:
            return 0.0
        return float(np.dot(va, vb) / (na * nb))

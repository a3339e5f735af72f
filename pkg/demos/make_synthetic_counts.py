"""Regenerate the bundled synthetic 34x34 flow-count matrix.

The counts are integer flows obtained by scaling beta-distributed weights,
so the matrix behaves like the migration-type data the package targets
without being real data.  Run from the repository root:

    python demos/make_synthetic_counts.py
"""
from pathlib import Path

import numpy as np

from betagraph.generator import generate_graph, make_rng
from betagraph.ingest import RawFlowMatrix, save_matrix

N = 34
SEED = 2011

rng = make_rng(SEED)
a = rng.uniform(0.3, 1.5, N)
b = rng.uniform(1.0, 8.0, N)
W = generate_graph(a, b, rng)
counts = np.floor(W.w * 2000)
labels = [f"country_{i:02d}" for i in range(1, N + 1)]

out = Path(__file__).resolve().parents[1] / "src" / "betagraph" / "data" / "synthetic_counts_34.csv"
save_matrix(out, RawFlowMatrix(counts, labels))
print(f"wrote {out}")

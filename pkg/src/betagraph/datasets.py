"""Bundled example data."""
from importlib import resources

from .ingest import load_matrix


def synthetic_counts_path():
    """Path of the synthetic 34x34 flow-count CSV (labels ``country_01`` ...)."""
    return resources.files("betagraph") / "data" / "synthetic_counts_34.csv"


def load_synthetic_counts():
    """The bundled counts as a :class:`~betagraph.ingest.RawFlowMatrix`."""
    with resources.as_file(synthetic_counts_path()) as path:
        return load_matrix(path, "counts")

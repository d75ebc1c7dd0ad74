"""scholarmap: map a researcher dataset into an explorable 2D space.

Pipeline: CSV ingest -> text normalization -> TFIDF embeddings -> PCA to 2D
-> Gaussian mixture clustering, served over an HTTP API or a static export.
"""

from .ingest import Dataset, Publication, PublicationSet, Researcher, parse_dataset
from .mapstate import MapParams, MapState, build_map_state, query_map

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "Publication",
    "PublicationSet",
    "Researcher",
    "parse_dataset",
    "MapParams",
    "MapState",
    "build_map_state",
    "query_map",
    "__version__",
]

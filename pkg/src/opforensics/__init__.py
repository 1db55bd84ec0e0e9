"""Corpus forensics for coordinated posting operations.

Unsupervised analysis of social-media post archives: language-community
detection over term-user co-occurrence graphs, transnational language
timelines, and behavioural fingerprinting of posters via autocorrelation
and Fourier power spectra.
"""

__version__ = "0.1.0"

from .behavior import cluster_behaviors, heavy_users
from .community import cluster_users_by_language
from .config import AnalysisConfig
from .ingest import Corpus, PostRecord, SchemaMap, filter_window, load_corpus
from .langid import detect, detect_corpus, load_bundled_profiles
from .textproc import build_user_documents, load_stopwords

__all__ = [
    "__version__",
    "AnalysisConfig",
    "Corpus",
    "PostRecord",
    "SchemaMap",
    "load_corpus",
    "filter_window",
    "load_stopwords",
    "build_user_documents",
    "cluster_users_by_language",
    "cluster_behaviors",
    "heavy_users",
    "detect",
    "detect_corpus",
    "load_bundled_profiles",
]

"""Services package."""

from .canonical import CanonicalEngine, canonicalize
from .canonical_cache import CanonicalCache
from .classifier import Classifier, classify
from .cut_enumerator import CutEnumerator
from .verifier import Verifier

__all__ = [
    "CanonicalEngine",
    "canonicalize",
    "CanonicalCache",
    "Classifier",
    "classify",
    "CutEnumerator",
    "Verifier",
]

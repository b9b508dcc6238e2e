"""Exact verification toolkit for graded-commutative algebra structures."""

from koszul.algebra import (
    Element,
    FiniteModel,
    FreeModel,
    de_rham_model,
    koszul_sign,
    merge_odds,
    unshuffles,
    window_keys,
)

__all__ = [
    "Element",
    "FiniteModel",
    "FreeModel",
    "de_rham_model",
    "koszul_sign",
    "merge_odds",
    "unshuffles",
    "window_keys",
]

__version__ = "0.1.0"

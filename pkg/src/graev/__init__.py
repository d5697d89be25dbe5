"""Exact scaled norms and metrics on free groups over finite-support
Baire-space alphabets, with mechanical checkers for the conditions the
scales must satisfy."""

from .dyadic import Dyadic
from .words import (
    E,
    IDENTITY_WORD,
    Letter,
    Point,
    Word,
    invert,
    multiply,
    neg,
    parse_word,
    pos,
    project,
    reduce_word,
    ultrametric,
)
from .matches import Match, enumerate_matches, is_match, restrict_match

__all__ = [
    "Dyadic",
    "E",
    "IDENTITY_WORD",
    "Letter",
    "Match",
    "Point",
    "Word",
    "enumerate_matches",
    "invert",
    "is_match",
    "multiply",
    "neg",
    "parse_word",
    "pos",
    "project",
    "reduce_word",
    "restrict_match",
    "ultrametric",
]

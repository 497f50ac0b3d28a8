"""Bundled named examples: every worked configuration the test suite and CLI
reproduce, addressable as corpus:<name>."""

from __future__ import annotations

from typing import Optional

_ENTRIES = {
    "regularsubgroup": {
        "name": "regularsubgroup",
        "family": "A",
        "n": 4,
        "pairs": [[1, 3], [2, 4]],
        "description": "4x4 pattern with independent parameters at (1,3) and (2,4)",
    },
    "boundary-example": {
        "name": "boundary-example",
        "family": "A",
        "n": 4,
        "pairs": [[1, 2], [1, 3], [1, 4], [2, 4], [3, 4]],
        "description": "pattern whose plain wedge orbit has a codimension-1 "
                       "boundary at the curve (1,-1,-1,1)",
    },
    "so4-borel": {
        "name": "so4-borel",
        "family": "D",
        "rank": 2,
        "roots": ["L1-L2", "L1+L2"],
        "description": "full upper Borel unipotent of the split orthogonal "
                       "group in dimension 4",
    },
    "sp4-closed": {
        "name": "sp4-closed",
        "family": "C",
        "rank": 2,
        "roots": ["L1-L2", "L1+L2", "2L1"],
        "description": "closed symplectic set: the long root 2L1 is forced",
    },
    "trivial": {
        "name": "trivial",
        "family": "A",
        "n": 2,
        "pairs": [],
        "description": "empty set in SL_2; the plain point has infinitely "
                       "many boundary orbits, the weighted one does not",
    },
    "full-borel": {
        "name": "full-borel",
        "family": "A",
        "n": 3,
        "pairs": [[1, 2], [1, 3], [2, 3]],
        "description": "all positive pairs of SL_3 (full unipotent Borel)",
    },
}


def corpus_list() -> list:
    """Deterministic inventory of the bundled examples."""
    return [dict(_ENTRIES[k]) for k in sorted(_ENTRIES)]


def corpus_get(name: str) -> Optional[dict]:
    entry = _ENTRIES.get(name)
    return dict(entry) if entry else None


def corpus_names() -> list:
    return sorted(_ENTRIES)

"""Affine Steinberg and Kac-Moody group presentations over commutative rings.

The package enumerates affine real roots, classifies prenilpotent pairs,
computes Chevalley structure constants, emits the defining relation families
(and their rank-at-most-two amalgam) as files, replays the commutation
arguments for the non-classical pairs symbolically, and verifies every
relation as an exact matrix identity in a Laurent-polynomial loop model.
"""

from . import chevalley, collection, diagrams, loopmodel, presentation, rings, roots

__all__ = [
    "chevalley",
    "collection",
    "diagrams",
    "loopmodel",
    "presentation",
    "rings",
    "roots",
]

"""Relational read and write on associative arrays.

An array is a relation from indices to values.  Neither operation assumes its
index or value argument is a point: writing a vector of indices updates all of
them at once, and writing ``bot`` into a vector removes an element from it.
"""

from __future__ import annotations

from .relation import Relation


def awrite(x: Relation, y: Relation, z: Relation) -> Relation:
    """``x[y -> z] = (y & z^T) | (~y & x)``."""
    return (y & z.T) | (~y & x)


def aread(x: Relation, y: Relation) -> Relation:
    """``x[y] = x^T . y``; a point when ``x`` is a mapping and ``y`` a point."""
    return x.T @ y

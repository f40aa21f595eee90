"""Disjoint-set forests executed over finite Boolean-matrix relations."""

from .arrays import aread, awrite
from .peano import PeanoCtx, build_peano, less, rank_property, succ
from .programs import (
    ForestState,
    find_path_halving,
    find_path_splitting,
    find_set,
    find_set_path_compression,
    init_ranks,
    init_sets,
    make_set,
    path_compression,
    path_compression_assign,
    run_checked,
    union_sets,
    union_sets_by_rank,
    union_sets_combined,
)
from .relation import (
    Relation,
    RelationError,
    ancestors,
    classify,
    fc,
    format_matrix,
    parse_matrix,
    root_of,
    roots,
    wcc,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Finite Kleene relation algebra over bit-packed Boolean matrices.

A :class:`Relation` on a universe ``{0, ..., n-1}`` stores one Python ``int``
per row; bit ``j`` of row ``i`` is set iff the pair ``(i, j)`` is in the
relation.  Values are immutable and hashable, so expensive results such as
the reflexive-transitive closure are memoised.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, fields
from typing import Iterable, Sequence

MAX_SIZE = 256


class RelationError(ValueError):
    """Raised for malformed relations or operands of the wrong shape."""


def set_max_size(limit: int) -> None:
    """Change the universe-size cap applied to newly built relations."""
    global MAX_SIZE
    if limit < 1:
        raise RelationError(f"size cap must be positive, got {limit}")
    MAX_SIZE = limit
    _constant.cache_clear()


def _check_size(n: int) -> None:
    if n < 1:
        raise RelationError(f"universe size must be at least 1, got {n}")
    if n > MAX_SIZE:
        raise RelationError(f"universe size {n} exceeds cap {MAX_SIZE}")


def _bits(word: int) -> Iterable[int]:
    while word:
        low = word & -word
        yield low.bit_length() - 1
        word ^= low


class Relation:
    """An ``n`` x ``n`` Boolean matrix with value semantics."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Sequence[int]) -> None:
        _check_size(n)
        rows = tuple(rows)
        if len(rows) != n:
            raise RelationError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for i, r in enumerate(rows):
            if r < 0 or r & ~full:
                raise RelationError(f"row {i} has bits outside the {n}x{n} grid")
        self.n = n
        self.rows = rows
        self._hash = hash((n, rows))

    @classmethod
    def _raw(cls, n: int, rows: tuple[int, ...]) -> Relation:
        # trusted constructor for results of closed operations
        self = object.__new__(cls)
        self.n = n
        self.rows = rows
        self._hash = hash((n, rows))
        return self

    # construction

    @classmethod
    def bot(cls, n: int) -> Relation:
        return _constant("bot", n)

    @classmethod
    def top(cls, n: int) -> Relation:
        return _constant("top", n)

    @classmethod
    def identity(cls, n: int) -> Relation:
        return _constant("identity", n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Relation:
        rows = [0] * n
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise RelationError(f"pair ({i}, {j}) outside universe of size {n}")
            rows[i] |= 1 << j
        return cls(n, rows)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> Relation:
        n = len(matrix)
        rows = []
        for line in matrix:
            if len(line) != n:
                raise RelationError("matrix must be square")
            rows.append(sum(1 << j for j, b in enumerate(line) if b))
        return cls(n, rows)

    @classmethod
    def vector(cls, n: int, members: Iterable[int]) -> Relation:
        """The row-constant relation whose full rows are ``members``."""
        full = (1 << n) - 1
        rows = [0] * n
        for i in members:
            if not 0 <= i < n:
                raise RelationError(f"index {i} outside universe of size {n}")
            rows[i] = full
        return cls(n, rows)

    @classmethod
    def point(cls, n: int, index: int) -> Relation:
        return cls.vector(n, [index])

    @classmethod
    def from_int(cls, n: int, code: int) -> Relation:
        """Decode the row-major bit string ``code`` (row 0 in the low bits)."""
        mask = (1 << n) - 1
        return cls(n, [(code >> (i * n)) & mask for i in range(n)])

    def to_int(self) -> int:
        return sum(r << (i * self.n) for i, r in enumerate(self.rows))

    # inspection

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        return bool(self.rows[i] >> j & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in _bits(r)]

    def count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def support(self) -> list[int]:
        """Indices of the non-empty rows."""
        return [i for i, r in enumerate(self.rows) if r]

    def is_bot(self) -> bool:
        return not any(self.rows)

    def __bool__(self) -> bool:
        return any(self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Relation({self.n}, {sorted(self.pairs())})"

    def __str__(self) -> str:
        return "\n".join(self.lines())

    def lines(self) -> list[str]:
        return ["".join("1" if r >> j & 1 else "0" for j in range(self.n)) for r in self.rows]

    # lattice

    def _same(self, other: Relation) -> None:
        if not isinstance(other, Relation):
            raise TypeError(f"expected Relation, got {type(other).__name__}")
        if other.n != self.n:
            raise RelationError(f"size mismatch: {self.n} vs {other.n}")

    def __or__(self, other: Relation) -> Relation:
        self._same(other)
        return Relation._raw(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: Relation) -> Relation:
        self._same(other)
        return Relation._raw(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: Relation) -> Relation:
        self._same(other)
        return Relation._raw(self.n, tuple(a & ~b for a, b in zip(self.rows, other.rows)))

    def __invert__(self) -> Relation:
        full = (1 << self.n) - 1
        return Relation._raw(self.n, tuple(full ^ a for a in self.rows))

    def __le__(self, other: Relation) -> bool:
        self._same(other)
        return all(not (a & ~b) for a, b in zip(self.rows, other.rows))

    def __ge__(self, other: Relation) -> bool:
        return other <= self

    def __lt__(self, other: Relation) -> bool:
        return self <= other and self != other

    # composition, transposition, iteration

    def __matmul__(self, other: Relation) -> Relation:
        self._same(other)
        brows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc |= brows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return Relation._raw(self.n, tuple(out))

    @property
    def T(self) -> Relation:
        return _transpose(self)

    def star(self) -> Relation:
        return _star(self)

    def plus(self) -> Relation:
        return self @ _star(self)


@functools.lru_cache(maxsize=None)
def _constant(kind: str, n: int) -> Relation:
    _check_size(n)
    if kind == "bot":
        rows = (0,) * n
    elif kind == "top":
        rows = ((1 << n) - 1,) * n
    else:
        rows = tuple(1 << i for i in range(n))
    return Relation._raw(n, rows)


@functools.lru_cache(maxsize=1 << 16)
def _transpose(a: Relation) -> Relation:
    cols = [0] * a.n
    for i, r in enumerate(a.rows):
        bit = 1 << i
        while r:
            low = r & -r
            cols[low.bit_length() - 1] |= bit
            r ^= low
    return Relation._raw(a.n, tuple(cols))


@functools.lru_cache(maxsize=1 << 16)
def _star(a: Relation) -> Relation:
    # square (a | 1) until it stops growing: at most ceil(log2 n) + 1 rounds
    r = a | Relation.identity(a.n)
    while True:
        sq = r @ r
        if sq == r:
            return r
        r = sq


# --- operation table -------------------------------------------------------


def constant(kind: str, n: int) -> Relation:
    """Return ``bot``, ``top`` or ``identity`` on a universe of size ``n``."""
    try:
        maker = {"bot": Relation.bot, "top": Relation.top, "identity": Relation.identity}[kind]
    except KeyError:
        raise RelationError(f"unknown constant {kind!r}") from None
    return maker(n)


def lattice(op: str, a: Relation, b: Relation | None = None) -> Relation | bool:
    """Pointwise Boolean operation named by ``op``."""
    if op == "complement":
        return ~a
    if b is None:
        raise RelationError(f"{op} needs two operands")
    if op == "join":
        return a | b
    if op == "meet":
        return a & b
    if op == "difference":
        return a - b
    if op == "leq":
        return a <= b
    if op == "eq":
        a._same(b)
        return a == b
    raise RelationError(f"unknown lattice operation {op!r}")


def compose(a: Relation, b: Relation) -> Relation:
    return a @ b


def transpose(a: Relation) -> Relation:
    return a.T


def star(a: Relation) -> Relation:
    return a.star()


def plus(a: Relation) -> Relation:
    return a.plus()


# --- predicates, each from its defining inequation ----------------------------


def one(a: Relation) -> Relation:
    return Relation.identity(a.n)


def is_reflexive(x: Relation) -> bool:
    return one(x) <= x


def is_irreflexive(x: Relation) -> bool:
    return x <= ~one(x)


def is_transitive(x: Relation) -> bool:
    return x @ x <= x


def is_symmetric(x: Relation) -> bool:
    return x.T == x


def is_equivalence(x: Relation) -> bool:
    return is_reflexive(x) and is_transitive(x) and is_symmetric(x)


def is_total(x: Relation) -> bool:
    return one(x) <= x @ x.T


def is_surjective(x: Relation) -> bool:
    return one(x) <= x.T @ x


def is_univalent(x: Relation) -> bool:
    return x.T @ x <= one(x)


def is_injective(x: Relation) -> bool:
    return x @ x.T <= one(x)


def is_bijective(x: Relation) -> bool:
    return is_injective(x) and is_surjective(x)


def is_mapping(x: Relation) -> bool:
    return is_univalent(x) and is_total(x)


def is_vector(x: Relation) -> bool:
    return x @ Relation.top(x.n) == x


def is_point(x: Relation) -> bool:
    return is_vector(x) and is_bijective(x)


def is_arc(x: Relation) -> bool:
    top = Relation.top(x.n)
    return is_bijective(x @ top) and is_bijective(x.T @ top)


def is_acyclic(x: Relation) -> bool:
    return x.plus() <= ~one(x)


def is_forest(x: Relation) -> bool:
    return is_mapping(x) and is_acyclic(x - one(x))


@dataclass(frozen=True)
class PredicateReport:
    reflexive: bool
    transitive: bool
    symmetric: bool
    equivalence: bool
    total: bool
    surjective: bool
    univalent: bool
    injective: bool
    bijective: bool
    mapping: bool
    vector: bool
    point: bool
    arc: bool
    acyclic: bool
    forest: bool
    irreflexive: bool

    def true_flags(self) -> list[str]:
        return [f.name for f in fields(self) if getattr(self, f.name)]


def classify(a: Relation) -> PredicateReport:
    reflexive = is_reflexive(a)
    transitive = is_transitive(a)
    symmetric = is_symmetric(a)
    total = is_total(a)
    surjective = is_surjective(a)
    univalent = is_univalent(a)
    injective = is_injective(a)
    vector = is_vector(a)
    acyclic_off_diagonal = is_acyclic(a - one(a))
    return PredicateReport(
        reflexive=reflexive,
        transitive=transitive,
        symmetric=symmetric,
        equivalence=reflexive and transitive and symmetric,
        total=total,
        surjective=surjective,
        univalent=univalent,
        injective=injective,
        bijective=injective and surjective,
        mapping=univalent and total,
        vector=vector,
        point=vector and injective and surjective,
        arc=is_arc(a),
        acyclic=is_acyclic(a),
        forest=univalent and total and acyclic_off_diagonal,
        irreflexive=is_irreflexive(a),
    )


# --- components and roots --------------------------------------------------


def wcc(x: Relation) -> Relation:
    """Equivalence closure ``(x | x^T)*``: the weakly-connected components."""
    return (x | x.T).star()


def fc(x: Relation) -> Relation:
    """Same-tree relation ``x* . x^T*`` of a forest."""
    return x.star() @ x.T.star()


def ancestors(p: Relation, x: Relation) -> Relation:
    """``p^T* . x``: everything reachable from ``x`` along parent links."""
    return p.T.star() @ x


def roots(p: Relation) -> Relation:
    return (p & one(p)) @ Relation.top(p.n)


def root_of(p: Relation, x: Relation) -> Relation:
    return ancestors(p, x) & roots(p)


# --- vectors as sets ----------------------------------------------------------


def _require_vector(v: Relation, what: str) -> None:
    if not is_vector(v):
        raise RelationError(f"{what} must be a vector")


def down_count(v: Relation) -> int:
    """Number of set rows of a vector; strictly monotone in containment."""
    _require_vector(v, "down_count argument")
    return sum(1 for r in v.rows if r)


def cardinality_leq(v: Relation, w: Relation) -> bool:
    """``|v| <= |w|`` for vectors, decided by comparing row counts."""
    _require_vector(v, "left cardinality operand")
    _require_vector(w, "right cardinality operand")
    return down_count(v) <= down_count(w)


def choose_point(v: Relation) -> Relation:
    """The point for the lowest-index row of a non-empty vector."""
    _require_vector(v, "choose_point argument")
    for i, r in enumerate(v.rows):
        if r:
            return Relation.point(v.n, i)
    raise RelationError("choose_point needs a non-empty vector")


def point_index(x: Relation) -> int:
    """Index of a point (the single full row)."""
    if not is_point(x):
        raise RelationError("not a point")
    return next(i for i, r in enumerate(x.rows) if r)


def mapping_targets(x: Relation) -> list[int]:
    """For a mapping, the image of every index in order."""
    if not is_mapping(x):
        raise RelationError("not a mapping")
    return [r.bit_length() - 1 for r in x.rows]


# --- text matrix format -----------------------------------------------------


def format_matrix(a: Relation) -> str:
    return "\n".join([str(a.n), *a.lines()]) + "\n"


def parse_matrix(text: str) -> Relation:
    """Parse the line-oriented ``n`` / ``0``-``1`` rows format."""
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines:
        raise RelationError("empty matrix text")
    try:
        n = int(lines[0])
    except ValueError:
        raise RelationError(f"first line must be the size, got {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != n:
        raise RelationError(f"expected {n} matrix rows, got {len(body)}")
    rows = []
    for i, ln in enumerate(body):
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise RelationError(f"row {i} must be {n} characters of 0/1, got {ln!r}")
        rows.append(sum(1 << j for j, c in enumerate(ln) if c == "1"))
    return Relation(n, rows)

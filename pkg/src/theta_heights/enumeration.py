"""Exact counting of rooted non-plane unlabelled binary trees.

Conventions.  A tree is either a single external node or an unordered pair of
two subtrees; size n is the number of external nodes and height is the maximum
number of edges from the root to an external node, so size 1 has height 0 and
size 2 has height 1.  Counts are written y_n (all trees of size n) and y_{h,n}
(trees of size n and height at most h).

Two recurrences drive everything.  The total counts satisfy

    y_n = (sum_{k=1}^{n-1} y_k y_{n-k} + [n even] y_{n/2}) / 2,

coefficient extraction from y = z + (y^2 + y(z^2)) / 2, and the height-bounded
generating polynomials satisfy

    y_{h+1}(z) = z + (y_h(z)^2 + y_h(z^2)) / 2,   y_0(z) = z.

A brute-force enumerator over canonical forms provides an independent oracle
for small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import InsufficientTable, TooLarge
from .series_core import (
    TruncatedIntSeries,
    half_of,
    polya_substitute,
    series_add,
    series_mul,
    z_series,
)

_BRUTE_FORCE_MAX = 14


@dataclass(frozen=True)
class CountTable:
    """Exact counts y_1 .. y_{n_max}."""

    n_max: int
    counts: tuple[int, ...]  # counts[i] is y_{i+1}

    def y(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise InsufficientTable(f"y_{n} not in table (n_max={self.n_max})")
        return self.counts[n - 1]

    def prefix(self, k: int) -> tuple[int, ...]:
        if k > self.n_max:
            raise InsufficientTable(f"prefix {k} exceeds n_max={self.n_max}")
        return self.counts[:k]


@dataclass(frozen=True)
class HeightCountTable:
    """Counts y_{h,n} for 0 <= h <= h_max, 1 <= n <= n_max.

    Full rows are kept only when requested; for large tables callers track a
    few size columns instead, since the recurrence needs just the current row.
    """

    n_max: int
    h_max: int
    rows: tuple[tuple[int, ...], ...] | None  # rows[h][n], index 0 unused
    columns: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def count(self, h: int, n: int) -> int:
        if not 1 <= n <= self.n_max or not 0 <= h <= self.h_max:
            raise InsufficientTable(f"(h={h}, n={n}) outside table bounds")
        if self.rows is not None:
            return self.rows[h][n]
        if n in self.columns:
            return self.columns[n][h]
        raise InsufficientTable(f"column n={n} was not retained")

    def column(self, n: int) -> tuple[int, ...]:
        """All y_{h,n} for h = 0..h_max at fixed n."""
        if n in self.columns:
            return self.columns[n]
        if self.rows is not None and 1 <= n <= self.n_max:
            return tuple(row[n] for row in self.rows)
        raise InsufficientTable(f"column n={n} was not retained")

    def row(self, h: int) -> tuple[int, ...]:
        if self.rows is None:
            raise InsufficientTable("rows were not retained")
        if not 0 <= h <= self.h_max:
            raise InsufficientTable(f"row h={h} outside table bounds")
        return self.rows[h]


@dataclass(frozen=True)
class HeightDistribution:
    """Exact rational law of the height of a uniform size-n tree."""

    n: int
    probs: tuple[Fraction, ...]  # probs[h] = P(H_n = h), h = 0..n-1


def count_trees(n_max: int) -> CountTable:
    """Exact y_1..y_{n_max} by direct coefficient extraction."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    y = [0] * (n_max + 1)
    y[1] = 1
    for n in range(2, n_max + 1):
        s = 0
        for k in range(1, (n - 1) // 2 + 1):
            s += 2 * y[k] * y[n - k]
        if n % 2 == 0:
            s += y[n // 2] * (y[n // 2] + 1)
        # s collects y_k y_{n-k} over ordered splits plus the pair-symmetry
        # diagonal, which is always even
        y[n] = s // 2
    return CountTable(n_max, tuple(y[1:]))


def _height_step(row: TruncatedIntSeries) -> TruncatedIntSeries:
    squared = series_mul(row, row)
    paired = series_add(squared, polya_substitute(row))
    return series_add(z_series(row.order), half_of(paired))


def height_bounded_counts(
    n_max: int,
    h_max: int,
    keep_rows: bool = True,
    track_columns: tuple[int, ...] = (),
) -> HeightCountTable:
    """Iterate the height recurrence, retaining rows and/or chosen columns."""
    if n_max < 1 or h_max < 0:
        raise ValueError("need n_max >= 1 and h_max >= 0")
    for n in track_columns:
        if not 1 <= n <= n_max:
            raise InsufficientTable(f"tracked column n={n} outside 1..{n_max}")
    row = z_series(n_max)
    rows = [row.coeffs] if keep_rows else None
    cols = {n: [row.coeffs[n]] for n in track_columns}
    for _ in range(h_max):
        row = _height_step(row)
        if rows is not None:
            rows.append(row.coeffs)
        for n in track_columns:
            cols[n].append(row.coeffs[n])
    return HeightCountTable(
        n_max,
        h_max,
        tuple(rows) if rows is not None else None,
        {n: tuple(v) for n, v in cols.items()},
    )


def exceedance_counts(table: HeightCountTable, counts: CountTable) -> tuple[tuple[int, ...], ...]:
    """Matrix e_{h,n} = y_n - y_{h,n} of trees of size n with height above h."""
    if table.n_max > counts.n_max:
        raise InsufficientTable("count table shorter than height table")
    if table.rows is None:
        raise InsufficientTable("exceedance matrix needs retained rows")
    out = []
    for h in range(table.h_max + 1):
        row = table.rows[h]
        out.append(tuple(counts.y(n) - row[n] for n in range(1, table.n_max + 1)))
    return tuple(out)


def exceedance_column(table: HeightCountTable, counts: CountTable, n: int) -> tuple[int, ...]:
    """e_{h,n} for h = 0..h_max at fixed n."""
    col = table.column(n)
    y_n = counts.y(n)
    return tuple(y_n - v for v in col)


def height_distribution(n: int, table: HeightCountTable) -> HeightDistribution:
    """Exact law P(H_n = h) = (y_{h,n} - y_{h-1,n}) / y_n for h = 0..n-1."""
    if n < 1 or n > table.n_max or table.h_max < n - 1:
        raise InsufficientTable(f"table does not cover n={n} up to height {n - 1}")
    col = table.column(n)
    y_n = col[n - 1]  # all size-n trees have height at most n-1
    probs = []
    prev = 0
    for h in range(n):
        cur = col[h]
        probs.append(Fraction(cur - prev, y_n))
        prev = cur
    dist = HeightDistribution(n, tuple(probs))
    assert sum(dist.probs) == 1
    return dist


def exact_moment(dist: HeightDistribution, r: int) -> Fraction:
    """Exact E[H_n^r] as a rational number."""
    if r < 1:
        raise ValueError("moment order must be at least 1")
    return sum((Fraction(h) ** r) * p for h, p in enumerate(dist.probs))


class Tree:
    """Rooted non-plane binary tree; children are stored in canonical order."""

    __slots__ = ("left", "right", "size", "height", "_key")

    def __init__(self, left: "Tree | None" = None, right: "Tree | None" = None):
        if (left is None) != (right is None):
            raise ValueError("a node has either zero or two children")
        self.left = left
        self.right = right
        if left is None:
            self.size = 1
            self.height = 0
            self._key = (1,)
        else:
            if right.canonical_key() < left.canonical_key():
                left, right = right, left
                self.left, self.right = left, right
            self.size = left.size + right.size
            self.height = 1 + max(left.height, right.height)
            self._key = (self.size, left.canonical_key(), right.canonical_key())

    def is_leaf(self) -> bool:
        return self.left is None

    def canonical_key(self):
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Tree) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if self.is_leaf():
            return "Leaf"
        return f"Tree(size={self.size}, height={self.height})"


def leaf() -> Tree:
    return Tree()


def node(a: Tree, b: Tree) -> Tree:
    return Tree(a, b)


@lru_cache(maxsize=None)
def _all_trees(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (leaf(),)
    seen = {}
    for k in range(1, n // 2 + 1):
        for a in _all_trees(k):
            for b in _all_trees(n - k):
                t = node(a, b)
                seen[t.canonical_key()] = t
    return tuple(sorted(seen.values(), key=Tree.canonical_key))


def brute_force_enumerate(n: int) -> tuple[Tree, ...]:
    """All distinct trees of size n, via canonicalized exhaustive generation."""
    if n < 1:
        raise ValueError("size must be at least 1")
    if n > _BRUTE_FORCE_MAX:
        raise TooLarge(f"exhaustive enumeration guarded at n <= {_BRUTE_FORCE_MAX}")
    return _all_trees(n)


def brute_force_height_counts(n: int) -> dict[int, int]:
    """Counts of size-n trees grouped by exact height."""
    out: dict[int, int] = {}
    for t in brute_force_enumerate(n):
        out[t.height] = out.get(t.height, 0) + 1
    return out

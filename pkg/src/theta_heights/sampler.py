"""Uniform random generation of size-n trees by the recursive method.

A size-n tree is an unordered pair of subtrees of sizes {k, n-k}; the number
of trees realizing a given split is y_k y_{n-k} for k < n-k and the multiset
count y (y + 1) / 2 with y = y_{n/2} for the equal split.  Sampling therefore
draws the split from these exact integer weights, then recurses:

  * unequal split: the two children are independent uniform samples;
  * equal split: with weight y of y (y + 1) / 2 the two children coincide
    (sample one, duplicate); otherwise sample an ordered pair conditioned on
    being distinct by rejecting equal pairs (expected rejections 1 / (y - 1)).

All randomness flows through integer randrange on exact weights, so the
output law is exactly uniform over distinct trees.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass

from .enumeration import CountTable, Tree, count_trees, leaf, node
from .errors import InsufficientTable


@dataclass(frozen=True)
class HeightStats:
    """Seeded Monte-Carlo height summary for fixed tree size."""

    n: int
    trials: int
    seed: int
    histogram: tuple[tuple[int, int], ...]  # (height, occurrences), height ascending
    mean: float
    variance: float


def split_weights(n: int, counts: CountTable) -> tuple[tuple[int, int], ...]:
    """Exact weights ((k, weight) for k = 1..n // 2) of the unordered splits."""
    if n < 2:
        raise ValueError("splits exist only for n >= 2")
    if counts.n_max < n - 1:
        raise InsufficientTable(f"need counts up to {n - 1}, have {counts.n_max}")
    out = []
    for k in range(1, n // 2 + 1):
        if k < n - k:
            w = counts.y(k) * counts.y(n - k)
        else:
            y = counts.y(k)
            w = y * (y + 1) // 2
        out.append((k, w))
    if counts.n_max >= n:
        assert sum(w for _, w in out) == counts.y(n)
    return tuple(out)


def _cumulative_splits(n: int, counts: CountTable, memo: dict) -> tuple[list[int], list[int]]:
    if n not in memo:
        ks = []
        cums = []
        acc = 0
        for k, w in split_weights(n, counts):
            acc += w
            ks.append(k)
            cums.append(acc)
        memo[n] = (ks, cums)
    return memo[n]


def _sample(n: int, counts: CountTable, rng: random.Random, memo: dict) -> Tree:
    if n == 1:
        return leaf()
    ks, cums = _cumulative_splits(n, counts, memo)
    k = ks[bisect_right(cums, rng.randrange(cums[-1]))]
    if k < n - k:
        return node(_sample(k, counts, rng, memo), _sample(n - k, counts, rng, memo))
    y = counts.y(k)
    if rng.randrange(y * (y + 1) // 2) < y:
        child = _sample(k, counts, rng, memo)
        return node(child, child)
    while True:
        a = _sample(k, counts, rng, memo)
        b = _sample(k, counts, rng, memo)
        if a.canonical_key() != b.canonical_key():
            return node(a, b)


def sample_tree(n: int, counts: CountTable, seed: int | random.Random) -> Tree:
    """One exactly-uniform tree of size n; seed is an integer or a Random."""
    if n < 1:
        raise ValueError("size must be at least 1")
    if n > 1 and counts.n_max < n:
        raise InsufficientTable(f"need counts up to {n}, have {counts.n_max}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return _sample(n, counts, rng, {})


def empirical_height_stats(
    n: int,
    trials: int,
    seed: int,
    counts: CountTable | None = None,
) -> HeightStats:
    """Histogram and sample moments of height over seeded uniform samples."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if counts is None:
        counts = count_trees(max(n, 1))
    elif n > 1 and counts.n_max < n:
        raise InsufficientTable(f"need counts up to {n}, have {counts.n_max}")
    rng = random.Random(seed)
    memo: dict = {}
    freq: dict[int, int] = {}
    total = 0
    total_sq = 0
    for _ in range(trials):
        ht = _sample(n, counts, rng, memo).height
        freq[ht] = freq.get(ht, 0) + 1
        total += ht
        total_sq += ht * ht
    mean = total / trials
    variance = (total_sq - trials * mean * mean) / (trials - 1) if trials > 1 else 0.0
    return HeightStats(
        n=n,
        trials=trials,
        seed=seed,
        histogram=tuple(sorted(freq.items())),
        mean=mean,
        variance=variance,
    )

"""Frequent itemset mining over sensor-id transactions.

Support thresholds are kept as exact fractions so that borderline cases
such as 2 of 4 transactions at ``min_support=0.5`` are accepted.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Union

from .errors import ConfigError


def as_fraction(value: Union[float, str, Fraction]) -> Fraction:
    if isinstance(value, float):
        # 0.3 should mean 3/10, not the nearest binary double
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class MiningParams:
    min_support: Fraction = Fraction(1, 2)

    def __post_init__(self):
        support = as_fraction(self.min_support)
        if not 0 < support < 1:
            raise ConfigError(f"min_support must lie strictly between 0 and 1, got {self.min_support}")
        object.__setattr__(self, "min_support", support)

    def is_frequent(self, support_count: int, n_transactions: int) -> bool:
        s = self.min_support
        return n_transactions > 0 and support_count * s.denominator >= s.numerator * n_transactions


@dataclass(frozen=True, order=True)
class FrequentItemset:
    items: tuple  # sorted sensor ids
    support_count: int

    @property
    def size(self) -> int:
        return len(self.items)

    def __contains__(self, sensor):
        return sensor in self.items


def as_transactions(lists: Iterable[Iterable[str]]) -> List[frozenset]:
    return [frozenset(items) for items in lists]


def _support(candidate: frozenset, transactions: Sequence[frozenset]) -> int:
    return sum(1 for t in transactions if candidate <= t)


def frequent_itemsets(transactions: Iterable[Iterable[str]], params: MiningParams = MiningParams()) -> List[FrequentItemset]:
    """Level-wise Apriori search for every itemset meeting ``min_support``.

    Results are ordered by size descending, support descending, then ids.
    """
    transactions = as_transactions(transactions)
    n = len(transactions)
    if n == 0:
        return []

    found = []
    items = sorted(set().union(*transactions))
    level = []
    for item in items:
        count = _support(frozenset((item,)), transactions)
        if params.is_frequent(count, n):
            level.append((item,))
            found.append(FrequentItemset((item,), count))

    k = 1
    while level:
        frequent = set(level)
        candidates = []
        # join sorted k-tuples sharing their first k-1 items
        for i, a in enumerate(level):
            for b in level[i + 1:]:
                if a[:-1] != b[:-1]:
                    break
                cand = a + (b[-1],)
                if all(sub in frequent for sub in combinations(cand, k)):
                    candidates.append(cand)
        level = []
        for cand in candidates:
            count = _support(frozenset(cand), transactions)
            if params.is_frequent(count, n):
                level.append(cand)
                found.append(FrequentItemset(cand, count))
        k += 1

    return sorted(found, key=dominance_key)


def dominance_key(itemset: FrequentItemset):
    return (-itemset.size, -itemset.support_count, itemset.items)


def select_dominant_itemset(frequent: Iterable[FrequentItemset]) -> Optional[FrequentItemset]:
    """Largest frequent set; ties go to higher support, then smaller ids."""
    return min(frequent, key=dominance_key, default=None)

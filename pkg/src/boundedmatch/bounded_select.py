"""Linear-time k-th selection and an O(k)-space streaming top-k buffer."""

from __future__ import annotations

import random
from operator import itemgetter
from typing import Any, Callable, Optional, Sequence

from .graph_store import ResourceMeter

_GROUP = 5


def _identity(x):
    return x


def select_kth(items: Sequence, k: int, key: Optional[Callable] = None,
               randomized: bool = False, rng: Optional[random.Random] = None):
    """Return the k-th largest item (k=1 is the maximum).

    Deterministic median-of-medians by default; ``randomized=True`` switches
    to a random pivot.  Keys are expected to be distinct.
    """
    n = len(items)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for {n} items")
    key = key or _identity
    if randomized and rng is None:
        rng = random.Random(0)
    pool = list(items)
    while True:
        if len(pool) <= _GROUP:
            pool.sort(key=key, reverse=True)
            return pool[k - 1]
        if randomized:
            pivot = key(pool[rng.randrange(len(pool))])
        else:
            pivot = key(_median_of_medians(pool, key))
        hi = [x for x in pool if key(x) > pivot]
        if k <= len(hi):
            pool = hi
            continue
        eq = [x for x in pool if key(x) == pivot]
        if k <= len(hi) + len(eq):
            return eq[0]
        k -= len(hi) + len(eq)
        pool = [x for x in pool if key(x) < pivot]


def _median_of_medians(pool: list, key: Callable):
    medians = []
    for i in range(0, len(pool), _GROUP):
        group = sorted(pool[i:i + _GROUP], key=key)
        medians.append(group[(len(group) - 1) // 2])
    return select_kth(medians, (len(medians) + 1) // 2, key)


class TopKBuffer:
    """Keeps the ``capacity`` largest records pushed so far.

    Records are pushed into a staging block; when the block fills, retained
    and staged records are merged and cut back to ``capacity`` with one
    :func:`select_kth` call.  ``block`` defaults to ``capacity``, so at most
    2*capacity records are held.

    When a meter is given the buffer charges ``(capacity + block) *
    (record_words + 1)`` words up front (the +1 is selection scratch) and
    releases them in :meth:`close`.
    """

    def __init__(self, capacity: int, block: Optional[int] = None,
                 key: Callable = itemgetter(0), meter: Optional[ResourceMeter] = None,
                 record_words: int = 1, randomized: bool = False,
                 rng: Optional[random.Random] = None):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.block = block if block is not None else capacity
        if self.block < 1:
            raise ValueError("block must be >= 1")
        self.key = key
        self.randomized = randomized
        self.rng = rng
        self.retained: list = []
        self.staging: list = []
        self.pushed = 0
        self.dropped = 0
        self._cut = None
        self.selections = 0
        self.max_held = 0
        self._meter = meter
        self._charged = 0
        if meter is not None:
            self._charged = meter.alloc((self.capacity + self.block) * (record_words + 1),
                                        "topk")

    def __len__(self) -> int:
        return len(self.retained) + len(self.staging)

    def push(self, item: Any) -> None:
        self.pushed += 1
        # anything below the last cut can never re-enter the top set
        if self._cut is not None and self.key(item) < self._cut:
            self.dropped += 1
            return
        if len(self.retained) < self.capacity and not self.staging:
            self.retained.append(item)
        else:
            self.staging.append(item)
            if len(self.staging) >= self.block:
                self._compact()
        held = len(self.retained) + len(self.staging)
        assert held <= self.capacity + self.block
        if held > self.max_held:
            self.max_held = held

    def _compact(self) -> None:
        merged = self.retained + self.staging
        self.staging = []
        if len(merged) <= self.capacity:
            self.retained = merged
            return
        self.selections += 1
        cut = self.key(select_kth(merged, self.capacity, self.key,
                                  self.randomized, self.rng))
        self.retained = [x for x in merged if self.key(x) >= cut]
        self._cut = cut

    def threshold(self):
        """Current admission cut (None until the first selection)."""
        return self._cut

    def finish(self) -> list:
        """The top ``capacity`` records seen, in no particular order."""
        if self.staging:
            self._compact()
        return list(self.retained)

    def close(self) -> None:
        if self._meter is not None and self._charged:
            self._meter.free(self._charged, "topk")
            self._charged = 0

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

"""Constant-time membership over small vertex sets.

Randomized mode hashes an h-key set into h^2 slots with a universal family and
retries until the hash is injective.  Deterministic mode uses sorted
containers instead (O(log h) per query, never fails).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

from sortedcontainers import SortedDict, SortedSet

from .graph_store import ResourceMeter

MERSENNE_61 = (1 << 61) - 1


class HashBuildFailure(RuntimeError):
    """No injective hash was found within the round budget."""

    def __init__(self, rounds: int, size: int):
        super().__init__(f"no injective hash for {size} keys after {rounds} rounds")
        self.rounds = rounds
        self.size = size


@dataclass(frozen=True)
class UniversalHash:
    """x -> ((a*x + b) mod p) mod r."""

    a: int
    b: int
    r: int
    p: int = MERSENNE_61

    @classmethod
    def sample(cls, r: int, rng: random.Random) -> "UniversalHash":
        return cls(rng.randrange(1, MERSENNE_61), rng.randrange(MERSENNE_61), r)

    def __call__(self, x: int) -> int:
        return ((self.a * x + self.b) % self.p) % self.r


def rounds_for_epsilon(epsilon: float) -> int:
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return max(1, math.ceil(math.log2(1 / epsilon)))


def is_injective(hf: UniversalHash, keys: Sequence[int]) -> bool:
    seen = set()
    for x in keys:
        s = hf(x)
        if s in seen:
            return False
        seen.add(s)
    return True


class InjectiveTable:
    """Slot array of size r plus an epoch stamp per slot.

    A slot is live iff its stamp equals the table's final epoch.  Slots store
    the key next to the payload so non-member keys that hash onto a live slot
    are rejected.
    """

    __slots__ = ("hash", "stamp", "keys", "payloads", "epoch", "rounds_used",
                 "size", "array_inits")

    def __init__(self, r: int):
        self.hash: Optional[UniversalHash] = None
        self.stamp = [0] * r
        self.keys = [0] * r
        self.payloads: list = [None] * r
        self.epoch = 0
        self.rounds_used = 0
        self.size = 0
        self.array_inits = 1

    @property
    def slots(self) -> int:
        return len(self.stamp)

    def lookup(self, key: int, default=None):
        if self.size == 0:
            return default
        s = self.hash(key)
        if self.stamp[s] == self.epoch and self.keys[s] == key:
            return self.payloads[s]
        return default

    def __contains__(self, key: int) -> bool:
        if self.size == 0:
            return False
        s = self.hash(key)
        return self.stamp[s] == self.epoch and self.keys[s] == key

    def __len__(self) -> int:
        return self.size

    @staticmethod
    def words(h: int) -> int:
        """Workspace of a table over h keys: three words per slot plus a header."""
        return 3 * h * h + 4


def build_injective(keys: Sequence[int], payloads: Optional[Sequence[Any]] = None,
                    epsilon: float = 2.0**-20, rng: Optional[random.Random] = None,
                    rounds: Optional[int] = None,
                    meter: Optional[ResourceMeter] = None) -> InjectiveTable:
    """Find a hash injective on ``keys`` into len(keys)^2 slots.

    Tries at most ``rounds`` (default ceil(log2(1/epsilon))) random functions;
    each try costs O(h) thanks to the epoch stamps.  Raises
    :class:`HashBuildFailure` if every try collides.
    """
    keys = list(keys)
    h = len(keys)
    if len(set(keys)) != h:
        raise ValueError("duplicate keys")
    if payloads is not None and len(payloads) != h:
        raise ValueError("payloads and keys differ in length")
    if rounds is None:
        rounds = rounds_for_epsilon(epsilon)
    rng = rng or random.Random(0)
    if meter is not None:
        meter.alloc(InjectiveTable.words(h), "hash")
    table = InjectiveTable(h * h)
    if h == 0:
        return table
    for attempt in range(1, rounds + 1):
        hf = UniversalHash.sample(h * h, rng)
        table.epoch += 1
        ok = True
        for x in keys:
            s = hf(x)
            if table.stamp[s] == table.epoch:
                ok = False
                break
            table.stamp[s] = table.epoch
        table.rounds_used = attempt
        if ok:
            table.hash = hf
            for i, x in enumerate(keys):
                s = hf(x)
                table.keys[s] = x
                table.payloads[s] = payloads[i] if payloads is not None else i
            table.size = h
            return table
    raise HashBuildFailure(rounds, h)


class OrderedTable:
    """Deterministic stand-in for :class:`InjectiveTable` (balanced-tree map)."""

    __slots__ = ("_map", "rounds_used")

    def __init__(self, items: Iterable[tuple[int, Any]] = ()):
        self._map = SortedDict(items)
        self.rounds_used = 0

    def lookup(self, key: int, default=None):
        return self._map.get(key, default)

    def __contains__(self, key: int) -> bool:
        return key in self._map

    def __len__(self) -> int:
        return len(self._map)

    @staticmethod
    def words(h: int) -> int:
        return 4 * h + 4


def build_ordered_fallback(keys: Sequence[int], payloads: Optional[Sequence[Any]] = None,
                           meter: Optional[ResourceMeter] = None) -> OrderedTable:
    keys = list(keys)
    if payloads is None:
        payloads = range(len(keys))
    if meter is not None:
        meter.alloc(OrderedTable.words(len(keys)), "hash")
    return OrderedTable(zip(keys, payloads))


class HashedSet:
    """Insert/contains set of bounded capacity, chained universal hashing.

    Used for sets that grow while an algorithm runs (the exclusion set of
    the large-vertex matching, covered vertices).  Never fails; expected O(1).
    """

    __slots__ = ("capacity", "hash", "buckets", "size")

    def __init__(self, capacity: int, rng: random.Random):
        self.capacity = capacity
        r = max(1, 2 * capacity)
        self.hash = UniversalHash.sample(r, rng)
        self.buckets: list[list[int]] = [[] for _ in range(r)]
        self.size = 0

    def add(self, x: int) -> None:
        b = self.buckets[self.hash(x)]
        if x not in b:
            if self.size >= self.capacity:
                raise OverflowError("HashedSet capacity exceeded")
            b.append(x)
            self.size += 1

    def __contains__(self, x: int) -> bool:
        return x in self.buckets[self.hash(x)]

    def __len__(self) -> int:
        return self.size

    @staticmethod
    def words(capacity: int) -> int:
        return 2 * max(1, 2 * capacity) + capacity + 4


class OrderedSet:
    """Deterministic counterpart of :class:`HashedSet`."""

    __slots__ = ("capacity", "_set")

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._set = SortedSet()

    def add(self, x: int) -> None:
        if x not in self._set:
            if len(self._set) >= self.capacity:
                raise OverflowError("OrderedSet capacity exceeded")
            self._set.add(x)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __len__(self) -> int:
        return len(self._set)

    @staticmethod
    def words(capacity: int) -> int:
        return 2 * capacity + 4


def make_set(capacity: int, deterministic: bool, rng: random.Random,
             meter: Optional[ResourceMeter] = None):
    cls = OrderedSet if deterministic else HashedSet
    if meter is not None:
        meter.alloc(cls.words(capacity), "set")
    return OrderedSet(capacity) if deterministic else HashedSet(capacity, rng)


def free_set(s, meter: Optional[ResourceMeter]) -> None:
    if meter is not None:
        meter.free(type(s).words(s.capacity), "set")

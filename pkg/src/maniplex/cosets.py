"""HLT-style Todd-Coxeter coset enumeration for involutory presentations.

Generators are their own inverses here (every presentation we feed in
contains the relator (i, i)), which lets the table track a single arrow
per generator.  Equalities discovered while tracing relators are merged
through a union-find over coset labels; the scan order is fixed, so for a
given presentation the enumeration is deterministic.  Enumeration either
completes below the coset cap or fails loudly - no partial tables.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from .core import Maniplex

SENTINEL = -1
DEFAULT_CAP = 100_000
CAP_ENV_VAR = "MANIPLEX_COSET_CAP"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{CAP_ENV_VAR} must be positive")
    return cap


class CosetCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Involutory generators 0..ngens-1 and relator words over them."""

    ngens: int
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "relators", tuple(tuple(w) for w in self.relators))
        if self.ngens < 1:
            raise ValueError("need at least one generator")
        for word in self.relators:
            if not word:
                raise ValueError("relators must be nonempty words")
            for letter in word:
                if not 0 <= letter < self.ngens:
                    raise ValueError(f"relator letter {letter} out of range")

    def extended(self, *extra: Sequence[int]) -> "Presentation":
        return Presentation(self.ngens, self.relators + tuple(tuple(w) for w in extra))


def string_coxeter(orders: Sequence[int]) -> Presentation:
    """String Coxeter presentation [p_1, ..., p_{n-1}] on n involutions."""
    n = len(orders) + 1
    relators: list[tuple[int, ...]] = [(i, i) for i in range(n)]
    for i, p in enumerate(orders):
        if p < 2:
            raise ValueError(f"branch order must be >= 2, got {p}")
        relators.append((i, i + 1) * p)
    for i in range(n):
        for j in range(i + 2, n):
            relators.append((i, j) * 2)
    return Presentation(n, tuple(relators))


@dataclass(frozen=True)
class CosetTable:
    """Action of each generator on the cosets 0..count-1 (coset 0 = the subgroup)."""

    perms: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.perms[0]) if self.perms else 0

    def to_maniplex(self) -> Maniplex:
        return Maniplex(self.perms)


def coset_enumerate(
    pres: Presentation,
    subgroup_gens: Sequence[Sequence[int]] = (),
    cap: int | None = None,
) -> CosetTable:
    """Enumerate cosets of the subgroup generated by the given words.

    Raises CosetCapExceeded once more than `cap` cosets have been allocated
    (live or since merged).
    """
    if cap is None:
        cap = default_cap()
    ngens = pres.ngens
    labels: list[int] = []
    neighbors: list[list[int]] = []

    def add_vertex() -> int:
        if len(labels) >= cap:
            raise CosetCapExceeded(f"allocated more than {cap} cosets")
        c = len(labels)
        labels.append(c)
        neighbors.append([SENTINEL] * ngens)
        return c

    def find(c: int) -> int:
        root = c
        while labels[root] != root:
            root = labels[root]
        while labels[c] != root:
            labels[c], c = root, labels[c]
        return root

    def follow(c: int, d: int) -> int:
        c = find(c)
        if neighbors[c][d] == SENTINEL:
            neighbors[c][d] = add_vertex()
        return find(neighbors[c][d])

    def trace(c: int, word: Sequence[int]) -> int:
        for d in word:
            c = follow(c, d)
        return c

    def unify(a: int, b: int) -> None:
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            labels[b] = a
            for d in range(ngens):
                nb = neighbors[b][d]
                if nb != SENTINEL:
                    na = neighbors[a][d]
                    if na == SENTINEL:
                        neighbors[a][d] = nb
                    else:
                        stack.append((na, nb))

    start = add_vertex()
    for word in subgroup_gens:
        unify(trace(start, tuple(word)), start)
    scan = 0
    while scan < len(labels):
        if find(scan) == scan:
            for rel in pres.relators:
                unify(trace(scan, rel), scan)
        scan += 1

    live = [c for c in range(len(labels)) if find(c) == c]
    index = {c: k for k, c in enumerate(live)}
    perms = []
    for d in range(ngens):
        row = []
        for c in live:
            target = neighbors[c][d]
            if target == SENTINEL:  # impossible once (d, d) is a relator
                raise RuntimeError(f"generator {d} undefined on coset {index[c]}")
            row.append(index[find(target)])
        perms.append(tuple(row))
    return CosetTable(tuple(perms))

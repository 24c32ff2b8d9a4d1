"""Maniplexes as properly n-edge-coloured flag graphs.

A rank-n maniplex on m flags is stored as n involutions of {0, ..., m-1}:
``perms[i][f]`` is the flag joined to f by its colour-i edge.  The axioms
(fixed-point-free involutions, proper colouring, connectivity, and the
square condition for colours at distance > 1) are checked by `validate`,
not by the constructor, so partially built or deliberately broken
structures can be represented and reported on.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

DOT_PALETTE = ("red", "green", "blue", "orange")

AXIOM_INVOLUTION = "involution"
AXIOM_FIXED_POINT_FREE = "fixed-point-free"
AXIOM_PROPER = "proper-colouring"
AXIOM_CONNECTED = "connected"
AXIOM_SQUARE = "square"


class FormatError(ValueError):
    """A maniplex description that is structurally malformed."""


@dataclass(frozen=True)
class Maniplex:
    """Plain container for the edge-colouring permutations."""

    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "perms", tuple(tuple(row) for row in self.perms))

    @property
    def rank(self) -> int:
        return len(self.perms)

    @property
    def flag_count(self) -> int:
        return len(self.perms[0]) if self.perms else 0

    def adjacent(self, flag: int, colour: int) -> int:
        return self.perms[colour][flag]

    def __repr__(self) -> str:
        return f"Maniplex(rank={self.rank}, flags={self.flag_count})"


class Violation(NamedTuple):
    axiom: str
    witness: tuple


@dataclass
class ValidationReport:
    ok: bool
    structural: list[str]
    violations: list[Violation]


class Component(NamedTuple):
    canonical: int
    flags: tuple[int, ...]


class Face(NamedTuple):
    rank: int
    canonical: int
    flags: tuple[int, ...]


def structural_errors(m: Maniplex) -> list[str]:
    """Problems that make the permutation table meaningless (not axiom failures)."""
    errors = []
    if m.rank < 1:
        errors.append("rank must be at least 1")
        return errors
    size = len(m.perms[0])
    if size < 1:
        errors.append("flag set must be nonempty")
        return errors
    for i, row in enumerate(m.perms):
        if len(row) != size:
            errors.append(f"permutation {i} has length {len(row)}, expected {size}")
            continue
        for f, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < size:
                errors.append(f"permutation {i} entry {f} out of range: {v!r}")
                break
    return errors


def validate(m: Maniplex) -> ValidationReport:
    """Check the maniplex axioms, reporting one witness per violated axiom."""
    structural = structural_errors(m)
    if structural:
        return ValidationReport(False, structural, [])

    violations: list[Violation] = []
    seen: set[tuple] = set()

    def report(axiom: str, *witness) -> None:
        key = (axiom,) + witness[:-1]  # one witness per axiom/colour combination
        if key not in seen:
            seen.add(key)
            violations.append(Violation(axiom, tuple(witness)))

    n, size = m.rank, m.flag_count
    for i, row in enumerate(m.perms):
        for f in range(size):
            if row[row[f]] != f:
                report(AXIOM_INVOLUTION, i, f)
                break
        for f in range(size):
            if row[f] == f:
                report(AXIOM_FIXED_POINT_FREE, i, f)
                break
    for i in range(n):
        for j in range(i + 1, n):
            for f in range(size):
                if m.perms[i][f] == m.perms[j][f]:
                    report(AXIOM_PROPER, i, j, f)
                    break
    # connectivity under all colours
    seen_flags = [False] * size
    queue = deque([0])
    seen_flags[0] = True
    reached = 1
    while queue:
        f = queue.popleft()
        for row in m.perms:
            g = row[f]
            if not seen_flags[g]:
                seen_flags[g] = True
                reached += 1
                queue.append(g)
    if reached != size:
        report(AXIOM_CONNECTED, seen_flags.index(False))
    # colours at distance > 1 must generate 4-cycles
    for i in range(n):
        for j in range(i + 2, n):
            ri, rj = m.perms[i], m.perms[j]
            for f in range(size):
                if ri[rj[ri[rj[f]]]] != f:
                    report(AXIOM_SQUARE, i, j, f)
                    break
    return ValidationReport(not violations, [], violations)


def _check_colours(m: Maniplex, colours: Iterable[int]) -> tuple[int, ...]:
    cols = tuple(sorted(set(colours)))
    for c in cols:
        if not 0 <= c < m.rank:
            raise ValueError(f"colour {c} out of range for rank {m.rank}")
    return cols


def components(m: Maniplex, colours: Iterable[int]) -> list[Component]:
    """Connected components of the subgraph spanned by the given colours."""
    cols = _check_colours(m, colours)
    rows = [m.perms[c] for c in cols]
    size = m.flag_count
    comp = [-1] * size
    out = []
    for start in range(size):
        if comp[start] >= 0:
            continue
        comp[start] = start
        members = [start]
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for row in rows:
                g = row[f]
                if comp[g] < 0:
                    comp[g] = start
                    members.append(g)
                    queue.append(g)
        out.append(Component(start, tuple(sorted(members))))
    return out


def faces(m: Maniplex, i: int) -> list[Face]:
    """The i-faces: components after deleting the colour-i edges."""
    if not 0 <= i < m.rank:
        raise ValueError(f"face rank {i} out of range for rank {m.rank}")
    cols = [c for c in range(m.rank) if c != i]
    return [Face(i, c.canonical, c.flags) for c in components(m, cols)]


def face_map(m: Maniplex, i: int) -> list[int]:
    """flag -> canonical id of its i-face."""
    out = [-1] * m.flag_count
    for face in faces(m, i):
        for f in face.flags:
            out[f] = face.canonical
    return out


def dual(m: Maniplex) -> Maniplex:
    """Reverse the colours: colour i becomes colour n-1-i."""
    return Maniplex(tuple(reversed(m.perms)))


def _propagate(src: Maniplex, dst: Maniplex, image: int) -> Optional[tuple[int, ...]]:
    """Extend flag 0 -> image to a colour-preserving isomorphism, or fail.

    The proper colouring forces the whole map once one image is chosen, so
    this is a single BFS with consistency checks.
    """
    size = src.flag_count
    phi = [-1] * size
    used = [False] * size
    phi[0] = image
    used[image] = True
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for i in range(src.rank):
            g = src.perms[i][f]
            h = dst.perms[i][phi[f]]
            if phi[g] < 0:
                if used[h]:
                    return None
                phi[g] = h
                used[h] = True
                queue.append(g)
            elif phi[g] != h:
                return None
    return tuple(phi)


def isomorphic(m1: Maniplex, m2: Maniplex) -> Optional[tuple[int, ...]]:
    """A colour-preserving flag bijection m1 -> m2, or None."""
    if m1.rank != m2.rank or m1.flag_count != m2.flag_count:
        return None
    if m1.flag_count == 0:
        return ()
    for image in range(m2.flag_count):
        phi = _propagate(m1, m2, image)
        if phi is not None:
            return phi
    return None


class AutomorphismInfo(NamedTuple):
    count: int
    is_reflexible: bool


def automorphism_count(m: Maniplex) -> AutomorphismInfo:
    """Number of colour-preserving automorphisms.

    The action on flags is free (connectivity plus forced propagation), so
    the count equals the number of valid images of flag 0 and divides the
    flag count; equality is reflexibility.
    """
    count = sum(1 for image in range(m.flag_count) if _propagate(m, m, image) is not None)
    return AutomorphismInfo(count, count == m.flag_count)


def restrict(m: Maniplex, flags: Iterable[int], colours: Iterable[int]) -> Maniplex:
    """Sub-maniplex on a flag set closed under the given colours.

    Colours are relabelled in increasing order, flags in increasing order.
    """
    cols = _check_colours(m, colours)
    flag_list = sorted(set(flags))
    index = {f: k for k, f in enumerate(flag_list)}
    perms = []
    for c in cols:
        row = []
        for f in flag_list:
            g = m.perms[c][f]
            if g not in index:
                raise ValueError(f"flag set not closed under colour {c} at flag {f}")
            row.append(index[g])
        perms.append(tuple(row))
    return Maniplex(tuple(perms))


# ---------- serialization ----------

def to_json_dict(m: Maniplex) -> dict:
    return {"rank": m.rank, "flags": m.flag_count, "perms": [list(row) for row in m.perms]}


def from_json_dict(doc: object) -> Maniplex:
    """Parse the interchange dict, rejecting structural garbage."""
    if not isinstance(doc, dict):
        raise FormatError("maniplex document must be a JSON object")
    for key in ("rank", "flags", "perms"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}")
    rank, nflags, perms = doc["rank"], doc["flags"], doc["perms"]
    if not isinstance(rank, int) or rank < 1:
        raise FormatError("rank must be a positive integer")
    if not isinstance(nflags, int) or nflags < 1:
        raise FormatError("flags must be a positive integer")
    if not isinstance(perms, list) or len(perms) != rank:
        raise FormatError("perms must be a list with one row per colour")
    for i, row in enumerate(perms):
        if not isinstance(row, list) or len(row) != nflags:
            raise FormatError(f"perms[{i}] must be a list of length {nflags}")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < nflags:
                raise FormatError(f"perms[{i}] entry out of range: {v!r}")
    return Maniplex(tuple(tuple(row) for row in perms))


def dumps_json(obj: object) -> str:
    """Canonical JSON used for every artifact this package writes."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def maniplex_to_json(m: Maniplex) -> str:
    return dumps_json(to_json_dict(m))


def maniplex_from_json(text: str) -> Maniplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_json_dict(doc)


def to_dot(m: Maniplex) -> str:
    """Flag graph in DOT form: one node per flag, coloured edges per matching."""
    lines = ["graph maniplex {", "  node [shape=circle];"]
    for f in range(m.flag_count):
        lines.append(f"  {f};")
    for i in range(m.rank):
        colour = DOT_PALETTE[i % len(DOT_PALETTE)]
        row = m.perms[i]
        for f in range(m.flag_count):
            if f < row[f]:
                lines.append(f'  {f} -- {row[f]} [color={colour}, label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Ranked face posets of maniplexes and the abstract-polytope axioms.

The i-faces of a maniplex are the connected components after deleting the
colour-i edges; two faces of different ranks are incident exactly when
their flag sets intersect.  A least face (rank -1) and greatest face
(rank n) are adjoined.  `is_polytope` checks, in order: the incidence
relation is actually a partial order (transitive), boundedness, gradedness
(every maximal chain has one face per rank), the diamond condition, and
strong flag connectivity via sections.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

from .core import Face, FormatError, Maniplex, dual, faces, validate

ISO_FACE_LIMIT = 64  # brute-force poset matching is only vouched for below this


@dataclass(frozen=True)
class RankedPoset:
    """Faces carry opaque string labels; `less` is the strict order."""

    rank: int
    faces: tuple[tuple[str, ...], ...]  # index r+1 holds the rank-r labels
    less: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "faces", tuple(tuple(sorted(level)) for level in self.faces))
        object.__setattr__(self, "less", frozenset(self.less))
        if len(self.faces) != self.rank + 2:
            raise FormatError("need one face level per rank -1..n")
        ranks: dict[str, int] = {}
        for r, level in enumerate(self.faces, start=-1):
            for label in level:
                if label in ranks:
                    raise FormatError(f"duplicate face label {label!r}")
                ranks[label] = r
        for a, b in self.less:
            if a not in ranks or b not in ranks:
                raise FormatError(f"order pair ({a!r}, {b!r}) uses unknown labels")
            if ranks[a] >= ranks[b]:
                raise FormatError(f"order pair ({a!r}, {b!r}) does not increase rank")

    @cached_property
    def rank_of(self) -> dict[str, int]:
        return {label: r for r, level in enumerate(self.faces, start=-1) for label in level}

    @cached_property
    def up(self) -> dict[str, frozenset[str]]:
        out: dict[str, set[str]] = {label: set() for label in self.rank_of}
        for a, b in self.less:
            out[a].add(b)
        return {k: frozenset(v) for k, v in out.items()}

    @cached_property
    def down(self) -> dict[str, frozenset[str]]:
        out: dict[str, set[str]] = {label: set() for label in self.rank_of}
        for a, b in self.less:
            out[b].add(a)
        return {k: frozenset(v) for k, v in out.items()}

    @cached_property
    def covers(self) -> tuple[tuple[str, str], ...]:
        """Pairs a < b with nothing strictly between."""
        out = [(a, b) for a, b in self.less if not self.up[a] & self.down[b]]
        return tuple(sorted(out))

    def lt(self, a: str, b: str) -> bool:
        return (a, b) in self.less

    @property
    def proper_face_count(self) -> int:
        return sum(len(level) for level in self.faces[1:-1])

    def level(self, r: int) -> tuple[str, ...]:
        return self.faces[r + 1]


def pos_of(m: Maniplex) -> RankedPoset:
    """The face poset, with labels 'rank:canonicalFlag' plus '-1:0' and 'n:0'."""
    n = m.rank
    levels: list[tuple[str, ...]] = []
    flagsets: dict[str, frozenset[int]] = {}
    for i in range(n):
        labels = []
        for face in faces(m, i):
            label = f"{i}:{face.canonical}"
            labels.append(label)
            flagsets[label] = frozenset(face.flags)
        levels.append(tuple(labels))
    bottom, top = "-1:0", f"{n}:0"
    less: set[tuple[str, str]] = {(bottom, top)}
    for labels in levels:
        for label in labels:
            less.add((bottom, label))
            less.add((label, top))
    for i in range(n):
        for j in range(i + 1, n):
            for la in levels[i]:
                sa = flagsets[la]
                for lb in levels[j]:
                    if not sa.isdisjoint(flagsets[lb]):
                        less.add((la, lb))
    return RankedPoset(n, ((bottom,),) + tuple(levels) + ((top,),), frozenset(less))


# ---------- flag function ----------

@dataclass
class FlagFunctionTable:
    """flag -> maximal chain of pos_of(M), and the fibers of that map."""

    chains: dict[int, tuple[str, ...]]
    fibers: dict[tuple[str, ...], tuple[int, ...]]


def flag_function(m: Maniplex) -> FlagFunctionTable:
    n = m.rank
    labels_by_rank = []
    for i in range(n):
        row = [""] * m.flag_count
        for face in faces(m, i):
            for f in face.flags:
                row[f] = f"{i}:{face.canonical}"
        labels_by_rank.append(row)
    bottom, top = "-1:0", f"{n}:0"
    chains = {
        f: (bottom,) + tuple(labels_by_rank[i][f] for i in range(n)) + (top,)
        for f in range(m.flag_count)
    }
    fibers: dict[tuple[str, ...], list[int]] = defaultdict(list)
    for f in range(m.flag_count):
        fibers[chains[f]].append(f)
    return FlagFunctionTable(chains, {k: tuple(sorted(v)) for k, v in fibers.items()})


class FaithfulnessResult(NamedTuple):
    faithful: bool
    witness: Optional[tuple[int, int]]  # two flags sharing every face


def is_faithful(m: Maniplex) -> FaithfulnessResult:
    table = flag_function(m)
    for chain in sorted(table.fibers):
        fiber = table.fibers[chain]
        if len(fiber) > 1:
            return FaithfulnessResult(False, (fiber[0], fiber[1]))
    return FaithfulnessResult(True, None)


# ---------- polytope axioms ----------

@dataclass
class PolytopeReport:
    ok: bool
    failed: Optional[str]  # first failed axiom
    witness: object
    malformed: Optional[str]  # distinct: structure is not even a graded poset


def order_transitivity_witness(p: RankedPoset) -> Optional[tuple[str, str, str]]:
    for b in p.rank_of:
        for a in p.down[b]:
            for c in p.up[b]:
                if (a, c) not in p.less:
                    return (a, b, c)
    return None


def boundedness_witness(p: RankedPoset) -> Optional[tuple]:
    if len(p.level(-1)) != 1:
        return ("minimum", p.level(-1))
    if len(p.level(p.rank)) != 1:
        return ("maximum", p.level(p.rank))
    bottom, top = p.level(-1)[0], p.level(p.rank)[0]
    for label, r in p.rank_of.items():
        if label != bottom and (bottom, label) not in p.less:
            return ("minimum-not-below", label)
        if label != top and (label, top) not in p.less:
            return ("maximum-not-above", label)
    return None


def gradedness_witness(p: RankedPoset) -> Optional[tuple[str, str]]:
    """A cover pair skipping a rank, if any.

    With transitivity and boundedness in hand, every maximal chain is a
    bottom-to-top cover path, so 'all maximal chains have n+2 elements'
    is exactly 'every cover raises rank by one'.
    """
    for a, b in p.covers:
        if p.rank_of[b] - p.rank_of[a] != 1:
            return (a, b)
    return None


def diamond_witness(p: RankedPoset) -> Optional[tuple[str, str, tuple[str, ...]]]:
    for a, b in sorted(p.less):
        if p.rank_of[b] - p.rank_of[a] == 2:
            middles = tuple(sorted(p.up[a] & p.down[b]))
            if len(middles) != 2:
                return (a, b, middles)
    return None


def maximal_chains(p: RankedPoset) -> list[tuple[str, ...]]:
    """All maximal chains, as cover paths from the least to the greatest face.

    Assumes a transitive, bounded order (is_polytope verifies both before
    relying on this).
    """
    if len(p.level(-1)) != 1 or len(p.level(p.rank)) != 1:
        raise ValueError("maximal_chains needs unique least and greatest faces")
    cover_up: dict[str, list[str]] = defaultdict(list)
    for a, b in p.covers:
        cover_up[a].append(b)
    for a in cover_up:
        cover_up[a].sort()
    bottom = p.level(-1)[0]
    out: list[tuple[str, ...]] = []
    stack: list[tuple[str, ...]] = [(bottom,)]
    while stack:
        chain = stack.pop()
        nxt = cover_up.get(chain[-1])
        if not nxt:
            out.append(chain)
        else:
            for b in nxt:
                stack.append(chain + (b,))
    return sorted(out)


def _chains_connected(chains: list[tuple[str, ...]]) -> bool:
    """Connectivity under 'differ in exactly one face' adjacency.

    Chains are grouped by the tuple obtained by blanking one position;
    each group is a clique of mutually adjacent chains.
    """
    count = len(chains)
    if count <= 1:
        return True
    parent = list(range(count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    length = len(chains[0])
    for pos in range(1, length - 1):
        groups: dict[tuple, int] = {}
        for idx, chain in enumerate(chains):
            key = chain[:pos] + chain[pos + 1:]
            if key in groups:
                ra, rb = find(groups[key]), find(idx)
                if ra != rb:
                    parent[rb] = ra
            else:
                groups[key] = idx
    root = find(0)
    return all(find(i) == root for i in range(count))


def section(p: RankedPoset, lower: str, upper: str) -> RankedPoset:
    """The section upper/lower, re-ranked so lower sits at rank -1."""
    if lower not in p.rank_of or upper not in p.rank_of:
        raise ValueError("section endpoints must be faces of the poset")
    if not p.lt(lower, upper):
        raise ValueError(f"section endpoints must be comparable: {lower!r}, {upper!r}")
    keep = {lower, upper} | (p.up[lower] & p.down[upper])
    offset = p.rank_of[lower] + 1
    new_rank = p.rank_of[upper] - offset
    levels: list[list[str]] = [[] for _ in range(new_rank + 2)]
    for label in keep:
        levels[p.rank_of[label] - offset + 1].append(label)
    less = frozenset((a, b) for a, b in p.less if a in keep and b in keep)
    return RankedPoset(new_rank, tuple(tuple(level) for level in levels), less)


def flag_connectivity_witness(p: RankedPoset) -> Optional[tuple[str, str]]:
    """First section (including the whole poset) whose chain graph is disconnected.

    Assumes transitivity, boundedness and gradedness already verified.
    """
    pairs = sorted(p.less, key=lambda ab: (p.rank_of[ab[0]], ab))
    for lower, upper in pairs:
        sec = section(p, lower, upper)
        chains = maximal_chains(sec)
        if len({len(c) for c in chains}) > 1:
            return (lower, upper)  # non-graded section; cannot be flag-connected
        if not _chains_connected(chains):
            return (lower, upper)
    return None


def is_polytope(p: RankedPoset) -> PolytopeReport:
    """Abstract-polytope test with first-failure reporting."""
    bad = order_transitivity_witness(p)
    if bad is not None:
        return PolytopeReport(False, None, bad, "order-not-transitive")
    witness = boundedness_witness(p)
    if witness is not None:
        return PolytopeReport(False, "bounded", witness, None)
    witness = gradedness_witness(p)
    if witness is not None:
        return PolytopeReport(False, "graded", witness, None)
    witness = diamond_witness(p)
    if witness is not None:
        return PolytopeReport(False, "diamond", witness, None)
    witness = flag_connectivity_witness(p)
    if witness is not None:
        return PolytopeReport(False, "strong-flag-connectivity", witness, None)
    return PolytopeReport(True, None, None, None)


def is_polytopal(m: Maniplex) -> bool:
    """Does the maniplex have polytopal face structure?"""
    return is_polytope(pos_of(m)).ok


# ---------- poset -> flag graph ----------

class DiamondError(ValueError):
    def __init__(self, witness):
        super().__init__(f"diamond condition fails, witness {witness!r}")
        self.witness = witness


def flag_graph_of(p: RankedPoset) -> Maniplex:
    """Flag graph of a polytope: maximal chains, i-adjacent when they differ at rank i.

    Refuses (DiamondError) when some chain lacks a unique partner at some
    rank; raises ValueError when the result is not a valid maniplex.
    """
    if order_transitivity_witness(p) is not None or boundedness_witness(p) is not None:
        raise ValueError("flag_graph_of needs a bounded partial order")
    chains = maximal_chains(p)
    n = p.rank
    if any(len(chain) != n + 2 for chain in chains):
        raise ValueError("flag_graph_of needs a graded poset (full-length chains)")
    index = {chain: k for k, chain in enumerate(chains)}
    perms = []
    for i in range(n):
        pos = i + 1
        groups: dict[tuple, list[int]] = defaultdict(list)
        for chain in chains:
            groups[chain[:pos] + chain[pos + 1:]].append(index[chain])
        row = [-1] * len(chains)
        for key, members in groups.items():
            if len(members) != 2:
                witness = (chains[members[0]], i, len(members))
                raise DiamondError(witness)
            a, b = members
            row[a], row[b] = b, a
        perms.append(tuple(row))
    result = Maniplex(tuple(perms))
    report = validate(result)
    if not report.ok:
        raise ValueError(f"chains do not form a maniplex: {report.violations[0]}")
    return result


# ---------- poset isomorphism (small posets) ----------

def _signatures(p: RankedPoset) -> dict[str, tuple]:
    sig = {label: (r,) for label, r in p.rank_of.items()}
    for _ in range(2):  # two refinement rounds are plenty at these sizes
        sig = {
            label: (
                sig[label],
                tuple(sorted(sig[x] for x in p.up[label])),
                tuple(sorted(sig[x] for x in p.down[label])),
            )
            for label in sig
        }
    return sig


def poset_isomorphism(p: RankedPoset, q: RankedPoset) -> Optional[dict[str, str]]:
    """Rank-preserving order isomorphism by backtracking, or None.

    Only vouched for on posets with at most ISO_FACE_LIMIT proper faces.
    """
    if p.rank != q.rank:
        return None
    if tuple(len(level) for level in p.faces) != tuple(len(level) for level in q.faces):
        return None
    if max(p.proper_face_count, q.proper_face_count) > ISO_FACE_LIMIT:
        raise ValueError(f"poset too large for brute-force matching (> {ISO_FACE_LIMIT} proper faces)")
    sig_p, sig_q = _signatures(p), _signatures(q)
    if sorted(sig_p.values()) != sorted(sig_q.values()):
        return None
    order = [label for level in p.faces for label in level]
    candidates = {
        label: [x for x in q.level(p.rank_of[label]) if sig_q[x] == sig_p[label]]
        for label in order
    }
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        a = order[k]
        for b in candidates[a]:
            if b in used:
                continue
            good = True
            for a2, b2 in mapping.items():
                if ((a, a2) in p.less) != ((b, b2) in q.less) or ((a2, a) in p.less) != ((b2, b) in q.less):
                    good = False
                    break
            if good:
                mapping[a] = b
                used.add(b)
                if extend(k + 1):
                    return True
                del mapping[a]
                used.remove(b)
        return False

    return dict(mapping) if extend(0) else None


# ---------- rank-3 structure theorems ----------

@dataclass
class Rank3Entry:
    faithful: bool
    polytopal: bool
    pair0: Optional[tuple[int, int]]  # fiber pair {flag, flag^0}
    pair2: Optional[tuple[int, int]]  # fiber pair {flag, flag^2}


@dataclass
class Rank3Report:
    entries: list[Rank3Entry]
    violations: list[tuple[int, str]]  # (index into corpus, what failed)


def rank3_theorems(corpus: list[Maniplex]) -> Rank3Report:
    """Check the rank-3 structure facts on a corpus.

    For every unfaithful 3-maniplex: it must not be polytopal, and some
    fiber must contain a pair {flag, flag^0} and some fiber a pair
    {flag, flag^2}.
    """
    entries: list[Rank3Entry] = []
    violations: list[tuple[int, str]] = []
    for idx, m in enumerate(corpus):
        if m.rank != 3:
            raise ValueError(f"corpus member {idx} has rank {m.rank}, expected 3")
        faith = is_faithful(m)
        polytopal = is_polytopal(m)
        pair0 = pair2 = None
        if not faith.faithful:
            table = flag_function(m)
            for fiber in table.fibers.values():
                members = set(fiber)
                for f in fiber:
                    if pair0 is None and m.perms[0][f] in members:
                        pair0 = (min(f, m.perms[0][f]), max(f, m.perms[0][f]))
                    if pair2 is None and m.perms[2][f] in members:
                        pair2 = (min(f, m.perms[2][f]), max(f, m.perms[2][f]))
            if polytopal:
                violations.append((idx, "unfaithful but polytopal"))
            if pair0 is None:
                violations.append((idx, "unfaithful with no {flag, flag^0} fiber pair"))
            if pair2 is None:
                violations.append((idx, "unfaithful with no {flag, flag^2} fiber pair"))
        entries.append(Rank3Entry(faith.faithful, polytopal, pair0, pair2))
    return Rank3Report(entries, violations)


# ---------- exports ----------

def poset_to_json_dict(p: RankedPoset) -> dict:
    return {
        "rank": p.rank,
        "faces": [list(level) for level in p.faces],
        "hasse": [list(pair) for pair in p.covers],
    }


def poset_to_dot(p: RankedPoset, include_extremes: bool = True) -> str:
    """Hasse diagram in DOT form, one same-rank group per rank."""
    skip: set[str] = set()
    if not include_extremes:
        skip = set(p.level(-1)) | set(p.level(p.rank))
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box];"]
    for r in range(-1, p.rank + 1):
        labels = [label for label in p.level(r) if label not in skip]
        if labels:
            inner = " ".join(f'"{label}";' for label in labels)
            lines.append(f"  {{ rank=same; {inner} }}")
    for a, b in p.covers:
        if a not in skip and b not in skip:
            lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dual_face_counts(m: Maniplex) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(face counts of M, face counts of dual M) for quick sanity checks."""
    ours = tuple(len(faces(m, i)) for i in range(m.rank))
    theirs = tuple(len(faces(dual(m), i)) for i in range(m.rank))
    return ours, theirs

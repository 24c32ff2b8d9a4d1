"""Independent reference implementations used to cross-check the package.

Everything here is deliberately naive — fixpoint merging instead of BFS,
brute force over all bijections, explicit solid geometry — and shares no
code with the modules under test.  Expected values frozen into the test
files were computed with these.
"""

from __future__ import annotations

import itertools

Perms = tuple[tuple[int, ...], ...]


def partition_by_merging(perms: Perms, colours, size: int) -> list[tuple[int, ...]]:
    """Orbit partition by repeatedly merging blocks joined by an edge."""
    blocks: list[set[int]] = [{f} for f in range(size)]

    def block_of(f: int) -> set[int]:
        for b in blocks:
            if f in b:
                return b
        raise AssertionError

    changed = True
    while changed:
        changed = False
        for c in colours:
            row = perms[c]
            for f in range(size):
                bf, bg = block_of(f), block_of(row[f])
                if bf is not bg:
                    bf |= bg
                    blocks.remove(bg)
                    changed = True
    return sorted(tuple(sorted(b)) for b in blocks)


def brute_isomorphisms(p1: Perms, p2: Perms) -> list[tuple[int, ...]]:
    """All colour-preserving flag bijections, by trying every permutation.

    Only sane for at most 8 flags.
    """
    if len(p1) != len(p2) or len(p1[0]) != len(p2[0]):
        return []
    size = len(p1[0])
    rank = len(p1)
    out = []
    for phi in itertools.permutations(range(size)):
        if all(phi[p1[i][f]] == p2[i][phi[f]] for i in range(rank) for f in range(size)):
            out.append(phi)
    return out


def polygon_flag_graph(k: int) -> Perms:
    """Flag graph of the k-gon, built from (vertex, edge) incidence pairs."""
    flags = sorted((v, e) for e in range(k) for v in (e, (e + 1) % k))
    index = {fl: i for i, fl in enumerate(flags)}
    r0, r1 = [], []
    for v, e in flags:
        other_v = (e + 1) % k if v == e else e
        r0.append(index[(other_v, e)])
        other_e = (e + 1) % k if v == (e + 1) % k else (e - 1) % k
        r1.append(index[(v, other_e)])
    return (tuple(r0), tuple(r1))


def _cube_incidences():
    vertices = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    edges = []
    for a, b in itertools.combinations(vertices, 2):
        if sum(1 for i in range(3) if a[i] != b[i]) == 1:
            edges.append(frozenset((a, b)))
    faces = []
    for axis in range(3):
        for sign in (-1, 1):
            faces.append(frozenset(v for v in vertices if v[axis] == sign))
    return vertices, edges, faces


def geometric_cube_flags() -> tuple[Perms, list[tuple]]:
    """Flag graph of the solid cube from (vertex, edge, face) triples."""
    vertices, edges, faces = _cube_incidences()
    flags = sorted(
        (v, tuple(sorted(e)), tuple(sorted(f)))
        for v in vertices
        for e in edges
        if v in e
        for f in faces
        if e <= f
    )
    index = {fl: i for i, fl in enumerate(flags)}
    r0, r1, r2 = [], [], []
    for v, e, f in flags:
        (other_v,) = set(e) - {v}
        r0.append(index[(other_v, e, f)])
        (other_e,) = [
            tuple(sorted(e2)) for e2 in edges if v in e2 and e2 <= frozenset(f) and tuple(sorted(e2)) != e
        ]
        r1.append(index[(v, other_e, f)])
        (other_f,) = [
            tuple(sorted(f2)) for f2 in faces if frozenset(e) <= f2 and tuple(sorted(f2)) != f
        ]
        r2.append(index[(v, e, other_f)])
    return (tuple(r0), tuple(r1), tuple(r2)), flags


def antipodal_quotient(perms: Perms, flags: list[tuple]) -> Perms:
    """Quotient of the cube flag graph by the central symmetry v -> -v."""

    def negate(flag):
        v, e, f = flag
        return (
            tuple(-x for x in v),
            tuple(sorted(tuple(-x for x in w) for w in e)),
            tuple(sorted(tuple(-x for x in w) for w in f)),
        )

    index = {fl: i for i, fl in enumerate(flags)}
    partner = [index[negate(fl)] for fl in flags]
    reps = sorted(i for i in range(len(flags)) if i <= partner[i])
    rep_index = {r: k for k, r in enumerate(reps)}

    def orbit(i: int) -> int:
        return rep_index[min(i, partner[i])]

    out = []
    for row in perms:
        out.append(tuple(orbit(row[r]) for r in reps))
    return tuple(out)


def chains_by_product(levels: list[list[str]], lt) -> list[tuple[str, ...]]:
    """All full-length chains, filtering the cartesian product of levels."""
    out = []
    for combo in itertools.product(*levels):
        if all(lt(combo[i], combo[j]) for i in range(len(combo)) for j in range(i + 1, len(combo))):
            out.append(tuple(combo))
    return sorted(out)


def shortest_lex_words_brute(perms: Perms, base: int, max_len: int) -> dict[int, tuple[int, ...]]:
    """First word in (length, lex) order reaching each flag, exhaustively."""
    rank = len(perms)
    best: dict[int, tuple[int, ...]] = {base: ()}
    for length in range(1, max_len + 1):
        for word in itertools.product(range(rank), repeat=length):
            f = base
            for letter in reversed(word):
                f = perms[letter][f]
            if f not in best:
                best[f] = word
    return best

"""The 96-flag flat regular 4-polytope, its marked flag set, and the double cover.

`build_B` enumerates the automorphism group of the self-dual flat polytope
with hemicube facets and hemioctahedron vertex figures (Schlafli symbol
{4,3,4}, 96 flags) and takes its Cayley graph as the flag graph B.  The
presentation is trusted only because every structural claim about the
result is re-verified afterwards; any failure raises.

`find_theta` searches for a six-flag set meeting every 1-face and every
2-face exactly once and satisfying the vertex/facet balance conditions
(A.2)-(A.4); candidates are post-filtered so that the derived voltage
assignment yields a connected maniplex double cover with all face lifts
connected.  `build_B_star` assembles the cover and certifies that it is an
unfaithful yet polytopal maniplex whose face poset projects isomorphically
onto the one of B.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import coxeter
from .certify import INFO, SKIP, Check, all_ok, passed
from .core import (
    Face,
    Maniplex,
    automorphism_count,
    dual,
    face_map,
    faces,
    isomorphic,
    restrict,
    validate,
)
from .corpus import platonic
from .cosets import coset_enumerate, string_coxeter
from .poset import flag_function, is_faithful, is_polytopal, pos_of
from .voltage import VoltageAssignment, canonical_edge, double_cover, lift_connected

B_FLAGS = 96
B_FACE_VECTOR = (4, 6, 6, 4)

# {4,3,4} quotient: hemicube facets and hemioctahedron vertex figures are
# imposed by collapsing the two length-3 zigzag words.
B_PRESENTATION = string_coxeter([4, 3, 4]).extended((0, 1, 2) * 3, (1, 2, 3) * 3)


class BuildError(RuntimeError):
    """A post-check on a constructed object failed."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BuildError(message)


def build_B() -> Maniplex:
    """Flag graph of the 96-flag counterexample substrate, fully post-checked."""
    b = coset_enumerate(B_PRESENTATION).to_maniplex()
    _require(b.flag_count == B_FLAGS, f"expected {B_FLAGS} flags, got {b.flag_count}")
    _require(validate(b).ok, "enumerated graph is not a maniplex")
    vector = tuple(len(faces(b, i)) for i in range(4))
    _require(vector == B_FACE_VECTOR, f"face vector {vector} != {B_FACE_VECTOR}")
    # flat: every vertex is incident to every facet
    facet_list = faces(b, 3)
    for vertex in faces(b, 0):
        vset = set(vertex.flags)
        for facet in facet_list:
            _require(not vset.isdisjoint(facet.flags), "not flat")
    hemicube = platonic("hemicube")
    hemioct = platonic("hemioctahedron")
    for facet in facet_list:
        sub = restrict(b, facet.flags, (0, 1, 2))
        _require(isomorphic(sub, hemicube) is not None, "facet is not a hemicube")
    for comp in faces(b, 0):
        sub = restrict(b, comp.flags, (1, 2, 3))
        _require(isomorphic(sub, hemioct) is not None, "vertex figure is not a hemioctahedron")
    _require(automorphism_count(b).is_reflexible, "not reflexible")
    _require(isomorphic(b, dual(b)) is not None, "not self-dual")
    _require(is_faithful(b).faithful, "flag function not faithful")
    _require(is_polytopal(b), "face poset is not a polytope")
    return b


# ---------- the marked flag set ----------

@dataclass(frozen=True)
class ThetaSet:
    flags: tuple[int, ...]  # sorted; one flag per 1-face and per 2-face

    def shifted(self, b: Maniplex, colours: tuple[int, ...]) -> tuple[int, ...]:
        """Apply the given colours (leftmost last) to every member."""
        out = []
        for f in self.flags:
            g = f
            for c in reversed(colours):
                g = b.perms[c][g]
            out.append(g)
        return tuple(sorted(out))


class ThetaNotFound(RuntimeError):
    pass


def _theta_conditions_hold(b: Maniplex, theta: tuple[int, ...], maps) -> bool:
    """(A.2)-(A.4) for the vertex (i=0) and facet (i=3) directions."""
    for i in (0, 3):
        here = maps[i]
        shifted = [b.perms[i][f] for f in theta]
        members: dict[int, list[int]] = {}
        for f in theta:
            members.setdefault(here[f], []).append(f)
        shift_count: dict[int, int] = {}
        for g in shifted:
            shift_count[here[g]] = shift_count.get(here[g], 0) + 1
        for face in faces(b, i):
            inside = members.get(face.canonical, [])
            if len(inside) not in (1, 2):
                return False
            if len(inside) == 2:
                f1, f2 = inside
                for j in range(4):
                    if j != i and maps[j][f1] == maps[j][f2]:
                        return False
                if shift_count.get(face.canonical, 0) != 1:
                    return False
            else:
                if shift_count.get(face.canonical, 0) != 2:
                    return False
    return True


def _cover_certified(b: Maniplex, theta: tuple[int, ...]) -> bool:
    """Post-filter: the derived voltage cover is a maniplex and all face lifts connect."""
    z = build_E_theta(b, ThetaSet(tuple(sorted(theta)))).voltage(b)
    if not validate(double_cover(b, z).cover).ok:
        return False
    for i in range(4):
        for face in faces(b, i):
            cols = tuple(c for c in range(4) if c != i)
            if not lift_connected(b, z, face.flags, cols):
                return False
    return True


def find_theta(b: Maniplex) -> ThetaSet:
    """Lexicographically least valid marked set under canonical flag order.

    Depth-first over the 1-faces in canonical order, choosing flags in
    increasing order; the 2-face bijection and the <=2-per-vertex/facet
    bounds prune, the full conditions and the cover certification filter.
    """
    if b.rank != 4:
        raise ValueError("find_theta expects a rank-4 maniplex")
    maps = [face_map(b, i) for i in range(4)]
    one_faces = faces(b, 1)
    chosen: list[int] = []
    used_two: set[int] = set()
    load: dict[tuple[int, int], int] = {}

    def dfs(level: int) -> Optional[tuple[int, ...]]:
        if level == len(one_faces):
            theta = tuple(chosen)
            if _theta_conditions_hold(b, theta, maps) and _cover_certified(b, theta):
                return theta
            return None
        for f in one_faces[level].flags:
            two = maps[2][f]
            if two in used_two:
                continue
            v_key, t_key = (0, maps[0][f]), (3, maps[3][f])
            if load.get(v_key, 0) >= 2 or load.get(t_key, 0) >= 2:
                continue
            used_two.add(two)
            load[v_key] = load.get(v_key, 0) + 1
            load[t_key] = load.get(t_key, 0) + 1
            chosen.append(f)
            found = dfs(level + 1)
            chosen.pop()
            load[v_key] -= 1
            load[t_key] -= 1
            used_two.discard(two)
            if found is not None:
                return found
        return None

    result = dfs(0)
    if result is None:
        raise ThetaNotFound("no marked set satisfies the conditions")
    return ThetaSet(tuple(sorted(result)))


# ---------- the voltage edge set ----------

@dataclass(frozen=True)
class EThetaSet:
    """Per marked flag, the edge set of its 4-edge path (colours 1,3,0,2).

    groups[flag] lists the path edges from flag^{31} to flag^{02}; edges is
    their union, canonical (lower endpoint, colour) form.
    """

    edges: frozenset[tuple[int, int]]
    groups: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    def voltage(self, b: Maniplex) -> VoltageAssignment:
        return VoltageAssignment(b, self.edges)


class EThetaOverlap(RuntimeError):
    pass


def path_edges(b: Maniplex, flag: int) -> tuple[tuple[int, int], ...]:
    """The four edges, in path order, hung off one marked flag."""
    f0 = b.perms[0][flag]
    f3 = b.perms[3][flag]
    return (
        canonical_edge(b, f3, 1),  # flag^31 -- flag^3
        canonical_edge(b, flag, 3),  # flag^3  -- flag
        canonical_edge(b, flag, 0),  # flag    -- flag^0
        canonical_edge(b, f0, 2),  # flag^0  -- flag^02
    )


def build_E_theta(b: Maniplex, theta: ThetaSet) -> EThetaSet:
    groups = []
    union: set[tuple[int, int]] = set()
    for f in theta.flags:
        edges = path_edges(b, f)
        if len(set(edges)) != 4 or union & set(edges):
            raise EThetaOverlap(f"path edges of flag {f} overlap another group")
        union.update(edges)
        groups.append((f, edges))
    return EThetaSet(frozenset(union), tuple(groups))


# ---------- the balance conditions on faces ----------

@dataclass
class BConditionsReport:
    ok: bool
    failures: list[tuple[str, object]]
    outcomes: dict[tuple[int, int], str]  # (rank in {0,3}, canonical) -> "two-two-one" | "one-one-two"


def verify_B_conditions(b: Maniplex, theta: ThetaSet, etheta: EThetaSet) -> BConditionsReport:
    """Per-face balance of marked edges.

    Edge and polygon faces (ranks 1, 2) must contain exactly one marked
    edge of each other colour, and marked edges of their own colour avoid
    the marked flags while touching the right shifted set.  Vertex and
    facet faces (ranks 0, 3) split into the two allowed patterns.
    """
    failures: list[tuple[str, object]] = []
    outcomes: dict[tuple[int, int], str] = {}
    maps = [face_map(b, i) for i in range(4)]
    theta_set = set(theta.flags)
    shifted = {i: set(b.perms[i][f] for f in theta.flags) for i in range(4)}

    for colour in (1, 2):
        partner = (colour + 2) % 4
        for f, c in sorted(etheta.edges):
            if c != colour:
                continue
            g = b.perms[c][f]
            if f not in shifted[partner] and g not in shifted[partner]:
                failures.append(("B.1", (f, c)))
            if f in theta_set or g in theta_set:
                failures.append(("B.2", (f, c)))

    # count marked edges inside each face, per colour
    per_face: dict[tuple[int, int], dict[int, int]] = {}
    for f, c in etheta.edges:
        for i in range(4):
            if i == c:
                continue  # a colour-c edge joins two different c-faces
            key = (i, maps[i][f])
            per_face.setdefault(key, {}).setdefault(c, 0)
            per_face[key][c] += 1

    for i in (1, 2):
        for face in faces(b, i):
            counts = per_face.get((i, face.canonical), {})
            for j in range(4):
                if j != i and counts.get(j, 0) != 1:
                    failures.append(("B.3", (i, face.canonical, j, counts.get(j, 0))))

    for i in (0, 3):
        near = ((i + 1) % 4, (i - 1) % 4)
        far = (i + 2) % 4
        for face in faces(b, i):
            counts = per_face.get((i, face.canonical), {})
            two_two_one = all(counts.get(j, 0) == 2 for j in near) and counts.get(far, 0) == 1
            one_one_two = all(counts.get(j, 0) == 1 for j in near) and counts.get(far, 0) == 2
            if two_two_one == one_one_two:
                failures.append(("B.4", (i, face.canonical, dict(counts))))
            else:
                outcomes[(i, face.canonical)] = "two-two-one" if two_two_one else "one-one-two"
    return BConditionsReport(not failures, failures, outcomes)


# ---------- the double cover ----------

@dataclass
class BStarResult:
    b: Maniplex
    theta: ThetaSet
    e_theta: EThetaSet
    assignment: VoltageAssignment
    bstar: Maniplex
    checks: list[Check]
    witness: Optional[tuple[int, int]]  # sheet pair in one fiber

    @property
    def ok(self) -> bool:
        return all_ok(self.checks)


def _projection_poset_iso(bstar: Maniplex, b: Maniplex) -> bool:
    """pos_of(bstar) = pos_of(b) after halving every canonical flag id.

    The projection sends cover flag v to v // 2, and the least member of a
    lifted face projects onto the least member of its image, so relabelling
    is exact; every face must also be a 2-to-1 lift.
    """
    for i in range(bstar.rank):
        up = faces(bstar, i)
        down = {face.canonical: set(face.flags) for face in faces(b, i)}
        if len(up) != len(down):
            return False
        for face in up:
            image = {v // 2 for v in face.flags}
            if len(face.flags) != 2 * len(image) or down.get(face.canonical // 2) != image:
                return False
    relabelled = {
        (f"{a.split(':')[0]}:{int(a.split(':')[1]) // 2}", f"{c.split(':')[0]}:{int(c.split(':')[1]) // 2}")
        for a, c in pos_of(bstar).less
    }
    return relabelled == set(pos_of(b).less)


def build_B_star() -> BStarResult:
    """Assemble and certify the unfaithful polytopal double cover of B."""
    b = build_B()
    theta = find_theta(b)
    e_theta = build_E_theta(b, theta)
    conditions = verify_B_conditions(b, theta, e_theta)
    z = e_theta.voltage(b)
    bstar = double_cover(b, z).cover

    checks = [
        passed("marked-set-conditions", conditions.ok, conditions.failures or None),
        passed("cover-flag-count", bstar.flag_count == 2 * B_FLAGS, bstar.flag_count),
        passed("cover-valid-maniplex", validate(bstar).ok),
    ]
    lifts_ok = True
    for i in range(4):
        cols = tuple(c for c in range(4) if c != i)
        for face in faces(b, i):
            if not lift_connected(b, z, face.flags, cols):
                lifts_ok = False
    checks.append(passed("face-lifts-connected", lifts_ok))
    checks.append(passed("poset-projects-isomorphically", _projection_poset_iso(bstar, b)))

    faith = is_faithful(bstar)
    witness = faith.witness
    checks.append(passed("cover-unfaithful", not faith.faithful, witness))
    fibers = flag_function(bstar).fibers
    sheet_pairs = all(
        len(fiber) == 2 and fiber[1] == fiber[0] + 1 and fiber[0] % 2 == 0
        for fiber in fibers.values()
    )
    checks.append(passed("fibers-are-sheet-pairs", sheet_pairs))
    checks.append(passed("cover-polytopal", is_polytopal(bstar)))

    v = coxeter.verdict(bstar)
    checks.append(passed("verdict-sparse-not-semisparse", v.sparse and not v.semisparse))
    return BStarResult(b, theta, e_theta, z, bstar, checks, witness)

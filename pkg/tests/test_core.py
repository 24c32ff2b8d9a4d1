import json

import pytest

from maniplex.core import (
    DOT_PALETTE,
    Face,
    FormatError,
    Maniplex,
    automorphism_count,
    components,
    dual,
    face_map,
    faces,
    from_json_dict,
    isomorphic,
    maniplex_from_json,
    maniplex_to_json,
    restrict,
    structural_errors,
    to_dot,
    to_json_dict,
    validate,
)
from maniplex.corpus import platonic, torus_44

from oracles import brute_isomorphisms, partition_by_merging, polygon_flag_graph

# small deliberately broken structures, one per axiom
FIXED_POINT = Maniplex(((0, 1),))
NOT_INVOLUTION = Maniplex(((1, 2, 0), (1, 0, 2)))
IMPROPER = Maniplex(((1, 0, 3, 2), (1, 0, 3, 2)))
# r0 and r2 generate a 6-cycle, so (r0 r2)^2 is not the identity
SQUARE_BREAKER = Maniplex(
    (
        (1, 0, 3, 2, 5, 4),
        (3, 4, 5, 0, 1, 2),
        (5, 2, 1, 4, 3, 0),
    )
)


def shuffle_flags(m: Maniplex, phi: list[int]) -> Maniplex:
    inv = [0] * len(phi)
    for f, g in enumerate(phi):
        inv[g] = f
    return Maniplex(tuple(tuple(phi[row[inv[g]]] for g in range(len(phi))) for row in m.perms))


def test_accessors():
    sq = platonic("square")
    assert sq.rank == 2
    assert sq.flag_count == 8
    assert sq.adjacent(0, 0) == sq.perms[0][0]
    assert repr(sq) == "Maniplex(rank=2, flags=8)"


def test_structural_errors():
    assert structural_errors(Maniplex(((1, 0), (1,)))) != []
    assert structural_errors(Maniplex(((1, 5),))) != []
    assert structural_errors(Maniplex(((True, False),))) != []
    assert structural_errors(platonic("cube")) == []


def test_validate_happy_path(named_corpus):
    for name, m in named_corpus.items():
        report = validate(m)
        assert report.ok, (name, report.violations)


def test_validate_axiom_witnesses():
    def broken(m):
        return {v.axiom for v in validate(m).violations}

    assert "fixed-point-free" in broken(FIXED_POINT)
    assert "involution" in broken(NOT_INVOLUTION)
    assert "proper-colouring" in broken(IMPROPER)
    assert "square" in broken(SQUARE_BREAKER)

    sq = platonic("square")
    two_copies = Maniplex(
        tuple(tuple(row) + tuple(v + 8 for v in row) for row in sq.perms)
    )
    assert "connected" in broken(two_copies)


def test_validate_one_witness_per_colour():
    report = validate(NOT_INVOLUTION)
    involution_hits = [v for v in report.violations if v.axiom == "involution"]
    assert len(involution_hits) == 1  # one witness for colour 0, colour 1 is fine


def test_components_against_merging_oracle(named_corpus):
    for name, m in named_corpus.items():
        if m.flag_count > 50:
            continue
        for cols in [(0,), (1,), (0, 1), tuple(range(m.rank))]:
            got = [c.flags for c in components(m, cols)]
            want = partition_by_merging(m.perms, cols, m.flag_count)
            assert sorted(got) == want, (name, cols)


def test_components_bad_colour():
    with pytest.raises(ValueError):
        components(platonic("square"), (2,))


def test_faces_and_face_map():
    m = torus_44(1, 0)
    counts = tuple(len(faces(m, i)) for i in range(3))
    assert counts == (1, 2, 1)
    fm = face_map(m, 1)
    for face in faces(m, 1):
        for f in face.flags:
            assert fm[f] == face.canonical
    with pytest.raises(ValueError):
        faces(m, 3)


def test_dual():
    cube = platonic("cube")
    assert dual(dual(cube)).perms == cube.perms
    assert isomorphic(dual(platonic("hemicube")), platonic("hemioctahedron")) is not None


def test_isomorphic_against_brute_force():
    sq = platonic("square")
    gon = Maniplex(polygon_flag_graph(4))
    assert isomorphic(sq, gon) is not None
    assert brute_isomorphisms(sq.perms, gon.perms) != []

    shuffled = shuffle_flags(sq, [3, 1, 4, 0, 6, 2, 7, 5])
    phi = isomorphic(sq, shuffled)
    assert phi is not None
    assert all(phi[sq.perms[i][f]] == shuffled.perms[i][phi[f]] for i in range(2) for f in range(8))

    xor3 = Maniplex(tuple(tuple(f ^ (1 << i) for f in range(8)) for i in range(3)))
    t10 = torus_44(1, 0)
    assert isomorphic(xor3, t10) is None
    assert brute_isomorphisms(xor3.perms, t10.perms) == []


def test_isomorphic_rank_mismatch():
    assert isomorphic(platonic("square"), torus_44(1, 0)) is None


def test_automorphism_count_against_brute_force():
    for m in (platonic("square"), torus_44(1, 0)):
        info = automorphism_count(m)
        assert info.count == len(brute_isomorphisms(m.perms, m.perms))
    assert automorphism_count(platonic("square")).is_reflexible
    assert automorphism_count(platonic("cube")) == (48, True)


def test_restrict():
    cube = platonic("cube")
    facet = faces(cube, 2)[0]
    side = restrict(cube, facet.flags, (0, 1))
    assert isomorphic(side, platonic("square")) is not None
    with pytest.raises(ValueError):
        restrict(cube, facet.flags[:3], (0, 1))


def test_json_roundtrip():
    m = torus_44(2, 1)
    text = maniplex_to_json(m)
    assert maniplex_from_json(text).perms == m.perms
    assert text.endswith("\n")
    assert json.loads(text) == {"rank": 3, "flags": 40, "perms": [list(r) for r in m.perms]}
    # canonical form: serialization is stable
    assert maniplex_to_json(maniplex_from_json(text)) == text


@pytest.mark.parametrize(
    "doc",
    [
        "[]",
        '{"rank": 1, "flags": 2}',
        '{"rank": 0, "flags": 2, "perms": []}',
        '{"rank": 1, "flags": 2, "perms": [[1]]}',
        '{"rank": 1, "flags": 2, "perms": [[1, 5]]}',
        '{"rank": 1, "flags": 2, "perms": [[true, false]]}',
        '{"rank": 2, "flags": 2, "perms": [[1, 0]]}',
        "not json at all",
    ],
)
def test_from_json_rejects(doc):
    with pytest.raises(FormatError):
        maniplex_from_json(doc)


def test_to_json_dict_shape():
    m = platonic("square")
    doc = to_json_dict(m)
    assert from_json_dict(doc).perms == m.perms


def test_to_dot():
    sq = platonic("square")
    dot = to_dot(sq)
    assert dot.count(" -- ") == 8  # two matchings of four edges
    assert dot.count(";") == 1 + 8 + 8  # node default, one per flag, one per edge
    assert "color=red" in dot and "color=green" in dot

    edge = Maniplex(((1, 0),))
    dot = to_dot(edge)
    assert dot.count(" -- ") == 1
    assert "  0;" in dot and "  1;" in dot


def test_dot_palette_cycles():
    rank5 = Maniplex(tuple(tuple(f ^ (1 << i) for f in range(32)) for i in range(5)))
    dot = to_dot(rank5)
    assert f'color={DOT_PALETTE[0]}, label="4"' in dot  # colour 4 reuses the first pen


def test_face_namedtuple():
    face = faces(platonic("square"), 0)[0]
    assert isinstance(face, Face)
    assert face.rank == 0
    assert face.canonical == min(face.flags)

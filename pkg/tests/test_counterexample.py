import pytest

from maniplex.core import dual, face_map, faces, isomorphic, restrict, validate
from maniplex.corpus import platonic
from maniplex.cosets import coset_enumerate
from maniplex.counterexample import (
    B_FACE_VECTOR,
    B_FLAGS,
    B_PRESENTATION,
    EThetaOverlap,
    EThetaSet,
    ThetaNotFound,
    ThetaSet,
    build_E_theta,
    find_theta,
    path_edges,
    verify_B_conditions,
)
from maniplex.poset import flag_graph_of, is_faithful, pos_of
from maniplex.voltage import double_cover

THETA_FROZEN = (0, 24, 25, 57, 74, 87)


def test_presentation_collapses_to_96_cosets():
    assert coset_enumerate(B_PRESENTATION).count == B_FLAGS


def test_b_shape(b_maniplex):
    assert validate(b_maniplex).ok
    assert b_maniplex.flag_count == 96
    assert tuple(len(faces(b_maniplex, i)) for i in range(4)) == B_FACE_VECTOR


def test_b_is_flat(b_maniplex):
    # every vertex is incident to every facet
    for v in faces(b_maniplex, 0):
        for f in faces(b_maniplex, 3):
            assert set(v.flags) & set(f.flags)


def test_b_facet_and_vertex_sections(b_maniplex):
    hemicube = platonic("hemicube")
    for facet in faces(b_maniplex, 3):
        assert isomorphic(restrict(b_maniplex, facet.flags, (0, 1, 2)), hemicube) is not None
    hemioct = platonic("hemioctahedron")
    for vertex in faces(b_maniplex, 0):
        figure = restrict(b_maniplex, vertex.flags, (1, 2, 3))
        assert isomorphic(figure, hemioct) is not None


def test_theta_is_frozen_value(theta):
    assert theta.flags == THETA_FROZEN


def test_theta_covers_edges_and_polygons_once(b_maniplex, theta):
    for i in (1, 2):
        fm = face_map(b_maniplex, i)
        hits = sorted(fm[f] for f in theta.flags)
        assert hits == sorted(face.canonical for face in faces(b_maniplex, i))


def test_theta_balance_on_vertices_and_facets(b_maniplex, theta):
    for i in (0, 3):
        fm = face_map(b_maniplex, i)
        per_face: dict[int, list[int]] = {}
        for f in theta.flags:
            per_face.setdefault(fm[f], []).append(f)
        shifted = theta.shifted(b_maniplex, (i,))
        shift_count: dict[int, int] = {}
        for g in shifted:
            shift_count[fm[g]] = shift_count.get(fm[g], 0) + 1
        for face in faces(b_maniplex, i):
            inside = per_face.get(face.canonical, [])
            assert len(inside) in (1, 2)
            assert len(inside) + shift_count.get(face.canonical, 0) == 3
            if len(inside) == 2:
                f1, f2 = inside
                for j in range(4):
                    if j != i:
                        fmj = face_map(b_maniplex, j)
                        assert fmj[f1] != fmj[f2]


def test_theta_rejects_wrong_rank():
    with pytest.raises(ValueError):
        find_theta(platonic("cube"))


def test_theta_not_found_on_hypercube_like_action():
    from maniplex.core import Maniplex

    xor4 = Maniplex(tuple(tuple(f ^ (1 << i) for f in range(16)) for i in range(4)))
    assert validate(xor4).ok
    with pytest.raises(ThetaNotFound):
        find_theta(xor4)


def test_path_edges_shape(b_maniplex, theta):
    for f in theta.flags:
        edges = path_edges(b_maniplex, f)
        assert [c for _, c in edges] == [1, 3, 0, 2]
        # consecutive edges share exactly one endpoint: a genuine path
        prev = None
        for lower, colour in edges:
            ends = {lower, b_maniplex.perms[colour][lower]}
            if prev is not None:
                assert len(prev & ends) == 1
            prev = ends


def test_e_theta_counts(b_maniplex, theta, etheta):
    assert len(etheta.edges) == 24
    assert len(etheta.groups) == 6
    seen = set()
    for f, group in etheta.groups:
        assert f in theta.flags
        assert len(group) == 4
        assert not (seen & set(group))
        seen.update(group)
    assert seen == set(etheta.edges)


def test_e_theta_overlap_raises(b_maniplex):
    # two flags on the same colour-3 edge share path edges
    f = 0
    clash = ThetaSet(tuple(sorted((f, b_maniplex.perms[3][f]))))
    with pytest.raises(EThetaOverlap):
        build_E_theta(b_maniplex, clash)


def test_b_conditions(b_maniplex, theta, etheta):
    report = verify_B_conditions(b_maniplex, theta, etheta)
    assert report.ok, report.failures
    assert set(report.outcomes.values()) <= {"two-two-one", "one-one-two"}
    vertex_keys = [k for k in report.outcomes if k[0] == 0]
    facet_keys = [k for k in report.outcomes if k[0] == 3]
    assert len(vertex_keys) == 4 and len(facet_keys) == 4


def test_b_conditions_under_duality(b_maniplex, theta, etheta):
    """Colour reversal swaps the roles of vertices and facets in the conditions."""
    b = b_maniplex
    d = dual(b)
    et_d = build_E_theta(d, theta)
    assert et_d.edges == frozenset((f, 3 - c) for f, c in etheta.edges)
    rep = verify_B_conditions(b, theta, etheta)
    rep_d = verify_B_conditions(d, theta, et_d)
    assert rep_d.ok
    for (i, canonical), outcome in rep.outcomes.items():
        assert rep_d.outcomes[(3 - i, canonical)] == outcome


def test_bstar_checks_all_pass(bstar_result):
    assert bstar_result.ok
    names = [c.name for c in bstar_result.checks]
    assert len(names) == len(set(names))
    assert bstar_result.bstar.flag_count == 192
    assert validate(bstar_result.bstar).ok


def test_bstar_unfaithful_with_sheet_pair(bstar_result):
    res = is_faithful(bstar_result.bstar)
    assert not res.faithful
    f1, f2 = bstar_result.witness
    assert f2 == f1 + 1 and f1 % 2 == 0  # the two sheets over one base flag


def test_bstar_fibers_are_sheet_pairs(bstar_result):
    from maniplex.poset import flag_function

    table = flag_function(bstar_result.bstar)
    for fiber in table.fibers.values():
        assert len(fiber) == 2
        assert fiber[1] == fiber[0] + 1
        assert fiber[0] % 2 == 0


def test_bstar_poset_collapses_to_base(bstar_result):
    rebuilt = flag_graph_of(pos_of(bstar_result.bstar))
    assert isomorphic(rebuilt, bstar_result.b) is not None
    assert isomorphic(rebuilt, bstar_result.bstar) is None


def test_bstar_equals_double_cover_of_b(bstar_result):
    cover = double_cover(bstar_result.b, bstar_result.assignment).cover
    assert cover.perms == bstar_result.bstar.perms


def test_b_automorphisms(b_maniplex):
    from maniplex.core import automorphism_count

    assert automorphism_count(b_maniplex) == (96, True)
    assert isomorphic(b_maniplex, dual(b_maniplex)) is not None

"""Rank-raising extension of a maniplex over a marked facet.

The extension of a rank-n maniplex M over a facet F has flags (f, x) with
x in Z_2 x Z_2, numbered 4f + code(x) where code maps (0,0),(1,0),(0,1),
(1,1) to 0,1,2,3.  The old colours act on the flag part only; the new
colour n adds (1,0) outside F and (1,1) inside F, so it toggles the tag by
XOR 1 or XOR 3.  The four tag translates give four facets, each a copy of
M, and the face structure over any face of M is governed by its tag span:
{(0,0),(1,0)} when the face misses F, {(0,0),(1,1)} when it equals F, and
all four tags when it meets F without being contained in it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .certify import INFO, SKIP, Check, all_ok, passed
from .core import Face, Maniplex, faces, isomorphic, restrict, validate
from .poset import (
    RankedPoset,
    boundedness_witness,
    diamond_witness,
    flag_connectivity_witness,
    flag_function,
    gradedness_witness,
    is_faithful,
    is_polytope,
    order_transitivity_witness,
    pos_of,
    poset_isomorphism,
    section,
)

TAG_CODES = ((0, 0), (1, 0), (0, 1), (1, 1))
_TAGS_MISSING = frozenset({(0, 0), (1, 0)})
_TAGS_EQUAL = frozenset({(0, 0), (1, 1)})
_TAGS_ALL = frozenset(TAG_CODES)


def _resolve_facet(m: Maniplex, facet: Face) -> Face:
    if facet.rank != m.rank - 1:
        raise ValueError(f"marked face has rank {facet.rank}, need {m.rank - 1}")
    for candidate in faces(m, m.rank - 1):
        if candidate.canonical == facet.canonical:
            if candidate.flags != facet.flags:
                raise ValueError("marked face does not match any facet of this maniplex")
            return candidate
    raise ValueError("marked face does not match any facet of this maniplex")


def extend(m: Maniplex, facet: Face) -> Maniplex:
    """The rank-(n+1) extension of M over the given facet."""
    facet = _resolve_facet(m, facet)
    inside = bytearray(m.flag_count)
    for f in facet.flags:
        inside[f] = 1
    size = m.flag_count
    perms = []
    for i in range(m.rank):
        base = m.perms[i]
        row = [0] * (4 * size)
        for f in range(size):
            t = 4 * base[f]
            k = 4 * f
            row[k] = t
            row[k + 1] = t + 1
            row[k + 2] = t + 2
            row[k + 3] = t + 3
        perms.append(tuple(row))
    new_row = [0] * (4 * size)
    for f in range(size):
        mask = 3 if inside[f] else 1
        k = 4 * f
        for c in range(4):
            new_row[k + c] = k + (c ^ mask)
    perms.append(tuple(new_row))
    return Maniplex(tuple(perms))


class YProfileUndefined(ValueError):
    """The face/facet configuration falls outside the three covered cases."""


def y_profile(m: Maniplex, facet: Face, flag: int, i: int) -> frozenset[tuple[int, int]]:
    """Tag span of the extension face over the i-face of the given flag.

    Refuses when the i-face is properly contained in the marked facet, the
    one configuration the case split does not cover (it cannot occur when
    M is polytopal).
    """
    facet = _resolve_facet(m, facet)
    if not 0 <= i < m.rank:
        raise ValueError(f"face rank {i} out of range")
    cols = [c for c in range(m.rank) if c != i]
    comp = {flag}
    stack = [flag]
    while stack:
        f = stack.pop()
        for c in cols:
            g = m.perms[c][f]
            if g not in comp:
                comp.add(g)
                stack.append(g)
    fset = set(facet.flags)
    if comp.isdisjoint(fset):
        return _TAGS_MISSING
    if comp == fset:
        return _TAGS_EQUAL
    if comp <= fset:
        raise YProfileUndefined(
            f"{i}-face of flag {flag} is properly contained in the marked facet"
        )
    return _TAGS_ALL


@dataclass
class ExtensionResult:
    extension: Maniplex
    facet: Face
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all_ok(self.checks)


def _poset_is_partial_and_graded(p: RankedPoset) -> bool:
    return (
        order_transitivity_witness(p) is None
        and boundedness_witness(p) is None
        and gradedness_witness(p) is None
    )


def verify_extension(m: Maniplex, facet: Face, check_connectivity: bool = True) -> ExtensionResult:
    """Extend and certify; polytopality claims are gated on the base's own status.

    Faithfulness of the extension is recorded, never asserted; only the
    preservation of unfaithfulness is a hard check.
    """
    facet = _resolve_facet(m, facet)
    n = m.rank
    ext = extend(m, facet)
    checks: list[Check] = []

    report = validate(ext)
    checks.append(passed("extension-valid", report.ok, report.violations or None))
    checks.append(passed("flag-count", ext.flag_count == 4 * m.flag_count, ext.flag_count))

    ext_facets = faces(ext, n)
    checks.append(passed("four-facets", len(ext_facets) == 4, len(ext_facets)))
    facets_iso = all(
        isomorphic(restrict(ext, fc.flags, range(n)), m) is not None for fc in ext_facets
    )
    checks.append(passed("facets-copy-base", facets_iso))

    base_faith = is_faithful(m)
    ext_faith = is_faithful(ext)
    checks.append(Check("extension-faithful-observed", INFO, ext_faith.faithful))
    if base_faith.faithful:
        checks.append(Check("unfaithfulness-preserved", SKIP, "base is faithful"))
    else:
        w1, w2 = base_faith.witness
        table = flag_function(ext)
        lifted = table.chains[4 * w1] == table.chains[4 * w2]
        checks.append(
            passed("unfaithfulness-preserved", lifted and not ext_faith.faithful, (4 * w1, 4 * w2))
        )

    p_base = pos_of(m)
    p_ext = pos_of(ext)

    # every ridge of the extension lies under exactly two of its facets
    facet_labels = set(p_ext.level(n))
    ridge_ok = True
    witness = None
    for ridge in p_ext.level(n - 1):
        above = sum(1 for lab in facet_labels if (ridge, lab) in p_ext.less)
        if above != 2:
            ridge_ok, witness = False, (ridge, above)
            break
    checks.append(passed("ridges-in-two-facets", ridge_ok, witness))

    base_diamond = (
        _poset_is_partial_and_graded(p_base)
        and boundedness_witness(p_base) is None
        and diamond_witness(p_base) is None
    )
    if not base_diamond:
        checks.append(Check("facet-sections-match-base", SKIP, "base fails the diamond condition"))
        checks.append(Check("tag-spans-match", SKIP, "base fails the diamond condition"))
    else:
        bottom = p_ext.level(-1)[0]
        sections_ok = all(
            poset_isomorphism(section(p_ext, bottom, lab), p_base) is not None
            for lab in p_ext.level(n)
        )
        checks.append(passed("facet-sections-match-base", sections_ok))
        checks.append(passed("tag-spans-match", _tag_spans_match(m, facet, ext)))

    if not is_polytope(p_base).ok:
        checks.append(Check("diamond", SKIP, "base is not polytopal"))
        checks.append(Check("strong-flag-connectivity", SKIP, "base is not polytopal"))
        checks.append(Check("polytopal", SKIP, "base is not polytopal"))
    else:
        structural_ok = _poset_is_partial_and_graded(p_ext)
        dia = diamond_witness(p_ext) if structural_ok else ("poset not graded",)
        checks.append(passed("diamond", structural_ok and dia is None, dia))
        if not check_connectivity:
            checks.append(Check("strong-flag-connectivity", SKIP, "capped at this rank"))
            checks.append(Check("polytopal", SKIP, "connectivity capped"))
        else:
            conn = flag_connectivity_witness(p_ext) if structural_ok and dia is None else ("earlier failure",)
            checks.append(passed("strong-flag-connectivity", conn is None, conn))
            checks.append(passed("polytopal", structural_ok and dia is None and conn is None))

    return ExtensionResult(ext, facet, checks)


def _tag_spans_match(m: Maniplex, facet: Face, ext: Maniplex) -> bool:
    """Every extension face over a base face spans exactly the predicted tags."""
    code = {tag: k for k, tag in enumerate(TAG_CODES)}
    for i in range(m.rank):
        lookup: dict[int, set[int]] = {}
        for face in faces(ext, i):
            for v in face.flags:
                lookup[v] = set(face.flags)
        for base_face in faces(m, i):
            try:
                tags = y_profile(m, facet, base_face.canonical, i)
            except YProfileUndefined:
                return False
            predicted = {4 * f + code[t] for f in base_face.flags for t in tags}
            if lookup.get(4 * base_face.canonical + 0) != predicted:
                return False
    return True

"""Reference corpus of small rank-3 (and rank-2) maniplexes.

torus_44(b, c) builds the flag graph of the square-grid map on the torus
obtained by quotienting the plane by the lattice spanned by (b, c) and
(-c, b); it has 8(b^2+c^2) flags.  platonic(name) builds flag graphs of a
few classical maps by coset enumeration over their standard presentations.
"""

from __future__ import annotations

import math

from .core import Maniplex, validate
from .cosets import coset_enumerate, string_coxeter

# corner k of the cell at (x, y) sits at (x, y) + _CORNER[k];
# side j joins corners j and j+1 and is crossed into the cell at +_ACROSS[j]
_CORNER = ((0, 0), (1, 0), (1, 1), (0, 1))
_ACROSS = ((0, -1), (1, 0), (0, 1), (-1, 0))


def _lattice_reducer(b: int, c: int):
    """Canonical representative map for Z^2 modulo <(b, c), (-c, b)>.

    Uses the Hermite form of the lattice: x-axis period N/g and a shear
    (k, g) with g = gcd(b, c), so reduction is y mod g, then x mod N/g.
    """
    n = b * b + c * c
    g = math.gcd(b, c)
    # solve p*c + q*b = g, giving the lattice point (p*b - q*c, g)
    q, p = _bezout(b, c)
    shear = (p * b - q * c) % (n // g)

    def canon(x: int, y: int) -> tuple[int, int]:
        t = y % g
        steps = (y - t) // g
        x = (x - steps * shear) % (n // g)
        return (x, t)

    return canon, n, g


def _bezout(a: int, b: int) -> tuple[int, int]:
    """(u, v) with u*a + v*b = gcd(a, b)."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_u, u = u, old_u - quot * u
        old_v, v = v, old_v - quot * v
    return old_u, old_v


def torus_44(b: int, c: int) -> Maniplex:
    """Flag graph of the {4,4} torus map with translation lattice <(b,c), (-c,b)>."""
    if b < 0 or c < 0 or (b == 0 and c == 0):
        raise ValueError("need b, c >= 0 and not both zero")
    canon, n, g = _lattice_reducer(b, c)
    cells = sorted({canon(x, y) for x in range(n) for y in range(g)})
    if len(cells) != n:
        raise RuntimeError("lattice reduction produced a wrong cell count")
    cell_index = {cell: k for k, cell in enumerate(cells)}

    def flag_id(cell: tuple[int, int], corner: int, side_sel: int) -> int:
        return (cell_index[canon(*cell)] * 4 + corner) * 2 + side_sel

    size = 8 * n
    r0 = [0] * size
    r1 = [0] * size
    r2 = [0] * size
    for cell in cells:
        x, y = cell
        for k in range(4):
            for s in (0, 1):
                me = flag_id(cell, k, s)
                # r0: other endpoint of the edge, same cell and edge
                if s == 0:
                    r0[me] = flag_id(cell, (k + 1) % 4, 1)
                else:
                    r0[me] = flag_id(cell, (k - 1) % 4, 0)
                # r1: other edge at the same corner
                r1[me] = flag_id(cell, k, 1 - s)
                # r2: same corner and edge, neighbouring cell
                j = k if s == 0 else (k - 1) % 4
                dx, dy = _ACROSS[j]
                other = (x + dx, y + dy)
                k2 = _NEIGHBOUR_CORNER[j][k]
                s2 = 0 if k2 == (j + 2) % 4 else 1
                r2[me] = flag_id(other, k2, s2)
    return Maniplex((tuple(r0), tuple(r1), tuple(r2)))


# corner relabelling when crossing side j: which corner of the neighbour
# carries the same grid vertex (only corners on side j appear)
_NEIGHBOUR_CORNER = (
    {0: 3, 1: 2},  # crossing the bottom side
    {1: 0, 2: 3},  # crossing the right side
    {2: 1, 3: 0},  # crossing the top side
    {3: 2, 0: 1},  # crossing the left side
)


_PETRIE_CUBE = ((0, 1, 2) * 3,)

_PLATONIC = {
    "square": lambda: string_coxeter([4]),
    "cube": lambda: string_coxeter([4, 3]),
    "hemicube": lambda: string_coxeter([4, 3]).extended(*_PETRIE_CUBE),
    "hemioctahedron": lambda: string_coxeter([3, 4]).extended(*_PETRIE_CUBE),
}


def platonic(name: str) -> Maniplex:
    """Flag graph of a named classical map (square, cube, hemicube, hemioctahedron)."""
    try:
        pres = _PLATONIC[name]()
    except KeyError:
        raise ValueError(f"unknown map {name!r}; choose from {sorted(_PLATONIC)}") from None
    m = coset_enumerate(pres).to_maniplex()
    report = validate(m)
    if not report.ok:
        raise RuntimeError(f"enumerated {name} is not a maniplex: {report.violations}")
    return m


def corpus_names() -> list[str]:
    return sorted(_PLATONIC)

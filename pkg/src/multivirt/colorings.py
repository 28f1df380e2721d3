"""Coloring relation systems, exact solution counting, and the pairing map.

Three kinds of integer relation systems over arc unknowns:

  fox          unknowns are arcs (cut at undercrossings); every real crossing
               contributes the row x + z - 2y = 0 built from the arc entering
               the undercrossing (x), the arc leaving it (z), and the arc
               carrying the overcrossing (y).
  virtual_fox  unknowns are virtual arcs (cut at undercrossings and virtual
               crossings); same real-crossing rows, plus two negation rows
               in + out = 0 per virtual crossing, one for each strand.
  constrained  unknowns are arcs of a 2-fold multiplexed diagram; same
               real-crossing rows, plus one pairing row alpha + alpha' = 0
               per source edge, linking the arcs that carry its two parallel
               copies (read off the multiplexing provenance).

Solutions are counted modulo n exactly for every n >= 1: if the relation
matrix has Smith divisors d_1 | ... | d_k and q free unknowns, the count is
n^q * prod gcd(d_i, n).  A brute-force enumerator provides the independent
oracle for the same counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

import numpy as np

from .constructions import Provenance
from .errors import (
    BadModulus,
    InvalidColoring,
    MissingProvenance,
    TooLarge,
)
from .model import Diagram, Granularity, Role, Segments, segments


class ColoringMode(Enum):
    FOX = "fox"
    VIRTUAL_FOX = "virtual"
    CONSTRAINED = "constrained"


@dataclass(frozen=True)
class ColoringSystem:
    mode: ColoringMode
    unknowns: Segments
    rows: tuple[tuple[int, ...], ...]

    @property
    def n_unknowns(self) -> int:
        return len(self.unknowns.pieces)

    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def snf(self) -> "SNF":
        if not hasattr(self, "_snf"):
            object.__setattr__(self, "_snf", smith_normal_form(self.matrix()))
        return self._snf

    def to_json(self, moduli: tuple[int, ...] = ()) -> dict:
        s = self.snf()
        return {
            "mode": self.mode.value,
            "unknowns": self.n_unknowns,
            "rows": len(self.rows),
            "divisors": [d for d in s.diagonal if d],
            "count_mod_n": {str(n): count_colorings(self, n) for n in moduli},
        }


@dataclass(frozen=True)
class Coloring:
    """An assignment unknown index -> residue, satisfying its system mod n."""

    values: tuple[int, ...]
    modulus: int

    def __getitem__(self, k: int) -> int:
        return self.values[k]


@dataclass(frozen=True)
class SNF:
    diagonal: tuple[int, ...]
    rank: int


def build_system(
    d: Diagram,
    mode: ColoringMode,
    provenance: Provenance | None = None,
) -> ColoringSystem:
    """Assemble the relation system of `d` for the requested coloring mode."""
    gran = (
        Granularity.VIRTUAL_ARC if mode is ColoringMode.VIRTUAL_FOX else Granularity.ARC
    )
    segs = segments(d, gran)
    k = len(segs.pieces)
    rows: list[tuple[int, ...]] = []

    def row(*coeffs: tuple[int, int]) -> tuple[int, ...]:
        r = [0] * k
        for idx, c in coeffs:
            r[idx] += c
        return tuple(r)

    for cid, rec in sorted(d.crossings.items()):
        if rec.virtual:
            if mode is ColoringMode.VIRTUAL_FOX:
                for ci, i in d.positions_of(cid):
                    rows.append(
                        row((segs.index_into(ci, i), 1), (segs.index_out_of(ci, i), 1))
                    )
            continue
        (co, io), (cu, iu) = d.real_positions(cid)
        y = segs.index_at(co, io)
        x = segs.index_into(cu, iu)
        z = segs.index_out_of(cu, iu)
        rows.append(row((x, 1), (z, 1), (y, -2)))

    if mode is ColoringMode.CONSTRAINED:
        if provenance is None:
            raise MissingProvenance("constrained systems need the multiplexing provenance")
        if provenance.r != 2:
            raise MissingProvenance("constrained systems are defined on 2-fold multiplexes")
        by_edge: dict[int, dict[int, tuple[int, int | None]]] = {}
        for (t, q), loc in provenance.edge_map.items():
            by_edge.setdefault(t, {})[q] = loc
        for t in sorted(by_edge):
            copies = by_edge[t]
            a = segs.index_of_gap(*copies[1])
            b = segs.index_of_gap(*copies[2])
            rows.append(row((a, 1), (b, 1)))

    return ColoringSystem(mode, segs, tuple(rows))


# -- exact counting ---------------------------------------------------------


def smith_normal_form(mat: list[list[int]]) -> SNF:
    """Diagonalize an integer matrix by invertible row/column operations.

    Exact arbitrary-precision arithmetic throughout; returns the divisor
    chain d_1 | d_2 | ... padded with zeros to min(rows, cols)."""
    m = [list(map(int, r)) for r in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    size = min(nr, nc)
    t = 0
    while t < size:
        # Smallest nonzero entry of the working submatrix becomes the pivot.
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[t], m[pi] = m[pi], m[t]
        for r_ in m:
            r_[t], r_[pj] = r_[pj], r_[t]
        while True:
            if m[t][t] < 0:
                m[t] = [-v for v in m[t]]
            p = m[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = m[i][t] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                if m[i][t]:
                    # Remainder smaller than the pivot: swap it up and restart.
                    m[t], m[i] = m[i], m[t]
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(t + 1, nc):
                q = m[t][j] // p
                if q:
                    for i in range(nr):
                        m[i][j] -= q * m[i][t]
                if m[t][j]:
                    for i in range(nr):
                        m[i][t], m[i][j] = m[i][j], m[i][t]
                    dirty = True
                    break
            if dirty:
                continue
            # Pivot must divide the rest of the submatrix.
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if m[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad])]
        t += 1
    diag = []
    for i in range(size):
        diag.append(abs(m[i][i]) if i < t else 0)
    rank = sum(1 for v in diag if v)
    return SNF(tuple(diag), rank)


def count_colorings(sys: ColoringSystem, n: int) -> int:
    """Number of solutions of the relation system modulo n (exact, any n >= 1)."""
    if n < 1:
        raise BadModulus(f"modulus must be >= 1, got {n}")
    s = sys.snf()
    count = n ** (sys.n_unknowns - s.rank)
    for d in s.diagonal[: s.rank]:
        count *= gcd(d, n)
    return count


def enumerate_colorings(
    sys: ColoringSystem, n: int, limit: int = 10**6
) -> list[Coloring]:
    """All solutions mod n by trying every assignment (the independent oracle)."""
    if n < 1:
        raise BadModulus(f"modulus must be >= 1, got {n}")
    k = sys.n_unknowns
    total = n**k
    if total > limit:
        raise TooLarge(f"{n}^{k} assignments exceed limit {limit}")
    if k == 0:
        return [Coloring((), n)]
    A = np.array(sys.matrix(), dtype=np.int64).T if sys.rows else None
    out: list[Coloring] = []
    powers = n ** np.arange(k, dtype=np.int64)
    chunk = 1 << 14
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        X = (idx[:, None] // powers[None, :]) % n
        if A is None:
            good = np.ones(len(idx), dtype=bool)
        else:
            good = ((X @ A) % n == 0).all(axis=1)
        for rowv in X[good]:
            out.append(Coloring(tuple(int(v) for v in rowv), n))
    return out


def is_solution(sys: ColoringSystem, col: Coloring) -> bool:
    n = col.modulus
    return all(
        sum(c * v for c, v in zip(r, col.values)) % n == 0 for r in sys.rows
    )


# -- the pairing map --------------------------------------------------------

# Copies are numbered left to right across the strand direction, so the
# right-hand copy of an edge in a 2-fold multiplex is copy position 2.  The
# opposite choice would compose the map with global negation, which is also a
# bijection; one side has to be fixed.
_RIGHT_COPY = 2
_LEFT_COPY = 1


def psi(
    d: Diagram,
    col: Coloring,
    l2: Diagram,
    prov: Provenance,
    system: ColoringSystem | None = None,
) -> Coloring:
    """Send a virtual coloring of `d` to the constrained coloring of its 2-fold
    multiplex that puts the source value on the right copy of every edge and
    its negative on the left copy."""
    if prov.r != 2:
        raise MissingProvenance("the pairing map is defined on 2-fold multiplexes")
    n = col.modulus
    vsegs = segments(d, Granularity.VIRTUAL_ARC)
    esegs = segments(d, Granularity.EDGE)
    vsys = build_system(d, ColoringMode.VIRTUAL_FOX)
    if len(col.values) != len(vsegs.pieces) or not is_solution(vsys, col):
        raise InvalidColoring("input is not a virtual coloring of the source diagram")
    arcs = segments(l2, Granularity.ARC)
    values: dict[int, int] = {}

    def assign(piece: int, v: int) -> None:
        v %= n
        if values.setdefault(piece, v) != v:
            raise InvalidColoring("pairing map produced an inconsistent assignment")

    for t, piece in enumerate(esegs.pieces):
        gap = piece.start if piece.start is not None else None
        v = col.values[vsegs.index_of_gap(piece.component, gap)]
        right = prov.edge_map[(t, _RIGHT_COPY)]
        left = prov.edge_map[(t, _LEFT_COPY)]
        assign(arcs.index_of_gap(*right), v)
        assign(arcs.index_of_gap(*left), -v)

    if set(values) != set(range(len(arcs.pieces))):
        raise InvalidColoring("pairing map left an arc of the multiplex unassigned")
    out = Coloring(tuple(values[i] for i in range(len(arcs.pieces))), n)
    if system is not None and not is_solution(system, out):
        raise InvalidColoring("pairing map image violates the constrained system")
    return out

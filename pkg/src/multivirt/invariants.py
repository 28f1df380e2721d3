"""Crossing indices, writhes, linking numbers, and the per-component lambda.

The index of a real self-crossing c is computed along its specified path: the
stretch of the component strictly between the over passage and the under
passage of c.  Walking that path, a real crossing met as Under contributes
+sign, met as Over contributes -sign; a virtual crossing met as its canonical
second passage contributes +sign, as its first passage -sign.  Both rules say
the same thing: a transverse strand counts +1 when it crosses the path from
left to right.  A crossing whose two passages both lie on the path contributes
zero in total.

On genus-0 diagrams the real and virtual counts cancel: ind + ind_v = 0 for
every real self-crossing.  No such constraint holds for abstract (positive
genus) codes, which are accepted everywhere here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadComponent, MixedCrossing, NotAKnot, NotReal, UnknownCrossing
from .model import Diagram, Passage, Role


@dataclass(frozen=True)
class IndexPair:
    ind: int
    ind_v: int


@dataclass(frozen=True)
class WritheTable:
    """Finite-support map n -> J_n for nonzero n; J_0 is reported separately
    because it is not preserved by the first Reidemeister move."""

    entries: dict[int, int]
    j0: int

    def __getitem__(self, n: int) -> int:
        if n == 0:
            return self.j0
        return self.entries.get(n, 0)

    def support(self) -> set[int]:
        return set(self.entries)

    def to_json(self) -> dict:
        return {
            "jn": {str(n): self.entries[n] for n in sorted(self.entries)},
            "j0": self.j0,
        }


@dataclass(frozen=True)
class ComponentWrithes:
    component: int
    table: WritheTable
    lambda_i: int  # the excluded modulus: the table is only stable away from it


@dataclass(frozen=True)
class InvariantReport:
    writhe: int
    jn: WritheTable | None
    jni: tuple[ComponentWrithes, ...]
    lk: tuple[tuple[int, ...], ...]
    lam: tuple[int, ...]

    def to_json(self) -> dict:
        out: dict = {"writhe": self.writhe}
        if self.jn is not None:
            out.update(self.jn.to_json())
        else:
            out.update({"jn": None, "j0": None})
        out["jni"] = [
            {"component": cw.component, "lambda": cw.lambda_i, **cw.table.to_json()}
            for cw in self.jni
        ]
        out["lk"] = [list(row) for row in self.lk]
        out["lambda"] = list(self.lam)
        return out


def _require_real(d: Diagram, cid: int) -> None:
    if cid not in d.crossings:
        raise UnknownCrossing(f"no crossing {cid}")
    if d.crossings[cid].virtual:
        raise NotReal(f"crossing {cid} is virtual")


def _positions(d: Diagram) -> dict[int, list[tuple[int, int]]]:
    """Passage positions per crossing, in canonical order, in one sweep."""
    out: dict[int, list[tuple[int, int]]] = {}
    for ci, i, p in d.passages():
        out.setdefault(p.crossing, []).append((ci, i))
    return out


def _role_positions(d: Diagram, cid: int, pos=None):
    ps = (pos or _positions(d))[cid]
    over = under = None
    for ci, i in ps:
        if d.components[ci][i].role is Role.OVER:
            over = (ci, i)
        elif d.components[ci][i].role is Role.UNDER:
            under = (ci, i)
    return over, under


def _path_positions(d: Diagram, cid: int, pos=None) -> tuple[int, list[int]]:
    (co, io), (cu, iu) = _role_positions(d, cid, pos)
    if co != cu:
        raise MixedCrossing(
            f"crossing {cid} joins components {co + 1} and {cu + 1}; "
            "its over-to-under path is undefined"
        )
    L = len(d.components[co])
    span = (iu - io) % L
    return co, [(io + t) % L for t in range(1, span)]


def specified_path(d: Diagram, cid: int) -> list[Passage]:
    """Passages strictly between the over and the under passage of `cid`,
    in traversal order along its component."""
    _require_real(d, cid)
    ci, idxs = _path_positions(d, cid)
    return [d.components[ci][i] for i in idxs]


def crossing_indices(d: Diagram, cid: int, _pos=None) -> IndexPair:
    _require_real(d, cid)
    pos = _pos or _positions(d)
    ci, idxs = _path_positions(d, cid, pos)
    ind = ind_v = 0
    for i in idxs:
        p = d.components[ci][i]
        rec = d.crossings[p.crossing]
        if rec.virtual:
            ind_v += -rec.sign if pos[p.crossing][0] == (ci, i) else rec.sign
        elif p.role is Role.UNDER:
            ind += rec.sign
        else:
            ind += -rec.sign
    return IndexPair(ind, ind_v)


def writhe(d: Diagram) -> int:
    return sum(rec.sign for rec in d.crossings.values() if not rec.virtual)


def _self_crossings(d: Diagram, ci: int, pos=None) -> list[int]:
    """Real crossings whose both passages lie on component `ci`."""
    pos = pos or _positions(d)
    out = []
    for cid, rec in d.crossings.items():
        if rec.virtual:
            continue
        (co, _), (cu, _) = pos[cid]
        if co == ci and cu == ci:
            out.append(cid)
    return sorted(out)


def _writhe_table(d: Diagram, cids: list[int], pos=None) -> WritheTable:
    pos = pos or _positions(d)
    entries: dict[int, int] = {}
    j0 = 0
    for cid in cids:
        n = crossing_indices(d, cid, pos).ind
        s = d.crossings[cid].sign
        if n == 0:
            j0 += s
        else:
            entries[n] = entries.get(n, 0) + s
    return WritheTable({n: v for n, v in entries.items() if v != 0}, j0)


def n_writhes(d: Diagram) -> WritheTable:
    """J_n table of a knot diagram; stable under the generalized moves for n != 0."""
    if d.n_components() != 1:
        raise NotAKnot(f"expected 1 component, found {d.n_components()}")
    pos = _positions(d)
    return _writhe_table(d, _self_crossings(d, 0, pos), pos)


def ith_n_writhes(d: Diagram, i: int) -> ComponentWrithes:
    """Writhe table of the real self-crossings of component `i` (1-based),
    with indices counted against the whole diagram.  Stable for n outside
    {0, lambda_i}."""
    if not 1 <= i <= d.n_components():
        raise BadComponent(f"component {i} of {d.n_components()}")
    pos = _positions(d)
    table = _writhe_table(d, _self_crossings(d, i - 1, pos), pos)
    lam = linking_and_lambda(d).lam[i - 1]
    return ComponentWrithes(i, table, lam)


def linking_and_lambda(d: Diagram) -> InvariantReport:
    """Linking matrix lk[i][j] = sum of signs of real crossings where component
    i passes over component j, plus lambda_i = sum_j (lk[j][i] - lk[i][j])."""
    r = d.n_components()
    pos = _positions(d)
    lk = [[0] * r for _ in range(r)]
    lam_direct = [0] * r
    for cid, rec in d.crossings.items():
        if rec.virtual:
            continue
        (co, _), (cu, _) = _role_positions(d, cid, pos)
        if co != cu:
            lk[co][cu] += rec.sign
            lam_direct[cu] += rec.sign
            lam_direct[co] -= rec.sign
    lam = [
        sum(lk[j][i] - lk[i][j] for j in range(r) if j != i) for i in range(r)
    ]
    assert lam == lam_direct, "two lambda computations disagree"
    return InvariantReport(
        writhe=writhe(d),
        jn=None,
        jni=(),
        lk=tuple(tuple(row) for row in lk),
        lam=tuple(lam),
    )


def invariant_report(d: Diagram) -> InvariantReport:
    """Full report: writhe, J_n (knots only), per-component tables, lk, lambda."""
    base = linking_and_lambda(d)
    jn = n_writhes(d) if d.n_components() == 1 else None
    jni = tuple(ith_n_writhes(d, i) for i in range(1, d.n_components() + 1))
    return InvariantReport(base.writhe, jn, jni, base.lk, base.lam)


def index_defect(d: Diagram) -> int:
    """Max |ind + ind_v| over real self-crossings; 0 on every planar diagram."""
    worst = 0
    pos = _positions(d)
    for ci in range(d.n_components()):
        for cid in _self_crossings(d, ci, pos):
            pair = crossing_indices(d, cid, pos)
            worst = max(worst, abs(pair.ind + pair.ind_v))
    return worst

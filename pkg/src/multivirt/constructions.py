"""Multiplexed links, coverings, and component extraction.

`multiplex(d, r)` takes r parallel copies of a knot diagram.  Copies are
numbered 1..r left to right across the strand direction at the basepoint, and
output component i is the circle occupying copy position i there.  Each real
crossing becomes an r x r grid of intersections between the over bundle and
the under bundle: the position-diagonal ones stay real with the source sign,
the rest are virtual (r real + r^2 - r virtual).  Each virtual crossing
becomes an all-virtual r x r grid followed, immediately downstream on each
bundle, by a cyclic relabeling braid of r - 1 virtual self-crossings
(r^2 + 2r - 2 virtual in total).  Every intersection inside a tile inherits
the frame orientation of the two source strands.

The braid orientation is a single global bit: at a virtual tile the bundle
that the other bundle crosses left to right shifts its copies one step, the
other bundle shifts the opposite way.  `_SHIFT_ORIENTATION` fixes which step
is +1; it is pinned so that the linking numbers of the multiplexed link equal
the writhe sums over index classes n = i - j (mod r), and flipping it would
flip that congruence to j - i.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .errors import BadComponent, BadR, NotAKnot
from .invariants import crossing_indices
from .model import CrossingRecord, Diagram, Passage, Role
from .planar import genus

_SHIFT_ORIENTATION = -1


@dataclass(frozen=True)
class Provenance:
    """Where every crossing and edge of a multiplexed diagram came from.

    crossing_map: output crossing id -> ("diag", source id, copy)
                  | ("off", source id, a, b) | ("shift", source id, bundle, p)
    edge_map:     (source edge index, copy position) -> (component, gap index)
                  with gap None for a crossing-free circle
    component_map: output component (1-based) -> copy position at the basepoint
    """

    r: int
    crossing_map: dict[int, tuple]
    edge_map: dict[tuple[int, int], tuple[int, int | None]]
    component_map: dict[int, int]

    def tile_census(self) -> dict[int, dict[str, int]]:
        census: dict[int, dict[str, int]] = {}
        for _, info in self.crossing_map.items():
            kind, src = info[0], info[1]
            c = census.setdefault(src, {"diag": 0, "off": 0, "shift": 0})
            c[kind] += 1
        return census

    def to_json(self) -> dict:
        cmap = {}
        for cid in sorted(self.crossing_map):
            info = self.crossing_map[cid]
            if info[0] == "diag":
                cmap[str(cid)] = {"role": "diagonal", "source": info[1], "copy": info[2]}
            elif info[0] == "off":
                cmap[str(cid)] = {
                    "role": "offdiagonal",
                    "source": info[1],
                    "copies": [info[2], info[3]],
                }
            else:
                cmap[str(cid)] = {
                    "role": "bundle_shift",
                    "source": info[1],
                    "bundle": info[2],
                    "position": info[3],
                }
        emap = [
            {
                "source_edge": t,
                "copy": q,
                "component": comp + 1,
                "gap": gap,
            }
            for (t, q), (comp, gap) in sorted(self.edge_map.items())
        ]
        return {
            "r": self.r,
            "crossing_map": cmap,
            "edge_map": emap,
            "component_map": {str(k): v for k, v in sorted(self.component_map.items())},
        }


def multiplex(d: Diagram, r: int) -> tuple[Diagram, Provenance]:
    """Build the r-component multiplexed link of a knot diagram, with provenance."""
    if d.n_components() != 1:
        raise NotAKnot("multiplexing is defined for one-component diagrams")
    if r < 2:
        raise BadR(f"need r >= 2, got {r}")
    if d.crossings and genus(d) != 0:
        warnings.warn(
            "multiplexing an abstract (positive genus) code; "
            "identities tied to planarity are not guaranteed",
            stacklevel=2,
        )

    comp = d.components[0]
    m = len(comp)

    # Source-side bookkeeping: which bundle each passage rides.  The over
    # strand of a real crossing and the canonically first passage of a
    # virtual crossing are bundle A; frames below are frame(dir A, dir B).
    vfirst: dict[int, int] = {}
    for cid, rec in d.crossings.items():
        if rec.virtual:
            idxs = [i for i, p in enumerate(comp) if p.crossing == cid]
            vfirst[cid] = min(idxs)

    slot_ids: dict[tuple, int] = {}
    slot_info: dict[int, dict] = {}
    next_id = 1

    def slot(key: tuple, frame: int) -> int:
        nonlocal next_id
        if key not in slot_ids:
            slot_ids[key] = next_id
            slot_info[next_id] = {"key": key, "frame": frame, "passages": []}
            next_id += 1
        return slot_ids[key]

    def shifts(f: int) -> tuple[int, int]:
        # (bundle A, bundle B); the two bundles always shift opposite ways.
        return (-f * _SHIFT_ORIENTATION, f * _SHIFT_ORIENTATION)

    out_components: list[list[Passage]] = []
    edge_map: dict[tuple[int, int], tuple[int, int | None]] = {}
    for ell in range(1, r + 1):
        cur = ell
        trace: list[Passage] = []

        def emit(cid: int, role: Role, tag: str) -> None:
            slot_info[cid]["passages"].append((ell - 1, len(trace), tag))
            trace.append(Passage(cid, role))

        for t, p in enumerate(comp):
            rec = d.crossings[p.crossing]
            f = rec.sign
            if not rec.virtual:
                on_a = p.role is Role.OVER
                my_role = Role.OVER if on_a else Role.UNDER
                if on_a:
                    bs = range(1, r + 1) if f > 0 else range(r, 0, -1)
                    for b in bs:
                        cid = slot(("grid", p.crossing, cur, b), f)
                        emit(cid, my_role if b == cur else Role.THROUGH, "A")
                else:
                    as_ = range(r, 0, -1) if f > 0 else range(1, r + 1)
                    for a in as_:
                        cid = slot(("grid", p.crossing, a, cur), f)
                        emit(cid, my_role if a == cur else Role.THROUGH, "B")
            else:
                on_a = vfirst[p.crossing] == t
                tag = "A" if on_a else "B"
                if on_a:
                    bs = range(1, r + 1) if f > 0 else range(r, 0, -1)
                    for b in bs:
                        cid = slot(("grid", p.crossing, cur, b), f)
                        emit(cid, Role.THROUGH, "A")
                else:
                    as_ = range(r, 0, -1) if f > 0 else range(1, r + 1)
                    for a in as_:
                        cid = slot(("grid", p.crossing, a, cur), f)
                        emit(cid, Role.THROUGH, "B")
                s = shifts(f)[0 if on_a else 1]
                mover = r if s > 0 else 1
                if cur == mover:
                    ps = range(r - 1, 0, -1) if s > 0 else range(2, r + 1)
                    for q in ps:
                        cid = slot(("shift", p.crossing, tag, q), -s)
                        emit(cid, Role.THROUGH, "M")
                else:
                    cid = slot(("shift", p.crossing, tag, cur), -s)
                    emit(cid, Role.THROUGH, "N")
                cur = (cur - 1 + s) % r + 1
            edge_map[(t, cur)] = (ell - 1, len(trace) - 1)
        if m == 0:
            edge_map[(0, ell)] = (ell - 1, None)
        assert cur == ell, "bundle shifts around the circle must cancel"
        out_components.append(trace)

    crossings: dict[int, CrossingRecord] = {}
    crossing_map: dict[int, tuple] = {}
    for cid, info in slot_info.items():
        key = info["key"]
        src = key[1]
        src_rec = d.crossings[src]
        if key[0] == "grid":
            a, b = key[2], key[3]
            if not src_rec.virtual and a == b:
                crossings[cid] = CrossingRecord(cid, False, src_rec.sign)
                crossing_map[cid] = ("diag", src, a)
                continue
            crossing_map[cid] = ("off", src, a, b)
            first_tag = "A"
        else:
            crossing_map[cid] = ("shift", src, 1 if key[2] == "A" else 2, key[3])
            first_tag = "M"
        ps = sorted((ci, i, tag) for ci, i, tag in info["passages"])
        assert len(ps) == 2
        sign = info["frame"] if ps[0][2] == first_tag else -info["frame"]
        crossings[cid] = CrossingRecord(cid, True, sign)

    out = Diagram(tuple(tuple(c) for c in out_components), crossings)
    out.validate()
    prov = Provenance(
        r=r,
        crossing_map=crossing_map,
        edge_map=edge_map,
        component_map={i: i for i in range(1, r + 1)},
    )
    return out, prov


def covering(d: Diagram, r: int) -> Diagram:
    """Replace every real crossing whose index is not divisible by r with a
    virtual crossing carrying the same frame orientation."""
    if d.n_components() != 1:
        raise NotAKnot("coverings are defined for one-component diagrams")
    if r < 1:
        raise BadR(f"need r >= 1, got {r}")
    if r == 1:
        return d
    to_virtualize = []
    for cid, rec in d.crossings.items():
        if not rec.virtual and crossing_indices(d, cid).ind % r != 0:
            to_virtualize.append(cid)
    if not to_virtualize:
        return d
    crossings = dict(d.crossings)
    comp = list(d.components[0])
    for cid in to_virtualize:
        (co, io), (cu, iu) = d.real_positions(cid)
        # Stored sign follows the canonical passage order: the frame
        # (over direction, under direction) equals the real sign.
        sign = crossings[cid].sign if (co, io) < (cu, iu) else -crossings[cid].sign
        crossings[cid] = CrossingRecord(cid, True, sign)
        comp[io] = Passage(cid, Role.THROUGH)
        comp[iu] = Passage(cid, Role.THROUGH)
    out = Diagram((tuple(comp),), crossings)
    out.validate()
    return out


def extract_component(d: Diagram, i: int) -> Diagram:
    """Keep component `i` (1-based) and only the crossings lying entirely on it."""
    if not 1 <= i <= d.n_components():
        raise BadComponent(f"component {i} of {d.n_components()}")
    ci = i - 1
    keep: set[int] = set()
    counts: dict[int, int] = {}
    for cj, _, p in d.passages():
        if cj == ci:
            counts[p.crossing] = counts.get(p.crossing, 0) + 1
    for cid, n in counts.items():
        if n == 2:
            keep.add(cid)
    comp = tuple(p for p in d.components[ci] if p.crossing in keep)
    crossings = {cid: d.crossings[cid] for cid in keep}
    out = Diagram((comp,), crossings)
    out.validate()
    return out

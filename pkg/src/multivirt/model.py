"""Diagram model and the VGC text format.

A diagram is an ordered list of oriented circles ("components"), each a cyclic
sequence of passages through crossings.  A real crossing is passed once as Over
and once as Under and carries a sign; a virtual crossing is passed twice
(role Through) and carries an intersection sign relative to the canonical
order of its two passages: the sign is the orientation of the frame
(direction of the first passage, direction of the second passage), where
"first" means lexicographically smaller (component index, position).  Rotating
a basepoint past exactly one passage of a virtual crossing therefore negates
the stored sign; `rotate` takes care of that.

VGC grammar (serialized form is bit-exact):

    diagram   := component (" ; " component)*
    component := "." | passage (" " passage)*
    passage   := ("O" | "U" | "V") id sign      id >= 1, sign in "+-"

Both tokens of one crossing carry the same sign character.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import ParseError, ValidationError

_TOKEN_RE = re.compile(r"([OUV])([0-9]+)([+-])\Z")


class Role(Enum):
    OVER = "O"
    UNDER = "U"
    THROUGH = "V"


@dataclass(frozen=True)
class Passage:
    crossing: int
    role: Role


@dataclass(frozen=True)
class CrossingRecord:
    cid: int
    virtual: bool
    sign: int  # epsilon for real crossings; frame sign of (first, second) passage for virtual


@dataclass(frozen=True)
class Diagram:
    """Immutable diagram value.  All operations in this package are pure."""

    components: tuple[tuple[Passage, ...], ...]
    crossings: dict[int, CrossingRecord]

    # -- basic queries ----------------------------------------------------

    def n_components(self) -> int:
        return len(self.components)

    def n_real(self) -> int:
        return sum(1 for c in self.crossings.values() if not c.virtual)

    def n_virtual(self) -> int:
        return sum(1 for c in self.crossings.values() if c.virtual)

    def n_passages(self) -> int:
        return sum(len(c) for c in self.components)

    def record(self, cid: int) -> CrossingRecord:
        return self.crossings[cid]

    def passages(self):
        """Yield (component index, position, Passage) over the whole diagram."""
        for ci, comp in enumerate(self.components):
            for i, p in enumerate(comp):
                yield ci, i, p

    def positions_of(self, cid: int) -> list[tuple[int, int]]:
        """Positions of the (one or two) passages of `cid`, in canonical order."""
        out = [(ci, i) for ci, i, p in self.passages() if p.crossing == cid]
        out.sort()
        return out

    def real_positions(self, cid: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """(over position, under position) of a real crossing."""
        over = under = None
        for ci, i, p in self.passages():
            if p.crossing == cid:
                if p.role is Role.OVER:
                    over = (ci, i)
                elif p.role is Role.UNDER:
                    under = (ci, i)
        assert over is not None and under is not None
        return over, under

    def validate(self) -> None:
        """Raise ValidationError unless every crossing invariant holds."""
        seen: dict[int, list[Role]] = {}
        for _, _, p in self.passages():
            seen.setdefault(p.crossing, []).append(p.role)
        if set(seen) != set(self.crossings):
            extra = set(seen) - set(self.crossings)
            missing = set(self.crossings) - set(seen)
            raise ValidationError(
                f"crossing table mismatch: unrecorded={sorted(extra)} unused={sorted(missing)}"
            )
        for cid, roles in seen.items():
            rec = self.crossings[cid]
            if rec.sign not in (+1, -1):
                raise ValidationError(f"crossing {cid}: sign must be +1 or -1")
            if rec.virtual:
                if roles != [Role.THROUGH, Role.THROUGH]:
                    raise ValidationError(
                        f"virtual crossing {cid} must be passed exactly twice as Through"
                    )
            else:
                if sorted(r.value for r in roles) != ["O", "U"]:
                    raise ValidationError(
                        f"real crossing {cid} must be passed exactly once Over and once Under"
                    )
        for cid, rec in self.crossings.items():
            if cid < 1:
                raise ValidationError("crossing ids must be >= 1")
            if rec.cid != cid:
                raise ValidationError(f"crossing record {rec.cid} filed under id {cid}")


def parse_vgc(text: str) -> Diagram:
    """Parse VGC text into a validated Diagram."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty VGC text")
    components: list[tuple[Passage, ...]] = []
    sign_chars: dict[int, str] = {}
    roles: dict[int, list[Role]] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk == ".":
            components.append(())
            continue
        if not chunk:
            raise ParseError("empty component (use '.' for a crossing-free circle)")
        passages = []
        for token in chunk.split():
            m = _TOKEN_RE.match(token)
            if not m:
                raise ParseError(f"malformed token {token!r}")
            role, cid_s, sign = m.groups()
            cid = int(cid_s)
            if cid < 1:
                raise ParseError(f"crossing id must be >= 1, got {token!r}")
            prev = sign_chars.setdefault(cid, sign)
            if prev != sign:
                raise ValidationError(f"crossing {cid}: mismatched signs {prev!r} and {sign!r}")
            roles.setdefault(cid, []).append(Role(role))
            passages.append(Passage(cid, Role(role)))
        components.append(tuple(passages))
    crossings: dict[int, CrossingRecord] = {}
    for cid, rs in roles.items():
        if len(rs) != 2:
            raise ValidationError(f"crossing {cid} passed {len(rs)} times (expected 2)")
        virtual = rs[0] is Role.THROUGH
        crossings[cid] = CrossingRecord(cid, virtual, +1 if sign_chars[cid] == "+" else -1)
    d = Diagram(tuple(components), crossings)
    d.validate()
    return d


def serialize_vgc(d: Diagram) -> str:
    """Serialize to the canonical textual form (single spaces, ' ; ' separators)."""
    parts = []
    for comp in d.components:
        if not comp:
            parts.append(".")
            continue
        tokens = []
        for p in comp:
            rec = d.crossings[p.crossing]
            tokens.append(f"{p.role.value}{p.crossing}{'+' if rec.sign > 0 else '-'}")
        parts.append(" ".join(tokens))
    return " ; ".join(parts)


# -- rotation and renaming -----------------------------------------------


def rotate(d: Diagram, ci: int, k: int) -> Diagram:
    """Move the basepoint of component `ci` forward by `k` passages.

    Stored signs of virtual crossings with both passages on `ci` are negated
    whenever the rotation swaps which passage comes first.
    """
    comp = d.components[ci]
    L = len(comp)
    if L == 0 or k % L == 0:
        return d
    k %= L
    new_comp = comp[k:] + comp[:k]
    flips: set[int] = set()
    pos: dict[int, list[int]] = {}
    for i, p in enumerate(comp):
        if d.crossings[p.crossing].virtual:
            pos.setdefault(p.crossing, []).append(i)
    for cid, ps in pos.items():
        if len(ps) == 2:  # both passages on this component
            p1, p2 = ps
            if p1 < k <= p2:
                flips.add(cid)
    crossings = dict(d.crossings)
    for cid in flips:
        rec = crossings[cid]
        crossings[cid] = CrossingRecord(cid, True, -rec.sign)
    components = tuple(
        new_comp if j == ci else c for j, c in enumerate(d.components)
    )
    return Diagram(components, crossings)


def relabel(d: Diagram, mapping: dict[int, int]) -> Diagram:
    components = tuple(
        tuple(Passage(mapping[p.crossing], p.role) for p in comp) for comp in d.components
    )
    crossings = {
        mapping[cid]: CrossingRecord(mapping[cid], rec.virtual, rec.sign)
        for cid, rec in d.crossings.items()
    }
    return Diagram(components, crossings)


def relabel_first_appearance(d: Diagram) -> Diagram:
    """Rename crossing ids to 1, 2, ... in order of first appearance."""
    mapping: dict[int, int] = {}
    for _, _, p in d.passages():
        if p.crossing not in mapping:
            mapping[p.crossing] = len(mapping) + 1
    return relabel(d, mapping)


def canonical_form(d: Diagram) -> str:
    """Minimal serialization over basepoint choices, ids renamed by first appearance.

    Component order is fixed.  Two diagrams have equal canonical forms exactly
    when they agree up to basepoint rotation and crossing relabeling.
    """
    # Minimize component by component; ties are carried forward because the
    # first-appearance relabeling couples later components to earlier ones.
    candidates: list[Diagram] = [d]
    for ci, comp in enumerate(d.components):
        rotations = range(max(1, len(comp)))
        best: str | None = None
        kept: list[Diagram] = []
        for cand in candidates:
            for k in rotations:
                rot = rotate(cand, ci, k)
                prefix = serialize_vgc(
                    relabel_first_appearance(
                        Diagram(rot.components[: ci + 1], _used_crossings(rot, ci + 1))
                    )
                )
                if best is None or prefix < best:
                    best, kept = prefix, [rot]
                elif prefix == best:
                    kept.append(rot)
        candidates = kept
    return serialize_vgc(relabel_first_appearance(candidates[0]))


def _used_crossings(d: Diagram, n_comps: int) -> dict[int, CrossingRecord]:
    used = {p.crossing for comp in d.components[:n_comps] for p in comp}
    return {cid: rec for cid, rec in d.crossings.items() if cid in used}


def diagrams_equal_up_to_rotation(a: Diagram, b: Diagram) -> bool:
    return canonical_form(a) == canonical_form(b)


# -- segmentation ----------------------------------------------------------


class Granularity(Enum):
    EDGE = "edge"
    ARC = "arc"
    VIRTUAL_ARC = "virtual_arc"


_CUT_ROLES = {
    Granularity.EDGE: {Role.OVER, Role.UNDER, Role.THROUGH},
    Granularity.ARC: {Role.UNDER},
    Granularity.VIRTUAL_ARC: {Role.UNDER, Role.THROUGH},
}


@dataclass(frozen=True)
class Piece:
    """A contiguous stretch of one component between two cut passages.

    `start` is the cut passage the piece exits from (None for a closed piece
    covering a whole component), `end` the cut passage it runs into.  `gaps`
    lists the edge slots (positions g meaning "between passage g and g+1")
    the piece covers, and `interior` the non-cut passages inside it.
    """

    component: int
    start: int | None
    end: int | None
    gaps: tuple[int, ...]
    interior: tuple[int, ...]


@dataclass(frozen=True)
class Segments:
    granularity: Granularity
    pieces: tuple[Piece, ...]

    def __len__(self) -> int:
        return len(self.pieces)

    def index_of_gap(self, ci: int, gap: int | None) -> int:
        return self._gap_map()[(ci, gap)]

    def index_into(self, ci: int, idx: int) -> int:
        """Piece that ends at cut passage (ci, idx)."""
        return self._end_map()[(ci, idx)]

    def index_out_of(self, ci: int, idx: int) -> int:
        """Piece that starts at cut passage (ci, idx)."""
        return self._start_map()[(ci, idx)]

    def index_at(self, ci: int, idx: int) -> int:
        """Piece containing the non-cut passage (ci, idx)."""
        return self._interior_map()[(ci, idx)]

    # Lookup tables are built once on demand; Segments is logically immutable.
    def _gap_map(self):
        if not hasattr(self, "_gaps"):
            m = {}
            for k, piece in enumerate(self.pieces):
                if piece.start is None:
                    m[(piece.component, None)] = k
                for g in piece.gaps:
                    m[(piece.component, g)] = k
            object.__setattr__(self, "_gaps", m)
        return self._gaps

    def _start_map(self):
        if not hasattr(self, "_starts"):
            object.__setattr__(
                self,
                "_starts",
                {
                    (p.component, p.start): k
                    for k, p in enumerate(self.pieces)
                    if p.start is not None
                },
            )
        return self._starts

    def _end_map(self):
        if not hasattr(self, "_ends"):
            object.__setattr__(
                self,
                "_ends",
                {
                    (p.component, p.end): k
                    for k, p in enumerate(self.pieces)
                    if p.end is not None
                },
            )
        return self._ends

    def _interior_map(self):
        if not hasattr(self, "_ints"):
            m = {}
            for k, piece in enumerate(self.pieces):
                for i in piece.interior:
                    m[(piece.component, i)] = k
            object.__setattr__(self, "_ints", m)
        return self._ints


def segments(d: Diagram, granularity: Granularity) -> Segments:
    """Partition every component into pieces cut at the granularity's passages.

    Edges are cut everywhere, arcs only at Under passages, virtual arcs at
    Under and Through passages.  A component with no cut point contributes a
    single closed piece.
    """
    cut_roles = _CUT_ROLES[granularity]
    pieces: list[Piece] = []
    for ci, comp in enumerate(d.components):
        L = len(comp)
        cuts = [i for i, p in enumerate(comp) if p.role in cut_roles]
        if not cuts:
            pieces.append(
                Piece(ci, None, None, tuple(range(L)) if L else (), tuple(range(L)))
            )
            continue
        for j, s in enumerate(cuts):
            e = cuts[(j + 1) % len(cuts)]
            span = (e - s) % L or L  # s == e means the piece wraps the whole circle
            gaps = tuple((s + t) % L for t in range(span))
            interior = tuple((s + t) % L for t in range(1, span))
            pieces.append(Piece(ci, s, e, gaps, interior))
    return Segments(granularity, tuple(pieces))

"""Rewrites on diagram codes: kink insertion/deletion, strand pokes across a
face, triangle slides, and the underpass slide through a virtual crossing.

All rewrites are strict token-level templates: deletions require the bound
passages to be literally adjacent, and triangle slides bind three pairwise
adjacent passage pairs.  Insertion loci are taken from the face structure of
the embedding, so every applied rewrite is a local planar patch and genus-0
diagrams stay genus-0.

The triangle template table is generated from an explicit drawing: three
oriented lines A(t) = (t, 1-t), B(t) = (t, 0), C(t) = (t, 1+t) meeting at
x = A^B, y = A^C, z = B^C, with all eight orientation choices.  The crossing
order along each strand follows the line parameters and the sign of each
crossing is the cross product of the two strand directions.  A slide
transposes the two passages inside each of the three bound gaps, so templates
are recorded together with their transposed forms.

Families (by which crossings are virtual and who is on top):

  R3   all real; one strand over both its crossings, one under both
  VR3  all virtual
  VR4  the slid strand crosses virtually; the crossing it slides past is real
  FU   the slid strand passes under two real crossings and slides past a
       virtual one; not an equivalence move, but it preserves virtual
       coloring counts
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import permutations, product

from .errors import StaleSite, ValidationError
from .model import CrossingRecord, Diagram, Passage, Role
from .planar import faces

MOVE_KINDS = (
    "R1+ins",
    "R1-ins",
    "R1del",
    "R2ins",
    "R2del",
    "R3",
    "VR1ins",
    "VR1del",
    "VR2ins",
    "VR2del",
    "VR3",
    "VR4",
    "FU",
)

DEFAULT_SIZE_CAP = 64
_POKE_WINDOW = 2  # how far around a face boundary a poke may reach


def size_cap_from_env() -> int:
    try:
        return int(os.environ.get("MULTIVIRT_SIZE_CAP", DEFAULT_SIZE_CAP))
    except ValueError:
        return DEFAULT_SIZE_CAP


@dataclass(frozen=True)
class MoveSite:
    kind: str
    variant: tuple
    locus: tuple

    def to_json(self) -> dict:
        return {"kind": self.kind, "variant": list(self.variant), "locus": _deep_list(self.locus)}

    @staticmethod
    def from_json(obj: dict) -> "MoveSite":
        return MoveSite(obj["kind"], _deep_tuple(obj["variant"]), _deep_tuple(obj["locus"]))


def _deep_list(x):
    return [_deep_list(v) for v in x] if isinstance(x, (tuple, list)) else x


def _deep_tuple(x):
    return tuple(_deep_tuple(v) for v in x) if isinstance(x, (tuple, list)) else x


# -- triangle templates ------------------------------------------------------

_STRANDS = ("A", "B", "C")
_PAIR_OF = {"x": ("A", "B"), "y": ("A", "C"), "z": ("B", "C")}


@dataclass(frozen=True)
class _Template:
    family: str
    orders: tuple[tuple[str, str], ...]  # crossing labels met along A, B, C
    roles: tuple  # ((strand, crossing, role-char), ...)
    virtual: frozenset
    frames: tuple[tuple[str, int], ...]  # crossing -> frame(dir first strand, dir second)


def _generate_triangle_templates() -> dict[str, tuple[_Template, ...]]:
    out: dict[str, list[_Template]] = {"R3": [], "VR3": [], "VR4": [], "FU": []}
    seen = set()
    for dA, dB, dC in product((1, -1), repeat=3):
        orders = {
            "A": ("y", "x") if dA > 0 else ("x", "y"),
            "B": ("z", "x") if dB > 0 else ("x", "z"),
            "C": ("z", "y") if dC > 0 else ("y", "z"),
        }
        frames = {"x": dA * dB, "y": dA * dC, "z": dB * dC}
        configs = [
            ("R3", {("A", "x"): "O", ("B", "x"): "U", ("A", "y"): "O",
                    ("C", "y"): "U", ("B", "z"): "O", ("C", "z"): "U"}, frozenset()),
            ("VR3", {(s, c): "V" for c, (s1, s2) in _PAIR_OF.items() for s in (s1, s2)},
             frozenset({"x", "y", "z"})),
            ("VR4", {("A", "x"): "V", ("B", "x"): "V", ("A", "y"): "V",
                     ("C", "y"): "V", ("B", "z"): "O", ("C", "z"): "U"},
             frozenset({"x", "y"})),
            ("VR4", {("A", "x"): "V", ("B", "x"): "V", ("A", "y"): "V",
                     ("C", "y"): "V", ("B", "z"): "U", ("C", "z"): "O"},
             frozenset({"x", "y"})),
            ("FU", {("A", "x"): "U", ("B", "x"): "O", ("A", "y"): "U",
                    ("C", "y"): "O", ("B", "z"): "V", ("C", "z"): "V"},
             frozenset({"z"})),
        ]
        for family, roles, virt in configs:
            for flip in (False, True):
                o = {
                    s: (orders[s][1], orders[s][0]) if flip else orders[s]
                    for s in _STRANDS
                }
                tpl = _Template(
                    family=family,
                    orders=tuple(o[s] for s in _STRANDS),
                    roles=tuple(sorted((s, c, r) for (s, c), r in roles.items())),
                    virtual=virt,
                    frames=tuple(sorted(frames.items())),
                )
                key = (tpl.orders, tpl.roles, tpl.virtual, tpl.frames)
                if key not in seen:
                    seen.add(key)
                    out[family].append(tpl)
    return {k: tuple(v) for k, v in out.items()}


_TRIANGLE_TEMPLATES = _generate_triangle_templates()

# Lookup from the role/order pattern of a bound triangle to the templates it
# may still match (only the frame signs remain to be checked).
_TEMPLATE_INDEX: dict[tuple, list[tuple[str, int, dict]]] = {}
for _fam, _tpls in _TRIANGLE_TEMPLATES.items():
    for _ti, _tpl in enumerate(_tpls):
        _TEMPLATE_INDEX.setdefault(
            (_tpl.orders, _tpl.roles, _tpl.virtual), []
        ).append((_fam, _ti, dict(_tpl.frames)))


# -- shared helpers ----------------------------------------------------------


def _gap_pairs(d: Diagram):
    """Gaps whose two flanking passages belong to two different crossings."""
    out = []
    for ci, comp in enumerate(d.components):
        L = len(comp)
        if L < 2:
            continue
        for g in range(L):
            p, q = comp[g], comp[(g + 1) % L]
            if p.crossing != q.crossing:
                out.append((ci, g, p, q))
    return out


def _insert_gaps(d: Diagram):
    out = []
    for ci, comp in enumerate(d.components):
        for g in range(max(1, len(comp))):
            out.append((ci, g))
    return out


def _fresh_ids(d: Diagram, k: int) -> list[int]:
    base = max(d.crossings, default=0)
    return [base + i + 1 for i in range(k)]


def _with_component(d: Diagram, ci: int, comp, crossings) -> Diagram:
    components = tuple(
        tuple(comp) if j == ci else c for j, c in enumerate(d.components)
    )
    out = Diagram(components, crossings)
    out.validate()
    return out


def _virtual_first(d: Diagram, cid: int) -> tuple[int, int]:
    return d.positions_of(cid)[0]


def _canonical_sign(d: Diagram, cid: int, ref_pos: tuple[int, int], frame: int) -> int:
    """Stored sign of a virtual crossing given the frame relative to the strand
    whose passage sits at `ref_pos` being named first."""
    return frame if _virtual_first(d, cid) == ref_pos else -frame


# -- kink sites --------------------------------------------------------------


def _kink_insertions(d: Diagram, kind: str):
    sites = []
    for ci, g in _insert_gaps(d):
        if kind == "VR1ins":
            for sign in (1, -1):
                sites.append(MoveSite(kind, ("VV", sign), (ci, g)))
        else:
            sign = 1 if kind == "R1+ins" else -1
            for order in ("OU", "UO"):
                sites.append(MoveSite(kind, (order, sign), (ci, g)))
    return sites


def _kink_deletions(d: Diagram, kind: str):
    sites = []
    want_virtual = kind == "VR1del"
    for ci, comp in enumerate(d.components):
        L = len(comp)
        for g in range(L):
            p, q = comp[g], comp[(g + 1) % L]
            if p.crossing != q.crossing:
                continue
            if L == 2 and g == 1:
                continue  # the same kink already matched at gap 0
            rec = d.crossings[p.crossing]
            if rec.virtual == want_virtual:
                sites.append(MoveSite(kind, (), (ci, g)))
    return sites


def _apply_kink_insertion(d: Diagram, site: MoveSite) -> Diagram:
    ci, g = site.locus
    order, sign = site.variant
    comp = list(d.components[ci])
    if g >= max(1, len(comp)):
        raise StaleSite("gap out of range")
    (cid,) = _fresh_ids(d, 1)
    if order == "VV":
        pair = [Passage(cid, Role.THROUGH), Passage(cid, Role.THROUGH)]
        rec = CrossingRecord(cid, True, sign)
    else:
        roles = (Role.OVER, Role.UNDER) if order == "OU" else (Role.UNDER, Role.OVER)
        pair = [Passage(cid, roles[0]), Passage(cid, roles[1])]
        rec = CrossingRecord(cid, False, sign)
    pos = g + 1 if comp else 0
    comp[pos:pos] = pair
    crossings = dict(d.crossings)
    crossings[cid] = rec
    return _with_component(d, ci, comp, crossings)


def _apply_kink_deletion(d: Diagram, site: MoveSite) -> Diagram:
    ci, g = site.locus
    comp = list(d.components[ci])
    L = len(comp)
    if L < 2:
        raise StaleSite("no adjacent pair at the recorded gap")
    p, q = comp[g], comp[(g + 1) % L]
    if p.crossing != q.crossing:
        raise StaleSite("the recorded gap no longer holds a kink")
    rec = d.crossings[p.crossing]
    if rec.virtual != (site.kind == "VR1del"):
        raise StaleSite("kink kind changed")
    for i in sorted({g, (g + 1) % L}, reverse=True):
        del comp[i]
    crossings = {k: v for k, v in d.crossings.items() if k != p.crossing}
    return _with_component(d, ci, comp, crossings)


# -- poke (two-crossing) sites -----------------------------------------------


def _poke_candidates(d: Diagram):
    """Ordered co-facial dart pairs (d1, d2) within the poke window, d1 and d2
    on distinct edges.  d1 is the poking strand, d2 the edge poked across."""
    out = []
    for cycle in faces(d):
        size = len(cycle)
        for i in range(size):
            for w in range(1, min(_POKE_WINDOW, size - 1) + 1):
                d1 = cycle[i]
                d2 = cycle[(i + w) % size]
                if d1[:2] != d2[:2]:
                    out.append((d1, d2))
    return out


def _poke_insertions(d: Diagram, kind: str):
    sites = []
    for d1, d2 in _poke_candidates(d):
        if kind == "R2ins":
            for variant in ("over", "under"):
                sites.append(MoveSite(kind, (variant,), (d1, d2)))
        else:
            sites.append(MoveSite(kind, ("virtual",), (d1, d2)))
    return sites


def _apply_poke(d: Diagram, site: MoveSite) -> Diagram:
    (d1, d2) = site.locus
    (variant,) = site.variant
    (c1, g1, dir1), (c2, g2, dir2) = d1, d2
    for ci, g in ((c1, g1), (c2, g2)):
        if ci >= len(d.components) or g >= len(d.components[ci]):
            raise StaleSite("poke locus out of range")
    if (c1, g1) == (c2, g2):
        raise StaleSite("poke needs two distinct edges")
    o1 = dir1
    o2 = -dir2
    cid_c, cid_d = _fresh_ids(d, 2)
    virtual = variant == "virtual"
    role1 = Role.THROUGH if virtual else (Role.OVER if variant == "over" else Role.UNDER)
    role2 = Role.THROUGH if virtual else (Role.UNDER if variant == "over" else Role.OVER)
    pair1 = [Passage(cid_c, role1), Passage(cid_d, role1)]
    pair2 = [Passage(cid_c, role2), Passage(cid_d, role2)]
    if o1 * o2 < 0:
        pair2.reverse()
    # frame(poking strand, poked strand) at the first and second new crossing
    frame_c, frame_d = -o2, o2

    components = [list(c) for c in d.components]
    pos1: dict[int, tuple[int, int]] = {}
    if c1 == c2:
        g_lo, ins_lo, g_hi, ins_hi = (
            (g1, pair1, g2, pair2) if g1 < g2 else (g2, pair2, g1, pair1)
        )
        comp = components[c1]
        components[c1] = (
            comp[: g_lo + 1] + ins_lo + comp[g_lo + 1 : g_hi + 1] + ins_hi + comp[g_hi + 1 :]
        )
        lo_at, hi_at = g_lo + 1, g_hi + 3
        strand1_at = lo_at if g1 < g2 else hi_at
    else:
        components[c1] = components[c1][: g1 + 1] + pair1 + components[c1][g1 + 1 :]
        components[c2] = components[c2][: g2 + 1] + pair2 + components[c2][g2 + 1 :]
        strand1_at = g1 + 1

    crossings = dict(d.crossings)
    if virtual:
        tmp = Diagram(tuple(tuple(c) for c in components), {})
        for cid, frame, offset in ((cid_c, frame_c, 0), (cid_d, frame_d, 1)):
            ref = (c1, strand1_at + offset)
            first = min(
                (ci, i)
                for ci, comp in enumerate(tmp.components)
                for i, p in enumerate(comp)
                if p.crossing == cid
            )
            crossings[cid] = CrossingRecord(cid, True, frame if first == ref else -frame)
    else:
        s1_over = variant == "over"
        eps_c = -o2 if s1_over else o2
        crossings[cid_c] = CrossingRecord(cid_c, False, eps_c)
        crossings[cid_d] = CrossingRecord(cid_d, False, -eps_c)
    out = Diagram(tuple(tuple(c) for c in components), crossings)
    out.validate()
    return out


def _pair_frame(d: Diagram, cid: int, pos_a: tuple[int, int]) -> int:
    """Frame of a virtual crossing read with the strand at pos_a named first."""
    rec = d.crossings[cid]
    return rec.sign if _virtual_first(d, cid) == pos_a else -rec.sign


def _poke_deletions(d: Diagram, kind: str):
    want_virtual = kind == "VR2del"
    pairs = _gap_pairs(d)
    by_set: dict[frozenset, list] = {}
    for ci, g, p, q in pairs:
        by_set.setdefault(frozenset((p.crossing, q.crossing)), []).append((ci, g, p, q))
    sites = []
    for key, locs in by_set.items():
        if len(key) != 2:
            continue
        cids = sorted(key)
        if any(d.crossings[c].virtual != want_virtual for c in cids):
            continue
        for (ci1, g1, p1, q1), (ci2, g2, p2, q2) in permutations(locs, 2):
            if (ci1, g1) >= (ci2, g2):
                continue
            slots1 = {(ci1, g1), (ci1, (g1 + 1) % len(d.components[ci1]))}
            slots2 = {(ci2, g2), (ci2, (g2 + 1) % len(d.components[ci2]))}
            if slots1 & slots2:
                continue
            if want_virtual:
                f1 = _pair_frame(d, cids[0], _passage_pos(d, ci1, g1, cids[0]))
                f2 = _pair_frame(d, cids[1], _passage_pos(d, ci1, g1, cids[1]))
                if f1 != -f2:
                    continue
            else:
                roles1 = {p1.role, q1.role}
                roles2 = {p2.role, q2.role}
                if not (
                    (roles1 == {Role.OVER} and roles2 == {Role.UNDER})
                    or (roles1 == {Role.UNDER} and roles2 == {Role.OVER})
                ):
                    continue
                if d.crossings[cids[0]].sign != -d.crossings[cids[1]].sign:
                    continue
            sites.append(MoveSite(kind, (), ((ci1, g1), (ci2, g2))))
    return sites


def _passage_pos(d: Diagram, ci: int, g: int, cid: int) -> tuple[int, int]:
    L = len(d.components[ci])
    for i in (g, (g + 1) % L):
        if d.components[ci][i].crossing == cid:
            return (ci, i)
    raise StaleSite(f"crossing {cid} not at gap ({ci}, {g})")


def _apply_poke_deletion(d: Diagram, site: MoveSite) -> Diagram:
    (ci1, g1), (ci2, g2) = site.locus
    try:
        L1 = len(d.components[ci1])
        L2 = len(d.components[ci2])
        ps = [
            (ci1, g1),
            (ci1, (g1 + 1) % L1),
            (ci2, g2),
            (ci2, (g2 + 1) % L2),
        ]
        cids = {d.components[ci][i].crossing for ci, i in ps}
    except IndexError:
        raise StaleSite("poke deletion locus out of range") from None
    if len({(ci, i) for ci, i in ps}) != 4 or len(cids) != 2:
        raise StaleSite("the recorded gaps no longer hold a cancelling pair")
    components = [list(c) for c in d.components]
    by_comp: dict[int, list[int]] = {}
    for ci, i in ps:
        by_comp.setdefault(ci, []).append(i)
    for ci, idxs in by_comp.items():
        for i in sorted(set(idxs), reverse=True):
            del components[ci][i]
    crossings = {k: v for k, v in d.crossings.items() if k not in cids}
    out = Diagram(tuple(tuple(c) for c in components), crossings)
    out.validate()
    return out


# -- triangle sites ----------------------------------------------------------


def _triangles(d: Diagram):
    pairs = _gap_pairs(d)
    by_crossing: dict[int, list[int]] = {}
    for k, (ci, g, p, q) in enumerate(pairs):
        by_crossing.setdefault(p.crossing, []).append(k)
        by_crossing.setdefault(q.crossing, []).append(k)
    found = set()
    out = []
    for k1, (ci1, g1, p1, q1) in enumerate(pairs):
        a, b = p1.crossing, q1.crossing
        for k2 in by_crossing.get(a, ()):
            if k2 == k1:
                continue
            ci2, g2, p2, q2 = pairs[k2]
            cset2 = {p2.crossing, q2.crossing}
            (c,) = cset2 - {a} if len(cset2 - {a}) == 1 else (None,)
            if c is None or c == b:
                continue
            for k3 in by_crossing.get(b, ()):
                ci3, g3, p3, q3 = pairs[k3]
                if {p3.crossing, q3.crossing} != {b, c}:
                    continue
                trio = tuple(sorted((k1, k2, k3)))
                if trio in found:
                    continue
                slots = set()
                ok = True
                for kk in trio:
                    ci, g, _, _ = pairs[kk]
                    L = len(d.components[ci])
                    s = {(ci, g), (ci, (g + 1) % L)}
                    if slots & s:
                        ok = False
                        break
                    slots |= s
                if ok:
                    found.add(trio)
                    out.append(tuple(pairs[kk] for kk in trio))
    return out


def _match_triangle(d: Diagram, trio, families):
    """Yield (family, template index, strand assignment) for every way the
    three bound gaps fit a slide template of one of the families."""
    crossings = set()
    for ci, g, p, q in trio:
        crossings |= {p.crossing, q.crossing}
    cids = sorted(crossings)
    if len(cids) != 3:
        return
    gap_of_pair = {}
    for rec in trio:
        ci, g, p, q = rec
        gap_of_pair[frozenset((p.crossing, q.crossing))] = rec
    for perm in permutations(cids):
        label = dict(zip(("x", "y", "z"), perm))
        unlabel = {cid: lbl for lbl, cid in label.items()}
        strand_pair = {}
        for s in _STRANDS:
            want = frozenset(label[c] for c in ("x", "y", "z") if s in _PAIR_OF[c])
            rec = gap_of_pair.get(want)
            if rec is None:
                break
            strand_pair[s] = rec
        if len(strand_pair) != 3:
            continue
        orders = []
        roles = []
        virt = set()
        pos_of: dict[tuple[str, str], tuple[int, int]] = {}
        for s in _STRANDS:
            ci, g, p, q = strand_pair[s]
            L = len(d.components[ci])
            l1, l2 = unlabel[p.crossing], unlabel[q.crossing]
            orders.append((l1, l2))
            roles.append((s, l1, p.role.value))
            roles.append((s, l2, q.role.value))
            pos_of[(s, l1)] = (ci, g)
            pos_of[(s, l2)] = (ci, (g + 1) % L)
        for c in ("x", "y", "z"):
            if d.crossings[label[c]].virtual:
                virt.add(c)
        key = (tuple(orders), tuple(sorted(roles)), frozenset(virt))
        role_of = {(s, c): r for s, c, r in roles}
        for fam, ti, frames in _TEMPLATE_INDEX.get(key, ()):
            if fam not in families:
                continue
            ok = True
            for c in ("x", "y", "z"):
                cid = label[c]
                rec2 = d.crossings[cid]
                s1, s2 = _PAIR_OF[c]
                f = frames[c]
                if rec2.virtual:
                    first = min(pos_of[(s1, c)], pos_of[(s2, c)])
                    want = f if first == pos_of[(s1, c)] else -f
                else:
                    want = f if role_of[(s1, c)] == "O" else -f
                if rec2.sign != want:
                    ok = False
                    break
            if ok:
                yield fam, ti, perm


def _triangle_faces(d: Diagram) -> set[frozenset]:
    """Edge sets of the 3-sided faces.  A slide is only geometric when its
    three bound edges border a common empty triangle of the embedding; the
    role and sign patterns alone cannot see strands threaded through the
    corner vertices."""
    out = set()
    for cycle in faces(d):
        if len(cycle) == 3:
            edges = frozenset(dart[:2] for dart in cycle)
            if len(edges) == 3:
                out.add(edges)
    return out


def _triangle_sites(d: Diagram, kinds) -> dict[str, list[MoveSite]]:
    out: dict[str, list[MoveSite]] = {k: [] for k in kinds}
    if not kinds:
        return out
    facial = _triangle_faces(d)
    for trio in _triangles(d):
        if frozenset((ci, g) for ci, g, _, _ in trio) not in facial:
            continue
        locus = tuple(sorted((ci, g) for ci, g, _, _ in trio))
        seen_families = set()
        for fam, ti, perm in _match_triangle(d, trio, kinds):
            if fam in seen_families:
                continue  # one slide per triangle; extra matches are symmetries
            seen_families.add(fam)
            out[fam].append(MoveSite(fam, (ti, perm), locus))
    return out


def _apply_triangle(d: Diagram, site: MoveSite) -> Diagram:
    trio = []
    for ci, g in site.locus:
        if ci >= len(d.components) or g >= len(d.components[ci]):
            raise StaleSite("triangle locus out of range")
        comp = d.components[ci]
        L = len(comp)
        trio.append((ci, g, comp[g], comp[(g + 1) % L]))
    ti, perm = site.variant
    matched = any(
        (fam, mti, mperm) == (site.kind, ti, tuple(perm))
        for fam, mti, mperm in _match_triangle(d, tuple(trio), {site.kind})
    )
    if not matched:
        raise StaleSite("the recorded gaps no longer match the slide template")
    if frozenset((ci, g) for ci, g, _, _ in trio) not in _triangle_faces(d):
        raise StaleSite("the recorded gaps no longer border a common triangle face")
    components = [list(c) for c in d.components]
    moved: dict[tuple[int, int], tuple[int, int]] = {}
    for ci, g, _, _ in trio:
        L = len(components[ci])
        h = (g + 1) % L
        components[ci][g], components[ci][h] = components[ci][h], components[ci][g]
        moved[(ci, g)] = (ci, h)
        moved[(ci, h)] = (ci, g)
    # Swapping the wrap-around gap of a component moves a passage between the
    # ends of the linear order, which can flip which passage of a virtual
    # crossing counts as first; the stored sign must follow.
    crossings = dict(d.crossings)
    seen: set[int] = set()
    for ci, g, p, q in trio:
        for cid in (p.crossing, q.crossing):
            if cid in seen or not crossings[cid].virtual:
                continue
            seen.add(cid)
            old = d.positions_of(cid)
            new = sorted(moved.get(pos, pos) for pos in old)
            if moved.get(old[0], old[0]) != new[0]:
                rec = crossings[cid]
                crossings[cid] = CrossingRecord(cid, True, -rec.sign)
    out = Diagram(tuple(tuple(c) for c in components), crossings)
    out.validate()
    return out


# -- public API ---------------------------------------------------------------


def find_moves(d: Diagram, kinds=None, size_cap: int | None = None) -> list[MoveSite]:
    """Every applicable rewriting site of the requested kinds.

    Insertion kinds are suppressed once the diagram has `size_cap` crossings."""
    kinds = set(MOVE_KINDS if kinds is None else kinds)
    unknown = kinds - set(MOVE_KINDS)
    if unknown:
        raise ValidationError(f"unknown move kinds: {sorted(unknown)}")
    cap = size_cap_from_env() if size_cap is None else size_cap
    allow_ins = len(d.crossings) < cap
    triangle_kinds = kinds & {"R3", "VR3", "VR4", "FU"}
    triangle_found = _triangle_sites(d, triangle_kinds) if triangle_kinds else {}
    sites: list[MoveSite] = []
    for kind in MOVE_KINDS:
        if kind not in kinds:
            continue
        if kind in ("R1+ins", "R1-ins", "VR1ins"):
            if allow_ins:
                sites.extend(_kink_insertions(d, kind))
        elif kind in ("R1del", "VR1del"):
            sites.extend(_kink_deletions(d, kind))
        elif kind in ("R2ins", "VR2ins"):
            if allow_ins:
                sites.extend(_poke_insertions(d, kind))
        elif kind in ("R2del", "VR2del"):
            sites.extend(_poke_deletions(d, kind))
        else:
            sites.extend(triangle_found[kind])
    return sites


def apply_move(d: Diagram, site: MoveSite) -> Diagram:
    if site.kind in ("R1+ins", "R1-ins", "VR1ins"):
        return _apply_kink_insertion(d, site)
    if site.kind in ("R1del", "VR1del"):
        return _apply_kink_deletion(d, site)
    if site.kind in ("R2ins", "VR2ins"):
        return _apply_poke(d, site)
    if site.kind in ("R2del", "VR2del"):
        return _apply_poke_deletion(d, site)
    if site.kind in ("R3", "VR3", "VR4", "FU"):
        return _apply_triangle(d, site)
    raise ValidationError(f"unknown move kind {site.kind!r}")


def random_walk(
    d: Diagram,
    steps: int,
    seed: int,
    kinds=None,
    size_cap: int | None = None,
) -> tuple[Diagram, list[MoveSite]]:
    """Apply `steps` uniformly chosen applicable rewrites, deterministically in
    `seed`.  Insertions stop being offered at the size cap."""
    rng = random.Random(seed)
    trace: list[MoveSite] = []
    cur = d
    for _ in range(steps):
        sites = find_moves(cur, kinds, size_cap)
        if not sites:
            break
        site = sites[rng.randrange(len(sites))]
        cur = apply_move(cur, site)
        trace.append(site)
    return cur, trace

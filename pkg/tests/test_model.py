import pytest
from hypothesis import given

from conftest import diagrams
from multivirt.errors import ParseError, ValidationError
from multivirt.model import (
    Granularity,
    Role,
    canonical_form,
    parse_vgc,
    rotate,
    segments,
    serialize_vgc,
)


class TestParse:
    def test_empty_component(self):
        d = parse_vgc(".")
        assert d.n_components() == 1
        assert d.components == ((),)

    def test_kink(self):
        d = parse_vgc("O1+ U1+")
        assert d.n_components() == 1
        assert d.n_real() == 1
        assert d.crossings[1].sign == 1

    def test_triple_passage_rejected(self):
        with pytest.raises(ValidationError):
            parse_vgc("O1+ ; U1+ O1+")

    def test_mismatched_signs_rejected(self):
        with pytest.raises(ValidationError):
            parse_vgc("O1+ U1-")

    def test_wrong_roles_rejected(self):
        with pytest.raises(ValidationError):
            parse_vgc("O1+ O1+")
        with pytest.raises(ValidationError):
            parse_vgc("V1+ U1+")

    def test_single_passage_rejected(self):
        with pytest.raises(ValidationError):
            parse_vgc("O1+")

    def test_malformed_tokens(self):
        for bad in ("X1+", "O0+", "O1", "O1*", "", "O1+ ;; U1+"):
            with pytest.raises((ParseError, ValidationError)):
                parse_vgc(bad)

    def test_multi_component(self):
        d = parse_vgc("O1+ ; U1+")
        assert d.n_components() == 2
        assert serialize_vgc(d) == "O1+ ; U1+"


class TestSerialize:
    def test_unknot(self):
        assert serialize_vgc(parse_vgc(".")) == "."

    def test_kink_roundtrip(self):
        assert serialize_vgc(parse_vgc("O1+ U1+")) == "O1+ U1+"

    @given(diagrams())
    def test_roundtrip(self, d):
        assert parse_vgc(serialize_vgc(d)) == d


class TestPassageMultiplicities:
    @given(diagrams())
    def test_role_counts(self, d):
        overs = sum(1 for _, _, p in d.passages() if p.role is Role.OVER)
        unders = sum(1 for _, _, p in d.passages() if p.role is Role.UNDER)
        throughs = sum(1 for _, _, p in d.passages() if p.role is Role.THROUGH)
        assert overs == unders == d.n_real()
        assert throughs == 2 * d.n_virtual()


class TestCanonicalForm:
    def test_rotation(self):
        assert canonical_form(parse_vgc("O1+ U1+")) == canonical_form(parse_vgc("U1+ O1+"))

    def test_relabel(self):
        assert canonical_form(parse_vgc("O7- U7-")) == canonical_form(parse_vgc("O1- U1-"))

    def test_sign_distinguishes(self):
        assert canonical_form(parse_vgc("O1+ U1+")) != canonical_form(parse_vgc("O1- U1-"))

    def test_trefoil_rotations(self, trefoil):
        want = canonical_form(trefoil)
        for k in range(6):
            assert canonical_form(rotate(trefoil, 0, k)) == want

    @given(diagrams(max_real=3, max_virtual=2, max_components=2))
    def test_rotation_invariance(self, d):
        want = canonical_form(d)
        for ci, comp in enumerate(d.components):
            for k in range(len(comp)):
                assert canonical_form(rotate(d, ci, k)) == want

    def test_virtual_sign_reorients_on_rotation(self):
        # Moving the basepoint past one passage of a virtual crossing flips
        # which passage comes first, so the stored sign must flip with it.
        d = parse_vgc("V1+ O2+ V1+ U2+")
        r = rotate(d, 0, 1)
        assert r.crossings[1].sign == -1
        assert parse_vgc(serialize_vgc(r)) == r
        assert canonical_form(r) == canonical_form(d)


class TestSegments:
    def test_kink_arcs(self):
        d = parse_vgc("O1+ U1+")
        assert len(segments(d, Granularity.ARC)) == 1

    def test_trefoil_arcs(self, trefoil):
        assert len(segments(trefoil, Granularity.ARC)) == 3

    def test_virtual_arcs(self):
        d = parse_vgc("O1+ U1+ V2+ V2+")
        assert len(segments(d, Granularity.VIRTUAL_ARC)) == 3

    def test_closed_piece(self):
        d = parse_vgc(".")
        segs = segments(d, Granularity.ARC)
        assert len(segs) == 1
        assert segs.pieces[0].start is None

    def test_over_only_component_is_closed_at_arc_level(self):
        d = parse_vgc("O1+ ; U1+")
        segs = segments(d, Granularity.ARC)
        assert len(segs) == 2  # one closed piece on the over circle, one arc
        assert segs.pieces[0].start is None

    @given(diagrams())
    def test_counts(self, d):
        for gran, cut_roles in (
            (Granularity.EDGE, {Role.OVER, Role.UNDER, Role.THROUGH}),
            (Granularity.ARC, {Role.UNDER}),
            (Granularity.VIRTUAL_ARC, {Role.UNDER, Role.THROUGH}),
        ):
            segs = segments(d, gran)
            want = 0
            for comp in d.components:
                cuts = sum(1 for p in comp if p.role in cut_roles)
                want += cuts if cuts else 1
            assert len(segs) == want

    @given(diagrams())
    def test_edge_refinement(self, d):
        """Every edge lies in exactly one arc and one virtual arc."""
        arcs = segments(d, Granularity.ARC)
        varcs = segments(d, Granularity.VIRTUAL_ARC)
        edges = segments(d, Granularity.EDGE)
        for piece in edges.pieces:
            gap = piece.start if piece.start is not None else None
            a = arcs.index_of_gap(piece.component, gap)
            v = varcs.index_of_gap(piece.component, gap)
            assert 0 <= a < len(arcs)
            assert 0 <= v < len(varcs)
            # the virtual arc is contained in the arc: its gaps are a subset
            assert set(varcs.pieces[v].gaps) <= set(arcs.pieces[a].gaps) or (
                arcs.pieces[a].start is None
            )

    @given(diagrams())
    def test_gaps_partition(self, d):
        for gran in Granularity:
            segs = segments(d, gran)
            seen = {}
            for k, piece in enumerate(segs.pieces):
                for g in piece.gaps:
                    key = (piece.component, g)
                    assert key not in seen
                    seen[key] = k
            total_gaps = sum(len(c) for c in d.components)
            assert len(seen) == total_gaps

from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multivirt import catalog
from multivirt.colorings import (
    Coloring,
    ColoringMode,
    build_system,
    count_colorings,
    enumerate_colorings,
    is_solution,
    psi,
    smith_normal_form,
)
from multivirt.constructions import multiplex
from multivirt.errors import BadModulus, InvalidColoring, MissingProvenance, TooLarge
from multivirt.model import parse_vgc


class TestBuildSystem:
    def test_kink_row_collapses(self):
        sys_ = build_system(parse_vgc("O1+ U1+"), ColoringMode.FOX)
        assert sys_.n_unknowns == 1
        assert sys_.rows == ((0,),)

    def test_virtual_rows(self):
        sys_ = build_system(parse_vgc("O1+ U1+ V2+ V2+"), ColoringMode.VIRTUAL_FOX)
        assert sys_.n_unknowns == 3
        assert len(sys_.rows) == 3  # one crossing rule + two negation rows

    def test_constrained_two_circles(self):
        l2, prov = multiplex(parse_vgc("."), 2)
        sys_ = build_system(l2, ColoringMode.CONSTRAINED, prov)
        assert sys_.n_unknowns == 2
        assert sys_.rows == ((1, 1),)

    def test_constrained_needs_provenance(self):
        l2, _ = multiplex(parse_vgc("O1+ U1+"), 2)
        with pytest.raises(MissingProvenance):
            build_system(l2, ColoringMode.CONSTRAINED)


class TestSmithNormalForm:
    def test_diagonal_merge(self):
        assert smith_normal_form([[2, 0], [0, 3]]).diagonal == (1, 6)

    def test_zero(self):
        s = smith_normal_form([[0]])
        assert s.rank == 0 and s.diagonal == (0,)

    def test_identity(self):
        assert smith_normal_form([[1, 0], [0, 1]]).diagonal == (1, 1)

    @given(
        st.lists(
            st.lists(st.integers(-6, 6), min_size=1, max_size=4),
            min_size=1,
            max_size=4,
        ).filter(lambda rows: len({len(r) for r in rows}) == 1),
        st.integers(1, 6),
    )
    @settings(max_examples=120, deadline=None)
    def test_divisor_chain_and_counts(self, rows, n):
        s = smith_normal_form(rows)
        positive = [d for d in s.diagonal if d]
        assert len(positive) == s.rank
        for a, b in zip(positive, positive[1:]):
            assert b % a == 0
        # solution count of rows . x = 0 (mod n) from the divisor chain
        k = len(rows[0])
        want = n ** (k - s.rank)
        for d in positive:
            want *= gcd(d, n)
        brute = 0
        for idx in range(n**k):
            x = [(idx // n**j) % n for j in range(k)]
            if all(sum(c * v for c, v in zip(r, x)) % n == 0 for r in rows):
                brute += 1
        assert brute == want


class TestCounts:
    def test_unknot_all_modes(self):
        d = parse_vgc(".")
        for mode in (ColoringMode.FOX, ColoringMode.VIRTUAL_FOX):
            sys_ = build_system(d, mode)
            for n in range(1, 8):
                assert count_colorings(sys_, n) == n

    def test_trefoil(self, trefoil):
        sys_ = build_system(trefoil, ColoringMode.FOX)
        assert count_colorings(sys_, 3) == 9
        assert count_colorings(sys_, 2) == 2

    def test_figure8_five_colorings(self):
        sys_ = build_system(catalog.diagram("figure8"), ColoringMode.FOX)
        assert count_colorings(sys_, 5) == 25

    def test_modulus_one(self, trefoil):
        sys_ = build_system(trefoil, ColoringMode.FOX)
        assert count_colorings(sys_, 1) == 1

    def test_bad_modulus(self, trefoil):
        with pytest.raises(BadModulus):
            count_colorings(build_system(trefoil, ColoringMode.FOX), 0)


class TestEnumeration:
    def test_kink(self):
        sys_ = build_system(parse_vgc("O1+ U1+"), ColoringMode.FOX)
        assert len(enumerate_colorings(sys_, 3)) == 3

    def test_trefoil_rainbow(self, trefoil):
        sys_ = build_system(trefoil, ColoringMode.FOX)
        sols = enumerate_colorings(sys_, 3)
        assert len(sols) == 9
        constant = [s for s in sols if len(set(s.values)) == 1]
        rainbow = [s for s in sols if len(set(s.values)) == 3]
        assert len(constant) == 3 and len(rainbow) == 6

    def test_too_large(self, trefoil):
        with pytest.raises(TooLarge):
            enumerate_colorings(build_system(trefoil, ColoringMode.FOX), 101, limit=10**6)

    @pytest.mark.parametrize("name", catalog.names())
    def test_oracle_matches_divisor_formula(self, name):
        d = catalog.diagram(name)
        systems = [build_system(d, m) for m in (ColoringMode.FOX, ColoringMode.VIRTUAL_FOX)]
        if d.n_components() == 1:
            l2, prov = multiplex(d, 2)
            systems.append(build_system(l2, ColoringMode.CONSTRAINED, prov))
        for sys_ in systems:
            for n in range(1, 7):
                if n**sys_.n_unknowns > 10**6:
                    continue
                assert len(enumerate_colorings(sys_, n)) == count_colorings(sys_, n)

    def test_affine_closure_of_fox_solutions(self, trefoil):
        sys_ = build_system(trefoil, ColoringMode.FOX)
        n = 5
        sols = {s.values for s in enumerate_colorings(sys_, n)}
        for v in sols:
            assert tuple((x + 1) % n for x in v) in sols
            assert tuple((-x) % n for x in v) in sols


class TestPairingMap:
    def test_crossing_free_circle(self):
        d = parse_vgc(".")
        l2, prov = multiplex(d, 2)
        col = Coloring((2,), 5)
        out = psi(d, col, l2, prov)
        assert sorted(out.values) == [2, 3]  # x and -x mod 5

    def test_zero_goes_to_zero(self, trefoil):
        l2, prov = multiplex(trefoil, 2)
        vsys = build_system(trefoil, ColoringMode.VIRTUAL_FOX)
        zero = Coloring((0,) * vsys.n_unknowns, 4)
        assert set(psi(trefoil, zero, l2, prov).values) == {0}

    def test_rejects_non_solutions(self, trefoil):
        l2, prov = multiplex(trefoil, 2)
        bad = Coloring((0, 0, 1), 2)  # mod 2 only constant colorings survive
        with pytest.raises(InvalidColoring):
            psi(trefoil, bad, l2, prov)

    @pytest.mark.parametrize("name", ["unknot", "kink", "trefoil", "vtrefoil"])
    def test_bijection(self, name):
        d = catalog.diagram(name)
        l2, prov = multiplex(d, 2)
        vsys = build_system(d, ColoringMode.VIRTUAL_FOX)
        csys = build_system(l2, ColoringMode.CONSTRAINED, prov)
        n = 3
        sols = enumerate_colorings(vsys, n)
        images = [psi(d, c, l2, prov, csys) for c in sols]
        assert all(is_solution(csys, im) for im in images)
        assert len({im.values for im in images}) == len(images)
        assert len(images) == count_colorings(csys, n)

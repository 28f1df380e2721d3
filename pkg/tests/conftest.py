import pytest
from hypothesis import strategies as st

from multivirt.model import CrossingRecord, Diagram, Passage, Role


@st.composite
def diagrams(draw, max_real=4, max_virtual=3, max_components=3):
    """Random valid diagrams: any distribution of the passage multiset over
    ordered components is a legal (possibly abstract) code."""
    n_real = draw(st.integers(0, max_real))
    n_virtual = draw(st.integers(0, max_virtual))
    passages = []
    crossings = {}
    for cid in range(1, n_real + 1):
        passages += [Passage(cid, Role.OVER), Passage(cid, Role.UNDER)]
        crossings[cid] = CrossingRecord(cid, False, draw(st.sampled_from((1, -1))))
    for cid in range(n_real + 1, n_real + n_virtual + 1):
        passages += [Passage(cid, Role.THROUGH), Passage(cid, Role.THROUGH)]
        crossings[cid] = CrossingRecord(cid, True, draw(st.sampled_from((1, -1))))
    passages = draw(st.permutations(passages))
    n_comps = draw(st.integers(1, max_components))
    cuts = sorted(
        draw(
            st.lists(
                st.integers(0, len(passages)),
                min_size=n_comps - 1,
                max_size=n_comps - 1,
            )
        )
    )
    bounds = [0] + cuts + [len(passages)]
    components = tuple(
        tuple(passages[a:b]) for a, b in zip(bounds, bounds[1:])
    )
    d = Diagram(components, crossings)
    d.validate()
    return d


@pytest.fixture
def trefoil():
    from multivirt.model import parse_vgc

    return parse_vgc("O1+ U2+ O3+ U1+ O2+ U3+")

from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from bledy import GraphError, InconsistentQuotientError, QuotientError
from conftest import spojne_grafy
from families import T_ball, cycle, path
from graph_core import disjoint_union
from measures import law
from quotient import (
    Judicial,
    LabeledQuotient,
    Lawless,
    LawlessReason,
    QuotientEdge,
    RayQuotient,
    decide_judicial,
    path_product_measure,
    potentials,
    quotient_of_finite,
    validate_consistency,
    vertex_transitive_judicial,
)

T34 = LabeledQuotient(('u', 'v'), (QuotientEdge('u', 'v', 3, 4),))
T324 = LabeledQuotient(('u', 'w', 'v'), (QuotientEdge('u', 'w', 3, 1), QuotientEdge('v', 'w', 4, 1)))


def _trojkat(m_ab: int) -> LabeledQuotient:
    return LabeledQuotient(('a', 'b', 'c'), (
        QuotientEdge('a', 'b', m_ab, 1), QuotientEdge('b', 'c', 1, 1), QuotientEdge('c', 'a', 1, 1),
    ))


@st.composite
def drzewiaste_ilorazy(draw, max_orbit: int = 8):
    """Iloraz-drzewo z losowymi etykietami – zawsze zgodny."""
    n = draw(st.integers(1, max_orbit))
    krawedzie = []
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        m_ab, m_ba = draw(st.integers(1, 4)), draw(st.integers(1, 4))
        krawedzie.append(QuotientEdge(f'q{u}', f'q{v}', m_ab, m_ba) if draw(st.booleans())
                         else QuotientEdge(f'q{v}', f'q{u}', m_ba, m_ab))
    return LabeledQuotient(tuple(f'q{i}' for i in range(n)), tuple(krawedzie), delta=100)


# ============================================================
# WALIDACJA
# ============================================================

@pytest.mark.parametrize('orbity, krawedzie', [
    ((), ()),
    (('a', 'a'), ()),
    (('a',), (QuotientEdge('a', 'b', 1, 1),)),
    (('a', 'b'), (QuotientEdge('a', 'b', 0, 1),)),
    (('a', 'b'), (QuotientEdge('a', 'b', 9, 1),)),
    (('a', 'b'), ()),
])
def test_zly_iloraz(orbity, krawedzie):
    with pytest.raises(QuotientError):
        LabeledQuotient(orbity, krawedzie, delta=8)


def test_stopien_orbity():
    assert T34.degree('u') == 3 and T34.degree('v') == 4
    petla = LabeledQuotient(('z',), (QuotientEdge('z', 'z', 2, 2),))
    assert petla.degree('z') == 2
    assert petla.loop_labels('z') == [(2, 2)]


# ============================================================
# ZGODNOŚĆ I MIARA ILOCZYNÓW
# ============================================================

def test_drzewo_zawsze_zgodne():
    assert validate_consistency(T34).passed
    assert validate_consistency(T324).passed


def test_trojkat_zgodny():
    werdykt = validate_consistency(_trojkat(1))
    assert werdykt.passed and werdykt.product == 1


def test_trojkat_niezgodny():
    werdykt = validate_consistency(_trojkat(2))
    assert not werdykt.passed
    assert werdykt.product == 2
    assert werdykt.cycle[0] == werdykt.cycle[-1]
    assert set(werdykt.cycle) == {'a', 'b', 'c'}


def test_petla_niezgodna():
    werdykt = validate_consistency(LabeledQuotient(('z',), (QuotientEdge('z', 'z', 2, 1),)))
    assert not werdykt.passed
    assert werdykt.cycle == ('z', 'z') and werdykt.product == 2


def test_miara_iloczynow_T34():
    assert path_product_measure(T34, 'u') == {'u': 1, 'v': Fraction(3, 4)}


def test_miara_iloczynow_T324():
    assert path_product_measure(T324, 'u') == {'u': 1, 'w': 3, 'v': Fraction(3, 4)}
    assert path_product_measure(T324, 'v', Fraction(3, 19)) == {
        'u': Fraction(4, 19), 'w': Fraction(12, 19), 'v': Fraction(3, 19),
    }


def test_miara_iloczynow_jednej_orbity():
    assert path_product_measure(LabeledQuotient(('z',), ()), 'z', Fraction(5)) == {'z': 5}


def test_miara_iloczynow_niezgodna():
    with pytest.raises(InconsistentQuotientError) as e:
        path_product_measure(_trojkat(2), 'a')
    assert e.value.iloczyn == 2
    assert len(e.value.cykl) == 4


def test_miara_iloczynow_zla_baza():
    with pytest.raises(QuotientError):
        path_product_measure(T34, 'x')
    with pytest.raises(QuotientError):
        path_product_measure(T34, 'u', Fraction(0))


def test_potencjaly_wzgledem_bazy():
    assert potentials(T34, 'v') == {'u': Fraction(4, 3), 'v': 1}


# ============================================================
# PRAWORZĄDNOŚĆ
# ============================================================

def test_praworzadnosc_T34():
    werdykt = decide_judicial(T34)
    assert isinstance(werdykt, Judicial)
    assert werdykt.measure == {'u': Fraction(4, 7), 'v': Fraction(3, 7)}


def test_praworzadnosc_T324():
    assert decide_judicial(T324).measure == {'u': Fraction(4, 19), 'v': Fraction(3, 19), 'w': Fraction(12, 19)}


def test_bezprawny_trojkat():
    werdykt = decide_judicial(_trojkat(3))
    assert isinstance(werdykt, Lawless)
    assert werdykt.reason is LawlessReason.INCONSISTENT_CYCLE
    assert werdykt.product == 3


def test_promien_S():
    werdykt = decide_judicial(RayQuotient((), ((1, 2),)))
    assert werdykt.judicial
    for i in range(1, 21):
        assert werdykt.measure[i] == Fraction(1, 2 ** i)
    assert RayQuotient((), ((1, 2),)).mass(20) == Fraction(1, 2 ** 20)


def test_promien_drzewa_z_rodzenstwem():
    werdykt = decide_judicial(RayQuotient((), ((2, 1),)))
    assert werdykt == Lawless(LawlessReason.DIVERGENT_MASS)
    with pytest.raises(QuotientError):
        RayQuotient((), ((2, 1),)).mass(1)


def test_promien_stalych_etykiet():
    assert decide_judicial(RayQuotient((), ((1, 1),))).reason is LawlessReason.DIVERGENT_MASS
    assert decide_judicial(RayQuotient((), ((1, 1),)), strict_reason=True).reason is LawlessReason.NULL_ONLY
    assert decide_judicial(RayQuotient((), ((2, 1),)), strict_reason=True).reason is LawlessReason.DIVERGENT_MASS


def test_promien_z_prefiksem():
    Q = RayQuotient(((3, 1),), ((1, 2),))
    miara = decide_judicial(Q).measure
    assert [miara[i] for i in (1, 2, 3)] == [Fraction(1, 7), Fraction(3, 7), Fraction(3, 14)]
    assert miara.tail_mass(2) == Fraction(3, 7)
    assert Q.degree(1) == 3 and Q.degree(2) == 2


def test_promien_okres_i_stopien():
    with pytest.raises(QuotientError):
        RayQuotient((), ((1, 2), (2, 1)))
    with pytest.raises(QuotientError):
        RayQuotient(((9, 1),), ((1, 2),), delta=8)
    with pytest.raises(QuotientError):
        RayQuotient((), ((1, 2),)).pair(0)


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), max_size=5),
       st.integers(1, 3), st.integers(2, 4))
def test_miara_promienia_spelnia_rownania(prefiks, f, dodatek):
    Q = RayQuotient(tuple(prefiks), ((f, f + dodatek - 1),), delta=20)
    miara = decide_judicial(Q).measure
    for i in range(1, 30):
        m_fwd, m_bwd = Q.pair(i)
        assert miara[i] * m_fwd == miara[i + 1] * m_bwd
        assert miara[i] > 0
    k = len(miara.initial)
    assert miara.tail_mass(k) == miara[k] * miara.ratio / (1 - miara.ratio)


def test_przechodnie_wierzcholkowo():
    assert vertex_transitive_judicial([(2, 2)])
    assert vertex_transitive_judicial([(3, 3)])
    assert not vertex_transitive_judicial([(2, 1)])
    assert vertex_transitive_judicial([])


@given(drzewiaste_ilorazy())
def test_miary_praworzadne_scisle_dodatnie(Q):
    werdykt = decide_judicial(Q)
    assert werdykt.judicial
    assert sum(werdykt.measure.values()) == 1
    assert all(m > 0 for m in werdykt.measure.values())
    for e in Q.edges:
        assert werdykt.measure[e.a] * e.m_ab == werdykt.measure[e.b] * e.m_ba


# ============================================================
# ILORAZY GRAFÓW SKOŃCZONYCH
# ============================================================

def _miara_z_ilorazu(X):
    Q = quotient_of_finite(X)
    return {Q.origin[o]: m for o, m in decide_judicial(Q).measure.items()}


def test_iloraz_P3():
    Q = quotient_of_finite(path(3))
    assert len(Q.orbits) == 2
    (e,) = Q.edges
    assert sorted([e.m_ab, e.m_ba]) == [1, 2]
    assert _miara_z_ilorazu(path(3)) == law(path(3)).mass


@pytest.mark.parametrize('n', [3, 6, 9])
def test_iloraz_cyklu(n):
    Q = quotient_of_finite(cycle(n))
    assert Q.orbits == ('o0',)
    assert Q.loop_labels('o0') == [(2, 2)]
    assert decide_judicial(Q).measure == {'o0': 1}


def test_iloraz_T2():
    assert sorted(_miara_z_ilorazu(T_ball(2)).values()) == [Fraction(1, 10), Fraction(3, 10), Fraction(3, 5)]


def test_iloraz_niespojnego():
    with pytest.raises(GraphError):
        quotient_of_finite(disjoint_union([(path(2), 2)]))


@given(spojne_grafy(max_n=12))
@settings(max_examples=300)
def test_iloraz_zgodny_z_prawem(X):
    Q = quotient_of_finite(X)
    assert validate_consistency(Q).passed
    assert _miara_z_ilorazu(X) == law(X).mass


def _iloczyn(etykiety, u, v, klucz) -> Fraction:
    e = etykiety[klucz]
    return Fraction(e.m_ab, e.m_ba) if (u, v) == (e.a, e.b) else Fraction(e.m_ba, e.m_ab)


@given(spojne_grafy(max_n=10))
@settings(max_examples=100)
def test_niezaleznosc_od_sciezki(X):
    Q = quotient_of_finite(X)
    if len(Q.orbits) > 8:
        return
    g = nx.MultiGraph()
    g.add_nodes_from(Q.orbits)
    etykiety = {}
    for i, e in enumerate(Q.edges):
        if not e.is_loop:
            g.add_edge(e.a, e.b, key=i)
            etykiety[i] = e
    baza = Q.orbits[0]
    miara = path_product_measure(Q, baza)
    for cel in Q.orbits[1:]:
        for sciezka in nx.all_simple_edge_paths(g, baza, cel):
            iloczyn = Fraction(1)
            for u, v, klucz in sciezka:
                iloczyn *= _iloczyn(etykiety, u, v, klucz)
            assert iloczyn == miara[cel]

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bledy import GraphError, MeasureError
from canonical import canonical_rooted
from conftest import dowolne_grafy, izomorficzne_ukorzenione, spojne_grafy
from families import (
    T_ball,
    barredLambda_ball,
    complete,
    counterexample_ball,
    counterexample_indices,
    cycle,
    joined_tree_balls,
    path,
    tree_plus_cycle,
)
from graph_core import ball, delete_subgraph, disjoint_union, r_neighborhood
from limits import (
    BallDistribution,
    LimitMeasure,
    average_degree,
    ball_agreement_radius,
    ball_distribution,
    convergence_report,
    dirac,
    finite_oracle,
    integrate_limit,
    limit_ball_distribution,
    mixture,
    mu_s,
    mu_s_bar,
    negligence_bound,
    negligence_delta,
    regular_tree_oracle,
    report_frame,
    s_bar_oracle,
    s_oracle,
    tv_distance,
    z_oracle,
)
from measures import constant_function, degree_function, indicator_function, law

DEG = degree_function(8)


# ============================================================
# WYROCZNIE
# ============================================================

def test_wyrocznia_Z():
    kula = z_oracle().ball_at(3)
    assert izomorficzne_ukorzenione(kula.graph, kula.root, path(7), 3)


def test_wyrocznia_S():
    assert s_oracle(1).ball_at(1).graph.n == 2
    assert s_oracle(3).ball_at(1).graph.n == 4
    # u_3: dwoje dzieci, czworo wnucząt, rodzic, rodzeństwo i dziadek
    assert s_oracle(3).ball_at(2).graph.n == 10


def test_wyrocznia_S_bar():
    kula = s_bar_oracle(1).ball_at(1)
    assert kula.graph.n == 3 and kula.graph.edge_count == 3
    assert s_bar_oracle(2).ball_at(1).graph.degree(0) == 4


def test_wyrocznia_drzewa_regularnego():
    assert canonical_rooted(regular_tree_oracle(3).ball_at(3)) == canonical_rooted(ball(T_ball(5), 0, 3))


def test_wyrocznia_skonczona():
    X = tree_plus_cycle(2)
    assert canonical_rooted(finite_oracle(X, 4).ball_at(2)) == canonical_rooted(ball(X, 4, 2))


@pytest.mark.parametrize('i', [1, 2, 5])
@pytest.mark.parametrize('r', [0, 1, 2, 3])
def test_kule_wyroczni_zstepne(i, r):
    mala, duza = s_bar_oracle(i).ball_at(r), s_bar_oracle(i).ball_at(r + 1)
    assert canonical_rooted(ball(duza.graph, duza.root, r)) == canonical_rooted(mala)


def test_wyrocznia_ujemny_promien():
    with pytest.raises(ValueError):
        z_oracle().ball_at(-1)


# ============================================================
# ROZKŁADY KUL
# ============================================================

def test_rozklad_cyklu():
    rozklad = ball_distribution(cycle(9), 2)
    assert list(rozklad.freq.values()) == [1]


@pytest.mark.parametrize('n', [3, 6, 10])
def test_rozklad_sciezki(n):
    rozklad = ball_distribution(path(n), 1)
    koniec = canonical_rooted(ball(path(n), 0, 1))
    assert rozklad.of(koniec) == Fraction(2, n)
    assert sum(rozklad.freq.values()) == 1


@pytest.mark.parametrize('n', [2, 4, 6])
def test_rozklad_T_n(n):
    X = T_ball(n)
    rozklad = ball_distribution(X, 1)
    assert len(rozklad.freq) == 2
    assert rozklad.of(canonical_rooted(ball(X, X.n - 1, 1))) == Fraction(3 * 2 ** (n - 1), X.n)


@given(dowolne_grafy(max_n=10), st.integers(0, 3))
@settings(max_examples=100)
def test_rozklad_to_obraz_prawa(X, r):
    psi = law(X)
    obraz = {}
    for k, masa in psi.mass.items():
        klucz = canonical_rooted(ball(X, psi.representative(k), r))
        obraz[klucz] = obraz.get(klucz, Fraction(0)) + masa
    assert ball_distribution(X, r).freq == dict(sorted(obraz.items()))


def test_rozklad_rownolegly_identyczny():
    X = T_ball(5)
    assert ball_distribution(X, 2, threads=3).freq == ball_distribution(X, 2, threads=1).freq


def test_rozklad_musi_sumowac_sie_do_jedynki():
    with pytest.raises(MeasureError):
        BallDistribution(1, {}, Fraction(1, 2))


# ============================================================
# MIARY GRANICZNE
# ============================================================

def test_dirac_Z():
    rozklad = limit_ball_distribution(dirac(z_oracle()), 4)
    assert list(rozklad.freq.values()) == [1] and rozklad.slack == 0


def test_mu_S_promien_jeden():
    rozklad = limit_ball_distribution(mu_s(), 1, Fraction(1, 1024))
    assert sorted(rozklad.freq.values()) == [Fraction(1, 2), Fraction(1, 2)]
    assert rozklad.slack == 0


def test_mu_S_zgodne_z_atomami():
    # atomy ≥ r + 2 mają wspólną r-kulę
    for r in range(4):
        klucz = canonical_rooted(s_oracle(r + 2).ball_at(r))
        assert all(canonical_rooted(s_oracle(i).ball_at(r)) == klucz for i in range(r + 2, r + 6))


def test_mieszanka():
    m = mixture([(Fraction(2, 3), mu_s()), (Fraction(1, 3), mu_s_bar())])
    rozklad = limit_ball_distribution(m, 2)
    s, s_bar = limit_ball_distribution(mu_s(), 2), limit_ball_distribution(mu_s_bar(), 2)
    for k in rozklad.freq:
        assert rozklad.of(k) == Fraction(2, 3) * s.of(k) + Fraction(1, 3) * s_bar.of(k)
    assert rozklad.slack == 0


def test_mieszanka_wagi():
    with pytest.raises(MeasureError):
        mixture([(Fraction(1, 2), mu_s()), (Fraction(1, 3), mu_s_bar())])


def test_obciecie_ogona():
    # miara bez stabilizacji kul: obcinamy po atomach do tolerancji
    m = LimitMeasure('geom', lambda i: (s_oracle(i), Fraction(1, 2 ** i)), None,
                     tail_bound=lambda k: Fraction(1, 2 ** k))
    rozklad = limit_ball_distribution(m, 1, Fraction(1, 16))
    assert rozklad.slack == Fraction(1, 16)
    assert sum(rozklad.freq.values()) == Fraction(15, 16)


def test_obciecie_bez_ograniczenia_ogona():
    m = LimitMeasure('bez ogona', lambda i: (s_oracle(i), Fraction(1, 2 ** i)), None)
    with pytest.raises(MeasureError):
        limit_ball_distribution(m, 1)


def test_calki_graniczne():
    assert integrate_limit(DEG, dirac(z_oracle())) == (2, 2)
    assert integrate_limit(DEG, mu_s()) == (2, 2)
    assert integrate_limit(DEG, mu_s_bar()) == (3, 3)
    assert integrate_limit(constant_function(Fraction(1)), mu_s()) == (1, 1)


def test_calka_przedzialowa():
    m = LimitMeasure('geom', lambda i: (s_oracle(i), Fraction(1, 2 ** i)), None,
                     tail_bound=lambda k: Fraction(1, 2 ** k))
    dolny, gorny = integrate_limit(DEG, m, Fraction(1, 64))
    assert dolny <= 2 <= gorny
    assert gorny - dolny <= 2 * 8 * Fraction(1, 64)


# ============================================================
# ZBIEŻNOŚĆ
# ============================================================

def test_tv_rozne_promienie():
    with pytest.raises(ValueError):
        tv_distance(ball_distribution(path(3), 1), ball_distribution(path(3), 2))


def test_tv_z_niedoborem():
    p = BallDistribution(1, {}, Fraction(1))
    assert tv_distance(p, ball_distribution(path(2), 1)) == 1


@pytest.mark.parametrize('rodzina, cel', [(T_ball, mu_s()), (barredLambda_ball, mu_s_bar())])
def test_zbieznosc_drzew(rodzina, cel):
    wiersze = convergence_report(rodzina, cel, 2, range(4, 13))
    odleglosci = [w.tv_distance for w in wiersze]
    assert all(a > b for a, b in zip(odleglosci, odleglosci[1:]))
    assert odleglosci[-1] <= Fraction(1, 100)


def test_zbieznosc_T_n_wzor():
    # od n ≥ 3 różnią się tylko częstości u_1, u_2 i reszty: TV = 3 / (2·|V(T_n)|)
    for w in convergence_report(T_ball, mu_s(), 2, range(3, 8)):
        assert w.tv_distance == Fraction(3, 2 * (3 * 2 ** w.n - 2))


def test_zbieznosc_drzewa_z_cyklem():
    wiersze = convergence_report(tree_plus_cycle, mu_s(), 1, range(3, 9))
    assert wiersze[-1].tv_distance < wiersze[0].tv_distance


def test_zbieznosc_cykli():
    wiersze = convergence_report(cycle, dirac(z_oracle()), 2, range(3, 9))
    assert [w.tv_distance == 0 for w in wiersze] == [False, False, False, True, True, True]


@pytest.mark.parametrize('n', [4, 7, 12])
def test_zbieznosc_sciezek(n):
    (w,) = convergence_report(path, dirac(z_oracle()), 1, [n])
    assert w.tv_distance == Fraction(2, n)


def test_tabela_raportu():
    df = report_frame(convergence_report(path, dirac(z_oracle()), 1, [4, 8]))
    assert list(df.columns) == ['n', 'radius', 'tv_distance', 'tv_przyblizenie']
    assert list(df['tv_distance']) == ['1/2', '1/4']
    assert df['tv_przyblizenie'].iloc[1] == pytest.approx(0.25)


def test_sklejone_drzewa_daja_rozne_granice():
    pierwsza = mixture([(Fraction(2, 3), mu_s()), (Fraction(1, 3), mu_s_bar())])
    druga = mixture([(Fraction(1, 3), mu_s()), (Fraction(2, 3), mu_s_bar())])
    sklejone = joined_tree_balls(10)
    tv_x = tv_distance(ball_distribution(sklejone.X, 2), limit_ball_distribution(pierwsza, 2))
    tv_y = tv_distance(ball_distribution(sklejone.Y, 2), limit_ball_distribution(druga, 2))
    assert tv_x <= Fraction(2, 100)
    assert tv_y <= Fraction(2, 100)
    assert tv_distance(limit_ball_distribution(pierwsza, 2), limit_ball_distribution(druga, 2)) >= Fraction(1, 5)


@given(spojne_grafy(max_n=10), spojne_grafy(max_n=10), st.integers(0, 2))
@settings(max_examples=100)
def test_tv_rosnie_z_promieniem(X, Y, r):
    mniejszy = tv_distance(ball_distribution(X, r), ball_distribution(Y, r))
    wiekszy = tv_distance(ball_distribution(X, r + 1), ball_distribution(Y, r + 1))
    assert mniejszy <= wiekszy


# ============================================================
# PODGRAFY POMIJALNE
# ============================================================

def test_pomijalnosc_pustego():
    assert negligence_delta(cycle(5), set(), DEG) == 0
    assert negligence_bound(cycle(5), set(), DEG) == 0


@pytest.mark.parametrize('n', [4, 10, 25])
def test_pomijalnosc_cyklu(n):
    assert negligence_delta(cycle(n), {0}, DEG) == Fraction(2, n - 1)


def test_pomijalnosc_korzenia_drzewa():
    X = T_ball(13)
    f = indicator_function(canonical_rooted(ball(X, X.n - 1, 2)), 2)
    assert negligence_delta(X, {0}, f) <= Fraction(1, 100)


@given(spojne_grafy(min_n=2, max_n=12), st.data(), st.integers(0, 2))
@settings(max_examples=100)
def test_pomijalnosc_ograniczona(X, data, r):
    G = data.draw(st.sets(st.integers(0, X.n - 1), min_size=1, max_size=X.n - 1))
    v = data.draw(st.integers(0, X.n - 1))
    for f in (DEG, indicator_function(canonical_rooted(ball(X, v, r)), r), constant_function(Fraction(1))):
        assert negligence_delta(X, G, f) <= negligence_bound(X, G, f)


def test_promien_zgodnosci():
    P = path(12)
    assert ball_agreement_radius(P, {0}, 6) == 5
    assert ball_agreement_radius(P, {0}, 1) == 0
    assert ball_agreement_radius(P, set(), 3) == math.inf
    with pytest.raises(GraphError):
        ball_agreement_radius(P, {0}, 0)


def test_promien_zgodnosci_inna_skladowa():
    X = disjoint_union([(path(3), 2)])
    assert ball_agreement_radius(X, {0}, 4) == math.inf


def test_kule_zgodne_po_usunieciu():
    X = path(12)
    r = ball_agreement_radius(X, {0}, 6)
    reszta = delete_subgraph(X, {0})
    assert canonical_rooted(ball(X, 6, r)) == canonical_rooted(ball(reszta, 5, r))
    assert 6 not in r_neighborhood(X, {0}, r)


# ============================================================
# ŚREDNI STOPIEŃ
# ============================================================

def test_sredni_stopien():
    assert average_degree(complete(6)) == 5
    assert average_degree(cycle(7)) == 2


@pytest.mark.parametrize('n', [2, 3])
def test_sredni_stopien_kontrprzykladu(n):
    k, l = counterexample_indices(n)
    assert average_degree(counterexample_ball(k - 1)) == 3
    assert average_degree(counterexample_ball(l - 1)) >= 4

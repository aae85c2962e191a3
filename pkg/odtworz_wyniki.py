#!/usr/bin/env python3
"""
Przeliczenie wyników referencyjnych: prawa T_n, miary ilorazów T_{3,4} i T_{3,2,4}, werdykty
promieni, własność grafów Cayleya, zbieżność do μ_S i μ_S̄, pomijalność, kontrprzykłady
średniego stopnia i kul sklejonych drzew. Wyniki trafiają do jednego skoroszytu XLSX.

Użycie:
    python odtworz_wyniki.py                       # wyniki.xlsx
    python odtworz_wyniki.py --xlsx raport.xlsx --n-max 10 --losowe 50 -v
"""

import argparse
import logging
import sys
from fractions import Fraction

import numpy as np
import pandas as pd

from canonical import birooted_classes, canonical_rooted, stabilizer_orbit_count
from config import ustawienie
from families import (
    T_ball,
    barredLambda_ball,
    cayley,
    counterexample_ball,
    counterexample_indices,
    cycle,
    cyclic_group,
    dihedral_group,
    joined_tree_balls,
    quaternion_group,
    symmetric_group,
)
from graph_core import Graph, ball, distances_from, is_connected
from limits import (
    average_degree,
    ball_distribution,
    convergence_report,
    limit_ball_distribution,
    mixture,
    mu_s,
    mu_s_bar,
    negligence_bound,
    negligence_delta,
    report_frame,
    tv_distance,
)
from measures import degree_function, indicator_function, law, solve_unimodular
from quotient import LabeledQuotient, QuotientEdge, RayQuotient, decide_judicial, quotient_of_finite
from raport_xlsx import Arkusz, generuj_xlsx

logger = logging.getLogger(__name__)


def _u(x: Fraction) -> str:
    return f'{x.numerator}/{x.denominator}'


# ============================================================
# SEKCJE
# ============================================================

def prawa_drzew(n_max: int) -> pd.DataFrame:
    """Ψ(T_n)[u_i] = 3·2^{n−i}/(3·2^n − 2), Ψ(T_n)[t] = 1/(3·2^n − 2)."""
    wiersze = []
    for n in range(1, n_max + 1):
        X = T_ball(n)
        psi = law(X)
        glebokosc = distances_from(X, [0])
        for k, masa in psi.mass.items():
            d = glebokosc[psi.representative(k)]
            i = 0 if d == 0 else n - d + 1
            oczekiwana = Fraction(1 if i == 0 else 3 * 2 ** (n - i), 3 * 2 ** n - 2)
            wiersze.append({'n': n, 'wierzcholek': 't' if i == 0 else f'u_{i}', 'masa': _u(masa),
                            'wzor': _u(oczekiwana), 'zgodne': masa == oczekiwana})
    return pd.DataFrame(wiersze)


def miary_ilorazow() -> pd.DataFrame:
    t34 = LabeledQuotient(('u', 'v'), (QuotientEdge('u', 'v', 3, 4),))
    t324 = LabeledQuotient(('u', 'w', 'v'), (QuotientEdge('u', 'w', 3, 1), QuotientEdge('v', 'w', 4, 1)))
    wiersze = []
    for nazwa, Q in (('T_{3,4}', t34), ('T_{3,2,4}', t324)):
        for o, m in decide_judicial(Q).measure.items():
            wiersze.append({'iloraz': nazwa, 'orbita': o, 'masa': _u(m)})
    return pd.DataFrame(wiersze)


def werdykty_promieni(ile: int = 20) -> pd.DataFrame:
    wiersze = []
    for nazwa, ogon in (('S', (1, 2)), ('Λ̄', (2, 1)), ('(1,1)', (1, 1))):
        werdykt = decide_judicial(RayQuotient((), (ogon,)))
        if werdykt.judicial:
            masy = ', '.join(_u(werdykt.measure.mass(i)) for i in range(1, ile + 1))
            wiersze.append({'promien': nazwa, 'werdykt': 'Judicial', 'szczegoly': masy})
        else:
            wiersze.append({'promien': nazwa, 'werdykt': 'Lawless', 'szczegoly': werdykt.reason.value})
    return pd.DataFrame(wiersze)


def wlasnosc_cayleya() -> pd.DataFrame:
    """|G_g(gs)| = |G_{gs} g| na każdej krawędzi."""
    grupy = [cyclic_group(n) for n in range(3, 13)] + [symmetric_group(3), dihedral_group(4), quaternion_group()]
    wiersze = []
    for grupa in grupy:
        X = cayley(grupa.table, grupa.generators)
        naruszenia = sum(
            1 for a, b in X.edges()
            if stabilizer_orbit_count(X, a, b) != stabilizer_orbit_count(X, b, a)
        )
        wiersze.append({'grupa': grupa.name, 'rzad': X.n, 'krawedzie': X.edge_count, 'naruszenia': naruszenia})
    return pd.DataFrame(wiersze)


def zbieznosc(n_max: int) -> tuple[pd.DataFrame, pd.DataFrame]:
    r = ustawienie('promien_domyslny')
    t = report_frame(convergence_report(T_ball, mu_s(), r, range(4, n_max + 1)))
    lam = report_frame(convergence_report(barredLambda_ball, mu_s_bar(), r, range(4, n_max + 1)))
    return t, lam


def pomijalnosc(n_max: int) -> pd.DataFrame:
    wiersze = []
    for n in range(4, n_max + 1, 2):
        Z = cycle(n)
        f = degree_function(Z.delta)
        wiersze.append({'graf': f'Z_{n}', 'f': 'deg', 'delta': _u(negligence_delta(Z, [0], f)),
                        'ograniczenie': _u(negligence_bound(Z, [0], f))})
    X = T_ball(n_max + 1)
    lisc = X.n - 1
    f = indicator_function(canonical_rooted(ball(X, lisc, 2)), 2)
    d = negligence_delta(X, [0], f)
    wiersze.append({'graf': f'T_{n_max + 1}', 'f': 'wskaźnik 2-kuli liścia', 'delta': _u(d),
                    'ograniczenie': _u(negligence_bound(X, [0], f))})
    return pd.DataFrame(wiersze)


def kontrprzyklad_stopnia(etapy: int = 3) -> pd.DataFrame:
    wiersze = []
    for n in range(2, etapy + 1):
        k, l = counterexample_indices(n)
        Y = counterexample_ball(k - 1)
        Z = counterexample_ball(l - 1)
        wiersze.append({'n': n, 'k_n': k, 'l_n': l, '|V(Y_n)|': Y.n, 'deg(Y_n)': _u(average_degree(Y)),
                        '|V(Z_n)|': Z.n, 'deg(Z_n)': _u(average_degree(Z))})
    return pd.DataFrame(wiersze)


def kule_sklejone(n: int) -> pd.DataFrame:
    s, s_bar = mu_s(), mu_s_bar()
    cel_x = limit_ball_distribution(mixture([(Fraction(2, 3), s), (Fraction(1, 3), s_bar)]), 2)
    cel_y = limit_ball_distribution(mixture([(Fraction(1, 3), s), (Fraction(2, 3), s_bar)]), 2)
    kule = joined_tree_balls(n)
    wartosci = [
        ('TV(X_n, ⅔μ_S + ⅓μ_S̄)', tv_distance(ball_distribution(kule.X, 2), cel_x)),
        ('TV(Y_n, ⅓μ_S + ⅔μ_S̄)', tv_distance(ball_distribution(kule.Y, 2), cel_y)),
        ('TV(cele)', tv_distance(cel_x, cel_y)),
    ]
    return pd.DataFrame({'wielkosc': [w for w, _ in wartosci], 'wartosc': [_u(v) for _, v in wartosci],
                         'przyblizenie': [float(v) for _, v in wartosci]})


def _losowy_spojny(rng: np.random.Generator, n: int, p: float) -> Graph:
    while True:
        krawedzie = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        try:
            X = Graph.from_edges(n, krawedzie)
        except ValueError:
            continue
        if is_connected(X):
            return X


def zgodnosc_wyroczni(ile: int) -> pd.DataFrame:
    """Prawo z orbit = rozwiązanie układu kryterium = miara iloczynów na ilorazie."""
    rng = np.random.default_rng(ustawienie('ziarno_losowe'))
    zgodne = 0
    for _ in range(ile):
        X = _losowy_spojny(rng, int(rng.integers(2, 13)), 0.35)
        psi = law(X)
        rozwiazanie = solve_unimodular(X).components[0].measure
        Q = quotient_of_finite(X)
        iloraz = {Q.origin[o]: m for o, m in decide_judicial(Q).measure.items()}
        zgodne += int(dict(psi.mass) == rozwiazanie == iloraz)
    return pd.DataFrame([{'grafy': ile, 'zgodne': zgodne, 'klasy BRcc (ostatni graf)': len(birooted_classes(X))}])


# ============================================================
# MAIN
# ============================================================

def main():
    parser = argparse.ArgumentParser(description='Odtworzenie wyników liczbowych do skoroszytu XLSX')
    parser.add_argument('--xlsx', default='wyniki.xlsx', help='Plik wynikowy')
    parser.add_argument('--n-max', type=int, default=12, help='Największe n w raportach zbieżności')
    parser.add_argument('--losowe', type=int, default=300, help='Liczba losowych grafów (zgodność wyroczni)')
    parser.add_argument('--verbose', '-v', action='store_true', help='Szczegółowe logowanie')
    args = parser.parse_args()

    # Logowanie
    log_level = logging.DEBUG if args.verbose else logging.INFO
    logging.basicConfig(
        level=log_level,
        format='%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
    )

    logger.info("Prawa T_n dla n ≤ 8")
    prawa = prawa_drzew(8)
    logger.info("Ilorazy i promienie")
    ilorazy = miary_ilorazow()
    promienie = werdykty_promieni()
    logger.info("Grafy Cayleya")
    cayley_df = wlasnosc_cayleya()
    logger.info("Zbieżność do μ_S i μ_S̄ (n ≤ %d)", args.n_max)
    zb_t, zb_lam = zbieznosc(args.n_max)
    logger.info("Pomijalność")
    pomijalne = pomijalnosc(args.n_max)
    logger.info("Kontrprzykłady")
    stopnie = kontrprzyklad_stopnia()
    sklejone = kule_sklejone(10)
    logger.info("Zgodność trzech wyroczni na %d losowych grafach", args.losowe)
    wyrocznie = zgodnosc_wyroczni(args.losowe)

    generuj_xlsx([
        Arkusz('Prawa', 'Prawa Ψ(T_n)', [('Masy orbit', prawa)]),
        Arkusz('Ilorazy', 'Miary ilorazów i werdykty promieni',
               [('Ilorazy skończone', ilorazy), ('Promienie', promienie)]),
        Arkusz('Cayley', '|G_g(gs)| = |G_{gs} g|', [('Grupy', cayley_df)]),
        Arkusz('Zbieżność', 'Odległość TV rozkładów 2-kul',
               [('T_n → μ_S', zb_t), ('Λ̄_n → μ_S̄', zb_lam)], ['tv_przyblizenie – wartość przybliżona']),
        Arkusz('Pomijalność', 'Usunięcie wierzchołka', [('Różnice całek', pomijalne)]),
        Arkusz('Kontrprzykłady', 'Średni stopień i kule sklejonych drzew',
               [('Średni stopień', stopnie), ('Kule X_10, Y_10', sklejone)]),
        Arkusz('Wyrocznie', 'Prawo = układ kryterium = iloraz', [('Losowe grafy', wyrocznie)]),
    ], args.xlsx)

    # Podsumowanie
    logger.info("=" * 60)
    logger.info("PODSUMOWANIE")
    logger.info("  Prawa T_n zgodne ze wzorem: %s", bool(prawa['zgodne'].all()))
    logger.info("  Naruszenia własności Cayleya: %d", int(cayley_df['naruszenia'].sum()))
    logger.info("  Zgodność wyroczni: %d / %d", int(wyrocznie['zgodne'][0]), args.losowe)
    logger.info("=" * 60)

    if not prawa['zgodne'].all() or cayley_df['naruszenia'].sum() or int(wyrocznie['zgodne'][0]) != args.losowe:
        sys.exit(1)


if __name__ == '__main__':
    main()

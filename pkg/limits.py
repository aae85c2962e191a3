"""
Zbieżność słaba: rozkłady typów kul, miary graniczne dane wyroczniami,
raporty zbieżności i twierdzenie o pomijalnych podgrafach w postaci liczbowej.

Zbieżność słabą sprawdzamy promień po promieniu: dla ustalonego r porównujemy
rozkład kanonicznych r-kul w grafie skończonym z rozkładem r-kul miary granicznej.

Użycie:
    from limits import ball_distribution, limit_ball_distribution, mu_s, tv_distance
    from families import T_ball
    p = ball_distribution(T_ball(8), 2)
    q = limit_ball_distribution(mu_s(), 2)
    print(tv_distance(p, q))
"""

import logging
import math
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

import pandas as pd

from bledy import GraphError, MeasureError
from canonical import RootedClass, canonical_rooted
from config import domyslna_delta, ustawienie
from graph_core import Graph, RootedGraph, ball, delete_subgraph, distances_from, r_neighborhood
from measures import LocalFunction

logger = logging.getLogger(__name__)


# ============================================================
# WYROCZNIE GRAFÓW UKORZENIONYCH
# ============================================================

@dataclass(frozen=True)
class RootedOracle:
    """Graf ukorzeniony (być może nieskończony) dany funkcją sąsiedztwa."""
    name: str
    root: Hashable
    neighbours: Callable[[Hashable], Iterable[Hashable]]
    delta: int

    def ball_at(self, r: int) -> RootedGraph:
        """Kula B(korzeń, r) jako skończony graf ukorzeniony (korzeń = 0)."""
        if r < 0:
            raise ValueError(f'Promień kuli musi być nieujemny, jest {r}')
        return _kula_wyroczni(self, r)


@lru_cache(maxsize=4096)
def _kula_wyroczni(wyrocznia: RootedOracle, r: int) -> RootedGraph:
    numer = {wyrocznia.root: 0}
    odleglosc = {wyrocznia.root: 0}
    kolejka = deque([wyrocznia.root])
    krawedzie = set()
    while kolejka:
        v = kolejka.popleft()
        for u in sorted(wyrocznia.neighbours(v)):
            if u not in numer:
                if odleglosc[v] == r:
                    continue
                numer[u] = len(numer)
                odleglosc[u] = odleglosc[v] + 1
                kolejka.append(u)
            # wszystkie wierzchołki brzegu są już ponumerowane, gdy brzeg jest przetwarzany
            krawedzie.add((min(numer[u], numer[v]), max(numer[u], numer[v])))
    return RootedGraph(Graph.from_edges(len(numer), sorted(krawedzie), wyrocznia.delta), 0)


def _sasiedzi_z(v: int) -> tuple[int, ...]:
    return v - 1, v + 1


def _sasiedzi_s(v: tuple[int, int]) -> list[tuple[int, int]]:
    # (poziom i ≥ 1, indeks k): rodzic na poziomie i+1, dzieci na i−1; poziom 1 to liście
    i, k = v
    wynik = [(i + 1, k // 2)]
    if i >= 2:
        wynik += [(i - 1, 2 * k), (i - 1, 2 * k + 1)]
    return wynik


def _sasiedzi_s_bar(v: tuple[int, int]) -> list[tuple[int, int]]:
    i, k = v
    return _sasiedzi_s(v) + [(i, k ^ 1)]


def z_oracle(delta: int | None = None) -> RootedOracle:
    return RootedOracle('Z', 0, _sasiedzi_z, delta or domyslna_delta())


def s_oracle(i: int, delta: int | None = None) -> RootedOracle:
    """[S, u_i]: granica [T_n, u_i]; u_1 jest liściem."""
    if i < 1:
        raise ValueError(f'Wierzchołki u_i numerujemy od 1, podano {i}')
    return RootedOracle(f'S[u_{i}]', (i, 0), _sasiedzi_s, delta or domyslna_delta())


def s_bar_oracle(i: int, delta: int | None = None) -> RootedOracle:
    """[S̄, ū_i]: S z krawędziami między rodzeństwem."""
    if i < 1:
        raise ValueError(f'Wierzchołki ū_i numerujemy od 1, podano {i}')
    return RootedOracle(f'S̄[ū_{i}]', (i, 0), _sasiedzi_s_bar, delta or domyslna_delta())


@dataclass(frozen=True)
class _SasiedziDrzewa:
    d: int

    def __call__(self, v: tuple[int, ...]) -> list[tuple[int, ...]]:
        if not v:
            return [(j,) for j in range(self.d)]
        return [v[:-1]] + [v + (j,) for j in range(self.d - 1)]


def regular_tree_oracle(d: int, delta: int | None = None) -> RootedOracle:
    """d-regularne drzewo nieskończone; wierzchołek = ścieżka od korzenia."""
    if d < 1:
        raise ValueError(f'Stopień drzewa musi być dodatni, jest {d}')
    return RootedOracle(f'T{d}', (), _SasiedziDrzewa(d), delta or max(d, domyslna_delta()))


@dataclass(frozen=True)
class _SasiedziSkonczone:
    graph: Graph

    def __call__(self, v: int) -> tuple[int, ...]:
        return self.graph.adjacency[v]


def finite_oracle(X: Graph, x: int) -> RootedOracle:
    return RootedOracle(f'skończony[{x}]', x, _SasiedziSkonczone(X), X.delta)


# ============================================================
# MIARY GRANICZNE
# ============================================================

@dataclass(frozen=True, eq=False)
class LimitMeasure:
    """Miara atomowa na Gr: atom(i) = (wyrocznia, masa) dla i = 1, 2, ….

    tail_bound(k) ogranicza masę atomów o numerach > k. stable_from(r), jeśli
    podane, to numer, od którego wszystkie atomy mają tę samą r-kulę.
    """
    name: str
    atom: Callable[[int], tuple[RootedOracle, Fraction]]
    count: int | None                       # None – nieskończenie wiele atomów
    tail_bound: Callable[[int], Fraction] | None = None
    stable_from: Callable[[int], int] | None = None

    def atoms(self, k: int) -> list[tuple[RootedOracle, Fraction]]:
        if self.count is not None:
            k = min(k, self.count)
        return [self.atom(i) for i in range(1, k + 1)]


@dataclass(frozen=True, eq=False)
class Mixture:
    """Kombinacja wypukła miar granicznych."""
    components: tuple[tuple[Fraction, LimitMeasure], ...]

    def __post_init__(self):
        wagi = [Fraction(w) for w, _ in self.components]
        if not wagi or any(w < 0 for w in wagi) or sum(wagi) != 1:
            raise MeasureError(f'Wagi mieszanki {wagi} nie tworzą kombinacji wypukłej')
        object.__setattr__(self, 'components', tuple((Fraction(w), m) for w, m in self.components))

    @property
    def name(self) -> str:
        return ' + '.join(f'{w}·{m.name}' for w, m in self.components)


def dirac(wyrocznia: RootedOracle) -> LimitMeasure:
    return LimitMeasure(f'δ[{wyrocznia.name}]', lambda i: (wyrocznia, Fraction(1)), 1,
                        tail_bound=lambda k: Fraction(0 if k >= 1 else 1))


def _dwojkowe_ogony(k: int) -> Fraction:
    return Fraction(1, 2 ** k)


def _od_r_plus_2(r: int) -> int:
    return r + 2


def mu_s(delta: int | None = None) -> LimitMeasure:
    """μ_S[S, u_i] = 2^{-i}."""
    return LimitMeasure('μ_S', lambda i: (s_oracle(i, delta), Fraction(1, 2 ** i)), None,
                        tail_bound=_dwojkowe_ogony, stable_from=_od_r_plus_2)


def mu_s_bar(delta: int | None = None) -> LimitMeasure:
    """μ_S̄[S̄, ū_i] = 2^{-i}."""
    return LimitMeasure('μ_S̄', lambda i: (s_bar_oracle(i, delta), Fraction(1, 2 ** i)), None,
                        tail_bound=_dwojkowe_ogony, stable_from=_od_r_plus_2)


def mixture(components: Sequence[tuple[Fraction, LimitMeasure]]) -> Mixture:
    return Mixture(tuple(components))


# ============================================================
# ROZKŁADY KUL
# ============================================================

@dataclass(frozen=True, eq=False)
class BallDistribution:
    """Częstości kanonicznych r-kul; `slack` to masa nieprzypisana (obcięty ogon)."""
    radius: int
    freq: dict[RootedClass, Fraction]
    slack: Fraction = Fraction(0)

    def __post_init__(self):
        suma = sum(self.freq.values(), Fraction(0)) + self.slack
        if suma != 1:
            raise MeasureError(f'Częstości kul sumują się do {suma}, a powinny do 1')
        object.__setattr__(self, 'freq', dict(sorted(self.freq.items())))

    def of(self, klasa: RootedClass) -> Fraction:
        return self.freq.get(klasa, Fraction(0))


def _klucze_kul(X: Graph, r: int, wierzcholki: Sequence[int], limit_wezlow: int) -> list[bytes]:
    return [canonical_rooted(ball(X, v, r), limit_wezlow).key for v in wierzcholki]


def ball_distribution(X: Graph, r: int, threads: int | None = None,
                      limit_wezlow: int | None = None) -> BallDistribution:
    """freq[klucz] = #{x : r-kula x ma ten klucz} / |V(X)|."""
    threads = threads or ustawienie('watki')
    limit_wezlow = limit_wezlow or ustawienie('limit_wezlow')
    if threads <= 1 or X.n < 2 * threads:
        klucze = _klucze_kul(X, r, list(X.vertices()), limit_wezlow)
    else:
        rozmiar = -(-X.n // threads)
        paczki = [list(range(s, min(s + rozmiar, X.n))) for s in range(0, X.n, rozmiar)]
        with ProcessPoolExecutor(max_workers=threads) as executor:
            wyniki = executor.map(_klucze_kul, [X] * len(paczki), [r] * len(paczki),
                                  paczki, [limit_wezlow] * len(paczki))
            klucze = [k for paczka in wyniki for k in paczka]
    licznik = Counter(klucze)
    logger.debug("Rozkład %d-kul grafu n=%d: %d typów (procesy: %d)", r, X.n, len(licznik), threads)
    return BallDistribution(r, {RootedClass(k): Fraction(c, X.n) for k, c in licznik.items()})


def _atomy(m: LimitMeasure, r: int, eps: Fraction) -> tuple[list[tuple[RootedOracle, Fraction]], Fraction]:
    """Atomy wystarczające dla r-kul oraz masa nieprzypisana (obcięty ogon)."""
    if m.count is not None:
        return m.atoms(m.count), Fraction(0)
    if m.tail_bound is None:
        raise MeasureError(f'Miara {m.name} nie ma ograniczenia ogona – nie da się jej obciąć')
    if m.stable_from is not None:
        s = m.stable_from(r)
        # atomy ≥ s mają identyczne r-kule: cała reszta masy trafia do typu atomu s
        return m.atoms(s - 1) + [(m.atom(s)[0], m.tail_bound(s - 1))], Fraction(0)
    k = 0
    while m.tail_bound(k) > eps:
        k += 1
    atomy = m.atoms(k)
    slack = 1 - sum((masa for _, masa in atomy), Fraction(0))
    if slack:
        logger.warning("Rozkład %s obcięty po %d atomach, nieprzypisana masa %s", m.name, k, slack)
    return atomy, slack


def _rozklad_miary(m: LimitMeasure, r: int, eps: Fraction) -> BallDistribution:
    atomy, slack = _atomy(m, r, eps)
    freq: dict[RootedClass, Fraction] = {}
    for wyrocznia, masa in atomy:
        klasa = canonical_rooted(wyrocznia.ball_at(r))
        freq[klasa] = freq.get(klasa, Fraction(0)) + masa
    return BallDistribution(r, freq, slack)


def _tolerancja(eps: Fraction | None) -> Fraction:
    eps = Fraction(eps) if eps is not None else ustawienie('epsilon_ogona')
    if eps <= 0:
        raise ValueError(f'Tolerancja ogona musi być dodatnia, jest {eps}')
    return eps


def limit_ball_distribution(m: LimitMeasure | Mixture, r: int,
                            eps: Fraction | None = None) -> BallDistribution:
    """Rozkład r-kul miary granicznej; slack ≤ eps (0 dla miar z zadanym stable_from)."""
    eps = _tolerancja(eps)
    if isinstance(m, LimitMeasure):
        return _rozklad_miary(m, r, eps)
    freq: dict[RootedClass, Fraction] = {}
    slack = Fraction(0)
    for w, skladnik in m.components:
        rozklad = _rozklad_miary(skladnik, r, eps)
        for k, c in rozklad.freq.items():
            freq[k] = freq.get(k, Fraction(0)) + w * c
        slack += w * rozklad.slack
    return BallDistribution(r, freq, slack)


def tv_distance(p: BallDistribution, q: BallDistribution) -> Fraction:
    """½Σ|p−q| powiększone o ½(slack_p + slack_q); dokładne, gdy oba rozkłady są pełne."""
    if p.radius != q.radius:
        raise ValueError(f'Rozkłady o różnych promieniach ({p.radius} i {q.radius})')
    klucze = set(p.freq) | set(q.freq)
    roznica = sum((abs(p.of(k) - q.of(k)) for k in klucze), Fraction(0))
    return (roznica + p.slack + q.slack) / 2


def integrate_limit(f: LocalFunction, m: LimitMeasure | Mixture,
                    eps: Fraction | None = None) -> tuple[Fraction, Fraction]:
    """Przedział [dolny, górny] zawierający ∫f dμ, szerokości ≤ 2·L·eps."""
    if isinstance(m, Mixture):
        dolny = gorny = Fraction(0)
        for w, skladnik in m.components:
            d, g = integrate_limit(f, skladnik, eps)
            dolny += w * d
            gorny += w * g
        return dolny, gorny
    atomy, slack = _atomy(m, f.radius, _tolerancja(eps))
    srodek = sum(
        (masa * f.value_on_ball(wyrocznia.ball_at(f.radius)) for wyrocznia, masa in atomy),
        Fraction(0),
    )
    return srodek - f.bound * slack, srodek + f.bound * slack


# ============================================================
# RAPORTY ZBIEŻNOŚCI
# ============================================================

@dataclass(frozen=True)
class ReportRow:
    n: int
    radius: int
    tv_distance: Fraction


def convergence_report(family: Callable[[int], Graph], target: LimitMeasure | Mixture, r: int,
                       n_range: Iterable[int], threads: int | None = None,
                       eps: Fraction | None = None) -> list[ReportRow]:
    """TV między rozkładem r-kul X_n a rozkładem miary docelowej, dla każdego n."""
    docelowy = limit_ball_distribution(target, r, eps)
    wiersze = []
    for n in n_range:
        odleglosc = tv_distance(ball_distribution(family(n), r, threads), docelowy)
        logger.info("n=%d, r=%d: TV = %s (≈%.6f)", n, r, odleglosc, float(odleglosc))
        wiersze.append(ReportRow(n, r, odleglosc))
    return wiersze


def report_frame(rows: Sequence[ReportRow]) -> pd.DataFrame:
    """Tabela n, radius, tv_distance ("num/den") i przybliżenie dziesiętne."""
    return pd.DataFrame({
        'n': [w.n for w in rows],
        'radius': [w.radius for w in rows],
        'tv_distance': [f'{w.tv_distance.numerator}/{w.tv_distance.denominator}' for w in rows],
        'tv_przyblizenie': [float(w.tv_distance) for w in rows],
    }, columns=['n', 'radius', 'tv_distance', 'tv_przyblizenie'])


# ============================================================
# PODGRAFY POMIJALNE
# ============================================================

def _srednia(f: LocalFunction, X: Graph) -> Fraction:
    # ∫f dΨ(X) = Σ_x f[X_x, x] / |V(X)|
    return sum((f(X, v) for v in X.vertices()), Fraction(0)) / X.n


def negligence_delta(X: Graph, G: Iterable[int], f: LocalFunction) -> Fraction:
    """|∫f dΨ(X) − ∫f dΨ(X \\ G)|."""
    usuwane = set(G)
    if not usuwane:
        return Fraction(0)
    reszta = delete_subgraph(X, usuwane)
    return abs(_srednia(f, X) - _srednia(f, reszta))


def negligence_bound(X: Graph, G: Iterable[int], f: LocalFunction) -> Fraction:
    """L·(3·|N_X(G, r)| + |G|) / |V(X)| – jawne ograniczenie negligence_delta."""
    usuwane = set(G)
    if not usuwane:
        return Fraction(0)
    otoczenie = r_neighborhood(X, usuwane, f.radius)
    return f.bound * (3 * len(otoczenie) + len(usuwane)) / X.n


def ball_agreement_radius(X: Graph, G: Iterable[int], x: int) -> int | float:
    """Największe r z x ∉ N_X(G, r); math.inf dla pustego G lub G w innej składowej."""
    usuwane = set(G)
    if x in usuwane:
        raise GraphError(f'Wierzchołek {x} należy do usuwanego zbioru G')
    if not usuwane:
        return math.inf
    d = distances_from(X, usuwane)[x]
    return math.inf if d is None else d - 1


def average_degree(X: Graph) -> Fraction:
    return Fraction(2 * X.edge_count, X.n)

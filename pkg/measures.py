"""
Miary podtrzymywane przez grafy skończone: prawo Ψ(X), całkowanie funkcji
lokalnych, weryfikacja unimodularności (z definicji i z kryterium) oraz
dokładny solwer układu równań kryterium.

Wszystkie masy to Fraction – bez liczb zmiennoprzecinkowych.

Użycie:
    from measures import law, integrate, degree_function, check_unimodular_definitional
    psi = law(g)
    srednia = integrate(degree_function(g.delta), psi)
    werdykt = check_unimodular_definitional(psi)
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from bledy import GraphError, InternalError, MeasureError, NullComponentError
from canonical import (
    BirootedClass,
    RootedClass,
    birooted_classes,
    canonical_birooted,
    canonical_rooted,
    canonical_unrooted,
    rooted_classes,
)
from graph_core import BirootedGraph, Graph, RootedGraph, ball, component, components, disjoint_union, is_connected

logger = logging.getLogger(__name__)


# ============================================================
# TYPY
# ============================================================

@dataclass(frozen=True, eq=False)
class SustainedMeasure:
    """Miara probabilistyczna na Rcc(host), klucze = klasy kanoniczne."""
    host: Graph
    mass: Mapping[RootedClass, Fraction]

    def __post_init__(self):
        klasy = rooted_classes(self.host)
        suma = Fraction(0)
        for klasa, masa in self.mass.items():
            if klasa not in klasy:
                raise MeasureError(f'Klasa {klasa.hex()[:16]}… spoza Rcc(host)')
            if not isinstance(masa, (int, Fraction)) or masa < 0:
                raise MeasureError(f'Masa {masa!r} nie jest nieujemną liczbą wymierną')
            suma += masa
        if suma != 1:
            raise MeasureError(f'Suma mas wynosi {suma}, a powinna 1')
        object.__setattr__(self, 'mass', {k: Fraction(self.mass[k]) for k in sorted(self.mass)})
        object.__setattr__(self, '_klasy', klasy)

    @classmethod
    def from_vertices(cls, host: Graph, masy: Mapping[int, Fraction]) -> 'SustainedMeasure':
        """Miara z mas przypisanych reprezentantom (dowolny wierzchołek klasy)."""
        wynik: dict[RootedClass, Fraction] = {}
        for v, masa in masy.items():
            klasa = canonical_rooted(RootedGraph(host, v))
            if klasa in wynik:
                raise MeasureError(f'Wierzchołek {v} wskazuje klasę podaną już wcześniej')
            wynik[klasa] = Fraction(masa)
        return cls(host, wynik)

    def of(self, klasa: RootedClass) -> Fraction:
        return self.mass.get(klasa, Fraction(0))

    def at_vertex(self, v: int) -> Fraction:
        return self.of(canonical_rooted(RootedGraph(self.host, v)))

    def representative(self, klasa: RootedClass) -> int:
        return self._klasy[klasa][0]

    @property
    def classes(self) -> dict[RootedClass, list[int]]:
        return self._klasy

    @property
    def strictly_sustained(self) -> bool:
        return all(self.of(k) > 0 for k in self._klasy)


def _stopien_korzenia(R: RootedGraph) -> Fraction:
    return Fraction(R.graph.degree(R.root))


@dataclass(frozen=True, eq=False)
class LocalFunction:
    """Funkcja ograniczona zależna tylko od [B(x, r), x]."""
    radius: int
    table: Mapping[RootedClass, Fraction] = field(default_factory=dict)
    default: Fraction = Fraction(0)
    bound: Fraction = Fraction(1)
    evaluator: Callable[[RootedGraph], Fraction] | None = None   # wartości liczone z kuli

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f'Promień funkcji lokalnej musi być nieujemny, jest {self.radius}')
        for wartosc in list(self.table.values()) + [self.default]:
            if abs(wartosc) > self.bound:
                raise ValueError(f'Wartość {wartosc} poza przedziałem [-{self.bound}, {self.bound}]')

    def value_on_ball(self, kula: RootedGraph) -> Fraction:
        if self.evaluator is not None:
            wartosc = Fraction(self.evaluator(kula))
            if abs(wartosc) > self.bound:
                raise ValueError(f'Funkcja lokalna zwróciła {wartosc} > ograniczenie {self.bound}')
            return wartosc
        return Fraction(self.table.get(canonical_rooted(kula), self.default))

    def __call__(self, X: Graph, x: int) -> Fraction:
        return self.value_on_ball(ball(X, x, self.radius))


@dataclass(frozen=True, eq=False)
class BirootedWeight:
    """Nieujemna funkcja na klasach kul dwukrotnie ukorzenionych promienia r ≥ 1."""
    radius: int
    table: Mapping[BirootedClass, Fraction]

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError('Kula dwukrotnie ukorzeniona wymaga promienia ≥ 1')
        if any(w < 0 for w in self.table.values()):
            raise ValueError('Waga dwukrotnie ukorzeniona musi być nieujemna')

    def __call__(self, X: Graph, x: int, y: int) -> Fraction:
        kula = ball(X, x, self.radius)
        # ball numeruje wierzchołki w kolejności BFS: korzeń, potem jego sąsiedzi rosnąco
        wspolkorzen = 1 + X.adjacency[x].index(y)
        klasa = canonical_birooted(BirootedGraph(kula.graph, kula.root, wspolkorzen))
        return Fraction(self.table.get(klasa, Fraction(0)))


def degree_function(delta: int) -> LocalFunction:
    """deg[X, x] = deg_X(x), ograniczenie Δ."""
    return LocalFunction(radius=1, bound=Fraction(delta), evaluator=_stopien_korzenia)


def indicator_function(klasa: RootedClass, radius: int) -> LocalFunction:
    return LocalFunction(radius=radius, table={klasa: Fraction(1)}, bound=Fraction(1))


def constant_function(c: Fraction) -> LocalFunction:
    c = Fraction(c)
    return LocalFunction(radius=0, default=c, bound=abs(c))


@dataclass(frozen=True)
class Witness:
    """Świadek porażki: klasa, reprezentatywna para i obie strony równania."""
    class_key: str           # hex klucza kanonicznego
    pair: tuple[int, int]
    left: Fraction
    right: Fraction


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Witness | None = None


# ============================================================
# PRAWO I CAŁKOWANIE
# ============================================================

def law(X: Graph) -> SustainedMeasure:
    """Ψ(X)[X_x, x] = |Aut(X)x| / |V(X)|."""
    klasy = rooted_classes(X)
    masy = {k: Fraction(len(orbita), X.n) for k, orbita in klasy.items()}
    logger.debug("Prawo grafu n=%d: %d klas", X.n, len(masy))
    return SustainedMeasure(X, masy)


def integrate(f: LocalFunction, m: SustainedMeasure) -> Fraction:
    """Σ po klasach f(kula reprezentanta)·masa."""
    return sum(
        (masa * f(m.host, m.representative(k)) for k, masa in m.mass.items() if masa),
        Fraction(0),
    )


def transport_sides(m: SustainedMeasure, w: BirootedWeight) -> tuple[Fraction, Fraction]:
    """Obie strony równania transportu masy dla wagi w: (wychodząca, przychodząca)."""
    wychodzi = przychodzi = Fraction(0)
    for k, masa in m.mass.items():
        if not masa:
            continue
        x = m.representative(k)
        for y in m.host.adjacency[x]:
            wychodzi += w(m.host, x, y) * masa
            przychodzi += w(m.host, y, x) * masa
    return wychodzi, przychodzi


# ============================================================
# UNIMODULARNOŚĆ
# ============================================================

def _klasa_pary(X: Graph) -> tuple[dict[tuple[int, int], BirootedClass], dict[BirootedClass, list[tuple[int, int]]]]:
    klasy = birooted_classes(X)
    return {p: k for k, pary in klasy.items() for p in pary}, klasy


def check_unimodular_definitional(m: SustainedMeasure) -> Verdict:
    """Równanie transportu masy dla funkcji charakterystycznych klas z BRcc(host)."""
    para_klasa, klasy = _klasa_pary(m.host)
    wychodzi = {k: Fraction(0) for k in klasy}
    przychodzi = {k: Fraction(0) for k in klasy}
    for k, masa in m.mass.items():
        if not masa:
            continue
        x = m.representative(k)
        for y in m.host.adjacency[x]:
            wychodzi[para_klasa[(x, y)]] += masa
            przychodzi[para_klasa[(y, x)]] += masa
    for k in klasy:
        if wychodzi[k] != przychodzi[k]:
            logger.info("Miara nie jest unimodularna: klasa %s…, %s ≠ %s",
                        k.hex()[:16], wychodzi[k], przychodzi[k])
            return Verdict(False, Witness(k.hex(), klasy[k][0], wychodzi[k], przychodzi[k]))
    return Verdict(True)


def check_unimodular_criterion(m: SustainedMeasure) -> Verdict:
    """|G_a b|·μ[a] = |G_b a|·μ[b] dla reprezentanta każdej klasy krawędzi (host spójny)."""
    if not is_connected(m.host):
        raise GraphError('Kryterium unimodularności wymaga spójnego grafu-nośnika')
    para_klasa, klasy = _klasa_pary(m.host)
    for k, pary in klasy.items():
        a, b = pary[0]
        g_a_b = sum(1 for p, q in pary if p == a)
        g_b_a = sum(1 for p, q in klasy[para_klasa[(b, a)]] if p == b)
        lewa = g_a_b * m.at_vertex(a)
        prawa = g_b_a * m.at_vertex(b)
        if lewa != prawa:
            return Verdict(False, Witness(k.hex(), (a, b), lewa, prawa))
    return Verdict(True)


def check_orbit_neighbourhood_criterion(m: SustainedMeasure) -> Verdict:
    """|Gb ∩ N(a)|·μ[a] = |Ga ∩ N(b)|·μ[b] dla sąsiednich a, b (host spójny)."""
    if not is_connected(m.host):
        raise GraphError('Kryterium orbitowe wymaga spójnego grafu-nośnika')
    orbita = {}
    for k, wierzcholki in m.classes.items():
        for v in wierzcholki:
            orbita[v] = k
    _, klasy = _klasa_pary(m.host)
    for k, pary in klasy.items():
        a, b = pary[0]
        lewa = sum(1 for y in m.host.adjacency[a] if orbita[y] == orbita[b]) * m.of(orbita[a])
        prawa = sum(1 for y in m.host.adjacency[b] if orbita[y] == orbita[a]) * m.of(orbita[b])
        if lewa != prawa:
            return Verdict(False, Witness(k.hex(), (a, b), lewa, prawa))
    return Verdict(True)


# ============================================================
# SOLWER DOKŁADNY
# ============================================================

def _postac_schodkowa(wiersze: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Eliminacja bez ułamków (Bareiss) do postaci schodkowej; zwraca kolumny wolne.

    Ostatnia kolumna to wyrazy wolne. Dzielenie przez poprzedni piwot jest dokładne.
    """
    m = [list(w) for w in wiersze]
    n_wierszy = len(m)
    n_kolumn = len(m[0]) - 1
    wolne = []
    r = 0
    poprzedni = 1
    for c in range(n_kolumn):
        piwot = next((i for i in range(r, n_wierszy) if m[i][c] != 0), None)
        if piwot is None:
            wolne.append(c)
            continue
        m[r], m[piwot] = m[piwot], m[r]
        for i in range(r + 1, n_wierszy):
            for j in range(c + 1, n_kolumn + 1):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // poprzedni
            m[i][c] = 0
        poprzedni = m[r][c]
        r += 1
    return m, wolne


def _rozwiaz(wiersze: list[list[int]]) -> list[Fraction]:
    """Jednoznaczne rozwiązanie układu [A | b]; InternalError gdy brak lub wiele rozwiązań."""
    m, wolne = _postac_schodkowa(wiersze)
    n_kolumn = len(m[0]) - 1
    if wolne:
        raise InternalError(f'Układ kryterium ma zmienne wolne {wolne} – rozwiązanie niejednoznaczne')
    for wiersz in m[n_kolumn:]:
        if wiersz[-1] != 0:
            raise InternalError('Układ kryterium sprzeczny')
    x = [Fraction(0)] * n_kolumn
    for r in range(n_kolumn - 1, -1, -1):
        s = Fraction(m[r][-1])
        for c in range(r + 1, n_kolumn):
            s -= m[r][c] * x[c]
        x[r] = s / m[r][r]
    return x


@dataclass(frozen=True, eq=False)
class ComponentSolution:
    """Rozwiązanie dla jednej klasy składowych X^k."""
    graph: Graph                                    # reprezentant X^k (przenumerowany)
    multiplicity: int                               # b_k – liczba kopii w X
    measure: dict[RootedClass, Fraction]            # Ψ(X^k) z równań kryterium
    equations: list[tuple[RootedClass, RootedClass, int, int]]  # |G_a b|·μ[a] = |G_b a|·μ[b]


@dataclass(frozen=True, eq=False)
class UnimodularSolution:
    """Sympleks Σ w_k Ψ(X^k), w_k ≥ 0, Σ w_k = 1 (jeden punkt dla spójnego X)."""
    host: Graph
    components: list[ComponentSolution]

    @property
    def unique(self) -> bool:
        return len(self.components) == 1


def _uklad_skladowej(X: Graph) -> tuple[dict[RootedClass, Fraction], list]:
    klasy = sorted(rooted_classes(X))
    indeks = {k: i for i, k in enumerate(klasy)}
    klasa_wierzcholka = {}
    for k, orbita in rooted_classes(X).items():
        for v in orbita:
            klasa_wierzcholka[v] = k
    para_klasa, dwuklasy = _klasa_pary(X)
    rownania = []
    wiersze = []
    for k, pary in dwuklasy.items():
        a, b = pary[0]
        g_a_b = sum(1 for p, _ in pary if p == a)
        g_b_a = sum(1 for p, _ in dwuklasy[para_klasa[(b, a)]] if p == b)
        ka, kb = klasa_wierzcholka[a], klasa_wierzcholka[b]
        wiersz = [0] * (len(klasy) + 1)
        wiersz[indeks[ka]] += g_a_b
        wiersz[indeks[kb]] -= g_b_a
        if any(wiersz) and wiersz not in wiersze:
            wiersze.append(wiersz)
            rownania.append((ka, kb, g_a_b, g_b_a))
    # normalizacja Σμ = 1 dopisana na końcu
    wiersze.append([1] * len(klasy) + [1])
    rozwiazanie = _rozwiaz(wiersze)
    if any(x <= 0 for x in rozwiazanie):
        raise InternalError('Miara unimodularna grafu spójnego nie jest ściśle dodatnia')
    return dict(zip(klasy, rozwiazanie)), rownania


def solve_unimodular(X: Graph) -> UnimodularSolution:
    """Miary unimodularne podtrzymywane przez X z równań kryterium."""
    grupy: dict[bytes, list[list[int]]] = {}
    for wierzcholki in components(X):
        skladowa = component(X, wierzcholki[0]).graph
        grupy.setdefault(canonical_unrooted(skladowa), []).append(wierzcholki)
    rozwiazania = []
    for klucz in sorted(grupy):
        kopie = grupy[klucz]
        skladowa = component(X, kopie[0][0]).graph
        miara, rownania = _uklad_skladowej(skladowa)
        rozwiazania.append(ComponentSolution(skladowa, len(kopie), miara, rownania))
    logger.info("Rozwiązano układ dla %d klas składowych (n=%d)", len(rozwiazania), X.n)
    return UnimodularSolution(X, rozwiazania)


def measure_for_weights(rozwiazanie: UnimodularSolution, wagi: Sequence[Fraction] | None = None) -> SustainedMeasure:
    """Σ w_k Ψ(X^k) na nośniku rozwiązania; bez wag – jedyny punkt (X spójny)."""
    if wagi is None:
        if not rozwiazanie.unique:
            raise MeasureError('Graf niespójny: podaj wagi składowych (sympleks)')
        wagi = [Fraction(1)]
    wagi = [Fraction(w) for w in wagi]
    if len(wagi) != len(rozwiazanie.components) or any(w < 0 for w in wagi) or sum(wagi) != 1:
        raise MeasureError(f'Wagi {wagi} nie leżą w sympleksie wymiaru {len(rozwiazanie.components)}')
    masy: dict[RootedClass, Fraction] = {}
    for w, skl in zip(wagi, rozwiazanie.components):
        for k, masa in skl.measure.items():
            masy[k] = masy.get(k, Fraction(0)) + w * masa
    return SustainedMeasure(rozwiazanie.host, masy)


def law_of_disjoint_union(parts: Sequence[tuple[Graph, int]]) -> SustainedMeasure:
    """Ψ(Σ b_k X^k) = Σ b_k|V(X^k)|/|V(X)| · Ψ(X^k) dla parami nieizomorficznych X^k."""
    klucze = set()
    for g, _ in parts:
        if not is_connected(g):
            raise GraphError('Składniki sumy rozłącznej muszą być spójne')
        klucz = canonical_unrooted(g)
        if klucz in klucze:
            raise GraphError('Powtórzony (izomorficzny) składnik – scal krotności')
        klucze.add(klucz)
    host = disjoint_union(parts)
    masy: dict[RootedClass, Fraction] = {}
    for g, b in parts:
        waga = Fraction(b * g.n, host.n)
        for k, orbita in rooted_classes(g).items():
            masy[k] = masy.get(k, Fraction(0)) + waga * Fraction(len(orbita), g.n)
    return SustainedMeasure(host, masy)


def restrict_to_component(m: SustainedMeasure, y: int) -> SustainedMeasure:
    """ν = μ·χ_{Rcc(Y)}/a dla składowej Y zawierającej wierzchołek y."""
    skladowa = component(m.host, y).graph
    klasy = rooted_classes(skladowa)
    a = sum((m.of(k) for k in klasy), Fraction(0))
    if a == 0:
        raise NullComponentError(f'Składowa wierzchołka {y} ma zerową masę')
    return SustainedMeasure(skladowa, {k: m.of(k) / a for k in klasy})

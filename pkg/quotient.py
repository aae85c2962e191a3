"""
Ilorazy orbit z etykietami |G_a b|: skończony opis grafów (także nieskończonych),
sprawdzanie zgodności cykli, miara iloczynów po ścieżce i rozstrzyganie,
czy graf jest „praworządny" (podtrzymuje miarę unimodularną).

Etykieta krawędzi ilorazu a–b to para (m_ab, m_ba) = (|G_a b|, |G_b a|).
Pętla (a, a) reprezentuje jedną G_a-orbitę sąsiadów z tej samej orbity;
jej wkład w stopień to m_ab.

Użycie:
    from quotient import LabeledQuotient, QuotientEdge, decide_judicial
    t34 = LabeledQuotient(('u', 'v'), (QuotientEdge('u', 'v', 3, 4),))
    werdykt = decide_judicial(t34)      # Judicial({'u': 4/7, 'v': 3/7})
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from bledy import GraphError, InconsistentQuotientError, QuotientError
from canonical import RootedClass, birooted_classes, rooted_classes
from config import domyslna_delta
from graph_core import Graph, is_connected

logger = logging.getLogger(__name__)


# ============================================================
# TYPY
# ============================================================

@dataclass(frozen=True)
class QuotientEdge:
    """Krawędź ilorazu z etykietami skierowanymi m(a→b), m(b→a)."""
    a: Hashable
    b: Hashable
    m_ab: int
    m_ba: int

    @property
    def is_loop(self) -> bool:
        return self.a == self.b


def _sprawdz_etykiete(m, opis: str):
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise QuotientError(f'Etykieta {opis} musi być dodatnią liczbą całkowitą, jest {m!r}')


@dataclass(frozen=True)
class LabeledQuotient:
    """Skończony iloraz orbit; krawędzie w kolejności podania (wyznacza drzewo rozpinające)."""
    orbits: tuple
    edges: tuple[QuotientEdge, ...]
    delta: int | None = None
    origin: Mapping[Hashable, RootedClass] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'orbits', tuple(self.orbits))
        object.__setattr__(self, 'edges', tuple(self.edges))
        if self.delta is None:
            object.__setattr__(self, 'delta', domyslna_delta())
        if not self.orbits:
            raise QuotientError('Iloraz bez orbit')
        if len(set(self.orbits)) != len(self.orbits):
            raise QuotientError('Powtórzone etykiety orbit')
        znane = set(self.orbits)
        stopnie = {o: 0 for o in self.orbits}
        for e in self.edges:
            if e.a not in znane or e.b not in znane:
                raise QuotientError(f'Krawędź {e.a!r}–{e.b!r} odwołuje się do nieznanej orbity')
            _sprawdz_etykiete(e.m_ab, f'm({e.a}→{e.b})')
            _sprawdz_etykiete(e.m_ba, f'm({e.b}→{e.a})')
            stopnie[e.a] += e.m_ab
            if not e.is_loop:
                stopnie[e.b] += e.m_ba
        for o, st in stopnie.items():
            if st > self.delta:
                raise QuotientError(f'Orbita {o!r} ma stopień {st} > Δ={self.delta}')
        if len(_osiagalne(self, self.orbits[0])) != len(self.orbits):
            raise QuotientError('Graf ilorazu nie jest spójny')

    def degree(self, orbita: Hashable) -> int:
        return sum(e.m_ab for e in self.edges if e.a == orbita) + \
            sum(e.m_ba for e in self.edges if e.b == orbita and not e.is_loop)

    def loop_labels(self, orbita: Hashable) -> list[tuple[int, int]]:
        return [(e.m_ab, e.m_ba) for e in self.edges if e.is_loop and e.a == orbita]


@dataclass(frozen=True)
class RayQuotient:
    """Iloraz-promień 1–2–3–…: skończony prefiks par (m(i→i+1), m(i+1→i)) i ogon okresowy.

    Obsługiwany jest wyłącznie ogon o okresie 1.
    """
    prefix: tuple[tuple[int, int], ...]
    periodic_tail: tuple[tuple[int, int], ...]
    delta: int | None = None

    def __post_init__(self):
        object.__setattr__(self, 'prefix', tuple(tuple(p) for p in self.prefix))
        object.__setattr__(self, 'periodic_tail', tuple(tuple(p) for p in self.periodic_tail))
        if self.delta is None:
            object.__setattr__(self, 'delta', domyslna_delta())
        if len(self.periodic_tail) != 1:
            raise QuotientError(
                f'Obsługiwany jest tylko ogon o okresie 1, podano okres {len(self.periodic_tail)}'
            )
        for i, para in enumerate(self.prefix + self.periodic_tail, start=1):
            if len(para) != 2:
                raise QuotientError(f'Para etykiet nr {i} ma {len(para)} elementów zamiast 2')
            _sprawdz_etykiete(para[0], f'm(i→i+1) w parze {i}')
            _sprawdz_etykiete(para[1], f'm(i+1→i) w parze {i}')
        # stopień i = m(i→i+1) + m(i→i−1); ogon stabilizuje się po pierwszym wierzchołku za prefiksem
        for i in range(1, len(self.prefix) + 3):
            if self.degree(i) > self.delta:
                raise QuotientError(f'Wierzchołek {i} promienia ma stopień {self.degree(i)} > Δ={self.delta}')

    @property
    def tail(self) -> tuple[int, int]:
        return self.periodic_tail[0]

    def pair(self, i: int) -> tuple[int, int]:
        """Etykiety krawędzi i–(i+1), i ≥ 1."""
        if i < 1:
            raise QuotientError(f'Wierzchołki promienia numerujemy od 1, podano {i}')
        return self.prefix[i - 1] if i <= len(self.prefix) else self.tail

    def degree(self, i: int) -> int:
        st = self.pair(i)[0]
        if i > 1:
            st += self.pair(i - 1)[1]
        return st

    def mass(self, i: int) -> Fraction:
        """μ[i] jedynej miary unimodularnej; QuotientError dla promienia bezprawnego."""
        werdykt = decide_judicial(self)
        if not werdykt.judicial:
            raise QuotientError(f'Promień jest bezprawny ({werdykt.reason.value}) – brak miary')
        return werdykt.measure.mass(i)


class LawlessReason(Enum):
    INCONSISTENT_CYCLE = 'InconsistentCycle'
    DIVERGENT_MASS = 'DivergentMass'
    NULL_ONLY = 'NullOnly'


@dataclass(frozen=True)
class RayMeasure:
    """Miara na wierzchołkach promienia: jawny prefiks, dalej ciąg geometryczny."""
    initial: tuple[Fraction, ...]    # μ[1..k+1]
    ratio: Fraction                  # μ[i+1]/μ[i] w ogonie, < 1

    def mass(self, i: int) -> Fraction:
        if i < 1:
            raise QuotientError(f'Wierzchołki promienia numerujemy od 1, podano {i}')
        if i <= len(self.initial):
            return self.initial[i - 1]
        return self.initial[-1] * self.ratio ** (i - len(self.initial))

    def __getitem__(self, i: int) -> Fraction:
        return self.mass(i)

    def tail_mass(self, k: int) -> Fraction:
        """Masa wierzchołków o numerach > k."""
        return 1 - sum((self.mass(i) for i in range(1, k + 1)), Fraction(0))


@dataclass(frozen=True)
class Judicial:
    measure: Mapping[Hashable, Fraction] | RayMeasure

    @property
    def judicial(self) -> bool:
        return True


@dataclass(frozen=True)
class Lawless:
    reason: LawlessReason
    cycle: tuple = ()
    product: Fraction | None = None

    @property
    def judicial(self) -> bool:
        return False


JudicialityVerdict = Judicial | Lawless


@dataclass(frozen=True)
class ConsistencyVerdict:
    passed: bool
    cycle: tuple = ()                # orbity cyklu, pierwsza = ostatnia
    product: Fraction = Fraction(1)


# ============================================================
# DRZEWO ROZPINAJĄCE I POTENCJAŁY
# ============================================================

def _sasiedztwo(Q: LabeledQuotient) -> dict:
    """orbita → [(sąsiednia orbita, m(orbita→sąsiad), m(sąsiad→orbita), nr krawędzi)]."""
    wynik = {o: [] for o in Q.orbits}
    for i, e in enumerate(Q.edges):
        if e.is_loop:
            continue
        wynik[e.a].append((e.b, e.m_ab, e.m_ba, i))
        wynik[e.b].append((e.a, e.m_ba, e.m_ab, i))
    return wynik


def _osiagalne(Q: LabeledQuotient, start) -> set:
    sasiedzi = _sasiedztwo(Q)
    widziane = {start}
    kolejka = deque([start])
    while kolejka:
        o = kolejka.popleft()
        for p, *_ in sasiedzi[o]:
            if p not in widziane:
                widziane.add(p)
                kolejka.append(p)
    return widziane


def _drzewo(Q: LabeledQuotient) -> tuple[dict, dict, set[int]]:
    """BFS od pierwszej orbity: potencjały, rodzice i numery krawędzi drzewa."""
    korzen = Q.orbits[0]
    pot = {korzen: Fraction(1)}
    rodzic = {korzen: None}
    drzewowe: set[int] = set()
    sasiedzi = _sasiedztwo(Q)
    kolejka = deque([korzen])
    while kolejka:
        o = kolejka.popleft()
        for p, m_op, m_po, nr in sasiedzi[o]:
            if p in pot:
                continue
            pot[p] = pot[o] * Fraction(m_op, m_po)
            rodzic[p] = o
            drzewowe.add(nr)
            kolejka.append(p)
    if len(pot) != len(Q.orbits):
        raise QuotientError('Graf ilorazu nie jest spójny')
    return pot, rodzic, drzewowe


def potentials(Q: LabeledQuotient, base: Hashable | None = None) -> dict[Hashable, Fraction]:
    """Iloczyny m(x_i→x_{i+1})/m(x_{i+1}→x_i) wzdłuż drzewa rozpinającego, względem `base`."""
    pot, _, _ = _drzewo(Q)
    if base is None:
        return pot
    if base not in pot:
        raise QuotientError(f'Nieznana orbita bazowa {base!r}')
    return {o: w / pot[base] for o, w in pot.items()}


def _przodkowie(rodzic: dict, o) -> list:
    sciezka = [o]
    while rodzic[sciezka[-1]] is not None:
        sciezka.append(rodzic[sciezka[-1]])
    return sciezka


def _cykl(rodzic: dict, a, b) -> tuple:
    """a → b krawędzią spoza drzewa, potem b w górę do LCA i w dół do a."""
    przodkowie_a = _przodkowie(rodzic, a)
    przodkowie_b = _przodkowie(rodzic, b)
    zbior_a = set(przodkowie_a)
    lca = next(o for o in przodkowie_b if o in zbior_a)
    w_gore = przodkowie_b[:przodkowie_b.index(lca) + 1]
    w_dol = list(reversed(przodkowie_a[:przodkowie_a.index(lca)]))
    return tuple([a] + w_gore + w_dol)


# ============================================================
# OPERACJE
# ============================================================

def validate_consistency(Q: LabeledQuotient) -> ConsistencyVerdict:
    """Iloczyn m(w przód)/m(w tył) po każdym cyklu równy 1 (sprawdzane na krawędziach spoza drzewa)."""
    pot, rodzic, drzewowe = _drzewo(Q)
    for nr, e in enumerate(Q.edges):
        if nr in drzewowe:
            continue
        iloczyn = Fraction(e.m_ab, e.m_ba) * pot[e.a] / pot[e.b]
        if iloczyn != 1:
            cykl = (e.a, e.a) if e.is_loop else _cykl(rodzic, e.a, e.b)
            logger.info("Iloraz niezgodny: cykl %s, iloczyn %s", cykl, iloczyn)
            return ConsistencyVerdict(False, cykl, iloczyn)
    return ConsistencyVerdict(True)


def path_product_measure(Q: LabeledQuotient, base: Hashable, p: Fraction = Fraction(1)) -> dict[Hashable, Fraction]:
    """μ[base] = p, μ[x] = p·Π m(x_i→x_{i+1})/m(x_{i+1}→x_i) po dowolnej ścieżce base → x."""
    p = Fraction(p)
    if p <= 0:
        raise QuotientError(f'Masa bazowa musi być dodatnia, jest {p}')
    werdykt = validate_consistency(Q)
    if not werdykt.passed:
        raise InconsistentQuotientError(
            f'Iloczyn etykiet wzdłuż cyklu {werdykt.cycle} wynosi {werdykt.product}',
            list(werdykt.cycle), werdykt.product,
        )
    return {o: p * w for o, w in potentials(Q, base).items()}


def _rozstrzygnij_promien(Q: RayQuotient, strict_reason: bool) -> JudicialityVerdict:
    f, b = Q.tail
    if f >= b:
        powod = LawlessReason.NULL_ONLY if strict_reason and f == b else LawlessReason.DIVERGENT_MASS
        logger.info("Promień bezprawny: ogon (%d, %d), powód %s", f, b, powod.value)
        return Lawless(powod)
    q = Fraction(f, b)
    # μ[1] = 1, μ[i+1] = μ[i]·f_i/b_i; prefiks wyznacza μ[1..k+1], dalej szereg geometryczny
    masy = [Fraction(1)]
    for f_i, b_i in Q.prefix:
        masy.append(masy[-1] * Fraction(f_i, b_i))
    suma = sum(masy, Fraction(0)) + masy[-1] * q / (1 - q)
    return Judicial(RayMeasure(tuple(m / suma for m in masy), q))


def decide_judicial(Q: LabeledQuotient | RayQuotient, strict_reason: bool = False) -> JudicialityVerdict:
    """Judicial z jedyną miarą unimodularną albo Lawless z powodem."""
    if isinstance(Q, RayQuotient):
        return _rozstrzygnij_promien(Q, strict_reason)
    if not isinstance(Q, LabeledQuotient):
        raise QuotientError(f'Oczekiwano LabeledQuotient lub RayQuotient, otrzymano {type(Q).__name__}')
    werdykt = validate_consistency(Q)
    if not werdykt.passed:
        return Lawless(LawlessReason.INCONSISTENT_CYCLE, werdykt.cycle, werdykt.product)
    pot = potentials(Q)
    suma = sum(pot.values(), Fraction(0))
    miara = {o: pot[o] / suma for o in Q.orbits}
    logger.debug("Iloraz praworządny, %d orbit", len(miara))
    return Judicial(miara)


def vertex_transitive_judicial(loop_labels: Sequence[tuple[int, int]]) -> bool:
    """Graf wierzchołkowo przechodni jest praworządny ⟺ |G_a b| = |G_b a| na każdej pętli."""
    return all(m_ab == m_ba for m_ab, m_ba in loop_labels)


def quotient_of_finite(X: Graph) -> LabeledQuotient:
    """Iloraz orbit grafu spójnego; etykiety orbit 'o0', 'o1', … w porządku kluczy kanonicznych."""
    if not is_connected(X):
        raise GraphError('Iloraz orbit liczymy tylko dla grafu spójnego')
    klasy = rooted_classes(X)
    etykieta = {}
    pochodzenie = {}
    for i, (k, orbita) in enumerate(sorted(klasy.items())):
        pochodzenie[f'o{i}'] = k
        for v in orbita:
            etykieta[v] = f'o{i}'
    dwuklasy = birooted_classes(X)
    klasa_pary = {p: k for k, pary in dwuklasy.items() for p in pary}
    krawedzie = []
    for k, pary in dwuklasy.items():
        a, b = pary[0]
        odwrotna = klasa_pary[(b, a)]
        if etykieta[a] != etykieta[b] and odwrotna < k:
            continue   # nieskierowana klasa krawędzi już dodana od drugiej strony
        m_ab = sum(1 for p, _ in pary if p == a)
        m_ba = sum(1 for p, _ in dwuklasy[odwrotna] if p == b)
        krawedzie.append(QuotientEdge(etykieta[a], etykieta[b], m_ab, m_ba))
    logger.debug("Iloraz grafu n=%d: %d orbit, %d krawędzi", X.n, len(pochodzenie), len(krawedzie))
    return LabeledQuotient(tuple(pochodzenie), tuple(krawedzie), X.delta, pochodzenie)

"""
Deterministyczne generatory rodzin grafów: cykle, ścieżki, kule drzew T_n, Λ_n, Λ̄_n,
T_{3,4}, T_{3,2,4}, drzewo z cyklem, drzewa sklejone, kule kontrprzykładu średniego
stopnia oraz grafy Cayleya skończonych grup danych tabelą mnożenia.

Numeracja wierzchołków drzew: BFS od korzenia (korzeń = 0), dzieci w kolejności tworzenia.

Użycie:
    from families import FamilySpec, generate, T_ball
    t3 = T_ball(3)                                    # |V| = 3·2^3 − 2 = 22
    wynik = generate(FamilySpec('cayley', {'group': 'S3'}))
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from bledy import FamilyError
from config import domyslna_delta
from graph_core import Graph

logger = logging.getLogger(__name__)

FAMILIES = (
    'cycle', 'path', 'complete', 'star', 'T_ball', 'Lambda_ball', 'barredLambda_ball',
    'T34_ball', 'T324_ball', 'tree_plus_cycle', 'joined_trees_X', 'joined_trees_Y',
    'avg_degree_counterexample', 'cayley',
)


# ============================================================
# TYPY
# ============================================================

@dataclass(frozen=True)
class FamilySpec:
    """Nazwa rodziny i jej parametry (n, m, group, table, generators, …)."""
    name: str
    params: dict[str, Any] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise FamilyError(f'Nieznana rodzina {self.name!r}; dostępne: {", ".join(FAMILIES)}')


@dataclass(frozen=True)
class Generated:
    graph: Graph
    root: int | None = None


@dataclass(frozen=True)
class GroupTable:
    """Grupa skończona: table[g][h] = g·h na elementach 0..n−1."""
    name: str
    table: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]
    labels: tuple[str, ...] = ()


def _n(wartosc, nazwa: str, minimum: int) -> int:
    if isinstance(wartosc, bool) or not isinstance(wartosc, int) or wartosc < minimum:
        raise FamilyError(f'Parametr {nazwa} musi być liczbą całkowitą ≥ {minimum}, jest {wartosc!r}')
    return wartosc


# ============================================================
# RODZINY PODSTAWOWE
# ============================================================

def cycle(n: int, delta: int | None = None) -> Graph:
    """Z_n."""
    _n(n, 'n', 3)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], delta)


def path(n: int, delta: int | None = None) -> Graph:
    """P_n – ścieżka na n wierzchołkach."""
    _n(n, 'n', 1)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], delta)


def complete(n: int, delta: int | None = None) -> Graph:
    _n(n, 'n', 1)
    return Graph.from_edges(n, itertools.combinations(range(n), 2), delta)


def star(k: int, delta: int | None = None) -> Graph:
    """K_{1,k}, środek = 0."""
    _n(k, 'k', 1)
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)], delta)


# ============================================================
# DRZEWA
# ============================================================

@dataclass
class _Drzewo:
    krawedzie: list[tuple[int, int]] = field(default_factory=list)
    dzieci: list[list[int]] = field(default_factory=list)
    typy: list[str] = field(default_factory=list)
    glebokosc: list[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.typy)


def _drzewo(typ_korzenia: str, regula: Callable[[str, str | None], Sequence[str]], glebokosc: int) -> _Drzewo:
    """Kula promienia `glebokosc` drzewa typowanego: regula(typ, typ_rodzica) → typy dzieci."""
    d = _Drzewo(typy=[typ_korzenia], dzieci=[[]], glebokosc=[0])
    rodzic_typ: list[str | None] = [None]
    v = 0
    while v < d.n:
        if d.glebokosc[v] < glebokosc:
            for typ in regula(d.typy[v], rodzic_typ[v]):
                u = d.n
                d.typy.append(typ)
                d.dzieci.append([])
                d.glebokosc.append(d.glebokosc[v] + 1)
                rodzic_typ.append(d.typy[v])
                d.dzieci[v].append(u)
                d.krawedzie.append((v, u))
        v += 1
    return d


def regular_tree_ball(d: int, n: int, delta: int | None = None) -> Graph:
    """B_T(t, n) w drzewie d-regularnym: korzeń ma d dzieci, pozostali d − 1."""
    _n(d, 'd', 2)
    _n(n, 'n', 0)
    drzewo = _drzewo('t', lambda typ, rodzic: ['t'] * (d if rodzic is None else d - 1), n)
    return Graph.from_edges(drzewo.n, drzewo.krawedzie, delta)


def T_ball(n: int, delta: int | None = None) -> Graph:
    """T_n = B_T(t, n) w drzewie 3-regularnym; |V| = 3·2^n − 2."""
    return regular_tree_ball(3, n, delta)


def _binarne(n: int) -> _Drzewo:
    _n(n, 'n', 0)
    return _drzewo('b', lambda typ, rodzic: ['b', 'b'], n)


def Lambda_ball(n: int, delta: int | None = None) -> Graph:
    """Λ_n – pełne drzewo binarne głębokości n; |V| = 2^{n+1} − 1."""
    drzewo = _binarne(n)
    return Graph.from_edges(drzewo.n, drzewo.krawedzie, delta)


def _z_rodzenstwem(drzewo: _Drzewo) -> list[tuple[int, int]]:
    return drzewo.krawedzie + [tuple(dz) for dz in drzewo.dzieci if len(dz) == 2]


def barredLambda_ball(n: int, delta: int | None = None) -> Graph:
    """Λ̄_n – Λ_n z krawędzią między każdą parą rodzeństwa."""
    drzewo = _binarne(n)
    return Graph.from_edges(drzewo.n, _z_rodzenstwem(drzewo), delta)


def _regula_t34(typ: str, rodzic: str | None) -> list[str]:
    if typ == 'u':
        return ['v'] * (3 if rodzic is None else 2)
    return ['u'] * 3


def T34_ball(n: int, delta: int | None = None) -> Graph:
    """Kula wokół u w drzewie T_{3,4}: u ma 3 sąsiadów typu v, v ma 4 sąsiadów typu u."""
    _n(n, 'n', 0)
    drzewo = _drzewo('u', _regula_t34, n)
    return Graph.from_edges(drzewo.n, drzewo.krawedzie, delta)


def _regula_t324(typ: str, rodzic: str | None) -> list[str]:
    if typ == 'u':
        return ['w'] * (3 if rodzic is None else 2)
    if typ == 'v':
        return ['w'] * 3
    # w ma stopień 2: jednego sąsiada u i jednego v
    return ['v'] if rodzic == 'u' else ['u']


def T324_ball(n: int, delta: int | None = None) -> Graph:
    """Kula wokół u w T_{3,2,4} (T_{3,4} z podzielonymi krawędziami, w – stopnia 2)."""
    _n(n, 'n', 0)
    drzewo = _drzewo('u', _regula_t324, n)
    return Graph.from_edges(drzewo.n, drzewo.krawedzie, delta)


def tree_plus_cycle(n: int, delta: int | None = None) -> Graph:
    """T_n, którego korzeń t łączy ścieżka t–u–z z wierzchołkiem z cyklu Z_{2n+1}.

    Numeracja: T_n (0 = t), potem u, potem cykl; |V| = 3·2^n + 2n.
    """
    _n(n, 'n', 1)
    drzewo = _drzewo('t', lambda typ, rodzic: ['t'] * (3 if rodzic is None else 2), n)
    u = drzewo.n
    dlugosc = 2 * n + 1
    cykl = [(u + 1 + i, u + 1 + (i + 1) % dlugosc) for i in range(dlugosc)]
    return Graph.from_edges(u + 1 + dlugosc, drzewo.krawedzie + [(0, u), (u, u + 1)] + cykl, delta)


@dataclass(frozen=True)
class JoinedTrees:
    """Kule X_n (korzeń x) i Y_n (korzeń y) grafu Λ ∪ Λ̄ ∪ {x, y}."""
    X: Graph
    x: int
    Y: Graph
    y: int


def _sklejone(glebokosc_lambda: int, glebokosc_bar: int, delta: int | None) -> tuple[Graph, int, int]:
    lam = _binarne(glebokosc_lambda)
    bar = _binarne(glebokosc_bar)
    przesuniecie = lam.n
    krawedzie = lam.krawedzie + [(a + przesuniecie, b + przesuniecie) for a, b in _z_rodzenstwem(bar)]
    krawedzie.append((0, przesuniecie))
    return Graph.from_edges(lam.n + bar.n, krawedzie, delta), 0, przesuniecie


def joined_tree_balls(n: int, delta: int | None = None) -> JoinedTrees:
    """X_n: Λ do głębokości n i Λ̄ do n − 1; Y_n: Λ do n − 1 i Λ̄ do n.

    x = korzeń Λ (wierzchołek 0), y = korzeń Λ̄; |V(X_n)| = |V(Y_n)| = 3·2^n − 2.
    """
    _n(n, 'n', 2)
    gx, x, _ = _sklejone(n, n - 1, delta)
    gy, _, y = _sklejone(n - 1, n, delta)
    return JoinedTrees(gx, x, gy, y)


# ============================================================
# KONTRPRZYKŁAD ŚREDNIEGO STOPNIA
# ============================================================

def counterexample_indices(n: int) -> tuple[int, int]:
    """(k_n, l_n): k_1 = 1, l_1 = 2, k_n = 15·Σ_{i<n}(l_i − k_i) − 2, l_n = ⌈7k_n/6 + 1/3⌉."""
    _n(n, 'n', 1)
    k, l = 1, 2
    suma = l - k
    for _ in range(2, n + 1):
        k = 15 * suma - 2
        l = math.ceil(Fraction(7 * k, 6) + Fraction(1, 3))
        suma += l - k
    return k, l


def _ozdobione(m: int) -> list[int]:
    """Wierzchołki ścieżki ≤ m, do których doklejono K_6 (przedziały k_n..l_n − 1)."""
    wynik = []
    n = 1
    while True:
        k, l = counterexample_indices(n)
        if k > m:
            return wynik
        wynik.extend(range(k, min(l - 1, m) + 1))
        n += 1


def counterexample_ball(m: int, delta: int | None = None) -> Graph:
    """B_X(1, m): ścieżka 1..m+1 (wierzchołki 0..m) z K_6 utożsamionym z każdym ozdobionym j ≤ m."""
    _n(m, 'm', 1)
    krawedzie = [(i, i + 1) for i in range(m)]
    n = m + 1
    for j in _ozdobione(m):
        klika = [j - 1] + list(range(n, n + 5))
        krawedzie.extend(itertools.combinations(klika, 2))
        n += 5
    logger.debug("Kula kontrprzykładu m=%d: %d wierzchołków", m, n)
    return Graph.from_edges(n, krawedzie, delta)


# ============================================================
# GRAFY CAYLEYA
# ============================================================

def _sprawdz_grupe(table: Sequence[Sequence[int]]) -> int:
    """Waliduje tabelę grupy i zwraca element neutralny."""
    n = len(table)
    if n < 1 or any(len(w) != n for w in table):
        raise FamilyError('Tabela mnożenia musi być kwadratowa i niepusta')
    elementy = set(range(n))
    for g in range(n):
        if set(table[g]) != elementy or {table[h][g] for h in range(n)} != elementy:
            raise FamilyError(f'Tabela nie jest kwadratem łacińskim (element {g})')
    neutralne = [e for e in range(n) if all(table[e][g] == g == table[g][e] for g in range(n))]
    if not neutralne:
        raise FamilyError('Tabela nie ma elementu neutralnego')
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise FamilyError(f'Działanie nie jest łączne: ({a}·{b})·{c} ≠ {a}·({b}·{c})')
    return neutralne[0]


def cayley(table: Sequence[Sequence[int]], generators: Sequence[int], delta: int | None = None) -> Graph:
    """V = Γ, E = {{g, gs} : g ∈ Γ, s ∈ S}; S symetryczny, bez elementu neutralnego."""
    e = _sprawdz_grupe(table)
    n = len(table)
    S = set(generators)
    if not S or any(not 0 <= s < n for s in S):
        raise FamilyError(f'Generatory {sorted(S)} spoza grupy rzędu {n}')
    if e in S:
        raise FamilyError('Zbiór generatorów zawiera element neutralny')
    for s in S:
        odwrotny = next(t for t in range(n) if table[s][t] == e)
        if odwrotny not in S:
            raise FamilyError(f'Zbiór generatorów nie jest symetryczny: brak odwrotności {s}')
    podgrupa = {e}
    brzeg = [e]
    while brzeg:
        brzeg = [table[g][s] for g in brzeg for s in S if table[g][s] not in podgrupa]
        podgrupa.update(brzeg)
    if len(podgrupa) < n:
        raise FamilyError(f'Generatory {sorted(S)} rozpinają podgrupę rzędu {len(podgrupa)}, '
                          f'nie całą grupę rzędu {n}')
    krawedzie = {(min(g, table[g][s]), max(g, table[g][s])) for g in range(n) for s in S}
    return Graph.from_edges(n, sorted(krawedzie), delta)


def cyclic_group(n: int) -> GroupTable:
    _n(n, 'n', 2)
    table = tuple(tuple((g + h) % n for h in range(n)) for g in range(n))
    return GroupTable(f'Z{n}', table, tuple(sorted({1, n - 1})), tuple(str(g) for g in range(n)))


def _z_permutacji(nazwa: str, elementy: list[tuple[int, ...]], generatory: list[tuple[int, ...]]) -> GroupTable:
    indeks = {p: i for i, p in enumerate(elementy)}
    table = tuple(
        tuple(indeks[tuple(g[h[i]] for i in range(len(g)))] for h in elementy)
        for g in elementy
    )
    return GroupTable(nazwa, table, tuple(sorted(indeks[s] for s in generatory)),
                      tuple(''.join(map(str, p)) for p in elementy))


def symmetric_group(k: int) -> GroupTable:
    """S_k z transpozycjami jako generatorami."""
    _n(k, 'k', 2)
    elementy = sorted(itertools.permutations(range(k)))
    transpozycje = []
    for i, j in itertools.combinations(range(k), 2):
        p = list(range(k))
        p[i], p[j] = j, i
        transpozycje.append(tuple(p))
    return _z_permutacji(f'S{k}', elementy, transpozycje)


def dihedral_group(n: int) -> GroupTable:
    """D_n jako permutacje wierzchołków n-kąta; generatory r, r^{-1}, s."""
    _n(n, 'n', 3)
    obrot = tuple((i + 1) % n for i in range(n))
    odbicie = tuple((-i) % n for i in range(n))
    elementy = sorted(
        {tuple((j * s_ + i) % n for s_ in range(n)) for i in range(n) for j in (1, -1)}
    )
    return _z_permutacji(f'D{n}', elementy, [obrot, tuple((i - 1) % n for i in range(n)), odbicie])


_KWATERNIONY = {
    ('1', '1'): '1', ('1', 'i'): 'i', ('1', 'j'): 'j', ('1', 'k'): 'k',
    ('i', '1'): 'i', ('i', 'i'): '-1', ('i', 'j'): 'k', ('i', 'k'): '-j',
    ('j', '1'): 'j', ('j', 'i'): '-k', ('j', 'j'): '-1', ('j', 'k'): 'i',
    ('k', '1'): 'k', ('k', 'i'): 'j', ('k', 'j'): '-i', ('k', 'k'): '-1',
}


def quaternion_group() -> GroupTable:
    """Q_8 = {±1, ±i, ±j, ±k}; generatory ±i, ±j."""
    etykiety = ['1', '-1', 'i', '-i', 'j', '-j', 'k', '-k']
    indeks = {e: n for n, e in enumerate(etykiety)}

    def iloczyn(a: str, b: str) -> str:
        znak = (a.startswith('-')) ^ (b.startswith('-'))
        w = _KWATERNIONY[(a.lstrip('-'), b.lstrip('-'))]
        if znak:
            w = w[1:] if w.startswith('-') else '-' + w
        return w

    table = tuple(tuple(indeks[iloczyn(a, b)] for b in etykiety) for a in etykiety)
    return GroupTable('Q8', table, tuple(indeks[g] for g in ('i', '-i', 'j', '-j')), tuple(etykiety))


NAMED_GROUPS: dict[str, Callable[[], GroupTable]] = {
    'S3': lambda: symmetric_group(3),
    'D4': lambda: dihedral_group(4),
    'Q8': quaternion_group,
}


def named_group(nazwa: str, n: int | None = None) -> GroupTable:
    """'Z' (wymaga n), 'S3', 'D4', 'Q8'."""
    if nazwa == 'Z':
        return cyclic_group(_n(n, 'n', 2))
    if nazwa not in NAMED_GROUPS:
        raise FamilyError(f'Nieznana grupa {nazwa!r}; dostępne: Z, {", ".join(NAMED_GROUPS)}')
    return NAMED_GROUPS[nazwa]()


# ============================================================
# GENERATE
# ============================================================

def generate(spec: FamilySpec, delta: int | None = None) -> Generated:
    """Graf rodziny z korzeniem tam, gdzie rodzina go wyróżnia."""
    p = spec.params
    delta = p.get('delta', delta) or domyslna_delta()

    def arg(nazwa: str):
        if nazwa not in p:
            raise FamilyError(f'Rodzina {spec.name} wymaga parametru {nazwa!r}')
        return p[nazwa]

    nazwa = spec.name
    if nazwa == 'cycle':
        wynik = Generated(cycle(arg('n'), delta), 0)
    elif nazwa == 'path':
        wynik = Generated(path(arg('n'), delta), 0)
    elif nazwa == 'complete':
        wynik = Generated(complete(arg('n'), delta), 0)
    elif nazwa == 'star':
        wynik = Generated(star(arg('k') if 'k' in p else arg('n'), delta), 0)
    elif nazwa in ('T_ball', 'Lambda_ball', 'barredLambda_ball', 'T34_ball', 'T324_ball'):
        budowniczy = {'T_ball': T_ball, 'Lambda_ball': Lambda_ball, 'barredLambda_ball': barredLambda_ball,
                      'T34_ball': T34_ball, 'T324_ball': T324_ball}[nazwa]
        wynik = Generated(budowniczy(arg('n'), delta), 0)
    elif nazwa == 'tree_plus_cycle':
        wynik = Generated(tree_plus_cycle(arg('n'), delta), 0)
    elif nazwa == 'joined_trees_X':
        sklejone = joined_tree_balls(arg('n'), delta)
        wynik = Generated(sklejone.X, sklejone.x)
    elif nazwa == 'joined_trees_Y':
        sklejone = joined_tree_balls(arg('n'), delta)
        wynik = Generated(sklejone.Y, sklejone.y)
    elif nazwa == 'avg_degree_counterexample':
        wynik = Generated(counterexample_ball(arg('m'), delta), 0)
    else:
        if 'group' in p:
            grupa = named_group(p['group'], p.get('n'))
            wynik = Generated(cayley(grupa.table, p.get('generators', grupa.generators), delta))
        else:
            wynik = Generated(cayley(arg('table'), arg('generators'), delta))
    logger.debug("Wygenerowano %s %s: n=%d", nazwa, p, wynik.graph.n)
    return wynik

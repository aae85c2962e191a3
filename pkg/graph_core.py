"""
Grafy skończone: reprezentacja i operacje czysto kombinatoryczne.

Graf prosty, nieskierowany, wierzchołki 0..n-1, listy sąsiedztwa posortowane,
stopnie ograniczone przez Δ. Obiekty są niezmienne po konstrukcji.

Użycie:
    from graph_core import Graph, ball, component
    z5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    kula = ball(z5, 0, 1)          # ścieżka P_3 ukorzeniona w środku
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from bledy import DegreeCapError, EmptyGraphError, GraphError, UnknownVertexError
from config import domyslna_delta

logger = logging.getLogger(__name__)


# ============================================================
# TYPY
# ============================================================

@dataclass(frozen=True)
class Graph:
    """Graf prosty z globalnym ograniczeniem stopnia."""
    n: int                                  # liczba wierzchołków, id = 0..n-1
    adjacency: tuple[tuple[int, ...], ...]  # posortowane listy sąsiadów
    delta: int                              # ograniczenie stopnia Δ

    def __post_init__(self):
        if self.n < 1:
            raise EmptyGraphError('Graf musi mieć co najmniej jeden wierzchołek')
        if len(self.adjacency) != self.n:
            raise GraphError(f'Liczba list sąsiedztwa ({len(self.adjacency)}) różna od n={self.n}')
        if self.delta < 1:
            raise GraphError(f'Δ musi być dodatnie, jest {self.delta}')
        for v, sasiedzi in enumerate(self.adjacency):
            if len(sasiedzi) > self.delta:
                raise DegreeCapError(f'Wierzchołek {v} ma stopień {len(sasiedzi)} > Δ={self.delta}')
            poprzedni = -1
            for u in sasiedzi:
                if not 0 <= u < self.n:
                    raise UnknownVertexError(f'Sąsiad {u} wierzchołka {v} spoza zakresu 0..{self.n - 1}')
                if u == v:
                    raise GraphError(f'Pętla w wierzchołku {v}')
                if u <= poprzedni:
                    raise GraphError(f'Lista sąsiadów {v} nieposortowana lub z duplikatem krawędzi')
                poprzedni = u
        for v, sasiedzi in enumerate(self.adjacency):
            for u in sasiedzi:
                if v not in self.adjacency[u]:
                    raise GraphError(f'Sąsiedztwo niesymetryczne: {v}→{u} bez {u}→{v}')

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], delta: int | None = None) -> 'Graph':
        """Buduje graf z listy krawędzi (każda krawędź raz, w dowolnej orientacji)."""
        if delta is None:
            delta = domyslna_delta()
        if n < 1:
            raise EmptyGraphError('Graf musi mieć co najmniej jeden wierzchołek')
        listy: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertexError(f'Krawędź ({u}, {v}) poza zakresem 0..{n - 1}')
            if u == v:
                raise GraphError(f'Pętla w wierzchołku {u}')
            if v in listy[u]:
                raise GraphError(f'Powtórzona krawędź ({u}, {v})')
            listy[u].add(v)
            listy[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in listy), delta)

    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> tuple[int, ...]:
        _sprawdz_wierzcholek(self, v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Krawędzie (u, v) z u < v w porządku leksykograficznym."""
        for u, sasiedzi in enumerate(self.adjacency):
            for v in sasiedzi:
                if u < v:
                    yield u, v

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adjacency) // 2

    def is_tree(self) -> bool:
        return self.edge_count == self.n - 1 and is_connected(self)


@dataclass(frozen=True)
class RootedGraph:
    """Graf ukorzeniony (X, x)."""
    graph: Graph
    root: int

    def __post_init__(self):
        _sprawdz_wierzcholek(self.graph, self.root)


@dataclass(frozen=True)
class BirootedGraph:
    """Graf dwukrotnie ukorzeniony (X, x, y) z y ∈ N(x)."""
    graph: Graph
    root: int
    coroot: int

    def __post_init__(self):
        _sprawdz_wierzcholek(self.graph, self.root)
        _sprawdz_wierzcholek(self.graph, self.coroot)
        if self.coroot not in self.graph.adjacency[self.root]:
            raise GraphError(f'Współkorzeń {self.coroot} nie jest sąsiadem korzenia {self.root}')


def _sprawdz_wierzcholek(X: Graph, v: int):
    if not isinstance(v, int) or not 0 <= v < X.n:
        raise UnknownVertexError(f'Nieznany wierzchołek {v!r} (graf ma {X.n} wierzchołków)')


# ============================================================
# ODLEGŁOŚCI I PODGRAFY
# ============================================================

def distances_from(X: Graph, sources: Iterable[int], limit: int | None = None) -> list[int | None]:
    """BFS z wielu źródeł; None dla wierzchołków nieosiągalnych (lub dalszych niż limit)."""
    dist: list[int | None] = [None] * X.n
    kolejka = deque()
    for s in sources:
        _sprawdz_wierzcholek(X, s)
        if dist[s] is None:
            dist[s] = 0
            kolejka.append(s)
    while kolejka:
        v = kolejka.popleft()
        d = dist[v]
        if limit is not None and d >= limit:
            continue
        for u in X.adjacency[v]:
            if dist[u] is None:
                dist[u] = d + 1
                kolejka.append(u)
    return dist


def _kolejnosc_bfs(X: Graph, x: int, limit: int | None = None) -> list[int]:
    """Wierzchołki w kolejności BFS od x (sąsiedzi rosnąco) – deterministyczna numeracja kul."""
    widziane = {x}
    kolejnosc = [x]
    glebokosc = {x: 0}
    i = 0
    while i < len(kolejnosc):
        v = kolejnosc[i]
        i += 1
        if limit is not None and glebokosc[v] >= limit:
            continue
        for u in X.adjacency[v]:
            if u not in widziane:
                widziane.add(u)
                glebokosc[u] = glebokosc[v] + 1
                kolejnosc.append(u)
    return kolejnosc


def induced_subgraph(X: Graph, vertices: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    """Podgraf indukowany; nowy numer wierzchołka = jego pozycja w `vertices`."""
    if not vertices:
        raise EmptyGraphError('Podgraf indukowany przez pusty zbiór wierzchołków')
    mapa = {v: i for i, v in enumerate(vertices)}
    if len(mapa) != len(vertices):
        raise GraphError('Powtórzone wierzchołki w podgrafie indukowanym')
    listy = []
    for v in vertices:
        _sprawdz_wierzcholek(X, v)
        listy.append(tuple(sorted(mapa[u] for u in X.adjacency[v] if u in mapa)))
    return Graph(len(vertices), tuple(listy), X.delta), mapa


# ============================================================
# OPERACJE
# ============================================================

def ball(X: Graph, x: int, r: int) -> RootedGraph:
    """Kula domknięta B_X(x, r) jako graf ukorzeniony (korzeń ma numer 0)."""
    _sprawdz_wierzcholek(X, x)
    if r < 0:
        raise ValueError(f'Promień kuli musi być nieujemny, jest {r}')
    podgraf, mapa = induced_subgraph(X, _kolejnosc_bfs(X, x, r))
    return RootedGraph(podgraf, mapa[x])


def component(X: Graph, x: int) -> RootedGraph:
    """Składowa spójności zawierająca x, ukorzeniona w x."""
    _sprawdz_wierzcholek(X, x)
    podgraf, mapa = induced_subgraph(X, _kolejnosc_bfs(X, x))
    return RootedGraph(podgraf, mapa[x])


def components(X: Graph) -> list[list[int]]:
    """Zbiory wierzchołków składowych, posortowane, w kolejności najmniejszego wierzchołka."""
    przydzial = [-1] * X.n
    wynik = []
    for s in X.vertices():
        if przydzial[s] >= 0:
            continue
        skladowa = _kolejnosc_bfs(X, s)
        for v in skladowa:
            przydzial[v] = len(wynik)
        wynik.append(sorted(skladowa))
    return wynik


def is_connected(X: Graph) -> bool:
    return len(_kolejnosc_bfs(X, 0)) == X.n


def diameter(X: Graph) -> int:
    """Średnica grafu spójnego."""
    if not is_connected(X):
        raise GraphError('Średnica zdefiniowana tylko dla grafu spójnego')
    return max(max(distances_from(X, [v])) for v in X.vertices())


def disjoint_union(parts: Sequence[tuple[Graph, int]], delta: int | None = None) -> Graph:
    """Suma rozłączna; kopie kolejno, w porządku listy `parts`."""
    if not parts:
        raise GraphError('Suma rozłączna pustej listy grafów')
    if delta is None:
        delta = max(g.delta for g, _ in parts)
    krawedzie = []
    przesuniecie = 0
    for g, krotnosc in parts:
        if krotnosc < 1:
            raise GraphError(f'Krotność składnika musi być ≥ 1, jest {krotnosc}')
        for _ in range(krotnosc):
            krawedzie.extend((u + przesuniecie, v + przesuniecie) for u, v in g.edges())
            przesuniecie += g.n
    return Graph.from_edges(przesuniecie, krawedzie, delta)


def delete_subgraph(X: Graph, G: Iterable[int]) -> Graph:
    """Podgraf indukowany przez V(X) \\ G (wierzchołki rosnąco)."""
    usuwane = set(G)
    for v in usuwane:
        _sprawdz_wierzcholek(X, v)
    if len(usuwane) == X.n:
        raise EmptyGraphError('Usunięcie wszystkich wierzchołków daje graf pusty')
    podgraf, _ = induced_subgraph(X, [v for v in X.vertices() if v not in usuwane])
    return podgraf


def r_neighborhood(X: Graph, G: Iterable[int], r: int) -> frozenset[int]:
    """{x : d(x, G) ≤ r}."""
    zrodla = list(G)
    if not zrodla:
        raise ValueError('r-otoczenie wymaga niepustego zbioru G')
    if r < 0:
        raise ValueError(f'Promień musi być nieujemny, jest {r}')
    dist = distances_from(X, zrodla, limit=r)
    return frozenset(v for v, d in enumerate(dist) if d is not None)


def neighbourhood_bound(delta: int, r: int, rozmiar: int) -> int:
    """Górne ograniczenie (Δ+1)^r·|G| na rozmiar r-otoczenia."""
    return (delta + 1) ** r * rozmiar

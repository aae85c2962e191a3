"""
Postacie kanoniczne grafów ukorzenionych i dwukrotnie ukorzenionych,
ultrametryka ρ, orbity automorfizmów i liczności orbit stabilizatorów.

Kanonizacja idzie po drzewie bloków i wierzchołków rozcinających:
- mosty (bloki K_2) kodowane rekurencyjnie multizbiorem kodów dzieci
  (drzewa nigdy nie wchodzą do przeszukiwania),
- bloki 2-spójne kanonizowane przez udoskonalanie kolorów zasiane odległością
  od wierzchołka zaczepienia + indywidualizację z przycinaniem automorfizmami.
Kody kierunkowe (wierzchołek, blok-rodzic) są zapamiętywane, więc orbity
całego grafu kosztują jedno przejście na wierzchołek.

Klucze zaczynają się bajtem wersji; są stabilne w obrębie jednego wydania.

Użycie:
    from canonical import canonical_rooted, automorphism_orbits
    klasa = canonical_rooted(RootedGraph(g, 0))
    orbity = automorphism_orbits(g)
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from bledy import CanonicalizationBudgetExceeded, GraphError
from config import domyslny_limit_wezlow
from graph_core import BirootedGraph, Graph, RootedGraph, ball, is_connected

logger = logging.getLogger(__name__)

WERSJA = b'\x01'


# ============================================================
# TYPY
# ============================================================

@dataclass(frozen=True, order=True)
class RootedClass:
    """Klasa izomorfizmu [X, x] – klucz bajtowy."""
    key: bytes

    def hex(self) -> str:
        return self.key.hex()


@dataclass(frozen=True, order=True)
class BirootedClass:
    """Klasa izomorfizmu [X, x, y] – klucz bajtowy."""
    key: bytes

    def hex(self) -> str:
        return self.key.hex()


# ============================================================
# UDOSKONALANIE KOLORÓW I INDYWIDUALIZACJA
# ============================================================
# Kolor wierzchołka = pozycja początku jego komórki w uporządkowanym podziale.
# Udoskonalanie dzieli komórki w miejscu, więc singleton nie zmienia koloru.

def _kolory_z_kluczy(klucze: list) -> list[int]:
    porzadek = sorted(range(len(klucze)), key=klucze.__getitem__)
    kolory = [0] * len(klucze)
    start = 0
    for i, v in enumerate(porzadek):
        if i and klucze[v] != klucze[porzadek[i - 1]]:
            start = i
        kolory[v] = start
    return kolory


def _udoskonal(sasiedzi: list[list[int]], kolory: list[int]) -> list[int]:
    liczba = len(set(kolory))
    while True:
        nowe = _kolory_z_kluczy(
            [(kolory[v], tuple(sorted(kolory[u] for u in sasiedzi[v]))) for v in range(len(kolory))]
        )
        nowa_liczba = len(set(nowe))
        if nowa_liczba == liczba:
            return nowe
        kolory, liczba = nowe, nowa_liczba


class _Przeszukiwanie:
    """Drzewo indywidualizacji–udoskonalania dla jednego bloku z kolorami."""

    def __init__(self, sasiedzi: list[list[int]], kolory0: list[int], licznik: list[int], limit: int):
        self.sasiedzi = sasiedzi
        self.kolory0 = kolory0
        self.licznik = licznik        # współdzielony z całą kanonizacją grafu
        self.limit = limit
        self.pierwszy = None          # (certyfikat, etykiety, prefiks)
        self.najlepszy = None
        self.generatory: list[list[int]] = []

    def uruchom(self) -> tuple[tuple, list[int]]:
        self._szukaj(_udoskonal(self.sasiedzi, self.kolory0), [])
        return self.najlepszy[0], self.najlepszy[1]

    def _certyfikat(self, etykiety: list[int]) -> tuple:
        return tuple(sorted(
            (min(etykiety[v], etykiety[u]), max(etykiety[v], etykiety[u]))
            for v in range(len(etykiety)) for u in self.sasiedzi[v] if v < u
        ))

    def _komorka_docelowa(self, kolory: list[int]) -> list[int] | None:
        licznosci: dict[int, int] = {}
        for c in kolory:
            licznosci[c] = licznosci.get(c, 0) + 1
        wieloelementowe = [c for c, k in licznosci.items() if k > 1]
        if not wieloelementowe:
            return None
        c = min(wieloelementowe)
        return [v for v in range(len(kolory)) if kolory[v] == c]

    def _w_orbicie(self, v: int, zbadane: list[int], prefiks: list[int]) -> bool:
        rodzic = list(range(len(self.kolory0)))

        def znajdz(x):
            while rodzic[x] != x:
                rodzic[x] = rodzic[rodzic[x]]
                x = rodzic[x]
            return x

        for g in self.generatory:
            if all(g[p] == p for p in prefiks):
                for x, y in enumerate(g):
                    rx, ry = znajdz(x), znajdz(y)
                    if rx != ry:
                        rodzic[rx] = ry
        korzen = znajdz(v)
        return any(znajdz(w) == korzen for w in zbadane)

    def _automorfizm(self, etykiety: list[int], wzorzec: list[int]):
        odwrotna = [0] * len(wzorzec)
        for w, p in enumerate(wzorzec):
            odwrotna[p] = w
        self.generatory.append([odwrotna[etykiety[v]] for v in range(len(etykiety))])

    def _lisc(self, kolory: list[int], prefiks: list[int]) -> int | None:
        cert = self._certyfikat(kolory)
        if self.pierwszy is None:
            self.pierwszy = self.najlepszy = (cert, kolory, prefiks)
            return None
        if cert == self.pierwszy[0]:
            self._automorfizm(kolory, self.pierwszy[1])
            wspolny = 0
            for a, b in zip(prefiks, self.pierwszy[2]):
                if a != b:
                    break
                wspolny += 1
            return wspolny
        if cert == self.najlepszy[0]:
            self._automorfizm(kolory, self.najlepszy[1])
        elif cert < self.najlepszy[0]:
            self.najlepszy = (cert, kolory, prefiks)
        return None

    def _szukaj(self, kolory: list[int], prefiks: list[int]) -> int | None:
        self.licznik[0] += 1
        if self.licznik[0] > self.limit:
            raise CanonicalizationBudgetExceeded(
                f'Przekroczono limit {self.limit} węzłów przeszukiwania kanonizacji'
            )
        komorka = self._komorka_docelowa(kolory)
        if komorka is None:
            return self._lisc(kolory, prefiks)
        zbadane: list[int] = []
        for v in komorka:
            if zbadane and self._w_orbicie(v, zbadane, prefiks):
                continue
            zbadane.append(v)
            nowe = list(kolory)
            for u in komorka:
                if u != v:
                    nowe[u] = kolory[v] + 1
            wynik = self._szukaj(_udoskonal(self.sasiedzi, nowe), prefiks + [v])
            # automorfizm przeniósł całe poddrzewo v na pierwszą ścieżkę
            if wynik is not None and wynik < len(prefiks):
                return wynik
        return None


# ============================================================
# BLOKI I KODY KIERUNKOWE
# ============================================================

def _bloki(X: Graph) -> list[tuple[int, ...]]:
    """Bloki (składowe 2-spójne i mosty) – iteracyjny algorytm Tarjana."""
    n = X.n
    odkrycie = [-1] * n
    niski = [0] * n
    bloki = []
    czas = 0
    stos_krawedzi: list[tuple[int, int]] = []
    for s in range(n):
        if odkrycie[s] != -1:
            continue
        odkrycie[s] = niski[s] = czas
        czas += 1
        stos = [(s, -1, iter(X.adjacency[s]))]
        while stos:
            v, rodzic, it = stos[-1]
            zszedl = False
            for u in it:
                if odkrycie[u] == -1:
                    stos_krawedzi.append((v, u))
                    odkrycie[u] = niski[u] = czas
                    czas += 1
                    stos.append((u, v, iter(X.adjacency[u])))
                    zszedl = True
                    break
                if u != rodzic and odkrycie[u] < odkrycie[v]:
                    stos_krawedzi.append((v, u))
                    niski[v] = min(niski[v], odkrycie[u])
            if zszedl:
                continue
            stos.pop()
            if rodzic != -1:
                niski[rodzic] = min(niski[rodzic], niski[v])
                if niski[v] >= odkrycie[rodzic]:
                    wierzcholki = set()
                    while True:
                        e = stos_krawedzi.pop()
                        wierzcholki.update(e)
                        if e == (rodzic, v):
                            break
                    bloki.append(tuple(sorted(wierzcholki)))
    return bloki


class _Struktura:
    """Zapamiętane kody kierunkowe jednego grafu.

    Zadanie ('w', v, b): kod wierzchołka v widzianego z bloku b (b=-1: korzeń).
    Zadanie ('b', b, a): kod bloku b zaczepionego w a.
    Zadanie ('m', b, a, c): kod bloku b zaczepionego w a z wyróżnionym c.
    """

    def __init__(self, X: Graph, limit: int):
        self.X = X
        self.limit = limit
        self.licznik = [0]
        self.bloki = _bloki(X)
        self.bloki_wierzcholka: list[list[int]] = [[] for _ in range(X.n)]
        for i, blok in enumerate(self.bloki):
            for v in blok:
                self.bloki_wierzcholka[v].append(i)
        self._memo: dict[tuple, str] = {}
        self._orbity: list[list[int]] | None = None
        self._klucze: list[bytes] | None = None

    # --- zależności i obliczanie bez rekursji ---

    def _zaleznosci(self, zadanie: tuple) -> list[tuple]:
        if zadanie[0] == 'w':
            _, v, b = zadanie
            return [('b', c, v) for c in self.bloki_wierzcholka[v] if c != b]
        b, a = zadanie[1], zadanie[2]
        return [('w', w, b) for w in self.bloki[b] if w != a]

    def _oblicz(self, zadanie: tuple) -> str:
        if zadanie in self._memo:
            return self._memo[zadanie]
        stos = [zadanie]
        while stos:
            z = stos[-1]
            if z in self._memo:
                stos.pop()
                continue
            brak = [d for d in self._zaleznosci(z) if d not in self._memo]
            if brak:
                stos.extend(brak)
                continue
            self._memo[z] = self._wylicz(z)
            stos.pop()
        return self._memo[zadanie]

    def _wylicz(self, zadanie: tuple) -> str:
        if zadanie[0] == 'w':
            _, v, b = zadanie
            dzieci = sorted(self._memo[('b', c, v)] for c in self.bloki_wierzcholka[v] if c != b)
            return '(' + ''.join(dzieci) + ')'
        if zadanie[0] == 'b':
            return self._kod_bloku(zadanie[1], zadanie[2], None)
        return self._kod_bloku(zadanie[1], zadanie[2], zadanie[3])

    def _kod_bloku(self, b: int, a: int, wyrozniony: int | None) -> str:
        blok = self.bloki[b]
        if len(blok) == 2:
            w = blok[0] if blok[1] == a else blok[1]
            return ('f' if wyrozniony is not None else 'e') + self._memo[('w', w, b)]
        indeks = {v: i for i, v in enumerate(blok)}
        sasiedzi = [[indeks[u] for u in self.X.adjacency[v] if u in indeks] for v in blok]
        kody = ['' if v == a else self._memo[('w', v, b)] for v in blok]
        # odległość od zaczepienia wewnątrz bloku
        odl = [-1] * len(blok)
        odl[indeks[a]] = 0
        fala = [indeks[a]]
        while fala:
            nastepna = []
            for v in fala:
                for u in sasiedzi[v]:
                    if odl[u] < 0:
                        odl[u] = odl[v] + 1
                        nastepna.append(u)
            fala = nastepna
        klucze = []
        for i, v in enumerate(blok):
            rola = 0 if v == a else (1 if v == wyrozniony else 2)
            klucze.append((rola, odl[i], kody[i]))
        kolory0 = _kolory_z_kluczy(klucze)
        cert, etykiety = _Przeszukiwanie(sasiedzi, kolory0, self.licznik, self.limit).uruchom()
        porzadek = sorted(range(len(blok)), key=etykiety.__getitem__)
        krawedzie = ','.join(f'{p}-{q}' for p, q in cert)
        return (
            ('m' if wyrozniony is not None else 'b') + str(len(blok)) + '.' + krawedzie + '.'
            + ''.join(kody[i] for i in porzadek[1:])
        )

    # --- kody ukorzenione ---

    def kod_ukorzeniony(self, x: int) -> str:
        return self._oblicz(('w', x, -1))

    def kod_dwukrotny(self, x: int, y: int) -> str:
        wspolny = next(b for b in self.bloki_wierzcholka[x] if y in self.bloki[b])
        dzieci = [self._oblicz(('b', c, x)) for c in self.bloki_wierzcholka[x] if c != wspolny]
        klucz = ('m', wspolny, x, y)
        if klucz not in self._memo:
            for d in self._zaleznosci(('b', wspolny, x)):
                self._oblicz(d)
            self._memo[klucz] = self._wylicz(klucz)
        dzieci.append(self._memo[klucz])
        return '(' + ''.join(sorted(dzieci)) + ')'

    def klucze(self) -> list[bytes]:
        if self._klucze is None:
            self._klucze = [WERSJA + b'R' + self.kod_ukorzeniony(v).encode('ascii') for v in self.X.vertices()]
        return self._klucze

    def orbity(self) -> list[list[int]]:
        if self._orbity is None:
            grupy: dict[bytes, list[int]] = {}
            for v, k in enumerate(self.klucze()):
                grupy.setdefault(k, []).append(v)
            self._orbity = [grupy[k] for k in sorted(grupy)]
            logger.debug("Graf n=%d: %d orbit, %d węzłów przeszukiwania",
                         self.X.n, len(self._orbity), self.licznik[0])
        return self._orbity


@lru_cache(maxsize=256)
def _struktura(X: Graph, limit: int) -> _Struktura:
    return _Struktura(X, limit)


def _limit(limit_wezlow: int | None) -> int:
    return domyslny_limit_wezlow() if limit_wezlow is None else limit_wezlow


# ============================================================
# OPERACJE
# ============================================================

def canonical_rooted(R: RootedGraph, limit_wezlow: int | None = None) -> RootedClass:
    """Klasa [X_x, x] – zależy tylko od składowej korzenia."""
    return RootedClass(_struktura(R.graph, _limit(limit_wezlow)).klucze()[R.root])


def canonical_birooted(B: BirootedGraph, limit_wezlow: int | None = None) -> BirootedClass:
    kod = _struktura(B.graph, _limit(limit_wezlow)).kod_dwukrotny(B.root, B.coroot)
    return BirootedClass(WERSJA + b'B' + kod.encode('ascii'))


def canonical_unrooted(X: Graph, limit_wezlow: int | None = None) -> bytes:
    """Klucz klasy izomorfizmu grafu spójnego (najmniejszy klucz ukorzeniony)."""
    if not is_connected(X):
        raise GraphError('Klucz nieukorzeniony zdefiniowany tylko dla grafu spójnego')
    return WERSJA + b'G' + min(_struktura(X, _limit(limit_wezlow)).klucze())[2:]


def rho(A: RootedGraph, B: RootedGraph, limit_wezlow: int | None = None) -> Fraction:
    """Ultrametryka: 0 dla izomorficznych, inaczej 2^{-r}, r – największy zgodny promień."""
    if canonical_rooted(A, limit_wezlow) == canonical_rooted(B, limit_wezlow):
        return Fraction(0)
    s = 1
    while True:
        kula_a = ball(A.graph, A.root, s)
        kula_b = ball(B.graph, B.root, s)
        if canonical_rooted(kula_a, limit_wezlow) != canonical_rooted(kula_b, limit_wezlow):
            return Fraction(1, 2 ** (s - 1))
        s += 1


def automorphism_orbits(X: Graph, limit_wezlow: int | None = None) -> list[list[int]]:
    """Podział V(X) na orbity Aut(X), komórki w porządku kluczy kanonicznych."""
    return [list(o) for o in _struktura(X, _limit(limit_wezlow)).orbity()]


def rooted_classes(X: Graph, limit_wezlow: int | None = None) -> dict[RootedClass, list[int]]:
    """Rcc(X): klasa → orbita (posortowana lista wierzchołków)."""
    struktura = _struktura(X, _limit(limit_wezlow))
    klucze = struktura.klucze()
    return {RootedClass(klucze[o[0]]): list(o) for o in struktura.orbity()}


def birooted_classes(X: Graph, limit_wezlow: int | None = None) -> dict[BirootedClass, list[tuple[int, int]]]:
    """BRcc(X): klasa → uporządkowane pary sąsiednich wierzchołków."""
    struktura = _struktura(X, _limit(limit_wezlow))
    wynik: dict[BirootedClass, list[tuple[int, int]]] = {}
    for a in X.vertices():
        for b in X.adjacency[a]:
            klasa = BirootedClass(WERSJA + b'B' + struktura.kod_dwukrotny(a, b).encode('ascii'))
            wynik.setdefault(klasa, []).append((a, b))
    return dict(sorted(wynik.items()))


def stabilizer_orbit_count(X: Graph, a: int, b: int, limit_wezlow: int | None = None) -> int:
    """|G_a b| = #{y ∈ N(a) : [X,a,y] = [X,a,b]}."""
    if not is_connected(X):
        raise GraphError('Orbity stabilizatora liczone tylko dla grafu spójnego')
    wzorzec = canonical_birooted(BirootedGraph(X, a, b), limit_wezlow)
    return sum(
        1 for y in X.adjacency[a]
        if canonical_birooted(BirootedGraph(X, a, y), limit_wezlow) == wzorzec
    )


def is_rigid(X: Graph, limit_wezlow: int | None = None) -> bool:
    return all(len(o) == 1 for o in automorphism_orbits(X, limit_wezlow))

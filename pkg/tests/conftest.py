"""
Wspólne strategie hypothesis i pomocnicze wyrocznie networkx dla testów.
"""

import os
import sys

import networkx as nx
from hypothesis import HealthCheck, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher
from pytest import fixture

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from config import _cfg  # noqa: E402
from graph_core import Graph  # noqa: E402

settings.register_profile(
    'grafy', deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile('grafy')


@fixture(autouse=True)
def bez_nadpisan():
    yield
    _cfg().clear_overrides()


# ============================================================
# STRATEGIE
# ============================================================

@st.composite
def spojne_grafy(draw, min_n: int = 1, max_n: int = 12, delta: int = 8) -> Graph:
    """Losowe drzewo rozpinające plus kilka dodatkowych krawędzi, stopnie ≤ delta."""
    n = draw(st.integers(min_n, max_n))
    stopien = [0] * n
    krawedzie = set()
    for v in range(1, n):
        u = draw(st.sampled_from([u for u in range(v) if stopien[u] < delta]))
        krawedzie.add((u, v))
        stopien[u] += 1
        stopien[v] += 1
    if n > 1:
        pary = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n))
        for u, v in pary:
            u, v = min(u, v), max(u, v)
            if u != v and (u, v) not in krawedzie and stopien[u] < delta and stopien[v] < delta:
                krawedzie.add((u, v))
                stopien[u] += 1
                stopien[v] += 1
    return Graph.from_edges(n, sorted(krawedzie), delta)


@st.composite
def dowolne_grafy(draw, max_n: int = 10, delta: int = 8) -> Graph:
    """Graf być może niespójny (także z wierzchołkami izolowanymi)."""
    n = draw(st.integers(1, max_n))
    stopien = [0] * n
    krawedzie = set()
    pary = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    for u, v in pary:
        u, v = min(u, v), max(u, v)
        if u != v and (u, v) not in krawedzie and stopien[u] < delta and stopien[v] < delta:
            krawedzie.add((u, v))
            stopien[u] += 1
            stopien[v] += 1
    return Graph.from_edges(n, sorted(krawedzie), delta)


@st.composite
def ukorzenione(draw, max_n: int = 12):
    X = draw(spojne_grafy(max_n=max_n))
    return X, draw(st.integers(0, X.n - 1))


@st.composite
def przenumerowane(draw, max_n: int = 10):
    """Graf, losowa permutacja wierzchołków i graf po przenumerowaniu."""
    X = draw(spojne_grafy(max_n=max_n))
    perm = draw(st.permutations(list(range(X.n))))
    return X, perm, przenumeruj(X, perm)


# ============================================================
# POMOCNICZE
# ============================================================

def przenumeruj(X: Graph, perm) -> Graph:
    return Graph.from_edges(X.n, [(perm[u], perm[v]) for u, v in X.edges()], X.delta)


def do_nx(X: Graph, korzen: int | None = None) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from((v, {'korzen': v == korzen}) for v in X.vertices())
    g.add_edges_from(X.edges())
    return g


def izomorficzne_ukorzenione(X: Graph, x: int, Y: Graph, y: int) -> bool:
    return nx.is_isomorphic(do_nx(X, x), do_nx(Y, y), node_match=lambda a, b: a['korzen'] == b['korzen'])


def orbity_brute_force(X: Graph) -> set[frozenset[int]]:
    """Orbity Aut(X) z pełnego wyliczenia automorfizmów (małe grafy)."""
    g = do_nx(X)
    obrazy = {v: {v} for v in X.vertices()}
    for phi in GraphMatcher(g, g).isomorphisms_iter():
        for v, w in phi.items():
            obrazy[v].add(w)
    return {frozenset(o) for o in obrazy.values()}


def orbity_przez_izomorfizm(X: Graph) -> set[frozenset[int]]:
    """Orbity z testów izomorfizmu ukorzenionego par (dla grafów z dużą grupą automorfizmów)."""
    orbity: list[list[int]] = []
    for v in X.vertices():
        for o in orbity:
            if izomorficzne_ukorzenione(X, o[0], X, v):
                o.append(v)
                break
        else:
            orbity.append([v])
    return {frozenset(o) for o in orbity}

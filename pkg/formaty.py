"""
Formaty wymiany: JSON grafów, specyfikacji rodzin, miar, ilorazów i rozkładów kul.

Liczby wymierne zapisujemy jako napisy "licznik/mianownik" w postaci skróconej
albo jako pary pól num/den – nigdy jako float.

Użycie:
    from formaty import wczytaj_json, graf_z_json, miara_do_json
    dane = wczytaj_json('t34.json')
    iloraz = iloraz_z_json(dane)
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any

from bledy import FormatError
from families import FamilySpec, Generated, generate
from graph_core import Graph
from limits import BallDistribution
from measures import SustainedMeasure, UnimodularSolution, Verdict
from quotient import (
    ConsistencyVerdict,
    Judicial,
    JudicialityVerdict,
    LabeledQuotient,
    QuotientEdge,
    RayMeasure,
    RayQuotient,
)

logger = logging.getLogger(__name__)


# ============================================================
# POMOCNICZE
# ============================================================

def ulamek(x: Fraction | int) -> str:
    x = Fraction(x)
    return f'{x.numerator}/{x.denominator}'


def z_ulamka(tekst: Any) -> Fraction:
    try:
        if isinstance(tekst, bool) or isinstance(tekst, float):
            raise TypeError
        return Fraction(tekst)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise FormatError(f'Niepoprawna liczba wymierna {tekst!r} (oczekiwano "licznik/mianownik")') from e


def _num_den(obj: dict) -> Fraction:
    try:
        return Fraction(int(obj['num']), int(obj['den']))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise FormatError(f'Wpis {obj!r} nie ma poprawnych pól num/den') from e


def wczytaj_json(sciezka: str | Path) -> Any:
    try:
        with open(sciezka, encoding='utf-8') as f:
            return json.load(f)
    except OSError as e:
        raise FormatError(f'Nie można odczytać pliku {sciezka}: {e}') from e
    except json.JSONDecodeError as e:
        raise FormatError(f'Plik {sciezka} nie jest poprawnym JSON-em: {e}') from e


def zapisz_json(obj: Any, sciezka: str | Path | None = None) -> str:
    """Deterministyczny zapis (sort_keys); bez ścieżki tylko zwraca tekst."""
    tekst = json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2)
    if sciezka is not None:
        Path(sciezka).write_text(tekst + '\n', encoding='utf-8')
        logger.info("Zapisano %s", sciezka)
    return tekst


# ============================================================
# GRAFY I RODZINY
# ============================================================

def graf_do_json(X: Graph) -> dict:
    return {'delta': X.delta, 'vertices': X.n, 'edges': [list(e) for e in X.edges()]}


def rodzina_z_json(obj: dict) -> FamilySpec:
    if not isinstance(obj, dict) or 'family' not in obj:
        raise FormatError('Specyfikacja rodziny wymaga pola "family"')
    params = {k: v for k, v in obj.items() if k != 'family'}
    return FamilySpec(obj['family'], params)


def rodzina_do_json(spec: FamilySpec) -> dict:
    return {'family': spec.name, **spec.params}


def wygenerowany_z_json(obj: dict, delta: int | None = None) -> Generated:
    """Graf JSON albo specyfikacja rodziny (z korzeniem, jeśli rodzina go ma)."""
    if isinstance(obj, dict) and 'family' in obj:
        return generate(rodzina_z_json(obj), delta)
    return Generated(graf_z_json(obj, delta), obj.get('root') if isinstance(obj, dict) else None)


def graf_z_json(obj: dict, delta: int | None = None) -> Graph:
    if isinstance(obj, dict) and 'family' in obj:
        return generate(rodzina_z_json(obj), delta).graph
    try:
        n = int(obj['vertices'])
        krawedzie = [(int(u), int(v)) for u, v in obj['edges']]
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f'Graf JSON wymaga pól "vertices" i "edges" (lista par): {e}') from e
    return Graph.from_edges(n, krawedzie, obj.get('delta', delta))


# ============================================================
# MIARY
# ============================================================

def miara_z_json(obj: dict, delta: int | None = None, host: Graph | None = None) -> SustainedMeasure:
    """{"host": …, "mass": [{"class_rep_vertex", "num", "den"}]}; klasy bez wpisu mają masę 0.

    Podany `host` zastępuje pole "host" pliku.
    """
    if not isinstance(obj, dict) or 'mass' not in obj or (host is None and 'host' not in obj):
        raise FormatError('Miara JSON wymaga pól "host" i "mass"')
    if host is None:
        host = graf_z_json(obj['host'], delta)
    masy = {}
    for wpis in obj['mass']:
        try:
            v = int(wpis['class_rep_vertex'])
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f'Wpis masy {wpis!r} bez "class_rep_vertex"') from e
        masy[v] = _num_den(wpis)
    return SustainedMeasure.from_vertices(host, masy)


def miara_do_json(m: SustainedMeasure, host: dict | None = None) -> dict:
    return {
        'host': host if host is not None else graf_do_json(m.host),
        'mass': [
            {'class_rep_vertex': m.representative(k), 'class_key': k.hex(),
             'num': masa.numerator, 'den': masa.denominator, 'value': ulamek(masa)}
            for k, masa in m.mass.items()
        ],
    }


def werdykt_do_json(w: Verdict) -> dict:
    wynik = {'verdict': 'PASS' if w.passed else 'FAIL'}
    if w.witness is not None:
        wynik['witness'] = {
            'class_key': w.witness.class_key,
            'pair': list(w.witness.pair),
            'left': ulamek(w.witness.left),
            'right': ulamek(w.witness.right),
        }
    return wynik


def rozwiazanie_do_json(r: UnimodularSolution) -> dict:
    return {
        'unique': r.unique,
        'components': [
            {
                'multiplicity': s.multiplicity,
                'graph': graf_do_json(s.graph),
                'measure': [
                    {'class_key': k.hex(), 'num': v.numerator, 'den': v.denominator}
                    for k, v in s.measure.items()
                ],
                'equations': [
                    {'a': a.hex(), 'b': b.hex(), 'm_ab': m_ab, 'm_ba': m_ba}
                    for a, b, m_ab, m_ba in s.equations
                ],
            }
            for s in r.components
        ],
    }


# ============================================================
# ILORAZY
# ============================================================

def _etykieta(obj: dict, pole: str) -> int:
    try:
        wartosc = obj[pole]
    except KeyError as e:
        raise FormatError(f'Krawędź ilorazu {obj!r} bez pola {pole!r}') from e
    if isinstance(wartosc, bool) or not isinstance(wartosc, int):
        raise FormatError(f'Etykieta {pole}={wartosc!r} musi być liczbą całkowitą')
    return wartosc


def iloraz_z_json(obj: dict, delta: int | None = None) -> LabeledQuotient | RayQuotient:
    """Iloraz skończony albo promień (gdy "ray_tail" nie jest null).

    Dla promienia krawędzie muszą łączyć kolejne orbity listy "orbits" – tworzą prefiks.
    """
    if not isinstance(obj, dict) or 'orbits' not in obj:
        raise FormatError('Iloraz JSON wymaga pola "orbits"')
    orbity = list(obj['orbits'])
    krawedzie = [
        QuotientEdge(e.get('a'), e.get('b'), _etykieta(e, 'm_ab'), _etykieta(e, 'm_ba'))
        for e in obj.get('edges', [])
    ]
    ogon = obj.get('ray_tail')
    if ogon is None:
        return LabeledQuotient(tuple(orbity), tuple(krawedzie), delta)
    if len(krawedzie) != len(orbity) - 1:
        raise FormatError('Promień: liczba krawędzi prefiksu musi być o 1 mniejsza od liczby orbit')
    prefiks = []
    for i, e in enumerate(krawedzie):
        if (e.a, e.b) != (orbity[i], orbity[i + 1]):
            raise FormatError(f'Promień: krawędź nr {i} musi łączyć {orbity[i]!r} z {orbity[i + 1]!r}')
        prefiks.append((e.m_ab, e.m_ba))
    return RayQuotient(tuple(prefiks), ((_etykieta(ogon, 'm_fwd'), _etykieta(ogon, 'm_bwd')),), delta)


def iloraz_do_json(Q: LabeledQuotient | RayQuotient) -> dict:
    if isinstance(Q, RayQuotient):
        orbity = list(range(1, len(Q.prefix) + 2))
        return {
            'orbits': orbity,
            'edges': [{'a': i, 'b': i + 1, 'm_ab': f, 'm_ba': b} for i, (f, b) in enumerate(Q.prefix, start=1)],
            'ray_tail': {'m_fwd': Q.tail[0], 'm_bwd': Q.tail[1]},
        }
    return {
        'orbits': list(Q.orbits),
        'edges': [{'a': e.a, 'b': e.b, 'm_ab': e.m_ab, 'm_ba': e.m_ba} for e in Q.edges],
        'ray_tail': None,
    }


def zgodnosc_do_json(w: ConsistencyVerdict) -> dict:
    wynik = {'verdict': 'PASS' if w.passed else 'FAIL'}
    if not w.passed:
        wynik['cycle'] = list(w.cycle)
        wynik['product'] = ulamek(w.product)
    return wynik


def miara_ilorazu_do_json(miara: dict) -> dict:
    return {str(o): ulamek(m) for o, m in miara.items()}


def praworzadnosc_do_json(w: JudicialityVerdict, ile_wierzcholkow_promienia: int = 20) -> dict:
    if isinstance(w, Judicial):
        if isinstance(w.measure, RayMeasure):
            miara = {str(i): ulamek(w.measure.mass(i)) for i in range(1, ile_wierzcholkow_promienia + 1)}
            return {'verdict': 'Judicial', 'measure': miara, 'tail_ratio': ulamek(w.measure.ratio)}
        return {'verdict': 'Judicial', 'measure': miara_ilorazu_do_json(w.measure)}
    wynik = {'verdict': 'Lawless', 'reason': w.reason.value}
    if w.cycle:
        wynik['cycle'] = list(w.cycle)
        wynik['product'] = ulamek(w.product)
    return wynik


# ============================================================
# ROZKŁADY KUL
# ============================================================

def rozklad_do_json(d: BallDistribution) -> dict:
    wynik = {
        'radius': d.radius,
        'freq': [{'key': k.hex(), 'num': c.numerator, 'den': c.denominator} for k, c in d.freq.items()],
    }
    if d.slack:
        wynik['slack'] = ulamek(d.slack)
    return wynik

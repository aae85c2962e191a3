#!/usr/bin/env python3
"""
Interfejs wiersza poleceń do obliczeń na miarach unimodularnych.

Kody wyjścia: 0 – sukces / PASS / Judicial, 1 – FAIL / Lawless, 2 – błąd użycia lub danych.
Logi trafiają na stderr, wynik (tekst albo --json) na stdout.

Użycie:
    python cli.py law --family T_ball --n 2 --json
    python cli.py quotient judicial przyklady/t34.json
    python cli.py weak-limit --family T_ball --target mu_s --r 2 --n-min 4 --n-max 12
    python cli.py counterexample avg-degree --stages 3
    python cli.py config set delta 10
"""

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any

import pandas as pd

from bledy import FamilyError
from canonical import automorphism_orbits, canonical_rooted, rho
from config import ConfigManager, _cfg
from families import (
    FAMILIES,
    FamilySpec,
    Generated,
    counterexample_ball,
    counterexample_indices,
    generate,
)
from formaty import (
    graf_do_json,
    iloraz_z_json,
    miara_do_json,
    miara_ilorazu_do_json,
    miara_z_json,
    praworzadnosc_do_json,
    rodzina_do_json,
    rozklad_do_json,
    rozwiazanie_do_json,
    ulamek,
    wczytaj_json,
    werdykt_do_json,
    wygenerowany_z_json,
    z_ulamka,
    zgodnosc_do_json,
)
from graph_core import RootedGraph, ball
from limits import (
    average_degree,
    ball_distribution,
    convergence_report,
    dirac,
    mixture,
    mu_s,
    mu_s_bar,
    negligence_bound,
    negligence_delta,
    report_frame,
    z_oracle,
)
from measures import (
    check_unimodular_criterion,
    check_unimodular_definitional,
    constant_function,
    degree_function,
    indicator_function,
    law,
    solve_unimodular,
)
from quotient import (
    Judicial,
    LabeledQuotient,
    decide_judicial,
    path_product_measure,
    validate_consistency,
)
from raport_xlsx import Arkusz, generuj_xlsx

logger = logging.getLogger(__name__)

KOD_OK, KOD_PORAZKA, KOD_BLEDU = 0, 1, 2


# ============================================================
# WYJŚCIE
# ============================================================

def _kolor(tekst: str, kod: str) -> str:
    """ANSI tylko na terminalu i bez NO_COLOR."""
    if os.environ.get('NO_COLOR') is not None or not sys.stdout.isatty():
        return tekst
    return f'\033[{kod}m{tekst}\033[0m'


def _werdykt_tekst(ok: bool, tak: str = 'PASS', nie: str = 'FAIL') -> str:
    return _kolor(tak, '32') if ok else _kolor(nie, '31')


def _wypisz(args, obj_json: Any, tekst: str | None = None):
    if args.json or tekst is None:
        print(json.dumps(obj_json, ensure_ascii=False, sort_keys=True, indent=2))
    else:
        print(tekst)


# ============================================================
# WEJŚCIE
# ============================================================

def _spec_z_argumentow(args) -> FamilySpec | None:
    if not getattr(args, 'family', None):
        return None
    params = {}
    for nazwa in ('n', 'm', 'k', 'group'):
        wartosc = getattr(args, nazwa, None)
        if wartosc is not None:
            params[nazwa] = wartosc
    return FamilySpec(args.family, params)


def _wejscie(args, plik: str | None = None) -> tuple[Generated, dict]:
    """Graf z pliku (graf JSON lub specyfikacja rodziny) albo z --family/--n."""
    plik = plik if plik is not None else getattr(args, 'graph', None)
    spec = _spec_z_argumentow(args)
    if spec is not None:
        return generate(spec), rodzina_do_json(spec)
    if plik is None:
        raise FamilyError('Podaj plik grafu albo --family z parametrami')
    dane = wczytaj_json(plik)
    wynik = wygenerowany_z_json(dane)
    return wynik, dane if 'family' in dane else graf_do_json(wynik.graph)


def _dodaj_rodzine(p: argparse.ArgumentParser, plik: bool = True):
    if plik:
        p.add_argument('graph', nargs='?', default=None, help='Plik JSON grafu lub specyfikacji rodziny')
    p.add_argument('--family', choices=FAMILIES, default=None, help='Rodzina grafów')
    p.add_argument('--n', type=int, default=None, help='Parametr n rodziny')
    p.add_argument('--m', type=int, default=None, help='Promień kuli kontrprzykładu')
    p.add_argument('--k', type=int, default=None, help='Liczba liści gwiazdy')
    p.add_argument('--group', default=None, help='Grupa Cayleya: Z, S3, D4, Q8')


def _xlsx(args, arkusz: Arkusz):
    if getattr(args, 'xlsx', None):
        generuj_xlsx([arkusz], args.xlsx)


# ============================================================
# PODKOMENDY
# ============================================================

def _tabela_prawa(m) -> pd.DataFrame:
    return pd.DataFrame({
        'klasa': [k.hex()[:16] for k in m.mass],
        'reprezentant': [m.representative(k) for k in m.mass],
        'orbita': [len(m.classes[k]) for k in m.mass],
        'masa': [ulamek(v) for v in m.mass.values()],
    })


def cmd_law(args) -> int:
    wynik, host = _wejscie(args)
    psi = law(wynik.graph)
    df = _tabela_prawa(psi)
    _xlsx(args, Arkusz('Prawo', f'Prawo Ψ(X), |V| = {wynik.graph.n}', [('Klasy i masy', df)]))
    _wypisz(args, miara_do_json(psi, host), df.to_string(index=False))
    return KOD_OK


def cmd_orbits(args) -> int:
    wynik, _ = _wejscie(args)
    orbity = automorphism_orbits(wynik.graph)
    df = pd.DataFrame({'orbita': range(len(orbity)), 'rozmiar': [len(o) for o in orbity],
                       'wierzcholki': [' '.join(map(str, o)) for o in orbity]})
    _xlsx(args, Arkusz('Orbity', f'Orbity Aut(X), |V| = {wynik.graph.n}', [('Orbity', df)]))
    _wypisz(args, {'orbits': orbity}, df.to_string(index=False))
    return KOD_OK


def cmd_check_unimodular(args) -> int:
    wynik, _ = _wejscie(args)
    m = miara_z_json(wczytaj_json(args.measure), host=wynik.graph)
    werdykt = check_unimodular_criterion(m) if args.criterion else check_unimodular_definitional(m)
    tekst = _werdykt_tekst(werdykt.passed)
    if werdykt.witness is not None:
        w = werdykt.witness
        tekst += f'  świadek: klasa {w.class_key[:16]}…, para {w.pair}, {w.left} ≠ {w.right}'
    _wypisz(args, werdykt_do_json(werdykt), tekst)
    return KOD_OK if werdykt.passed else KOD_PORAZKA


def cmd_solve_unimodular(args) -> int:
    wynik, _ = _wejscie(args)
    rozwiazanie = solve_unimodular(wynik.graph)
    linie = []
    for i, s in enumerate(rozwiazanie.components):
        linie.append(f'składowa {i}: |V| = {s.graph.n}, krotność {s.multiplicity}')
        linie.extend(f'  {k.hex()[:16]}…  {ulamek(v)}' for k, v in s.measure.items())
    if not rozwiazanie.unique:
        linie.append(f'sympleks wymiaru {len(rozwiazanie.components) - 1}: Σ w_k Ψ(X^k)')
    _wypisz(args, rozwiazanie_do_json(rozwiazanie), '\n'.join(linie))
    return KOD_OK


def cmd_quotient(args) -> int:
    Q = iloraz_z_json(wczytaj_json(args.file))
    if args.action == 'validate':
        if not isinstance(Q, LabeledQuotient):
            _wypisz(args, {'verdict': 'PASS'}, _werdykt_tekst(True))
            return KOD_OK
        werdykt = validate_consistency(Q)
        tekst = _werdykt_tekst(werdykt.passed)
        if not werdykt.passed:
            tekst += f'  cykl {list(werdykt.cycle)}, iloczyn {werdykt.product}'
        _wypisz(args, zgodnosc_do_json(werdykt), tekst)
        return KOD_OK if werdykt.passed else KOD_PORAZKA
    if args.action == 'measure':
        if not isinstance(Q, LabeledQuotient):
            raise FamilyError('Miara iloczynów po ścieżce wymaga ilorazu skończonego')
        base = args.base if args.base is not None else Q.orbits[0]
        miara = path_product_measure(Q, base, z_ulamka(args.p))
        _wypisz(args, miara_ilorazu_do_json(miara),
                json.dumps(miara_ilorazu_do_json(miara), ensure_ascii=False))
        return KOD_OK
    werdykt = decide_judicial(Q, strict_reason=args.strict_reason)
    obj = praworzadnosc_do_json(werdykt)
    if isinstance(werdykt, Judicial):
        _wypisz(args, obj, json.dumps(obj['measure'], ensure_ascii=False, separators=(',', ':')))
        return KOD_OK
    _wypisz(args, obj, f'{_kolor("Lawless", "31")}({werdykt.reason.value})')
    return KOD_PORAZKA


def cmd_dist(args) -> int:
    g1, _ = _wejscie(args, args.g1)
    g2 = wygenerowany_z_json(wczytaj_json(args.g2))
    wartosc = rho(RootedGraph(g1.graph, args.root1), RootedGraph(g2.graph, args.root2))
    _wypisz(args, {'rho': ulamek(wartosc)}, ulamek(wartosc))
    return KOD_OK


def cmd_ball_dist(args) -> int:
    wynik, _ = _wejscie(args)
    rozklad = ball_distribution(wynik.graph, args.r)
    tekst = '\n'.join(f'{k.hex()[:16]}…  {ulamek(c)}' for k, c in rozklad.freq.items())
    _wypisz(args, rozklad_do_json(rozklad), tekst)
    return KOD_OK


def _cel(args):
    if args.target == 'mu_s':
        return mu_s()
    if args.target == 'mu_s_bar':
        return mu_s_bar()
    if args.target == 'delta_z':
        return dirac(z_oracle())
    w = z_ulamka(args.weight)
    return mixture([(w, mu_s()), (1 - w, mu_s_bar())])


def _rodzina_indeksowana(nazwa: str):
    klucz = 'm' if nazwa == 'avg_degree_counterexample' else 'n'
    return lambda n: generate(FamilySpec(nazwa, {klucz: n})).graph


def cmd_weak_limit(args) -> int:
    cel = _cel(args)
    wiersze = convergence_report(_rodzina_indeksowana(args.family), cel, args.r,
                                 range(args.n_min, args.n_max + 1))
    df = report_frame(wiersze)
    _xlsx(args, Arkusz('Zbieżność', f'TV({args.family}, {args.target}), r = {args.r}',
                       [('Odległości', df)], ['tv_przyblizenie – wartość przybliżona']))
    if args.output:
        df.to_csv(args.output, index=False)
        logger.info("Zapisano %s", args.output)
    if args.json:
        _wypisz(args, [{'n': w.n, 'radius': w.radius, 'tv_distance': ulamek(w.tv_distance)} for w in wiersze])
    elif not args.output:
        print(df.to_csv(index=False), end='')
    return KOD_OK


def cmd_negligence(args) -> int:
    wynik, _ = _wejscie(args, None)
    X = wynik.graph
    if args.f == 'deg':
        f = degree_function(X.delta)
    elif args.f == 'const':
        f = constant_function(Fraction(1))
    else:
        wzorzec = args.ref_vertex if args.ref_vertex is not None else X.n - 1
        f = indicator_function(canonical_rooted(ball(X, wzorzec, args.r)), args.r)
    delta = negligence_delta(X, args.delete, f)
    ograniczenie = negligence_bound(X, args.delete, f)
    _wypisz(args, {'delta': ulamek(delta), 'bound': ulamek(ograniczenie)},
            f'delta = {ulamek(delta)} (≈{float(delta):.6f}), ograniczenie = {ulamek(ograniczenie)}')
    return KOD_OK


def cmd_counterexample(args) -> int:
    wiersze = []
    for n in range(1, args.stages + 1):
        k, l = counterexample_indices(n)
        y = counterexample_ball(k - 1) if k > 1 else None
        z = counterexample_ball(l - 1)
        wiersze.append({
            'n': n, 'k_n': k, 'l_n': l,
            'V_Y': y.n if y else None, 'avg_Y': ulamek(average_degree(y)) if y else None,
            'V_Z': z.n, 'avg_Z': ulamek(average_degree(z)),
        })
    df = pd.DataFrame(wiersze)
    _xlsx(args, Arkusz('Średni stopień', 'Kule kontrprzykładu: Y_n = X_{k_n−1}, Z_n = X_{l_n−1}',
                       [('Etapy', df)]))
    _wypisz(args, wiersze, df.to_string(index=False))
    return KOD_OK


def cmd_generate(args) -> int:
    wynik, _ = _wejscie(args)
    obj = graf_do_json(wynik.graph)
    if wynik.root is not None:
        obj['root'] = wynik.root
    print(json.dumps(obj, sort_keys=True))
    return KOD_OK


def cmd_config(args) -> int:
    cfg: ConfigManager = _cfg()
    if args.action == 'set':
        cfg.set(args.key, args.value)
        logger.info("Ustawiono %s = %s", args.key, args.value)
        return KOD_OK
    if args.category:
        wpisy = cfg.get_by_category(args.category)
    else:
        wpisy = [w for kat in cfg.categories() for w in cfg.get_by_category(kat)]
    obj = {w['klucz']: w['wartosc_raw'] for w in wpisy}
    tekst = '\n'.join(f"{w['klucz']:<18} {w['wartosc_raw']:<24} {w['opis']}" for w in wpisy)
    _wypisz(args, obj, tekst)
    return KOD_OK


# ============================================================
# PARSER
# ============================================================

def zbuduj_parser() -> argparse.ArgumentParser:
    wspolne = argparse.ArgumentParser(add_help=False)
    wspolne.add_argument('--json', action='store_true', help='Wynik jako JSON')
    wspolne.add_argument('--verbose', '-v', action='store_true', help='Szczegółowe logowanie')
    wspolne.add_argument('--delta', type=int, default=None, help='Ograniczenie stopnia Δ')
    wspolne.add_argument('--threads', type=int, default=None, help='Liczba procesów')
    wspolne.add_argument('--node-budget', type=int, default=None, help='Limit węzłów kanonizacji')

    parser = argparse.ArgumentParser(description='Miary unimodularne na grafach – obliczenia dokładne')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('law', parents=[wspolne], help='Prawo Ψ(X)')
    _dodaj_rodzine(p)
    p.add_argument('--xlsx', default=None, help='Zapisz tabelę do XLSX')
    p.set_defaults(func=cmd_law)

    p = sub.add_parser('orbits', parents=[wspolne], help='Orbity Aut(X)')
    _dodaj_rodzine(p)
    p.add_argument('--xlsx', default=None)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser('check-unimodular', parents=[wspolne], help='Weryfikacja unimodularności miary')
    p.add_argument('graph', help='Plik JSON grafu-nośnika')
    p.add_argument('measure', help='Plik JSON miary')
    tryb = p.add_mutually_exclusive_group()
    tryb.add_argument('--criterion', action='store_true', help='Kryterium |G_a b|μ[a] = |G_b a|μ[b]')
    tryb.add_argument('--definitional', action='store_true', help='Równanie transportu masy (domyślne)')
    p.set_defaults(func=cmd_check_unimodular, family=None)

    p = sub.add_parser('solve-unimodular', parents=[wspolne], help='Miary unimodularne podtrzymywane przez X')
    _dodaj_rodzine(p)
    p.set_defaults(func=cmd_solve_unimodular)

    p = sub.add_parser('quotient', parents=[wspolne], help='Ilorazy orbit')
    p.add_argument('action', choices=['validate', 'measure', 'judicial'])
    p.add_argument('file', help='Plik JSON ilorazu')
    p.add_argument('--base', default=None, help='Orbita bazowa (measure)')
    p.add_argument('--p', default='1', help='Masa orbity bazowej (measure)')
    p.add_argument('--strict-reason', action='store_true', help='Powód NullOnly dla ogona (m, m)')
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser('dist', parents=[wspolne], help='Ultrametryka ρ')
    p.add_argument('g1')
    p.add_argument('root1', type=int)
    p.add_argument('g2')
    p.add_argument('root2', type=int)
    p.set_defaults(func=cmd_dist, family=None)

    p = sub.add_parser('ball-dist', parents=[wspolne], help='Rozkład typów r-kul')
    _dodaj_rodzine(p)
    p.add_argument('--r', type=int, required=True)
    p.set_defaults(func=cmd_ball_dist)

    p = sub.add_parser('weak-limit', parents=[wspolne], help='Raport zbieżności (CSV)')
    p.add_argument('--family', choices=FAMILIES, required=True)
    p.add_argument('--target', choices=['mu_s', 'mu_s_bar', 'delta_z', 'mixture'], required=True)
    p.add_argument('--weight', default='2/3', help='Waga μ_S w mieszance')
    p.add_argument('--r', type=int, default=None)
    p.add_argument('--n-min', type=int, default=1)
    p.add_argument('--n-max', type=int, required=True)
    p.add_argument('--output', default=None, help='Plik CSV')
    p.add_argument('--xlsx', default=None)
    p.set_defaults(func=cmd_weak_limit)

    p = sub.add_parser('negligence', parents=[wspolne], help='Różnica całek po usunięciu podgrafu')
    _dodaj_rodzine(p, plik=False)
    p.add_argument('--delete', type=int, nargs='*', default=[], help='Usuwane wierzchołki')
    p.add_argument('--f', choices=['deg', 'const', 'indicator'], default='deg')
    p.add_argument('--r', type=int, default=None, help='Promień funkcji wskaźnikowej')
    p.add_argument('--ref-vertex', type=int, default=None, help='Wierzchołek wzorcowej kuli wskaźnika')
    p.set_defaults(func=cmd_negligence, graph=None)

    p = sub.add_parser('counterexample', parents=[wspolne], help='Kontrprzykład średniego stopnia')
    p.add_argument('action', choices=['avg-degree'])
    p.add_argument('--stages', type=int, default=3)
    p.add_argument('--xlsx', default=None)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser('generate', parents=[wspolne], help='Graf rodziny jako JSON')
    _dodaj_rodzine(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('config', parents=[wspolne], help='Parametry w bazie konfiguracji')
    p.add_argument('action', choices=['show', 'set'])
    p.add_argument('key', nargs='?')
    p.add_argument('value', nargs='?')
    p.add_argument('--category', default=None)
    p.set_defaults(func=cmd_config)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = zbuduj_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return KOD_OK if e.code == 0 else KOD_BLEDU

    # Logowanie
    log_level = logging.DEBUG if args.verbose else logging.INFO
    logging.basicConfig(
        level=log_level,
        format='%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=sys.stderr,
    )

    cfg = _cfg()
    for klucz, wartosc in (('delta', args.delta), ('watki', args.threads), ('limit_wezlow', args.node_budget)):
        if wartosc is not None:
            cfg.override(klucz, wartosc)
    if getattr(args, 'r', 'brak') is None:
        args.r = cfg.get('promien_domyslny')
    if args.command == 'config' and args.action == 'set' and (args.key is None or args.value is None):
        print('config set wymaga KLUCZ WARTOŚĆ', file=sys.stderr)
        return KOD_BLEDU

    try:
        return args.func(args)
    except (ValueError, KeyError) as e:
        logger.error("Błąd danych wejściowych: %s", e)
        return KOD_BLEDU
    except RuntimeError as e:
        logger.error("Błąd obliczeń: %s", e)
        return KOD_BLEDU
    finally:
        cfg.clear_overrides()


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()

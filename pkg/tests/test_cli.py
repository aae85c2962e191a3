import json
from pathlib import Path

import pandas as pd
import pytest
from openpyxl import load_workbook

import cli
from cli import KOD_BLEDU, KOD_OK, KOD_PORAZKA, run
from config import ConfigManager

PRZYKLADY = Path(__file__).resolve().parent.parent / 'przyklady'


def _plik(nazwa: str) -> str:
    return str(PRZYKLADY / nazwa)


def _json(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def swiezy_config(monkeypatch):
    cfg = ConfigManager(':memory:')
    monkeypatch.setattr(cli, '_cfg', lambda: cfg)
    return cfg


# ============================================================
# ILORAZY
# ============================================================

def test_praworzadnosc_T34(capsys):
    assert run(['quotient', 'judicial', _plik('t34.json')]) == KOD_OK
    assert json.loads(capsys.readouterr().out) == {'u': '4/7', 'v': '3/7'}


def test_praworzadnosc_T324_json(capsys):
    assert run(['quotient', 'judicial', _plik('t324.json'), '--json']) == KOD_OK
    wynik = _json(capsys)
    assert wynik['verdict'] == 'Judicial'
    assert wynik['measure'] == {'u': '4/19', 'v': '3/19', 'w': '12/19'}


def test_promien_S(capsys):
    assert run(['quotient', 'judicial', _plik('s_ray.json'), '--json']) == KOD_OK
    wynik = _json(capsys)
    assert wynik['measure']['1'] == '1/2'
    assert wynik['measure']['20'] == f'1/{2 ** 20}'
    assert wynik['tail_ratio'] == '1/2'


def test_promien_drzewa_z_rodzenstwem(capsys):
    assert run(['quotient', 'judicial', _plik('barred_ray.json')]) == KOD_PORAZKA
    assert 'Lawless' in capsys.readouterr().out


def test_walidacja_trojkata(capsys):
    assert run(['quotient', 'validate', _plik('trojkat_niezgodny.json'), '--json']) == KOD_PORAZKA
    wynik = _json(capsys)
    assert wynik['verdict'] == 'FAIL'
    assert wynik['product'] == '2/1'
    assert wynik['cycle'][0] == wynik['cycle'][-1]


def test_walidacja_drzewa(capsys):
    assert run(['quotient', 'validate', _plik('t34.json')]) == KOD_OK
    assert 'PASS' in capsys.readouterr().out


def test_miara_iloczynow(capsys):
    assert run(['quotient', 'measure', _plik('t324.json'), '--base', 'v', '--p', '3/19']) == KOD_OK
    assert _json(capsys) == {'u': '4/19', 'w': '12/19', 'v': '3/19'}


# ============================================================
# MIARY NA GRAFACH SKOŃCZONYCH
# ============================================================

def test_prawo_T2(capsys):
    assert run(['law', '--family', 'T_ball', '--n', '2', '--json']) == KOD_OK
    wynik = _json(capsys)
    assert wynik['host'] == {'family': 'T_ball', 'n': 2}
    assert sorted(w['value'] for w in wynik['mass']) == ['1/10', '3/10', '3/5']


def test_prawo_z_pliku_rodziny(capsys):
    assert run(['law', _plik('t_ball_5.json'), '--json']) == KOD_OK
    assert len(_json(capsys)['mass']) == 6


def test_prawo_do_xlsx(tmp_path, capsys):
    plik = tmp_path / 'prawo.xlsx'
    assert run(['law', '--family', 'path', '--n', '3', '--xlsx', str(plik)]) == KOD_OK
    assert plik.exists()
    assert load_workbook(plik).sheetnames == ['Prawo']


@pytest.mark.parametrize('miara, tryb, kod', [
    ('p3_prawo.json', [], KOD_OK),
    ('p3_prawo.json', ['--criterion'], KOD_OK),
    ('p3_rowna.json', [], KOD_PORAZKA),
    ('p3_rowna.json', ['--criterion'], KOD_PORAZKA),
])
def test_sprawdzenie_unimodularnosci(capsys, miara, tryb, kod):
    assert run(['check-unimodular', _plik('p3.json'), _plik(miara), '--json'] + tryb) == kod
    wynik = _json(capsys)
    assert wynik['verdict'] == ('PASS' if kod == KOD_OK else 'FAIL')
    assert ('witness' in wynik) == (kod == KOD_PORAZKA)


def test_rozwiazanie_cyklu(capsys):
    assert run(['solve-unimodular', '--family', 'cycle', '--n', '5', '--json']) == KOD_OK
    wynik = _json(capsys)
    assert wynik['unique'] is True
    (skladowa,) = wynik['components']
    assert skladowa['measure'][0]['num'] == skladowa['measure'][0]['den'] == 1


def test_orbity_gwiazdy(capsys):
    assert run(['orbits', '--family', 'star', '--k', '3', '--json']) == KOD_OK
    assert sorted(_json(capsys)['orbits']) == [[0], [1, 2, 3]]


def test_odleglosc(capsys):
    assert run(['dist', _plik('p3.json'), '0', _plik('p3.json'), '2']) == KOD_OK
    assert capsys.readouterr().out.strip() == '0/1'
    assert run(['dist', _plik('p3.json'), '0', _plik('p3.json'), '1']) == KOD_OK
    assert capsys.readouterr().out.strip() == '1/1'


def test_rozklad_kul_cyklu(capsys):
    assert run(['ball-dist', '--family', 'cycle', '--n', '6', '--r', '2', '--json']) == KOD_OK
    wynik = _json(capsys)
    assert wynik['radius'] == 2
    assert [(w['num'], w['den']) for w in wynik['freq']] == [(1, 1)]


# ============================================================
# ZBIEŻNOŚĆ, POMIJALNOŚĆ, KONTRPRZYKŁAD
# ============================================================

def test_granica_sciezek_json(capsys):
    argv = ['weak-limit', '--family', 'path', '--target', 'delta_z', '--r', '1', '--n-min', '4', '--n-max', '5', '--json']
    assert run(argv) == KOD_OK
    assert [w['tv_distance'] for w in _json(capsys)] == ['1/2', '2/5']


def test_granica_do_csv(tmp_path):
    plik = tmp_path / 'raport.csv'
    argv = ['weak-limit', '--family', 'cycle', '--target', 'delta_z', '--n-min', '5', '--n-max', '7',
            '--output', str(plik)]
    assert run(argv) == KOD_OK
    df = pd.read_csv(plik)
    assert list(df['radius']) == [2, 2, 2]
    assert list(df['tv_distance']) == ['1/1', '0/1', '0/1']


def test_pomijalnosc_cyklu(capsys):
    assert run(['negligence', '--family', 'cycle', '--n', '10', '--delete', '0', '--json']) == KOD_OK
    assert _json(capsys)['delta'] == '2/9'


def test_kontrprzyklad(capsys):
    assert run(['counterexample', 'avg-degree', '--stages', '2', '--json']) == KOD_OK
    pierwszy, drugi = _json(capsys)
    assert (pierwszy['k_n'], pierwszy['l_n'], pierwszy['V_Y']) == (1, 2, None)
    assert (drugi['k_n'], drugi['l_n']) == (13, 16)
    assert (drugi['V_Y'], drugi['avg_Y'], drugi['V_Z']) == (18, '3/1', 36)


def test_generowanie(capsys):
    assert run(['generate', '--family', 'path', '--n', '3']) == KOD_OK
    wynik = _json(capsys)
    assert wynik['vertices'] == 3
    assert wynik['edges'] == [[0, 1], [1, 2]]
    assert wynik['root'] == 0


# ============================================================
# BŁĘDY I KONFIGURACJA
# ============================================================

@pytest.mark.parametrize('argv', [
    [],
    ['law', '--family', 'nieznana'],
    ['quotient', 'judicial', 'nie_ma_takiego_pliku.json'],
    ['law'],
    ['quotient', 'measure', _plik('t34.json'), '--p', 'abc'],
])
def test_bledy_uzycia(argv):
    assert run(argv) == KOD_BLEDU


def test_config_show(capsys, swiezy_config):
    assert run(['config', 'show', '--json']) == KOD_OK
    wynik = _json(capsys)
    assert wynik['delta'] == '8'
    assert wynik['epsilon_ogona'] == '1/1024'


def test_config_show_kategoria(capsys, swiezy_config):
    assert run(['config', 'show', '--category', 'Kanonizacja', '--json']) == KOD_OK
    assert set(_json(capsys)) == {'limit_wezlow', 'watki'}


def test_config_set(swiezy_config):
    assert run(['config', 'set', 'delta', '10']) == KOD_OK
    assert swiezy_config.get('delta') == 10


@pytest.mark.parametrize('argv', [
    ['config', 'set', 'delta'],
    ['config', 'set', 'nieznany', '1'],
    ['config', 'set', 'delta', 'dziesiec'],
])
def test_config_set_bledy(swiezy_config, argv):
    assert run(argv) == KOD_BLEDU
    assert swiezy_config.get('delta') == 8


def test_flaga_delta_tylko_na_czas_wywolania(swiezy_config):
    assert run(['generate', '--family', 'path', '--n', '3', '--delta', '3']) == KOD_OK
    assert swiezy_config.get('delta') == 8

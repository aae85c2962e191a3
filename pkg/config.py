#!/usr/bin/env python3
"""
ConfigManager: parametry obliczeń na grafach w bazie SQLite.

Tabela `config` przechowuje key-value z typowaniem i kategoriami.
Ścieżka bazy: zmienna środowiskowa GRAFY_KONFIG_DB; bez niej baza w pamięci
(tylko wartości domyślne, zmiany giną z procesem).

Użycie:
    from config import ConfigManager
    cfg = ConfigManager()
    delta = cfg.get('delta')
    cfg.set('limit_wezlow', 10**6)
"""

import json
import logging
import os
import sqlite3
from fractions import Fraction
from functools import lru_cache
from typing import Any

logger = logging.getLogger(__name__)

DB_PATH = os.environ.get('GRAFY_KONFIG_DB', ':memory:')

# (klucz, wartosc_domyslna, opis, kategoria, typ)
_DEFAULTS = [
    # ── Grafy ──
    ('delta', 8, 'Globalne ograniczenie stopnia Δ (K_6 doklejone do ścieżki daje stopień 7)', 'Grafy', 'int'),

    # ── Kanonizacja ──
    ('limit_wezlow', 10**7, 'Limit węzłów drzewa przeszukiwania indywidualizacji', 'Kanonizacja', 'int'),
    ('watki', 1, 'Liczba procesów przy liczeniu rozkładów kul', 'Kanonizacja', 'int'),

    # ── Granice słabe ──
    ('epsilon_ogona', '1/1024', 'Domyślna tolerancja ogona miary granicznej', 'Granice', 'fraction'),
    ('promien_domyslny', 2, 'Domyślny promień kul w raportach zbieżności', 'Granice', 'int'),

    # ── Testy i skrypty ──
    ('ziarno_losowe', 2024, 'Ziarno generatora losowych grafów w odtworz_wyniki.py', 'Skrypty', 'int'),
    ('rodziny_demo', '["T_ball", "barredLambda_ball", "Lambda_ball"]', 'Rodziny w raporcie zbieżności', 'Skrypty', 'json'),
]


class ConfigManager:
    """Zarządzanie parametrami obliczeń w SQLite."""

    def __init__(self, db_path: str = DB_PATH):
        self._db = db_path
        self._nadpisania: dict[str, Any] = {}
        self._polaczenie = sqlite3.connect(self._db, check_same_thread=False)
        self._init_db()

    def _conn(self) -> sqlite3.Connection:
        return self._polaczenie

    def _init_db(self):
        with self._conn() as conn:
            conn.execute('''
                CREATE TABLE IF NOT EXISTS config (
                    klucz TEXT PRIMARY KEY,
                    wartosc TEXT NOT NULL,
                    opis TEXT DEFAULT '',
                    kategoria TEXT DEFAULT '',
                    typ TEXT DEFAULT 'int'
                )
            ''')
            # Brakujące klucze dosiewamy, istniejących nie nadpisujemy
            conn.executemany(
                'INSERT OR IGNORE INTO config (klucz, wartosc, opis, kategoria, typ) VALUES (?, ?, ?, ?, ?)',
                [(k, str(v), o, kat, t) for k, v, o, kat, t in _DEFAULTS],
            )

    def _cast(self, value_str: str, typ: str) -> Any:
        if typ == 'int':
            return int(value_str)
        elif typ == 'fraction':
            return Fraction(value_str)
        elif typ == 'json':
            return json.loads(value_str)
        return value_str

    def _typ(self, klucz: str) -> str | None:
        row = self._conn().execute('SELECT typ FROM config WHERE klucz = ?', (klucz,)).fetchone()
        return None if row is None else row[0]

    def get(self, klucz: str, default: Any = None) -> Any:
        if klucz in self._nadpisania:
            return self._nadpisania[klucz]
        row = self._conn().execute(
            'SELECT wartosc, typ FROM config WHERE klucz = ?', (klucz,)
        ).fetchone()
        if row is None:
            return default
        return self._cast(row[0], row[1])

    def get_all(self) -> dict[str, Any]:
        rows = self._conn().execute('SELECT klucz, wartosc, typ FROM config ORDER BY klucz').fetchall()
        return {k: self._cast(v, t) for k, v, t in rows}

    def get_by_category(self, kategoria: str) -> list[dict]:
        rows = self._conn().execute(
            'SELECT klucz, wartosc, opis, kategoria, typ FROM config WHERE kategoria = ? ORDER BY klucz',
            (kategoria,),
        ).fetchall()
        return [
            {'klucz': k, 'wartosc': self._cast(v, t), 'wartosc_raw': v, 'opis': o, 'kategoria': kat, 'typ': t}
            for k, v, o, kat, t in rows
        ]

    def set(self, klucz: str, wartosc: Any):
        typ = self._typ(klucz)
        if typ is None:
            raise KeyError(f'Nieznany klucz konfiguracji: {klucz!r}')
        tekst = json.dumps(wartosc) if typ == 'json' and not isinstance(wartosc, str) else str(wartosc)
        # Walidacja przez rzutowanie, zanim wartość trafi do bazy
        try:
            self._cast(tekst, typ)
        except (ValueError, ZeroDivisionError, json.JSONDecodeError) as e:
            raise ValueError(f'Wartość {wartosc!r} nie pasuje do typu {typ} klucza {klucz!r}') from e
        with self._conn() as conn:
            conn.execute('UPDATE config SET wartosc = ? WHERE klucz = ?', (tekst, klucz))
        logger.debug("Ustawiono %s = %s", klucz, tekst)

    def set_many(self, updates: dict[str, Any]):
        for klucz, wartosc in updates.items():
            self.set(klucz, wartosc)

    def override(self, klucz: str, wartosc: Any):
        """Nadpisanie na czas procesu (flagi CLI), bez zapisu do bazy."""
        typ = self._typ(klucz)
        if typ is None:
            raise KeyError(f'Nieznany klucz konfiguracji: {klucz!r}')
        self._nadpisania[klucz] = self._cast(str(wartosc), typ)

    def clear_overrides(self):
        self._nadpisania.clear()

    def categories(self) -> list[str]:
        rows = self._conn().execute(
            'SELECT DISTINCT kategoria FROM config ORDER BY kategoria'
        ).fetchall()
        return [r[0] for r in rows]


@lru_cache(maxsize=1)
def _cfg() -> ConfigManager:
    """Wspólna instancja ConfigManager dla wartości domyślnych bibliotek."""
    return ConfigManager()


def domyslna_delta() -> int:
    return _cfg().get('delta')


def domyslny_limit_wezlow() -> int:
    return _cfg().get('limit_wezlow')


def ustawienie(klucz: str) -> Any:
    return _cfg().get(klucz)

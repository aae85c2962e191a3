"""
Eksport tabel wyników (prawa grafów, orbity, raporty zbieżności) do skoroszytu XLSX.

Każdy arkusz: nagłówek, potem sekcje z podtytułem i tabelą z DataFrame.

Użycie:
    from raport_xlsx import Arkusz, generuj_xlsx
    generuj_xlsx([Arkusz('Zbieżność T_n', 'TV(T_n, μ_S), r = 2', [('T_n', report_frame(wiersze))])],
                 'wyniki.xlsx')
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd
from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter

logger = logging.getLogger(__name__)


@dataclass
class Arkusz:
    tytul: str
    naglowek: str
    sekcje: list[tuple[str, pd.DataFrame]] = field(default_factory=list)
    uwagi: list[str] = field(default_factory=list)


def generuj_xlsx(arkusze: list[Arkusz], sciezka: str):
    """Zapisuje arkusze do pliku XLSX."""

    wb = Workbook()

    # === Style ===
    header_font = Font(name='Calibri', bold=True, size=14, color='FFFFFF')
    header_fill = PatternFill(start_color='003366', end_color='003366', fill_type='solid')
    subheader_font = Font(name='Calibri', bold=True, size=11, color='003366')
    subheader_fill = PatternFill(start_color='D6E4F0', end_color='D6E4F0', fill_type='solid')
    column_font = Font(name='Calibri', size=11, bold=True)
    value_font = Font(name='Calibri', size=11)
    note_font = Font(name='Calibri', size=10, italic=True, color='666666')
    thin_border = Border(
        left=Side(style='thin'), right=Side(style='thin'),
        top=Side(style='thin'), bottom=Side(style='thin'),
    )

    def set_col_widths(ws, widths):
        for i, w in enumerate(widths, 1):
            ws.column_dimensions[get_column_letter(i)].width = w

    def add_header_row(ws, row, text, cols):
        ws.merge_cells(start_row=row, start_column=1, end_row=row, end_column=cols)
        cell = ws.cell(row=row, column=1, value=text)
        cell.font = header_font
        cell.fill = header_fill
        cell.alignment = Alignment(horizontal='center', vertical='center')
        ws.row_dimensions[row].height = 35

    def add_subheader(ws, row, text, cols):
        ws.merge_cells(start_row=row, start_column=1, end_row=row, end_column=cols)
        cell = ws.cell(row=row, column=1, value=text)
        cell.font = subheader_font
        cell.fill = subheader_fill

    def add_row(ws, row, values, font=value_font):
        for col, value in enumerate(values, 1):
            if isinstance(value, Fraction):
                value = f'{value.numerator}/{value.denominator}'
            c = ws.cell(row=row, column=col, value=value)
            c.font = font
            c.border = thin_border
            if isinstance(value, float):
                c.number_format = '0.000000'
                c.alignment = Alignment(horizontal='right')

    for i, arkusz in enumerate(arkusze):
        ws = wb.active if i == 0 else wb.create_sheet()
        # Excel ogranicza nazwę arkusza do 31 znaków
        ws.title = arkusz.tytul[:31]
        kolumny = max([len(df.columns) for _, df in arkusz.sekcje] + [2])
        set_col_widths(ws, [14] + [24] * (kolumny - 1))

        row = 1
        add_header_row(ws, row, arkusz.naglowek, kolumny)
        row += 2
        for podtytul, df in arkusz.sekcje:
            add_subheader(ws, row, podtytul, kolumny)
            row += 1
            add_row(ws, row, list(df.columns), column_font)
            row += 1
            for wartosci in df.itertuples(index=False):
                add_row(ws, row, [v.item() if hasattr(v, 'item') else v for v in wartosci])
                row += 1
            row += 1
        for uwaga in arkusz.uwagi:
            ws.cell(row=row, column=1, value=uwaga).font = note_font
            row += 1

    wb.save(sciezka)
    logger.info("Zapisano skoroszyt %s (%d arkuszy)", sciezka, len(arkusze))

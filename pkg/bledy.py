"""
Wyjątki biblioteki miar unimodularnych.

Błędy danych wejściowych dziedziczą po ValueError (CLI → kod wyjścia 2),
błędy zasobów i stany sprzeczne z twierdzeniami po RuntimeError.
"""


# ============================================================
# GRAFY
# ============================================================

class GraphError(ValueError):
    """Niepoprawna struktura grafu."""


class UnknownVertexError(GraphError):
    """Identyfikator wierzchołka spoza zakresu 0..n-1."""


class DegreeCapError(GraphError):
    """Stopień wierzchołka przekracza ograniczenie Δ."""


class EmptyGraphError(GraphError):
    """Graf bez wierzchołków (zakazany wszędzie)."""


# ============================================================
# MIARY
# ============================================================

class MeasureError(ValueError):
    """Niepoprawna miara podtrzymywana."""


class NullComponentError(MeasureError):
    """Obcięcie do składowej o zerowej masie."""


# ============================================================
# ILORAZY
# ============================================================

class QuotientError(ValueError):
    """Zniekształcony opis ilorazu orbit."""


class InconsistentQuotientError(QuotientError):
    """Iloczyn etykiet wzdłuż cyklu różny od 1."""

    def __init__(self, komunikat: str, cykl: list | None = None, iloczyn=None):
        super().__init__(komunikat)
        self.cykl = cykl or []
        self.iloczyn = iloczyn


# ============================================================
# POZOSTAŁE
# ============================================================

class FamilyError(ValueError):
    """Złe parametry rodziny grafów lub tabela grupy."""


class FormatError(ValueError):
    """Nieczytelny plik wejściowy (JSON)."""


class CanonicalizationBudgetExceeded(RuntimeError):
    """Przekroczono limit węzłów drzewa przeszukiwania kanonizacji."""


class InternalError(RuntimeError):
    """Stan niemożliwy według twierdzeń (np. niejednoznaczny układ dla grafu skończonego)."""

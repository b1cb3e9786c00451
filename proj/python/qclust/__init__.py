"""Exact quantum cluster algebra computations.

Seed and ledger documents are dicts (or JSON text) in the same schema the
command-line tool reads. Coefficients of v = q^(1/2) come back as decimal
strings so that large integers survive the round trip.
"""

import json
from pathlib import Path

from ._qclust import (
    BudgetExceeded,
    LedgerInvalid,
    NotCompatible,
    NotDivisible,
    NotExchangeable,
    ParseError,
    QclustError,
    Seed,
    check,
    decat,
    detect_period,
    explore,
    random_compatible_pair,
)

__all__ = [
    "BudgetExceeded",
    "LedgerInvalid",
    "NotCompatible",
    "NotDivisible",
    "NotExchangeable",
    "ParseError",
    "QclustError",
    "Seed",
    "check",
    "decat",
    "detect_period",
    "explore",
    "load",
    "random_compatible_pair",
    "vpoly_at_one",
]


def load(path):
    """Read a seed or ledger document from a JSON file."""
    return json.loads(Path(path).read_text())


def vpoly_at_one(coeff):
    """Value at v = 1 of a coefficient in wire form [[exp, "c"], ...]."""
    return sum(int(c) for _, c in coeff)

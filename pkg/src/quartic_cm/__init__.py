"""Quartic Fermat points over class fields of Q(sqrt(-d)), -d = 1 (mod 8):
class invariants, Weber singular moduli and the curves behind them."""

__version__ = "0.1.0"

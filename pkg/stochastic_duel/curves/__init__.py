"""
Success probability curves and their payoff generators
"""

from .success_curve import CurveKind, SuccessCurve, INFINITE_HORIZON

__all__ = [
    "CurveKind",
    "SuccessCurve",
    "INFINITE_HORIZON"
]

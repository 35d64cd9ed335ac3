"""Locate the radius above which the full quantum fluid model admits no
pointwise symmetrizer, by bisection on the feasibility certificate.

    python3 scripts/qhd_threshold.py
"""
import math

from dissipa.models import build_qhd_full
from dissipa.structure import pointwise_symmetrizer_feasibility
from dissipa.symbolkit import FrequencyPoint


def feasible(system, r: float) -> bool:
    return bool(pointwise_symmetrizer_feasibility(system, FrequencyPoint.polar(r, [0.3, -0.5, 0.8])).feasible)


def main() -> None:
    system = build_qhd_full().system
    lo, hi = 1.0, 10.0
    assert feasible(system, lo) and not feasible(system, hi)
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if feasible(system, mid) else (lo, mid)
    exact = math.sqrt(12 + math.sqrt(180))
    print(f"bisection boundary  {0.5 * (lo + hi):.8f}")
    print(f"sqrt(12+sqrt(180))  {exact:.8f}")
    print("root of the sixth-order sign polynomial: 5.7313 (a sufficient bound, above the exact boundary)")


if __name__ == "__main__":
    main()

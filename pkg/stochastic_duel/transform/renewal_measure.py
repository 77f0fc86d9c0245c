"""
Renewal measure H(dx) = sum_k P(S_k in dx) on [0, limit) for deterministic and exponential laws
"""

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple

from .quadrature import QuadratureScheme, integrate
from ..errors import DegenerateProcessError
from ..renewal import RenewalSpec, crossing_count


@dataclass(frozen=True)
class RenewalMeasure:
    """Atoms plus an optional density, restricted to [0, limit)"""

    atoms: Tuple[Tuple[float, float], ...]
    density: Optional[Callable[[float], float]]
    limit: float
    breakpoints: Tuple[float, ...] = ()

    def integrate(
        self,
        fn: Callable[[float], float],
        scheme: QuadratureScheme,
        breakpoints: Iterable[float] = (),
    ) -> float:
        total = math.fsum(weight * fn(x) for x, weight in self.atoms)
        if self.density is not None and self.limit > 0:
            density = self.density
            total += integrate(
                lambda x: density(x) * fn(x),
                0.0,
                self.limit,
                scheme,
                tuple(self.breakpoints) + tuple(breakpoints),
            )
        return total


def renewal_measure(spec: RenewalSpec, limit: float) -> RenewalMeasure:
    """
    Renewal measure of the epochs S_0, S_1, ... below `limit`.

    Raises:
        DegenerateProcessError: cycle law deterministic(0)
    """
    delay, cycle = spec.initial_delay, spec.cycle
    if cycle.is_deterministic and cycle.value == 0:
        raise DegenerateProcessError("cycle law deterministic(0) has an infinite renewal measure")

    if delay.is_deterministic and cycle.is_deterministic:
        atoms: List[Tuple[float, float]] = []
        index = 0
        while delay.value + index * cycle.value < limit:
            atoms.append((delay.value + index * cycle.value, 1.0))
            index += 1
        return RenewalMeasure(atoms=tuple(atoms), density=None, limit=limit)

    if delay.is_deterministic:
        start, rate = delay.value, cycle.rate
        atoms = ((start, 1.0),) if start < limit else ()
        return RenewalMeasure(
            atoms=atoms,
            density=lambda x: rate if x > start else 0.0,
            limit=limit,
            breakpoints=(start,),
        )

    kappa = delay.rate
    if cycle.is_deterministic:
        step = cycle.value
        shifts = tuple(j * step for j in range(int(limit / step) + 2) if j * step < limit)

        def lattice_density(x: float) -> float:
            return math.fsum(kappa * math.exp(-kappa * (x - s)) for s in shifts if s < x)

        return RenewalMeasure(atoms=(), density=lattice_density, limit=limit, breakpoints=shifts)

    rate = cycle.rate
    return RenewalMeasure(
        atoms=(),
        density=lambda x: kappa * math.exp(-kappa * x) - rate * math.expm1(-kappa * x),
        limit=limit,
    )


def exit_atoms(spec: RenewalSpec, threshold: float) -> Tuple[float, ...]:
    """Values carrying positive probability in the law of the exit epoch"""
    delay, cycle = spec.initial_delay, spec.cycle
    if not delay.is_deterministic:
        return ()
    if delay.value >= threshold:
        return (delay.value,)
    if cycle.is_deterministic and cycle.value > 0:
        count = crossing_count(delay.value, cycle.value, threshold)
        return (delay.value + count * cycle.value,)
    return ()

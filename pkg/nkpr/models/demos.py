"""Models for the Deutsch-Jozsa and period-finding demonstrations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from nkpr.errors import ValidationError

# The four functions {0,1} -> {0,1} as (f(0), f(1)).
FUNCTION_TABLES: Dict[str, Tuple[int, int]] = {
    'f1': (0, 1),
    'f2': (1, 0),
    'f3': (0, 0),
    'f4': (1, 1),
}

CONSTANT = 'constant'
BALANCED = 'balanced'


@dataclass(frozen=True)
class BooleanFunctionSpec:
    """One of the four one-bit Boolean functions, by id."""
    id: str

    def __post_init__(self) -> None:
        if self.id not in FUNCTION_TABLES:
            raise ValidationError(f'unknown function {self.id!r}; expected one of {", ".join(FUNCTION_TABLES)}')

    @property
    def table(self) -> Tuple[int, int]:
        return FUNCTION_TABLES[self.id]

    @property
    def kind(self) -> str:
        f0, f1 = self.table
        return CONSTANT if f0 == f1 else BALANCED


@dataclass(frozen=True)
class PeriodInstance:
    """Periodic function on Z_N with period r, reduced to the offset x0 that
    the second-register measurement selects.

    Attributes:
        n: Size N of the domain
        r: Period, a divisor of N
        x0: Smallest x with f(x) = y0, in [0, r)
    """
    n: int
    r: int
    x0: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f'N must be positive, got {self.n}')
        if self.r < 1 or self.n % self.r:
            raise ValidationError(f'period {self.r} does not divide N={self.n}')
        if not 0 <= self.x0 < self.r:
            raise ValidationError(f'x0 must lie in [0, {self.r}), got {self.x0}')

    @property
    def k(self) -> int:
        """Number of periods K = N / r."""
        return self.n // self.r

    def value(self, x: int) -> int:
        """The model function f(x) = x mod r: periodic, injective on one period."""
        return x % self.r


@dataclass(frozen=True)
class PeriodOutcome:
    """One measured index and the period guessed from it.

    Attributes:
        c: Measured basis index in [0, N)
        candidate_q: Denominator of c/N in lowest terms
        success: True iff candidate_q equals the true period
    """
    c: int
    candidate_q: int
    success: bool

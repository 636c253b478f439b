"""Leading-order growth algebra and tail descriptors for radial sequences.

A radius-indexed quantity is modelled as an explicit finite prefix plus an
optional tail: an exact continuation formula for radii beyond the horizon
together with its leading-order growth class

    value(r) ~ scale * (r!)**fact * base**r * r**power * (log r)**logpow.

Growth classes support multiplication, shifting (r -> r + d), leading-order
subtraction, and partial-sum asymptotics.  They decide series divergence and
eventual inequalities between radial expressions; exact per-radius checks on
the explicit prefix are the caller's job.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

__all__ = [
    "GrowthClass",
    "ZERO_CLASS",
    "Tail",
    "PolyTail",
    "ExpTail",
    "FactorialTail",
    "ExplicitRuleTail",
    "RadialSequence",
]


@dataclass(frozen=True)
class GrowthClass:
    """Asymptotic order scale * (r!)**fact * base**r * r**power * (log r)**logpow."""

    scale: float
    fact: float = 0.0
    base: float = 1.0
    power: float = 0.0
    logpow: float = 0.0

    def __post_init__(self) -> None:
        if self.base <= 0:
            raise ValueError("exponential base must be positive")
        if self.scale == 0.0 and (self.fact or self.power or self.logpow or self.base != 1.0):
            # canonical zero
            object.__setattr__(self, "fact", 0.0)
            object.__setattr__(self, "base", 1.0)
            object.__setattr__(self, "power", 0.0)
            object.__setattr__(self, "logpow", 0.0)

    @property
    def is_zero(self) -> bool:
        return self.scale == 0.0

    def order_key(self) -> tuple:
        """Orders by growth: factorial power, then log(base), then power, then log power."""
        return (self.fact, math.log(self.base), self.power, self.logpow)

    def same_order(self, other: "GrowthClass") -> bool:
        return self.order_key() == other.order_key()

    def mul(self, other: "GrowthClass") -> "GrowthClass":
        if self.is_zero or other.is_zero:
            return ZERO_CLASS
        return GrowthClass(
            scale=self.scale * other.scale,
            fact=self.fact + other.fact,
            base=self.base * other.base,
            power=self.power + other.power,
            logpow=self.logpow + other.logpow,
        )

    def div(self, other: "GrowthClass") -> "GrowthClass":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero growth class")
        if self.is_zero:
            return ZERO_CLASS
        return GrowthClass(
            scale=self.scale / other.scale,
            fact=self.fact - other.fact,
            base=self.base / other.base,
            power=self.power - other.power,
            logpow=self.logpow - other.logpow,
        )

    def scaled(self, c: float) -> "GrowthClass":
        if c == 0.0 or self.is_zero:
            return ZERO_CLASS
        return GrowthClass(self.scale * c, self.fact, self.base, self.power, self.logpow)

    def shift(self, d: int) -> "GrowthClass":
        """Growth class of r -> value(r + d).

        (r+d)! ~ r! * r**d, base**(r+d) = base**d * base**r; polynomial and
        logarithmic factors are shift-invariant at leading order.
        """
        if self.is_zero:
            return ZERO_CLASS
        return GrowthClass(
            scale=self.scale * self.base**d,
            fact=self.fact,
            base=self.base,
            power=self.power + self.fact * d,
            logpow=self.logpow,
        )

    def add(self, other: "GrowthClass") -> Optional["GrowthClass"]:
        """Leading order of the sum; None when leading terms cancel exactly."""
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.order_key() > other.order_key():
            return self
        if self.order_key() < other.order_key():
            return other
        s = self.scale + other.scale
        if s == 0.0:
            return None
        return GrowthClass(s, self.fact, self.base, self.power, self.logpow)

    def sub(self, other: "GrowthClass") -> Optional["GrowthClass"]:
        """Leading order of the difference; None when leading terms cancel exactly."""
        return self.add(other.scaled(-1.0))

    def partial_sum(self) -> Optional["GrowthClass"]:
        """Leading order of r -> sum_{l<=r} value(l).

        Returns None for summable classes (the partial sums tend to a constant
        that the class alone does not determine).
        """
        if self.is_zero:
            return ZERO_CLASS
        if self.fact > 0:
            # super-geometric growth: the last term dominates
            return self
        if self.fact < 0:
            return None
        if self.base > 1.0:
            return self.scaled(self.base / (self.base - 1.0))
        if self.base < 1.0:
            return None
        if self.power > -1.0:
            return GrowthClass(self.scale / (self.power + 1.0), 0.0, 1.0, self.power + 1.0, self.logpow)
        if self.power == -1.0:
            if self.logpow == -1.0:
                # sum 1/(l log l) ~ log log r: below every positive log power;
                # divergent but not representable; report as unbounded log order
                return GrowthClass(self.scale, 0.0, 1.0, 0.0, 1e-9)
            if self.logpow > -1.0:
                return GrowthClass(self.scale / (self.logpow + 1.0), 0.0, 1.0, 0.0, self.logpow + 1.0)
            return None
        return None

    def diverges(self) -> bool:
        """Whether sum_r value(r) = +inf for a sequence of this leading order."""
        if self.is_zero:
            return False
        if self.fact != 0:
            return self.fact > 0
        if self.base != 1.0:
            return self.base > 1.0
        if self.power != -1.0:
            return self.power > -1.0
        return self.logpow >= -1.0

    def limit_is_zero(self) -> bool:
        if self.is_zero:
            return True
        key = self.order_key()
        return key < (0.0, 0.0, 0.0, 0.0)

    def limit_is_infinite(self) -> bool:
        if self.is_zero:
            return False
        return self.order_key() > (0.0, 0.0, 0.0, 0.0)


ZERO_CLASS = GrowthClass(0.0)


def eventually_positive(diff: Optional[GrowthClass]) -> Optional[bool]:
    """Sign of a leading-order difference for large r; None when undecided."""
    if diff is None:
        return None
    if diff.is_zero:
        return None
    return diff.scale > 0


class Tail:
    """Exact continuation of a radial sequence beyond its explicit horizon."""

    growth: GrowthClass

    def value(self, r: int) -> float:
        raise NotImplementedError

    def remainder_upper_bound(self, start: int) -> float:
        """Upper bound for sum_{l >= start} value(l); +inf when unavailable."""
        return math.inf

    def remainder_exact_or_upper(self, start: int) -> float:
        return self.remainder_upper_bound(start)


@dataclass(frozen=True)
class PolyTail(Tail):
    """value(r) = scale * (r+1)**exponent."""

    exponent: float
    scale: float = 1.0

    @property
    def growth(self) -> GrowthClass:
        return GrowthClass(self.scale, power=self.exponent)

    def value(self, r: int) -> float:
        return self.scale * float(r + 1) ** self.exponent

    def remainder_upper_bound(self, start: int) -> float:
        # integral bound for decreasing positive terms:
        # sum_{l>=start} scale*(l+1)^p <= scale*(start)^ (p+1) / (-p-1) for p < -1
        if self.scale <= 0:
            return 0.0 if self.scale == 0 else math.inf
        if self.exponent >= -1.0:
            return math.inf
        p = self.exponent
        return self.scale * float(start) ** (p + 1.0) / (-p - 1.0)


@dataclass(frozen=True)
class ExpTail(Tail):
    """value(r) = scale * base**r."""

    base: float
    scale: float = 1.0

    def __post_init__(self) -> None:
        if self.base <= 0 or self.base == 1.0:
            raise ValueError("exponential tail base must be positive and != 1")

    @property
    def growth(self) -> GrowthClass:
        return GrowthClass(self.scale, base=self.base)

    def value(self, r: int) -> float:
        return self.scale * self.base**r

    def remainder_upper_bound(self, start: int) -> float:
        if self.scale <= 0:
            return 0.0 if self.scale == 0 else math.inf
        if self.base >= 1.0:
            return math.inf
        # exact geometric sum
        return self.scale * self.base**start / (1.0 - self.base)


@dataclass(frozen=True)
class FactorialTail(Tail):
    """value(r) = scale * r! (in-memory only; has no file-format projection)."""

    scale: float = 1.0

    @property
    def growth(self) -> GrowthClass:
        return GrowthClass(self.scale, fact=1.0)

    def value(self, r: int) -> float:
        return self.scale * math.factorial(r)


@dataclass(frozen=True)
class ExplicitRuleTail(Tail):
    """Continuation by an explicit rule with a separately stated growth class.

    Used by builders whose sphere rules are exact but not of the pure
    polynomial/exponential shape (e.g. ceil((r+1)**p) for fractional p).
    """

    rule: callable
    growth_class: GrowthClass

    @property
    def growth(self) -> GrowthClass:
        return self.growth_class

    def value(self, r: int) -> float:
        return self.rule(r)


@dataclass(frozen=True)
class RadialSequence:
    """Nonnegative-prefix radial sequence: explicit values plus optional tail.

    ``values[l]`` is the term at radius l for l <= horizon; ``tail`` continues
    the sequence exactly for l > horizon.  Negative explicit entries are
    allowed only where the consumer explicitly permits them (most criteria
    require nonnegative terms and validate on use).
    """

    values: tuple
    tail: Optional[Tail] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def horizon(self) -> int:
        return len(self.values) - 1

    def value(self, l: int) -> float:
        if l < 0:
            raise IndexError("negative radius")
        if l <= self.horizon:
            return self.values[l]
        if self.tail is None:
            raise IndexError(f"radius {l} beyond horizon {self.horizon} and no tail descriptor")
        return self.tail.value(l)

    def has_value(self, l: int) -> bool:
        return 0 <= l <= self.horizon or (l > self.horizon and self.tail is not None)

    @property
    def growth(self) -> Optional[GrowthClass]:
        return self.tail.growth if self.tail is not None else None

    def partial_sum(self, r: int) -> float:
        """sum_{l<=r} value(l); r may exceed the horizon when a tail exists."""
        s = math.fsum(self.values[: min(r, self.horizon) + 1])
        if r > self.horizon:
            s += math.fsum(self.tail.value(l) for l in range(self.horizon + 1, r + 1))
        return s

    def remainder_lower_bound(self, start: int) -> float:
        """Lower bound for sum_{l>start} value(l) from explicit terms only."""
        if start >= self.horizon:
            return 0.0
        return math.fsum(self.values[start + 1 :])

    def remainder_upper_bound(self, start: int) -> float:
        """Upper bound for sum_{l>start} value(l); +inf when not certifiable."""
        if self.tail is None:
            return math.inf
        explicit = math.fsum(self.values[min(start, self.horizon) + 1 :])
        return explicit + self.tail.remainder_upper_bound(max(start + 1, self.horizon + 1))


def sequence_from_values(values: Sequence[float], tail: Optional[Tail] = None) -> RadialSequence:
    return RadialSequence(tuple(values), tail)

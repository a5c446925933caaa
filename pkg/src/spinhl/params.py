"""Parameter sets: quantum parameter, refinement, inhomogeneities, spectral variables."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .exactmath import format_rational


class InadmissibleError(ValueError):
    """Spectral variables violate the convergence bound |(u - s)/(1 - s u)| <= 1 - eps."""


@dataclass(frozen=True)
class InhomogeneitySequence:
    """s_0, ..., s_{L-1} followed by a constant tail value for every x >= L."""

    prefix: tuple = ()
    tail: Fraction = Fraction(0)

    def __call__(self, x: int):
        if x < 0:
            raise IndexError(f"column index must be nonnegative, got {x}")
        return self.prefix[x] if x < len(self.prefix) else self.tail

    def distinct_values(self) -> list:
        return list(self.prefix) + [self.tail]

    def with_first(self, value) -> "InhomogeneitySequence":
        prefix = list(self.prefix) or [self.tail]
        prefix[0] = value
        return InhomogeneitySequence(tuple(prefix), self.tail)

    @classmethod
    def constant(cls, value) -> "InhomogeneitySequence":
        return cls((), value)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.distinct_values())

    def to_json(self) -> dict:
        return {"prefix": [format_rational(v) for v in self.prefix], "tail": format_rational(self.tail)}


@dataclass(frozen=True)
class ParamSet:
    t: Fraction
    gamma: Fraction = Fraction(1)
    s: InhomogeneitySequence = field(default_factory=InhomogeneitySequence)
    u: tuple = ()
    epsilon: Fraction = Fraction(1, 10)

    def __post_init__(self):
        if self.t in (0, 1):
            raise ValueError("t must differ from 0 and 1")
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")
        object.__setattr__(self, "u", tuple(self.u))

    @property
    def s0(self):
        return self.s(0)

    def with_u(self, u: Sequence) -> "ParamSet":
        return replace(self, u=tuple(u))

    def with_gamma(self, gamma) -> "ParamSet":
        return replace(self, gamma=gamma)

    def with_s0(self, value) -> "ParamSet":
        return replace(self, s=self.s.with_first(value))

    def with_zero_s(self) -> "ParamSet":
        return replace(self, s=InhomogeneitySequence.constant(Fraction(0)))

    def as_float(self) -> "ParamSet":
        """Double-precision shadow of this parameter set."""
        s = InhomogeneitySequence(tuple(float(v) for v in self.s.prefix), float(self.s.tail))
        return ParamSet(float(self.t), float(self.gamma), s, tuple(float(v) for v in self.u), float(self.epsilon))

    def admissibility_ratio(self, u: Sequence | None = None):
        """max over i, x of |(u_i - s_x) / (1 - s_x u_i)| (exact)."""
        worst = Fraction(0)
        for ui in self.u if u is None else u:
            for sx in self.s.distinct_values():
                den = 1 - sx * ui
                if den == 0:
                    raise InadmissibleError(f"1 - s*u vanishes for u={ui}, s={sx}")
                worst = max(worst, abs((ui - sx) / den))
        return worst

    def check_admissible(self, bound=None) -> None:
        """Raise InadmissibleError unless every ratio is at most ``1 - epsilon``."""
        bound = 1 - self.epsilon if bound is None else bound
        for i, ui in enumerate(self.u):
            for sx in self.s.distinct_values():
                den = 1 - sx * ui
                r = abs((ui - sx) / den) if den else None
                if r is None or r > bound:
                    raise InadmissibleError(
                        f"|(u_{i + 1} - s)/(1 - s u_{i + 1})| = "
                        f"{'inf' if r is None else format_rational(r)} exceeds {format_rational(bound)} "
                        f"(u_{i + 1}={format_rational(ui)}, s={format_rational(sx)})"
                    )

    def check_pairwise(self) -> None:
        """Distinct u's with u_i u_j != 1 and t u_i u_j != 1 (identity side conditions)."""
        u = self.u
        for i in range(len(u)):
            for j in range(i + 1, len(u)):
                if u[i] == u[j]:
                    raise ValueError(f"u_{i + 1} and u_{j + 1} coincide")
                if u[i] * u[j] == 1 or self.t * u[i] * u[j] == 1:
                    raise ValueError(f"pole at u_{i + 1} u_{j + 1}")

    def to_json(self) -> dict:
        return {
            "t": format_rational(self.t),
            "gamma": format_rational(self.gamma),
            "s": self.s.to_json(),
            "u": [format_rational(v) for v in self.u],
            "epsilon": format_rational(self.epsilon),
        }

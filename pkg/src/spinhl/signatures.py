"""Signatures, multiplicities, interlacing and the even-multiplicity closures."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from .exactmath import nonzero
from .params import ParamSet


class Signature(tuple):
    """Weakly decreasing tuple of nonnegative integers.

    >>> Signature([3, 1, 1, 0]).mult(1)
    2
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {parts}")
        return super().__new__(cls, parts)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def mult(self, i: int) -> int:
        return self.count(i)

    @property
    def max_part(self) -> int:
        return self[0] if self else 0

    @property
    def size(self) -> int:
        return sum(self)

    def is_even(self) -> bool:
        """Every multiplicity (zeros included) is even."""
        return all(m % 2 == 0 for m in Counter(self).values())

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"

    def __repr__(self) -> str:
        return f"Signature({list(self)})"

    @classmethod
    def parse(cls, text: str) -> "Signature":
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"signature must look like [6,4,4,0], got {text!r}")
        body = text[1:-1].strip()
        if not body:
            return cls(())
        try:
            return cls(int(p) for p in body.split(","))
        except ValueError as exc:
            raise ValueError(f"bad signature {text!r}: {exc}") from None


@dataclass(frozen=True)
class GeneralizedState:
    """Occupation numbers with a possibly negative zero-column entry."""

    m0: int
    mult: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {i: m for i, m in dict(self.mult).items() if m}
        for i, m in clean.items():
            if i < 1 or m < 0:
                raise ValueError(f"multiplicity m_{i} = {m} not allowed")
        object.__setattr__(self, "mult", clean)

    @classmethod
    def of(cls, sig: Signature) -> "GeneralizedState":
        c = Counter(sig)
        m0 = c.pop(0, 0)
        return cls(m0, dict(c))


def enumerate_even(num_parts: int, max_part: int) -> list[Signature]:
    """All signatures with ``num_parts`` parts, even multiplicities and parts <= max_part.

    Ordered lexicographically decreasing; there are C(max_part + n, n) of them
    for ``num_parts = 2n``.
    """
    if num_parts <= 0 or num_parts % 2:
        raise ValueError(f"num_parts must be a positive even integer, got {num_parts}")
    if max_part < 0:
        raise ValueError("max_part must be nonnegative")
    n = num_parts // 2
    out = []
    for half in combinations_with_replacement(range(max_part, -1, -1), n):
        out.append(Signature(p for v in half for p in (v, v)))
    return out


def interlace_up(mu: Signature, nu: Signature) -> bool:
    """nu_1 >= mu_1 >= nu_2 >= ... >= mu_k >= nu_{k+1} >= 0 (len(nu) = len(mu) + 1)."""
    if len(nu) != len(mu) + 1:
        return False
    for i, m in enumerate(mu):
        if not nu[i] >= m >= nu[i + 1]:
            return False
    return nu[-1] >= 0


def even_closure_up(mu: Signature) -> Signature | None:
    """The unique even-multiplicity nu with mu interlacing into nu, if any.

    Odd-length mu pairs each odd-indexed part with a copy of itself;
    even-length mu admits no such nu.
    """
    if len(mu) % 2 == 0:
        return None
    return Signature(p for p in mu[::2] for _ in range(2))


def even_closure_down(mu: Signature) -> Signature | None:
    """The unique even-multiplicity nu with nu interlacing into mu, if any.

    Returns None when the only candidates would need a negative zero-column
    count (even-length mu).
    """
    if len(mu) % 2 == 0:
        return None
    return Signature(p for p in mu[1::2] for _ in range(2))


def c_weight(state: GeneralizedState | Signature, params: ParamSet):
    """Coefficient of ``state`` in the even vector |e; alpha>.

    Positive columns contribute prod_j (1 - s_i^2 t^{2j-2}) / (1 - t^{2j});
    the zero column uses the gamma-refined branch matching the sign of m_0.
    """
    if isinstance(state, Signature):
        state = GeneralizedState.of(state)
    t, gamma = params.t, params.gamma
    result = 1
    for i, m in sorted(state.mult.items()):
        if m % 2:
            raise ValueError(f"odd multiplicity m_{i} = {m}")
        s2 = params.s(i) ** 2
        for j in range(1, m // 2 + 1):
            result *= (1 - s2 * t ** (2 * j - 2)) / nonzero(1 - t ** (2 * j), f"1 - t^{2 * j}")
    m0 = state.m0
    if m0 % 2:
        raise ValueError(f"odd multiplicity m_0 = {m0}")
    s02 = params.s0**2
    if m0 >= 0:
        for j in range(1, m0 // 2 + 1):
            result *= (1 - s02 * gamma * t ** (2 * j - 2)) / nonzero(1 - gamma * t ** (2 * j), f"1 - gamma t^{2 * j}")
    else:
        for j in range(1, -m0 // 2 + 1):
            result *= (1 - gamma * t ** (-2 * j + 2)) / nonzero(
                1 - s02 * gamma * t ** (-2 * j), f"1 - s_0^2 gamma t^{-2 * j}"
            )
    return result


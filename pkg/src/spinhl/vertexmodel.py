"""Higher spin six vertex model: vertex weights, row transfer weights, the
lattice partition function for F_lambda, and exact Yang-Baxter / even-vector
checks.

Conventions.  A vertex weight ``w(g, j1; g2, j2)`` has ``g`` paths entering
from below, ``j1`` from the left, ``g2`` leaving on top and ``j2`` to the
right, with ``g + j1 = g2 + j2``.  Row k of the lattice carries spectral
variable ``u_k``; its bottom boundary is a signature ``mu`` and its top
boundary ``nu`` with one more part (one path enters at the left edge).
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, replace
from typing import Callable, Iterable

from .exactmath import SingularError, nonzero
from .params import ParamSet
from .report import FAIL, PASS, UNSUPPORTED, Report, timed
from .signatures import (
    Signature,
    c_weight,
    even_closure_down,
    even_closure_up,
    interlace_up,
)


@dataclass(frozen=True)
class WeightTable:
    """Powers of t (offset from the occupancy g) in the four nonzero w weights.

    stay    (g,0;g,0)    (1 - s u t^{g+stay}) / (1 - s u)
    pass_   (g,1;g,1)    (u - s t^{g+pass_}) / (1 - s u)
    absorb  (g,1;g+1,0)  (1 - t^{g+absorb}) / (1 - s u)
    emit    (g,0;g-1,1)  u^{emit_u} (1 - s^2 t^{g+emit}) / (1 - s u)

    Anything other than the default exists for mutation testing.
    """

    stay: int = 0
    pass_: int = 0
    absorb: int = 1
    emit: int = -1
    emit_u: int = 1

    def mutated(self, name: str, delta: int) -> "WeightTable":
        return replace(self, **{name: getattr(self, name) + delta})


WEIGHTS = WeightTable()
WEIGHT_EXPONENTS = ("stay", "pass_", "absorb", "emit", "emit_u")


@dataclass(frozen=True)
class CrossTable:
    """Assignment of the six-vertex R-matrix entries to cross configurations.

    A cross weight ``R_z(a, b; c, d)`` is nonzero only when ``a - b = c - d``.
    ``create`` is the weight of (0,0;1,1) and ``annihilate`` of (1,1;0,0);
    "z" names the entry (1 - t) z / (1 - z) and "1" the entry (1 - t) / (1 - z).
    """

    create: str = "z"
    annihilate: str = "1"


CROSS = CrossTable()


def weight_w(params: ParamSet, u, x: int, g: int, j1: int, g2: int, j2: int, *,
             refined: bool = False, table: WeightTable = WEIGHTS):
    """Vertex weight w_{u, s_x}(g, j1; g2, j2).

    With ``refined`` the zero column uses the gamma-deformed table, i.e.
    every occupancy power t^m becomes gamma t^m.
    """
    if g < 0 or g2 < 0 or j1 not in (0, 1) or j2 not in (0, 1):
        return 0
    if g + j1 != g2 + j2:
        return 0
    s = params.s(x)
    t = params.t
    scale = params.gamma if refined and x == 0 else 1
    den = nonzero(1 - s * u, f"1 - s_{x} u")
    if j1 == j2 == 0:
        return (1 - s * u * scale * t ** (g + table.stay)) / den
    if j1 == j2 == 1:
        return (u - s * scale * t ** (g + table.pass_)) / den
    if j1 == 1:
        return (1 - scale * t ** (g + table.absorb)) / den
    return u**table.emit_u * (1 - s * s * scale * t ** (g + table.emit)) / den


def w0gamma(params: ParamSet, u, g: int, j1: int, g2: int, j2: int, *, table: WeightTable = WEIGHTS):
    """Zero-column weight with the gamma-refined occupancy."""
    return weight_w(params, u, 0, g, j1, g2, j2, refined=True, table=table)


def conjugation_ratio(params: ParamSet, x: int, i1: int, i2: int, *, refined: bool = False):
    """(s^2;t)_{i1} (t;t)_{i2} / ((s^2;t)_{i2} (t;t)_{i1}) at column x."""
    s2 = params.s(x) ** 2
    t = params.t
    scale = params.gamma if refined and x == 0 else 1
    ratio = 1
    # only the factors between the two occupancies survive
    for m in range(min(i1, i2), max(i1, i2)):
        a = 1 - s2 * scale * t**m
        b = 1 - scale * t ** (m + 1)
        if i1 >= i2:
            ratio *= a / nonzero(b, f"(t; t) factor 1 - t^{m + 1} at column {x}")
        else:
            ratio *= b / nonzero(a, f"(s^2; t) factor 1 - s_{x}^2 t^{m}")
    return ratio


def weight_wstar(params: ParamSet, v, x: int, g: int, j1: int, g2: int, j2: int, *,
                 refined: bool = False, table: WeightTable = WEIGHTS):
    """Dual weight w*_{v, s_x}(g, j1; g2, j2) defined by conjugating w."""
    base = weight_w(params, v, x, g2, j1, g, j2, refined=refined, table=table)
    if base == 0:
        return base
    return conjugation_ratio(params, x, g, g2, refined=refined) * base


def weight_wstar_closed(params: ParamSet, v, x: int, g: int, j1: int, g2: int, j2: int):
    """Closed-form table of w*, written out independently of the conjugation."""
    s = params.s(x)
    t = params.t
    den = nonzero(1 - s * v, f"1 - s_{x} v")
    if g < 0 or g2 < 0 or g2 != g + j2 - j1:
        return 0
    if j1 == j2 == 0:
        return (1 - s * v * t**g) / den
    if j1 == j2 == 1:
        return (v - s * t**g) / den
    if j1 == 1:
        # (g+1, 1; g, 0)
        return (1 - s * s * t ** (g - 1)) / den
    # (g-1, 0; g, 1)
    return v * (1 - t**g2) / den


def weight_cross(params: ParamSet, z, i1: int, j1: int, i2: int, j2: int, *, table: CrossTable = CROSS):
    """Six-vertex cross weight R_z(i1, j1; i2, j2)."""
    t = params.t
    if i1 - j1 != i2 - j2:
        return 0
    if (i1, j1) == (i2, j2):
        if i1 == j1:
            return 1 if i1 == 0 else t
        den = nonzero(1 - z, "1 - z")
        return (1 - t * z) / den
    den = nonzero(1 - z, "1 - z")
    entries = {"z": (1 - t) * z / den, "1": (1 - t) / den}
    return entries[table.create] if i1 == 0 else entries[table.annihilate]


# --------------------------------------------------------------------------
# rows


def row_weight(params: ParamSet, u, mu: Signature, nu: Signature, *, refined: bool = False,
               table: WeightTable = WEIGHTS, weight=None):
    """Weight of one row with bottom boundary mu and top boundary nu.

    A path enters at the left edge; the horizontal occupation is
    h_{x+1} = h_x + m_x(mu) - m_x(nu).  Columns to the right of both
    boundaries carry weight 1.
    """
    w = weight or (lambda x, g, j1, g2, j2: weight_w(params, u, x, g, j1, g2, j2, refined=refined, table=table))
    mm, mn = Counter(mu), Counter(nu)
    h = 1
    result = 1
    for x in range(max(mu[:1] + nu[:1] + (0,)) + 1):
        a, b = mm[x], mn[x]
        h2 = h + a - b
        if h2 not in (0, 1):
            return 0
        if h or a or b:
            result *= w(x, a, h, b, h2)
            if result == 0:
                return result
        h = h2
    return result if h == 0 else 0


def row_weight_star(params: ParamSet, v, mu: Signature, nu: Signature, *, refined: bool = False,
                    table: WeightTable = WEIGHTS):
    """Dual row weight between mu and nu (nu has one part fewer).

    Equal to the column-wise conjugation ratio times ``row_weight(v, nu, mu)``.
    """
    base = row_weight(params, v, nu, mu, refined=refined, table=table)
    if base == 0:
        return base
    mm, mn = Counter(mu), Counter(nu)
    ratio = 1
    for x in set(mm) | set(mn):
        ratio *= conjugation_ratio(params, x, mm[x], mn[x], refined=refined)
    return ratio * base


def row_weight_star_closed(params: ParamSet, v, mu: Signature, nu: Signature):
    """Dual row weight assembled from the closed-form w* table (oracle)."""
    mm, mn = Counter(mu), Counter(nu)
    # horizontal occupations are those of the conjugated row nu -> mu
    h = 1
    result = 1
    for x in range(max(mu[:1] + nu[:1] + (0,)) + 1):
        a, b = mm[x], mn[x]
        h2 = h + b - a
        if h2 not in (0, 1):
            return 0
        result *= weight_wstar_closed(params, v, x, a, h, b, h2)
        h = h2
    return result if h == 0 else 0


class _RowCache:
    """Per-row memo of vertex weights for fixed (u, refined, table)."""

    def __init__(self, params, u, refined, table):
        self.params, self.u, self.refined, self.table = params, u, refined, table
        self.cache: dict = {}

    def __call__(self, x, g, j1, g2, j2):
        key = (x, g, j1, g2, j2)
        try:
            return self.cache[key]
        except KeyError:
            val = self.cache[key] = weight_w(self.params, self.u, x, g, j1, g2, j2,
                                             refined=self.refined, table=self.table)
            return val


def interlacing_up(mu: Signature, max_part: int) -> Iterable[Signature]:
    """Every nu with mu interlacing into nu and nu_1 <= max_part."""
    k = len(mu)
    ranges = [range(mu[0] if k else 0, max_part + 1)]
    ranges += [range(mu[i], mu[i - 1] + 1) for i in range(1, k)]
    if k:
        ranges.append(range(0, mu[-1] + 1))
    for parts in itertools.product(*ranges):
        yield Signature.__new__(Signature, parts)


def interlacing_down(nu: Signature) -> Iterable[Signature]:
    """Every mu with mu interlacing into nu."""
    ranges = [range(nu[i + 1], nu[i] + 1) for i in range(len(nu) - 1)]
    for parts in itertools.product(*ranges):
        yield Signature.__new__(Signature, parts)


def lattice_F(lam: Signature, params: ParamSet, *, refined: bool = False, table: WeightTable = WEIGHTS):
    """F_lambda(u_1..u_N) as the up-right path partition function.

    Sums over interlacing chains () < nu^1 < ... < nu^N = lambda by a memoized
    top-down recursion keyed on (row, intermediate signature).
    """
    lam = Signature(lam)
    N = len(params.u)
    if len(lam) != N:
        raise ValueError(f"lambda has {len(lam)} parts but {N} spectral variables given")
    rows = [_RowCache(params, u, refined, table) for u in params.u]
    memo: dict = {}

    def Z(k: int, nu: Signature):
        if k == 0:
            return 1
        key = (k, nu)
        if key in memo:
            return memo[key]
        total = 0
        for mu in interlacing_down(nu):
            inner = Z(k - 1, mu)
            if inner:
                total += inner * row_weight(params, params.u[k - 1], mu, nu, weight=rows[k - 1])
        memo[key] = total
        return total

    return Z(N, lam)


def lattice_F_all(params: ParamSet, max_part: int, *, refined: bool = False, table: WeightTable = WEIGHTS,
                  last_row: Callable[[Signature], Iterable[Signature]] | None = None) -> dict:
    """F_lambda for every lambda with N = len(u) parts and lambda_1 <= max_part.

    Forward transfer over rows.  ``last_row(mu)`` may restrict the targets of
    the final row (e.g. to even closures); entries for other lambda are then
    simply absent.
    """
    vec: dict = {Signature(()): 1}
    N = len(params.u)
    for k, u in enumerate(params.u):
        w = _RowCache(params, u, refined, table)
        targets = last_row if (last_row is not None and k == N - 1) else (lambda mu: interlacing_up(mu, max_part))
        nxt: dict = defaultdict(int)
        for mu, val in vec.items():
            for nu in targets(mu):
                if nu[:1] and nu[0] > max_part:
                    continue
                r = row_weight(params, u, mu, nu, weight=w)
                if r:
                    nxt[nu] += val * r
        vec = dict(nxt)
    return vec


def even_targets(mu: Signature) -> list[Signature]:
    nu = even_closure_up(mu)
    return [] if nu is None else [nu]


# --------------------------------------------------------------------------
# checks


def check_ybe_rll(params: ParamSet, u, v, cutoff: int, *, table: WeightTable = WEIGHTS,
                  cross: CrossTable = CROSS) -> Report:
    """Exact RLL relation for every boundary tuple with bottom occupancy <= cutoff.

    Runs once per distinct inhomogeneity value in ``params.s``.
    """
    report = Report("ybe", params=params.to_json(), details={"u": str(u), "v": str(v), "cutoff": cutoff})
    z = u * v
    with timed(report):
        if z == 1:
            raise SingularError("u v = 1 is a pole of the cross weights")
        worst = 0
        tuples = 0
        failures = []
        # x = len(prefix) is the first column carrying the tail value
        for x in range(len(params.s.prefix) + 1):
            @functools.cache
            def R(a, b, c, d):
                return weight_cross(params, z, a, b, c, d, table=cross)

            @functools.cache
            def W(g, j1, g2, j2, x=x):
                return weight_w(params, u, x, g, j1, g2, j2, table=table)

            @functools.cache
            def Ws(g, j1, g2, j2, x=x):
                return weight_wstar(params, v, x, g, j1, g2, j2, table=table)

            for i1, i2, j1, j2 in itertools.product((0, 1), repeat=4):
                for i3 in range(cutoff + 1):
                    j3 = i3 + j1 - j2 + i2 - i1
                    if j3 < 0:
                        continue
                    lhs = sum(
                        R(i2, i1, k2, k1) * Ws(i3, k1, k3, j1) * W(k3, k2, j3, j2)
                        for k1 in (0, 1) for k2 in (0, 1) for k3 in range(i3 + 2)
                    )
                    rhs = sum(
                        Ws(k3, i1, j3, k1) * W(i3, i2, k3, k2) * R(k2, k1, j2, j1)
                        for k1 in (0, 1) for k2 in (0, 1) for k3 in range(i3 + 3)
                    )
                    tuples += 1
                    diff = lhs - rhs
                    if diff != 0:
                        failures.append([x, i1, i2, j1, j2, i3, j3])
                        worst = max(worst, abs(diff))
        report.residual = worst
        report.verdict = PASS if not failures else FAIL
        report.details.update(tuples=tuples, failures=failures[:20])
    return report


def check_lemma_plus(mu: Signature, params: ParamSet, u=None, *, table: WeightTable = WEIGHTS) -> Report:
    """Even-vector relation c(mu+) T(mu -> mu+) = c(mu-) T*(mu -> mu-) with
    gamma-refined zero column.
    """
    mu = Signature(mu)
    u = params.u[0] if u is None else u
    report = Report("lemma-plus", params=params.to_json(), details={"mu": str(mu), "u": str(u)})
    with timed(report):
        up, down = even_closure_up(mu), even_closure_down(mu)
        if up is None or down is None:
            report.verdict = UNSUPPORTED
            report.details["reason"] = (
                "only odd-length mu with nonnegative closures are covered; "
                "the minus branch and negative zero-column states are not implemented"
            )
            return report
        assert interlace_up(mu, up) and interlace_up(down, mu)
        report.details.update(mu_plus=str(up), mu_minus=str(down))
        lhs = c_weight(up, params) * row_weight(params, u, mu, up, refined=True, table=table)
        rhs = c_weight(down, params) * row_weight_star(params, u, mu, down, refined=True, table=table)
        report.lhs, report.rhs = lhs, rhs
        report.residual = lhs - rhs
        report.verdict = PASS if lhs == rhs else FAIL
    return report

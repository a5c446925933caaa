from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from spinhl.params import InhomogeneitySequence, ParamSet
from spinhl.signatures import Signature
from spinhl.vertexmodel import (
    CROSS,
    WEIGHT_EXPONENTS,
    WEIGHTS,
    CrossTable,
    check_lemma_plus,
    check_ybe_rll,
    interlacing_down,
    interlacing_up,
    lattice_F,
    lattice_F_all,
    row_weight,
    row_weight_star,
    row_weight_star_closed,
    weight_cross,
    weight_w,
    weight_wstar,
    weight_wstar_closed,
)

F = Fraction


def test_single_variable_partition_function(base_params):
    # one path from the left edge straight up column 0: (1 - t)/(1 - s_0 u)
    p = base_params.with_u((F(1, 7),))
    assert lattice_F(Signature([0]), p) == F(35, 51)


def test_vertex_weights_frozen(base_params):
    u = F(1, 7)
    assert weight_w(base_params, u, 0, 2, 0, 1, 1) == F(37, 255)
    assert weight_w(base_params, u, 0, 2, 0, 1, 1, refined=True) == F(73, 510)
    # only column 0 is refined
    assert weight_w(base_params, u, 1, 2, 0, 1, 1, refined=True) == F(37, 255)
    # path conservation
    assert weight_w(base_params, u, 0, 2, 1, 2, 0) == 0


def test_vertex_weights_at_zero_occupancy(base_params):
    u, s, t = F(1, 7), F(1, 5), base_params.t
    den = 1 - s * u
    assert weight_w(base_params, u, 0, 0, 0, 0, 0) == 1
    assert weight_w(base_params, u, 0, 0, 1, 0, 1) == (u - s) / den
    assert weight_w(base_params, u, 0, 0, 1, 1, 0) == (1 - t) / den
    assert weight_w(base_params, u, 0, 0, 0, -1, 1) == 0


def test_row_weight_frozen(base_params):
    u = F(1, 7)
    assert row_weight(base_params, u, Signature([1]), Signature([2, 0])) == F(980, 14739)
    assert row_weight(base_params, u, Signature([1]), Signature([2, 0]), refined=True) == F(490, 14739)
    # non-interlacing boundary
    assert row_weight(base_params, u, Signature([3]), Signature([2, 0])) == 0


def test_dual_weights_closed_form(inhomogeneous_params):
    p = inhomogeneous_params
    v = F(2, 9)
    for x in range(4):
        for g, j1, j2 in itertools.product(range(5), (0, 1), (0, 1)):
            g2 = g + j2 - j1
            if g2 < 0:
                continue
            assert weight_wstar(p, v, x, g, j1, g2, j2) == weight_wstar_closed(p, v, x, g, j1, g2, j2)


def test_dual_row_closed_form(inhomogeneous_params):
    p = inhomogeneous_params
    v = F(-1, 5)
    for mu in [Signature([3, 1, 1]), Signature([2, 2, 0]), Signature([4, 0, 0])]:
        for nu in interlacing_down(mu):
            assert row_weight_star(p, v, mu, nu) == row_weight_star_closed(p, v, mu, nu)


def test_interlacing_enumeration():
    ups = set(interlacing_up(Signature([2]), 3))
    assert ups == {Signature(x) for x in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)]}
    assert set(interlacing_down(Signature([3, 1]))) == {Signature([1]), Signature([2]), Signature([3])}


def test_forward_dp_matches_recursion(inhomogeneous_params):
    allF = lattice_F_all(inhomogeneous_params, 3)
    for lam, value in allF.items():
        assert lattice_F(lam, inhomogeneous_params) == value
    assert len(allF) == 20  # C(3 + 3, 3) signatures with parts <= 3


def test_cross_weights(base_params):
    z, t = F(1, 77), base_params.t
    assert weight_cross(base_params, z, 0, 0, 0, 0) == 1
    assert weight_cross(base_params, z, 1, 1, 1, 1) == t
    assert weight_cross(base_params, z, 0, 1, 0, 1) == (1 - t * z) / (1 - z)
    assert weight_cross(base_params, z, 0, 0, 1, 1) == (1 - t) * z / (1 - z)
    assert weight_cross(base_params, z, 1, 1, 0, 0) == (1 - t) / (1 - z)
    assert weight_cross(base_params, z, 0, 1, 1, 0) == 0


def test_ybe_holds(inhomogeneous_params):
    r = check_ybe_rll(inhomogeneous_params, F(1, 7), F(-1, 5), 4)
    assert r.passed and r.residual == 0
    assert r.details["tuples"] > 0


def test_ybe_detects_swapped_cross(inhomogeneous_params):
    swapped = CrossTable(create="1", annihilate="z")
    r = check_ybe_rll(inhomogeneous_params, F(1, 7), F(-1, 5), 4, cross=swapped)
    assert not r.passed and r.details["failures"]


@pytest.mark.parametrize("name", WEIGHT_EXPONENTS)
def test_ybe_detects_weight_mutation(inhomogeneous_params, name):
    bad = WEIGHTS.mutated(name, 1)
    r = check_ybe_rll(inhomogeneous_params, F(1, 7), F(-1, 5), 4, table=bad)
    assert not r.passed


@pytest.mark.parametrize("mu", [[0], [3, 2, 2], [6, 4, 4, 3, 2, 2, 0], [5, 5, 1], [2, 0, 0]])
@pytest.mark.parametrize("gamma", [F(1), F(2), F(1, 3)])
def test_lemma_plus(inhomogeneous_params, mu, gamma):
    r = check_lemma_plus(Signature(mu), inhomogeneous_params.with_gamma(gamma))
    assert r.passed, r.details


def test_lemma_plus_even_length_is_unsupported(inhomogeneous_params):
    r = check_lemma_plus(Signature([2, 1]), inhomogeneous_params)
    assert r.verdict == "unsupported" and r.exit_code == 3


def test_lemma_plus_detects_mutation(inhomogeneous_params):
    bad = WEIGHTS.mutated("absorb", 1)
    r = check_lemma_plus(Signature([3, 2, 2]), inhomogeneous_params, table=bad)
    assert not r.passed


def test_default_tables_are_the_reference():
    assert CROSS == CrossTable("z", "1")
    assert (WEIGHTS.stay, WEIGHTS.pass_, WEIGHTS.absorb, WEIGHTS.emit, WEIGHTS.emit_u) == (0, 0, 1, -1, 1)

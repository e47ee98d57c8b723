import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from spectral_branes.branes import (
    FIXED,
    PULLBACK,
    b_divisors,
    cartan_fiber,
    dimension_audit,
    filtration,
    fm_image,
    fm_support_match,
    uni_fiber,
    uni_stratum_candidates,
)
from spectral_branes.curve_model import build_cartan_config, build_parabolic_config, delta
from spectral_branes.divisors import uni_multidegree
from spectral_branes.errors import ConfigError

C22 = build_cartan_config(2, 2)
C32 = build_cartan_config(3, 2)


def test_cartan_fiber():
    d = cartan_fiber(C22)
    assert (d.R, d.kind, d.degrees, d.dimension) == (C22.node_ids, FIXED, (0, 0), 4)
    d = cartan_fiber(C32)
    assert (d.degrees, d.dimension) == ((0, 0, 0), 6)
    with pytest.raises(ConfigError):
        cartan_fiber(build_parabolic_config((1, 2), 2))


@pytest.mark.parametrize("n,g,dim", [(2, 2, 1), (3, 2, 4), (3, 3, 10)])
def test_uni_fiber_dimension(n, g, dim):
    d = uni_fiber(build_cartan_config(n, g))
    assert d.R == frozenset() and d.kind == PULLBACK and d.dimension == dim


def test_filtration_examples():
    assert filtration(C22, (1, 1), (1, 2)).quotient_degrees == (-1, 1)
    assert filtration(C32, (2, 2, 2), (1, 2, 3)).quotient_degrees == (-2, 0, 2)
    for J in itertools.permutations((1, 2, 3)):
        assert filtration(C32, (2, 2, 2), J).quotient_degrees == (-2, 0, 2)
    with pytest.raises(ConfigError):
        filtration(C32, (2, 2, 2), (1, 1, 3))


def test_filtration_table():
    rows = filtration(C22, (1, 1), (2, 1)).to_dict()["table"]
    assert rows[0] == {"step": 1, "component": 2, "symbol": "L*O(-d12#1-d12#2)|X2", "degree": -1}
    assert rows[1]["symbol"] == "L|X1"


@settings(max_examples=100)
@given(st.data())
def test_telescoping(data):
    n = data.draw(st.integers(2, 4))
    g = data.draw(st.integers(2, 4))
    cfg = build_cartan_config(n, g)
    md = data.draw(st.lists(st.integers(-10, 10), min_size=n, max_size=n))
    J = data.draw(st.permutations(range(1, n + 1)))
    filt = filtration(cfg, md, J)
    assert sum(filt.quotient_degrees) == sum(md) - delta(cfg)


def test_b_divisor_examples():
    steps = b_divisors(C32, ["d12#1"], (1, 2, 3))
    assert (len(steps[0][0]), len(steps[0][1])) == (3, 1)
    assert (len(steps[1][0]), len(steps[1][1])) == (2, 0)
    assert steps[2] == (frozenset(), frozenset())
    for lower, upper in b_divisors(C32, [], (3, 1, 2)):
        assert upper == frozenset()


@settings(max_examples=100)
@given(st.data())
def test_b_divisor_sizes(data):
    n = data.draw(st.integers(2, 4))
    g = data.draw(st.integers(2, 3))
    cfg = build_cartan_config(n, g)
    R = data.draw(st.lists(st.sampled_from(sorted(cfg.node_ids)), unique=True))
    J = data.draw(st.permutations(range(1, n + 1)))
    steps = b_divisors(cfg, R, J)
    for i, (lower, upper) in enumerate(steps, start=1):
        assert len(lower) + len(upper) == (n - i) * (2 * g - 2)
        assert not lower & upper
    assert frozenset().union(*(u for _, u in steps)) == frozenset(R)


def test_uni_stratum_candidates():
    rows = uni_stratum_candidates(C32, ["d12#1"])
    first = rows[0]
    assert first["ordering"] == [1, 2, 3] and first["degrees"] == [3, 2, 2]
    assert first["containment_only"] is True
    assert len(rows) == 6
    rows = uni_stratum_candidates(C22, C22.node_ids)
    assert rows[0]["degrees"] == [3, 1]
    for row in uni_stratum_candidates(C32, []):
        assert row["degrees"] == [2, 2, 2]


@pytest.mark.parametrize("n,g,uni", [(2, 2, 5), (3, 2, 10), (4, 3, 33)])
def test_dimension_audit(n, g, uni):
    rec = dimension_audit(build_cartan_config(n, g))
    assert rec["brane_dimension"] == uni == rec["half_dim_Mn"]
    assert rec["lagrangian_by_count"]


def test_dimension_identity_symbolic():
    n, g = sympy.symbols("n g")
    lhs = n * g + n * (n - 1) * (g - 1) - n + 1
    assert sympy.expand(lhs - (n ** 2 * (g - 1) + 1)) == 0
    assert sympy.expand(2 * (n ** 2 * (g - 1) + 1) - (2 * n ** 2 * (g - 1) + 2)) == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fm_support_match(n):
    res = fm_support_match(build_cartan_config(n, 2))
    assert res["match"] is True
    assert res["fm_image"]["metadata"]["cohomological_degree"] == 2


def test_fm_image_differs_from_cartan_fiber():
    assert fm_image(C32).canonical() != cartan_fiber(C32).canonical()
    assert fm_image(C32).degrees == uni_multidegree(C32)

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import zeta

from phasemoments.exceptions import InvalidWeights
from phasemoments.weights import Explicit, Geometric, PowerLaw, delta, parse_weights


def test_explicit_validation():
    with pytest.raises(InvalidWeights):
        Explicit.from_list([0.7, 0.7])
    with pytest.raises(InvalidWeights):
        Explicit.from_list([-0.1, 0.5])
    assert str(Explicit.from_list([0.5, 0.5])) == "explicit:0=0.5,1=0.5"


@given(st.floats(0.01, 0.99), st.integers(0, 60))
def test_geometric_tail(r, cutoff):
    g = Geometric(r)
    direct = 1 - sum(g.weight(n) for n in range(cutoff + 1))
    assert g.tail_mass(cutoff) == pytest.approx(direct, abs=1e-12)


def test_powerlaw_normalized():
    p = PowerLaw(3.0)
    assert p.weight(0) == 0
    assert p.weight(1) == pytest.approx(1 / zeta(3.0))
    assert sum(p.weight(n) for n in range(1, 20001)) + p.tail_mass(20000) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InvalidWeights):
        PowerLaw(1.0)


def test_truncation_respects_tail():
    trunc, tail = Geometric(0.5).truncated(1e-10, max_level=256)
    assert tail <= 1e-10
    assert trunc.values.sum() + tail == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("spec,cls", [("delta:3", Explicit), ("explicit:0.5,0.5", Explicit),
                                      ("geometric:0.25", Geometric), ("powerlaw:4", PowerLaw)])
def test_parse(spec, cls):
    assert isinstance(parse_weights(spec), cls)


@pytest.mark.parametrize("spec", ["geometric:1.5", "nope:1", "explicit:", "delta:-1", "powerlaw:x"])
def test_parse_rejects(spec):
    with pytest.raises(ValueError):
        parse_weights(spec)


def test_delta():
    assert delta(4).pairs == ((4, 1.0),)
    assert np.array_equal(parse_weights("delta:4").levels, [4])

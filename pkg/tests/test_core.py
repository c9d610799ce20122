import math

import pytest
from hypothesis import given, strategies as st

from isingexact.core import (
    K_CRIT,
    DomainError,
    LatticeSpec,
    ReducedCouplings,
    dual_coupling,
    signed_logsumexp,
)


def test_critical_coupling_identities():
    assert math.sinh(2.0 * K_CRIT) == pytest.approx(1.0, abs=1e-15)
    assert math.tanh(K_CRIT) == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-15)
    assert K_CRIT == pytest.approx(0.5 * math.log(1.0 + math.sqrt(2.0)), abs=0)


@given(st.floats(min_value=0.02, max_value=5.0, allow_nan=False))
def test_dual_is_an_involution(k):
    assert dual_coupling(dual_coupling(k)) == pytest.approx(k, rel=1e-12)


@given(st.floats(min_value=0.02, max_value=5.0))
def test_dual_product_identity(k):
    assert math.sinh(2 * k) * math.sinh(2 * dual_coupling(k)) == pytest.approx(1.0, rel=1e-12)


def test_dual_fixed_point_and_monotonicity():
    assert dual_coupling(K_CRIT) == pytest.approx(K_CRIT, abs=1e-15)
    ks = [0.1, 0.3, K_CRIT, 0.7, 1.5]
    duals = [dual_coupling(k) for k in ks]
    assert duals == sorted(duals, reverse=True)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_dual_rejects_out_of_domain(bad):
    with pytest.raises(DomainError):
        dual_coupling(bad)


def test_signed_logsumexp_basic():
    log_abs, sign = signed_logsumexp([(math.log(3.0), 1), (math.log(1.0), 1)])
    assert sign == 1
    assert log_abs == pytest.approx(math.log(4.0))
    log_abs, sign = signed_logsumexp([(math.log(1.0), 1), (math.log(3.0), -1)])
    assert sign == -1
    assert log_abs == pytest.approx(math.log(2.0))


def test_signed_logsumexp_degenerate_cases():
    assert signed_logsumexp([]) == (-math.inf, 0)
    assert signed_logsumexp([(0.0, 1), (0.0, -1)]) == (-math.inf, 0)
    assert signed_logsumexp([(0.5, 0), (0.0, 1)]) == (0.0, 1)


def test_lattice_spec_validation():
    with pytest.raises(DomainError):
        LatticeSpec(0, 3)
    with pytest.raises(DomainError):
        LatticeSpec(2, 2, geometry="kagome")
    with pytest.raises(DomainError):
        LatticeSpec(2, 2, boundary="moebius")
    with pytest.raises(DomainError):
        LatticeSpec(2, 5, geometry="chain")
    assert LatticeSpec(3, 4, geometry="honeycomb").num_sites == 24
    assert LatticeSpec(3, 4).num_sites == 12


def test_couplings_must_be_finite():
    with pytest.raises(DomainError):
        ReducedCouplings(k_h=math.nan, k_v=0.1)
    with pytest.raises(DomainError):
        ReducedCouplings(k_h=0.1, k_v=0.1, h=math.inf)

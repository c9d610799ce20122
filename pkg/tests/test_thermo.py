import math

import pytest

from isingexact.core import DomainError, K_CRIT
from isingexact.spectral import kaufman_partition
from isingexact.thermo import (
    QuadratureSpec,
    critical_point_square,
    dirac_free_energy,
    fermionic_free_energy,
    internal_energy,
    onsager_free_energy,
    specific_heat,
    triangular_free_energy,
)

# frozen by an independent high-resolution run (4096 points per axis)
ONSAGER_REFERENCE = {
    0.2: 0.73453081227632633,
    0.3: 0.79055907095126265,
    0.6: 1.2101323882884123,
    0.9: 1.8007900930167553,
}


@pytest.mark.parametrize("k,want", sorted(ONSAGER_REFERENCE.items()))
def test_onsager_regression_values(k, want):
    assert onsager_free_energy(k, k) == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize("k", [0.2, 0.3, 0.6, 0.9])
def test_three_integral_forms_agree(k):
    f0 = onsager_free_energy(k, k)
    assert fermionic_free_energy(k) == pytest.approx(f0, abs=1e-10)
    assert dirac_free_energy(k) == pytest.approx(f0, abs=1e-10)


def test_three_forms_agree_at_criticality():
    f0 = onsager_free_energy(K_CRIT, K_CRIT)
    assert fermionic_free_energy(K_CRIT) == pytest.approx(f0, abs=1e-8)
    assert dirac_free_energy(K_CRIT) == pytest.approx(f0, abs=1e-8)


def test_quadrature_self_convergence_off_critical():
    for k in (0.2, 0.3, 0.7):
        a = onsager_free_energy(k, k, QuadratureSpec(points_per_axis=256))
        b = onsager_free_energy(k, k, QuadratureSpec(points_per_axis=512))
        assert abs(a - b) < 1e-9


def test_quadrature_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(points_per_axis=8)


def test_anisotropic_symmetry():
    assert onsager_free_energy(0.3, 0.8) == pytest.approx(
        onsager_free_energy(0.8, 0.3), rel=1e-15)


def test_triangular_reduces_to_square():
    assert triangular_free_energy(0.3, 0.5, 0.0) == pytest.approx(
        onsager_free_energy(0.3, 0.5), abs=1e-12)


def test_zero_coupling_entropy():
    assert triangular_free_energy(0.0, 0.0, 0.0) == math.log(2.0)


def test_finite_lattice_density_approaches_integral():
    for k in (0.3, 0.6):
        per_site = kaufman_partition(128, 128, k, k) / 128 ** 2
        assert per_site == pytest.approx(onsager_free_energy(k, k), abs=1e-4)


def test_critical_point_value():
    kc = critical_point_square()
    assert kc == pytest.approx(K_CRIT, abs=1e-14)
    assert math.sinh(2 * kc) == pytest.approx(1.0, abs=1e-13)


def test_internal_energy_continuous_through_transition():
    below = internal_energy(K_CRIT - 1e-3)
    above = internal_energy(K_CRIT + 1e-3)
    assert abs(above - below) < 5e-2


def test_internal_energy_known_value_at_criticality():
    # u = coth(2 K_c) = sqrt(2) per site in these units (f' of the isotropic lattice)
    want = 1.0 / math.tanh(2.0 * K_CRIT)
    assert internal_energy(K_CRIT) == pytest.approx(want, abs=1e-4)


def test_specific_heat_grows_logarithmically():
    q = QuadratureSpec(points_per_axis=1024)
    c_far = specific_heat(K_CRIT - 1e-2, q=q)
    c_near = specific_heat(K_CRIT - 1e-3, q=q)
    c_nearer = specific_heat(K_CRIT - 1e-4, dk=1e-5, q=q)
    assert c_nearer > c_near > c_far > 0
    # logarithmic, not power-law: another decade adds only O(1)
    assert c_nearer - c_near < 2.0 * (c_near - c_far)


def test_domain_validation():
    with pytest.raises(DomainError):
        onsager_free_energy(-0.1, 0.3)
    with pytest.raises(DomainError):
        fermionic_free_energy(0.0)
    with pytest.raises(DomainError):
        internal_energy(1e-5)

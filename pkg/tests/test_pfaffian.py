import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isingexact.core import LatticeSpec, ReducedCouplings
from isingexact.oracle import (
    MatchingWeights,
    build_lattice_graph,
    count_matchings,
    count_matchings_graph,
    enumerate_partition_graph,
)
from isingexact.pfaffian import (
    build_dimer_matrix,
    dimer_count_free,
    dimer_count_torus,
    ising_pfaffian_torus,
    ising_torus_logdet,
    pfaffian,
    pfaffian_value,
)
from isingexact.spectral import dimer_count_free as dimer_product


def _random_skew(dim, rng):
    a = rng.normal(size=(dim, dim))
    return a - a.T


def test_canonical_block_matrix():
    # Pf of the direct sum of [[0, a], [-a, 0]] blocks is the product of the a's
    vals = [2.0, -3.0, 0.5]
    a = np.zeros((6, 6))
    for i, v in enumerate(vals):
        a[2 * i, 2 * i + 1] = v
        a[2 * i + 1, 2 * i] = -v
    assert pfaffian_value(a) == pytest.approx(math.prod(vals), rel=1e-13)


@pytest.mark.parametrize("dim", list(range(2, 65, 2)))
def test_pfaffian_squared_equals_determinant(dim):
    rng = np.random.default_rng(1234 + dim)
    a = _random_skew(dim, rng)
    sign, log_mag = pfaffian(a)
    logdet = np.linalg.slogdet(a)[1]
    assert sign in (-1, 1)
    assert 2.0 * log_mag == pytest.approx(logdet, rel=1e-8)


def test_singular_matrix_flagged():
    a = np.zeros((4, 4))
    sign, log_mag = pfaffian(a)
    assert sign == 0 and log_mag == -math.inf


@given(st.permutations(range(6)))
@settings(max_examples=50, deadline=None)
def test_permutation_transforms_by_parity(perm):
    rng = np.random.default_rng(99)
    a = _random_skew(6, rng)
    p = np.eye(6)[list(perm)]
    parity = round(np.linalg.det(p))
    s0, m0 = pfaffian(a)
    s1, m1 = pfaffian(p @ a @ p.T)
    assert s1 == parity * s0
    assert m1 == pytest.approx(m0, rel=1e-10)


def test_congruence_scaling():
    # Pf(B A B^T) = det(B) Pf(A)
    rng = np.random.default_rng(5)
    a = _random_skew(8, rng)
    b = rng.normal(size=(8, 8))
    lhs = pfaffian_value(b @ a @ b.T)
    assert lhs == pytest.approx(np.linalg.det(b) * pfaffian_value(a), rel=1e-9)


# ---------------------------------------------------------------- dimers

@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 4), (4, 4), (4, 5), (6, 6)])
def test_free_dimer_count_matches_enumeration(m, n):
    w = MatchingWeights(z1=1.0, z2=1.0)
    assert dimer_count_free(m, n, w) == pytest.approx(count_matchings(m, n, w), rel=1e-10)
    assert dimer_count_free(m, n, w) == pytest.approx(dimer_product(m, n, w), rel=1e-10)


def test_free_dimer_count_weighted():
    w = MatchingWeights(z1=1.7, z2=0.4)
    for m, n in [(2, 4), (4, 3), (4, 4)]:
        assert dimer_count_free(m, n, w) == pytest.approx(count_matchings(m, n, w), rel=1e-10)


def _wrapped_grid_edges(m, n, z1, z2):
    edges = []
    for j in range(n):
        for i in range(m):
            edges.append((j * m + i, j * m + (i + 1) % m, z1))
            edges.append((j * m + i, ((j + 1) % n) * m + i, z2))
    # a side of length 2 wraps onto an existing bond: the doubled edge acts
    # as a single edge whose matching weight is the sum of the two copies
    seen = {}
    for a, b, w in edges:
        key = (min(a, b), max(a, b))
        if key[0] != key[1]:
            seen[key] = seen.get(key, 0.0) + w
    return [(a, b, w) for (a, b), w in seen.items()]


@pytest.mark.parametrize("m,n", [(2, 3), (4, 3), (3, 4), (4, 4), (2, 4)])
def test_torus_dimer_count_matches_enumeration(m, n):
    w = MatchingWeights(z1=1.0, z2=1.0)
    edges = _wrapped_grid_edges(m, n, 1.0, 1.0)
    want = count_matchings_graph(m * n, edges)
    assert dimer_count_torus(m, n, w) == pytest.approx(want, rel=1e-9)


def test_torus_dimer_count_odd_odd_is_zero():
    assert dimer_count_torus(3, 5) == 0.0


def test_dimer_matrix_is_skew():
    spec = LatticeSpec(4, 4)
    for variant in ("free", "cylinder_a", "torus1", "torus4"):
        km = build_dimer_matrix(spec, MatchingWeights(1.0, 2.0), variant)
        assert np.allclose(km.matrix, -km.matrix.T)


# ------------------------------------------------------------ ising via pfaffians

def _oracle_torus(m, n, kh, kv):
    g = build_lattice_graph(LatticeSpec(m, n), ReducedCouplings(k_h=kh, k_v=kv))
    return enumerate_partition_graph(g)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4), (3, 5)])
@pytest.mark.parametrize("kh,kv", [(0.3, 0.3), (0.3, 0.6), (0.9, 0.2)])
def test_ising_pfaffian_against_oracle(m, n, kh, kv):
    assert ising_pfaffian_torus(m, n, kh, kv) == pytest.approx(
        _oracle_torus(m, n, kh, kv), rel=1e-9)


def test_closed_form_determinant_cross_check():
    # log det from the momentum grids equals twice the Pfaffian log-magnitude;
    # ising_pfaffian_torus asserts this internally, so a finite return suffices
    z1, z2 = math.tanh(0.4), math.tanh(0.7)
    for s1, s2 in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]:
        assert math.isfinite(ising_torus_logdet(4, 3, z1, z2, s1, s2))
    assert math.isfinite(ising_pfaffian_torus(4, 3, 0.7, 0.4))

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derange import polycount as pc
from derange.oracle.linalg import monic_irreducibles


@pytest.mark.parametrize(
    "kind,q,d,want",
    [
        (pc.N, 2, 1, 1),
        (pc.N, 2, 2, 1),
        (pc.N, 2, 3, 2),
        (pc.N, 2, 4, 3),
        (pc.N, 3, 2, 3),
        (pc.N, 5, 2, 10),
        (pc.NT, 2, 1, 3),
        (pc.NS, 5, 2, 2),
        (pc.NS, 2, 4, 1),
        (pc.NS, 4, 2, 2),
        (pc.NS, 3, 4, 2),
        (pc.MS, 5, 1, 1),
        (pc.MS, 4, 1, 1),
    ],
)
def test_frozen_counts(kind, q, d, want):
    assert pc.count(kind, q, d) == want


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(min_value=1, max_value=8))
@settings(max_examples=60, deadline=None)
def test_degree_sum_identity(q, n):
    # every nonzero field element generates: sum of d*N over divisors is q^n - 1
    total = sum(d * pc.count(pc.N, q, d) for d in pc.divisors(n))
    # the count excludes the polynomial z itself
    assert total == q**n - 1


@pytest.mark.parametrize("q,d", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)])
def test_counts_match_exhaustive_irreducibles(q, d):
    table = monic_irreducibles(q, d)
    # remove z, which has zero constant term and is not counted
    polys = [f for f in table[d] if f[0] != 0]
    assert pc.count(pc.N, q, d) == len(polys)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_self_reciprocal_partition(q, d):
    # every irreducible away from z splits into conjugate-pair or self-dual types
    n = pc.count(pc.N, q, d)
    ms = pc.count(pc.MS, q, d)
    ns = pc.count(pc.NS, q, d) if d % 2 == 0 else 0
    extra = pc.char_parity_f(q) if d == 1 else 0  # z -+ 1
    assert n == 2 * ms + ns + extra


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_unitary_degree_partition(q):
    # degree-1 self-conjugate polynomials over F_{q^2}: norm-1 eigenvalues
    assert pc.count(pc.NT, q, 1) == q + 1
    # remaining linear polynomials pair up
    assert 2 * pc.count(pc.MT, q, 1) == (q * q - 1) - (q + 1)


def test_prime_power_info():
    assert pc.prime_power_info(8) == (2, 3, 1)
    assert pc.prime_power_info(9) == (3, 2, 2)
    with pytest.raises(ValueError):
        pc.prime_power_info(6)


def test_char_parity_f():
    assert pc.char_parity_f(2) == 1
    assert pc.char_parity_f(4) == 1
    assert pc.char_parity_f(3) == 2
    assert pc.char_parity_f(5) == 2

"""Very-well-poised multisum machinery: helpers, identity, bilateral forms."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qseries.coeffring import CycRat, OMEGA, OMEGA_BAR, ONE, rat
from qseries.laurent import LaurentSeries, ParamValue, Q, ZeroFactor
from qseries import vwp

W = ParamValue(OMEGA, 0)
WB = ParamValue(OMEGA_BAR, 0)
MW = ParamValue(-OMEGA, 0)
MWB = ParamValue(-OMEGA_BAR, 0)
M1 = ParamValue(CycRat(-1), 0)
P1 = ParamValue(ONE, 0)
MQ = ParamValue(CycRat(-1), 1)
Q2 = ParamValue(ONE, 2)

_POOL = [P1, M1, W, WB, MW, MWB]
_TRIPLES = [
    t for t in itertools.permutations(_POOL, 3)
    if all(t[j] not in (t[i], t[i].inv())
           for i in range(3) for j in range(i + 1, 3))
]


def same(f, g, order):
    return f.agrees_below(g, order) is None


def const(f, value):
    """Exact Laurent series equal to the scalar ``value``."""
    return (f - LaurentSeries.monomial(value)).is_zero()


# -- scalar helpers ---------------------------------------------------------------


def test_c_helper_constants():
    assert const(vwp.c_helper(W, M1), ONE)
    assert const(vwp.c_helper(W, P1), CycRat(rat(-1, 3)))
    assert const(vwp.c_helper(MW, P1), CycRat(-1))
    assert const(vwp.c_helper(MW, W), CycRat(rat(1, 2)))


def test_c_helper_q_parameter():
    # C(w, q) = -q/(1 + q + q^2), so multiplying back clears the denominator
    c = vwp.c_helper(W, Q, 12)
    poly = LaurentSeries.from_terms({0: ONE, 1: ONE, 2: ONE}, 12)
    assert same(c * poly, LaurentSeries.monomial(CycRat(-1), 1, 12), 10)
    c2 = vwp.c_helper(Q, W, 12)
    assert same(c2 * poly, LaurentSeries.monomial(ONE, 1, 12), 10)


def test_c_helper_degenerate():
    with pytest.raises(vwp.DegenerateC):
        vwp.c_helper(W, W)
    with pytest.raises(vwp.DegenerateC):
        vwp.c_helper(WB, W)  # z = 1/y


def test_d_helper_values():
    assert const(vwp.d_helper(W, M1), CycRat(12))
    assert const(vwp.d_helper(MW, M1), CycRat(4))
    assert vwp.d_helper(W, P1).is_zero()


# -- A_{k,i} recursion --------------------------------------------------------------


def test_a_coeff_base_cases():
    assert const(vwp.a_coeff(1, 1, (M1,)), ONE)
    # A_{2,2} = C(b_2, b_1), A_{2,1} = -C(b_2, b_1)
    assert const(vwp.a_coeff(2, 2, (M1, W)), ONE)
    assert const(vwp.a_coeff(2, 1, (M1, W)), CycRat(-1))


def test_a_coeff_validation():
    with pytest.raises(ValueError):
        vwp.a_coeff(2, 1, (M1,))
    with pytest.raises(ValueError):
        vwp.a_coeff(2, 3, (M1, W))
    with pytest.raises(ValueError):
        vwp.a_coeff(2, 0, (M1, W))


def test_a_coeff_rows_sum():
    # sum_i A_{k,i} * prod_{j != i} pairs is what rhs_products cancels against;
    # here just pin the k=3 row at a known tuple
    params = (M1, W, MW)
    row = [vwp.a_coeff(3, i, params) for i in (1, 2, 3)]
    for entry in row:
        assert entry.order is None  # exact constants for roots of unity


# -- the k-parameter identity --------------------------------------------------------


@pytest.mark.parametrize("params", [
    (M1,),
    (M1, W),
    (W, MW),
    (M1, W, MW),
    (P1, W, MW),
])
def test_identity_base_q(params):
    lhs = vwp.lhs_multisum(params, 30)
    rhs = vwp.rhs_products(params, 30)
    assert same(lhs, rhs, 30)


@pytest.mark.parametrize("params", [
    (Q, W),
    (P1, Q, W),
])
def test_identity_base_q2(params):
    lhs = vwp.lhs_multisum(params, 30, Q2)
    rhs = vwp.rhs_products(params, 30, Q2)
    assert same(lhs, rhs, 30)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(_TRIPLES))
def test_identity_random_triples(params):
    lhs = vwp.lhs_multisum(params, 25)
    rhs = vwp.rhs_products(params, 25)
    assert same(lhs, rhs, 25)


def test_multisum_matches_plain_sums():
    assert same(vwp.lhs_multisum((M1, W), 25),
                vwp.vwp_single_sum(W, M1, 25), 25)
    assert same(vwp.lhs_multisum((M1, W, MW), 25),
                vwp.vwp_double_sum(W, MW, M1, W, 25), 25)


# -- corollaries ----------------------------------------------------------------------


@pytest.mark.parametrize("z,y", [
    (W, M1), (W, P1), (MW, M1), (MW, P1),
    (M1, W), (M1, MW), (W, MW), (MW, W),
])
def test_corollary_k2_base_q(z, y):
    lhs, rhs = vwp.corollary_k2(y, z, Q, 30)
    assert same(lhs, rhs, 30)


@pytest.mark.parametrize("z,y", [(W, Q), (MW, Q), (Q, W), (Q, MW)])
def test_corollary_k2_base_q2(z, y):
    lhs, rhs = vwp.corollary_k2(y, z, Q2, 30)
    assert same(lhs, rhs, 30)


@pytest.mark.parametrize("x,y,z", [
    (P1, W, MW), (P1, MW, W), (M1, W, MW), (M1, MW, W),
    (MW, M1, W), (W, M1, MW), (MW, W, M1), (W, MW, M1),
    (P1, M1, W), (P1, W, M1), (P1, M1, MW), (P1, MW, M1),
])
def test_corollary_k3_base_q(x, y, z):
    lhs, rhs = vwp.corollary_k3(x, y, z, Q, 25)
    assert same(lhs, rhs, 25)


@pytest.mark.parametrize("x,y,z", [
    (P1, Q, W), (P1, Q, MW), (P1, MW, Q), (P1, W, Q),
])
def test_corollary_k3_base_q2(x, y, z):
    lhs, rhs = vwp.corollary_k3(x, y, z, Q2, 25)
    assert same(lhs, rhs, 25)


# -- bilateral series ------------------------------------------------------------------


@pytest.mark.parametrize("params", [
    (M1, W),
    (M1, W, MW),
    (M1, W, MW, MQ),
])
def test_f_bilateral_closed_form(params):
    f = vwp.f_bilateral(params, 30)
    rhs = vwp.f_consistency_rhs(params, 30)
    assert same(f, rhs, 30)


@pytest.mark.parametrize("params", [
    (M1, W),
    (M1, W, MW),
    (M1, W, MW, MQ),
])
def test_f_bilateral_recurrence(params):
    # F_k(b_1..b_k) = C(b_k, b_{k-1}) (F_{k-1}(..., b_k) - F_{k-1}(..., b_{k-1}))
    c = vwp.c_helper(params[-1], params[-2], 25)
    swapped = vwp.f_bilateral(params[:-2] + (params[-1],), 25)
    dropped = vwp.f_bilateral(params[:-1], 25)
    assert same(vwp.f_bilateral(params, 25), c * (swapped - dropped), 25)


def test_f_bilateral_zero_factor():
    with pytest.raises(ZeroFactor):
        vwp.f_bilateral((Q,), 10)  # b = q kills the n = 1 denominator


# -- finite-N truncation ----------------------------------------------------------------


def test_l_finite_base_cases():
    assert same(vwp.l_finite_n((M1, W), 0, 10), LaurentSeries.one(10), 10)
    with pytest.raises(ValueError):
        vwp.l_finite_n((M1, W), -1, 10)


def test_l_finite_stabilizes():
    limit = vwp.l_infinite((M1, W), 20)
    for big_n in (20, 25, 30):
        assert same(vwp.l_finite_n((M1, W), big_n, 20), limit, 20)


def test_l_finite_stabilizes_k3():
    limit = vwp.l_infinite((M1, W, MW), 20)
    assert same(vwp.l_finite_n((M1, W, MW), 25, 20), limit, 20)


# -- classical evaluations ----------------------------------------------------------------


@pytest.mark.parametrize("b", [M1, W, MW])
def test_bailey_evaluation(b):
    lhs, rhs = vwp.bailey_3psi3_check(b, 40)
    assert same(lhs, rhs, 40)


@pytest.mark.parametrize("x,y,z", [
    (P1, M1, W), (M1, W, MW), (P1, W, MW),
])
def test_kl_relation(x, y, z):
    report = vwp.kl_relation_check(x, y, z, 25)
    assert report.equal
    assert report.order == 25
    assert report.first_mismatch is None

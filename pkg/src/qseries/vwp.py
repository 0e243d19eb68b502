"""Very-well-poised multisum machinery.

The central object is the k-parameter identity

    sum over m_1..m_{k-1} >= 0 of
        prod_{j=2}^{k} (b_j, 1/b_j; q)_{M_{j-1}} * q^{sum (k-i) m_i}
        / prod_{j=1}^{k-1} (q b_j, q/b_j; q)_{M_j}
    = (q b_k, q/b_k; q)_inf * prod_{i=1}^{k} (1-b_i)(1-1/b_i)
        * sum_i A_{k,i} / (b_i, 1/b_i; q)_inf,

with M_j = m_1 + ... + m_j and the A_{k,i} defined by a three-branch
recursion in the scalar helpers

    C(z,y) = 1/(z + 1/z - y - 1/y),
    D(z,y) = (1-y)(1-1/y)(1-z)(1-1/z).

This module evaluates both sides exactly at specialized monomial parameters
(roots of unity times powers of q), along with the k=2 and k=3 corollaries,
the bilateral companion series F_k, its finite-N truncation L_{k,N}, the
well-poised 3-psi-3 evaluation, and the K/L double-sum exchange relation.

Every sum is truncated by an exact lower bound on term valuations: the n-th
(or (m,n)-th) term's lowest possible exponent is computed from the weight
q^(...) minus the finite total of negative exponents that the numerator
Pochhammer factors can contribute, and enumeration stops once that bound
reaches the working order.  Internally the engines run at order + slack so
the transient negative-exponent factors never eat into the trusted range;
the result is re-truncated to the requested order at the end.

All engines take the base q by default; the q -> q^2 substitutions used for
the odd-base identities pass base explicitly.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .coeffring import ONE, CycRat
from .laurent import (
    LaurentSeries,
    ParamValue,
    Q,
    ZeroFactor,
    poch_infinite,
    poch_infinite_inv,
)


class DegenerateC(ArithmeticError):
    """C(z,y) was requested with z equal to y or 1/y (denominator vanishes)."""


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an internal consistency check at a truncation order."""

    order: int
    first_mismatch: int | None

    @property
    def equal(self) -> bool:
        return self.first_mismatch is None


def as_params(params) -> tuple[ParamValue, ...]:
    """Coerce a sequence of ParamValue into a validated tuple."""
    items = tuple(params)
    if not items:
        raise ValueError("parameter vector must have k >= 1 entries")
    for p in items:
        if not isinstance(p, ParamValue):
            raise TypeError(f"expected ParamValue, got {type(p).__name__}")
    return items


class ParamVector(tuple):
    """An ordered parameter tuple (b_1, ..., b_k), k >= 1.

    Denominator nondegeneracy (no b_i * base^n = 1 inside the working range)
    is enforced where the base is known, i.e. by the Pochhammer guards inside
    the evaluation engines, which raise ZeroFactor loudly.
    """

    def __new__(cls, items):
        return super().__new__(cls, as_params(items))


def _mono(p: ParamValue) -> LaurentSeries:
    return LaurentSeries.monomial(p.coeff, p.exp)


def _param_mul(a: ParamValue, b: ParamValue) -> ParamValue:
    return ParamValue(a.coeff * b.coeff, a.exp + b.exp)


def _negative_weight(p: ParamValue, base: ParamValue) -> int:
    """Total of negative exponents over the factor family (1 - p*base^m), m >= 0."""
    slack = 0
    e = p.exp
    while e < 0:
        slack -= e
        e += base.exp
    return slack


def _numerator_slack(params, base: ParamValue) -> int:
    """Downward valuation shift available to numerator Pochhammers of params."""
    return sum(
        _negative_weight(p, base) + _negative_weight(p.inv(), base) for p in params
    )


def _apply_base_power(s: LaurentSeries, base: ParamValue, m: int) -> LaurentSeries:
    """Multiply by base^m for a monomial base c*q^e."""
    if m == 0:
        return s
    out = s.shift(base.exp * m)
    if base.coeff != ONE:
        c = base.coeff
        acc = c
        for _ in range(m - 1):
            acc = acc * c
        out = out.scale(acc)
    return out


def _pair_mul(s: LaurentSeries, p: ParamValue, base: ParamValue, m: int):
    """Multiply by (1 - p*base^m)(1 - base^m/p); None when a factor vanishes."""
    for q in (p, p.inv()):
        c, e = q.scaled(base, m)
        if c == ONE and e == 0:
            return None
        s = s.mul_one_minus(c, e)
    return s


def _pair_div(s: LaurentSeries, p: ParamValue, base: ParamValue, m: int,
              what: str) -> LaurentSeries:
    """Divide by (1 - p*base^m)(1 - base^m/p); ZeroFactor when one vanishes."""
    for q in (p, p.inv()):
        c, e = q.scaled(base, m)
        if c == ONE and e == 0:
            raise ZeroFactor(f"{what}: factor (1 - {q}*{base}^{m}) is zero")
        s = s.div_one_minus(c, e)
    return s


# -- scalar helpers -----------------------------------------------------------------


def c_helper(z: ParamValue, y: ParamValue, order: int | None = None) -> LaurentSeries:
    """C(z,y) = 1/(z + 1/z - y - 1/y) as a (possibly constant) series.

    Raises DegenerateC when z is y or 1/y, where the denominator vanishes
    identically.  A finite order is needed exactly when a parameter carries a
    power of q (the denominator is then a genuine polynomial).
    """
    if z == y or z == y.inv():
        raise DegenerateC(f"C({z}, {y}) undefined: z coincides with y or 1/y")
    denom = _mono(z) + _mono(z.inv()) - _mono(y) - _mono(y.inv())
    if denom.is_zero():  # unreachable for monomial params, kept as a guard
        raise DegenerateC(f"C({z}, {y}): denominator is identically zero")
    return denom.inverse(order)


def d_helper(z: ParamValue, y: ParamValue) -> LaurentSeries:
    """D(z,y) = (1-y)(1-1/y)(1-z)(1-1/z), an exact Laurent polynomial."""
    out = LaurentSeries.one()
    for p in (y, y.inv(), z, z.inv()):
        out = out.mul_one_minus(p.coeff, p.exp)
    return out


# -- A_{k,i} recursion ---------------------------------------------------------------


class ACoeffTable:
    """Memo table for A_{k,i} values, keyed by (k, i, parameter subsequence, order).

    The recursion re-evaluates lower rows at two different parameter lists,
    so memoization is keyed by the actual subsequence.  Safe for concurrent
    readers/writers (a lock guards insertion; values are immutable).
    """

    def __init__(self):
        self.entries: dict = {}
        self._lock = threading.Lock()

    def get_or_compute(self, key, compute):
        hit = self.entries.get(key)
        if hit is not None:
            return hit
        value = compute()
        with self._lock:
            return self.entries.setdefault(key, value)


_A_TABLE = ACoeffTable()


def a_coeff(k: int, i: int, params, order: int | None = None,
            table: ACoeffTable = _A_TABLE) -> LaurentSeries:
    """A_{k,i}(b_1,...,b_k) by the three-branch recursion.

        A_{1,1} = 1
        A_{k,k}   =  C(b_k,b_{k-1}) * A_{k-1,k-1}(b_1,...,b_{k-2},b_k)
        A_{k,k-1} = -C(b_k,b_{k-1}) * A_{k-1,k-1}(b_1,...,b_{k-1})
        A_{k,i}   =  C(b_k,b_{k-1}) * (A_{k-1,i}(b_1,...,b_{k-2},b_k)
                                       - A_{k-1,i}(b_1,...,b_{k-1}))    i <= k-2

    Constant (exact) for root-of-unity parameters; a genuine series when some
    parameter is a q-power, in which case a finite order is required.
    """
    params = as_params(params)
    if len(params) != k:
        raise ValueError(f"a_coeff expects exactly k={k} parameters, got {len(params)}")
    if not 1 <= i <= k:
        raise ValueError(f"a_coeff index i={i} outside 1..{k}")

    def compute():
        if k == 1:
            return LaurentSeries.one(order)
        c = c_helper(params[k - 1], params[k - 2], order)
        swapped = params[: k - 2] + (params[k - 1],)
        if i == k:
            return c * a_coeff(k - 1, k - 1, swapped, order, table)
        if i == k - 1:
            return -(c * a_coeff(k - 1, k - 1, params[: k - 1], order, table))
        return c * (
            a_coeff(k - 1, i, swapped, order, table)
            - a_coeff(k - 1, i, params[: k - 1], order, table)
        )

    return table.get_or_compute((k, i, params, order), compute)


# -- the k-parameter identity, both sides ---------------------------------------------


def lhs_multisum(params, order: int, base: ParamValue = Q) -> LaurentSeries:
    """The (k-1)-fold sum side of the k-parameter identity.

    Written as a product over levels j = 1..k-1 of
        G_j(M_j) = base^{M_j} (b_{j+1}, 1/b_{j+1}; base)_{M_j}
                   / (base*b_j, base/b_j; base)_{M_j}
    over weakly increasing M_1 <= M_2 <= ... <= M_{k-1}, enumerated by a DFS
    that updates the running product with O(1) binomial operations per index
    step.  Levels whose numerator hits an exactly zero factor terminate early
    (the whole subtree vanishes); ZeroFactor in a denominator propagates.
    """
    params = as_params(params)
    k = len(params)
    if k == 1:
        return LaurentSeries.one(order)
    eb = base.exp
    slack = _numerator_slack(params[1:], base)
    work = order + slack
    total = LaurentSeries.zero(work)

    def step(j: int, m: int, cur: LaurentSeries):
        # multiply by G_j(m+1)/G_j(m): one base weight, numerator pair at
        # index m, denominator pair at index m+1
        cur = _apply_base_power(cur, base, 1)
        cur = _pair_mul(cur, params[j], base, m)
        if cur is None:
            return None
        return _pair_div(cur, params[j - 1], base, m + 1, "lhs_multisum denominator")

    def descend(j: int, m_start: int, wsum: int, pref: LaurentSeries):
        nonlocal total
        cur = pref
        for m in range(m_start):  # raise level j from index 0 to the parent's index
            cur = step(j, m, cur)
            if cur is None:
                return
        m = m_start
        while eb * (wsum + (k - j) * m) - slack < order:
            if j == k - 1:
                total = total + cur
            else:
                descend(j + 1, m, wsum + m, cur)
            cur = step(j, m, cur)
            if cur is None:
                return
            m += 1

    descend(1, 0, 0, LaurentSeries.one(work))
    return total.require_order(order)


def rhs_products(params, order: int, base: ParamValue = Q) -> LaurentSeries:
    """The infinite-product side of the k-parameter identity.

    Implemented in the cancelled form

        (base*b_k, base/b_k; base)_inf *
        sum_i A_{k,i} * prod_{j != i} (1-b_j)(1-1/b_j)
              / (base*b_i, base/b_i; base)_inf,

    obtained by pushing the (1-b_i)(1-1/b_i) prefactors through
    (b_i, 1/b_i; base)_inf = (1-b_i)(1-1/b_i)(base*b_i, base/b_i; base)_inf.
    This is the unique form that stays regular when some b_i = 1 (the factors
    then vanish rather than divide by zero), which the x = 1 specializations
    genuinely need.
    """
    params = as_params(params)
    k = len(params)
    work = order + 2 + 2 * sum(abs(p.exp) for p in params)
    bk = params[-1]
    prefix = poch_infinite(_param_mul(base, bk), base, work) * poch_infinite(
        _param_mul(base, bk.inv()), base, work
    )
    total = LaurentSeries.zero(work)
    for i in range(1, k + 1):
        term = a_coeff(k, i, params, work)
        for j, p in enumerate(params, start=1):
            if j == i:
                continue
            term = term.mul_one_minus(p.coeff, p.exp)
            pi = p.inv()
            term = term.mul_one_minus(pi.coeff, pi.exp)
        bi = params[i - 1]
        term = term * poch_infinite_inv(_param_mul(base, bi), base, work)
        term = term * poch_infinite_inv(_param_mul(base, bi.inv()), base, work)
        total = total + term
    return (prefix * total).require_order(order)


# -- single / double sums in corollary shape -------------------------------------------


def vwp_single_sum(num: ParamValue, den: ParamValue, order: int,
                   base: ParamValue = Q) -> LaurentSeries:
    """sum_{n>=0} base^n (num, 1/num; base)_n / (base*den, base/den; base)_n."""
    eb = base.exp
    slack = _negative_weight(num, base) + _negative_weight(num.inv(), base)
    work = order + slack
    t = LaurentSeries.one(work)
    total = t
    n = 0
    while eb * (n + 1) - slack < order:
        t = _apply_base_power(t, base, 1)
        t = _pair_mul(t, num, base, n)
        if t is None:
            break
        t = _pair_div(t, den, base, n + 1, "single-sum denominator")
        total = total + t
        n += 1
    return total.require_order(order)


def vwp_double_sum(num_outer: ParamValue, num_inner: ParamValue,
                   den_outer: ParamValue, den_inner: ParamValue,
                   order: int, base: ParamValue = Q) -> LaurentSeries:
    """The corollary-shaped double sum

        sum_{m,n>=0} base^{2m+n}
            (num_outer, 1/num_outer; base)_m (num_inner, 1/num_inner; base)_{m+n}
          / ((base*den_outer, base/den_outer; base)_m
             (base*den_inner, base/den_inner; base)_{m+n}).

    Both the main k=3 sum and its index-exchanged dual are instances.
    """
    eb = base.exp
    slack = (
        _negative_weight(num_outer, base) + _negative_weight(num_outer.inv(), base)
        + _negative_weight(num_inner, base) + _negative_weight(num_inner.inv(), base)
    )
    work = order + slack
    total = LaurentSeries.zero(work)
    row = LaurentSeries.one(work)
    m = 0
    while eb * 2 * m - slack < order:
        # inner sweep over n at this m; the row term (m, 0) always lands first
        t = row
        total = total + t
        n = 1
        while eb * (2 * m + n) - slack < order:
            t = _apply_base_power(t, base, 1)
            t = _pair_mul(t, num_inner, base, m + n - 1)
            if t is None:
                break
            t = _pair_div(t, den_inner, base, m + n, "double-sum inner denominator")
            total = total + t
            n += 1
        # advance the row term (m, 0) -> (m+1, 0)
        nxt = _apply_base_power(row, base, 2)
        nxt = _pair_mul(nxt, num_outer, base, m)
        if nxt is None:
            break
        nxt = _pair_mul(nxt, num_inner, base, m)
        if nxt is None:
            break
        nxt = _pair_div(nxt, den_outer, base, m + 1, "double-sum outer denominator")
        nxt = _pair_div(nxt, den_inner, base, m + 1, "double-sum inner denominator")
        row = nxt
        m += 1
    return total.require_order(order)


def diagonal_sum(x: ParamValue, y: ParamValue, z: ParamValue, order: int,
                 base: ParamValue = Q) -> LaurentSeries:
    """sum_{m>=0} base^{2m} (y,1/y;base)_m (z,1/z;base)_m
    / ((base*x, base/x; base)_m (base*y, base/y; base)_m)."""
    eb = base.exp
    slack = sum(
        _negative_weight(p, base) + _negative_weight(p.inv(), base) for p in (y, z)
    )
    work = order + slack
    t = LaurentSeries.one(work)
    total = t
    m = 0
    while eb * 2 * (m + 1) - slack < order:
        t = _apply_base_power(t, base, 2)
        t = _pair_mul(t, y, base, m)
        if t is None:
            break
        t = _pair_mul(t, z, base, m)
        if t is None:
            break
        t = _pair_div(t, x, base, m + 1, "diagonal denominator")
        t = _pair_div(t, y, base, m + 1, "diagonal denominator")
        total = total + t
        m += 1
    return total.require_order(order)


# -- the k=2 and k=3 corollaries --------------------------------------------------------


def _poch_pair_inf(p: ParamValue, base: ParamValue, order: int) -> LaurentSeries:
    """(p, 1/p; base)_inf."""
    return poch_infinite(p, base, order) * poch_infinite(p.inv(), base, order)


def _poch_pair_inf_inv(p: ParamValue, base: ParamValue, order: int) -> LaurentSeries:
    """1 / (p, 1/p; base)_inf."""
    return poch_infinite_inv(p, base, order) * poch_infinite_inv(p.inv(), base, order)


def _poch_shift_pair_inf(p: ParamValue, base: ParamValue, order: int) -> LaurentSeries:
    """(base*p, base/p; base)_inf.  Note base/p pairs the inverse parameter,
    not the inverse of base*p."""
    return poch_infinite(_param_mul(base, p), base, order) * poch_infinite(
        _param_mul(base, p.inv()), base, order
    )


def _poch_shift_pair_inf_inv(p: ParamValue, base: ParamValue, order: int) -> LaurentSeries:
    """1 / (base*p, base/p; base)_inf."""
    return poch_infinite_inv(_param_mul(base, p), base, order) * poch_infinite_inv(
        _param_mul(base, p.inv()), base, order
    )


def corollary_k2(y: ParamValue, z: ParamValue, base: ParamValue,
                 order: int) -> tuple[LaurentSeries, LaurentSeries]:
    """Both sides of the k=2 specialization:

        sum_{n>=0} base^n (z,1/z;base)_n / (base*y, base/y; base)_n
        = C(z,y) ((1-y)(1-1/y) - (z,1/z;base)_inf / (base*y, base/y;base)_inf).

    Returns the pair (LHS, RHS), each trusted through ``order``.
    """
    work = order + 2 + 2 * (abs(y.exp) + abs(z.exp))
    lhs = vwp_single_sum(z, y, order, base)
    c = c_helper(z, y, work)
    dy = LaurentSeries.one()
    for p in (y, y.inv()):
        dy = dy.mul_one_minus(p.coeff, p.exp)
    quotient = _poch_pair_inf(z, base, work) * _poch_shift_pair_inf_inv(y, base, work)
    rhs = c * (dy - quotient)
    return lhs, rhs.require_order(order)


def corollary_k3(x: ParamValue, y: ParamValue, z: ParamValue, base: ParamValue,
                 order: int) -> tuple[LaurentSeries, LaurentSeries]:
    """Both sides of the k=3 specialization:

        sum_{m,n>=0} base^{2m+n} (y,1/y;base)_m (z,1/z;base)_{m+n}
                     / ((base*x,base/x;base)_m (base*y,base/y;base)_{m+n})
        =   D(x,y) C(z,y) C(z,x)
          - D(x,z) C(z,y) C(y,x) (base*z,base/z;base)_inf/(base*y,base/y;base)_inf
          + D(y,z) C(z,y) (C(y,x) - C(z,x))
                           (base*z,base/z;base)_inf/(base*x,base/x;base)_inf.

    Returns the pair (LHS, RHS), each trusted through ``order``.
    """
    work = order + 2 + 2 * (abs(x.exp) + abs(y.exp) + abs(z.exp))
    lhs = vwp_double_sum(y, z, x, y, order, base)
    czy = c_helper(z, y, work)
    czx = c_helper(z, x, work)
    cyx = c_helper(y, x, work)
    pz = _poch_shift_pair_inf(z, base, work)
    py_inv = _poch_shift_pair_inf_inv(y, base, work)
    px_inv = _poch_shift_pair_inf_inv(x, base, work)
    rhs = d_helper(x, y) * czy * czx
    rhs = rhs - d_helper(x, z) * czy * cyx * pz * py_inv
    rhs = rhs + d_helper(y, z) * czy * (cyx - czx) * pz * px_inv
    return lhs, rhs.require_order(order)


# -- bilateral series and finite-N form ----------------------------------------------


def f_bilateral(params, order: int, base: ParamValue = Q) -> LaurentSeries:
    """F_k = sum over all integers n of
        (-1)^n base^(C(n+1,2) + (k-1)n) / prod_i (1-b_i base^n)(1-base^n/b_i).

    The two tails fold together: the n -> -n term equals base^n times the
    n term, so F_k = t(0) + sum_{n>=1} (1 + base^n) t(n), with t(n) updated
    incrementally.  Parameters with b_i = base^{+-n} in range make some
    denominator vanish; that raises ZeroFactor.
    """
    params = as_params(params)
    k = len(params)
    eb = base.exp
    slack = _numerator_slack(params, base)
    work = order + slack
    t = LaurentSeries.one(work)
    for p in params:
        t = _pair_div(t, p, base, 0, "bilateral n=0 denominator")
    total = t
    n = 1
    while eb * (n * (n + 1) // 2 + (k - 1) * n) < order:
        # t(n) = -t(n-1) * base^(n+k-1) * prod_i pair(n-1) / pair(n)
        t = _apply_base_power(t, base, n + k - 1).scale(CycRat(-1))
        for p in params:
            got = _pair_mul(t, p, base, n - 1)
            if got is None:  # a numerator zero can only mean b_i = base^{1-n}
                raise ZeroFactor("bilateral numerator factor vanished")
            t = got
        for p in params:
            t = _pair_div(t, p, base, n, "bilateral denominator")
        # fold in the mirrored term: (1 + base^n) * t(n)
        c, e = ParamValue(ONE, 0).scaled(base, n)
        total = total + t.mul_one_minus(-c, e)
        n += 1
    return total.require_order(order)


def f_consistency_rhs(params, order: int, base: ParamValue = Q) -> LaurentSeries:
    """(base;base)_inf^2 * sum_i A_{k,i} / (b_i, 1/b_i; base)_inf.

    The closed form of F_k implied by the recursion; requires every b_i != 1
    (the uncancelled denominators appear as stated).
    """
    params = as_params(params)
    k = len(params)
    work = order + 2 + 2 * sum(abs(p.exp) for p in params)
    euler = poch_infinite(base, base, work)
    total = LaurentSeries.zero(work)
    for i in range(1, k + 1):
        total = total + a_coeff(k, i, params, work) * _poch_pair_inf_inv(
            params[i - 1], base, work
        )
    return (euler * euler * total).require_order(order)


def l_finite_n(params, bigN: int, order: int, base: ParamValue = Q) -> LaurentSeries:
    """The finite truncation

        L_{k,N} = 1 + prod_i (1-b_i)(1-1/b_i) * sum_{n=1}^{N}
            (1 + base^n) base^{(k+N)n} (base^{-N}; base)_n
            / (prod_i (1-b_i base^n)(1-base^n/b_i) * (base^{N+1}; base)_n).

    The (base^{-N}; base)_n factor dips the working valuation by as much as
    N(N+1)/2 base-exponents, so the engine runs with that much slack before
    re-truncating.  As bigN grows the coefficients below a fixed order
    stabilize to prod_i (1-b_i)(1-1/b_i) * F_k.
    """
    params = as_params(params)
    if bigN < 0:
        raise ValueError("l_finite_n needs bigN >= 0")
    k = len(params)
    eb = base.exp
    if bigN == 0:
        return LaurentSeries.one(order)
    slack = eb * bigN * (bigN + 1) // 2 + _numerator_slack(params, base)
    work = order + slack

    def base_pow(m):
        return ParamValue(ONE, 0).scaled(base, m)

    # term n = 1
    t = LaurentSeries.one(work)
    c, e = base_pow(1)
    t = t.mul_one_minus(-c, e)  # (1 + base)
    t = _apply_base_power(t, base, k + bigN)
    c, e = base_pow(-bigN)
    t = t.mul_one_minus(c, e)  # (1 - base^{-N})
    c, e = base_pow(bigN + 1)
    t = t.div_one_minus(c, e)  # 1/(1 - base^{N+1})
    for p in params:
        t = _pair_div(t, p, base, 1, "finite-N denominator")
    total = t
    for n in range(2, bigN + 1):
        if eb * (n * (n + 1) // 2 + (k - 1) * n) >= order:
            break
        t = _apply_base_power(t, base, k + bigN)
        c, e = base_pow(n)
        t = t.mul_one_minus(-c, e)  # * (1 + base^n)
        c, e = base_pow(n - 1)
        t = t.div_one_minus(-c, e)  # / (1 + base^{n-1})
        c, e = base_pow(n - 1 - bigN)
        t = t.mul_one_minus(c, e)  # * (1 - base^{n-1-N})
        c, e = base_pow(bigN + n)
        t = t.div_one_minus(c, e)  # / (1 - base^{N+n})
        for p in params:
            got = _pair_mul(t, p, base, n - 1)
            if got is None:
                raise ZeroFactor("finite-N numerator factor vanished")
            t = _pair_div(got, p, base, n, "finite-N denominator")
        total = total + t
    prefactor = LaurentSeries.one()
    for p in params:
        prefactor = prefactor.mul_one_minus(p.coeff, p.exp)
        pi = p.inv()
        prefactor = prefactor.mul_one_minus(pi.coeff, pi.exp)
    out = LaurentSeries.one(work) + prefactor * total
    return out.require_order(order)


def l_infinite(params, order: int, base: ParamValue = Q) -> LaurentSeries:
    """The bigN -> infinity limit: prod_i (1-b_i)(1-1/b_i) * F_k."""
    params = as_params(params)
    f = f_bilateral(params, order, base)
    prefactor = LaurentSeries.one()
    for p in params:
        prefactor = prefactor.mul_one_minus(p.coeff, p.exp)
        pi = p.inv()
        prefactor = prefactor.mul_one_minus(pi.coeff, pi.exp)
    return (prefactor * f).require_order(order)


# -- classical evaluations ----------------------------------------------------------


def bailey_3psi3_check(b: ParamValue, order: int) -> tuple[LaurentSeries, LaurentSeries]:
    """The well-poised bilateral evaluation at c = 1/b, d -> infinity:

        sum over all integers n of
            (b, 1/b; q)_n / (qb, q/b; q)_n * (-1)^n q^(n(n+1)/2)
        = (q;q)_inf^2 / (qb, q/b; q)_inf.

    The two sides are computed independently: the nonnegative tail by
    incremental finite Pochhammers, the negative tail by the extension
    (a;q)_{-m} = 1/prod_{j=1}^{m} (1 - a q^{-j}), and the right side as an
    infinite product.  Returns the pair (LHS, RHS).
    """
    base = Q
    work = order + 2 + 2 * abs(b.exp)
    # n >= 0 tail
    t = LaurentSeries.one(work)
    total = t
    n = 0
    while (n + 1) * (n + 2) // 2 < work:
        t = t.shift(n + 1).scale(CycRat(-1))
        got = _pair_mul(t, b, base, n)
        if got is None:
            raise ZeroFactor("3psi3 numerator factor vanished")
        t = _pair_div(got, b, base, n + 1, "3psi3 denominator")
        total = total + t
        n += 1
    # n <= -1 tail: term(-m) carries q^(m(m-1)/2) and the extension products
    t = LaurentSeries.one(work)
    m = 1
    while m * (m - 1) // 2 + 2 * m < work:
        # multiply by term(-m)/term(-(m-1)):
        #   sign * q^{m-1} * pair(1-m) / pair(-m)
        t = t.shift(m - 1).scale(CycRat(-1))
        got = _pair_mul(t, b, base, 1 - m)
        if got is None:
            raise ZeroFactor("3psi3 numerator factor vanished")
        t = _pair_div(got, b, base, -m, "3psi3 denominator")
        total = total + t
        m += 1
    rhs = poch_infinite(base, base, work)
    rhs = rhs * rhs * _poch_shift_pair_inf_inv(b, base, work)
    return total.require_order(order), rhs.require_order(order)


def kl_relation_check(x: ParamValue, y: ParamValue, z: ParamValue,
                      order: int) -> CheckReport:
    """Check the double-sum exchange relation

        K(x,y,z) = F(x,y) F(y,z) - L(x,y,z) + diagonal(x,y,z)

    where K is the corollary-shaped double sum, L its index-exchanged dual,
    F(a,b) the single sum with numerator b over denominator a, and the
    diagonal ties the two orderings together.  No C(.,.) helper is formed, so
    z = y never degenerates here; the caller excludes it by precondition.
    All five series are expanded independently.
    """
    base = Q
    big_k = vwp_double_sum(y, z, x, y, order, base)
    big_l = vwp_double_sum(z, y, y, x, order, base)
    f_xy = vwp_single_sum(y, x, order, base)
    f_yz = vwp_single_sum(z, y, order, base)
    diag = diagonal_sum(x, y, z, order, base)
    rhs = f_xy * f_yz - big_l + diag
    return CheckReport(order, big_k.agrees_below(rhs, order))

"""Overpartition pairs, their statistics, and generating-function cross-checks.

An overpartition may overline the first occurrence of any part value, so a
part is a (value, overlined) pair and overlined parts are automatically
distinct.  "Distinct parts" additionally forbids repeated plain values; a
plain copy of an overlined value is still allowed (e.g. 2~,2 is fine).

``enumerate_pairs_A`` lists the pairs (lambda1, lambda2) of weight n with
both components in distinct parts where the smallest part s of lambda1 is
overlined, every overlined part of lambda2 exceeds s, and every plain part
of lambda2 is a multiple of 3 below 3s.  ``a_stats`` splits the count by the
parity of the number of plain parts (A0/A1) and of all parts (A2/A3); the
signed counts A' = A0 - A1 and A'' = A3 - A2 have single-sum generating
functions which ``gf_check_Aprime``/``gf_check_Adblprime`` verify against the
enumeration, coefficient by coefficient.

Everything here is brute force on purpose: the series engine gets checked
against objects that can be listed by hand, not against itself.  Enumeration
is capped at weight 30; the plain counting families (``count_series``) go to
any order but self-validate against enumeration below weight 15.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .coeffring import CycRat, ONE
from .laurent import (
    LaurentSeries,
    ParamValue,
    Q,
    poch_finite,
    poch_infinite,
    poch_infinite_inv,
)
from .catalog import FirstMismatch, VerifyReport

ENUMERATION_CAP = 30

FAMILIES = ("overpartitions", "overpartitions_distinct", "pairs", "pairs_distinct")

_Q3 = ParamValue(ONE, 3)
_MQ = ParamValue(CycRat(-1), 1)


Part = tuple[int, bool]  # (value, overlined)


def _canon(parts) -> tuple[Part, ...]:
    # descending by value, overlined before plain at equal value
    return tuple(sorted(parts, key=lambda p: (-p[0], not p[1])))


@dataclass(frozen=True)
class Overpartition:
    """Parts in canonical order (descending, overlined first at ties)."""

    parts: tuple[Part, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", _canon(self.parts))
        seen = set()
        for value, overlined in self.parts:
            if value < 1:
                raise ValueError(f"part values must be positive, got {value}")
            if overlined:
                if value in seen:
                    raise ValueError(f"overlined part {value} repeated")
                seen.add(value)

    @classmethod
    def of(cls, overlined=(), plain=()) -> "Overpartition":
        return cls(tuple((v, True) for v in overlined)
                   + tuple((v, False) for v in plain))

    @property
    def weight(self) -> int:
        return sum(v for v, _ in self.parts)

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    @property
    def n_plain(self) -> int:
        return sum(1 for _, ov in self.parts if not ov)

    def has_distinct_parts(self) -> bool:
        plain = [v for v, ov in self.parts if not ov]
        return len(plain) == len(set(plain))

    def render(self) -> str:
        return ",".join(f"{v}~" if ov else str(v) for v, ov in self.parts)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class OverpartitionPair:
    first: Overpartition
    second: Overpartition

    @property
    def weight(self) -> int:
        return self.first.weight + self.second.weight

    @property
    def n_parts(self) -> int:
        return self.first.n_parts + self.second.n_parts

    @property
    def n_plain(self) -> int:
        return self.first.n_plain + self.second.n_plain

    def render(self) -> str:
        return self.first.render() + "|" + self.second.render()

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class AStats:
    """Counts of ``enumerate_pairs_A(n)`` split by the two parity statistics.

    A0/A1 split by the parity of the number of plain (non-overlined) parts
    across both components; A2/A3 by the parity of the total number of parts.
    A = A0 + A1 = A2 + A3, Aprime = A0 - A1, Adblprime = A3 - A2.
    """

    n: int
    A: int
    A0: int
    A1: int
    A2: int
    A3: int
    Aprime: int
    Adblprime: int


# -- raw part-list generators ------------------------------------------------------------


def _distinct_parts(total: int, min_part: int) -> Iterator[tuple[int, ...]]:
    """Tuples of distinct parts >= min_part summing to total, descending."""
    if total == 0:
        yield ()
        return
    for s in range(min_part, total + 1):
        for rest in _distinct_parts(total - s, s + 1):
            yield rest + (s,)


def _partitions(total: int, min_part: int) -> Iterator[tuple[int, ...]]:
    """Unrestricted partitions with parts >= min_part, descending."""
    if total == 0:
        yield ()
        return
    for s in range(min_part, total + 1):
        for rest in _partitions(total - s, s):
            yield rest + (s,)


def _mult3_below(total: int, s: int) -> Iterator[tuple[int, ...]]:
    """Distinct multiples of 3 below 3s summing to total, descending."""
    if total % 3 != 0:
        return
    if total == 0:
        yield ()
        return
    for t in _distinct_parts(total // 3, 1):
        if t and t[0] > s - 1:
            continue
        yield tuple(3 * v for v in t)


# -- the A family ------------------------------------------------------------------------


def enumerate_pairs_A(n: int) -> list[OverpartitionPair]:
    """All pairs of weight n counted by the A statistic, canonically sorted.

    lambda1 and lambda2 both have distinct parts; the smallest part s of
    lambda1 is overlined; lambda2's overlined parts are > s and its plain
    parts are multiples of 3 below 3s.
    """
    if n < 1:
        raise ValueError(f"enumerate_pairs_A needs n >= 1, got {n}")
    if n > ENUMERATION_CAP:
        raise ValueError(
            f"enumeration is capped at n <= {ENUMERATION_CAP} (got {n});"
            " use the series coefficients beyond that")
    pairs: list[OverpartitionPair] = []
    for s in range(1, n + 1):
        for w1 in range(n - s + 1):
            w2 = n - s - w1
            firsts = []
            for j in range(w1 + 1):
                for o1 in _distinct_parts(j, s + 1):
                    for n1 in _distinct_parts(w1 - j, s):
                        firsts.append(Overpartition.of((s,) + o1, n1))
            seconds = []
            for j in range(w2 + 1):
                for o2 in _distinct_parts(j, s + 1):
                    for n2 in _mult3_below(w2 - j, s):
                        seconds.append(Overpartition.of(o2, n2))
            pairs.extend(OverpartitionPair(f, g) for f in firsts for g in seconds)
    pairs.sort(key=lambda p: (p.first.parts, p.second.parts))
    return pairs


def a_stats(n: int) -> AStats:
    """Parity-split counts over ``enumerate_pairs_A(n)``."""
    pairs = enumerate_pairs_A(n)
    a = len(pairs)
    a0 = sum(1 for p in pairs if p.n_plain % 2 == 0)
    a2 = sum(1 for p in pairs if p.n_parts % 2 == 0)
    return AStats(n=n, A=a, A0=a0, A1=a - a0, A2=a2, A3=a - a2,
                  Aprime=2 * a0 - a, Adblprime=a - 2 * a2)


def _a_single_sum(order: int, overline_sign: int) -> LaurentSeries:
    """sum_{n>=1} q^n (q^n;q)_inf (s q^{n+1};q)_inf^2 (q^3;q^3)_{n-1}.

    With s = -1 the overlined-part generators carry no sign and the sum
    tracks the plain-part parity (the A' series); with s = +1 every part
    alternates and it tracks total-part parity (the A'' series).
    """
    total = LaurentSeries.zero(order)
    sign = CycRat(overline_sign)
    for n in range(1, order):
        t = LaurentSeries.monomial(ONE, n).truncate(order)
        t = t * poch_infinite(ParamValue(ONE, n), Q, order)
        u = poch_infinite(ParamValue(sign, n + 1), Q, order)
        t = t * u * u
        t = t * poch_finite(_Q3, _Q3, n - 1, order)
        total = total + t
    return total


def _gf_report(check_id: str, order: int, counted, series: LaurentSeries) -> VerifyReport:
    start = time.perf_counter()
    if order < 2:
        raise ValueError(f"{check_id} needs order >= 2, got {order}")
    if order - 1 > ENUMERATION_CAP:
        raise ValueError(
            f"{check_id}: enumeration is capped at n <= {ENUMERATION_CAP},"
            f" so order must be <= {ENUMERATION_CAP + 1} (got {order})")
    enum = LaurentSeries.from_terms(
        {n: CycRat(counted(n)) for n in range(1, order)}, order)
    exp = enum.agrees_below(series, order)
    elapsed = time.perf_counter() - start
    if exp is None:
        return VerifyReport(check_id, order, "equal", None, elapsed)
    fm = FirstMismatch(exp, enum.coeff(exp), series.coeff(exp))
    return VerifyReport(check_id, order, "mismatch", fm, elapsed)


def gf_check_Aprime(order: int) -> VerifyReport:
    """Enumerated A'(n) against its single-sum series for all n < order."""
    series = _a_single_sum(order, -1) if order >= 2 else LaurentSeries.zero(max(order, 0))
    return _gf_report("gen-Aprime", order, lambda n: a_stats(n).Aprime, series)


def gf_check_Adblprime(order: int) -> VerifyReport:
    """Enumerated A''(n) against its single-sum series for all n < order."""
    series = _a_single_sum(order, 1) if order >= 2 else LaurentSeries.zero(max(order, 0))
    return _gf_report("gen-Adblprime", order, lambda n: a_stats(n).Adblprime, series)


# -- plain counting families -------------------------------------------------------------


def _overpartitions(n: int, distinct: bool) -> Iterator[Overpartition]:
    for j in range(n + 1):
        for ov in _distinct_parts(j, 1):
            if distinct:
                plains = _distinct_parts(n - j, 1)
            else:
                plains = _partitions(n - j, 1)
            for pl in plains:
                yield Overpartition.of(ov, pl)


@lru_cache(maxsize=None)
def _component_count(n: int, distinct: bool) -> int:
    return sum(1 for _ in _overpartitions(n, distinct))


def _family_count(family: str, n: int) -> int:
    if family == "overpartitions":
        return _component_count(n, False)
    if family == "overpartitions_distinct":
        return _component_count(n, True)
    distinct = family == "pairs_distinct"
    return sum(_component_count(k, distinct) * _component_count(n - k, distinct)
               for k in range(n + 1))


def count_series(family: str, order: int) -> LaurentSeries:
    """The counting generating function of ``family``, expanded below order.

    overpartitions: (-q;q)_inf/(q;q)_inf; overpartitions_distinct:
    (-q;q)_inf^2; pairs and pairs_distinct square those.  Coefficients below
    min(order, 15) are checked against direct enumeration before returning,
    so a wrong series cannot come back quietly.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if order < 1:
        raise ValueError(f"count_series needs order >= 1, got {order}")
    m = poch_infinite(_MQ, Q, order)
    if family == "overpartitions":
        out = m * poch_infinite_inv(ParamValue(ONE, 1), Q, order)
    elif family == "overpartitions_distinct":
        out = m * m
    elif family == "pairs":
        i = poch_infinite_inv(ParamValue(ONE, 1), Q, order)
        out = m * m * i * i
    else:
        out = m * m * m * m
    for n in range(min(order, 15)):
        want = _family_count(family, n)
        if out.coeff(n) != CycRat(want):
            raise RuntimeError(
                f"count_series({family!r}): series coefficient at q^{n} is"
                f" {out.coeff(n)} but enumeration counts {want}")
    return out

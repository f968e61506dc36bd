"""Mechanical verification of the identities tying the pieces together.

Each check returns an IdentityReport: which indices were tested, which
held, and a left/right witness pair for every failure.  Checks never
assert; deciding what a failure means is left to the caller (the CLI
maps any failure to a nonzero exit code).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import combinat
from .coefficients import (
    coeff_via_exp_kernel,
    coeff_via_partition_sum,
    inverse_series,
)
from .series import TruncatedSeries, format_rational

__all__ = [
    "IdentityReport",
    "report_from_pairs",
    "check_sum_identity",
    "check_generalized_sum_identity",
    "generalized_partition_sum",
    "generalized_derangement_sum",
    "check_inverse_difference",
    "check_implicit_equations",
    "check_differential_equations",
    "check_derivative_vs_partition_sum",
    "run_all",
]


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity over a contiguous index range."""

    identity: str
    lo: int
    hi: int
    holds: dict[int, bool]
    failures: tuple[tuple[int, Fraction, Fraction], ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "range": [self.lo, self.hi],
            "failures": [
                {
                    "index": i,
                    "left": format_rational(left),
                    "right": format_rational(right),
                }
                for i, left, right in self.failures
            ],
        }


def report_from_pairs(
    identity: str, pairs: list[tuple[int, Fraction, Fraction]]
) -> IdentityReport:
    """Build a report from (index, left, right) comparison pairs."""
    if not pairs:
        raise ValueError("identity check over an empty index range")
    holds = {i: left == right for i, left, right in pairs}
    failures = tuple(
        (i, left, right) for i, left, right in pairs if left != right
    )
    lo = min(i for i, _, _ in pairs)
    hi = max(i for i, _, _ in pairs)
    return IdentityReport(identity=identity, lo=lo, hi=hi, holds=holds, failures=failures)


def check_sum_identity(k: int) -> IdentityReport:
    """The partition-sum and derangement-sum routes to a_k agree.

    Both alternating sums run over j = 0 .. 2k with the same weights
    2^(j+k) (j+k)!, differing only in the combinatorial count inside.
    """
    if k < 0:
        raise ValueError(f"index must be >= 0, got {k}")

    def side(count) -> Fraction:
        return sum(
            (
                Fraction(
                    (-1) ** j * count(3, 2 * (j + k), j),
                    2 ** (j + k) * math.factorial(j + k),
                )
                for j in range(2 * k + 1)
            ),
            Fraction(0),
        )

    left = side(combinat.stirling2_assoc)
    right = side(combinat.derangement_assoc)
    return report_from_pairs("sum-identity", [(k, left, right)])


def _odd_denominator(k: int, j: int) -> int:
    # product (k+1)(k+3)...(k+2j-1); empty product is 1
    value = 1
    for t in range(j):
        value *= k + 2 * t + 1
    return value


def generalized_partition_sum(k: int) -> Fraction:
    """sum_j (-1)^j S(k+2j-1, j) / ((k+1)(k+3)...(k+2j-1)), blocks >= 3.

    Equals the k-th Taylor coefficient of the exp-side inverse series.
    """
    if k < 1:
        raise ValueError(f"index must be >= 1, got {k}")
    return sum(
        (
            Fraction(
                (-1) ** j * combinat.stirling2_assoc(3, k + 2 * j - 1, j),
                _odd_denominator(k, j),
            )
            for j in range(k)
        ),
        Fraction(0),
    )


def generalized_derangement_sum(k: int) -> Fraction:
    """Same sum over cycle counts, with sign (-1)^(k+j-1).

    Equals the k-th Taylor coefficient of the log-side inverse series.
    """
    if k < 1:
        raise ValueError(f"index must be >= 1, got {k}")
    return sum(
        (
            Fraction(
                (-1) ** (k + j - 1) * combinat.derangement_assoc(3, k + 2 * j - 1, j),
                _odd_denominator(k, j),
            )
            for j in range(k)
        ),
        Fraction(0),
    )


def check_generalized_sum_identity(k: int) -> IdentityReport:
    """The two generalized sums agree for every k except k == 2.

    At k == 2 the sides differ by exactly 1 (the single index at which
    the two inverse series part ways), so there the check passes when
    right - left == 1.
    """
    if k < 1:
        raise ValueError(f"index must be >= 1, got {k}")
    left = generalized_partition_sum(k)
    right = generalized_derangement_sum(k)
    if k == 2:
        return report_from_pairs(
            "sum-identity-general", [(k, right - left, Fraction(1))]
        )
    return report_from_pairs("sum-identity-general", [(k, left, right)])


def _series_pairs(
    left: TruncatedSeries, right: TruncatedSeries
) -> list[tuple[int, Fraction, Fraction]]:
    return [(i, left[i], right[i]) for i in range(left.order + 1)]


def check_inverse_difference(order: int) -> IdentityReport:
    """log-side inverse minus exp-side inverse is exactly x^2/2."""
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    diff = inverse_series("log", order) - inverse_series("exp", order)
    target = TruncatedSeries.monomial(Fraction(1, 2), 2, order)
    return report_from_pairs("inverse-difference", _series_pairs(diff, target))


def check_implicit_equations(order: int) -> list[IdentityReport]:
    """Both inverse series satisfy their defining implicit equations.

    exp side:  e^B - 1 - B == x^2/2, and the log form B == log(1 + B + x^2/2);
    log side:  C - x^2/2 == log(1 + C).
    """
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    b = inverse_series("exp", order)
    c = inverse_series("log", order)
    half_square = TruncatedSeries.monomial(Fraction(1, 2), 2, order)
    reports = [
        report_from_pairs(
            "implicit-exp", _series_pairs(b.exp() - 1 - b, half_square)
        ),
        report_from_pairs(
            "implicit-log", _series_pairs(c - half_square, c.log1p())
        ),
        report_from_pairs(
            "implicit-exp-log", _series_pairs(b, (b + half_square).log1p())
        ),
    ]
    return reports


def check_differential_equations(order: int) -> list[IdentityReport]:
    """First-order differential equations for both inverse series.

    exp side:  B'B == x - (x^2/2) B';   log side:  C'C == xC + x.
    Derivatives drop one order, so the comparison runs through order-1.
    """
    if order < 3:
        raise ValueError(f"order must be >= 3, got {order}")
    b = inverse_series("exp", order)
    c = inverse_series("log", order)
    bp, cp = b.derivative(), c.derivative()
    bt, ct = b.truncate(order - 1), c.truncate(order - 1)
    x = TruncatedSeries.x(order - 1)
    half_square = TruncatedSeries.monomial(Fraction(1, 2), 2, order - 1)
    reports = [
        report_from_pairs(
            "diffeq-exp", _series_pairs(bp * bt, x - half_square * bp)
        ),
        report_from_pairs("diffeq-log", _series_pairs(cp * ct, x * ct + x)),
    ]
    return reports


def check_derivative_vs_partition_sum(k: int) -> IdentityReport:
    """The kernel-derivative and partition-sum routes to a_k agree."""
    if k < 0:
        raise ValueError(f"index must be >= 0, got {k}")
    left = coeff_via_exp_kernel(k)
    right = coeff_via_partition_sum(k)
    return report_from_pairs("derivative-vs-partition-sum", [(k, left, right)])


def run_all(max_index: int) -> list[IdentityReport]:
    """Every identity check at a common size parameter, for the CLI."""
    if max_index < 3:
        raise ValueError(f"max_index must be >= 3, got {max_index}")
    reports: list[IdentityReport] = []
    for k in range(max_index + 1):
        reports.append(check_sum_identity(k))
    for k in range(1, max_index + 1):
        reports.append(check_generalized_sum_identity(k))
    reports.append(check_inverse_difference(max_index))
    reports.extend(check_implicit_equations(max_index))
    reports.extend(check_differential_equations(max_index))
    for k in range(max_index + 1):
        reports.append(check_derivative_vs_partition_sum(k))
    return reports

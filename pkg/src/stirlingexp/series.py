"""Exact truncated formal power series over the rationals.

A :class:`TruncatedSeries` holds the ordinary coefficients of a formal
power series through a fixed truncation order K.  Every operation is
exact: arithmetic is done in ``fractions.Fraction``, truncation discards
only powers above K, and retained coefficients are never perturbed.
Floating point is deliberately not accepted anywhere in this module.

The truncation order is explicit on every series and there is no global
precision state.  Mixing two series of different orders is treated as a
programming error and rejected, not silently truncated.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

__all__ = [
    "TruncatedSeries",
    "exp_kernel",
    "log_kernel",
    "as_fraction",
    "format_rational",
    "parse_rational",
]

Scalar = Union[int, Fraction]


def as_fraction(value: Scalar) -> Fraction:
    """Coerce an int or Fraction to Fraction, rejecting floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


def format_rational(value: Scalar) -> str:
    """Render a rational as ``p/q`` in lowest terms, or ``p`` when q == 1."""
    return str(as_fraction(value))


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p`` back into a Fraction."""
    return Fraction(text.strip())


class TruncatedSeries:
    """Formal power series truncated at a fixed order, with exact arithmetic.

    ``coeffs[i]`` is the ordinary coefficient of x^i; the exponential
    (Taylor) coefficient i! * coeffs[i] is available through
    :meth:`egf_coefficient`.  Instances are immutable.

    Binary operations require both operands to have the same order; a
    mismatch raises ``ValueError`` (this includes ``==``, which is why
    instances are unhashable).
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        items = [as_fraction(c) for c in coeffs]
        if order is None:
            if not items:
                raise ValueError("empty coefficient list and no order given")
            order = len(items) - 1
        if order < 0:
            raise ValueError(f"order must be >= 0, got {order}")
        if len(items) > order + 1:
            raise ValueError(
                f"{len(items)} coefficients exceed order {order}; "
                "refusing to discard terms silently"
            )
        items.extend([Fraction(0)] * (order + 1 - len(items)))
        self._coeffs = tuple(items)

    # ------------------------------------------------------------------
    # construction helpers

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order=order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order=order)

    @classmethod
    def x(cls, order: int) -> "TruncatedSeries":
        """The identity series x."""
        if order < 1:
            raise ValueError("the series x needs order >= 1")
        return cls([0, 1], order=order)

    @classmethod
    def monomial(cls, coeff: Scalar, power: int, order: int) -> "TruncatedSeries":
        """The single term coeff * x^power."""
        if not 0 <= power <= order:
            raise ValueError(f"power {power} outside [0, {order}]")
        return cls([0] * power + [coeff], order=order)

    # ------------------------------------------------------------------
    # basic accessors

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __getitem__(self, index: int) -> Fraction:
        if not 0 <= index <= self.order:
            raise IndexError(f"coefficient index {index} outside [0, {self.order}]")
        return self._coeffs[index]

    def egf_coefficient(self, index: int) -> Fraction:
        """The exponential coefficient index! * [x^index]."""
        if not 0 <= index <= self.order:
            raise ValueError(f"index {index} outside retained range [0, {self.order}]")
        return math.factorial(index) * self._coeffs[index]

    def truncate(self, order: int) -> "TruncatedSeries":
        """Drop all powers above ``order`` (which must not exceed self.order)."""
        if not 0 <= order <= self.order:
            raise ValueError(f"cannot truncate order {self.order} to {order}")
        return TruncatedSeries(self._coeffs[: order + 1], order=order)

    def _require_same_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError(
                f"order mismatch: {self.order} vs {other.order}; "
                "truncate explicitly before combining"
            )

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._require_same_order(other)
            return TruncatedSeries(
                [a + b for a, b in zip(self._coeffs, other._coeffs)]
            )
        if isinstance(other, (int, Fraction)):
            head = (self._coeffs[0] + other,) + self._coeffs[1:]
            return TruncatedSeries(head)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self._coeffs])

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            self._require_same_order(other)
            return TruncatedSeries(
                [a - b for a, b in zip(self._coeffs, other._coeffs)]
            )
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._require_same_order(other)
            a, b = self._coeffs, other._coeffs
            out = [
                sum((a[i] * b[n - i] for i in range(n + 1)), Fraction(0))
                for n in range(len(a))
            ]
            return TruncatedSeries(out)
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self._coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            scale = as_fraction(other)
            return TruncatedSeries([c / scale for c in self._coeffs])
        return NotImplemented

    def __pow__(self, exponent: int):
        """Integer power by repeated squaring (exponent >= 0)."""
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            raise ValueError("negative integer powers: use inverse() explicitly")
        result = TruncatedSeries.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            self._require_same_order(other)
            return self._coeffs == other._coeffs
        return NotImplemented

    # equality raises on order mismatch, so hashing would be unsound
    __hash__ = None

    # ------------------------------------------------------------------
    # calculus and composition

    def derivative(self) -> "TruncatedSeries":
        """Formal derivative; the order drops by one."""
        if self.order < 1:
            raise ValueError("derivative needs order >= 1")
        return TruncatedSeries(
            [i * self._coeffs[i] for i in range(1, self.order + 1)]
        )

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(x)), requiring inner to have zero constant term."""
        self._require_same_order(inner)
        if inner._coeffs[0] != 0:
            raise ValueError("composition requires a zero constant term inside")
        result = TruncatedSeries([self._coeffs[self.order]], order=self.order)
        for i in range(self.order - 1, -1, -1):
            result = result * inner + self._coeffs[i]
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse 1/self; the constant term must be nonzero."""
        c0 = self._coeffs[0]
        if c0 == 0:
            raise ValueError("multiplicative inverse requires a nonzero constant term")
        out = [Fraction(1) / c0]
        for n in range(1, self.order + 1):
            acc = sum(
                (self._coeffs[j] * out[n - j] for j in range(1, n + 1)), Fraction(0)
            )
            out.append(-acc / c0)
        return TruncatedSeries(out)

    def exp(self) -> "TruncatedSeries":
        """exp(self), requiring a zero constant term.

        Uses the recurrence n*E[n] = sum_{m=1..n} m*f[m]*E[n-m] obtained
        from E' = f'E, so the cost is quadratic in the order.
        """
        if self._coeffs[0] != 0:
            raise ValueError("exp requires a zero constant term")
        f = self._coeffs
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            acc = sum((m * f[m] * out[n - m] for m in range(1, n + 1)), Fraction(0))
            out.append(acc / n)
        return TruncatedSeries(out)

    def log1p(self) -> "TruncatedSeries":
        """log(1 + self), requiring a zero constant term."""
        if self._coeffs[0] != 0:
            raise ValueError("log1p requires a zero constant term")
        f = self._coeffs
        out = [Fraction(0)]
        for n in range(1, self.order + 1):
            acc = sum(
                ((n - j) * f[j] * out[n - j] for j in range(1, n)), Fraction(0)
            )
            out.append(f[n] - acc / n)
        return TruncatedSeries(out)

    def power_rational(self, exponent: Scalar) -> "TruncatedSeries":
        """self**exponent for a rational exponent, requiring constant term 1.

        Defined by the binomial series sum_j C(r, j) (self - 1)^j;
        computed here through the equivalent first-order recurrence from
        P' f = r f' P, which costs O(order^2) instead of O(order^3).
        """
        if self._coeffs[0] != 1:
            raise ValueError("power_rational requires constant term exactly 1")
        r = as_fraction(exponent)
        f = self._coeffs
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            acc = r * sum(
                (j * f[j] * out[n - j] for j in range(1, n + 1)), Fraction(0)
            )
            acc -= sum((j * out[j] * f[n - j] for j in range(1, n)), Fraction(0))
            out.append(acc / n)
        return TruncatedSeries(out)

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse S with S(self) == x through the full order.

        Requires coeffs[0] == 0 and coeffs[1] != 0.  Solves the triangular
        system coefficient by coefficient against the truncated powers
        self^m, whose lowest term is coeffs[1]^m * x^m.
        """
        f = self._coeffs
        if f[0] != 0:
            raise ValueError("reversion requires a zero constant term")
        if self.order < 1 or f[1] == 0:
            raise ValueError("reversion requires a nonzero linear term")
        K = self.order
        powers = [None, self]  # powers[m] = self^m, truncated
        for m in range(2, K + 1):
            powers.append(powers[-1] * self)
        s = [Fraction(0), Fraction(1) / f[1]]
        for m in range(2, K + 1):
            acc = sum(
                (s[i] * powers[i][m] for i in range(1, m)), Fraction(0)
            )
            s.append(-acc / (f[1] ** m))
        return TruncatedSeries(s, order=K)

    # ------------------------------------------------------------------
    # presentation and serialization

    def __repr__(self) -> str:
        body = ", ".join(format_rational(c) for c in self._coeffs)
        return f"TruncatedSeries([{body}])"

    def __str__(self) -> str:
        terms: list[str] = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = -c if c < 0 else c
            if i == 0:
                body = format_rational(mag)
            else:
                x = "x" if i == 1 else f"x^{i}"
                if mag == 1:
                    body = x
                elif mag.numerator == 1:
                    body = f"{x}/{mag.denominator}"
                else:
                    body = f"{format_rational(mag)}*{x}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        if not terms:
            return "0"
        return " ".join(terms)

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [format_rational(c) for c in self._coeffs],
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "TruncatedSeries":
        order = payload["order"]
        coeffs = [parse_rational(c) for c in payload["coeffs"]]
        if len(coeffs) != order + 1:
            raise ValueError(
                f"series payload claims order {order} but carries "
                f"{len(coeffs)} coefficients"
            )
        return cls(coeffs, order=order)


def exp_kernel(order: int) -> TruncatedSeries:
    """The normalized left-truncated exponential 2(e^x - 1 - x)/x^2.

    Ordinary coefficients 2/(j+2)! for j >= 0, so the series starts
    1 + x/3 + x^2/12 + x^3/60 + ...  Its constant term is 1, which makes
    it a valid base for power_rational.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return TruncatedSeries(
        [Fraction(2, math.factorial(j + 2)) for j in range(order + 1)]
    )


def log_kernel(order: int) -> TruncatedSeries:
    """The normalized left-truncated logarithm 2(x - log(1+x))/x^2.

    Ordinary coefficients 2*(-1)^j/(j+2) for j >= 0, so the series starts
    1 - 2x/3 + x^2/2 - 2x^3/5 + ...
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return TruncatedSeries(
        [Fraction(2 * (-1) ** j, j + 2) for j in range(order + 1)]
    )

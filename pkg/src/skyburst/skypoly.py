"""The polynomial family S_n^omega: closed-form construction and special values.

S_n^omega is the monic degree-n polynomial orthogonal to 1, z, ..., z^(n-1)
under the circle bilinear form with weight z^(omega-1).  Its coefficient of
z^(n-l) is

    binomial(n, l) * poch(-omega, l) / poch(-n-omega, l),

a terminating hypergeometric sum.  Everything here is exact when omega is
rational.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError, PoleError
from .scalarfield import Omega, as_omega, binomial, conjugate, is_exact, pochhammer

__all__ = [
    "Polynomial",
    "construct",
    "construct_series",
    "construct_via_symmetry",
    "evaluate",
    "value_at_minus_one",
    "derivative_at_minus_one",
    "value_at_zero",
    "star",
    "reflect_negative_omega",
    "taylor_about_minus_one",
]


def _has_fraction(coeffs) -> bool:
    return any(isinstance(c, Fraction) for c in coeffs)


def _has_inexact(coeffs) -> bool:
    return any(isinstance(c, (float, complex)) for c in coeffs)


class Polynomial:
    """Dense polynomial; ``coeffs[j]`` is the coefficient of z^j.

    The trailing coefficient is nonzero after construction; the zero
    polynomial is the empty tuple.  Rational (Fraction/int) and floating
    (float/complex) coefficients are never mixed.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        if _has_fraction(coeffs) and _has_inexact(coeffs):
            raise TypeError("mixed rational and floating coefficients; convert explicitly")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def scalar_kind(self) -> str:
        return "complex_float" if _has_inexact(self.coeffs) else "rational"

    def coefficient(self, j: int):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return 0

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if (_has_fraction(self.coeffs) and _has_inexact(other.coeffs)) or (
            _has_inexact(self.coeffs) and _has_fraction(other.coeffs)
        ):
            raise TypeError("mixed rational and floating polynomials; convert explicitly")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check_compatible(other)
            if self.is_zero or other.is_zero:
                return Polynomial()
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Polynomial(out)
        return Polynomial([other * c for c in self.coeffs])

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return (-1) * self

    def __call__(self, z):
        """Horner evaluation; exact when both the coefficients and z are rational."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([j * c for j, c in enumerate(self.coeffs)][1:])

    def shifted(self, k: int) -> "Polynomial":
        """Multiply by z^k."""
        if k < 0:
            raise DomainError("shift must be nonnegative")
        if self.is_zero:
            return self
        return Polynomial((0,) * k + self.coeffs)

    def reversed(self) -> "Polynomial":
        """Coefficient reversal z^deg * p(1/z), without conjugation."""
        return Polynomial(tuple(reversed(self.coeffs)))

    def to_inexact(self) -> "Polynomial":
        """Round each coefficient once to double precision."""
        out = []
        for c in self.coeffs:
            out.append(c if isinstance(c, complex) else float(c))
        return Polynomial(out)

    # -- plumbing ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


def evaluate(p: Polynomial, z):
    return p(z)


def _one(exact: bool):
    return Fraction(1) if exact else 1.0


def construct_series(n: int, omega) -> Polynomial:
    """Direct hypergeometric-sum route, valid whenever no denominator vanishes.

    Each coefficient is assembled from fresh rising-factorial products so that
    exact zeros stay exact.  Vanishing denominators (omega a negative integer
    in [-n, -1]) raise PoleError naming the offending term.
    """
    om = as_omega(omega)
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    w = om.value
    exact = om.exact_mode
    coeffs = [_one(exact) * 0] * n + [_one(exact)]
    for ell in range(1, n + 1):
        den = pochhammer(-n - w, ell)
        if den == 0:
            raise PoleError(
                f"construction pole at degree {n}, omega={w}: "
                f"denominator rising factorial vanishes at term {ell}"
            )
        coeffs[n - ell] = binomial(n, ell) * pochhammer(-w, ell) / den
    return Polynomial(coeffs)


def construct(n: int, omega) -> Polynomial:
    """The monic degree-n polynomial of the family at parameter omega.

    Integer omega = m with 0 <= m <= n-1 is served by the degree/parameter
    symmetry (the value there is the limit of the coefficient formula, and the
    two routes agree exactly); all other parameters use the direct sum.
    """
    om = as_omega(omega)
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    if om.is_integer:
        m = int(om.value)
        if 0 <= m <= n - 1:
            return construct_via_symmetry(n, m)
    return construct_series(n, om)


def construct_via_symmetry(n: int, m: int) -> Polynomial:
    """z^(n-m) * S_m^n, the value of the family at integer parameter m < n."""
    if not (isinstance(n, int) and isinstance(m, int)):
        raise DomainError("symmetry route needs integer degree and parameter")
    if not 0 <= m < n:
        raise DomainError(f"symmetry route requires 0 <= m < n, got (n={n}, m={m})")
    return construct_series(m, Omega.exact(n)).shifted(n - m)


def value_at_minus_one(n: int, omega):
    """(-1)^n n! / poch(1+omega, n); equals construct(n, omega)(-1)."""
    om = as_omega(omega)
    den = pochhammer(1 + om.value, n)
    if den == 0:
        raise PoleError(f"value at -1 undefined: poch(1+{om.value}, {n}) = 0")
    return (-1) ** n * math.factorial(n) / den


def derivative_at_minus_one(m: int, n: int, omega):
    """m-th derivative of construct(n, omega) at z = -1, in closed form."""
    if m < 0 or m > n:
        raise DomainError(f"derivative order must satisfy 0 <= m <= n, got (m={m}, n={n})")
    om = as_omega(omega)
    den = pochhammer(1 + om.value, n)
    if den == 0:
        raise PoleError(f"derivative at -1 undefined: poch(1+{om.value}, {n}) = 0")
    num = pochhammer(1 + om.value, m)
    return (-1) ** (n - m) * math.factorial(n) * num / den * binomial(n, m)


def value_at_zero(n: int, omega):
    """Constant term poch(-omega, n) / poch(-n-omega, n).

    Exactly zero iff omega is an integer in {0, ..., n-1}.
    """
    om = as_omega(omega)
    den = pochhammer(-n - om.value, n)
    if den == 0:
        raise PoleError(f"value at 0 undefined: poch({-n}-{om.value}, {n}) = 0")
    return pochhammer(-om.value, n) / den


def star(p: Polynomial) -> Polynomial:
    """Reversed-and-conjugated polynomial z^deg * conj(p(1/conj(z)))."""
    return Polynomial(tuple(conjugate(c) for c in reversed(p.coeffs)))


def reflect_negative_omega(n: int, omega) -> Polynomial:
    """S_n^(-omega) from S_n^(omega-1) by coefficient reversal and scaling.

    Requires omega > 0 and omega not in {1, ..., n}; at those integers the
    scale factor blows up (the family itself degenerates there).
    """
    om = as_omega(omega)
    w = om.value
    if not w > 0:
        raise DomainError(f"reflection requires omega > 0, got {w}")
    if om.is_integer and 1 <= int(w) <= n:
        raise PoleError(f"reflection blows up for integer omega in 1..{n}, got {w}")
    den = pochhammer(1 - w, n)
    if den == 0:
        raise PoleError(f"reflection scale pole: poch(1-{w}, {n}) = 0")
    scale = (-1) ** n * pochhammer(w, n) / den
    base = construct(n, om.shifted(-1))
    return scale * base.reversed()


def taylor_about_minus_one(n: int, omega) -> tuple:
    """Coefficients c_m with S_n^omega(z) = sum_m c_m (1+z)^m, c_m exact.

    c_m = (m-th derivative at -1) / m!; monicity forces c_n = 1.
    """
    om = as_omega(omega)
    return tuple(
        derivative_at_minus_one(m, n, om) / math.factorial(m) for m in range(n + 1)
    )

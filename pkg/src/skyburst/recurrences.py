"""Recurrence relations, the generating function, and the second-order ODE.

Every relation is shipped as a constructive step (build the target polynomial
from lower data) so that a residual against the direct construction can be
checked exactly in rational arithmetic.

Two published forms of these relations circulate with typos; the corrected
identities used here were fixed by exact-arithmetic comparison at small
degrees, and the faulty printed forms are kept under ``*_printed`` names
purely so regression tests can show they fail:

* parameter shift: the z-free factor n^2/((omega+n)(omega+n+1)) is the one
  that holds; variants with n*z^2 or n^2*z do not.
* lifting: the final term carries no factor of z.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PoleError
from .moments import bilinear, toeplitz_det_closed, toeplitz_det_direct
from .scalarfield import as_omega, is_exact, pochhammer
from .skypoly import (
    Polynomial,
    construct,
    construct_series,
    construct_via_symmetry,
    derivative_at_minus_one,
    reflect_negative_omega,
    value_at_minus_one,
    value_at_zero,
)

__all__ = [
    "step_mixed",
    "step_omega_up",
    "step_omega_up_printed",
    "lifting",
    "lifting_printed",
    "lowering",
    "differential_step",
    "ode_residual",
    "genfun_compare",
    "IdentityReport",
    "DEFAULT_OMEGA_GRID",
    "run_identity_suite",
]

DEFAULT_OMEGA_GRID = (
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(5, 4),
    Fraction(7, 3),
    Fraction(22, 7),
)


def step_mixed(n: int, omega) -> Polynomial:
    """z*S_{n-1}^omega + omega^2/((omega+n-1)(omega+n)) * S_{n-1}^(omega-1).

    Equals construct(n, omega); the parameter-shifted companion replaces the
    reversed-conjugate polynomial of the classical circle recurrence.
    """
    if n < 1:
        raise DomainError("mixed step needs n >= 1")
    om = as_omega(omega)
    w = om.value
    den = (w + n - 1) * (w + n)
    if den == 0:
        raise PoleError(f"mixed step pole: (omega+n-1)(omega+n) = 0 at omega={w}")
    lower = construct(n - 1, om)
    shifted = construct(n - 1, om.shifted(-1))
    return lower.shifted(1) + (w * w / den) * shifted


def _omega_up_terms(n: int, om):
    w = om.value
    den = (w + n) * (w + n + 1)
    if den == 0:
        raise PoleError(f"parameter shift pole: (omega+n)(omega+n+1) = 0 at omega={w}")
    return construct(n, om), construct(n - 1, om), den


def step_omega_up(n: int, omega) -> Polynomial:
    """S_n^omega + n^2/((omega+n)(omega+n+1)) * S_{n-1}^omega = S_n^(omega+1)."""
    if n < 1:
        raise DomainError("parameter shift needs n >= 1")
    om = as_omega(omega)
    top, low, den = _omega_up_terms(n, om)
    return top + (n * n / den) * low


def step_omega_up_printed(n: int, omega, variant: str = "nz2") -> Polynomial:
    """Faulty printed forms of the parameter shift, kept for falsification tests.

    variant "nz2": factor n*z^2; variant "n2z": factor n^2*z.  Neither
    reproduces S_n^(omega+1).
    """
    if n < 1:
        raise DomainError("parameter shift needs n >= 1")
    om = as_omega(omega)
    top, low, den = _omega_up_terms(n, om)
    if variant == "nz2":
        return top + (n / den) * low.shifted(2)
    if variant == "n2z":
        return top + (n * n / den) * low.shifted(1)
    raise DomainError(f"unknown printed variant {variant!r}")


def _lifting_sum(n: int, om, extra_z_on_last: bool) -> Polynomial:
    w = om.value
    one_plus_z = Polynomial((1, 1))
    acc = Polynomial()
    for ell in range(n):
        coef = pochhammer(1 + w, ell) / math.factorial(ell)
        acc = acc + (coef * construct(ell, om)).shifted(n - ell - 1)
    acc = one_plus_z * acc
    last = (pochhammer(1 + w, n) / math.factorial(n)) * construct(n, om)
    if extra_z_on_last:
        last = last.shifted(1)
    return acc + last


def lifting(n: int, omega) -> Polynomial:
    """Assemble S_n^(omega+1) from S_0^omega ... S_n^omega.

    (2+omega)_n/n! * S_n^(omega+1) = (1+z) * sum_{l<n} (1+omega)_l/l! z^(n-l-1) S_l^omega
                                     + (1+omega)_n/n! * S_n^omega.
    """
    om = as_omega(omega)
    scale = pochhammer(2 + om.value, n)
    if scale == 0:
        raise PoleError(f"lifting scale pole: poch(2+{om.value}, {n}) = 0")
    rhs = _lifting_sum(n, om, extra_z_on_last=False)
    return (math.factorial(n) / scale) * rhs


def lifting_printed(n: int, omega) -> Polynomial:
    """Faulty printed lifting (spurious z on the final term); falsification only."""
    om = as_omega(omega)
    scale = pochhammer(2 + om.value, n)
    if scale == 0:
        raise PoleError(f"lifting scale pole: poch(2+{om.value}, {n}) = 0")
    rhs = _lifting_sum(n, om, extra_z_on_last=True)
    return (math.factorial(n) / scale) * rhs


def lowering(n: int, omega) -> Polynomial:
    """Assemble S_n^(omega-1) from S_0^omega ... S_n^omega.

    (omega)_n/n! * S_n^(omega-1) = (1+z) * sum_{l<n} (-1)^(n-l) (1+omega)_l/l! S_l^omega
                                   + (1+omega)_n/n! * S_n^omega.
    """
    om = as_omega(omega)
    w = om.value
    scale = pochhammer(w, n)
    if scale == 0:
        raise PoleError(f"lowering scale vanishes: poch({w}, {n}) = 0")
    one_plus_z = Polynomial((1, 1))
    acc = Polynomial()
    for ell in range(n):
        sign = -1 if (n - ell) % 2 else 1
        coef = sign * pochhammer(1 + w, ell) / math.factorial(ell)
        acc = acc + coef * construct(ell, om)
    rhs = one_plus_z * acc + (pochhammer(1 + w, n) / math.factorial(n)) * construct(n, om)
    return (math.factorial(n) / scale) * rhs


def differential_step(n: int, omega) -> Polynomial:
    """The derivative of S_n^omega from S_{n-1}^omega:

    (omega+n) * dS_n = n z dS_{n-1} + n (1+omega) S_{n-1}.
    """
    if n < 1:
        raise DomainError("differential step needs n >= 1")
    om = as_omega(omega)
    w = om.value
    den = w + n
    if den == 0:
        raise PoleError(f"differential step pole at omega = {-n}")
    lower = construct(n - 1, om)
    rhs = (n * lower.derivative()).shifted(1) + (n * (1 + w)) * lower
    return (1 / den if not is_exact(w) else Fraction(1) / den) * rhs


def ode_residual(n: int, omega) -> Polynomial:
    """-z(1+z) S'' + [1 - (2+omega-n)(z+1)] S' + (1+omega) n S; identically zero."""
    om = as_omega(omega)
    w = om.value
    s = construct(n, om)
    s1 = s.derivative()
    s2 = s1.derivative()
    minus_z_1pz = Polynomial((0, -1, -1))
    first_order = Polynomial((1 - (2 + w - n), -(2 + w - n)))
    return minus_z_1pz * s2 + first_order * s1 + ((1 + w) * n) * s


def genfun_compare(omega, z, T, N: int) -> float:
    """|partial sum of the generating function - closed form|.

    sum_{n<=N} (1+omega)_n/n! S_n^omega(z) T^n  vs  (1+T)^omega / (1-zT)^(omega+1)
    with principal-branch powers; requires |zT| < 1 and |T| < 1.
    """
    if N < 1:
        raise DomainError("need at least one term")
    om = as_omega(omega)
    w = om.as_float()
    z = complex(z)
    T = complex(T)
    if abs(z * T) >= 1 or abs(T) >= 1:
        raise DomainError("generating function needs |zT| < 1 and |T| < 1")
    for branch_arg, name in ((1 + T, "1+T"), (1 - z * T, "1-zT")):
        if branch_arg.imag == 0 and branch_arg.real <= 0:
            raise DomainError(f"branch cut: {name} is real and <= 0")
    total = 0j
    coef = 1.0
    t_pow = 1 + 0j
    for n in range(N + 1):
        p = construct(n, om)
        if p.scalar_kind == "rational":
            p = p.to_inexact()
        total += coef * p(z) * t_pow
        t_pow *= T
        coef *= (1.0 + w + n) / (n + 1.0)
    closed = cmath.exp(w * cmath.log(1 + T)) * cmath.exp(-(w + 1) * cmath.log(1 - z * T))
    return abs(total - closed)


# ---------------------------------------------------------------------------
# identity sweep used by the CLI verify command
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check at one parameter point."""

    identity_id: str
    params: tuple
    residual_norm: object
    passed: bool


def _coeff_residual(p: Polynomial, q: Polynomial):
    diff = p - q
    if diff.is_zero:
        return Fraction(0)
    return max(abs(c) for c in diff.coeffs)


def _check_orthogonality(n, w):
    s = construct(n, w)
    res = Fraction(0)
    for k in range(n):
        res = max(res, abs(bilinear(s, Polynomial((0,) * k + (1,)), w)))
    nondegenerate = bilinear(s, Polynomial((0,) * n + (1,)), w) != 0
    return res, res == 0 and nondegenerate


def _check_cauchy_det(n, w):
    res = abs(toeplitz_det_closed(n, w) - toeplitz_det_direct(n, w))
    return res, res == 0


def _check_mixed(n, w):
    res = _coeff_residual(step_mixed(n, w), construct(n, w))
    return res, res == 0


def _check_omega_up(n, w, printed=False):
    built = step_omega_up_printed(n, w) if printed else step_omega_up(n, w)
    res = _coeff_residual(built, construct(n, as_omega(w).shifted(1)))
    return res, res == 0


def _check_lifting(n, w, printed=False):
    built = lifting_printed(n, w) if printed else lifting(n, w)
    res = _coeff_residual(built, construct(n, as_omega(w).shifted(1)))
    return res, res == 0


def _check_lowering(n, w):
    res = _coeff_residual(lowering(n, w), construct(n, as_omega(w).shifted(-1)))
    return res, res == 0


def _check_derivative(n, w):
    res = _coeff_residual(differential_step(n, w), construct(n, w).derivative())
    return res, res == 0


def _check_ode(n, w):
    r = ode_residual(n, w)
    res = Fraction(0) if r.is_zero else max(abs(c) for c in r.coeffs)
    return res, res == 0


def _check_symmetry(n, w):
    # integer-parameter value: direct series vs shifted lower-degree member
    m = int(w)
    res = _coeff_residual(construct_series(n, Fraction(m)), construct_via_symmetry(n, m))
    return res, res == 0


def _check_reflection(n, w):
    res = _coeff_residual(reflect_negative_omega(n, w), construct(n, -Fraction(w)))
    return res, res == 0


def _check_boundary_values(n, w):
    s = construct(n, w)
    res = abs(value_at_minus_one(n, w) - s(Fraction(-1)))
    d = s
    for m in range(n + 1):
        res = max(res, abs(derivative_at_minus_one(m, n, w) - d(Fraction(-1))))
        d = d.derivative()
    res = max(res, abs(value_at_zero(n, w) - s(Fraction(0))))
    return res, res == 0


def _suite_tasks(n_max, omegas, printed_variants):
    for w in omegas:
        for n in range(n_max + 1):
            yield ("orthogonality", n, w, lambda n=n, w=w: _check_orthogonality(n, w))
            yield ("cauchy_determinant", n, w, lambda n=n, w=w: _check_cauchy_det(n, w))
            if n >= 1:
                yield ("mixed_step", n, w, lambda n=n, w=w: _check_mixed(n, w))
                yield (
                    "omega_shift",
                    n,
                    w,
                    lambda n=n, w=w: _check_omega_up(n, w, printed=printed_variants),
                )
                yield ("derivative_recurrence", n, w, lambda n=n, w=w: _check_derivative(n, w))
            yield (
                "lifting",
                n,
                w,
                lambda n=n, w=w: _check_lifting(n, w, printed=printed_variants),
            )
            yield ("lowering", n, w, lambda n=n, w=w: _check_lowering(n, w))
            yield ("ode", n, w, lambda n=n, w=w: _check_ode(n, w))
            yield ("negative_reflection", n, w, lambda n=n, w=w: _check_reflection(n, w))
            yield ("boundary_values", n, w, lambda n=n, w=w: _check_boundary_values(n, w))
    for n in range(1, n_max + 1):
        for m in range(n):
            yield ("degree_symmetry", n, Fraction(m), lambda n=n, m=m: _check_symmetry(n, m))


_FALSIFIED = (
    ("omega_shift_printed_rejected", 1, Fraction(1, 2), lambda: _check_omega_up(1, Fraction(1, 2), printed=True)),
    ("lifting_printed_rejected", 1, Fraction(1, 2), lambda: _check_lifting(1, Fraction(1, 2), printed=True)),
)


def run_identity_suite(
    n_max: int = 8,
    omegas=DEFAULT_OMEGA_GRID,
    printed_variants: bool = False,
    max_workers: int | None = None,
) -> list:
    """Run the exact identity sweep; returns IdentityReports in deterministic order.

    Includes two falsification rows that pass only when the faulty printed
    variants produce a nonzero residual.  ``printed_variants=True`` swaps the
    faulty forms into the main families (so the sweep must then fail).
    """
    tasks = list(_suite_tasks(n_max, omegas, printed_variants))
    if max_workers is None:
        env = os.environ.get("SKYBURST_THREADS")
        max_workers = max(1, min(int(env), os.cpu_count() or 1)) if env else 1
    def run_one(task):
        identity_id, n, w, fn = task
        residual, ok = fn()
        return IdentityReport(identity_id, (n, w), residual, ok)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            reports = list(pool.map(run_one, tasks))
    else:
        reports = [run_one(t) for t in tasks]
    for identity_id, n, w, fn in _FALSIFIED:
        residual, reproduced = fn()
        reports.append(IdentityReport(identity_id, (n, w), residual, not reproduced))
    return reports

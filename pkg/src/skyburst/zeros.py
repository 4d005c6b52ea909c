"""Root finding, zero classification, emergence angles, and parameter continuation.

The qualitative picture as omega grows through (m, m+1): m+1 simple zeros sit
in (-1, 0); the other n-m-1 loop through the complex plane, leaving and
re-entering the origin at the integers ("bursts"); a positive-real looper
exists exactly when n-m is even.  Once omega > n all zeros are trapped in
(-1, 0) and drift to -1 ("fizzle").

Roots are computed by simultaneous Aberth iteration with a Newton polish;
float coefficients always come from the exact rational coefficients rounded
once, so the conditioning of the coefficient sum never contaminates the
input to the root finder.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import permutations

from .errors import ConvergenceError, DomainError, TrackingError
from .scalarfield import Omega, as_omega
from .skypoly import Polynomial, construct, taylor_about_minus_one

__all__ = [
    "ZeroTag",
    "ZeroSet",
    "ZeroCounts",
    "TrajectoryBundle",
    "find_zeros",
    "zeros_of",
    "classify",
    "emergence_angles",
    "trace",
    "fizzle_gap",
    "simplicity_margin",
    "AXIS_TOL",
    "ORIGIN_TOL",
    "SIMPLICITY_THRESHOLD",
    "INTEGER_OFFSET",
    "DEFAULT_TOL",
]

AXIS_TOL = 1e-9          # |Im z| <= AXIS_TOL * (1 + |z|) counts as real
ORIGIN_TOL = 1e-12       # |z| <= ORIGIN_TOL counts as the origin (post-deflation)
SIMPLICITY_THRESHOLD = 1e-6
INTEGER_OFFSET = 1e-3    # continuation grids never sample closer to an integer
MIN_STEP = 1e-6
MAX_ITERATIONS = 500
DEFAULT_TOL = 1e-10


class ZeroTag(str, Enum):
    NEG_UNIT = "neg_unit"
    POS_REAL = "pos_real"
    COMPLEX = "complex_offaxis"
    ORIGIN = "origin"


@dataclass(frozen=True)
class ZeroSet:
    """Roots with classification tags; origin roots carry their multiplicity."""

    roots: tuple          # ((value, ZeroTag), ...)
    n: int
    omega: float
    residual_max: float

    def values(self, include_origin: bool = True) -> list:
        return [z for z, tag in self.roots if include_origin or tag is not ZeroTag.ORIGIN]


@dataclass(frozen=True)
class ZeroCounts:
    neg_unit: int
    pos_real: int
    complex_offaxis: int
    origin: int


def _tag_root(z: complex) -> ZeroTag:
    if abs(z) <= ORIGIN_TOL:
        return ZeroTag.ORIGIN
    if abs(z.imag) <= AXIS_TOL * (1 + abs(z)):
        if -1 < z.real < 0:
            return ZeroTag.NEG_UNIT
        if z.real > 0:
            return ZeroTag.POS_REAL
    return ZeroTag.COMPLEX


def _horner_pair(coeffs, z):
    """Value and derivative at z for an ascending coefficient list."""
    p = coeffs[-1]
    dp = 0j
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth(coeffs):
    """All roots of an ascending complex coefficient list with nonzero constant term.

    Simultaneous (Ehrlich-style) iteration from equispaced starting points on
    a circle of radius 1 + max|c_k|, rotated half a radian to break symmetry.
    """
    d = len(coeffs) - 1
    lead = coeffs[-1]
    c = [x / lead for x in coeffs]
    radius = 1.0 + max(abs(x) for x in c[:-1])
    resid_floor = 64 * 2.220446049250313e-16 * (1 + max(abs(x) for x in c))
    roots = [radius * cmath.exp(1j * (2 * math.pi * k / d + 0.5)) for k in range(d)]
    for _ in range(MAX_ITERATIONS):
        biggest = 0.0
        worst_value = 0.0
        for i in range(d):
            z = roots[i]
            p, dp = _horner_pair(c, z)
            worst_value = max(worst_value, abs(p))
            if p == 0:
                continue
            if dp == 0:
                roots[i] = z * 1.0000001 + 1e-12
                biggest = math.inf
                continue
            ratio = p / dp
            s = 0j
            for j in range(d):
                if j == i:
                    continue
                dz = z - roots[j]
                if dz == 0:
                    dz = 1e-20
                s += 1 / dz
            denom = 1 - ratio * s
            step = ratio if denom == 0 else ratio / denom
            roots[i] = z - step
            biggest = max(biggest, abs(step) / (1 + abs(roots[i])))
        # step criterion, or machine-level residuals at every iterate (a strict
        # step bound can limit-cycle in the last ulp near clustered roots)
        if biggest < 1e-14 or worst_value < resid_floor:
            return roots
    raise ConvergenceError(
        f"root iteration did not settle in {MAX_ITERATIONS} sweeps", best=roots
    )


def _newton_polish(coeffs, z, sweeps: int = 3):
    for _ in range(sweeps):
        p, dp = _horner_pair(coeffs, z)
        if p == 0 or dp == 0:
            return z
        step = p / dp
        if abs(step) > 1e-2 * (1 + abs(z)):
            return z  # polish must not wander off a converged iterate
        z = z - step
    return z


def find_zeros(p: Polynomial, tol: float = DEFAULT_TOL, omega: float = math.nan) -> ZeroSet:
    """All roots of p with residual certification.

    Origin roots are deflated analytically first whenever the constant term is
    exactly zero.  Raises ConvergenceError (carrying the best iterate) if the
    residual bound tol * (1 + max|coeff|) cannot be certified.
    """
    if p.is_zero or p.degree < 1:
        raise DomainError("root finding needs a nonzero polynomial of degree >= 1")
    coeffs = [c if isinstance(c, complex) else complex(float(c)) for c in p.coeffs]
    n = len(coeffs) - 1
    scale = 1 + max(abs(c) for c in coeffs)

    origin_mult = 0
    while coeffs[0] == 0:
        origin_mult += 1
        coeffs = coeffs[1:]

    found = []
    if len(coeffs) > 1:
        found = _aberth(coeffs)
        found = [_newton_polish(coeffs, z) for z in found]

    residual_max = 0.0
    for z in found:
        residual_max = max(residual_max, abs(_horner_pair(coeffs, z)[0]))
    if residual_max > tol * scale:
        raise ConvergenceError(
            f"residual {residual_max:.3e} exceeds bound {tol * scale:.3e}",
            best=found,
        )

    roots = [(0j, ZeroTag.ORIGIN)] * origin_mult
    roots += [(z, _tag_root(z)) for z in sorted(found, key=lambda z: (z.real, z.imag))]
    return ZeroSet(roots=tuple(roots), n=n, omega=omega, residual_max=residual_max)


def zeros_of(n: int, omega, tol: float = DEFAULT_TOL) -> ZeroSet:
    """Roots of the degree-n family member: exact coefficients, rounded once."""
    om = as_omega(omega)
    if not om.exact_mode:
        om = Omega.exact(Fraction(om.value))  # floats are exact binary rationals
    p = construct(n, om).to_inexact()
    return find_zeros(p, tol=tol, omega=om.as_float())


def classify(zs: ZeroSet, omega=None) -> ZeroCounts:
    """Tag counts.  For non-integer omega in (m, m+1) with m <= n-1 the family
    puts m+1 roots in (-1, 0), one positive-real root iff n-m is even, and the
    rest off-axis; for omega > n all n roots are in (-1, 0)."""
    tags = [tag for _, tag in zs.roots]
    return ZeroCounts(
        neg_unit=tags.count(ZeroTag.NEG_UNIT),
        pos_real=tags.count(ZeroTag.POS_REAL),
        complex_offaxis=tags.count(ZeroTag.COMPLEX),
        origin=tags.count(ZeroTag.ORIGIN),
    )


def emergence_angles(n: int, m: int, eps: float) -> tuple:
    """Sorted arguments (mod 2*pi) of the n-m smallest roots of S_n^(m+eps).

    As eps -> 0 these approach {pi + 2*pi*k/(n-m)}; the set contains the
    positive ray exactly when n-m is even.
    """
    if not (isinstance(n, int) and isinstance(m, int) and 0 <= m <= n - 1):
        raise DomainError(f"need integers 0 <= m <= n-1, got (n={n}, m={m})")
    if not 0 < eps <= 0.05:
        raise DomainError(f"offset must lie in (0, 0.05], got {eps}")
    zs = zeros_of(n, Fraction(m) + Fraction(eps))
    ordered = sorted(zs.values(), key=abs)
    cluster = ordered[: n - m]
    return tuple(sorted(cmath.phase(z) % (2 * math.pi) for z in cluster))


def fizzle_gap(n: int, omega) -> float:
    """max_k |z_k + 1| over the roots, for omega > n.

    Found from the expansion about -1 (exact coefficients, rounded once): for
    large omega the roots cluster at -1, where the shifted basis stays well
    conditioned while the monomial basis loses most of its accuracy.
    """
    om = as_omega(omega)
    if not om.as_float() > n:
        raise DomainError(f"fizzle regime needs omega > n, got omega={om.value}, n={n}")
    if n == 0:
        return 0.0
    if not om.exact_mode:
        om = Omega.exact(Fraction(om.value))
    shifted = Polynomial(taylor_about_minus_one(n, om)).to_inexact()
    zs = find_zeros(shifted, tol=1e-9)
    return max(abs(t) for t in zs.values())


def simplicity_margin(zs: ZeroSet) -> float:
    """Minimum pairwise distance among non-origin roots; inf for fewer than two."""
    vals = zs.values(include_origin=False)
    if len(vals) < 2:
        return math.inf
    return min(abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:])


# ---------------------------------------------------------------------------
# continuation in omega
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrajectoryBundle:
    """Matched zero paths over an increasing omega grid.

    paths[i][k] is the position of path i at omega_grid[k]; burst_events lists
    the integers crossed.  Within an integer-free stretch consecutive path
    positions differ by less than the match threshold used to build the
    bundle; across a burst the assignment is best-effort (matching through a
    burst is ill-posed, the event marks it).
    """

    omega_grid: tuple
    paths: tuple
    burst_events: tuple
    match_threshold: float

    def segment_slices(self) -> list:
        """Inclusive index ranges of the grid between consecutive integer crossings."""
        out = []
        lo = 0
        for k in range(len(self.omega_grid) - 1):
            if math.floor(self.omega_grid[k]) != math.floor(self.omega_grid[k + 1]):
                out.append((lo, k))
                lo = k + 1
        out.append((lo, len(self.omega_grid) - 1))
        return out


@dataclass(frozen=True)
class _Config:
    """Conjugate-symmetrized root layout: reals, then (upper, lower) pairs."""

    reals: tuple
    uppers: tuple

    def flat(self) -> list:
        out = [complex(r, 0.0) for r in self.reals]
        for u in self.uppers:
            out.append(u)
            out.append(u.conjugate())
        return out


def _symmetrize(values) -> _Config:
    reals, uppers, lowers = [], [], []
    for z in values:
        if abs(z.imag) <= AXIS_TOL * (1 + abs(z)):
            reals.append(z.real)
        elif z.imag > 0:
            uppers.append(z)
        else:
            lowers.append(z)
    # pair each upper with its mirror image and store the exact average
    paired = []
    lowers_left = list(lowers)
    for u in sorted(uppers, key=lambda z: (z.real, z.imag)):
        if lowers_left:
            j = min(range(len(lowers_left)), key=lambda j: abs(lowers_left[j].conjugate() - u))
            mate = lowers_left.pop(j)
            paired.append((u + mate.conjugate()) / 2)
        else:
            reals.append(u.real)
    for leftover in lowers_left:
        reals.append(leftover.real)
    return _Config(reals=tuple(sorted(reals)), uppers=tuple(sorted(paired, key=lambda z: (z.real, z.imag))))


def _min_assignment(xs, ys):
    """Exhaustive minimal-total-distance bijection for small lists (<= 8)."""
    if len(xs) != len(ys):
        raise ValueError("assignment needs equal sizes")
    if not xs:
        return (), 0.0
    if len(xs) > 8:
        return _greedy_assignment(xs, ys)
    best = None
    best_cost = math.inf
    for perm in permutations(range(len(ys))):
        cost = sum(abs(x - ys[j]) for x, j in zip(xs, perm))
        if cost < best_cost:
            best_cost = cost
            best = perm
    return best, best_cost


def _greedy_assignment(xs, ys):
    used = set()
    perm = []
    for x in xs:
        j = min((j for j in range(len(ys)) if j not in used), key=lambda j: abs(x - ys[j]))
        used.add(j)
        perm.append(j)
    return tuple(perm), sum(abs(x - ys[j]) for x, j in zip(xs, perm))


def _match_within_segment(src: _Config, tgt: _Config):
    """Permutation of flat indices src -> tgt, preserving the mirror structure.

    Real roots are matched in sorted order (optimal in one dimension); upper
    representatives by exhaustive minimal-cost assignment; lowers mirror their
    uppers.  Only valid when both configurations have the same real count.
    """
    r = len(src.reals)
    perm = [0] * (r + 2 * len(src.uppers))
    for i in range(r):
        perm[i] = i
    sigma, _ = _min_assignment(list(src.uppers), list(tgt.uppers))
    for j, tj in enumerate(sigma):
        perm[r + 2 * j] = r + 2 * tj
        perm[r + 2 * j + 1] = r + 2 * tj + 1
    src_flat, tgt_flat = src.flat(), tgt.flat()
    disp = max(abs(src_flat[i] - tgt_flat[perm[i]]) for i in range(len(perm))) if perm else 0.0
    return perm, disp


def _match_best_effort(src: _Config, tgt: _Config):
    """Deterministic nearest-neighbor bijection on raw positions (burst crossings)."""
    src_flat, tgt_flat = src.flat(), tgt.flat()
    used = set()
    perm = [0] * len(src_flat)
    for i, z in enumerate(src_flat):
        j = min((j for j in range(len(tgt_flat)) if j not in used), key=lambda j: abs(z - tgt_flat[j]))
        used.add(j)
        perm[i] = j
    disp = max(abs(src_flat[i] - tgt_flat[perm[i]]) for i in range(len(perm))) if perm else 0.0
    return perm, disp


def _match(src: _Config, tgt: _Config, crossing: bool):
    if not crossing and len(src.reals) == len(tgt.reals):
        return _match_within_segment(src, tgt)
    return _match_best_effort(src, tgt)


def _clamp_away(w: float, upward: bool) -> float:
    nearest = round(w)
    if abs(w - nearest) < INTEGER_OFFSET:
        return nearest + INTEGER_OFFSET if upward else nearest - INTEGER_OFFSET
    return w


def trace(
    n: int,
    omega_start: float,
    omega_end: float,
    base_step: float = 0.02,
    match_threshold: float = 0.1,
    tol: float = DEFAULT_TOL,
) -> TrajectoryBundle:
    """Continuation of all n zeros over [omega_start, omega_end].

    The grid keeps a fixed offset from every integer (the family degenerates
    there); integer crossings hop from m - offset to m + offset, are matched
    best-effort, and are recorded as burst events.  Within a segment the local
    step is halved until consecutive root sets match within match_threshold;
    underflow of the step below 1e-6 raises TrackingError.
    """
    if n < 1:
        raise DomainError("continuation needs degree >= 1")
    if not (0 <= omega_start < omega_end):
        raise DomainError("need 0 <= omega_start < omega_end")
    if base_step <= 0:
        raise DomainError("base_step must be positive")

    start = _clamp_away(float(omega_start), upward=omega_start >= round(omega_start))
    end = _clamp_away(float(omega_end), upward=omega_end > round(omega_end))
    if start >= end:
        raise DomainError("empty range after integer-offset clamping")

    def config_at(w: float) -> _Config:
        return _symmetrize(zeros_of(n, w, tol=tol).values())

    current = start
    cfg = config_at(current)
    grid = [current]
    events = []
    paths = [[z] for z in cfg.flat()]
    positions = list(range(len(paths)))
    h = base_step

    def advance(target: float, crossing: bool) -> float:
        nonlocal cfg
        new_cfg = config_at(target)
        perm, disp = _match(cfg, new_cfg, crossing)
        if not crossing and disp >= match_threshold:
            return disp
        flat = new_cfg.flat()
        for i in range(len(paths)):
            positions[i] = perm[positions[i]]
            paths[i].append(flat[positions[i]])
        grid.append(target)
        cfg = new_cfg
        return -1.0

    while current < end - 1e-12:
        next_int = math.floor(current) + 1
        pre_boundary = next_int - INTEGER_OFFSET
        if abs(current - pre_boundary) < 1e-12 and pre_boundary < end:
            target = next_int + INTEGER_OFFSET
            advance(target, crossing=True)
            events.append(next_int)
            current = target
            h = base_step
            continue
        target = min(current + h, pre_boundary, end)
        disp = advance(target, crossing=False)
        if disp >= 0:
            if target - current <= MIN_STEP:
                raise TrackingError(
                    f"root sets at omega={current:.6f} and {target:.6f} moved {disp:.3f}, "
                    f"beyond threshold {match_threshold}, with the step already at its floor",
                    omega=target,
                )
            h = (target - current) / 2
            continue
        current = target
        h = min(base_step, 2 * h)

    return TrajectoryBundle(
        omega_grid=tuple(grid),
        paths=tuple(tuple(p) for p in paths),
        burst_events=tuple(events),
        match_threshold=match_threshold,
    )

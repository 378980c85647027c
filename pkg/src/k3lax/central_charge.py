"""Central charges <exp(B + i*alpha*H), .> and the positive cone they live in.

A charge is packaged as its characteristic vector exp(B + i*alpha*H) with
complexified Mukai coordinates

    (1,  B + i*alpha*H,  (B^2 - alpha^2 H^2)/2 + i*alpha*(B . H)),

so evaluation is just the Mukai pairing.  For rational B and alpha in
Q(sqrt(d)) every component stays inside the quadratic-complex scalars and
all predicates below are decided exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .spherical_enum import SearchBox, enumerate_spherical
from .errors import DimensionError, DomainError, EmptySupport
from .mukai_lattice import (
    MukaiVector,
    NSLattice,
    SphericalClass,
    SphericalNormBasis,
    spherical_norm,
)
from .exact_scalars import QuadComplex, QuadNumber, try_sqrt


@dataclass(frozen=True)
class BWParams:
    """A rational B-field and a positive scale alpha along the polarization."""

    b_field: tuple[Fraction, ...]
    alpha: QuadNumber | Fraction | int

    def __post_init__(self):
        object.__setattr__(
            self, "b_field", tuple(Fraction(c) for c in self.b_field)
        )


@dataclass(frozen=True)
class OmegaVector:
    """Complexified Mukai vector of a charge, with exact components."""

    r: QuadComplex
    D: tuple[QuadComplex, ...]
    s: QuadComplex

    def conjugate(self) -> OmegaVector:
        return OmegaVector(
            self.r.conjugate(),
            tuple(c.conjugate() for c in self.D),
            self.s.conjugate(),
        )

    def real_part(self) -> tuple[QuadNumber, tuple[QuadNumber, ...], QuadNumber]:
        return (self.r.re, tuple(c.re for c in self.D), self.s.re)

    def imag_part(self) -> tuple[QuadNumber, tuple[QuadNumber, ...], QuadNumber]:
        return (self.r.im, tuple(c.im for c in self.D), self.s.im)


def _normalize_alpha(lat: NSLattice, alpha) -> QuadNumber:
    if not isinstance(alpha, QuadNumber):
        alpha = QuadNumber(Fraction(alpha))
    if not alpha.is_rational and alpha.d != lat.degree:
        raise DomainError(
            f"alpha lives over sqrt({alpha.d}), the lattice field is sqrt({lat.degree})"
        )
    if alpha.sign() <= 0:
        raise DomainError("alpha must be positive")
    return QuadNumber(alpha.a, alpha.b, lat.degree) if alpha.is_rational else alpha


def omega_from_bw(lat: NSLattice, params: BWParams) -> OmegaVector:
    """Characteristic vector of the charge with the given (B, alpha)."""
    B = params.b_field
    if len(B) != lat.rank:
        raise DimensionError(
            f"B has length {len(B)}, lattice rank is {lat.rank}"
        )
    alpha = _normalize_alpha(lat, params.alpha)
    d = lat.degree
    H = lat.ample_class
    alpha_sq = alpha * alpha
    b_sq = Fraction(lat.dot(B, B))
    bh = Fraction(lat.dot_ample(B))
    one = QuadNumber(1, 0, d)
    zero = QuadNumber(0, 0, d)
    r = QuadComplex(one, zero)
    D = tuple(
        QuadComplex(QuadNumber(Fraction(b), 0, d), alpha * h)
        for b, h in zip(B, H)
    )
    s_re = QuadNumber(b_sq / 2, 0, d) - alpha_sq * d
    s_im = alpha * bh
    return OmegaVector(r, D, QuadComplex(s_re, s_im))


def eval_Z(lat: NSLattice, omega: OmegaVector, v) -> QuadComplex:
    """Mukai pairing of the characteristic vector with an integer class."""
    v = v.v if isinstance(v, SphericalClass) else v
    acc = None
    for i, row in enumerate(lat.gram):
        coeff = sum(g * c for g, c in zip(row, v.D))
        if coeff == 0:
            continue
        term = omega.D[i] * coeff
        acc = term if acc is None else acc + term
    tail = -(omega.r * v.s) - (omega.s * v.r)
    return tail if acc is None else acc + tail


def closed_form_Z(lat: NSLattice, B: Sequence[Fraction], alpha, v) -> QuadComplex:
    """The same charge written without the characteristic vector:

        Re Z = B . D - s - r*B^2/2 + r*d*alpha^2
        Im Z = alpha * ((D - r*B) . H)

    Kept separate from `eval_Z` so the two can cross-check each other.
    """
    v = v.v if isinstance(v, SphericalClass) else v
    if len(B) != lat.rank:
        raise DimensionError(f"B has length {len(B)}, lattice rank is {lat.rank}")
    alpha = _normalize_alpha(lat, alpha)
    d = lat.degree
    B = tuple(Fraction(c) for c in B)
    b_sq = lat.dot(B, B)
    re_rat = Fraction(lat.dot(B, v.D)) - v.s - Fraction(v.r) * b_sq / 2
    re = QuadNumber(re_rat, 0, d) + (alpha * alpha) * (v.r * d)
    i_v = Fraction(lat.dot_ample(v.D)) - Fraction(v.r) * lat.dot_ample(B)
    im = alpha * i_v
    return QuadComplex(re, im)


def _pair_real(lat: NSLattice, u, v) -> QuadNumber:
    """Mukai pairing of two real vectors with QuadNumber coordinates."""
    ur, uD, us = u
    vr, vD, vs = v
    acc = QuadNumber(0, 0, lat.degree)
    for i, row in enumerate(lat.gram):
        for j, g in enumerate(row):
            if g != 0:
                acc = acc + uD[i] * vD[j] * g
    return acc - ur * vs - vr * us


def reference_omega(lat: NSLattice) -> OmegaVector:
    """The charge exp(i*H), the agreed base point of the positive cone."""
    zero_b = tuple(Fraction(0) for _ in range(lat.rank))
    return omega_from_bw(lat, BWParams(zero_b, Fraction(1)))


def in_P_plus(lat: NSLattice, omega: OmegaVector) -> bool:
    """Whether the real and imaginary parts span an oriented positive plane.

    Positivity is the positive definiteness of the 2x2 Gram matrix of
    (Re, Im); the orientation is compared against exp(i*H) through the
    determinant of the cross-pairing matrix, which is nonzero whenever
    both planes are positive, and has constant sign on each connected
    component of the positive cone.
    """
    re = omega.real_part()
    im = omega.imag_part()
    g11 = _pair_real(lat, re, re)
    g12 = _pair_real(lat, re, im)
    g22 = _pair_real(lat, im, im)
    if g11.sign() <= 0:
        return False
    if (g11 * g22 - g12 * g12).sign() <= 0:
        return False
    base = reference_omega(lat)
    base_re = base.real_part()
    base_im = base.imag_part()
    m11 = _pair_real(lat, re, base_re)
    m12 = _pair_real(lat, re, base_im)
    m21 = _pair_real(lat, im, base_re)
    m22 = _pair_real(lat, im, base_im)
    return (m11 * m22 - m12 * m21).sign() > 0


def _euclid_norm(v: MukaiVector) -> float:
    return math.sqrt(sum(c * c for c in v.coords()))


def spherical_wall_hits(
    lat: NSLattice,
    omega: OmegaVector,
    box: SearchBox,
    mode: str = "exact",
    tol: float = 1e-9,
    jobs: int = 1,
) -> list[SphericalClass]:
    """Spherical classes in the box on which the charge vanishes.

    Exact mode demands both components be identically zero; float mode
    accepts |Z| <= tol * max(1, |v|) with |v| the Euclidean coordinate
    size of the class.
    """
    if mode not in ("exact", "float"):
        raise DomainError(f"unknown mode {mode!r}")
    hits = []
    for cls in enumerate_spherical(lat, box, jobs=jobs):
        z = eval_Z(lat, omega, cls)
        if mode == "exact":
            if z.is_zero:
                hits.append(cls)
        else:
            size = abs(complex(z.approx(64)))
            if size <= tol * max(1.0, _euclid_norm(cls.v)):
                hits.append(cls)
    return hits


@dataclass(frozen=True)
class WallHit:
    """One solution alpha of the alignment equation, with its witnesses."""

    alpha_sq: Fraction
    alpha: QuadNumber | None
    witnesses: tuple[MukaiVector, ...]


@dataclass(frozen=True)
class WallScan:
    hits: tuple[WallHit, ...]
    aligned: tuple[MukaiVector, ...]


def wall_scan_alpha(
    lat: NSLattice,
    b_field: Sequence[Fraction],
    delta,
    alpha_min,
    box: SearchBox,
) -> WallScan:
    """Parameters alpha > alpha_min where some class aligns with delta.

    Along the ray (B fixed, alpha varying) the condition
    Im(Z(w) * conj(Z(delta))) = 0 reduces to

        alpha^2 * d * (I_w r_delta - I_delta r_w) + (I_w c_delta - I_delta c_w) = 0

    with I_v = (D_v - r_v B) . H and c_v = B . D_v - s_v - r_v B^2 / 2,
    so each candidate w contributes at most one positive root, and the
    root is the square root of a rational.  Candidates are the classes in
    the box with w != 0, w != delta and both w and delta - w of square
    >= -2.  A candidate aligned at every alpha (both coefficients zero)
    is reported separately and contributes no root.

    The loop below runs in scaled integer arithmetic: with q clearing the
    denominators of B, the quantities q*I_v and 2*q^2*c_v are integers.
    """
    delta_v = delta.v if isinstance(delta, SphericalClass) else delta
    B = tuple(Fraction(c) for c in b_field)
    if len(B) != lat.rank:
        raise DimensionError(f"B has length {len(B)}, lattice rank is {lat.rank}")
    if not isinstance(alpha_min, QuadNumber):
        alpha_min = QuadNumber(Fraction(alpha_min))
    if alpha_min.sign() <= 0:
        raise DomainError("alpha_min must be positive")
    d = lat.degree
    q = 1
    for c in B:
        q = q * c.denominator // math.gcd(q, c.denominator)
    P = tuple(int(c * q) for c in B)  # q * B, integral
    H = lat.ample_class
    ph = lat.dot(P, H)
    pp = lat.dot(P, P)

    def scaled_invariants(v: MukaiVector) -> tuple[int, int]:
        # (q * I_v, 2 * q^2 * c_v)
        hd = lat.dot_ample(v.D)
        pd = lat.dot(P, v.D)
        return q * hd - v.r * ph, 2 * q * pd - 2 * q * q * v.s - v.r * pp
    if delta_v.r == 0 and delta_v.s == 0 and not any(delta_v.D):
        raise DomainError("reference class must be nonzero")
    i_delta, c_delta = scaled_invariants(delta_v)
    alpha_min_sq = alpha_min * alpha_min
    roots: dict[Fraction, list[MukaiVector]] = {}
    aligned: list[MukaiVector] = []
    d_range = range(-box.d_bound, box.d_bound + 1)
    for r in range(-box.r_max, box.r_max + 1):
        for D in itertools.product(d_range, repeat=lat.rank):
            d_sq = lat.dot(D, D)
            hd = lat.dot_ample(D)
            pd = lat.dot(P, D)
            i_w = q * hd - r * ph
            c_w_base = 2 * q * pd - r * pp
            for s in range(-box.s_bound, box.s_bound + 1):
                if r == 0 and s == 0 and not any(D):
                    continue
                w = MukaiVector(r, D, s)
                if w == delta_v:
                    continue
                if d_sq - 2 * r * s < -2:
                    continue
                rest = delta_v - w
                if lat.dot(rest.D, rest.D) - 2 * rest.r * rest.s < -2:
                    continue
                c_w = c_w_base - 2 * q * q * s
                coeff = i_w * delta_v.r - i_delta * r
                const = i_w * c_delta - i_delta * c_w
                if coeff == 0:
                    if const == 0:
                        aligned.append(w)
                    continue
                alpha_sq = Fraction(-const, 2 * q * q * d * coeff)
                if alpha_sq <= 0 or alpha_sq <= alpha_min_sq:
                    continue
                roots.setdefault(alpha_sq, []).append(w)
    hits = tuple(
        WallHit(
            alpha_sq,
            try_sqrt(QuadNumber(alpha_sq, 0, d)),
            tuple(roots[alpha_sq]),
        )
        for alpha_sq in sorted(roots)
    )
    return WallScan(hits, tuple(aligned))


@dataclass(frozen=True)
class SupportBound:
    """Largest ratio (norm / mass)^2 over a box, with the class attaining it."""

    ratio_sq: QuadNumber
    witness: SphericalClass

    @property
    def value(self) -> float:
        return float(mpmath.sqrt(self.ratio_sq.approx(64)))


def support_constant(
    lat: NSLattice,
    basis: SphericalNormBasis,
    omega: OmegaVector,
    box: SearchBox,
) -> SupportBound:
    """Best constant C with |v| <= C |Z(v)| over spherical classes in the box.

    Classes in the kernel of the charge are skipped (no finite constant
    covers them); if nothing in the box carries nonzero charge the bound
    is undefined and EmptySupport is raised.  Growing the box can only
    increase the bound, which is what makes it usable as a monotone
    lower estimate of the true support constant.
    """
    best: SupportBound | None = None
    for cls in enumerate_spherical(lat, box):
        z = eval_Z(lat, omega, cls)
        if z.is_zero:
            continue
        n = spherical_norm(lat, basis, cls)
        ratio = QuadNumber(Fraction(n * n), 0, lat.degree) / z.norm_square()
        if best is None or ratio > best.ratio_sq:
            best = SupportBound(ratio, cls)
    if best is None:
        raise EmptySupport(f"no class with nonzero charge in box {box.as_tuple()}")
    return best

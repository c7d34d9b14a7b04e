"""Geometric phases of three-level pure states.

The geometric phase of a curve is its total phase minus its dynamical
phase.  For a geodesic polygon it reduces to the Bargmann form

    phi_g = -arg[(psi1, psi2)(psi2, psi3) ... (psik, psi1)],

which is invariant under independent rephasing of every vertex.  A
triangle has a four-parameter canonical form (xi, eta, zeta, chi2) with
vertices

    psi1 = (0, 0, 1)
    psi2 = (0, sin xi, cos xi)
    psi3 = (sin eta cos zeta, e^{i chi2} sin eta sin zeta, cos eta)

and in it the phase collapses to the closed form

    phi_g = arg(cos xi cos eta + sin xi sin eta sin zeta e^{-i chi2}).

Four further routes to the same number are provided: the Bargmann
product, an SU(3)-invariant expression in the eight-vectors alone, a
line integral of the chart one-form

    phi_g = -loop_integral[ sin^2(theta) (cos^2(phi) dchi1
                                          + sin^2(phi) dchi2) ],

and (in the evolution module) integration of the concrete Hamiltonians
that drive the triangle.  All phases live on the principal branch
(-pi, pi].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import geodesics, states, su3
from .errors import (
    ChartSingular,
    DegenerateTriangle,
    NotClosed,
    NotTwoLevel,
    OrthogonalConsecutive,
    OrthogonalPair,
    OrthogonalStates,
    OutOfRange,
    TooFewSamples,
)
from .geodesics import EPS_ORTH


@dataclass(frozen=True)
class PhaseResult:
    """An angle in (-pi, pi] tagged with the route that produced it."""

    value: float
    method: str

    def __float__(self):
        return self.value


def principal_branch(angle):
    """Reduce an angle to (-pi, pi]."""
    return float(np.arctan2(np.sin(angle), np.cos(angle)))


def phase_distance(a, b):
    """Distance between two angles on the circle."""
    return abs(principal_branch(float(a) - float(b)))


def total_phase(psi1, psi2):
    """Relative phase arg(psi1, psi2) of two nonorthogonal states."""
    a = states.assert_normalized(psi1)
    b = states.assert_normalized(psi2)
    ip = np.vdot(a, b)
    if abs(ip) ** 2 <= EPS_ORTH:
        raise OrthogonalStates(f"transition probability {abs(ip)**2:.3e} below cutoff")
    return PhaseResult(float(np.angle(ip)), "total")


def _dynamical_piece(s, psis):
    s = np.asarray(s, dtype=float)
    psis = np.asarray(psis, dtype=complex)
    if len(s) < 3 or psis.shape[0] != len(s):
        raise TooFewSamples("need at least three parametrized samples")
    dpsi = np.gradient(psis, s, axis=0, edge_order=2)
    integrand = np.einsum("ki,ki->k", psis.conj(), dpsi).imag
    return float(np.trapezoid(integrand, s))


def dynamical_phase(s, psis):
    """Quadrature of Im(psi, dpsi/ds) over one smooth parametrized piece."""
    return PhaseResult(_dynamical_piece(s, psis), "dynamical")


def _as_pieces(curve, psis):
    if psis is not None:
        return [(curve, psis)]
    pieces = list(curve)
    for (_, left), (_, right) in zip(pieces, pieces[1:]):
        if np.abs(np.asarray(left)[-1] - np.asarray(right)[0]).max() > 1e-8:
            raise ValueError("lift is discontinuous across a piece junction")
    return pieces


def geometric_phase_of_curve(curve, psis=None):
    """Total minus dynamical phase of a continuous, piecewise-smooth lift.

    Accepts either (s, psis) arrays for one smooth curve or a list of
    such pairs whose junction lifts agree (as built by polygon_lift).
    Geodesics give zero; closed geodesic polygons give the Bargmann phase.
    """
    pieces = _as_pieces(curve, psis)
    first = np.asarray(pieces[0][1])[0]
    last = np.asarray(pieces[-1][1])[-1]
    dyn = sum(_dynamical_piece(s, p) for s, p in pieces)
    return PhaseResult(principal_branch(total_phase(first, last).value - dyn), "curve")


def bargmann_phase(psis):
    """Negative argument of the cyclic product of inner products.

    Input is a sequence of at least three normalized states; no two
    cyclically consecutive ones may be orthogonal.  The result is
    invariant under independent rephasing of every entry.
    """
    vecs = [states.assert_normalized(p) for p in psis]
    if len(vecs) < 3:
        raise TooFewSamples("a polygon needs at least three vertices")
    product = 1.0 + 0j
    for a, b in zip(vecs, vecs[1:] + [vecs[0]]):
        ip = np.vdot(a, b)
        if abs(ip) ** 2 <= EPS_ORTH:
            raise OrthogonalConsecutive(
                f"transition probability {abs(ip)**2:.3e} below cutoff"
            )
        product *= ip
    return PhaseResult(float(-np.angle(product)), "bargmann")


@dataclass(frozen=True)
class TriangleParams:
    """Canonical triangle parameters xi, eta in (0, pi/2), zeta in [0, pi/2],
    chi2 in [0, 2 pi)."""

    xi: float
    eta: float
    zeta: float
    chi2: float

    def __post_init__(self):
        for name in ("xi", "eta"):
            value = getattr(self, name)
            if not (0.0 < value < np.pi / 2):
                raise OutOfRange(f"{name} = {value!r} outside (0, pi/2)")
        if not (0.0 <= self.zeta <= np.pi / 2):
            raise OutOfRange(f"zeta = {self.zeta!r} outside [0, pi/2]")
        if not (0.0 <= self.chi2 < 2 * np.pi):
            raise OutOfRange(f"chi2 = {self.chi2!r} outside [0, 2 pi)")


def triangle_states(params):
    """Canonical vertex lifts of a parametrized triangle, rows psi1, psi2, psi3."""
    t = params
    return np.array(
        [
            [0.0, 0.0, 1.0],
            [0.0, np.sin(t.xi), np.cos(t.xi)],
            [
                np.sin(t.eta) * np.cos(t.zeta),
                np.exp(1j * t.chi2) * np.sin(t.eta) * np.sin(t.zeta),
                np.cos(t.eta),
            ],
        ],
        dtype=complex,
    )


def canonicalize_triangle(rho1, rho2, rho3):
    """Canonical parameters of a triangle of pure densities.

    The overlaps with the first vertex fix xi and eta.  The remaining two
    parameters come out of the rephasing-invariant Bargmann product B:
    in canonical gauge (psi3, psi2) = conj(B) / (cos xi cos eta), and
    subtracting cos xi cos eta leaves w = sin xi sin eta sin zeta
    e^{-i chi2}, so sin zeta = |w| / (sin xi sin eta) and chi2 = -arg w.
    The parameters only depend on the rays, not on lift gauges or a
    global SU(3) rotation.
    """
    lifts = [states.lift_of_density(r) for r in (rho1, rho2, rho3)]
    ip12 = np.vdot(lifts[0], lifts[1])
    ip23 = np.vdot(lifts[1], lifts[2])
    ip31 = np.vdot(lifts[2], lifts[0])
    for label, ip in (("1-2", ip12), ("2-3", ip23), ("3-1", ip31)):
        if abs(ip) ** 2 <= EPS_ORTH:
            raise OrthogonalPair(f"vertices {label} are orthogonal within cutoff")
    xi = float(np.arccos(np.clip(abs(ip12), 0.0, 1.0)))
    eta = float(np.arccos(np.clip(abs(ip31), 0.0, 1.0)))
    if xi < 1e-8 or eta < 1e-8:
        raise DegenerateTriangle(
            f"vertex coincides with the base vertex (xi = {xi:.2e}, eta = {eta:.2e})"
        )
    bargmann = ip12 * ip23 * ip31
    w = bargmann.conjugate() / (np.cos(xi) * np.cos(eta)) - np.cos(xi) * np.cos(eta)
    sin_zeta = np.clip(abs(w) / (np.sin(xi) * np.sin(eta)), 0.0, 1.0)
    zeta = float(np.arcsin(sin_zeta))
    chi2 = float(-np.angle(w) % (2 * np.pi)) if abs(w) > 1e-15 else 0.0
    return TriangleParams(xi, eta, zeta, chi2)


def pancharatnam_phase(params):
    """Closed-form triangle phase arg(cos xi cos eta + sin xi sin eta sin zeta
    e^{-i chi2})."""
    t = params
    z = np.cos(t.xi) * np.cos(t.eta) + np.sin(t.xi) * np.sin(t.eta) * np.sin(
        t.zeta
    ) * (np.cos(t.chi2) - 1j * np.sin(t.chi2))
    if abs(z) ** 2 <= EPS_ORTH:
        raise OrthogonalPair("vertices 2-3 are orthogonal; phase undefined")
    return PhaseResult(float(np.angle(z)), "closed-form")


def wedge_star_phase_terms(n1, n2, n3):
    """Numerator and denominator of the eight-vector phase expression.

    The triangle phase equals -atan2(numerator, denominator) with

        numerator   = 2 sqrt(3) n1 . (n2 ^ n3)
        denominator = |n1 + n2 + n3|^2 + 2 n1 . (n2 * n3) - 2,

    matching -arg Tr(rho1 rho2 rho3) branch for branch.
    """
    n1, n2, n3 = (np.asarray(n, dtype=float) for n in (n1, n2, n3))
    numerator = 2.0 * su3.SQRT3 * n1 @ su3.wedge(n2, n3)
    total = n1 + n2 + n3
    denominator = total @ total + 2.0 * n1 @ su3.star(n2, n3) - 2.0
    return float(numerator), float(denominator)


def pancharatnam_phase_from_n(n1, n2, n3):
    """Triangle phase -arg Tr(rho1 rho2 rho3) from eight-vectors alone."""
    rhos = [states.density_from_n(states.assert_on_O(n)) for n in (n1, n2, n3)]
    trace = np.trace(rhos[0] @ rhos[1] @ rhos[2])
    if abs(trace) ** 2 <= EPS_ORTH:
        raise OrthogonalPair("a vertex pair is orthogonal within cutoff")
    return PhaseResult(float(-np.angle(trace)), "n-vector")


def _fill_undefined(values, defined):
    if not defined.any():
        return np.zeros_like(values)
    idx = np.where(defined, np.arange(len(values)), -1)
    idx = np.maximum.accumulate(idx)
    idx[idx < 0] = int(np.argmax(defined))
    return values[idx]


def _wrap_increments(chi):
    d = np.diff(chi)
    return (d + np.pi) % (2 * np.pi) - np.pi


def _chart_line_integral(weight1, weight2, chi1, chi2):
    f1 = 0.5 * (weight1[:-1] + weight1[1:])
    f2 = 0.5 * (weight2[:-1] + weight2[1:])
    return float(-(f1 @ _wrap_increments(chi1) + f2 @ _wrap_increments(chi2)))


def line_integral_phase(theta, phi, chi1, chi2):
    """Loop integral of the chart one-form over sampled chart angles.

    The four arrays sample a closed loop; chi entries may be NaN where
    the angle is undefined (their weight vanishes there) and are carried
    forward by nearest-branch continuation.  Increments are unwrapped to
    the nearest branch, so consecutive samples must stay within pi.
    """
    theta, phi = np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    chi1, chi2 = np.asarray(chi1, dtype=float), np.asarray(chi2, dtype=float)
    count = len(theta)
    if count < 3 or any(len(a) != count for a in (phi, chi1, chi2)):
        raise TooFewSamples("need at least three samples of all four angles")
    if abs(theta[0] - theta[-1]) > 1e-6 or abs(phi[0] - phi[-1]) > 1e-6:
        raise NotClosed("first and last samples disagree in theta or phi")
    st, cp, sp = np.sin(theta), np.cos(phi), np.sin(phi)
    weight1 = st * st * cp * cp
    weight2 = st * st * sp * sp
    for chi, weight in ((chi1, weight1), (chi2, weight2)):
        ends = abs(np.arctan2(np.sin(chi[0] - chi[-1]), np.cos(chi[0] - chi[-1])))
        if np.isfinite(ends) and min(weight[0], weight[-1]) > 1e-12 and ends > 1e-6:
            raise NotClosed("chart angles do not close up")
    chi1 = _fill_undefined(chi1, np.isfinite(chi1))
    chi2 = _fill_undefined(chi2, np.isfinite(chi2))
    return PhaseResult(
        principal_branch(_chart_line_integral(weight1, weight2, chi1, chi2)),
        "line-integral",
    )


def line_integral_phase_from_states(psis):
    """Loop integral of the chart one-form over sampled state lifts.

    Lifts are reduced to the chart gauge (third component real positive),
    so arbitrary smooth rephasings of the input do not matter.  The third
    component must stay away from zero; the loop must close in ray space.
    """
    psis = np.asarray(psis, dtype=complex)
    if psis.ndim != 2 or psis.shape[1] != 3 or psis.shape[0] < 3:
        raise TooFewSamples("need an (N, 3) array with N >= 3")
    psis = psis / np.linalg.norm(psis, axis=1, keepdims=True)
    moduli3 = np.abs(psis[:, 2])
    if moduli3.min() <= 1e-10:
        raise ChartSingular(
            f"loop reaches |psi_3| = {moduli3.min():.3e}; chart breaks down"
        )
    closure = abs(np.vdot(psis[0], psis[-1])) ** 2
    if abs(closure - 1.0) > 1e-7:
        raise NotClosed(f"endpoint transition probability {closure!r} is not 1")
    gauge = psis * np.exp(-1j * np.angle(psis[:, 2]))[:, None]
    m1, m2 = np.abs(gauge[:, 0]), np.abs(gauge[:, 1])
    weight1, weight2 = m1 * m1, m2 * m2
    chi1 = _fill_undefined(np.angle(gauge[:, 0]), m1 > 1e-12)
    chi2 = _fill_undefined(np.angle(gauge[:, 1]), m2 > 1e-12)
    return PhaseResult(
        principal_branch(_chart_line_integral(weight1, weight2, chi1, chi2)),
        "line-integral",
    )


def triangle_line_integral_phase(rho1, rho2, rho3, per_arc=2000):
    """Line-integral phase of the geodesic triangle through three densities.

    Arcs grazing the chart's singular set need denser sampling, so the
    sides are scanned coarsely first and per_arc is raised when the third
    component gets small.  Below |psi_3| = 2e-4 the chart is unusable.
    """
    rhos = [rho1, rho2, rho3]
    scan = geodesics.polygon_lift(rhos, per_arc=200)
    closest = min(np.abs(p[:, 2]).min() for _, p in scan)
    if closest <= 2e-4:
        raise ChartSingular(
            f"triangle reaches |psi_3| = {closest:.3e}; chart breaks down"
        )
    per_arc = min(max(per_arc, int(np.ceil(40.0 / closest))), 400000)
    pieces = geodesics.polygon_lift(rhos, per_arc=per_arc)
    loop = np.concatenate([p for _, p in pieces], axis=0)
    return line_integral_phase_from_states(loop)


class TwoLevelReduction(NamedTuple):
    side_a: float
    side_b: float
    side_c: float
    solid_angle: float


def spherical_excess(a, b, c):
    """Solid angle of a spherical triangle from its sides (l'Huilier)."""
    s = 0.5 * (a + b + c)
    product = (
        np.tan(0.5 * s)
        * np.tan(0.5 * (s - a))
        * np.tan(0.5 * (s - b))
        * np.tan(0.5 * (s - c))
    )
    return float(4.0 * np.arctan(np.sqrt(max(product, 0.0))))


def solid_angle_reduction(params):
    """Two-level reduction of a zeta = pi/2 triangle.

    Such a triangle lives in the 2-3 subspace, where the geometry is the
    familiar two-level sphere.  The sides are a = 2 xi, b = 2 eta and
    cos(c/2) = |cos xi cos eta + sin xi sin eta e^{i chi2}|, and the
    geometric phase obeys

        cos(phi_g) = (1 + cos a + cos b + cos c)
                     / (4 cos(a/2) cos(b/2) cos(c/2))

    with |phi_g| equal to half the solid angle enclosed by the triangle.
    Both identities are verified internally; the sign of phi_g carries
    the orientation and is read off the closed form.  Returns the sides
    and the (unsigned) solid angle.
    """
    t = params
    if abs(t.zeta - np.pi / 2) > 1e-12:
        raise NotTwoLevel(f"zeta = {t.zeta!r} is not pi/2")
    phase = pancharatnam_phase(t).value
    side_a, side_b = 2.0 * t.xi, 2.0 * t.eta
    chord = abs(
        np.cos(t.xi) * np.cos(t.eta)
        + np.sin(t.xi) * np.sin(t.eta) * np.exp(1j * t.chi2)
    )
    side_c = 2.0 * float(np.arccos(np.clip(chord, 0.0, 1.0)))
    excess = spherical_excess(side_a, side_b, side_c)
    half_angle_product = (
        4.0 * np.cos(0.5 * side_a) * np.cos(0.5 * side_b) * np.cos(0.5 * side_c)
    )
    cosine_identity = (
        1.0 + np.cos(side_a) + np.cos(side_b) + np.cos(side_c)
    ) / half_angle_product
    if abs(np.cos(phase) - cosine_identity) > 1e-9:
        raise ValueError("two-level cosine identity failed; inconsistent inputs")
    if abs(abs(phase) - 0.5 * excess) > 1e-8:
        raise ValueError("phase does not match half the solid angle")
    return TwoLevelReduction(side_a, side_b, side_c, excess)

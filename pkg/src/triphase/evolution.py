"""Classical RK4 evolution in the state and eight-vector pictures.

A schedule is a sequence of (hamiltonian, duration) segments.  Each
hamiltonian entry is either a HamiltonianCoeffs or a callable mapping
the parameter (measured from the segment start) to one, which keeps the
integrator usable for the parameter-dependent geodesic family.

State picture:        i dpsi/ds = H(s) psi      (renormalized each step)
Eight-vector picture: dn/ds = 2 h(s) ^ n        (no renormalization)

Both use fixed-step classical Runge-Kutta; the step divides each segment
duration exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geodesics, states, su3
from .errors import InvalidStep, OutOfRange
from .phases import PhaseResult, principal_branch


@dataclass(frozen=True)
class Schedule:
    """Piecewise evolution plan: tuple of (hamiltonian, duration) segments."""

    segments: tuple

    def __post_init__(self):
        if not self.segments:
            raise OutOfRange("schedule needs at least one segment")
        for _, duration in self.segments:
            if not (np.isfinite(duration) and duration > 0.0):
                raise OutOfRange(f"segment duration {duration!r} must be positive")

    @property
    def total_duration(self):
        return float(sum(duration for _, duration in self.segments))


def _check_step(step):
    if not (np.isfinite(step) and step > 0.0):
        raise InvalidStep(f"step {step!r} must be positive and finite")


def _matrix_provider(hamiltonian):
    if callable(hamiltonian):
        return lambda s: hamiltonian(s).matrix()
    matrix = hamiltonian.matrix()
    return lambda s: matrix


def _coeff_provider(hamiltonian):
    if callable(hamiltonian):
        return lambda s: hamiltonian(s).h
    h = np.asarray(hamiltonian.h, dtype=float)
    return lambda s: h


@dataclass(frozen=True)
class Trajectory:
    """Recorded samples of an integration run.

    State-picture runs fill every field; eight-vector runs leave psi,
    phi_p and phi_dyn as None.  phi_p[k] is the accumulated total phase
    arg(psi(0), psi(s_k)) and phi_dyn[k] the accumulated dynamical phase.
    """

    s: np.ndarray
    n: np.ndarray
    psi: np.ndarray | None = None
    phi_p: np.ndarray | None = None
    phi_dyn: np.ndarray | None = None


def integrate_state(psi0, schedule, step=1e-3):
    """RK4-integrate i dpsi/ds = H psi through a schedule, recording phases."""
    _check_step(step)
    psi = states.assert_normalized(psi0).astype(complex)
    s_values = [0.0]
    psis = [psi]
    phi_dyn = [0.0]
    s_global = 0.0
    dyn = 0.0
    for hamiltonian, duration in schedule.segments:
        matrix_at = _matrix_provider(hamiltonian)
        n_steps = max(1, round(duration / step))
        h = duration / n_steps
        local = 0.0
        energy = np.vdot(psi, matrix_at(0.0) @ psi).real
        for _ in range(n_steps):
            m1 = matrix_at(local)
            m2 = matrix_at(local + 0.5 * h)
            m3 = matrix_at(local + h)
            k1 = -1j * (m1 @ psi)
            k2 = -1j * (m2 @ (psi + 0.5 * h * k1))
            k3 = -1j * (m2 @ (psi + 0.5 * h * k2))
            k4 = -1j * (m3 @ (psi + h * k3))
            psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            psi = psi / np.linalg.norm(psi)
            local += h
            next_energy = np.vdot(psi, m3 @ psi).real
            dyn -= 0.5 * h * (energy + next_energy)
            energy = next_energy
            s_values.append(s_global + local)
            psis.append(psi)
            phi_dyn.append(dyn)
        s_global += duration
    psis = np.array(psis)
    phi_p = np.angle(psis @ psis[0].conj())
    return Trajectory(
        s=np.array(s_values),
        n=states.n_vectors_of(psis),
        psi=psis,
        phi_p=phi_p,
        phi_dyn=np.array(phi_dyn),
    )


def integrate_nvector(n0, schedule, step=1e-3):
    """RK4-integrate dn/ds = 2 h ^ n through a schedule in the adjoint picture."""
    _check_step(step)
    n = states.assert_on_O(n0)
    s_values = [0.0]
    ns = [n]
    s_global = 0.0
    # 2 h ^ n is linear in n; contract the antisymmetric table once per stage
    def generator(h_vec):
        return 2.0 * np.einsum("rst,s->rt", su3.F, h_vec)

    for hamiltonian, duration in schedule.segments:
        coeffs_at = _coeff_provider(hamiltonian)
        time_dependent = callable(hamiltonian)
        n_steps = max(1, round(duration / step))
        h = duration / n_steps
        local = 0.0
        w1 = generator(coeffs_at(0.0))
        for _ in range(n_steps):
            if time_dependent:
                w1 = generator(coeffs_at(local))
                w2 = generator(coeffs_at(local + 0.5 * h))
                w3 = generator(coeffs_at(local + h))
            else:
                w2 = w3 = w1
            k1 = w1 @ n
            k2 = w2 @ (n + 0.5 * h * k1)
            k3 = w2 @ (n + 0.5 * h * k2)
            k4 = w3 @ (n + h * k3)
            n = n + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            local += h
            s_values.append(s_global + local)
            ns.append(n)
        s_global += duration
    return Trajectory(s=np.array(s_values), n=np.array(ns))


def triangle_schedule(rho1, rho2, rho3):
    """Constant-Hamiltonian schedule driving rho1 -> rho2 -> rho3 -> rho1.

    Each side uses the wedge-product Hamiltonian of its endpoints for a
    duration equal to the side's opening angle, so the dynamical phase
    vanishes along the whole loop.
    """
    ns = [
        states.n_vector_of(states.lift_of_density(r)) for r in (rho1, rho2, rho3)
    ]
    segments = []
    for a, b in ((0, 1), (1, 2), (2, 0)):
        coeffs = geodesics.constant_hamiltonian(ns[a], ns[b])
        segments.append((coeffs, geodesics.geodesic_angle(ns[a], ns[b])))
    return Schedule(tuple(segments))


def evolve_triangle(rho1, rho2, rho3, step=1e-3):
    """Integrate the triangle loop; return (trajectory, phase, closure defect).

    The phase is the accumulated total minus dynamical phase of the
    integrated lift, and the closure defect is |Tr(rho_final rho_initial) - 1|.
    """
    schedule = triangle_schedule(rho1, rho2, rho3)
    psi0 = states.lift_of_density(rho1)
    trajectory = integrate_state(psi0, schedule, step)
    closure = abs(abs(np.vdot(psi0, trajectory.psi[-1])) ** 2 - 1.0)
    value = principal_branch(trajectory.phi_p[-1] - trajectory.phi_dyn[-1])
    return trajectory, PhaseResult(value, "evolution"), float(closure)

import numpy as np
import pytest

from triphase import evolution, geodesics, phases, states
from triphase.errors import InvalidStep, OutOfRange

E3 = np.array([0.0, 0.0, 1.0], dtype=complex)


def canonical_schedule(alpha):
    target = np.array([0.0, np.sin(alpha), np.cos(alpha)], dtype=complex)
    coeffs = geodesics.constant_hamiltonian(
        states.n_vector_of(E3), states.n_vector_of(target)
    )
    return target, evolution.Schedule(((coeffs, alpha),))


def random_triangle(rng):
    while True:
        psis = states.random_states(rng, 3)
        ips = [abs(np.vdot(psis[i], psis[(i + 1) % 3])) ** 2 for i in range(3)]
        if min(ips) > 1e-3:
            return psis


def test_schedule_validation():
    coeffs = geodesics.HamiltonianCoeffs(0.0, np.eye(8)[2])
    with pytest.raises(OutOfRange):
        evolution.Schedule(())
    with pytest.raises(OutOfRange):
        evolution.Schedule(((coeffs, 0.0),))
    with pytest.raises(OutOfRange):
        evolution.Schedule(((coeffs, -1.0),))
    schedule = evolution.Schedule(((coeffs, 0.25), (coeffs, 0.5)))
    assert schedule.total_duration == 0.75


def test_step_validation():
    _, schedule = canonical_schedule(0.5)
    for bad in (0.0, -1e-3, np.inf, np.nan):
        with pytest.raises(InvalidStep):
            evolution.integrate_state(E3, schedule, bad)


def test_lambda3_phases():
    # H = l3 on the first basis state: pure dynamical phase -t, no motion
    coeffs = geodesics.HamiltonianCoeffs(0.0, np.eye(8)[2])
    schedule = evolution.Schedule(((coeffs, 0.7),))
    psi0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    trajectory = evolution.integrate_state(psi0, schedule, 1e-3)
    assert abs(trajectory.phi_p[-1] + 0.7) < 1e-9
    assert abs(trajectory.phi_dyn[-1] + 0.7) < 1e-9
    assert np.abs(trajectory.n - states.POLES[0]).max() < 1e-10
    geometric = phases.principal_branch(trajectory.phi_p[-1] - trajectory.phi_dyn[-1])
    assert abs(geometric) < 1e-10


def test_trajectory_record():
    _, schedule = canonical_schedule(0.5)
    trajectory = evolution.integrate_state(E3, schedule, 1e-2)
    assert trajectory.s[0] == 0.0
    assert abs(trajectory.s[-1] - 0.5) < 1e-12
    assert np.all(np.diff(trajectory.s) > 0)
    assert trajectory.psi.shape == (len(trajectory.s), 3)
    assert trajectory.n.shape == (len(trajectory.s), 8)
    norms = np.einsum("ki,ki->k", trajectory.psi.conj(), trajectory.psi).real
    assert np.abs(norms - 1.0).max() < 1e-12


def test_constant_hamiltonian_tracks_geodesic():
    target, schedule = canonical_schedule(1.0)
    trajectory = evolution.integrate_state(E3, schedule, 1e-3)
    final = trajectory.psi[-1]
    assert np.abs(np.outer(final, final.conj()) - states.density_of(target)).max() < 1e-10
    curve = geodesics.geodesic_between(states.density_of(E3), states.density_of(target))
    expected = states.n_vectors_of(curve(trajectory.s))
    assert np.abs(trajectory.n - expected).max() < 1e-9


def test_energy_expectation_conserved_zero():
    rng = np.random.default_rng(0)
    for _ in range(10):
        while True:
            pair = states.random_states(rng, 2)
            if abs(np.vdot(pair[0], pair[1])) ** 2 > 1e-3:
                break
        na, nb = states.n_vectors_of(pair)
        coeffs = geodesics.constant_hamiltonian(na, nb)
        schedule = evolution.Schedule(((coeffs, geodesics.geodesic_angle(na, nb)),))
        trajectory = evolution.integrate_state(pair[0], schedule, 2e-3)
        energies = np.einsum(
            "ki,ij,kj->k", trajectory.psi.conj(), coeffs.matrix(), trajectory.psi
        ).real
        assert np.abs(energies).max() < 1e-10
        assert np.abs(trajectory.phi_dyn).max() < 1e-10


def test_rk4_convergence_ratio():
    target, _ = canonical_schedule(1.0)
    coeffs = geodesics.constant_hamiltonian(
        states.n_vector_of(E3), states.n_vector_of(target)
    )
    errs = []
    for step in (0.02, 0.01):
        schedule = evolution.Schedule(((coeffs, 1.0),))
        trajectory = evolution.integrate_state(E3, schedule, step)
        final = trajectory.psi[-1]
        errs.append(
            np.abs(
                np.outer(final, final.conj()) - states.density_of(target)
            ).max()
        )
    assert 12.0 < errs[0] / errs[1] < 20.0


def test_two_pictures_agree():
    rng = np.random.default_rng(1)
    for _ in range(8):
        segments = tuple(
            (
                geodesics.HamiltonianCoeffs(
                    float(rng.standard_normal()), rng.standard_normal(8) * 0.5
                ),
                float(rng.uniform(0.2, 0.6)),
            )
            for _ in range(3)
        )
        schedule = evolution.Schedule(segments)
        psi0 = states.random_state(rng)
        by_state = evolution.integrate_state(psi0, schedule, 2e-3)
        by_vector = evolution.integrate_nvector(
            states.n_vector_of(psi0), schedule, 2e-3
        )
        assert np.abs(by_state.s - by_vector.s).max() == 0.0
        assert np.abs(by_state.n - by_vector.n).max() < 1e-7
        assert by_vector.psi is None
        norms = np.linalg.norm(by_vector.n, axis=1)
        assert np.abs(norms - 1.0).max() < 1e-8


def test_time_dependent_family_transports_reference():
    # any parameter choice moves the lift (0, sin s, cos s) exactly
    def hamiltonian(s):
        return geodesics.geodesic_hamiltonian_family(s, 0.8, -0.3, 0.5, 1.2)

    schedule = evolution.Schedule(((hamiltonian, 1.0),))
    psi0 = np.array([0.0, 0.0, 1.0], dtype=complex)
    trajectory = evolution.integrate_state(psi0, schedule, 1e-3)
    expected = np.stack(
        [
            np.zeros_like(trajectory.s),
            np.sin(trajectory.s),
            np.cos(trajectory.s),
        ],
        axis=1,
    ).astype(complex)
    overlaps = np.abs(np.einsum("ki,ki->k", expected.conj(), trajectory.psi)) ** 2
    assert np.abs(overlaps - 1.0).max() < 1e-10


def test_triangle_schedule_durations():
    lifts = phases.triangle_states(
        phases.TriangleParams(np.pi / 4, np.pi / 4, np.pi / 2, np.pi / 2)
    )
    rhos = [states.density_of(p) for p in lifts]
    schedule = evolution.triangle_schedule(*rhos)
    durations = [seg[1] for seg in schedule.segments]
    assert np.abs(np.array(durations) - np.pi / 4).max() < 1e-12
    assert abs(schedule.total_duration - 3 * np.pi / 4) < 1e-12


def test_evolve_canonical_triangle():
    lifts = phases.triangle_states(
        phases.TriangleParams(np.pi / 4, np.pi / 4, np.pi / 2, np.pi / 2)
    )
    rhos = [states.density_of(p) for p in lifts]
    trajectory, geometric, closure = evolution.evolve_triangle(*rhos, step=1e-3)
    assert geometric.method == "evolution"
    assert phases.phase_distance(geometric.value, -np.pi / 4) < 1e-7
    assert closure < 1e-9
    assert np.abs(trajectory.phi_dyn).max() < 1e-9


def test_evolve_triangle_matches_oracles():
    rng = np.random.default_rng(2)
    for _ in range(5):
        psis = random_triangle(rng)
        rhos = [states.density_of(p) for p in psis]
        closed = phases.pancharatnam_phase(phases.canonicalize_triangle(*rhos)).value
        _, geometric, closure = evolution.evolve_triangle(*rhos, step=5e-3)
        assert phases.phase_distance(geometric.value, closed) < 1e-6
        assert closure < 1e-7


def test_degenerate_triangle_zero_phase():
    # collinear vertices on one geodesic enclose no area
    lifts = [
        np.array([0.0, 0.0, 1.0], dtype=complex),
        np.array([0.0, np.sin(0.5), np.cos(0.5)], dtype=complex),
        np.array([0.0, np.sin(1.0), np.cos(1.0)], dtype=complex),
    ]
    rhos = [states.density_of(p) for p in lifts]
    _, geometric, closure = evolution.evolve_triangle(*rhos, step=1e-3)
    assert abs(geometric.value) < 1e-8
    assert closure < 1e-9

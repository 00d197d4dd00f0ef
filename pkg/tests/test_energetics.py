import math

import numpy as np
import pytest

from rollingdisk.energetics import (
    GenCoords,
    GenVel,
    Params,
    center_position,
    center_velocity,
    inertia_matrix,
    kinetic_energy,
    lagrangian,
    potential_energy,
)

P = Params()  # m=5, g=9.81, r=1


def random_sample(rng):
    q = GenCoords(
        rng.uniform(-2.0, 2.0),
        rng.uniform(-2.0, 2.0),
        rng.uniform(-math.pi, math.pi),
        rng.uniform(-1.2, 1.2),
        rng.uniform(-math.pi, math.pi),
    )
    v = GenVel(*rng.uniform(-3.0, 3.0, size=5))
    return q, v


@pytest.mark.parametrize("bad", [dict(m=0.0), dict(m=-1.0), dict(g=0.0), dict(r=-0.5), dict(r=float("nan"))])
def test_params_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        Params(**bad)


def test_center_position_height_follows_stand_angle():
    assert np.allclose(center_position(GenCoords(1.0, -2.0, 0.3, 0.0, 0.1), P), [1.0, -2.0, 1.0])
    c = center_position(GenCoords(0.0, 0.0, 0.0, 0.7, 0.0), P)
    assert c[2] == pytest.approx(math.cos(0.7), abs=1e-15)


def test_center_velocity_vertical_component():
    q = GenCoords(0.0, 0.0, 0.0, 0.4, 0.0)
    v = GenVel(1.0, 2.0, 0.0, 1.5, 0.0)
    dc = center_velocity(q, v, P)
    assert dc[0] == 1.0 and dc[1] == 2.0
    assert dc[2] == pytest.approx(-math.sin(0.4) * 1.5, abs=1e-15)


def test_inertia_matrix_values():
    assert np.array_equal(inertia_matrix(P), np.diag([2.5, 1.25, 1.25]))
    assert np.array_equal(inertia_matrix(Params(m=1.0, g=9.81, r=2.0)), np.diag([2.0, 1.0, 1.0]))


def test_potential_energy_values():
    assert potential_energy(GenCoords(0, 0, 0, 0.0, 0), P) == pytest.approx(49.05, abs=1e-12)
    assert abs(potential_energy(GenCoords(0, 0, 0, math.pi / 2, 0), P)) < 1e-10


def test_kinetic_energy_pure_spin():
    # Upright disk spinning about its own axis: only the axial moment acts.
    q = GenCoords(0, 0, 0.9, 0.0, -0.4)
    w = 2.2
    v = GenVel(0, 0, w, 0, 0)
    assert kinetic_energy(q, v, P) == pytest.approx(0.25 * P.m * P.r**2 * w**2, rel=1e-14)


def test_kinetic_energy_pure_translation():
    q = GenCoords(0, 0, 0, 0.5, 1.0)
    v = GenVel(1.0, -2.0, 0, 0, 0)
    assert kinetic_energy(q, v, P) == pytest.approx(0.5 * P.m * 5.0, rel=1e-14)


def test_kinetic_energy_definite_on_sample_domain():
    rng = np.random.default_rng(21)
    for _ in range(500):
        q, v = random_sample(rng)
        assert kinetic_energy(q, v, P) > 0.0
    q, _ = random_sample(rng)
    assert kinetic_energy(q, GenVel(0, 0, 0, 0, 0), P) == 0.0


def test_lagrangian_upright_spinning_value():
    q = GenCoords(2.0, 0.0, 0.0, 0.1, 0.0)
    v = GenVel(0.0, 0.0, 2.5, 0.0, 0.0)
    expected = 0.125 * P.m * P.r**2 * 2.0 * 2.5**2 - P.m * P.g * P.r * math.cos(0.1)
    assert lagrangian(q, v, P) == pytest.approx(expected, abs=1e-12)


def test_lagrangian_equals_energy_difference():
    # The closed form must reproduce E_kin - E_pot built from definitions.
    rng = np.random.default_rng(22)
    worst = 0.0
    for _ in range(10_000):
        q, v = random_sample(rng)
        closed = lagrangian(q, v, P)
        definitional = kinetic_energy(q, v, P) - potential_energy(q, P)
        worst = max(worst, abs(closed - definitional) / max(1.0, abs(definitional)))
    assert worst < 1e-12, f"closed form vs definitional: rel {worst:.3e}"

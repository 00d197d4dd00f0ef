"""Assembly and solution of the constrained equations of motion.

Applying the constrained variational principle to the rolling disk gives, per
generalized coordinate, d/dt(dL/dqdot) - dL/dq = (A^T lambda) on that
coordinate, plus the differentiated contact conditions

    d/dt (A qdot) = A(q) qddot + (dA/dq qdot) qdot = 0

which close the system at acceleration level. Collecting the seven unknowns

    x = (lambda1, lambda2, ddc1, ddc2, ddphi, ddtheta, ddpsi)

yields a linear system M(q) x = b(q, qdot). Row and unknown ordering is
frozen: rows are (contact-1, contact-2, c1, c2, phi, theta, psi) and the two
multipliers lead the unknowns. Every consumer of mass_matrix, rhs_vector and
solve_system relies on this layout; do not reorder.

M depends on configuration only; every velocity term lives in b.

oracle_lhs recomputes the Euler-Lagrange left side purely by finite
differences of the scalar lagrangian, sharing no algebra with the closed
form, and exists to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .constraints import Multipliers, constraint_matrix
from .energetics import GenCoords, GenVel, Params, lagrangian
from .singularity import SingularConfiguration, checked_cos_theta

# Smallest pivot tolerated by the direct solve, relative to ||M||_inf.
PIVOT_RTOL = 1e-12


@dataclass(frozen=True)
class GenAccel:
    """Generalized accelerations (ddc1, ddc2, ddphi, ddtheta, ddpsi)."""

    ddc1: float
    ddc2: float
    ddphi: float
    ddtheta: float
    ddpsi: float

    def as_array(self) -> np.ndarray:
        return np.array([self.ddc1, self.ddc2, self.ddphi, self.ddtheta, self.ddpsi])

    @classmethod
    def from_array(cls, a) -> "GenAccel":
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]), float(a[4]))


@dataclass(frozen=True)
class AugmentedSystem:
    """Linear system M x = b in the frozen (multipliers, accelerations) ordering."""

    M: np.ndarray
    b: np.ndarray


def euler_lagrange_lhs(q: GenCoords, v: GenVel, a: GenAccel, p: Params) -> np.ndarray:
    """Closed-form d/dt(dL/dqdot) - dL/dq, one entry per coordinate.

    Parameters
    ----------
    q, v, a : GenCoords, GenVel, GenAccel
        Configuration, generalized velocity, generalized acceleration. The
        velocity need not satisfy the rolling constraint; the expression is
        algebraic in (q, v, a).
    p : Params

    Returns
    -------
    ndarray, shape (5,)
        Rows ordered (c1, c2, phi, theta, psi). Equals the generalized
        constraint force A^T lambda on solutions of the rolling problem.
    """
    m, g, r = p.m, p.g, p.r
    st, ct = math.sin(q.theta), math.cos(q.theta)
    s2t = math.sin(2.0 * q.theta)
    dphi, dtheta, dpsi = v.dphi, v.dtheta, v.dpsi
    return np.array(
        [
            m * a.ddc1,
            m * a.ddc2,
            0.5 * m * r * r * (a.ddphi - a.ddpsi * st - dtheta * dpsi * ct),
            0.125
            * m
            * r
            * (
                -8.0 * g * st
                + 8.0 * r * a.ddtheta * st * st
                + 2.0 * r * a.ddtheta
                + 4.0 * r * dtheta * dtheta * s2t
                + 4.0 * r * dphi * dpsi * ct
                - r * dpsi * dpsi * s2t
            ),
            0.25
            * m
            * r
            * r
            * (
                -2.0 * a.ddphi * st
                + a.ddpsi * st * st
                + a.ddpsi
                - 2.0 * dtheta * dphi * ct
                + dtheta * dpsi * s2t
            ),
        ]
    )


def _lagrangian_arrays(qa: np.ndarray, va: np.ndarray, p: Params) -> float:
    return lagrangian(GenCoords.from_array(qa), GenVel.from_array(va), p)


def _velocity_gradient(qa: np.ndarray, va: np.ndarray, p: Params, h: float) -> np.ndarray:
    """dL/dqdot by central differences. L is quadratic in the velocities, so
    the difference is truncation-free and h only controls roundoff."""
    grad = np.empty(5)
    work = va.copy()
    for i in range(5):
        vi = va[i]
        work[i] = vi + h
        above = _lagrangian_arrays(qa, work, p)
        work[i] = vi - h
        below = _lagrangian_arrays(qa, work, p)
        work[i] = vi
        grad[i] = (above - below) / (2.0 * h)
    return grad


def _coordinate_gradient(qa: np.ndarray, va: np.ndarray, p: Params, h: float) -> np.ndarray:
    """dL/dq by central differences."""
    grad = np.empty(5)
    work = qa.copy()
    for i in range(5):
        qi = qa[i]
        work[i] = qi + h
        above = _lagrangian_arrays(work, va, p)
        work[i] = qi - h
        below = _lagrangian_arrays(work, va, p)
        work[i] = qi
        grad[i] = (above - below) / (2.0 * h)
    return grad


def oracle_lhs(
    q: GenCoords,
    v: GenVel,
    a: GenAccel,
    p: Params,
    h: float = 1e-6,
    h_t: float = 1e-5,
    h_v: float = 1e-3,
) -> np.ndarray:
    """Euler-Lagrange left side from finite differences of the Lagrangian only.

    The time derivative is differenced along the synthetic path
    q(s) = q + s*v, qdot(s) = v + s*a, so d/dt(dL/dqdot) is evaluated with no
    knowledge of the closed-form expressions.

    Parameters
    ----------
    h : float
        Step for the position gradient dL/dq.
    h_t : float
        Step of the outer time difference along the synthetic path.
    h_v : float
        Step for the nested velocity gradient. Larger than h on purpose: the
        Lagrangian is exactly quadratic in the velocities, so this difference
        has no truncation error and a larger step suppresses the roundoff
        that the outer division by h_t would otherwise amplify.

    Returns
    -------
    ndarray, shape (5,)
    """
    qa, va, aa = q.as_array(), v.as_array(), a.as_array()
    grad_ahead = _velocity_gradient(qa + h_t * va, va + h_t * aa, p, h_v)
    grad_behind = _velocity_gradient(qa - h_t * va, va - h_t * aa, p, h_v)
    momentum_rate = (grad_ahead - grad_behind) / (2.0 * h_t)
    return momentum_rate - _coordinate_gradient(qa, va, p, h)


def constraint_accel_rows(
    q: GenCoords, v: GenVel, p: Params
) -> tuple[np.ndarray, np.ndarray]:
    """Acceleration-level contact rows: A(q) and the drift term.

    Differentiating A(q) qdot = 0 in time gives A(q) qddot + resid = 0 with
    resid = (dA/dq qdot) qdot. Returns (A, resid), shapes (2, 5) and (2,).
    """
    sp, cp = math.sin(q.psi), math.cos(q.psi)
    st, ct = math.sin(q.theta), math.cos(q.theta)
    r = p.r
    dphi, dtheta, dpsi = v.dphi, v.dtheta, v.dpsi
    sq_rates = dtheta * dtheta + dpsi * dpsi
    resid = np.array(
        [
            r * (-cp * dphi * dpsi + 2.0 * sp * ct * dtheta * dpsi + cp * st * sq_rates),
            r * (-sp * dphi * dpsi - 2.0 * cp * ct * dtheta * dpsi + sp * st * sq_rates),
        ]
    )
    return constraint_matrix(q, p), resid


def mass_matrix(q: GenCoords, p: Params) -> np.ndarray:
    """Coefficient matrix M(q) of the augmented system, shape (7, 7).

    Depends on the configuration only. Columns follow the unknown ordering
    (lambda1, lambda2, ddc1, ddc2, ddphi, ddtheta, ddpsi); rows follow
    (contact-1, contact-2, c1, c2, phi, theta, psi).
    """
    m, r = p.m, p.r
    sp, cp = math.sin(q.psi), math.cos(q.psi)
    st, ct = math.sin(q.theta), math.cos(q.theta)
    mr2 = m * r * r
    return np.array(
        [
            [0.0, 0.0, 1.0, 0.0, -r * sp, -r * ct * cp, r * st * sp],
            [0.0, 0.0, 0.0, 1.0, r * cp, -r * sp * ct, -r * st * cp],
            [-1.0, 0.0, m, 0.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, m, 0.0, 0.0, 0.0],
            [r * sp, -r * cp, 0.0, 0.0, mr2 / 2.0, 0.0, -mr2 * st / 2.0],
            [r * ct * cp, r * sp * ct, 0.0, 0.0, 0.0, mr2 * (st * st + 0.25), 0.0],
            [-r * st * sp, r * st * cp, 0.0, 0.0, -mr2 * st / 2.0, 0.0, mr2 * (st * st + 1.0) / 4.0],
        ]
    )


def rhs_vector(q: GenCoords, v: GenVel, p: Params) -> np.ndarray:
    """Right-hand side b(q, qdot) of the augmented system, shape (7,)."""
    m, g, r = p.m, p.g, p.r
    sp, cp = math.sin(q.psi), math.cos(q.psi)
    st, ct = math.sin(q.theta), math.cos(q.theta)
    s2t = math.sin(2.0 * q.theta)
    dphi, dtheta, dpsi = v.dphi, v.dtheta, v.dpsi
    mr2 = m * r * r
    return np.array(
        [
            r
            * (
                -dtheta * dtheta * st * cp
                - 2.0 * dtheta * dpsi * sp * ct
                + dphi * dpsi * cp
                - dpsi * dpsi * st * cp
            ),
            r
            * (
                -dtheta * dtheta * st * sp
                + 2.0 * dtheta * dpsi * ct * cp
                + dphi * dpsi * sp
                - dpsi * dpsi * st * sp
            ),
            0.0,
            0.0,
            mr2 * dtheta * dpsi * ct / 2.0,
            0.125
            * m
            * r
            * (
                8.0 * g * st
                - 4.0 * r * dtheta * dtheta * s2t
                - 4.0 * r * dphi * dpsi * ct
                + r * dpsi * dpsi * s2t
            ),
            mr2 * (dphi - dpsi * st) * dtheta * ct / 2.0,
        ]
    )


def assemble_system(q: GenCoords, v: GenVel, p: Params) -> AugmentedSystem:
    """Closed-form augmented system (mass_matrix, rhs_vector)."""
    return AugmentedSystem(mass_matrix(q, p), rhs_vector(q, v, p))


def oracle_system(q: GenCoords, v: GenVel, p: Params) -> AugmentedSystem:
    """Augmented system rebuilt from oracle_lhs and constraint_accel_rows.

    The acceleration dependence of the finite-difference left side is probed
    column by column (it is linear in qddot), so this shares no closed-form
    dynamics algebra with assemble_system. Used for cross-validation.
    """
    A, resid = constraint_accel_rows(q, v, p)
    base = oracle_lhs(q, v, GenAccel(0.0, 0.0, 0.0, 0.0, 0.0), p)
    columns = np.empty((5, 5))
    for j in range(5):
        probe = np.zeros(5)
        probe[j] = 1.0
        columns[:, j] = oracle_lhs(q, v, GenAccel.from_array(probe), p) - base
    M = np.zeros((7, 7))
    M[0:2, 2:7] = A
    M[2:7, 0:2] = -A.T
    M[2:7, 2:7] = columns
    b = np.concatenate([-resid, -base])
    return AugmentedSystem(M, b)


def _solve_checked(system: AugmentedSystem, theta: float) -> np.ndarray:
    """Direct LU solve with partial pivoting, rejecting rank-deficient factors."""
    M, b = system.M, system.b
    try:
        lu, piv = lu_factor(M)
    except np.linalg.LinAlgError as err:
        raise SingularConfiguration(theta) from err
    smallest_pivot = float(np.min(np.abs(np.diag(lu))))
    if smallest_pivot < PIVOT_RTOL * float(np.linalg.norm(M, np.inf)):
        raise SingularConfiguration(theta)
    return lu_solve((lu, piv), b)


def solve_system(q: GenCoords, v: GenVel, p: Params) -> tuple[Multipliers, GenAccel]:
    """Multipliers and generalized accelerations from the augmented system.

    Parameters
    ----------
    q, v : GenCoords, GenVel
    p : Params

    Returns
    -------
    (Multipliers, GenAccel)
        Contact reactions and accelerations in the frozen ordering.

    Raises
    ------
    SingularConfiguration
        When the disk is numerically horizontal or the factorization meets a
        pivot below PIVOT_RTOL * ||M||_inf.
    """
    checked_cos_theta(q.theta)
    x = _solve_checked(assemble_system(q, v, p), q.theta)
    return Multipliers(float(x[0]), float(x[1])), GenAccel.from_array(x[2:7])


def solve_oracle_system(q: GenCoords, v: GenVel, p: Params) -> tuple[Multipliers, GenAccel]:
    """Like solve_system but on the finite-difference-assembled system."""
    checked_cos_theta(q.theta)
    x = _solve_checked(oracle_system(q, v, p), q.theta)
    return Multipliers(float(x[0]), float(x[1])), GenAccel.from_array(x[2:7])

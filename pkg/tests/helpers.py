"""Shared fixtures-by-hand for the test suite.

reference_config() is the evaluation setup used throughout: 64 transmit
antennas, a 32x32 surface in 2x2 subarrays, half-wavelength spacings, and the
fixed angle tuple whose phase slopes are p1 = -pi*sqrt(3)/2 and
p2 = -pi*(sqrt(3)+1)/8.
"""

import math

import numpy as np

from ris_subarray import Angles, SystemConfig, validate_config

REF_ANGLES = Angles(
    theta_d1=math.pi / 2,
    theta_a1=2 * math.pi / 3,
    phi_a1=7 * math.pi / 6,
    theta_d2=5 * math.pi / 3,
    phi_d2=4 * math.pi / 3,
)


def reference_config(**overrides) -> SystemConfig:
    base = dict(M=64, Nx=32, Ny=32, Lx=2, Ly=2, angles=REF_ANGLES,
                d1_over_lambda=0.5, d2_over_lambda=0.5,
                K1=10.0, K2=10.0, P=10.0, sigma_w2=1.0)
    base.update(overrides)
    return validate_config(SystemConfig(**base))


def small_config(**overrides) -> SystemConfig:
    base = dict(M=4, Nx=4, Ny=4, Lx=2, Ly=2, angles=REF_ANGLES,
                K1=10.0, K2=10.0, P=10.0)
    base.update(overrides)
    return validate_config(SystemConfig(**base))


def random_angles(rng: np.random.Generator) -> Angles:
    return Angles(*rng.uniform(0.0, 2.0 * np.pi, size=5))


def random_config(rng: np.random.Generator, max_m: int = 16,
                  sides=(1, 2, 4), groups=(1, 2), k_max: float = 20.0
                  ) -> SystemConfig:
    """Random valid scenario with N = Nx*Ny bounded by the side/group sets."""
    lx, ly = rng.choice(sides), rng.choice(sides)
    qx, qy = rng.choice(groups), rng.choice(groups)
    return validate_config(SystemConfig(
        M=int(rng.integers(1, max_m + 1)),
        Nx=int(lx * qx), Ny=int(ly * qy), Lx=int(lx), Ly=int(ly),
        angles=random_angles(rng),
        d1_over_lambda=0.5,
        d2_over_lambda=float(rng.uniform(0.1, 1.0)),
        K1=float(rng.uniform(0.0, k_max)),
        K2=float(rng.uniform(0.0, k_max)),
        P=float(rng.uniform(0.1, 20.0)),
    ))


def dense_phase_matrix(cfg, assignment) -> np.ndarray:
    """Independent oracle: the full N-by-N block-diagonal phase matrix."""
    return np.kron(np.diag(np.exp(1j * assignment.phases)), np.eye(cfg.L))

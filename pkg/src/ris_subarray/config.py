"""System configuration and element/subarray geometry of the planar surface.

The reconfigurable surface is an Nx-by-Ny grid of passive elements partitioned
into Qx-by-Qy rectangular subarrays of Lx-by-Ly elements each. All elements of
a subarray share one phase shift. Indexing is 1-based and row-major in the
x (subarray row) direction, matching the element order used by the steering
vectors and channel matrices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """A configuration value was rejected. The message names the field."""


@dataclass(frozen=True)
class Angles:
    """Propagation geometry in radians.

    theta_d1 is the departure angle at the transmit ULA. (theta_a1, phi_a1)
    are the elevation/azimuth of arrival at the surface and (theta_d2, phi_d2)
    the elevation/azimuth of departure toward the user.
    """

    theta_d1: float
    theta_a1: float
    phi_a1: float
    theta_d2: float
    phi_d2: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.theta_d1, self.theta_a1, self.phi_a1,
                self.theta_d2, self.phi_d2)


@dataclass(frozen=True)
class SystemConfig:
    """Immutable description of one downlink scenario.

    M transmit antennas, an Nx-by-Ny surface grouped into Lx-by-Ly subarrays,
    element spacings in wavelengths, Rician factors for the two hops, transmit
    power P and noise power sigma_w2. Validate with validate_config() before
    use; all derived sizes are exposed as properties.
    """

    M: int
    Nx: int
    Ny: int
    Lx: int
    Ly: int
    angles: Angles
    d1_over_lambda: float = 0.5
    d2_over_lambda: float = 0.5
    K1: float = 10.0
    K2: float = 10.0
    P: float = 10.0
    sigma_w2: float = 1.0

    @property
    def Qx(self) -> int:
        return self.Nx // self.Lx

    @property
    def Qy(self) -> int:
        return self.Ny // self.Ly

    @property
    def Q(self) -> int:
        return self.Qx * self.Qy

    @property
    def L(self) -> int:
        return self.Lx * self.Ly

    @property
    def N(self) -> int:
        return self.Nx * self.Ny


def _require_positive_int(name: str, value) -> None:
    if value != int(value) or int(value) < 1:
        raise ConfigError(f"{name} must be a positive integer, got {value!r}")


def _require_positive(name: str, value) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ConfigError(f"{name} must be a positive finite number, got {value!r}")


def _require_rician(name: str, value) -> None:
    # +inf is the pure line-of-sight sentinel; nan and negatives are rejected.
    if not isinstance(value, (int, float)) or math.isnan(value) or value < 0:
        raise ConfigError(f"{name} must be >= 0 (or inf for pure LoS), got {value!r}")


def validate_config(cfg: SystemConfig) -> SystemConfig:
    """Check every field, raising ConfigError naming the offending one."""
    for name in ("M", "Nx", "Ny", "Lx", "Ly"):
        _require_positive_int(name, getattr(cfg, name))
    if cfg.Nx % cfg.Lx != 0:
        raise ConfigError(f"Lx={cfg.Lx} does not divide Nx={cfg.Nx}")
    if cfg.Ny % cfg.Ly != 0:
        raise ConfigError(f"Ly={cfg.Ly} does not divide Ny={cfg.Ny}")
    _require_positive("d1_over_lambda", cfg.d1_over_lambda)
    _require_positive("d2_over_lambda", cfg.d2_over_lambda)
    _require_rician("K1", cfg.K1)
    _require_rician("K2", cfg.K2)
    _require_positive("P", cfg.P)
    _require_positive("sigma_w2", cfg.sigma_w2)
    for name, value in zip(
            ("theta_d1", "theta_a1", "phi_a1", "theta_d2", "phi_d2"),
            cfg.angles.as_tuple()):
        if not (isinstance(value, (int, float)) and math.isfinite(value)):
            raise ConfigError(f"angles.{name} must be finite, got {value!r}")
    return cfg


def subarray_origin(cfg: SystemConfig, q: int) -> tuple[int, int]:
    """1-based grid coordinates of the first element of subarray q.

    Subarrays are numbered q = 1..Q row-major: q = (qx-1)*Qy + qy.
    """
    if not 1 <= q <= cfg.Q:
        raise IndexError(f"subarray index q={q} outside 1..{cfg.Q}")
    qx, qy = divmod(q - 1, cfg.Qy)
    return qx * cfg.Lx + 1, qy * cfg.Ly + 1


def element_index(cfg: SystemConfig, q: int, lx: int, ly: int) -> int:
    """1-based flat index of element (lx, ly) within subarray q.

    Elements are laid out subarray-major, x-major within the subarray:
    n = (q-1)*L + (lx-1)*Ly + ly. The map is a bijection onto 1..N.
    """
    if not 1 <= q <= cfg.Q:
        raise IndexError(f"subarray index q={q} outside 1..{cfg.Q}")
    if not 1 <= lx <= cfg.Lx:
        raise IndexError(f"element row lx={lx} outside 1..{cfg.Lx}")
    if not 1 <= ly <= cfg.Ly:
        raise IndexError(f"element column ly={ly} outside 1..{cfg.Ly}")
    return (q - 1) * cfg.L + (lx - 1) * cfg.Ly + ly


def subarray_grid_offsets(cfg: SystemConfig) -> tuple[np.ndarray, np.ndarray]:
    """Zero-based origin offsets (x_q - 1, y_q - 1) for all Q subarrays."""
    q = np.arange(cfg.Q)
    qx, qy = np.divmod(q, cfg.Qy)
    return (qx * cfg.Lx).astype(float), (qy * cfg.Ly).astype(float)


def config_from_dict(raw: dict) -> SystemConfig:
    """Build and validate a SystemConfig from parsed JSON."""
    try:
        ang = raw["angles"]
        angles = Angles(
            theta_d1=float(ang["theta_d1"]),
            theta_a1=float(ang["theta_a1"]),
            phi_a1=float(ang["phi_a1"]),
            theta_d2=float(ang["theta_d2"]),
            phi_d2=float(ang["phi_d2"]),
        )
        cfg = SystemConfig(
            M=int(raw["M"]),
            Nx=int(raw["Nx"]),
            Ny=int(raw["Ny"]),
            Lx=int(raw["Lx"]),
            Ly=int(raw["Ly"]),
            angles=angles,
            d1_over_lambda=float(raw.get("d1_over_lambda", 0.5)),
            d2_over_lambda=float(raw.get("d2_over_lambda", 0.5)),
            K1=float(raw.get("K1", 10.0)),
            K2=float(raw.get("K2", 10.0)),
            P=float(raw.get("P", 10.0)),
            sigma_w2=float(raw.get("sigma_w2", 1.0)),
        )
    except KeyError as exc:
        raise ConfigError(f"missing config field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed config value: {exc}") from exc
    return validate_config(cfg)


def load_config(path) -> SystemConfig:
    """Read a JSON config file. Extra keys (e.g. a power section) are ignored."""
    with open(path) as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ConfigError("config file must contain a JSON object")
    return config_from_dict(raw)


def with_subarray_size(cfg: SystemConfig, lx: int, ly: int | None = None) -> SystemConfig:
    """Copy of cfg with a different subarray size (ly defaults to lx)."""
    return validate_config(replace(cfg, Lx=lx, Ly=lx if ly is None else ly))

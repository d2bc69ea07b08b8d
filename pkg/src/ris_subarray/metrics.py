"""Spectral-efficiency bounds, Monte Carlo evaluation, and power accounting.

The ergodic spectral efficiency of the maximum-ratio-transmission downlink
has a closed-form upper bound (Jensen over the channel statistics) that the
closed-form phase design maximizes; energy efficiency divides SE by the total
consumed power, where the surface contributes one driver circuit per
independently controlled phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import los_bs_to_ris, los_ris_to_user, sample_channels, sample_stream
from .config import SystemConfig
from .phases import (PhaseAssignment, coherence_factor, effective_cascade,
                     los_cascade_gain)


@dataclass(frozen=True)
class RicianWeights:
    """Power split of the cascaded two-hop link: gamma1 weighs the coherent
    LoS-times-LoS part, gamma2 everything that scatters at least once."""

    gamma1: float
    gamma2: float


def rician_weights(K1: float, K2: float) -> RicianWeights:
    """Weights for Rician factors of the two hops; they sum to one exactly.

    gamma1 = (K1/(K1+1)) * (K2/(K2+1)) and gamma2 is its complement. A
    non-finite factor means a pure-LoS hop.
    """
    a1 = 1.0 if math.isinf(K1) else K1 / (K1 + 1.0)
    a2 = 1.0 if math.isinf(K2) else K2 / (K2 + 1.0)
    gamma1 = a1 * a2
    return RicianWeights(gamma1=gamma1, gamma2=1.0 - gamma1)


def se_upper_bound(cfg: SystemConfig, assignment: PhaseAssignment) -> float:
    """Ergodic-SE upper bound for an arbitrary phase assignment, in bits."""
    w = rician_weights(cfg.K1, cfg.K2)
    snr = cfg.P / cfg.sigma_w2
    gain = los_cascade_gain(cfg, assignment)
    return math.log2(1.0 + snr * (w.gamma1 * gain
                                  + w.gamma2 * cfg.M * cfg.N + cfg.M))


def max_se_upper_bound(cfg: SystemConfig) -> float:
    """Upper bound under the optimal phases, via the coherence factor."""
    w = rician_weights(cfg.K1, cfg.K2)
    snr = cfg.P / cfg.sigma_w2
    eta = coherence_factor(cfg)
    return math.log2(1.0 + snr * cfg.M * (w.gamma1 * eta * cfg.N ** 2
                                          + w.gamma2 * cfg.N + 1.0))


def max_se_upper_bound_element(cfg: SystemConfig) -> float:
    """Upper bound for per-element control of the same surface.

    The coherence factor is identically 1, regardless of cfg's subarray
    shape; equal to max_se_upper_bound of the Lx = Ly = 1 configuration.
    """
    w = rician_weights(cfg.K1, cfg.K2)
    snr = cfg.P / cfg.sigma_w2
    return math.log2(1.0 + snr * cfg.M * (w.gamma1 * cfg.N ** 2
                                          + w.gamma2 * cfg.N + 1.0))


@dataclass(frozen=True)
class SeGap:
    """Element-minus-subarray difference of the maximized SE bounds.

    exact is the difference itself; ratio_approx drops the +1 inside both
    logarithms (accurate once the array terms dominate); asymptote is the
    strong-LoS, large-surface limit -log2(coherence factor), infinite when
    the factor is 0.
    """

    exact: float
    ratio_approx: float
    asymptote: float


def se_bound_gap(cfg: SystemConfig) -> SeGap:
    """How much SE per-element control buys over the subarray design."""
    w = rician_weights(cfg.K1, cfg.K2)
    eta = coherence_factor(cfg)
    exact = max_se_upper_bound_element(cfg) - max_se_upper_bound(cfg)
    num = w.gamma1 * cfg.N ** 2 + w.gamma2 * cfg.N + 1.0
    den = w.gamma1 * eta * cfg.N ** 2 + w.gamma2 * cfg.N + 1.0
    asymptote = math.inf if eta == 0.0 else -math.log2(eta)
    return SeGap(exact=exact, ratio_approx=math.log2(num / den),
                 asymptote=asymptote)


def monte_carlo_se(cfg: SystemConfig, assignment: PhaseAssignment,
                   num_samples: int, master_seed: int) -> tuple[float, float]:
    """Sample-mean ergodic SE and its standard error, in bits.

    Sample i draws from the counter-based stream keyed by (master_seed, i),
    so the result is independent of evaluation order and worker count. The
    reduction is a single pairwise-summed mean over the per-sample values.
    Maximum-ratio transmission is folded in analytically: the rate of sample
    i is log2(1 + snr * ||h2 Phi H1 + g||^2).
    """
    if num_samples < 1:
        raise ValueError(f"num_samples must be >= 1, got {num_samples}")
    los = (los_bs_to_ris(cfg), los_ris_to_user(cfg))
    snr = cfg.P / cfg.sigma_w2
    vals = np.empty(num_samples)
    for i in range(num_samples):
        rng = sample_stream(master_seed, i)
        real = sample_channels(cfg, rng, los=los,
                               seed_tag=f"{master_seed}:{i}")
        v = effective_cascade(cfg, assignment, real.h2, real.H1) + real.g
        vals[i] = np.log2(1.0 + snr * (v * v.conjugate()).real.sum())
    mean = float(np.mean(vals))
    if num_samples < 2:
        return mean, 0.0
    return mean, float(np.std(vals, ddof=1) / math.sqrt(num_samples))


@dataclass(frozen=True)
class PowerConstants:
    """Static power terms in watts.

    p_rest covers transmit and user-terminal circuitry, p_dynamic the
    surface's reconfiguration term (negligible for PIN-diode surfaces),
    p_control the surface control board, p_driver one phase-shift driver.
    """

    p_rest: float = 20.0
    p_dynamic: float = 0.0
    p_control: float = 4.8
    p_driver: float = 0.43

    @classmethod
    def from_dict(cls, raw: dict) -> "PowerConstants":
        pc = cls(
            p_rest=float(raw.get("p_rest", cls.p_rest)),
            p_dynamic=float(raw.get("p_dynamic", cls.p_dynamic)),
            p_control=float(raw.get("p_control", cls.p_control)),
            p_driver=float(raw.get("p_driver", cls.p_driver)),
        )
        for name in ("p_rest", "p_dynamic", "p_control", "p_driver"):
            if getattr(pc, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        return pc


def ris_power(num_drivers: int, power: PowerConstants = PowerConstants()) -> float:
    """Surface power draw with one driver per independently controlled phase:
    N drivers for per-element control, Q for subarrays."""
    if num_drivers < 0:
        raise ValueError(f"num_drivers must be >= 0, got {num_drivers}")
    return power.p_dynamic + power.p_control + num_drivers * power.p_driver


def energy_efficiency(se: float, num_drivers: int,
                      power: PowerConstants = PowerConstants()) -> float:
    """Spectral efficiency per watt of total consumed power."""
    total = power.p_rest + ris_power(num_drivers, power)
    if total <= 0.0:
        raise ValueError("total power must be positive")
    return se / total

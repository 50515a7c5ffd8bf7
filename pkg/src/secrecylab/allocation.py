"""Power allocation that maximizes secrecy rate across parallel links.

Two settings are covered:

**Static AWGN banks.**  The sum secrecy rate
``sum_i [1/2 log2(1 + P_i/sigma_m_sq_i) - 1/2 log2(1 + P_i/sigma_w_sq_i)]``
is maximized subject to ``sum_i P_i <= budget``.  Stationarity of the
Lagrangian gives, per link, ``(P_i + sigma_m_sq)(P_i + sigma_w_sq) =
n_delta / (2 lambda)`` with ``n_delta = sigma_w_sq - sigma_m_sq``, whose
positive root is

    P_i(lambda) = 1/2 * (sqrt(n_delta^2 + 2 n_delta / lambda) - n_sum),

``n_sum = sigma_w_sq + sigma_m_sq``.  A link receives power only when its
eavesdropper is strictly noisier (``n_delta > 0``) and the threshold is low
enough: ``1/sigma_m_sq - 1/sigma_w_sq > 2 lambda``.  Since each
``P_i(lambda)`` is continuous and strictly decreasing on its active range,
the budget equation ``sum_i P_i(lambda) = budget`` is solved by bisection on
``lambda``; this is a secrecy variant of classical water-filling in which
links are ranked by the variance gap rather than by gain.

**Fading links with known per-slot state.**  The same root formula applies
slot by slot with the roles of the noise variances played by the reciprocal
gains: ``n_delta = 1/b - 1/a`` and ``n_sum = 1/a + 1/b`` for a slot with
gains ``(a, b)``; power is spent only on slots with ``a > b`` (equivalently
``a - b > 2 lambda`` once the threshold is folded in).  The threshold is
calibrated by Monte Carlo so the *average* spent power meets the budget,
and the ergodic secrecy rate is the sample mean of the per-slot rates.

Monte Carlo estimators take a seed and evaluate sequentially with
numpy's PCG64 generator, so results are bit-reproducible.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channels import (
    FadingWiretapChannel,
    gaussian_secrecy_rate,
)
from .errors import InvalidInputError, NumericalError

#: Bisection never runs more than this many interval-halving steps; the
#: bracket collapses to adjacent floats long before.
_MAX_BISECT = 200


@dataclass(frozen=True)
class AllocationResult:
    """Solution of the AWGN budget split.

    Attributes
    ----------
    powers : numpy.ndarray
        Per-link transmit power, same order as the input bank; >= 0, zero on
        every link whose eavesdropper is not strictly noisier.
    lam : float
        The threshold (Lagrange multiplier) at which the powers were
        evaluated; 0.0 when no link is eligible and nothing is allocated.
    sum_rate : float
        Achieved sum secrecy rate in bits per channel use.
    """

    powers: np.ndarray
    lam: float
    sum_rate: float


@dataclass(frozen=True)
class FadingPolicy:
    """Per-slot power rule for one fading link: threshold plus its channel.

    ``zero_secrecy`` marks the degenerate case where calibration found no
    slot with a positive-rate opportunity; the threshold is then ``inf`` and
    the policy allocates nothing.
    """

    lam: float
    channel: FadingWiretapChannel
    zero_secrecy: bool = False

    def __post_init__(self):
        if self.zero_secrecy:
            return
        if not (isinstance(self.lam, (int, float)) and math.isfinite(self.lam) and self.lam > 0):
            raise InvalidInputError(f"lam must be positive and finite, got {self.lam!r}")


def power_at_lambda(ch, lam):
    """Optimal power for one AWGN link at a given threshold.

    Returns ``1/2 (sqrt(n_delta^2 + 2 n_delta/lam) - n_sum)`` when the link
    is active, else 0.  The link is active exactly when
    ``1/sigma_m_sq - 1/sigma_w_sq > 2 lam``.

    Parameters
    ----------
    ch : GaussianWiretapChannel
    lam : float
        Threshold, > 0.
    """
    if not (isinstance(lam, (int, float)) and math.isfinite(lam) and lam > 0):
        raise InvalidInputError(f"lam must be positive and finite, got {lam!r}")
    n_delta = ch.sigma_w_sq - ch.sigma_m_sq
    if n_delta <= 0:
        return 0.0
    if 1.0 / ch.sigma_m_sq - 1.0 / ch.sigma_w_sq <= 2.0 * lam:
        return 0.0
    n_sum = ch.sigma_w_sq + ch.sigma_m_sq
    p = 0.5 * (math.sqrt(n_delta * n_delta + 2.0 * n_delta / lam) - n_sum)
    return max(0.0, p)


def sum_secrecy_rate(channels, powers):
    """Sum of per-link secrecy rates at the given power vector.

    Parameters
    ----------
    channels : sequence of GaussianWiretapChannel
    powers : sequence of float
        Same length as ``channels``, entries >= 0.
    """
    if len(channels) != len(powers):
        raise InvalidInputError(
            f"length mismatch: {len(channels)} channels vs {len(powers)} powers")
    return sum(gaussian_secrecy_rate(p, ch) for p, ch in zip(powers, channels))


def awgn_waterfill(channels, budget, tol=1e-9):
    """Split a power budget across parallel AWGN links for maximum secrecy.

    Bisects the threshold ``lam`` until ``sum_i power_at_lambda(ch_i, lam)``
    meets the budget.  When no link has a strictly noisier eavesdropper the
    budget is unusable and an all-zero allocation is returned.

    Parameters
    ----------
    channels : sequence of GaussianWiretapChannel
        At least one link.
    budget : float
        Total power to distribute, > 0.
    tol : float
        Maximum allowed |allocated - budget| when at least one link is
        eligible.  Bisection runs to bracket collapse, which lands far
        inside the default 1e-9.

    Returns
    -------
    AllocationResult

    Raises
    ------
    InvalidInputError
        Empty bank or non-positive budget.
    NumericalError
        Bisection could not meet ``tol`` (practically only reachable with
        tol below float resolution).
    """
    if len(channels) == 0:
        raise InvalidInputError("channel list must not be empty")
    if not (isinstance(budget, (int, float)) and math.isfinite(budget) and budget > 0):
        raise InvalidInputError(f"budget must be positive and finite, got {budget!r}")

    eligible = [ch for ch in channels if ch.sigma_w_sq > ch.sigma_m_sq]
    if not eligible:
        powers = np.zeros(len(channels))
        return AllocationResult(powers=powers, lam=0.0, sum_rate=0.0)

    def total(lam):
        return sum(power_at_lambda(ch, lam) for ch in channels)

    # Above lam_hi every activation inequality fails, so total(lam_hi) == 0.
    lam_hi = max(0.5 * (1.0 / ch.sigma_m_sq - 1.0 / ch.sigma_w_sq) for ch in eligible)
    lam_lo = lam_hi
    for _ in range(1200):
        lam_lo *= 0.5
        if total(lam_lo) >= budget:
            break
    else:
        raise NumericalError("could not bracket the threshold from below")

    lo, hi = lam_lo, lam_hi
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if total(mid) >= budget:
            lo = mid
        else:
            hi = mid

    lam = min((lo, hi), key=lambda v: abs(total(v) - budget))
    powers = np.array([power_at_lambda(ch, lam) for ch in channels])
    residual = abs(powers.sum() - budget)
    if residual > tol:
        raise NumericalError(
            f"budget residual {residual:.3e} exceeds tolerance {tol:.3e}")
    return AllocationResult(powers=powers, lam=lam,
                            sum_rate=sum_secrecy_rate(channels, powers))


def _fading_power_array(lam, a, b):
    """Vectorized per-slot power rule; ``a``/``b`` are gain arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    active = a - b > 2.0 * lam
    out = np.zeros(np.broadcast(a, b).shape)
    if not np.any(active):
        return out
    aa = a[active]
    bb = b[active]
    p = np.empty_like(aa)
    pos = bb > 0
    if np.any(pos):
        n_delta = 1.0 / bb[pos] - 1.0 / aa[pos]
        n_sum = 1.0 / aa[pos] + 1.0 / bb[pos]
        p[pos] = 0.5 * (np.sqrt(n_delta * n_delta + 2.0 * n_delta / lam) - n_sum)
    if np.any(~pos):
        # Limit of the root formula as the eavesdropper gain vanishes.
        p[~pos] = 0.5 * (1.0 / lam - 2.0 / aa[~pos])
    out[active] = np.maximum(p, 0.0)
    return out


def fading_power(policy, state):
    """Power spent on one fading slot under a calibrated policy.

    Zero whenever the slot offers no advantage (``a_draw <= b_draw``) or the
    advantage is below the threshold (``a_draw - b_draw <= 2 lam``);
    otherwise the water-filling root evaluated at the reciprocal gains.

    Parameters
    ----------
    policy : FadingPolicy
    state : ChannelState
    """
    a, b = state.a_draw, state.b_draw
    if a <= b:
        return 0.0
    if not (a - b > 2.0 * policy.lam):
        return 0.0
    if b == 0.0:
        return max(0.0, 0.5 * (1.0 / policy.lam - 2.0 / a))
    n_delta = 1.0 / b - 1.0 / a
    n_sum = 1.0 / a + 1.0 / b
    return max(0.0, 0.5 * (math.sqrt(n_delta * n_delta + 2.0 * n_delta / policy.lam) - n_sum))


def _draw_states(ch, samples, seed):
    """Exponential gain draws for ``samples`` slots of one fading link."""
    rng = np.random.default_rng(seed)
    a = rng.exponential(ch.a, samples)
    b = rng.exponential(ch.b, samples)
    return a, b


def calibrate_fading_lambda(ch, avg_budget, samples, seed):
    """Find the threshold whose average spent power meets the budget.

    Draws one calibration sample of slot states, then bisects the threshold
    until the sample-mean power equals ``avg_budget``.  The sample is fixed
    before the search, so the result is deterministic given the seed and the
    mean-power function is continuous and strictly decreasing in the
    threshold wherever it is positive.

    Parameters
    ----------
    ch : FadingWiretapChannel
    avg_budget : float
        Target average power, > 0.
    samples : int
        Calibration sample size; at least 10**4 is recommended for the
        default 1 percent accuracy contract.
    seed : int or numpy.random.SeedSequence

    Returns
    -------
    FadingPolicy
        Calibrated policy.  If no drawn slot has ``a_draw > b_draw`` the
        budget is unreachable at any threshold; the returned policy carries
        ``zero_secrecy=True`` and an infinite threshold, and allocates zero
        power everywhere.
    """
    if not (isinstance(avg_budget, (int, float)) and math.isfinite(avg_budget) and avg_budget > 0):
        raise InvalidInputError(f"avg_budget must be positive and finite, got {avg_budget!r}")
    if not (isinstance(samples, int) and samples >= 1):
        raise InvalidInputError(f"samples must be a positive integer, got {samples!r}")

    a, b = _draw_states(ch, samples, seed)
    if not np.any(a > b):
        return FadingPolicy(lam=math.inf, channel=ch, zero_secrecy=True)

    def mean_power(lam):
        return float(_fading_power_array(lam, a, b).mean())

    hi = 1.0
    for _ in range(1200):
        if mean_power(hi) <= avg_budget:
            break
        hi *= 2.0
    else:
        raise NumericalError("could not bracket the fading threshold from above")
    lo = hi
    for _ in range(1200):
        lo *= 0.5
        if mean_power(lo) >= avg_budget:
            break
    else:
        raise NumericalError("could not bracket the fading threshold from below")

    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if mean_power(mid) >= avg_budget:
            lo = mid
        else:
            hi = mid

    lam = min((lo, hi), key=lambda v: abs(mean_power(v) - avg_budget))
    return FadingPolicy(lam=lam, channel=ch)


def ergodic_secrecy_capacity(ch, policy, samples, seed):
    """Monte Carlo estimate of the long-run secrecy rate under a policy.

    Draws ``samples`` slot states, applies the policy's per-slot power rule
    and averages the instantaneous secrecy rates.

    Parameters
    ----------
    ch : FadingWiretapChannel
    policy : FadingPolicy
    samples : int
        >= 1.
    seed : int or numpy.random.SeedSequence

    Returns
    -------
    (float, float)
        Sample-mean rate in bits per channel use and its standard error
        (sample standard deviation over sqrt(samples); 0.0 for a single
        sample).
    """
    if not (isinstance(samples, int) and samples >= 1):
        raise InvalidInputError(f"samples must be a positive integer, got {samples!r}")
    a, b = _draw_states(ch, samples, seed)
    p = _fading_power_array(policy.lam, a, b)
    rates = np.maximum(0.0, 0.5 * (np.log2(1.0 + p * a) - np.log2(1.0 + p * b)))
    estimate = float(rates.mean())
    stderr = float(rates.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return estimate, stderr

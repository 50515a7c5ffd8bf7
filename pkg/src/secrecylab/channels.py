"""Wiretap channel primitives.

A wiretap link carries one transmission to a legitimate receiver while an
eavesdropper observes a second, noisier copy.  This module holds the channel
data types used everywhere else plus the single-link secrecy-rate formulas:

- :func:`gaussian_secrecy_rate` for a static AWGN link,
- :func:`instantaneous_fading_secrecy_rate` for one fading slot,
- :func:`is_qualified` / :func:`to_agent_channel` for the SNR-based
  classification used by the cooperation machinery.

All rates are in bits per channel use (base-2 logarithms) and negative
secrecy rates clamp to zero, matching the capacity interpretation.
Everything here is a pure function of its arguments and safe to call
concurrently.
"""

import math
from dataclasses import dataclass

from .errors import InvalidInputError


def _check_positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise InvalidInputError(f"{name} must be a positive finite number, got {value!r}")


def _check_nonnegative(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
        raise InvalidInputError(f"{name} must be a non-negative finite number, got {value!r}")


@dataclass(frozen=True)
class GaussianWiretapChannel:
    """One static AWGN link: noise variances of the two observations.

    Parameters
    ----------
    sigma_m_sq : float
        Noise variance on the main (legitimate) channel, linear power units.
    sigma_w_sq : float
        Noise variance on the eavesdropper channel, linear power units.
    """

    sigma_m_sq: float
    sigma_w_sq: float

    def __post_init__(self):
        _check_positive("sigma_m_sq", self.sigma_m_sq)
        _check_positive("sigma_w_sq", self.sigma_w_sq)


@dataclass(frozen=True)
class FadingWiretapChannel:
    """One fading link: mean power gains plus static noise variances.

    ``a`` and ``b`` are the average fading power gains of the main and
    eavesdropper paths.  Per-slot gains are drawn as exponentials with these
    means (squared zero-mean Gaussian amplitude fading has exponentially
    distributed power).  The per-slot rate and power formulas treat the drawn
    gains as effective, noise-normalized SNR factors; ``sigma_m_sq`` and
    ``sigma_w_sq`` enter only the static qualification test
    (:func:`is_qualified`, :func:`to_agent_channel`).
    """

    a: float
    b: float
    sigma_m_sq: float
    sigma_w_sq: float

    def __post_init__(self):
        _check_positive("a", self.a)
        _check_positive("b", self.b)
        _check_positive("sigma_m_sq", self.sigma_m_sq)
        _check_positive("sigma_w_sq", self.sigma_w_sq)


@dataclass(frozen=True)
class ChannelState:
    """Instantaneous fading state: one (main, eavesdropper) power-gain draw."""

    a_draw: float
    b_draw: float

    def __post_init__(self):
        _check_nonnegative("a_draw", self.a_draw)
        _check_nonnegative("b_draw", self.b_draw)


@dataclass(frozen=True)
class AgentChannel:
    """One agent's link summarized as a pair of SNRs.

    ``main_snr`` is the agent's own link SNR, ``eaves_snr`` the SNR of the
    eavesdropper listening to that agent.  Within a bank, ids must be unique.
    """

    id: int
    main_snr: float
    eaves_snr: float

    def __post_init__(self):
        _check_positive("main_snr", self.main_snr)
        _check_positive("eaves_snr", self.eaves_snr)


def gaussian_secrecy_rate(power, ch):
    """Secrecy rate of one AWGN wiretap link at a given transmit power.

    Computes ``max(0, 1/2 log2(1 + P/sigma_m_sq) - 1/2 log2(1 + P/sigma_w_sq))``
    in bits per channel use.  The rate is zero whenever the eavesdropper's
    noise is not strictly worse than the legitimate receiver's
    (``sigma_w_sq <= sigma_m_sq``) or no power is spent.

    Parameters
    ----------
    power : float
        Transmit power, linear units, >= 0.
    ch : GaussianWiretapChannel

    Returns
    -------
    float
        Secrecy rate in bits per channel use, >= 0.
    """
    _check_nonnegative("power", power)
    if power == 0:
        return 0.0
    ratio = (1.0 + power / ch.sigma_m_sq) / (1.0 + power / ch.sigma_w_sq)
    return max(0.0, 0.5 * math.log2(ratio))


def instantaneous_fading_secrecy_rate(power, state):
    """Secrecy rate of one fading slot under known channel state.

    ``max(0, 1/2 [log2(1 + P * a_draw) - log2(1 + P * b_draw)])`` in bits per
    channel use; zero whenever the eavesdropper's instantaneous gain is at
    least the main gain.

    Parameters
    ----------
    power : float
        Transmit power for this slot, >= 0.
    state : ChannelState
    """
    _check_nonnegative("power", power)
    if power == 0:
        return 0.0
    rate = 0.5 * (math.log2(1.0 + power * state.a_draw)
                  - math.log2(1.0 + power * state.b_draw))
    return max(0.0, rate)


def is_qualified(ch):
    """Whether a fading link can sustain a positive secrecy rate on average.

    True iff the noise-normalized main gain strictly exceeds the
    noise-normalized eavesdropper gain: ``a/sigma_m_sq > b/sigma_w_sq``.
    Equality counts as disqualified.
    """
    return ch.a / ch.sigma_m_sq > ch.b / ch.sigma_w_sq


def to_agent_channel(ch, id):
    """Summarize a fading link as an :class:`AgentChannel` SNR pair.

    ``main_snr = a/sigma_m_sq`` and ``eaves_snr = b/sigma_w_sq``, so
    ``is_qualified(ch)`` holds exactly when ``main_snr > eaves_snr``.
    """
    return AgentChannel(id=id,
                        main_snr=ch.a / ch.sigma_m_sq,
                        eaves_snr=ch.b / ch.sigma_w_sq)

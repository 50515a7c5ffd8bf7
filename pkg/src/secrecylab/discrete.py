"""Finite-alphabet wiretap rates at desk scale.

Numerically evaluates secrecy rates on tiny discrete channels: the rate of
one link at a fixed input distribution is ``I(X;Y) - I(X;Z)``, the capacity
is its maximum over input distributions, and the eavesdropper-aggregation
effect for correlated inputs is the drop from ``I(X;Z_own)`` to
``I(X; Z_own, Z_other)``.

The maximization is over the channel input directly (no auxiliary cloud
variable); that restriction is optimal for degraded channels, which are the
only ones with a closed form to validate against, and is an explicit
limitation otherwise.  Entropy terms use ``0 * log 0 = 0`` and base-2 logs.
"""

import numpy as np

from .errors import InvalidInputError, UnsupportedSizeError

_NORM_TOL = 1e-12
_GRID_CHUNK = 1 << 18


def _as_prob_matrix(name, m, ndim=2):
    m = np.array(m, dtype=float)  # copy: stored matrices are frozen read-only
    if m.ndim != ndim:
        raise InvalidInputError(f"{name} must be {ndim}-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    if np.any(m < 0):
        raise InvalidInputError(f"{name} contains negative entries")
    return m


class DiscretePmf:
    """A probability vector over a finite alphabet.

    Entries must be non-negative and sum to 1 within 1e-12.
    """

    def __init__(self, probs):
        probs = _as_prob_matrix("probs", probs, ndim=1)
        if abs(probs.sum() - 1.0) > _NORM_TOL:
            raise InvalidInputError(
                f"probs must sum to 1 within {_NORM_TOL}, got sum {probs.sum()!r}")
        self.probs = probs
        self.probs.setflags(write=False)

    def __len__(self):
        return len(self.probs)

    def __repr__(self):
        return f"DiscretePmf({self.probs.tolist()})"


class DiscreteWiretapChannel:
    """A finite-alphabet wiretap link: two row-stochastic transition matrices.

    ``main`` is |X| x |Y| (legitimate observation), ``eaves`` is |X| x |Z|
    (eavesdropper observation); the two observations are conditionally
    independent given the input.
    """

    def __init__(self, main, eaves):
        main = _as_prob_matrix("main", main)
        eaves = _as_prob_matrix("eaves", eaves)
        if main.shape[0] != eaves.shape[0]:
            raise InvalidInputError(
                f"main and eaves must share the input alphabet: "
                f"{main.shape[0]} vs {eaves.shape[0]} rows")
        for name, m in (("main", main), ("eaves", eaves)):
            bad = np.abs(m.sum(axis=1) - 1.0) > _NORM_TOL
            if np.any(bad):
                raise InvalidInputError(
                    f"{name} row {int(np.argmax(bad))} does not sum to 1 within {_NORM_TOL}")
        self.main = main
        self.eaves = eaves
        self.main.setflags(write=False)
        self.eaves.setflags(write=False)

    @property
    def num_inputs(self):
        return self.main.shape[0]


def bsc(p):
    """Binary symmetric transition matrix with crossover probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"crossover probability must be in [0, 1], got {p!r}")
    return np.array([[1.0 - p, p], [p, 1.0 - p]])


def mutual_information(joint):
    """Mutual information of a joint distribution, in bits.

    Parameters
    ----------
    joint : array-like, shape (|A|, |B|)
        Joint probabilities p(a, b); entries >= 0, total 1 within 1e-12.

    Returns
    -------
    float
        I(A;B) >= 0; zero (within rounding) iff the joint factorizes into
        its marginals.
    """
    j = _as_prob_matrix("joint", joint)
    if abs(j.sum() - 1.0) > _NORM_TOL:
        raise InvalidInputError(
            f"joint must sum to 1 within {_NORM_TOL}, got sum {j.sum()!r}")
    pa = j.sum(axis=1)
    pb = j.sum(axis=0)
    mask = j > 0
    prod = np.outer(pa, pb)
    terms = j[mask] * (np.log2(j[mask]) - np.log2(prod[mask]))
    return max(0.0, float(terms.sum()))


def _mi_batch(joints):
    """I(A;B) for a (M, |A|, |B|) stack of joint distributions, in bits."""
    pa = joints.sum(axis=2)
    pb = joints.sum(axis=1)
    prod = pa[:, :, None] * pb[:, None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(joints > 0, np.log2(joints) - np.log2(prod), 0.0)
    return np.einsum("mab,mab->m", joints, logs)


def secrecy_rate_discrete(ch, input_pmf):
    """Secrecy rate of one discrete link at a fixed input distribution.

    ``I(X;Y) - I(X;Z)`` in bits; may be negative (callers maximize).

    Parameters
    ----------
    ch : DiscreteWiretapChannel
    input_pmf : DiscretePmf
        Length must match the channel's input alphabet.
    """
    p = input_pmf.probs
    if len(p) != ch.num_inputs:
        raise InvalidInputError(
            f"input pmf length {len(p)} does not match alphabet size {ch.num_inputs}")
    i_y = mutual_information(p[:, None] * ch.main)
    i_z = mutual_information(p[:, None] * ch.eaves)
    return float(i_y - i_z)


def _compositions(total, parts):
    """Yield chunks of all compositions of ``total`` into ``parts`` parts.

    Rows are produced in ascending lexicographic order of the composition
    tuple, so the first maximizer encountered is the lexicographically
    smallest one.
    """
    if parts == 1:
        yield np.array([[total]])
        return
    if parts == 2:
        k0 = np.arange(total + 1)
        yield np.stack([k0, total - k0], axis=1)
        return
    if parts == 3:
        counts = np.arange(total + 1, 0, -1)
        k0 = np.repeat(np.arange(total + 1), counts)
        offsets = np.repeat(np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
        k1 = np.arange(counts.sum()) - offsets
        block = np.stack([k0, k1, total - k0 - k1], axis=1)
        for start in range(0, len(block), _GRID_CHUNK):
            yield block[start:start + _GRID_CHUNK]
        return
    # parts == 4: outer python loop over the first coordinate keeps memory flat.
    for k0 in range(total + 1):
        for block in _compositions(total - k0, 3):
            yield np.concatenate(
                [np.full((len(block), 1), k0), block], axis=1)


def max_secrecy_rate_grid(ch, grid_step):
    """Grid-search the input simplex for the best secrecy rate.

    Enumerates every input distribution whose entries are multiples of
    ``grid_step`` and returns the best rate together with its maximizer.
    Exact ties resolve to the lexicographically smallest distribution.  The
    result is never negative: point-mass inputs (rate 0) are grid points.

    Parameters
    ----------
    ch : DiscreteWiretapChannel
        Input alphabet of size at most 4 (the enumeration is combinatorial).
    grid_step : float
        Simplex resolution, between 1e-3 and 0.1.

    Returns
    -------
    (float, DiscretePmf)
    """
    nx = ch.num_inputs
    if nx > 4:
        raise UnsupportedSizeError(
            f"grid search supports input alphabets up to 4, got {nx}")
    if not 1e-3 <= grid_step <= 0.1:
        raise InvalidInputError(
            f"grid_step must lie in [1e-3, 0.1], got {grid_step!r}")
    denom = int(round(1.0 / grid_step))

    best_rate = -np.inf
    best_q = None
    for block in _compositions(denom, nx):
        q = block / denom
        joint_y = q[:, :, None] * ch.main[None, :, :]
        joint_z = q[:, :, None] * ch.eaves[None, :, :]
        rates = _mi_batch(joint_y) - _mi_batch(joint_z)
        top = int(np.argmax(rates))
        if rates[top] > best_rate:
            best_rate = float(rates[top])
            best_q = q[top]
    return best_rate, DiscretePmf(best_q)


def parallel_sum_rate(chs, inputs):
    """Sum of per-link secrecy rates over a bank of independent links."""
    if len(chs) != len(inputs):
        raise InvalidInputError(
            f"length mismatch: {len(chs)} channels vs {len(inputs)} inputs")
    return sum(secrecy_rate_discrete(ch, pmf) for ch, pmf in zip(chs, inputs))


def aggregated_eavesdropper_rate(ch1, ch2, joint_input, which):
    """Secrecy rate of one link when eavesdroppers pool their observations.

    Two links carry possibly correlated inputs (X1, X2) ~ ``joint_input``;
    each link's outputs are conditionally independent given its own input.
    For the selected link the rate is ``I(X;Y) - I(X; Z1, Z2)``: the
    eavesdropper term aggregates both observed signals, so correlation
    between the inputs can only lower the rate relative to the single-link
    value at the same marginal (with equality for independent inputs).

    Parameters
    ----------
    ch1, ch2 : DiscreteWiretapChannel
        Alphabets of size at most 3.
    joint_input : array-like, shape (|X1|, |X2|)
        Joint input distribution.
    which : int
        0 to evaluate link 1, 1 to evaluate link 2.
    """
    if which not in (0, 1):
        raise InvalidInputError(f"which must be 0 or 1, got {which!r}")
    joint = _as_prob_matrix("joint_input", joint_input)
    if abs(joint.sum() - 1.0) > _NORM_TOL:
        raise InvalidInputError(
            f"joint_input must sum to 1 within {_NORM_TOL}, got sum {joint.sum()!r}")
    if joint.shape != (ch1.num_inputs, ch2.num_inputs):
        raise InvalidInputError(
            f"joint_input shape {joint.shape} does not match alphabets "
            f"({ch1.num_inputs}, {ch2.num_inputs})")
    for name, size in (("X1", ch1.num_inputs), ("X2", ch2.num_inputs),
                       ("Y1", ch1.main.shape[1]), ("Y2", ch2.main.shape[1]),
                       ("Z1", ch1.eaves.shape[1]), ("Z2", ch2.eaves.shape[1])):
        if size > 3:
            raise UnsupportedSizeError(f"alphabet {name} exceeds size 3: {size}")

    own = ch1 if which == 0 else ch2
    marginal = joint.sum(axis=1) if which == 0 else joint.sum(axis=0)
    i_main = mutual_information(marginal[:, None] * own.main)

    # p(x1, x2, z1, z2) = p(x1, x2) p(z1|x1) p(z2|x2)
    full = np.einsum("ab,ac,bd->abcd", joint, ch1.eaves, ch2.eaves)
    agg = full.sum(axis=1) if which == 0 else full.sum(axis=0)  # (x_own, z1, z2)
    agg = agg.reshape(agg.shape[0], -1)
    i_eaves = mutual_information(agg)
    return float(i_main - i_eaves)

"""Cooperative jamming: pairing agents so blocked links become usable.

An agent whose eavesdropper out-hears them (``eaves_snr >= main_snr``) cannot
communicate secretly on their own.  A stronger agent can fix that by
transmitting interference that drowns out the weaker agent's eavesdropper,
at the cost of giving up their own slot.  This module classifies a bank of
agents, runs the greedy pairing rule (each blocked agent, taken in
increasing SNR order, grabs the weakest still-unused agent strong enough to
jam its eavesdropper), and provides an exhaustive maximum-matching oracle to
verify that the greedy rule pairs as many agents as any strategy can.

Secrecy-efficiency metrics compare the secret rate to the raw capacity
spent obtaining it.  For a cooperating pair the helper's whole capacity goes
to jamming, so the pair's efficiency ``log2(1+A_helped) /
[log2(1+A_helped) + log2(1+A_helper)]`` is strictly below one half and
approaches it only as the two SNRs coincide.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, InvalidPairError, UnsupportedSizeError

#: Exhaustive matching uses a bitmask table of size 2**k.
_MAX_ORACLE_AGENTS = 12


@dataclass(frozen=True)
class FeasibleSet:
    """Ids of agents strong enough to jam one agent's eavesdropper."""

    agent_id: int
    members: tuple

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class PairingPlan:
    """Outcome of a pairing run.

    ``pairs`` holds (helped_id, helper_id) tuples in formation order,
    ``unpaired`` the ids consumed by no pair, and ``efficiencies`` the
    secrecy efficiency of each formed pair keyed by the pair tuple.
    """

    pairs: tuple
    unpaired: tuple
    efficiencies: dict = field(default_factory=dict)


def _check_unique_ids(bank):
    seen = set()
    for ch in bank:
        if ch.id in seen:
            raise InvalidInputError(f"duplicate agent id {ch.id}")
        seen.add(ch.id)


def classify(bank):
    """Split a bank into qualified and disqualified agents.

    Qualified agents (``main_snr > eaves_snr``, strictly) keep their input
    order; disqualified agents come back sorted by ascending ``main_snr``
    with ties broken by id, which is the order the greedy pairing consumes.

    Parameters
    ----------
    bank : sequence of AgentChannel
        Ids must be unique.

    Returns
    -------
    (list, list)
        ``(qualified, disqualified)``
    """
    _check_unique_ids(bank)
    qualified = [ch for ch in bank if ch.main_snr > ch.eaves_snr]
    disqualified = sorted((ch for ch in bank if not ch.main_snr > ch.eaves_snr),
                          key=lambda ch: (ch.main_snr, ch.id))
    return qualified, disqualified


def feasible_set(agent_id, disqualified):
    """All agents in the bank strong enough to help the given one.

    Members are ids ``j != agent_id`` with ``main_snr_j > eaves_snr_i``,
    listed in ascending (main_snr, id) order.  Because a disqualified
    agent's eavesdropper out-hears its own link, every member necessarily
    sits after the agent in the sorted order.
    """
    by_id = {ch.id: ch for ch in disqualified}
    if agent_id not in by_id:
        raise InvalidInputError(f"unknown agent id {agent_id!r}")
    me = by_id[agent_id]
    members = sorted((ch for ch in disqualified
                      if ch.id != agent_id and ch.main_snr > me.eaves_snr),
                     key=lambda ch: (ch.main_snr, ch.id))
    return FeasibleSet(agent_id=agent_id, members=tuple(ch.id for ch in members))


def _check_sorted_disqualified(disqualified):
    keys = [(ch.main_snr, ch.id) for ch in disqualified]
    if keys != sorted(keys):
        raise InvalidInputError(
            "disqualified bank must be sorted by ascending (main_snr, id); "
            "use classify() to obtain the sorted bank")
    for ch in disqualified:
        if ch.main_snr > ch.eaves_snr:
            raise InvalidInputError(
                f"agent {ch.id} is qualified (main_snr > eaves_snr) and does "
                f"not belong in the disqualified bank")


def greedy_pairing(disqualified):
    """Pair blocked agents with the weakest helpers that can jam for them.

    Walks the bank in ascending SNR order; each still-unused agent ``i``
    takes the first later unused agent whose ``main_snr`` strictly exceeds
    ``eaves_snr_i`` (when two candidates tie on SNR the lower id wins by
    sort order).  Consumed agents never appear in a second pair.

    Parameters
    ----------
    disqualified : sequence of AgentChannel
        Must already be sorted ascending by (main_snr, id) and contain only
        disqualified agents.

    Returns
    -------
    PairingPlan
    """
    _check_unique_ids(disqualified)
    _check_sorted_disqualified(disqualified)
    used = set()
    pairs = []
    efficiencies = {}
    for idx, helped in enumerate(disqualified):
        if helped.id in used:
            continue
        if not helped.eaves_snr > helped.main_snr:
            continue  # boundary agent (eaves_snr == main_snr): no strict jamming margin
        for helper in disqualified[idx + 1:]:
            if helper.id in used:
                continue
            if helper.main_snr > helped.eaves_snr:
                used.add(helped.id)
                used.add(helper.id)
                pair = (helped.id, helper.id)
                pairs.append(pair)
                efficiencies[pair] = efficiency_pair(helped, helper)
                break
    unpaired = tuple(ch.id for ch in disqualified if ch.id not in used)
    return PairingPlan(pairs=tuple(pairs), unpaired=unpaired,
                       efficiencies=efficiencies)


def max_matching_oracle(disqualified):
    """Exact maximum number of disjoint valid pairs, by bitmask DP.

    A pair (i, j) is valid when ``main_snr_j > eaves_snr_i > main_snr_i``
    (j jams for i); each agent participates in at most one pair in either
    role.  Exhaustive over all subsets, so limited to 12 agents.

    Parameters
    ----------
    disqualified : sequence of AgentChannel

    Returns
    -------
    int
    """
    k = len(disqualified)
    if k > _MAX_ORACLE_AGENTS:
        raise UnsupportedSizeError(
            f"exhaustive matching supports up to {_MAX_ORACLE_AGENTS} agents, got {k}")
    _check_unique_ids(disqualified)
    a = [ch.main_snr for ch in disqualified]
    e = [ch.eaves_snr for ch in disqualified]
    adj = [0] * k
    for x in range(k):
        for y in range(k):
            if x != y and a[y] > e[x] > a[x]:
                adj[x] |= 1 << y
                adj[y] |= 1 << x
    best = [0] * (1 << k)
    for mask in range(1, 1 << k):
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        top = best[rest]
        partners = adj[low] & rest
        while partners:
            jbit = partners & -partners
            cand = best[rest ^ jbit] + 1
            if cand > top:
                top = cand
            partners ^= jbit
        best[mask] = top
    return best[-1]


def efficiency_qualified(ch):
    """Secrecy efficiency of an agent who needs no help.

    The fraction of the link's eavesdropper-free capacity that survives as
    secret rate: ``[log2(1+A) - log2(1+E)] / log2(1+A)``.  Approaches 1 as
    the eavesdropper vanishes and 0 as it catches up.

    Parameters
    ----------
    ch : AgentChannel
        Must be qualified (``main_snr > eaves_snr``, strictly).
    """
    if not ch.main_snr > ch.eaves_snr:
        raise InvalidInputError(
            f"agent {ch.id} is not qualified: main_snr {ch.main_snr} <= "
            f"eaves_snr {ch.eaves_snr}")
    cap = math.log2(1.0 + ch.main_snr)
    return (cap - math.log2(1.0 + ch.eaves_snr)) / cap


def efficiency_pair(helped, helper):
    """Secrecy efficiency of a cooperating pair.

    With the helper fully jamming the helped agent's eavesdropper, the
    helped link's entire capacity becomes secret, but the helper's capacity
    is spent: ``log2(1+A_i) / [log2(1+A_i) + log2(1+A_h)]``.  Strictly below
    0.5 because the helper must be the stronger of the two.

    Parameters
    ----------
    helped, helper : AgentChannel
        Must satisfy ``helper.main_snr > helped.eaves_snr > helped.main_snr``.
    """
    if not (helper.main_snr > helped.eaves_snr > helped.main_snr):
        raise InvalidPairError(
            f"pair ({helped.id}, {helper.id}) violates the jamming margin: "
            f"need helper main_snr > helped eaves_snr > helped main_snr, got "
            f"{helper.main_snr} / {helped.eaves_snr} / {helped.main_snr}")
    c_helped = math.log2(1.0 + helped.main_snr)
    c_helper = math.log2(1.0 + helper.main_snr)
    return c_helped / (c_helped + c_helper)


def pr_picking_k(set_sizes):
    """Chance that random pickers collectively grab a contested helper.

    For agents choosing helpers uniformly at random from feasible sets of
    the given sizes, returns ``1 - prod_j (s_j - 1) / s_j`` under the
    simplifying assumption that the choices are independent (earlier picks
    shrinking later sets is deliberately ignored; see
    :func:`pick_probability_monte_carlo` for the sequential process).

    Parameters
    ----------
    set_sizes : sequence of int
        Each >= 1.  An empty sequence returns 0; any size-1 set forces the
        pick, returning 1.
    """
    sizes = list(set_sizes)
    miss = 1.0
    for s in sizes:
        if not (isinstance(s, (int, np.integer)) and s >= 1):
            raise InvalidInputError(f"set sizes must be integers >= 1, got {s!r}")
        miss *= (s - 1) / s
    if not sizes:
        return 0.0
    return 1.0 - miss


def pick_probability_monte_carlo(sets, target_id, trials, seed):
    """Simulate the sequential random-pick process behind :func:`pr_picking_k`.

    Agents take turns in the given order; each agent not yet consumed picks
    uniformly at random among its feasible members that nobody has consumed
    (skipping the turn if none remain), and a successful pick consumes both
    sides of the new pair.  Returns the fraction of trials in which
    ``target_id`` gets consumed, which need not match the independent-pick
    formula because earlier picks shrink later sets.

    Parameters
    ----------
    sets : sequence of FeasibleSet
        Pick order.
    target_id : int
    trials : int
        >= 1.
    seed : int or numpy.random.SeedSequence
    """
    if not (isinstance(trials, int) and trials >= 1):
        raise InvalidInputError(f"trials must be a positive integer, got {trials!r}")
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(trials):
        consumed = set()
        for fs in sets:
            if fs.agent_id in consumed:
                continue
            avail = [m for m in fs.members if m not in consumed]
            if not avail:
                continue
            choice = avail[rng.integers(len(avail))]
            consumed.add(fs.agent_id)
            consumed.add(choice)
            if choice == target_id:
                hits += 1
                break
    return hits / trials

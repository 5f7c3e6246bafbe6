"""Seeded verification sweeps: closed forms vs oracle, tree vs oracle.

These are the engines behind ``entdisc verify`` and the acceptance tests.
Each check draws reproducible samples from a PCG64 stream, runs the
relevant comparison, and returns a plain report dict with the worst
deviation and the full inputs of any failing sample.
"""

from __future__ import annotations

import math

import numpy as np

from . import channels, discrim, oracle, smallmat

LEMMA_TOL = 1e-6
TREE_SLACK = 1e-3
TREE_GAP = 1e-6
SIGMA_BAND = 4.0


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.PCG64(seed))


def sample_extremal(rng) -> channels.QubitChannel:
    phi, theta = rng.uniform(0.0, math.pi, size=2)
    return channels.QubitChannel.extremal(float(phi), float(theta))


def sample_mixture(rng) -> channels.QubitChannel:
    lam = float(rng.uniform(0.0, 1.0))
    p1, t1, p2, t2 = rng.uniform(0.0, math.pi, size=4)
    return channels.QubitChannel.mixture(
        lam,
        channels.ExtremalChannel(float(p1), float(t1)),
        channels.ExtremalChannel(float(p2), float(t2)),
    )


def sample_quasi_extreme(rng) -> channels.QubitChannel:
    """A quasi-extreme point map; both cos-sign families are covered."""
    theta = float(rng.uniform(0.0, math.pi))
    if rng.integers(0, 2) == 0:
        phi = theta  # cos(theta) = cos(phi)
    else:
        phi = math.pi - theta  # cos(theta) = -cos(phi)
    return channels.QubitChannel.extremal(phi, theta)


def _pair_inputs(c1, c2) -> dict:
    return {
        "channel1": channels.format_channel(c1),
        "channel2": channels.format_channel(c2),
    }


def check_lemma1(
    samples: int, seed: int, cfg: oracle.SearchConfig = oracle.DEFAULT_CONFIG
) -> dict:
    """Closed-form single-qubit maximum vs Bloch-sphere brute force."""
    rng = _rng(seed)
    max_dev = 0.0
    failures = []
    for _ in range(samples):
        c1, c2 = sample_extremal(rng), sample_extremal(rng)
        p = discrim.compute_params(c1, c2)
        closed = discrim.max_distance_single(p).value
        brute = oracle.brute_max_single(c1, c2, cfg).value
        dev = abs(closed - brute)
        max_dev = max(max_dev, dev)
        if dev > LEMMA_TOL:
            failures.append(
                {**_pair_inputs(c1, c2), "closed": closed, "brute": brute, "dev": dev}
            )
    return {
        "mode": "lemma1",
        "samples": samples,
        "seed": seed,
        "tolerance": LEMMA_TOL,
        "max_deviation": max_dev,
        "failures": failures,
        "passed": not failures,
    }


def check_lemma2(
    samples: int, seed: int, cfg: oracle.SearchConfig = oracle.DEFAULT_CONFIG
) -> dict:
    """Closed-form entangled maximum vs restricted search, and the claim
    that searching outside the |00>/|11> plane never helps."""
    rng = _rng(seed)
    max_dev = 0.0
    max_excess = -math.inf
    failures = []
    for _ in range(samples):
        c1, c2 = sample_extremal(rng), sample_extremal(rng)
        p = discrim.compute_params(c1, c2)
        closed = discrim.max_distance_entangled(p).value
        restricted = oracle.brute_max_entangled(c1, c2, cfg, mode="restricted").value
        full = oracle.brute_max_entangled(c1, c2, cfg, mode="full").value
        dev = abs(closed - restricted)
        excess = full - restricted
        max_dev = max(max_dev, dev)
        max_excess = max(max_excess, excess)
        if dev > LEMMA_TOL or excess > LEMMA_TOL:
            failures.append(
                {
                    **_pair_inputs(c1, c2),
                    "closed": closed,
                    "restricted": restricted,
                    "full": full,
                }
            )
    return {
        "mode": "lemma2",
        "samples": samples,
        "seed": seed,
        "tolerance": LEMMA_TOL,
        "max_deviation": max_dev,
        "max_full_excess": max_excess,
        "failures": failures,
        "passed": not failures,
    }


def check_quasi_extreme(
    samples: int, seed: int, cfg: oracle.SearchConfig = oracle.DEFAULT_CONFIG
) -> dict:
    """For pairs of quasi-extreme maps the entangled optimum never wins."""
    rng = _rng(seed)
    max_gap = -math.inf
    failures = []
    for _ in range(samples):
        c1, c2 = sample_quasi_extreme(rng), sample_quasi_extreme(rng)
        single = oracle.brute_max_single(c1, c2, cfg).value
        ent = oracle.brute_max_entangled(c1, c2, cfg, mode="restricted").value
        gap = ent - single
        max_gap = max(max_gap, gap)
        if gap > LEMMA_TOL:
            failures.append(
                {**_pair_inputs(c1, c2), "single": single, "entangled": ent, "gap": gap}
            )
    return {
        "mode": "quasi-extreme",
        "samples": samples,
        "seed": seed,
        "tolerance": LEMMA_TOL,
        "max_gap": max_gap,
        "failures": failures,
        "passed": not failures,
    }


def check_tree(
    samples: int, seed: int, cfg: oracle.SearchConfig = oracle.DEFAULT_CONFIG
) -> dict:
    """Decision-tree verdicts vs the brute-force advantage test.

    Samples alternate between extremal pairs and mixtures.  Samples whose
    classification has any slack below 1e-3 sit too close to a tree
    boundary for floating point and are discarded; the rest must agree
    with (brute entangled - brute single > 1e-6) exactly.  A disagreement
    is escalated to the full-space search before being reported.
    """
    rng = _rng(seed)
    retained = 0
    discarded = 0
    failures = []
    for k in range(samples):
        if k % 2 == 0:
            c1, c2 = sample_extremal(rng), sample_extremal(rng)
        else:
            c1, c2 = sample_mixture(rng), sample_mixture(rng)
        cls = discrim.classify_pair(c1, c2)
        if cls.margins and min(abs(v) for v in cls.margins.values()) < TREE_SLACK:
            discarded += 1
            continue
        retained += 1
        single = oracle.brute_max_single(c1, c2, cfg).value
        ent = oracle.brute_max_entangled(c1, c2, cfg, mode="restricted").value
        oracle_useful = (ent - single) > TREE_GAP
        if oracle_useful != cls.useful:
            full = oracle.brute_max_entangled(c1, c2, cfg, mode="full").value
            oracle_useful = (max(ent, full) - single) > TREE_GAP
        if oracle_useful != cls.useful:
            failures.append(
                {
                    **_pair_inputs(c1, c2),
                    "node": cls.node,
                    "classified_useful": cls.useful,
                    "single": single,
                    "entangled": ent,
                }
            )
    return {
        "mode": "tree",
        "samples": samples,
        "seed": seed,
        "retained": retained,
        "discarded": discarded,
        "slack_threshold": TREE_SLACK,
        "gap_threshold": TREE_GAP,
        "failures": failures,
        "passed": not failures,
    }


def find_useful_pair(
    seed: int = 2026, min_gap: float = 0.05
) -> tuple[channels.QubitChannel, channels.QubitChannel]:
    """First seeded random pair the classifier marks useful by a clear gap."""
    rng = _rng(seed)
    for k in range(10000):
        if k % 2 == 0:
            c1, c2 = sample_extremal(rng), sample_extremal(rng)
        else:
            c1, c2 = sample_mixture(rng), sample_mixture(rng)
        cls = discrim.classify_pair(c1, c2)
        if cls.useful and cls.margins.get("value_gap", 0.0) > min_gap:
            return c1, c2
    raise RuntimeError("no useful pair found in the seeded stream")


def montecarlo_cases() -> list:
    """The three fixed channel pairs used by the Monte-Carlo consistency check."""
    identity = channels.QubitChannel.extremal(0.0, 0.0)
    full_ad = channels.QubitChannel.extremal(math.pi / 2.0, 0.0)
    pair3 = find_useful_pair()
    return [
        ("identity-vs-full-ad", identity, full_ad),
        ("ad(pi/3)-vs-ad(pi/6)",
         channels.QubitChannel.extremal(math.pi / 3.0, 0.0),
         channels.QubitChannel.extremal(math.pi / 6.0, 0.0)),
        ("useful-pair", pair3[0], pair3[1]),
    ]


def _best_single_probe(c1, c2, p) -> oracle.PureState2:
    t = discrim.max_distance_single(p).arg
    return oracle.PureState2(complex(math.sqrt(1.0 - t)), complex(math.sqrt(t)))


def check_montecarlo(
    trials: int, seed: int, cfg: oracle.SearchConfig = oracle.DEFAULT_CONFIG
) -> dict:
    """Empirical Helstrom success frequencies vs the closed-form value."""
    cases = []
    failures = []
    for k, (name, c1, c2) in enumerate(montecarlo_cases()):
        p = discrim.compute_params(c1, c2)
        cls = discrim.classify_pair(c1, c2)
        if cls.useful:
            probe, res = oracle.optimal_entangled_probe(c1, c2, cfg)
            delta = oracle.delta_entangled(c1, c2, probe)
        else:
            probe = _best_single_probe(c1, c2, p)
            delta = oracle.delta_single(c1, c2, probe)
        distance = smallmat.trace_norm(delta)
        theo = discrim.success_probability(distance)
        meas = oracle.helstrom(delta)
        emp = oracle.simulate(c1, c2, probe, meas, trials, seed + k)
        sigma = math.sqrt(max(theo * (1.0 - theo), 0.0) / trials)
        if sigma == 0.0:
            z = 0.0 if emp == theo else math.inf
            ok = emp == theo
        else:
            z = (emp - theo) / sigma
            ok = abs(z) <= SIGMA_BAND
        record = {
            "case": name,
            **_pair_inputs(c1, c2),
            "distance": distance,
            "theoretical": theo,
            "empirical": emp,
            "z": z if math.isfinite(z) else 1e300,
            "trials": trials,
        }
        cases.append(record)
        if not ok:
            failures.append(record)
    return {
        "mode": "montecarlo",
        "trials": trials,
        "seed": seed,
        "sigma_band": SIGMA_BAND,
        "cases": cases,
        "failures": failures,
        "passed": not failures,
    }

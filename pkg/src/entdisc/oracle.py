"""Brute-force verification: probe search, Helstrom measurements, sampling.

Nothing in this module uses the closed-form distance formulas.  Trace
distances are maximized directly over probe states by applying the
channels' Kraus operators, so the results serve as an independent check on
the closed forms and on the decision tree.  Grid evaluations are batched
through numpy (including LAPACK's batched Hermitian eigensolver for the
4x4 case), which keeps the full acceptance sweep in the minutes range.

All searches are deterministic given a :class:`SearchConfig`: grids are
uniform, refinements are golden-section coordinate sweeps, the full-space
search uses a seeded generator for its multistarts, and ties are broken
toward the lowest index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channels, smallmat
from .discrim import DistanceResult

RNG_ALGORITHM = "pcg64"

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_GOLDEN_ITERS = 60
_MAX_SWEEPS = 60


@dataclass(frozen=True)
class SearchConfig:
    """Deterministic search budget for the brute-force maximizers."""

    grid_points: int = 256
    multistarts: int = 64
    refine_tol: float = 1e-10
    rng_seed: int = 42

    def __post_init__(self):
        if self.grid_points < 64:
            raise ValueError("grid_points must be >= 64")
        if self.multistarts < 16:
            raise ValueError("multistarts must be >= 16")
        if not self.refine_tol > 0.0:
            raise ValueError("refine_tol must be positive")


DEFAULT_CONFIG = SearchConfig()


@dataclass(frozen=True)
class PureState2:
    """A qubit pure state |psi> = a0 |0> + a1 |1>."""

    a0: complex
    a1: complex

    def __post_init__(self):
        norm = abs(self.a0) ** 2 + abs(self.a1) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm deviates from 1 by {abs(norm - 1.0):.3e}")

    @classmethod
    def from_bloch(cls, polar: float, azimuth: float) -> "PureState2":
        return cls(
            complex(math.cos(polar / 2.0)),
            complex(math.cos(azimuth), math.sin(azimuth)) * math.sin(polar / 2.0),
        )

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a0, self.a1], dtype=complex)

    def density(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())


@dataclass(frozen=True)
class PureState4:
    """A two-qubit pure state over |00>, |01>, |10>, |11>."""

    a: tuple

    def __post_init__(self):
        if len(self.a) != 4:
            raise ValueError("PureState4 needs 4 amplitudes")
        norm = sum(abs(x) ** 2 for x in self.a)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm deviates from 1 by {abs(norm - 1.0):.3e}")

    @classmethod
    def schmidt(cls, a0: complex, a1: complex) -> "PureState4":
        return cls((complex(a0), 0j, 0j, complex(a1)))

    @classmethod
    def product(cls, left: PureState2, right: PureState2) -> "PureState4":
        amps = np.kron(left.vector, right.vector)
        return cls(tuple(complex(x) for x in amps))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.a, dtype=complex)

    def density(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())


@dataclass(frozen=True)
class Measurement:
    """Two-outcome projective measurement (plus/minus eigenspaces)."""

    plus_projector: np.ndarray
    minus_projector: np.ndarray
    dim: int

    def __post_init__(self):
        for proj in (self.plus_projector, self.minus_projector):
            if np.max(np.abs(proj @ proj - proj)) > 1e-10:
                raise ValueError("projector is not idempotent")
        s = self.plus_projector + self.minus_projector
        if np.max(np.abs(s - np.eye(self.dim))) > 1e-10:
            raise ValueError("projectors do not sum to the identity")


def _ops(c: channels.QubitChannel) -> list:
    return list(channels.kraus_operators(c))


def _extended_ops(c: channels.QubitChannel) -> list:
    eye = np.eye(2, dtype=complex)
    return [np.kron(eye, op) for op in _ops(c)]


def _superop(ops) -> np.ndarray:
    """Matrix of rho -> sum op rho op^dag acting on the row-major vec(rho)."""
    dim = ops[0].shape[0]
    out = np.zeros((dim * dim, dim * dim), dtype=complex)
    for op in ops:
        out += np.kron(op, op.conj())
    return out


def _delta_superop(c1, c2, extended: bool) -> np.ndarray:
    if extended:
        return _superop(_extended_ops(c1)) - _superop(_extended_ops(c2))
    return _superop(_ops(c1)) - _superop(_ops(c2))


def _delta_batch(lmat: np.ndarray, states: np.ndarray) -> np.ndarray:
    """Output differences for a batch of pure probe states."""
    dim = states.shape[1]
    rhos = states[:, :, None] * states.conj()[:, None, :]
    d = rhos.reshape(-1, dim * dim) @ lmat.T
    return d.reshape(-1, dim, dim)


def delta_single(c1, c2, psi: PureState2) -> np.ndarray:
    """Difference of the two channel outputs on a single-qubit probe."""
    rho = psi.density()
    d = np.zeros((2, 2), dtype=complex)
    for op in _ops(c1):
        d += op @ rho @ op.conj().T
    for op in _ops(c2):
        d -= op @ rho @ op.conj().T
    return 0.5 * (d + d.conj().T)


def delta_entangled(c1, c2, psi: PureState4) -> np.ndarray:
    """Difference of the two extended-channel outputs on a two-qubit probe."""
    rho = psi.density()
    d = np.zeros((4, 4), dtype=complex)
    for op in _extended_ops(c1):
        d += op @ rho @ op.conj().T
    for op in _extended_ops(c2):
        d -= op @ rho @ op.conj().T
    return 0.5 * (d + d.conj().T)


def _tracenorm2_batch(d: np.ndarray) -> np.ndarray:
    mean = 0.5 * np.real(d[:, 0, 0] + d[:, 1, 1])
    disc = np.sqrt(
        (0.5 * np.real(d[:, 0, 0] - d[:, 1, 1])) ** 2 + np.abs(d[:, 0, 1]) ** 2
    )
    return np.abs(mean + disc) + np.abs(mean - disc)


def _tracenorm4_batch(d: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(np.linalg.eigvalsh(d)), axis=1)


def _golden_max(fn, lo: float, hi: float) -> tuple[float, float]:
    """Deterministic golden-section maximization of a scalar function."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(_GOLDEN_ITERS):
        if hi - lo < 1e-13:
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = fn(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = fn(x1)
    x = 0.5 * (lo + hi)
    return x, fn(x)


def _coordinate_ascent(fn, point: list, ranges: list, refine_tol: float):
    """Golden-section sweeps over coordinates until a sweep stops helping."""
    best = fn(point)
    for _ in range(_MAX_SWEEPS):
        gained = 0.0
        for k, (lo, hi) in enumerate(ranges):
            def along(x, k=k):
                trial = list(point)
                trial[k] = x
                return fn(trial)

            x, v = _golden_max(along, lo, hi)
            if v > best:
                gained += v - best
                best = v
                point[k] = x
        if gained < refine_tol:
            break
    return best, point


def brute_max_single(c1, c2, cfg: SearchConfig = DEFAULT_CONFIG) -> DistanceResult:
    """Maximize the output trace distance over the Bloch sphere.

    Uniform (polar, azimuth) grid with cfg.grid_points per axis, then
    golden-section coordinate refinement from the best grid point.
    """
    lmat = _delta_superop(c1, c2, extended=False)
    n = cfg.grid_points
    polar = np.linspace(0.0, math.pi, n)
    azim = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    pg, ag = np.meshgrid(polar, azim, indexing="ij")
    pg, ag = pg.ravel(), ag.ravel()
    states = np.stack([np.cos(pg / 2.0), np.exp(1j * ag) * np.sin(pg / 2.0)], axis=1)
    vals = _tracenorm2_batch(_delta_batch(lmat, states))
    i = int(np.argmax(vals))

    def objective(pt):
        state = np.array(
            [[math.cos(pt[0] / 2.0),
              math.sin(pt[0] / 2.0) * complex(math.cos(pt[1]), math.sin(pt[1]))]],
            dtype=complex,
        )
        return float(_tracenorm2_batch(_delta_batch(lmat, state))[0])

    best, (bp, ba) = _coordinate_ascent(
        objective,
        [float(pg[i]), float(ag[i])],
        [(0.0, math.pi), (0.0, 2.0 * math.pi)],
        cfg.refine_tol,
    )
    best = max(best, float(vals[i]))
    return DistanceResult(best, math.sin(bp / 2.0) ** 2, "bloch-grid", n)


def _restricted_engine(c1, c2, cfg: SearchConfig):
    lmat = _delta_superop(c1, c2, extended=True)
    n = cfg.grid_points
    tgrid = np.linspace(0.0, 1.0, n)
    phases = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    tg, hg = np.meshgrid(tgrid, phases, indexing="ij")
    tg, hg = tg.ravel(), hg.ravel()
    states = np.zeros((tg.size, 4), dtype=complex)
    states[:, 0] = np.sqrt(1.0 - tg)
    states[:, 3] = np.sqrt(tg) * np.exp(1j * hg)
    vals = _tracenorm4_batch(_delta_batch(lmat, states))
    i = int(np.argmax(vals))

    def objective(pt):
        t, eta = pt
        state = np.zeros((1, 4), dtype=complex)
        state[0, 0] = math.sqrt(1.0 - t)
        state[0, 3] = math.sqrt(t) * complex(math.cos(eta), math.sin(eta))
        return float(_tracenorm4_batch(_delta_batch(lmat, state))[0])

    best, (bt, be) = _coordinate_ascent(
        objective,
        [float(tg[i]), float(hg[i])],
        [(0.0, 1.0), (0.0, 2.0 * math.pi)],
        cfg.refine_tol,
    )
    best = max(best, float(vals[i]))
    state = PureState4.schmidt(
        math.sqrt(1.0 - bt), math.sqrt(bt) * complex(math.cos(be), math.sin(be))
    )
    return best, bt, state


def _chart_states(params: np.ndarray) -> np.ndarray:
    """Hyperspherical chart: 3 magnitude angles in [0, pi/2], 3 phases."""
    chi1, chi2, chi3 = params[:, 0], params[:, 1], params[:, 2]
    ph = params[:, 3:6]
    states = np.zeros((params.shape[0], 4), dtype=complex)
    states[:, 0] = np.cos(chi1)
    states[:, 1] = np.sin(chi1) * np.cos(chi2) * np.exp(1j * ph[:, 0])
    states[:, 2] = np.sin(chi1) * np.sin(chi2) * np.cos(chi3) * np.exp(1j * ph[:, 1])
    states[:, 3] = np.sin(chi1) * np.sin(chi2) * np.sin(chi3) * np.exp(1j * ph[:, 2])
    return states


_CHART_RANGES = [(0.0, math.pi / 2.0)] * 3 + [(0.0, 2.0 * math.pi)] * 3


def _full_engine(c1, c2, cfg: SearchConfig):
    """Multistart golden-section ascent on the 6-parameter state manifold.

    All starts advance in lockstep so every objective call is one batched
    channel application; the reduction takes the maximum with the lowest
    start index winning ties.
    """
    lmat = _delta_superop(c1, c2, extended=True)

    def values(params: np.ndarray) -> np.ndarray:
        return _tracenorm4_batch(_delta_batch(lmat, _chart_states(params)))

    rng = np.random.default_rng(np.random.PCG64(cfg.rng_seed))
    k = cfg.multistarts
    params = np.empty((k, 6))
    for j, (lo, hi) in enumerate(_CHART_RANGES):
        params[:, j] = rng.uniform(lo, hi, size=k)
    best = values(params)
    for _ in range(_MAX_SWEEPS):
        gained = np.zeros(k)
        for j, (lo_j, hi_j) in enumerate(_CHART_RANGES):

            def value_at(x, j=j):
                trial = params.copy()
                trial[:, j] = x
                return values(trial)

            lo = np.full(k, float(lo_j))
            hi = np.full(k, float(hi_j))
            x1 = hi - _GOLDEN * (hi - lo)
            x2 = lo + _GOLDEN * (hi - lo)
            f1, f2 = value_at(x1), value_at(x2)
            for _ in range(_GOLDEN_ITERS):
                move_right = f1 < f2
                x1o, x2o, f1o, f2o = x1, x2, f1, f2
                lo = np.where(move_right, x1o, lo)
                hi = np.where(move_right, hi, x2o)
                width = hi - lo
                x1 = np.where(move_right, x2o, hi - _GOLDEN * width)
                x2 = np.where(move_right, lo + _GOLDEN * width, x1o)
                f_eval = value_at(np.where(move_right, x2, x1))
                f1 = np.where(move_right, f2o, f_eval)
                f2 = np.where(move_right, f_eval, f1o)
            xmid = 0.5 * (lo + hi)
            vmid = value_at(xmid)
            improve = vmid > best
            params[improve, j] = xmid[improve]
            gained = np.where(improve, gained + vmid - best, gained)
            best = np.maximum(best, vmid)
        if float(np.max(gained)) < cfg.refine_tol:
            break
    i = int(np.argmax(best))
    state_vec = _chart_states(params[i : i + 1])[0]
    # fix global phase: largest-magnitude amplitude real positive
    lead = int(np.argmax(np.abs(state_vec)))
    phase = state_vec[lead] / abs(state_vec[lead])
    state_vec = state_vec / phase
    state_vec = state_vec / np.linalg.norm(state_vec)
    state = PureState4(tuple(complex(x) for x in state_vec))
    return float(best[i]), state


def brute_max_entangled(
    c1, c2, cfg: SearchConfig = DEFAULT_CONFIG, mode: str = "restricted"
) -> DistanceResult:
    """Maximize the extended-output trace distance over two-qubit probes.

    restricted mode searches the family a0 |00> + a1 |11| (a0 real, a1
    complex); full mode searches all pure two-qubit states by seeded
    multistart ascent.
    """
    if mode == "restricted":
        best, bt, _ = _restricted_engine(c1, c2, cfg)
        return DistanceResult(best, bt, "restricted", cfg.grid_points)
    if mode == "full":
        best, state = _full_engine(c1, c2, cfg)
        return DistanceResult(
            best, abs(state.a[3]) ** 2, "full", cfg.multistarts
        )
    raise ValueError(f"mode must be 'restricted' or 'full', got {mode!r}")


def optimal_entangled_probe(
    c1, c2, cfg: SearchConfig = DEFAULT_CONFIG
) -> tuple[PureState4, DistanceResult]:
    """Best probe from the restricted search, with its achieved distance."""
    best, bt, state = _restricted_engine(c1, c2, cfg)
    return state, DistanceResult(best, bt, "restricted", cfg.grid_points)


def helstrom(delta) -> Measurement:
    """Minimum-error measurement for a Hermitian output difference.

    The plus projector spans the strictly positive eigenspace; null
    directions go to the minus projector so results are deterministic.
    """
    delta = smallmat.check_hermitian(delta, tol=1e-10)
    vals, vecs = smallmat.hermitian_eigensystem(delta)
    dim = delta.shape[0]
    plus = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        if vals[i] > 0.0:
            v = vecs[:, i : i + 1]
            plus += v @ v.conj().T
    plus = 0.5 * (plus + plus.conj().T)
    minus = np.eye(dim) - plus
    return Measurement(plus, 0.5 * (minus + minus.conj().T), dim)


def simulate(
    c1,
    c2,
    probe,
    m: Measurement,
    trials: int,
    rng_seed: int,
) -> float:
    """Empirical success frequency of the guess-on-plus strategy.

    Each trial draws one of the two channels uniformly, applies it to the
    probe (extended when the probe is two-qubit), samples the measurement
    outcome, and guesses channel 1 on the plus outcome.  Deterministic
    given rng_seed (PCG64 counter stream).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if isinstance(probe, PureState2):
        if m.dim != 2:
            raise ValueError("measurement dimension does not match probe")
        rho = probe.density()
        outs = [channels.apply(c1, rho), channels.apply(c2, rho)]
    elif isinstance(probe, PureState4):
        if m.dim != 4:
            raise ValueError("measurement dimension does not match probe")
        rho = probe.density()
        outs = [channels.apply_extended(c1, rho), channels.apply_extended(c2, rho)]
    else:
        raise ValueError("probe must be a PureState2 or a PureState4")
    p_plus = np.array(
        [min(max(float(np.real(np.trace(out @ m.plus_projector))), 0.0), 1.0)
         for out in outs]
    )
    rng = np.random.default_rng(np.random.PCG64(rng_seed))
    which = rng.integers(0, 2, size=trials)
    clicks_plus = rng.random(trials) < p_plus[which]
    guesses = np.where(clicks_plus, 0, 1)
    return float(np.mean(guesses == which))

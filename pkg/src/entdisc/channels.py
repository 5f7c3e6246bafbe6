"""Qubit channels in the two-angle diagonal-frame parametrization.

A channel on the closure of extreme points of the CPTP set is fixed by two
angles (phi, theta) in [0, pi] through the Kraus pair

    K0 = [[cos(theta), 0], [0, cos(phi)]],
    K1 = [[0, sin(phi)], [sin(theta), 0]],

and a general channel in the simultaneously diagonalizable family is a
convex mixture of two such maps.  This module builds those objects,
validates them (trace preservation, complete positivity via the Choi
matrix), applies them to one- and two-qubit states, exposes the affine
Bloch-ball picture, and parses the channel literal syntax used by the CLI:

    identity
    ad(phi)
    pauli(lambda,theta,theta2)
    extremal(phi,theta)
    mix(lambda;phi,theta;phi2,theta2)

with all angles in radians.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from . import smallmat

DENSITY_TOL = 1e-10
COMPLETENESS_TOL = 1e-10
CHOI_TOL = 1e-10
QUASI_EXTREME_TOL = 1e-10


@dataclass(frozen=True)
class ExtremalChannel:
    """A closure-of-extreme-points qubit channel, angles in [0, pi]."""

    phi: float
    theta: float

    def __post_init__(self):
        for name, value in (("phi", self.phi), ("theta", self.theta)):
            if not (0.0 <= value <= math.pi):
                raise ValueError(f"{name} must lie in [0, pi], got {value}")


@dataclass(frozen=True)
class QubitChannel:
    """Convex mixture lam * first + (1 - lam) * second.

    lam = 1 denotes a pure extremal channel; the second component is then
    ignored by the action but still stored.
    """

    lam: float
    first: ExtremalChannel
    second: ExtremalChannel

    def __post_init__(self):
        if not (0.0 <= self.lam <= 1.0):
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")

    @classmethod
    def extremal(cls, phi: float, theta: float) -> "QubitChannel":
        c = ExtremalChannel(phi, theta)
        return cls(1.0, c, c)

    @classmethod
    def mixture(
        cls, lam: float, first: ExtremalChannel, second: ExtremalChannel
    ) -> "QubitChannel":
        return cls(lam, first, second)

    @property
    def is_extremal(self) -> bool:
        return self.lam == 1.0 or self.first == self.second


@dataclass(frozen=True)
class KrausSet:
    """Flat list of Kraus operators with mixture weights folded in.

    ``operators`` already carry the sqrt(weight) scaling, so completeness
    reads sum_i op_i^dag op_i = I.  ``weights`` records the mixture weights
    of the component channels (summing to one) for provenance.
    """

    operators: tuple
    weights: tuple

    def completeness_deviation(self) -> float:
        acc = np.zeros((2, 2), dtype=complex)
        for op in self.operators:
            acc += smallmat.dagger(op) @ op
        return float(np.max(np.abs(acc - np.eye(2))))


@dataclass(frozen=True)
class AffineMap:
    """Bloch-ball action r -> diag(lambdas) r + t."""

    lambdas: tuple
    t: tuple


def kraus_of(c: ExtremalChannel) -> KrausSet:
    """The two Kraus operators of an extremal channel."""
    k0 = np.array([[math.cos(c.theta), 0.0], [0.0, math.cos(c.phi)]], dtype=complex)
    k1 = np.array([[0.0, math.sin(c.phi)], [math.sin(c.theta), 0.0]], dtype=complex)
    return KrausSet((k0, k1), (1.0,))


def kraus_of_mixture(c: QubitChannel) -> KrausSet:
    """Four scaled Kraus operators of a convex mixture."""
    first = kraus_of(c.first).operators
    second = kraus_of(c.second).operators
    w1, w2 = math.sqrt(c.lam), math.sqrt(1.0 - c.lam)
    ops = tuple(w1 * k for k in first) + tuple(w2 * k for k in second)
    return KrausSet(ops, (c.lam, 1.0 - c.lam))


def kraus_operators(c: QubitChannel) -> tuple:
    """Scaled Kraus operators of any channel, zero operators dropped."""
    ops = kraus_of_mixture(c).operators
    return tuple(op for op in ops if np.max(np.abs(op)) > 1e-15)


def check_density(rho, dim: int) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, PSD within 1e-10."""
    rho = smallmat.check_hermitian(rho, tol=DENSITY_TOL)
    if rho.shape[0] != dim:
        raise ValueError(f"expected a {dim}x{dim} state, got {rho.shape[0]}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > DENSITY_TOL:
        raise ValueError(f"state trace deviates from 1 by {abs(tr - 1.0):.3e}")
    evs = smallmat.hermitian_eigenvalues(rho)
    if evs[0] < -DENSITY_TOL:
        raise ValueError(f"state has negative eigenvalue {evs[0]:.3e}")
    return rho


def _kraus_apply(ops, rho: np.ndarray) -> np.ndarray:
    out = np.zeros_like(rho)
    for op in ops:
        out += op @ rho @ op.conj().T
    return 0.5 * (out + out.conj().T)


def apply(c: QubitChannel, rho) -> np.ndarray:
    """Channel action on a single-qubit density matrix."""
    rho = check_density(rho, 2)
    return _kraus_apply(kraus_operators(c), rho)


def apply_extended(c: QubitChannel, rho4) -> np.ndarray:
    """Action of id (x) channel on a two-qubit density matrix.

    The identity acts on the left (reference) qubit in the canonical basis
    order |00>, |01>, |10>, |11>.
    """
    rho4 = check_density(rho4, 4)
    eye = np.eye(2, dtype=complex)
    ops = tuple(smallmat.kron(eye, op) for op in kraus_operators(c))
    return _kraus_apply(ops, rho4)


def affine_map(c: QubitChannel) -> AffineMap:
    """Bloch-ball affine picture; mixtures combine component maps convexly."""

    def extremal_map(e: ExtremalChannel):
        lam1 = math.cos(e.phi - e.theta)
        lam2 = math.cos(e.phi + e.theta)
        return (
            np.array([lam1, lam2, lam1 * lam2]),
            np.array([0.0, 0.0, math.sin(e.phi - e.theta) * math.sin(e.phi + e.theta)]),
        )

    l1, t1 = extremal_map(c.first)
    l2, t2 = extremal_map(c.second)
    lam = c.lam
    lambdas = lam * l1 + (1.0 - lam) * l2
    shift = lam * t1 + (1.0 - lam) * t2
    return AffineMap(tuple(float(x) for x in lambdas), tuple(float(x) for x in shift))


def choi_matrix(k: KrausSet) -> np.ndarray:
    """Choi matrix sum_ij |i><j| (x) N(|i><j|) of the channel."""
    choi = np.zeros((4, 4), dtype=complex)
    for op in k.operators:
        w = np.asarray(op, dtype=complex).T.reshape(4)
        choi += np.outer(w, w.conj())
    return choi


@dataclass(frozen=True)
class CPTPReport:
    trace_preserving: bool
    completely_positive: bool
    max_violation: float


def validate_cptp(k: KrausSet) -> CPTPReport:
    """Check trace preservation and complete positivity of a Kraus set."""
    comp_dev = k.completeness_deviation()
    min_eig = float(smallmat.hermitian_eigenvalues(choi_matrix(k))[0])
    return CPTPReport(
        trace_preserving=comp_dev <= COMPLETENESS_TOL,
        completely_positive=min_eig >= -CHOI_TOL,
        max_violation=max(comp_dev, -min(min_eig, 0.0)),
    )


def is_quasi_extreme(c: ExtremalChannel) -> bool:
    """True when sin(theta) = sin(phi): the ellipsoid touches the Bloch
    sphere at exactly two points and the map is not a true extreme point."""
    return abs(math.sin(c.theta) - math.sin(c.phi)) <= QUASI_EXTREME_TOL


# ---------------------------------------------------------------------------
# Channel literal syntax


class ChannelParseError(ValueError):
    pass


_LITERAL = re.compile(r"^\s*([a-z]+)\s*(?:\((.*)\))?\s*$")


def _parse_floats(body: str, sep: str, count: int, literal: str) -> list:
    parts = [p.strip() for p in body.split(sep)]
    if len(parts) != count:
        raise ChannelParseError(
            f"expected {count} fields in channel literal {literal!r}"
        )
    values = []
    for p in parts:
        try:
            values.append(float(p))
        except ValueError:
            raise ChannelParseError(
                f"bad number {p!r} in channel literal {literal!r}"
            ) from None
    return values


def parse_channel(text: str) -> QubitChannel:
    """Parse a channel literal; raises ChannelParseError naming the token."""
    m = _LITERAL.match(text)
    if not m:
        raise ChannelParseError(f"unrecognized channel literal {text!r}")
    head, body = m.group(1), m.group(2)
    try:
        if head == "identity":
            if body not in (None, ""):
                raise ChannelParseError(f"identity takes no arguments: {text!r}")
            return QubitChannel.extremal(0.0, 0.0)
        if head == "ad":
            (phi,) = _parse_floats(body or "", ",", 1, text)
            return QubitChannel.extremal(phi, 0.0)
        if head == "extremal":
            phi, theta = _parse_floats(body or "", ",", 2, text)
            return QubitChannel.extremal(phi, theta)
        if head == "pauli":
            lam, t1, t2 = _parse_floats(body or "", ",", 3, text)
            return QubitChannel.mixture(
                lam, ExtremalChannel(t1, t1), ExtremalChannel(t2, math.pi - t2)
            )
        if head == "mix":
            if body is None:
                raise ChannelParseError(f"mix needs arguments: {text!r}")
            groups = [g.strip() for g in body.split(";")]
            if len(groups) != 3:
                raise ChannelParseError(
                    f"mix literal needs 3 ';'-separated groups: {text!r}"
                )
            (lam,) = _parse_floats(groups[0], ",", 1, text)
            p1, t1 = _parse_floats(groups[1], ",", 2, text)
            p2, t2 = _parse_floats(groups[2], ",", 2, text)
            return QubitChannel.mixture(
                lam, ExtremalChannel(p1, t1), ExtremalChannel(p2, t2)
            )
    except ValueError as exc:
        if isinstance(exc, ChannelParseError):
            raise
        raise ChannelParseError(f"invalid channel literal {text!r}: {exc}") from None
    raise ChannelParseError(f"unknown channel kind {head!r} in {text!r}")


def format_channel(c: QubitChannel) -> str:
    """Canonical literal for a channel (round-trips through parse_channel)."""
    if c.is_extremal:
        return f"extremal({c.first.phi:.17g},{c.first.theta:.17g})"
    return (
        f"mix({c.lam:.17g};{c.first.phi:.17g},{c.first.theta:.17g};"
        f"{c.second.phi:.17g},{c.second.theta:.17g})"
    )

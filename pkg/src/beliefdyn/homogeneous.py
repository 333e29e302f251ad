"""Static-structure belief evolution Q_n = P^n M H^n.

People's beliefs M (rows = people, columns = concepts) are pushed through a
fixed network structure P and a fixed concept structure H.  The limit has
three regimes, depending on which structure keeps a single closed class:

* concept structure indecomposable: every row of the limit is its unique
  stationary distribution, regardless of P and M;
* only the network indecomposable: rows still agree but depend on M and H;
* both decomposable: rows differ across the network's closed classes.

Limits are computed in closed form from stationary distributions and
absorption probabilities.  Periodic recurrent classes get the time-average
(Cesaro) limit, flagged on the report.
"""

from dataclasses import dataclass

import numpy as np

from . import chains
from .stochastic import (DimensionMismatchError, as_matrix, delta_coefficient,
                         max_abs_diff, require_square, validate_stochastic)


class NotIndecomposableError(ValueError):
    """A unique stationary distribution requires at most one closed class."""


class NotAperiodicError(ValueError):
    """A periodic recurrent class prevents plain convergence."""


class SingularSystemError(ValueError):
    """A linear solve met a (numerically) singular system."""


@dataclass
class EvolutionTrace:
    """Snapshots Q_0..Q_n of a finite-horizon evolution."""

    snapshots: list
    stabilized_at: int = None

    @property
    def horizon(self):
        return len(self.snapshots) - 1

    @property
    def final(self):
        return self.snapshots[-1]


@dataclass
class LimitReport:
    limit: np.ndarray
    case: str            # H_indecomposable | P_indecomposable | both_decomposable | periodic_cesaro
    homogeneous: bool    # all rows equal within tolerance
    periodic: bool = False


def evolve(p, m, h, steps, tol=1e-9):
    """Iterate Q_{k+1} = P Q_k H for ``steps`` steps, recording snapshots.

    ``stabilized_at`` is the first k whose max-norm step difference falls
    below ``tol`` (pass tol=0 to disable stabilization marking).
    """
    p = require_square(p)
    h = require_square(h)
    m = as_matrix(m)
    if m.shape != (p.shape[0], h.shape[0]):
        raise DimensionMismatchError(
            f"beliefs {m.shape} incompatible with network {p.shape} / concepts {h.shape}")
    snaps = [m.copy()]
    stabilized = None
    q = m
    for k in range(1, steps + 1):
        q = p @ q @ h
        snaps.append(q.copy())
        if stabilized is None and tol > 0 and max_abs_diff(snaps[-1], snaps[-2]) < tol:
            stabilized = k
    return EvolutionTrace(snaps, stabilized)


def stationary_distribution(p, tol=1e-10):
    """Unique row vector pi with pi P = pi, for an indecomposable chain.

    Solved directly from (P^T - I) with one equation replaced by the
    normalization sum(pi) = 1; the residual is checked against ``tol``.
    """
    a = require_square(p)
    analysis = chains.analyze(a)
    if not analysis.is_indecomposable:
        raise NotIndecomposableError("stationary distribution is not unique")
    if not analysis.recurrent_aperiodic:
        raise NotAperiodicError("recurrent class is periodic")
    n = a.shape[0]
    system = a.T - np.eye(n)
    system[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    try:
        pi = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
    pi = np.where(np.abs(pi) < 1e-15, 0.0, pi)
    if np.any(pi < -1e-12) or max_abs_diff((pi @ a)[None, :], pi[None, :]) > tol:
        raise SingularSystemError("solve did not produce a valid stationary vector")
    pi = np.maximum(pi, 0.0)
    return pi / pi.sum()


def _class_stationary(a, members):
    """Stationary distribution of one closed class, as a vector over members."""
    block = a[np.ix_(members, members)]
    n = len(members)
    if n == 1:
        return np.ones(1)
    system = block.T - np.eye(n)
    system[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    try:
        pi = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
    pi = np.maximum(np.where(np.abs(pi) < 1e-15, 0.0, pi), 0.0)
    return pi / pi.sum()


def absorption_probabilities(p, analysis=None):
    """Probability h[i, c] of ending in leaf class c when started at state i.

    Rows of the result sum to 1; a recurrent state loads all mass on its
    own class.  Transient rows solve (I - T) x = b with T the
    transient-to-transient block.
    """
    a = require_square(p)
    if analysis is None:
        analysis = chains.analyze(a)
    cond = analysis.condensation
    leaves = cond.leaf_classes
    n = a.shape[0]
    out = np.zeros((n, len(leaves)))
    leaf_members = {c: cond.classes[c] for c in leaves}
    transient = [s for s in range(n) if not analysis.classification.recurrent[s]]
    for k, c in enumerate(leaves):
        for s in leaf_members[c]:
            out[s, k] = 1.0
    if transient:
        t_index = {s: i for i, s in enumerate(transient)}
        T = a[np.ix_(transient, transient)]
        lhs = np.eye(len(transient)) - T
        for k, c in enumerate(leaves):
            b = a[np.ix_(transient, list(leaf_members[c]))].sum(axis=1)
            try:
                x = np.linalg.solve(lhs, b)
            except np.linalg.LinAlgError as exc:
                raise SingularSystemError(str(exc)) from exc
            for s in transient:
                out[s, k] = x[t_index[s]]
    return out


def limit_structure(p):
    """Closed-form limit of P^n (Cesaro limit when a class is periodic).

    Row i of the result is the absorption-weighted mixture of the closed
    classes' stationary rows.  Returns (matrix, periodic_flag).
    """
    a = require_square(p)
    analysis = chains.analyze(a)
    cond = analysis.condensation
    periodic = not analysis.recurrent_aperiodic
    absorb = absorption_probabilities(a, analysis)
    n = a.shape[0]
    out = np.zeros((n, n))
    for k, c in enumerate(cond.leaf_classes):
        members = list(cond.classes[c])
        pi = _class_stationary(a, members)
        out[:, members] += absorb[:, [k]] * pi[None, :]
    return out, periodic


def limit_q(p, m, h, tol=1e-9):
    """Closed-form limit of P^n M H^n with its structural case label."""
    p = require_square(p)
    h = require_square(h)
    m = validate_stochastic(m, tol=1e-7)
    if m.shape != (p.shape[0], h.shape[0]):
        raise DimensionMismatchError(
            f"beliefs {m.shape} incompatible with network {p.shape} / concepts {h.shape}")
    p_analysis = chains.analyze(p)
    h_analysis = chains.analyze(h)
    p_inf, p_periodic = limit_structure(p)
    h_inf, h_periodic = limit_structure(h)
    limit = p_inf @ m @ h_inf
    periodic = p_periodic or h_periodic
    if periodic:
        case = "periodic_cesaro"
    elif h_analysis.is_indecomposable:
        case = "H_indecomposable"
    elif p_analysis.is_indecomposable:
        case = "P_indecomposable"
    else:
        case = "both_decomposable"
    return LimitReport(
        limit=limit,
        case=case,
        homogeneous=delta_coefficient(limit) < tol,
        periodic=periodic,
    )

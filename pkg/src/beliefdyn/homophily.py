"""Belief-dependent dynamic structures driven by KL-divergence homophily.

Each step rebuilds both structures from the current beliefs M:

* network: person i links to person j when KL(row_i, row_j) < eps_p; the
  weights over the linked set are a softmax of the divergences (self link
  always present, divergence 0);
* concepts: concept k links to concept l when the KL divergence between
  the corresponding columns of the column-normalized beliefs is below
  eps_h, weighted the same way;

then beliefs update as Q_t = P_t Q_{t-1} H_t and become the M of the next
step.  The loop stops when successive beliefs differ by less than ``tol``
in max-norm, and reports the final network components as groups.
"""

from dataclasses import dataclass, field

import numpy as np

from .stochastic import col_normalize, max_abs_diff, row_normalize, validate_stochastic


class LengthMismatchError(ValueError):
    """The two distributions have different lengths."""


class InfiniteDivergenceError(ValueError):
    """KL is infinite: q has a zero where p has mass and no floor is set."""


class EmptySubsetError(ValueError):
    """Softmax weighting needs a nonempty linked subset."""


class StepLimitReached(RuntimeError):
    """No stabilization within max_steps; carries the partial trace."""

    def __init__(self, trace):
        self.trace = trace
        super().__init__(f"no stabilization within {len(trace.beliefs) - 1} steps")


@dataclass(frozen=True)
class HomophilyConfig:
    """Thresholds and knobs of the homophily iteration.

    ``beta`` is the softmax inverse temperature (0 gives uniform weights
    over the linked set).  ``floor`` guards KL against zero entries that
    appear when iterated products underflow; distributions are floored and
    renormalized before divergence evaluation.  ``freeze_network`` /
    ``freeze_concepts`` pin the corresponding structure to the identity,
    which is how the one-sided group bounds are exercised.
    """

    eps_p: float
    eps_h: float
    beta: float = 1.0
    floor: float = 1e-12
    tol: float = 1e-9
    max_steps: int = 100
    freeze_network: bool = False
    freeze_concepts: bool = False

    def __post_init__(self):
        if self.eps_p <= 0 or self.eps_h <= 0:
            raise ValueError("similarity thresholds must be positive")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass
class HomophilyTrace:
    """Per-step structures and beliefs of one homophily run.

    ``beliefs[0]`` is the initial matrix; ``networks[t-1]``,
    ``concepts[t-1]`` and ``beliefs[t]`` belong to step t.  Groups are the
    weakly connected components of the final network; ``belief_groups``
    partitions people by (near-)equal belief rows instead, which can be
    coarser than the link groups.
    """

    networks: list = field(default_factory=list)
    concepts: list = field(default_factory=list)
    beliefs: list = field(default_factory=list)
    stabilized_at: int = None
    final_groups: tuple = ()
    belief_groups: tuple = ()


def kl_divergence(p, q, floor=0.0):
    """Kullback-Leibler divergence sum p_k log(p_k / q_k), natural log.

    With ``floor`` > 0 both arguments are clipped below at the floor and
    renormalized first.  Terms with p_k = 0 contribute nothing.  With
    floor = 0, a zero in q against positive p raises
    :class:`InfiniteDivergenceError`.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape or p.ndim != 1:
        raise LengthMismatchError(f"shapes {p.shape} and {q.shape}")
    if floor > 0:
        p = np.maximum(p, floor)
        p = p / p.sum()
        q = np.maximum(q, floor)
        q = q / q.sum()
    mask = p > 0
    if np.any(q[mask] == 0):
        raise InfiniteDivergenceError("q vanishes where p has mass (floor = 0)")
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


def softmax_weights(divs, beta):
    """Softmax of negated divergences over a linked subset.

    Computed with a shift for numerical stability; beta = 0 degenerates to
    uniform weights.
    """
    divs = np.asarray(divs, dtype=float)
    if divs.size == 0:
        raise EmptySubsetError("softmax over an empty subset")
    z = np.exp(-beta * (divs - divs.min()))
    return z / z.sum()


def _homophily_structure(points, eps, cfg):
    """Threshold-and-softmax structure over a list of distributions."""
    n = len(points)
    divs = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                divs[i, j] = kl_divergence(points[i], points[j], cfg.floor)
    out = np.zeros((n, n))
    for i in range(n):
        linked = divs[i] < eps        # strict; self always qualifies at 0
        out[i, linked] = softmax_weights(divs[i, linked], cfg.beta)
    # mathematically already row-stochastic; renormalize to absorb drift
    return row_normalize(out)


def build_network(m, cfg):
    """Network structure over people from the rows of the beliefs."""
    m = validate_stochastic(m, tol=1e-7)
    return _homophily_structure(list(m), cfg.eps_p, cfg)


def build_concepts(m, cfg):
    """Concept structure from the columns of the column-normalized beliefs.

    Each column, rescaled to sum to 1, is read as a distribution over
    people; concepts whose columns diverge by less than eps_h get linked.
    """
    m = validate_stochastic(m, tol=1e-7)
    mhat = col_normalize(m)
    return _homophily_structure(list(mhat.T), cfg.eps_h, cfg)


def network_groups(p, threshold=0.0):
    """Weakly connected components of a network's positivity graph."""
    a = np.asarray(p) > threshold
    a = a | a.T
    n = a.shape[0]
    seen = [False] * n
    groups = []
    for i in range(n):
        if seen[i]:
            continue
        comp = [i]
        seen[i] = True
        stack = [i]
        while stack:
            u = stack.pop()
            for v in np.flatnonzero(a[u]):
                v = int(v)
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        groups.append(tuple(sorted(comp)))
    return tuple(sorted(groups))


def belief_groups(m, tol=1e-6):
    """Partition people whose belief rows agree entrywise within tol."""
    m = np.asarray(m, dtype=float)
    groups = []
    for i in range(m.shape[0]):
        for g in groups:
            if np.max(np.abs(m[g[0]] - m[i])) < tol:
                g.append(i)
                break
        else:
            groups.append([i])
    return tuple(tuple(g) for g in groups)


def run_homophily(m0, cfg):
    """Iterate the homophily model until beliefs stabilize.

    Raises :class:`StepLimitReached` (carrying the partial trace) when the
    max-norm step difference never falls below ``cfg.tol`` within
    ``cfg.max_steps`` steps.
    """
    m0 = validate_stochastic(m0, tol=1e-7)
    r, s = m0.shape
    trace = HomophilyTrace(beliefs=[m0.copy()])
    q = m0
    for t in range(1, cfg.max_steps + 1):
        p_t = np.eye(r) if cfg.freeze_network else build_network(q, cfg)
        h_t = np.eye(s) if cfg.freeze_concepts else build_concepts(q, cfg)
        nxt = p_t @ q @ h_t
        trace.networks.append(p_t)
        trace.concepts.append(h_t)
        trace.beliefs.append(nxt.copy())
        if max_abs_diff(nxt, q) < cfg.tol:
            trace.stabilized_at = t
            q = nxt
            break
        q = nxt
    trace.final_groups = network_groups(trace.networks[-1])
    trace.belief_groups = belief_groups(trace.beliefs[-1])
    if trace.stabilized_at is None:
        raise StepLimitReached(trace)
    return trace

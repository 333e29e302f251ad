"""Randomly changing structures: i.i.d. sampling of network and concept
matrices from weighted families.

Each step left-multiplies beliefs by a freshly drawn network matrix and
right-multiplies by a freshly drawn concept matrix:

    Q_t = P_t Q_{t-1} H_t,   P_t ~ sp,  H_t ~ sh.

Runs are reproducible: the network and concept index sequences come from
two independent sub-streams of one :class:`~beliefdyn.rng.Xoshiro256StarStar`
seed, so a given (seed, families, horizon) triple always yields the same
words and the same final beliefs, bit for bit.
"""

from dataclasses import dataclass

import numpy as np

from .chains import one_leaf_connected
from .ergodic import exists_scrambling_product
from .homogeneous import limit_q
from .rng import CONCEPT_STREAM, NETWORK_STREAM, Xoshiro256StarStar
from .stochastic import (DimensionMismatchError, MatrixFamily, as_matrix,
                         max_abs_diff, validate_stochastic)


@dataclass
class SampledRun:
    """One seeded trajectory: the words actually drawn and the final beliefs."""

    seed: int
    horizon: int
    word_p: tuple
    word_h: tuple
    final_q: np.ndarray
    stabilized_at: int = None


@dataclass
class ConvergenceDiagnosis:
    almost_surely_rank_one: bool
    witness: tuple = None     # scrambling word over the family, when one exists


def _as_family(f):
    return f if isinstance(f, MatrixFamily) else MatrixFamily(f)


def sample_trajectory(sp, sh, m, seed, steps, tol=1e-9):
    """Run one i.i.d.-sampled trajectory of the changing-structure model.

    Parameters
    ----------
    sp, sh : MatrixFamily
        Families for the network and concept structures (members square).
    m : array_like
        Initial beliefs, rows = people, columns = concepts.
    seed : int
        64-bit reproducibility seed.
    steps : int
        Horizon; the run always executes the full horizon.
    tol : float
        Stabilization marker threshold on successive max-norm differences.
    """
    sp = _as_family(sp).require_square()
    sh = _as_family(sh).require_square()
    m = validate_stochastic(m, tol=1e-7)
    if m.shape != (sp.shape[0], sh.shape[0]):
        raise DimensionMismatchError(
            f"beliefs {m.shape} incompatible with families {sp.shape} / {sh.shape}")
    rng_p = Xoshiro256StarStar(seed, stream=NETWORK_STREAM)
    rng_h = Xoshiro256StarStar(seed, stream=CONCEPT_STREAM)
    word_p, word_h = [], []
    q = m
    stabilized = None
    for t in range(1, steps + 1):
        i = rng_p.next_index(sp.weights)
        j = rng_h.next_index(sh.weights)
        word_p.append(i)
        word_h.append(j)
        nxt = sp.members[i] @ q @ sh.members[j]
        if stabilized is None and tol > 0 and max_abs_diff(nxt, q) < tol:
            stabilized = t
        q = nxt
    return SampledRun(int(seed), steps, tuple(word_p), tuple(word_h), q, stabilized)


def diagnose_convergence(family, max_patterns=100_000):
    """Almost-sure consensus test for products drawn from one family.

    Sampled products collapse to rank one with probability one exactly when
    the condensation of the family's union graph is connected with a single
    leaf; equivalently, when some finite word over the family is
    scrambling.  The witness word is reported when it exists.
    """
    family = _as_family(family).require_square()
    ok = one_leaf_connected(family)
    witness = exists_scrambling_product(family, max_patterns) if ok else None
    return ConvergenceDiagnosis(ok, witness)


def expectation_matrix(family):
    """Weight-averaged member: the one-step expected transition matrix."""
    family = _as_family(family)
    out = np.zeros(family.shape)
    for w, m in zip(family.weights, family.members):
        out += w * m
    return out


def expected_limit(sp, sh, m):
    """Limit of the expected dynamics: lim (E P)^n M (E H)^n.

    Because the draws are independent across time, the expectation of the
    sampled product equals the product of expectations, so this is also the
    expectation of the (random) limiting beliefs whenever those limits
    exist per-run.
    """
    sp = _as_family(sp)
    sh = _as_family(sh)
    m = as_matrix(m)
    return limit_q(expectation_matrix(sp), m, expectation_matrix(sh)).limit

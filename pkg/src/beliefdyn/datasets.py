"""Bundled example systems used by the demos and the test suite.

All matrices are published rounded to three decimals, so they are ingested
at the loose tolerance and row-renormalized (see
:func:`beliefdyn.stochastic.ingest_rounded`).
"""

import numpy as np

from .stochastic import MatrixFamily, ingest_rounded


def two_camp_society():
    """(P, M, H): five people in two non-communicating camps.

    The network has closed classes {0, 1, 2} and {3, 4}; the concept
    structure mixes all five concepts (single class), so its stationary
    row dominates the long-run beliefs and everyone ends up agreeing.
    Beliefs start out maximally opinionated (M = I).
    """
    p = ingest_rounded([
        [0.194, 0.387, 0.419, 0, 0],
        [0.29, 0.323, 0.387, 0, 0],
        [0.261, 0.696, 0.043, 0, 0],
        [0, 0, 0, 0.448, 0.552],
        [0, 0, 0, 0.2, 0.8],
    ])
    h = ingest_rounded([
        [0.342, 0.421, 0.026, 0.105, 0.105],
        [0.163, 0.204, 0.388, 0.102, 0.143],
        [0.289, 0.044, 0.156, 0.178, 0.333],
        [0.316, 0.105, 0.246, 0.158, 0.175],
        [0.304, 0.107, 0.286, 0.286, 0.018],
    ])
    return p, np.eye(5), h


def camps_and_loner():
    """(P, M, H): a two-person camp plus a loner, over six concepts.

    Both structures are decomposable (network classes {0, 1} and {2};
    concept blocks {0, 1} and {2..5}), so the limit keeps two distinct
    belief rows: the camp agrees internally, the loner differs.
    """
    p = ingest_rounded([
        [0.3, 0.7, 0],
        [0.6, 0.4, 0],
        [0, 0, 1],
    ])
    m = ingest_rounded([
        [0.1, 0.3, 0.12, 0.02, 0.28, 0.18],
        [0.06, 0.23, 0.1, 0.23, 0.23, 0.15],
        [0.03, 0.01, 0.39, 0.38, 0.09, 0.1],
    ])
    h = ingest_rounded([
        [0.803, 0.197, 0, 0, 0, 0],
        [0.464, 0.536, 0, 0, 0, 0],
        [0, 0, 0.272, 0.038, 0.02, 0.669],
        [0, 0, 0.515, 0.017, 0.401, 0.068],
        [0, 0, 0.144, 0.319, 0.002, 0.535],
        [0, 0, 0.16, 0.357, 0.242, 0.241],
    ])
    return p, m, h


def two_anchor_society():
    """(P, M, H): six people, two of them immovable anchors.

    Persons 0 and 5 only listen to themselves; everyone else is transient
    and splits between the anchors' camps.  The published row for person 5
    contains a typesetting glitch (seven tokens for six columns); it is the
    absorbing row (0, 0, 0, 0, 0, 1) here.
    """
    p = ingest_rounded([
        [1, 0, 0, 0, 0, 0],
        [0.04, 0.12, 0.027, 0.027, 0.139, 0.647],
        [0.052, 0.182, 0.044, 0.519, 0.152, 0.051],
        [0.006, 0.111, 0.032, 0.037, 0.729, 0.085],
        [0.062, 0.416, 0.012, 0.38, 0.123, 0.007],
        [0, 0, 0, 0, 0, 1],
    ])
    m = ingest_rounded([
        [0.268, 0.422, 0.31],
        [0.331, 0.232, 0.437],
        [0.094, 0.364, 0.542],
        [0.172, 0.559, 0.268],
        [0.239, 0.74, 0.021],
        [0.048, 0.011, 0.941],
    ])
    h = ingest_rounded([
        [0.3, 0.7, 0],
        [0.6, 0.4, 0],
        [0, 0, 1],
    ])
    return p, m, h


def three_concept_structures():
    """(H1, H2, H3): 3x3 structures with contraction 0.6, 1.0 and 0.7.

    H1 and H3 are scrambling (every row pair shares a positive column);
    H2 is not, though its powers eventually are.
    """
    h1 = ingest_rounded([
        [0.2, 0.3, 0.5],
        [0.6, 0.4, 0],
        [0, 0.8, 0.2],
    ])
    h2 = ingest_rounded([
        [0.6, 0.1, 0.3],
        [0, 1, 0],
        [0.7, 0, 0.3],
    ])
    h3 = ingest_rounded([
        [0, 0.9, 0.1],
        [0.3, 0.2, 0.5],
        [0.4, 0.5, 0.1],
    ])
    return h1, h2, h3


def single_leaf_family():
    """Three 3x3 structures whose union graph condenses to a single leaf.

    Each member alone is decomposable, yet i.i.d. products over the family
    reach consensus with probability one: states 1 and 2 communicate
    through the union of the graphs and state 0 drains into them.
    """
    a1 = ingest_rounded([
        [0, 0.7, 0.3],
        [0, 1, 0],
        [0, 0, 1],
    ])
    a2 = ingest_rounded([
        [1, 0, 0],
        [0, 0.6, 0.4],
        [0, 0, 1],
    ])
    a3 = ingest_rounded([
        [0.3, 0.2, 0.5],
        [0, 1, 0],
        [0, 0.8, 0.2],
    ])
    return MatrixFamily([a1, a2, a3])


def five_person_beliefs():
    """5x4 initial beliefs for the homophily walkthroughs.

    With eps_p = 0.3 the network settles into groups {0, 4} and {1, 3}
    with person 2 isolated; eps_h = 0.25 versus 0.4 decides whether the
    concept side stays split or drives everyone to one belief row.
    """
    return ingest_rounded([
        [0.263, 0.472, 0.084, 0.181],
        [0.06, 0.103, 0.683, 0.154],
        [0.69, 0.176, 0.043, 0.091],
        [0.029, 0.136, 0.479, 0.357],
        [0.252, 0.463, 0.08, 0.204],
    ])


def five_person_triangle():
    """5x3 beliefs over three concepts for the triangle-plot walkthrough.

    With eps_p = 0.3, eps_h = 0.2 the run stabilizes by step 5 with
    persons 0 and 1 isolated and {2, 3, 4} merged into one group.  (The
    published table lists the rows in a different order than the reported
    grouping; rows 0 and 2 are swapped here so labels and behavior agree.)
    """
    return ingest_rounded([
        [0.884, 0.083, 0.033],
        [0.321, 0.609, 0.07],
        [0.348, 0.039, 0.6132],
        [0.082, 0.185, 0.733],
        [0.372, 0.281, 0.347],
    ])


def four_person_triangle():
    """4x3 beliefs over three concepts.

    With eps_p = 0.3: at eps_h = 0.05 the society stabilizes into two
    subgroups ({0, 2, 3} and {1}); at eps_h = 0.5 all four merge.
    """
    return ingest_rounded([
        [0.489, 0.104, 0.407],
        [0.033, 0.712, 0.255],
        [0.543, 0.182, 0.275],
        [0.248, 0.375, 0.3776],
    ])

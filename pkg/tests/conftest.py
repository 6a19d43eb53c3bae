"""Shared test data: admissible parameter samples for every catalog family.

Each family gets >= 3 samples spanning b in {-1/2, 1, 3, 5} where the
family's discriminants allow.  `POLE_SAMPLES` marks (family, sample index)
pairs whose default-grid verification must skip points (a pole line
crosses the grid).
"""
from fractions import Fraction as F

import pytest

CATALOG_SAMPLES = {
    "u1":  [dict(b=3, mu=1), dict(b=1, mu=F(7, 10)), dict(b=5, mu=F(1, 2)), dict(b=F(-1, 2), mu=1)],
    "u2":  [dict(b=3, mu=1), dict(b=1, mu=F(7, 10)), dict(b=5, mu=F(1, 2)), dict(b=F(-1, 2), mu=1)],
    "u3":  [dict(b=3), dict(b=1), dict(b=5), dict(b=F(-1, 2))],
    "u4":  [dict(b=3), dict(b=1), dict(b=F(-1, 2))],
    "u5":  [dict(b=3), dict(b=1), dict(b=5)],
    "u6":  [dict(b=3), dict(b=1), dict(b=5), dict(b=F(-1, 2))],
    "u7":  [dict(b=3, a2=1), dict(b=1, a2=2), dict(b=F(-1, 2), a2=3)],
    "u8":  [dict(b=3, a2=1), dict(b=5, a2=F(1, 2)), dict(b=F(-1, 2), a2=-3)],
    "u9":  [dict(b=3, c2=-1), dict(b=1, c2=2), dict(b=5, c2=F(3, 2))],
    "u10": [dict(b=3, c2=-1), dict(b=1, c2=2), dict(b=F(-1, 2), c2=F(3, 2))],
    "u11": [dict(b=3, alpha=1, beta=2, gamma=1),
            dict(b=1, alpha=F(1, 2), beta=-2, gamma=2),
            dict(b=F(-1, 2), alpha=1, beta=2, gamma=1)],
    "u12": [dict(b=3, beta=1, gamma=-1), dict(b=1, beta=F(7, 10), gamma=2),
            dict(b=5, beta=1, gamma=1)],
    "u13": [dict(b=3, beta=1, gamma=-1), dict(b=1, beta=F(7, 10), gamma=2),
            dict(b=F(-1, 2), beta=1, gamma=1)],
    "u14": [dict(b=3, alpha=F(1, 4), gamma=F(1, 4)),
            dict(b=1, alpha=F(1, 8), gamma=F(1, 2)),
            dict(b=5, alpha=F(-1, 4), gamma=F(-1, 4))],
    "u15": [dict(b=3, alpha=F(1, 4), gamma=F(1, 4)),
            dict(b=1, alpha=F(1, 8), gamma=F(1, 2)),
            dict(b=F(-1, 2), alpha=F(1, 4), gamma=F(1, 4))],
    "u16": [dict(b=3, alpha=F(1, 2), gamma=F(1, 2)),
            dict(b=1, alpha=F(1, 4), gamma=1),
            dict(b=5, alpha=F(-1, 2), gamma=F(-1, 2))],
    "u17": [dict(b=3, alpha=F(1, 2), gamma=F(1, 2)),
            dict(b=1, alpha=F(1, 4), gamma=1),
            dict(b=F(-1, 2), alpha=F(1, 2), gamma=F(1, 2))],
    "u18": [dict(b=3, alpha=F(1, 2), gamma=F(1, 2)),
            dict(b=1, alpha=1, gamma=F(1, 4)),
            dict(b=5, alpha=F(1, 2), gamma=F(1, 2))],
    "u19": [dict(b=3, alpha=F(1, 2), gamma=F(1, 2)),
            dict(b=1, alpha=1, gamma=F(1, 4)),
            dict(b=F(-1, 2), alpha=F(1, 2), gamma=F(1, 2))],
    "u20": [dict(b=3, alpha=0, beta=1, gamma=1),
            dict(b=1, alpha=0, beta=F(1, 2), gamma=1),
            dict(b=F(-1, 2), alpha=-1, beta=1, gamma=1)],
    "u21": [dict(b=3, alpha=0, beta=1, gamma=1),
            dict(b=5, alpha=0, beta=F(1, 2), gamma=1),
            dict(b=F(-1, 2), alpha=-1, beta=1, gamma=1)],
    "u22": [dict(b=3, alpha=2, beta=3, gamma=1),
            dict(b=1, alpha=2, beta=3, gamma=1),
            dict(b=F(-1, 2), alpha=-2, beta=1, gamma=1)],
    "u23": [dict(b=3, alpha=2, beta=3, gamma=1),
            dict(b=5, alpha=2, beta=3, gamma=1),
            dict(b=F(-1, 2), alpha=-2, beta=1, gamma=1)],
    "cole_hopf": [dict(b=3, mu=1, branch=1),
                  dict(b=1, mu=F(7, 10), branch=-1, delta=F(3, 10)),
                  dict(b=F(-1, 2), mu=F(1, 2), branch=1, delta=F(-1, 5))],
}

# (family, sample index) pairs whose grid verification must report skips
POLE_SAMPLES = [
    ("u4", 0), ("u4", 1),
    ("u5", 0), ("u5", 1), ("u5", 2),
    ("u9", 0), ("u10", 0),
    ("u11", 0), ("u11", 1),
    ("u14", 0), ("u14", 1), ("u14", 2),
    ("u15", 0), ("u15", 1),
]

# families whose listed samples are all pole-free (finite-difference
# cross-check targets)
POLE_FREE_SAMPLES = {
    "u1": [0, 1, 2, 3],
    "u2": [0, 1, 2, 3],
    "u3": [0, 1, 2, 3],
    "u6": [0, 1, 2, 3],
    "u7": [0, 1, 2],
    "u9": [1, 2],
    "u10": [1],
    "u12": [0],
    "u13": [0],
    "u20": [0, 1],
    "u21": [0, 1],
    "u22": [0, 1],
    "u23": [0, 1],
    "cole_hopf": [0, 1, 2],
}


@pytest.fixture(scope="session")
def catalog_samples():
    return CATALOG_SAMPLES


@pytest.fixture(scope="session")
def pole_samples():
    return POLE_SAMPLES


@pytest.fixture(scope="session")
def pole_free_samples():
    return POLE_FREE_SAMPLES

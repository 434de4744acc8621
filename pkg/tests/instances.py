"""Random instance generators shared by the property tests and the acceptance run."""

import numpy as np

from zeroschemes import exactla
from zeroschemes.postulation import random_configuration
from zeroschemes.schemes import Configuration, random_scheme
from zeroschemes.surfaces import Hirzebruch, Line, P1xP1, P2

TAGS = ("point", "double", "jet2", "jet3", "curv3", "curv4", "square", "tile", "fat3")


def random_bundle(rng):
    k = int(rng.integers(3))
    if k == 0:
        return P2(int(rng.integers(0, 7)))
    if k == 1:
        return P1xP1(int(rng.integers(0, 5)), int(rng.integers(0, 5)))
    e, a = int(rng.integers(0, 4)), int(rng.integers(0, 4))
    return Hirzebruch(e, a, a * e + int(rng.integers(0, 4)))


def random_template(rng, max_kinds=3):
    out = {}
    for _ in range(int(rng.integers(0, max_kinds + 1))):
        tag = TAGS[int(rng.integers(len(TAGS)))]
        out[tag] = out.get(tag, 0) + int(rng.integers(1, 3))
    return out


def random_chart_line(rng, bundle):
    c = exactla.random_fp(rng)
    if bundle.surface == "P2" and rng.random() < 0.5:
        return Line(exactla.random_fp(rng), 1, c)
    return Line.vertical(c) if rng.random() < 0.5 else Line.horizontal(c)


def config_meeting_line(rng, line, n_on=None):
    """Random union with some schemes supported on ``line``."""
    n_on = int(rng.integers(0, 4)) if n_on is None else n_on
    on = []
    taken = set()
    for _ in range(n_on):
        pt = line.point_at(exactla.random_fp(rng))
        taken.add(pt)
        on.append(random_scheme(TAGS[int(rng.integers(len(TAGS)))], rng, support=pt))
    return Configuration(tuple(on)) + random_configuration(random_template(rng), rng, taken)


def horace_instance(seed):
    rng = np.random.default_rng(seed)
    bundle = random_bundle(rng)
    line = random_chart_line(rng, bundle)
    return bundle, config_meeting_line(rng, line), line

import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from flipred.seqgen import GenSpec, random_instance, random_walk  # noqa: E402
from flipred.triangulation import Setting, make_fan  # noqa: E402

SETTINGS = [Setting.CONVEX, Setting.GEOMETRIC, Setting.COMBINATORIAL]


def small_instance(setting: Setting, seed: int, edges: int = 30):
    return random_instance(GenSpec(setting, edges, 1, 1.0, seed))


def random_valid_sequence(T, length: int, rng: random.Random) -> list[int]:
    """Random flips, each flippable when reached (no neighbour constraint)."""
    S = T.copy()
    labels = S.interior_labels()
    out = []
    tries = 0
    while len(out) < length and tries < 50 * (length + 1):
        tries += 1
        lab = labels[rng.randrange(len(labels))]
        if S.flippable(lab):
            S.flip_inplace(lab)
            out.append(lab)
    return out


@pytest.fixture
def T5():
    return make_fan(5, 0)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

from fractions import Fraction

import pytest

from seqseed.graphs import Graph, load_edge_list


class ScriptExhausted(Exception):
    pass


class ScriptRng:
    """Replays a fixed success/failure script as uniform draws.

    True -> 0.0 (always below pp for pp > 0), False -> 1.0 (never below pp).
    Raises ScriptExhausted when the process asks for more draws than scripted.
    """

    def __init__(self, script):
        self.script = list(script)
        self.pos = 0

    def random(self):
        if self.pos >= len(self.script):
            raise ScriptExhausted()
        v = self.script[self.pos]
        self.pos += 1
        return 0.0 if v else 1.0


def exact_process_expectation(run, pp):
    """Exact expected coverage of a stochastic process by branching on every
    Bernoulli draw it makes. `run(rng)` must return the final coverage and
    consume one rng.random() per attempt. pp should be a Fraction.
    """
    pp = Fraction(pp)

    def rec(script):
        try:
            return Fraction(run(ScriptRng(script)))
        except ScriptExhausted:
            return (pp * rec(script + [True])
                    + (1 - pp) * rec(script + [False]))

    return rec([])


class ValueRng:
    """Hands out a fixed sequence of uniforms, then fails loudly."""

    def __init__(self, values):
        self.values = list(values)

    def random(self):
        return self.values.pop(0)


@pytest.fixture
def path3():
    return load_edge_list("0 1\n1 2")


@pytest.fixture
def star5():
    # center 0 with 4 leaves
    return load_edge_list("0 1\n0 2\n0 3\n0 4")

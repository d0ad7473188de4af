import numpy as np
import pytest


class FakeStream:
    """Scripted stand-in for a RandomStream.

    Pops pre-queued values; raises IndexError when a draw happens that the
    test did not script, which doubles as an assertion that a code path
    consumes no randomness.
    """

    def __init__(self, binomials=(), integers=(), randoms=()):
        self.binomials = list(binomials)
        self.ints = list(integers)
        self.randoms = list(randoms)

    def binomial(self, n, p):
        return self.binomials.pop(0)

    def integers(self, low, high=None, **kwargs):
        return self.ints.pop(0)

    def random(self):
        return self.randoms.pop(0)

    def exhausted(self):
        return not (self.binomials or self.ints or self.randoms)


@pytest.fixture
def fake_stream():
    return FakeStream

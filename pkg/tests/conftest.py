from fractions import Fraction

import pytest
from hypothesis import settings

from zfeedback.core import CodeParams
from zfeedback.decoder import Decoder

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


class OffByOneDecoder(Decoder):
    """Deliberately broken receiver: shifts every nonzero final index down."""

    def final_index(self) -> int:
        j = super().final_index()
        return j - 1 if j else j


@pytest.fixture
def mutant_decoder():
    return OffByOneDecoder


@pytest.fixture
def toy_params():
    # smallest worked instance: delta=2, p=1, eps=1/4, k=2, t=1
    return CodeParams.build(2, 1, Fraction(1, 4), 2, 1)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])

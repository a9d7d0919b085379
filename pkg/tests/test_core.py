from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zfeedback.core import (CodeParams, ConfigError, Phase, Record, SessionState,
                            Transcript, dispatch)


def test_dispatch_order():
    assert dispatch(100, 10, 0) is Phase.UNCODED  # t == 0 wins even if M is small
    assert dispatch(3, 10, 0) is Phase.UNCODED
    assert dispatch(8, 10, 3) is Phase.WEIGHT
    assert dispatch(9, 10, 3) is Phase.PARTITIONING


def test_build_toy(toy_params):
    p = toy_params
    assert (p.A, p.n, p.M) == (8, 12, 8)
    assert p.addresses == 2
    assert p.gammas == [Fraction(3, 2), 1]
    assert "M=8" in p.describe()


@pytest.mark.parametrize("kw", [
    dict(A=9),            # A != ceil(C/eps)
    dict(n=13),           # n != A + delta k
    dict(M=9),            # above the guarantee
    dict(t=5),            # delta k < t
])
def test_validation_rejects(kw, toy_params):
    base = dict(delta=2, p=1, eps=Fraction(1, 4), A=8, k=2, n=12, t=1, M=8)
    base.update(kw)
    with pytest.raises(ConfigError):
        CodeParams(**base)


def test_eps_too_large():
    # 1 - p/delta = 1/4; gamma_{p-1} <= 1 from eps = 1/4 on
    with pytest.raises(ConfigError):
        CodeParams.build(4, 3, Fraction(1, 4), 4, 1)


def test_shape_checks_survive_validate_false():
    with pytest.raises(ConfigError):
        CodeParams(2, 2, Fraction(1, 4), 8, 2, 12, 1, 8, validate=False)
    with pytest.raises(ConfigError):
        CodeParams(2, 1, Fraction(1, 4), 8, 2, 12, 1, 0, validate=False)


def test_weight_only():
    p = CodeParams.weight_only(5, 2)
    assert (p.n, p.t, p.M, p.k) == (5, 2, 4, 0)
    with pytest.raises(ConfigError):
        CodeParams.weight_only(3, 3)


def test_session_state_check():
    SessionState(4, 5, 2, Phase.WEIGHT, idx=3).check()
    with pytest.raises(AssertionError):
        SessionState(4, 5, 2, Phase.WEIGHT, idx=4).check()


def test_transcript_rejects_zero_to_one():
    tr = Transcript()
    with pytest.raises(ValueError):
        tr.append(Record(0, 0, 1, Phase.WEIGHT))


def test_transcript_budget():
    tr = Transcript(budget=1)
    tr.append(Record(0, 1, 0, Phase.WEIGHT))
    with pytest.raises(ValueError):
        tr.append(Record(1, 1, 0, Phase.WEIGHT))
    assert tr.flips == 1 and len(tr) == 1


records = st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1), st.sampled_from(list(Phase))),
                   max_size=30)


@given(records)
def test_transcript_text_round_trip(rows):
    recs = [Record(i, s, min(r, s), ph) for i, (s, r, ph) in enumerate(rows)]
    tr = Transcript.from_records(recs)
    back = Transcript.loads(tr.dumps())
    assert back.records == tr.records
    assert back.flips == sum(r.flipped for r in recs)
    assert all(r.sent == 1 for r in back if r.flipped)

import pytest

from nilideal.engine import derive
from nilideal.presentation import standard_presentation
from nilideal.trace import (
    DerivationStep,
    DerivationTrace,
    TraceFormatError,
    dumps_trace,
    load_trace,
    loads_trace,
    replay,
    save_trace,
)
from nilideal.words import ZERO, w

P = standard_presentation()


def test_round_trip(tmp_path):
    trace = derive(P, w("L a1 a1"), ZERO)
    path = tmp_path / "t.trace"
    save_trace(trace, path)
    again = load_trace(path)
    assert again.start == trace.start and again.end == ZERO
    assert again.steps == trace.steps
    assert replay(P, again)


def test_format_lines():
    text = dumps_trace(derive(P, w("L"), w("M P g")))
    assert text == "start: L\nend: M P g\nstep 1: rel 2.28 forward @ 0\n"


def test_index_may_be_omitted():
    text = "start: L a1\nend: M P a1 g\nstep 1: rel 2 forward @ 0\nstep 2: rel 3 forward @ 2\n"
    trace = loads_trace(text, P)
    assert [s.rule_index for s in trace.steps] == [28, 29]
    assert replay(P, trace)


def test_off_by_one_position_rejected():
    trace = derive(P, w("L a1 a2"), w("M P a1 R s1 Q a2"))
    bad = DerivationTrace(trace.start, list(trace.steps), trace.end)
    s = bad.steps[-1]
    bad.steps[-1] = DerivationStep(s.rule_paper_id, s.rule_index, s.position + 1, s.direction)
    result = replay(P, bad)
    assert not result
    assert result.failed_at == len(bad.steps) - 1


def test_empty_trace():
    assert replay(P, DerivationTrace(w("L"), [], w("L")))
    result = replay(P, DerivationTrace(w("L"), [], w("M P g")))
    assert not result and result.failed_at == 0


def test_backward_annihilation_rejected():
    idx = next(i for i, r in P.annihilation_rules if r.paper_id == 12)
    trace = DerivationTrace(w("P R s1"), [DerivationStep(12, idx, 0, "backward")], ZERO)
    assert not replay(P, trace)
    trace = DerivationTrace(w("P R s1"), [DerivationStep(12, idx, 0, "forward")], ZERO)
    assert replay(P, trace)


def test_wrong_family_tag_rejected():
    trace = derive(P, w("L"), w("M P g"))
    step = trace.steps[0]
    trace.steps[0] = DerivationStep(3, step.rule_index, step.position, step.direction)
    assert not replay(P, trace)


@pytest.mark.parametrize(
    "text",
    [
        "end: 0\nstart: L\n",
        "start: L\nend: M P g\nstep 2: rel 2.28 forward @ 0\n",
        "start: L\nend: M P g\nstep 1: rel 2.28 sideways @ 0\n",
        "start: L q\nend: 0\n",
    ],
)
def test_malformed(text):
    with pytest.raises(TraceFormatError):
        loads_trace(text)

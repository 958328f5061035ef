"""Derivation traces: recorded chains of rule applications, their file format
and a standalone checker.

``replay`` deliberately works on plain letter tuples and never touches the
search code in ``engine``, so a trace is certified independently of the
procedure that produced it.

Trace file::

    start: L a1 a1
    end: 0
    step 1: rel 2.28 forward @ 0
    step 2: rel 3.29 forward @ 2
    ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .presentation import AUX, Presentation
from .words import Word, WordParseError, format_word, parse_word

FORWARD = "forward"
BACKWARD = "backward"


class TraceFormatError(ValueError):
    pass


@dataclass(frozen=True)
class DerivationStep:
    rule_paper_id: object
    rule_index: int
    position: int
    direction: str = FORWARD


@dataclass
class DerivationTrace:
    start: Word
    steps: list[DerivationStep] = field(default_factory=list)
    end: Word | None = None

    def __len__(self) -> int:
        return len(self.steps)


@dataclass
class ReplayResult:
    ok: bool
    failed_at: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def apply_step(p: Presentation, word: Word, step: DerivationStep) -> Word:
    """Apply one recorded step; raise ``ValueError`` if it does not match."""
    if word.zero:
        raise ValueError("cannot rewrite zero")
    if not 0 <= step.rule_index < len(p.rules):
        raise ValueError(f"no rule with index {step.rule_index}")
    rule = p.rules[step.rule_index]
    if step.rule_paper_id is not None and str(step.rule_paper_id) != rule.tag:
        raise ValueError(f"rule {step.rule_index} is rel {rule.tag}, not rel {step.rule_paper_id}")
    if step.direction == FORWARD:
        src, dst = rule.lhs, rule.rhs
    elif step.direction == BACKWARD:
        if rule.is_annihilation:
            raise ValueError("annihilation rules cannot be applied backward")
        src, dst = rule.rhs, rule.lhs
    else:
        raise ValueError(f"bad direction {step.direction!r}")
    xs, pos, k = word.letters, step.position, len(src.letters)
    if pos < 0 or xs[pos:pos + k] != src.letters:
        raise ValueError(f"{format_word(src)} does not occur at position {pos}")
    if dst.zero:
        return dst
    return Word(xs[:pos] + dst.letters + xs[pos + k:])


def replay(p: Presentation, trace: DerivationTrace) -> ReplayResult:
    current = trace.start
    for k, step in enumerate(trace.steps):
        if current.zero:
            return ReplayResult(False, k, "step after reaching zero")
        try:
            current = apply_step(p, current, step)
        except ValueError as exc:
            return ReplayResult(False, k, str(exc))
    if current != trace.end:
        return ReplayResult(
            False, len(trace.steps),
            f"replay ends at {format_word(current)}, trace claims {format_word(trace.end)}",
        )
    return ReplayResult(True)


# -- file format --------------------------------------------------------------

_STEP = re.compile(
    r"^step\s+(\d+):\s+rel\s+([0-9]+|aux|\?)(?:\.(\d+))?\s+(forward|backward)\s+@\s+(\d+)$"
)


def dumps_trace(trace: DerivationTrace) -> str:
    lines = [f"start: {format_word(trace.start)}", f"end: {format_word(trace.end)}"]
    for k, s in enumerate(trace.steps, start=1):
        pid = "?" if s.rule_paper_id is None else s.rule_paper_id
        lines.append(f"step {k}: rel {pid}.{s.rule_index} {s.direction} @ {s.position}")
    return "\n".join(lines) + "\n"


def loads_trace(text: str, p: Presentation | None = None) -> DerivationTrace:
    """Parse a trace file.

    A step may omit the ``.<index>`` suffix; the rule is then resolved
    against ``p`` while replaying the steps, and must be the only rule of
    that family matching at the given position.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("start:") or not lines[1].startswith("end:"):
        raise TraceFormatError("trace must begin with 'start:' and 'end:' lines")
    try:
        start = parse_word(lines[0][len("start:"):])
        end = parse_word(lines[1][len("end:"):])
    except WordParseError as exc:
        raise TraceFormatError(str(exc)) from None
    trace = DerivationTrace(start, [], end)
    current = start
    for lineno, line in enumerate(lines[2:], start=3):
        m = _STEP.match(line)
        if not m:
            raise TraceFormatError(f"line {lineno}: malformed step {line!r}")
        k, pid_text, index, direction, pos = m.groups()
        if int(k) != len(trace.steps) + 1:
            raise TraceFormatError(f"line {lineno}: expected step {len(trace.steps) + 1}")
        pid: object = None if pid_text == "?" else (AUX if pid_text == "aux" else int(pid_text))
        if index is None:
            if p is None:
                raise TraceFormatError(f"line {lineno}: rule index omitted and no presentation given")
            index = _resolve(p, current, pid, direction, int(pos), lineno)
        step = DerivationStep(pid, int(index), int(pos), direction)
        trace.steps.append(step)
        if p is not None and not current.zero:
            try:
                current = apply_step(p, current, step)
            except ValueError:
                pass  # replay reports it
    return trace


def _resolve(p, word, pid, direction, pos, lineno) -> int:
    hits = []
    for i, rule in enumerate(p.rules):
        if rule.tag != ("?" if pid is None else str(pid)):
            continue
        try:
            apply_step(p, word, DerivationStep(pid, i, pos, direction))
        except ValueError:
            continue
        hits.append(i)
    if len(hits) != 1:
        raise TraceFormatError(f"line {lineno}: {len(hits)} rules of rel {pid} match at {pos}")
    return hits[0]


def save_trace(trace: DerivationTrace, path) -> None:
    Path(path).write_text(dumps_trace(trace), encoding="utf-8")


def load_trace(path, p: Presentation | None = None) -> DerivationTrace:
    return loads_trace(Path(path).read_text(encoding="utf-8"), p)

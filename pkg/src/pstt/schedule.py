"""Schedule emission, completeness validation, and JSON serialization.

Relative-time convention: the result of a qubit-typed judgement finishes at
time 0; context grades are the (usually negative) start times, and box
grades in the result type move that channel's end time.  A schedule is
complete when every channel's samples tile exactly the interval its
judgement dictates: no gaps, no overlaps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .chip import ChipSpec
from .syntax import Judgement
from .typecheck import check


class MissingCalibration(Exception):
    def __init__(self, gate: str):
        super().__init__(f"gate {gate!r} has no calibration")
        self.gate = gate


@dataclass(frozen=True)
class Channel:
    qubit: str
    start: int
    end: int
    samples: tuple[int, ...]


@dataclass(frozen=True)
class Schedule:
    channels: tuple[Channel, ...]  # sorted by qubit
    provenance: tuple[tuple[str, str, int, int], ...] = ()  # (gate, qubit, start, end)

    def channel(self, qubit: str) -> Channel | None:
        for ch in self.channels:
            if ch.qubit == qubit:
                return ch
        return None


@dataclass(frozen=True)
class ChannelReport:
    qubit: str
    expected_start: int | None
    expected_end: int | None
    gaps: tuple[tuple[int, int], ...]
    overlaps: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.gaps and not self.overlaps


@dataclass(frozen=True)
class ValidationReport:
    channels: tuple[ChannelReport, ...]

    @property
    def passed(self) -> bool:
        return all(ch.ok for ch in self.channels)

    def summary(self) -> str:
        bad = [ch for ch in self.channels if not ch.ok]
        if not bad:
            return f"complete ({len(self.channels)} channel(s))"
        parts = []
        for ch in bad:
            if ch.gaps:
                parts.append(f"{ch.qubit}: gaps {list(ch.gaps)}")
            if ch.overlaps:
                parts.append(f"{ch.qubit}: overlaps {list(ch.overlaps)}")
        return "; ".join(parts)


def emit(j: Judgement, chip: ChipSpec) -> Schedule:
    """Interpret a checked judgement in the calibrated pulse model."""
    from .semantics import PulseModel, interpret

    evidence = check(j, chip)
    model = PulseModel(chip)
    mor = interpret(j, evidence, model)
    channels = []
    for grade, qubit in sorted(mor.src.entries, key=lambda e: e[1]):
        channels.append(
            Channel(
                qubit=qubit,
                start=grade,
                end=mor.tgt.grade_of(qubit),
                samples=mor.signal(qubit),
            )
        )
    provenance = tuple(
        (p.gate, p.qubit, p.start, p.end)
        for p in sorted(mor.provenance, key=lambda p: (p.qubit, p.start, p.gate))
    )
    return Schedule(tuple(channels), provenance)


def _expected_spans(j: Judgement) -> dict[str, tuple[int, int]]:
    """Per-qubit (start, end) the judgement dictates for its channels."""
    from .semantics import ModelError, type_pulse_object

    starts: dict[str, int] = {}
    for entry in j.ctx:
        obj = type_pulse_object(entry.type)
        for g, q in obj.entries:
            if q in starts:
                raise ModelError(f"qubit collision in context: {q}")
            starts[q] = g + entry.grade
    ends = {q: g for g, q in type_pulse_object(j.type).entries}
    spans: dict[str, tuple[int, int]] = {}
    for q in sorted(set(starts) | set(ends)):
        start = starts.get(q, ends.get(q, 0))
        end = ends.get(q, starts.get(q, 0))
        spans[q] = (start, end)
    return spans


def _interval_minus(a: tuple[int, int], b: tuple[int, int]) -> list[tuple[int, int]]:
    """Positions of half-open interval ``a`` not in ``b``."""
    out = []
    lo, hi = a
    if lo >= hi:
        return out
    if b[0] > lo:
        out.append((lo, min(hi, b[0])))
    if b[1] < hi:
        out.append((max(lo, b[1]), hi))
    return [(x, y) for x, y in out if x < y]


def validate(s: Schedule, j: Judgement) -> ValidationReport:
    """Check that the schedule tiles exactly the intervals ``j`` dictates.

    A channel certainly covers ``[start, start + min(len(samples), end -
    start-claim))`` and at most ``[start, max(...))``; nanoseconds the
    judgement demands but the channel cannot certainly supply are gaps,
    nanoseconds the channel may write outside its demanded interval are
    overlaps.
    """
    spans = _expected_spans(j)
    reports: list[ChannelReport] = []
    seen: set[str] = set()

    for qubit, (start, end) in spans.items():
        seen.add(qubit)
        ch = s.channel(qubit)
        if ch is None:
            gaps = [(start, end)] if end > start else []
            reports.append(ChannelReport(qubit, start, end, tuple(gaps), ()))
            continue
        sample_end = ch.start + len(ch.samples)
        certain = (ch.start, min(sample_end, ch.end))
        claimed = (ch.start, max(sample_end, ch.end))
        gaps = _interval_minus((start, end), certain)
        overlaps = _interval_minus(claimed, (start, end))
        reports.append(ChannelReport(qubit, start, end, tuple(gaps), tuple(overlaps)))

    for ch in s.channels:
        if ch.qubit not in seen and (ch.samples or ch.end > ch.start):
            hi = max(ch.end, ch.start + len(ch.samples))
            reports.append(ChannelReport(ch.qubit, None, None, (), ((ch.start, hi),)))
    return ValidationReport(tuple(reports))


# --------------------------------------------------------------- JSON I/O


def to_json(s: Schedule) -> str:
    doc = {
        "channels": {
            ch.qubit: {
                "start_ns": ch.start,
                "end_ns": ch.end,
                "samples": list(ch.samples),
            }
            for ch in s.channels
        },
        "provenance": [
            {"gate": gate, "qubit": qubit, "start_ns": start, "end_ns": end}
            for gate, qubit, start, end in s.provenance
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def from_json(text: str) -> Schedule:
    doc = json.loads(text)
    channels = tuple(
        Channel(
            qubit=q,
            start=rec["start_ns"],
            end=rec["end_ns"],
            samples=tuple(rec["samples"]),
        )
        for q, rec in sorted(doc.get("channels", {}).items())
    )
    provenance = tuple(
        (rec["gate"], rec["qubit"], rec["start_ns"], rec["end_ns"])
        for rec in doc.get("provenance", [])
    )
    return Schedule(channels, provenance)

"""Line-oriented trace format.

A trace starts with an ``N <n>`` header, followed by one event per line::

    I u v      insert edge
    D u v      delete edge
    QLP u v    long path query
    QLD u v    long detour query
    QEP u v    even path query
    QOP u v    odd path query

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import ParseError


class EventKind(enum.Enum):
    INSERT = "I"
    DELETE = "D"
    LONG_PATH = "QLP"
    LONG_DETOUR = "QLD"
    EVEN_PATH = "QEP"
    ODD_PATH = "QOP"

    @property
    def is_query(self) -> bool:
        return self not in (EventKind.INSERT, EventKind.DELETE)


@dataclass(frozen=True)
class TraceEvent:
    kind: EventKind
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"event endpoints coincide: {self}")

    def __str__(self) -> str:
        return f"{self.kind.value} {self.u} {self.v}"


@dataclass
class Trace:
    n: int
    events: list[TraceEvent]

    def dumps(self) -> str:
        lines = [f"N {self.n}"]
        lines.extend(str(e) for e in self.events)
        return "\n".join(lines) + "\n"

    def prefix(self, length: int) -> Trace:
        return Trace(self.n, self.events[:length])


_KINDS = {k.value: k for k in EventKind}


def parse_trace(lines: Iterable[str]) -> Trace:
    n = None
    events = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "N" or len(parts) != 2:
                raise ParseError("expected 'N <n>' header", lineno)
            n = _parse_int(parts[1], lineno)
            if n < 0:
                raise ParseError("negative vertex count", lineno)
            continue
        if len(parts) != 3 or parts[0] not in _KINDS:
            raise ParseError(f"malformed event {line!r}", lineno)
        u = _parse_int(parts[1], lineno)
        v = _parse_int(parts[2], lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range in {line!r}", lineno)
        if u == v:
            raise ParseError(f"equal endpoints in {line!r}", lineno)
        events.append(TraceEvent(_KINDS[parts[0]], u, v))
    if n is None:
        raise ParseError("missing 'N <n>' header")
    return Trace(n, events)


def loads(text: str) -> Trace:
    return parse_trace(text.splitlines())


def _parse_int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", lineno) from None

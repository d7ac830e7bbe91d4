"""Three-valued verdicts returned by every equivalence checker."""

from __future__ import annotations

from dataclasses import dataclass, field

YES, NO, UNKNOWN = "yes", "no", "unknown"

EXIT_CODES = {YES: 0, NO: 1, UNKNOWN: 2}


@dataclass(frozen=True)
class Verdict:
    kind: str
    reason: str = ""
    certificate: object = None
    stats: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in EXIT_CODES:
            raise ValueError(f"bad verdict kind {self.kind!r}")

    @property
    def certain(self) -> bool:
        return self.kind != UNKNOWN

    @property
    def is_yes(self) -> bool:
        return self.kind == YES

    @property
    def is_no(self) -> bool:
        return self.kind == NO

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.kind]

    def __str__(self) -> str:
        return f"{self.kind}: {self.reason}" if self.reason else self.kind


def yes(reason: str = "", certificate=None, **stats) -> Verdict:
    return Verdict(YES, reason, certificate, stats)


def no(reason: str = "", certificate=None, **stats) -> Verdict:
    return Verdict(NO, reason, certificate, stats)


def unknown(reason: str, **stats) -> Verdict:
    return Verdict(UNKNOWN, reason, None, stats)

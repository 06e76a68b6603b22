"""Calendar dates of mixed precision (year, year-month, or full date).

Source data carries dates at whatever precision it has, so every date is
treated as the interval it covers: ``1895`` spans 1895-01-01 through
1895-12-31. Ordering checks use the earliest instant for start-like fields
and the latest instant for end-like fields, which keeps year-precision data
from producing false ordering violations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_DATE_RE = re.compile(r"^(-?\d{1,6})(?:-(\d{2}))?(?:-(\d{2}))?$")

_DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def _is_leap(year: int) -> bool:
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def days_in_month(year: int, month: int) -> int:
    if month == 2 and _is_leap(year):
        return 29
    return _DAYS_IN_MONTH[month - 1]


def _days_from_civil(year: int, month: int, day: int) -> int:
    """Days since 1970-01-01 in the proleptic Gregorian calendar.

    Works for arbitrarily negative years (floor division keeps the era
    arithmetic exact for BCE dates).
    """
    y = year - 1 if month <= 2 else year
    era = y // 400
    yoe = y - era * 400
    mp = (month - 3) % 12
    doy = (153 * mp + 2) // 5 + day - 1
    doe = yoe * 365 + yoe // 4 - yoe // 100 + doy
    return era * 146097 + doe - 719468


@dataclass(frozen=True)
class PartialDate:
    """A date known to year, month, or day precision."""

    year: int
    month: int | None = None
    day: int | None = None

    def __post_init__(self):
        if self.day is not None and self.month is None:
            raise ValueError("a day requires a month")
        if self.month is not None and not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")
        if self.day is not None and not 1 <= self.day <= days_in_month(self.year, self.month):
            raise ValueError(f"day out of range: {self.year}-{self.month:02d}-{self.day}")

    @classmethod
    def parse(cls, text: str) -> PartialDate:
        """Parse ``YYYY``, ``YYYY-MM``, or ``YYYY-MM-DD``; a leading ``-`` marks BCE."""
        m = _DATE_RE.match(text.strip())
        if m is None:
            raise ValueError(f"not a date: {text!r}")
        year = int(m.group(1))
        month = int(m.group(2)) if m.group(2) else None
        day = int(m.group(3)) if m.group(3) else None
        return cls(year, month, day)

    def isoformat(self) -> str:
        sign = "-" if self.year < 0 else ""
        out = f"{sign}{abs(self.year):04d}"
        if self.month is not None:
            out += f"-{self.month:02d}"
        if self.day is not None:
            out += f"-{self.day:02d}"
        return out

    def earliest(self) -> tuple[int, int, int]:
        """The first (year, month, day) instant this date can denote."""
        return (self.year, self.month or 1, self.day or 1)

    def latest(self) -> tuple[int, int, int]:
        """The last (year, month, day) instant this date can denote."""
        month = self.month or 12
        return (self.year, month, self.day or days_in_month(self.year, month))

    def earliest_ordinal(self) -> int:
        return _days_from_civil(*self.earliest())

    def latest_ordinal(self) -> int:
        return _days_from_civil(*self.latest())

    def __str__(self) -> str:
        return self.isoformat()


def intervals_ordered(start: PartialDate | None, end: PartialDate | None) -> bool:
    """True unless the two dates are strictly reversed as intervals.

    ``start`` is compared at its earliest instant, ``end`` at its latest, so
    ``1895`` precedes ``1895-04`` even though the intervals overlap.
    """
    if start is None or end is None:
        return True
    return start.earliest() <= end.latest()


def strictly_before(end: PartialDate, start: PartialDate) -> bool:
    """True iff ``end`` is over before ``start`` can have begun.

    Uses latest(end) < earliest(start): two year-precision dates in the same
    year are never strictly ordered.
    """
    return end.latest() < start.earliest()


def span_days(start: PartialDate, end: PartialDate) -> int:
    """Days from the earliest instant of ``start`` to the latest of ``end``."""
    return end.latest_ordinal() - start.earliest_ordinal()

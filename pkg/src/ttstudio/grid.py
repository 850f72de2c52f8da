"""Teaching-week time grid with day-major slot indexing."""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_DAY_NAMES = ("Saturday", "Sunday", "Monday", "Tuesday", "Wednesday", "Thursday")


class OutOfRangeError(ValueError):
    """Slot index outside the grid."""


@dataclass(frozen=True)
class TimeGrid:
    """A week of `days_per_week` days, each split into `slots_per_day` slots.

    Slots are numbered day-major: slot s falls on day s // slots_per_day,
    at position s % slots_per_day within that day.
    """

    days_per_week: int = 6
    slots_per_day: int = 5
    day_names: tuple[str, ...] = DEFAULT_DAY_NAMES

    def __post_init__(self) -> None:
        if self.days_per_week < 1 or self.slots_per_day < 1:
            raise ValueError("grid dimensions must be positive")
        if len(self.day_names) != self.days_per_week:
            raise ValueError(
                f"need {self.days_per_week} day names, got {len(self.day_names)}"
            )

    @classmethod
    def of(cls, days: int, slots: int, day_names: tuple[str, ...] | None = None) -> "TimeGrid":
        """Build a grid, defaulting day names to Saturday-first (or Day<n> past six)."""
        if day_names is None:
            day_names = tuple(
                DEFAULT_DAY_NAMES[i] if i < len(DEFAULT_DAY_NAMES) else f"Day{i + 1}"
                for i in range(days)
            )
        return cls(days, slots, tuple(day_names))

    @property
    def total_slots(self) -> int:
        return self.days_per_week * self.slots_per_day

    def check_slot(self, slot: int) -> None:
        if not 0 <= slot < self.total_slots:
            raise OutOfRangeError(f"slot {slot} outside [0, {self.total_slots})")

    def day_of(self, slot: int) -> int:
        self.check_slot(slot)
        return slot // self.slots_per_day

    def slot_in_day(self, slot: int) -> int:
        self.check_slot(slot)
        return slot % self.slots_per_day

    def day_slots(self, day: int) -> range:
        """All slot indices of one day, first to last."""
        if not 0 <= day < self.days_per_week:
            raise OutOfRangeError(f"day {day} outside [0, {self.days_per_week})")
        start = day * self.slots_per_day
        return range(start, start + self.slots_per_day)


def decode_slot(grid: TimeGrid, slot: int) -> tuple[str, int]:
    """Map a slot index to (day name, 1-based ordinal within the day)."""
    grid.check_slot(slot)
    return grid.day_names[slot // grid.slots_per_day], slot % grid.slots_per_day + 1

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ConstructionReport:
    construction: str
    input_states: int
    output_states: int
    output_transitions: int
    notes: tuple[str, ...] = field(default_factory=tuple)

    def lines(self) -> list[str]:
        out = [
            f"construction: {self.construction}",
            f"states: {self.input_states} -> {self.output_states}",
            f"transitions: {self.output_transitions}",
        ]
        out.extend(f"note: {note}" for note in self.notes)
        return out

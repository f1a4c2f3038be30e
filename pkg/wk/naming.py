from __future__ import annotations

from typing import Collection, Iterable


def fresh_name(candidate: str, taken: Collection[str]) -> str:
    """Return `candidate`, or the first `candidate'`, `candidate''`, ... not in `taken`."""
    name = candidate
    while name in taken:
        name += "'"
    return name


def pair_name(left: str, right: str) -> str:
    return f"({left},{right})"


def chain_name(base: str, index: int) -> str:
    return f"{base}#{index}"


class NameAllocator:
    """Hands out collision-free state names against a growing taken-set."""

    def __init__(self, taken: Iterable[str] = ()) -> None:
        self._taken: set[str] = set(taken)

    def claim(self, candidate: str) -> str:
        name = fresh_name(candidate, self._taken)
        self._taken.add(name)
        return name

    def __contains__(self, name: object) -> bool:
        return name in self._taken

from __future__ import annotations

import itertools
from dataclasses import dataclass

from core.errors import UnsupportedRestrictionClass
from oracle.enumeration import length_lex_key
from restriction.language import FiniteLanguage, kind_name
from restriction.restricted import RestrictedWKAutomaton, restricted_accepts
from wk.automaton import Word


@dataclass(frozen=True)
class FinitenessReport:
    max_accepted_len: int  # 0 when nothing is accepted
    accepted: tuple[Word, ...]
    lengths: frozenset[int]


def finiteness_check(machine: RestrictedWKAutomaton) -> FinitenessReport:
    """
    Complete accepted language of a machine restricted to a finite L. Only
    upper words that some v in L complements can be accepted, so those are
    the only candidates run.
    """
    restriction = machine.restriction
    if not isinstance(restriction, FiniteLanguage):
        raise UnsupportedRestrictionClass(f"finiteness check needs a finite restriction, got {kind_name(restriction)}")

    rho = machine.rho
    uppers_of = {}
    for upper, lower in rho.pairs:
        if upper in machine.alphabet:
            uppers_of.setdefault(lower, []).append(upper)

    candidates = set()
    for lower in restriction.words:
        candidates.update(itertools.product(*(sorted(uppers_of.get(s, ())) for s in lower)))
    accepted = sorted((w for w in candidates if restricted_accepts(machine, w)), key=length_lex_key(machine.alphabet))
    return FinitenessReport(
        max_accepted_len=max((len(w) for w in accepted), default=0),
        accepted=tuple(accepted),
        lengths=restriction.lengths,
    )

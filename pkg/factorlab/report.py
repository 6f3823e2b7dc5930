from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = 'pass'
FAIL = 'fail'
UNKNOWN = 'unknown'


@dataclass
class Report:
    """Outcome of one property check over a corpus.

    ``peaks`` counts checked instances (swap peaks, sequences, substitution triples, ...);
    each instance ends up ``closed``, ``failed`` or ``unknown``. Witness and failure lists are capped
    at ``max_witnesses`` while counters are not. A report with fewer than ``min_peaks`` instances checked
    nothing and is ``unknown``.
    """
    check: str
    calculus: str = ''
    corpus: str = ''
    peaks: int = 0
    closed: int = 0
    failed: int = 0
    unknown: int = 0
    tolerance: float = 0.0
    max_witnesses: int = 10
    min_peaks: int = 0
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    failures: List[Dict[str, Any]] = field(default_factory=list)
    unknowns: List[Dict[str, Any]] = field(default_factory=list)
    states: int = 0
    seconds: float = 0.0

    def add_closed(self, witness: Optional[Dict[str, Any]] = None):
        self.peaks += 1
        self.closed += 1
        if witness is not None and len(self.witnesses) < self.max_witnesses:
            self.witnesses.append(witness)

    def add_failure(self, failure: Dict[str, Any]):
        self.peaks += 1
        self.failed += 1
        if len(self.failures) < self.max_witnesses:
            self.failures.append(failure)

    def add_unknown(self, item: Dict[str, Any]):
        self.peaks += 1
        self.unknown += 1
        if len(self.unknowns) < self.max_witnesses:
            self.unknowns.append(item)

    def merge(self, other: 'Report') -> 'Report':
        """Combine two reports of the same check; counters add, capped lists concatenate."""
        cap = max(self.max_witnesses, other.max_witnesses)
        return Report(
            check=self.check,
            calculus=self.calculus or other.calculus,
            corpus=self.corpus or other.corpus,
            peaks=self.peaks + other.peaks,
            closed=self.closed + other.closed,
            failed=self.failed + other.failed,
            unknown=self.unknown + other.unknown,
            tolerance=max(self.tolerance, other.tolerance),
            max_witnesses=cap,
            min_peaks=max(self.min_peaks, other.min_peaks),
            witnesses=(self.witnesses + other.witnesses)[:cap],
            failures=(self.failures + other.failures)[:cap],
            unknowns=(self.unknowns + other.unknowns)[:cap],
            states=self.states + other.states,
            seconds=self.seconds + other.seconds,
        )

    @property
    def ok(self) -> bool:
        return self.outcome == PASS

    @property
    def vacuous(self) -> bool:
        return self.peaks < self.min_peaks

    @property
    def outcome(self) -> str:
        if self.failed:
            return FAIL
        if self.vacuous:
            return UNKNOWN
        if self.unknown > self.tolerance * self.peaks:
            return UNKNOWN
        return PASS

    def summary(self) -> str:
        return (f'{self.outcome:7s} peaks={self.peaks} closed={self.closed} failed={self.failed} '
                f'unknown={self.unknown}')

    def to_dict(self) -> Dict[str, Any]:
        return dict(
            check=self.check,
            calculus=self.calculus,
            corpus=self.corpus,
            outcome=self.outcome,
            peaks=self.peaks,
            closed=self.closed,
            failed=self.failed,
            unknown=self.unknown,
            tolerance=self.tolerance,
            vacuous=self.vacuous,
            witnesses=self.witnesses,
            failures=self.failures,
            unknowns=self.unknowns,
        )

    def telemetry(self) -> Dict[str, Any]:
        return dict(states=self.states, seconds=round(self.seconds, 3))


@dataclass
class SuiteReport:
    """Several named parts of one check, with an overall conclusion."""
    check: str
    calculus: str
    parts: Dict[str, Report] = field(default_factory=dict)
    conclusion: str = ''

    @property
    def outcome(self) -> str:
        outcomes = [p.outcome for p in self.parts.values()]
        if FAIL in outcomes:
            return FAIL
        if UNKNOWN in outcomes:
            return UNKNOWN
        return PASS

    def to_dict(self) -> Dict[str, Any]:
        return dict(
            check=self.check,
            calculus=self.calculus,
            outcome=self.outcome,
            conclusion=self.conclusion,
            parts={k: v.to_dict() for k, v in self.parts.items()},
        )

    def telemetry(self) -> Dict[str, Any]:
        return {k: v.telemetry() for k, v in self.parts.items()}

import logging
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional

from factorlab.config import build_module, get_function
from factorlab.engine import Calculus
from factorlab.gen.corpus import CorpusSpec
from factorlab.kernel.ars import Bounds
from factorlab.report import SuiteReport

_default_catalog = os.path.join(os.path.dirname(__file__), 'catalog.yaml')


@dataclass
class CheckSpec:
    name: str
    fn: str
    kwargs: Dict[str, Any] = field(default_factory=dict)
    expect: Dict[str, str] = field(default_factory=dict)
    # per-check overrides of the entry corpus and of the run bounds
    corpus: Dict[str, Any] = field(default_factory=dict)
    bounds: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        bad = {k: v for k, v in self.expect.items() if v not in ('pass', 'fail')}
        assert not bad, f'Check {self.name}: expected outcomes must be pass or fail, got {bad}'

    @property
    def essential(self) -> Optional[str]:
        return self.kwargs.get('essential')

    def describe(self) -> str:
        return ', '.join(f'{k} {v.upper() if v == "fail" else v}' for k, v in self.expect.items())

    def run(self, calculus: Calculus, corpus: CorpusSpec, bounds: Bounds) -> SuiteReport:
        if self.corpus:
            corpus = CorpusSpec(**{**corpus.to_dict(), **self.corpus})
        if self.bounds:
            bounds = bounds.replace(**self.bounds)
        fn = get_function(dict(fn=self.fn, kwargs=self.kwargs))
        logging.info(f'Running {calculus.name}/{self.name} ({self.fn})')
        start = time.perf_counter()
        suite = fn(calculus=calculus, corpus=corpus, bounds=bounds)
        logging.info(f'{calculus.name}/{self.name}: {suite.outcome} in {time.perf_counter() - start:.1f}s')
        return suite


@dataclass
class CalculusCatalogEntry:
    name: str
    calculus: Calculus
    reference: str
    corpus: Dict[str, Any] = field(default_factory=dict)
    checks: List[CheckSpec] = field(default_factory=list)
    confluence: str = ''

    @property
    def expected(self) -> List[tuple]:
        return [(f'{c.name}/{part}', outcome) for c in self.checks for part, outcome in c.expect.items()]

    @property
    def expects_failure(self) -> bool:
        return any(outcome == 'fail' for _, outcome in self.expected)

    def corpus_spec(self, overrides: Optional[Dict[str, Any]] = None) -> CorpusSpec:
        """Entry corpus with run-level overrides; ``None`` override values are ignored."""
        d = dict(self.corpus)
        d.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return CorpusSpec(**d)

    def check(self, name: str) -> CheckSpec:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(f'Calculus {self.name} has no check {name!r}, expected one of {[c.name for c in self.checks]}')

    def to_dict(self) -> Dict[str, Any]:
        cal = self.calculus
        return dict(
            name=self.name,
            reference=self.reference,
            confluence=self.confluence,
            rules=list(cal.rule_names),
            rule_docs={r.name: r.doc for r in cal.rules},
            description=cal.description,
            essential=cal.essential.value,
            constants=list(cal.constants),
            choice=cal.allows_choice,
            checks=[dict(name=c.name, fn=c.fn, kwargs=c.kwargs, expect=c.expect) for c in self.checks],
        )


@lru_cache(maxsize=4)
def _load(path: str) -> Dict[str, CalculusCatalogEntry]:
    entries = {}
    for name, d in build_module(path).items():
        checks = [CheckSpec(**c) for c in d.get('checks', [])]
        entries[name] = CalculusCatalogEntry(name=name, calculus=d['calculus'], reference=d['reference'],
                                             corpus=d.get('corpus', {}), checks=checks,
                                             confluence=d.get('confluence', ''))
    return entries


def catalog(path: str = _default_catalog) -> List[CalculusCatalogEntry]:
    return list(_load(path).values())


def get_entry(name: str, path: str = _default_catalog) -> CalculusCatalogEntry:
    entries = _load(path)
    if name not in entries:
        raise KeyError(f'Unknown calculus {name!r}, expected one of {sorted(entries)}')
    return entries[name]

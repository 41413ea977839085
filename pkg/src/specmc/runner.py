"""Orchestration of the two phases under one time budget, plus reporting."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .bottomup import Limits, NotStratified, Verdict, bottom_up
from .firing import Firing
from .generalization import GenOp
from .model import NotTotal, SizeLimit, SystemSpec, encode
from .specializer import SpecConfig, StepLimit, TimeLimit, specialize

EXIT_CODES = {Verdict.VERIFIED: 0, Verdict.VIOLATED: 1, Verdict.UNKNOWN: 2}
EXIT_INPUT_ERROR = 3


@dataclass
class RunConfig:
    firing: Firing = Firing.ALWAYS
    genop: GenOp = GenOp.WM
    timeout_ms: int = 100_000
    max_bottomup_iters: int = 1000
    emit_specialized: str | None = None
    emit_model: str | None = None
    json: bool = False

    def __post_init__(self):
        if self.timeout_ms <= 0:
            raise ValueError("timeout_ms must be positive")


@dataclass
class RunReport:
    verdict: str
    reason: str | None = None
    specialize_ms: int = 0
    bottomup_ms: int = 0
    total_ms: int = 0
    definitions: int = 0
    clauses: int = 0
    facts: int = 0
    gen_steps: dict = field(default_factory=lambda: {"reuse": 0, "generalize": 0, "fresh": 0})

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[Verdict(self.verdict)]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        head = self.verdict if not self.reason else f"{self.verdict} ({self.reason})"
        g = self.gen_steps
        return (f"{head}\n"
                f"  specialize {self.specialize_ms} ms, bottom-up {self.bottomup_ms} ms, "
                f"total {self.total_ms} ms\n"
                f"  definitions {self.definitions}, clauses {self.clauses}, facts {self.facts}\n"
                f"  folding: reuse {g['reuse']}, generalize {g['generalize']}, fresh {g['fresh']}\n")


@dataclass
class RunArtifacts:
    """Everything a run produced, for callers that want more than the report."""

    report: RunReport
    specialized: object = None
    bottomup: object = None


def _ms(t0: float, t1: float) -> int:
    return int(round((t1 - t0) * 1000))


def run_full(spec: SystemSpec, config: RunConfig | None = None) -> RunArtifacts:
    config = config or RunConfig()
    start = time.monotonic()
    deadline = start + config.timeout_ms / 1000
    report = RunReport(verdict=Verdict.UNKNOWN.value)
    arts = RunArtifacts(report)
    t_spec = t_bu = start
    try:
        program = encode(spec)
        ps = specialize(program, SpecConfig(config.firing, config.genop, deadline=deadline))
        arts.specialized = ps
        t_spec = time.monotonic()
        report.specialize_ms = _ms(start, t_spec)
        report.definitions = len(ps.definitions)
        report.clauses = len(ps.clauses)
        report.gen_steps = {"reuse": ps.stats.reuse, "generalize": ps.stats.generalize,
                            "fresh": ps.stats.fresh}
        if config.emit_specialized:
            Path(config.emit_specialized).write_text(ps.dump())
        result = bottom_up(ps, Limits(config.max_bottomup_iters, deadline))
        arts.bottomup = result
        t_bu = time.monotonic()
        report.bottomup_ms = _ms(t_spec, t_bu)
        report.facts = result.model.count()
        report.verdict = result.verdict.value
        report.reason = result.reason
        if config.emit_model:
            arity = {p: ps.arity(p) for p in ps.predicates()}
            Path(config.emit_model).write_text(result.model.dump(arity))
    except TimeLimit:
        report.reason = "timeout"
    except NotTotal as exc:
        report.reason = f"not-total: {exc.region}"
    except (SizeLimit, StepLimit) as exc:
        report.reason = f"size-limit: {exc}"
    except NotStratified as exc:
        report.reason = f"not-stratified: {exc}"
    except RecursionError:
        report.reason = "internal-error: recursion depth"
    if report.reason == "timeout" and report.specialize_ms == 0:
        report.specialize_ms = _ms(start, time.monotonic())
    report.total_ms = _ms(start, time.monotonic())
    return arts


def run(spec: SystemSpec, config: RunConfig | None = None) -> RunReport:
    return run_full(spec, config).report

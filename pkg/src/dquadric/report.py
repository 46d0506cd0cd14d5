"""Run configuration and report records.

Reports are deterministic: record order is fixed by the generating code,
algebraic numbers serialize as {tower, nested coefficient lists} with a
human-readable rendering alongside, and equal seeds give byte-identical
JSON.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .numeric import AlgebraicElement, render


@dataclass
class RunConfig:
    command: str = 'verify-all'
    rows: list | None = None          # None = all
    samples: int = 3
    seed: int = 0
    fmt: str = 'json'
    data_dir: str | None = None
    jobs: int = 1

    def echo(self):
        return {
            'command': self.command,
            'rows': self.rows if self.rows is not None else 'all',
            'samples': self.samples,
            'seed': self.seed,
            'format': self.fmt,
            'data_dir': self.data_dir or '(default)',
            'jobs': self.jobs,
        }


def encode_algebraic(x: AlgebraicElement):
    """Exact machine form plus a display string (not parsed back)."""
    return {
        'tower': x.tower.describe(),
        'coefficients': x.to_json(),
        'display': render(x),
    }


def encode_params(params):
    return {'mu': encode_algebraic(params.mu), 'nu': encode_algebraic(params.nu)}


@dataclass
class CheckRecord:
    id: str
    claim: str
    status: str            # 'pass' | 'fail' | 'split'
    detail: dict = field(default_factory=dict)

    def to_obj(self):
        return {'id': self.id, 'claim': self.claim, 'status': self.status,
                'detail': self.detail}

    @staticmethod
    def from_obj(obj):
        return CheckRecord(obj['id'], obj['claim'], obj['status'], obj['detail'])


class Report:
    def __init__(self, config: RunConfig, records=None, version=__version__):
        self.version = version
        self.config = config
        self.records: list[CheckRecord] = list(records or [])

    def add(self, record: CheckRecord):
        self.records.append(record)

    def extend(self, records):
        self.records.extend(records)

    def summary(self):
        out = {'pass': 0, 'fail': 0, 'split': 0}
        for r in self.records:
            out[r.status] = out.get(r.status, 0) + 1
        out['total'] = len(self.records)
        return out

    def all_pass(self):
        return all(r.status != 'fail' for r in self.records)

    def to_obj(self):
        return {
            'version': self.version,
            'config': self.config.echo(),
            'records': [r.to_obj() for r in self.records],
            'summary': self.summary(),
        }

    def to_json(self):
        return json.dumps(self.to_obj(), indent=1, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Report":
        obj = json.loads(text)
        cfg = RunConfig()
        rep = Report(cfg, version=obj['version'])
        rep.records = [CheckRecord.from_obj(r) for r in obj['records']]
        rep._parsed_config = obj['config']
        rep._parsed_summary = obj['summary']
        return rep

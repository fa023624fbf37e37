"""JSON and CSV formats. Rationals travel as ``"num/den"`` strings."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .core import Instance, Job, Schedule
from .errors import BicritError
from .repairman import MetricInstance


class InputError(BicritError):
    """Unreadable or malformed input file."""


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, float):
        # JSON decimals like 2.5 are read at their decimal value
        return Fraction(repr(x))
    raise InputError(f"not a number: {x!r}")


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e


def write_json(path: str | Path, data: Any) -> None:
    Path(path).write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


def instance_from_json(data: dict, source: str = "<input>") -> Instance:
    try:
        jobs = []
        for k, row in enumerate(data["jobs"]):
            if "p_by_machine" in row:
                proc = tuple(parse_rat(x) for x in row["p_by_machine"])
            else:
                proc = parse_rat(row["p"])
            jobs.append(Job(int(row.get("id", k)), parse_rat(row.get("weight", 1)), proc))
        jobs.sort(key=lambda j: j.id)
        return Instance(data["model"], int(data["machines"]), tuple(jobs))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"{source}: bad instance: {e}") from e


def instance_to_json(instance: Instance) -> dict:
    jobs = []
    for job in instance.jobs:
        row: dict[str, Any] = {"id": job.id, "weight": rat(job.weight)}
        if isinstance(job.processing, tuple):
            row["p_by_machine"] = [rat(p) for p in job.processing]
        else:
            row["p"] = rat(job.processing)
        jobs.append(row)
    return {"model": instance.model, "machines": instance.machines, "jobs": jobs}


def load_instance(path: str | Path) -> Instance:
    return instance_from_json(read_json(path), str(path))


def schedule_to_json(S: Schedule) -> list:
    return [[[s.job, rat(s.start), rat(s.end)] for s in row] for row in S.machines]


def schedule_from_json(data: Sequence) -> Schedule:
    try:
        return Schedule(tuple(tuple((int(j), parse_rat(a), parse_rat(b)) for j, a, b in row)
                              for row in data))
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad schedule: {e}") from e


def metric_from_json(data: dict, source: str = "<input>") -> MetricInstance:
    try:
        start = int(data.get("start", 0))
        weights = data.get("weights")
        if weights is not None:
            weights = [parse_rat(w) for w in weights]
        if "dist" in data:
            dist = [[parse_rat(x) for x in row] for row in data["dist"]]
            return MetricInstance(tuple(map(tuple, dist)), start,
                                  None if weights is None else tuple(weights))
        points = [tuple(float(c) for c in p) for p in data["points"]]
        return MetricInstance.from_points(points, start, weights)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"{source}: bad metric instance: {e}") from e


def load_metric(path: str | Path) -> MetricInstance:
    return metric_from_json(read_json(path), str(path))


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()

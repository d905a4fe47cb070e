from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float | None
    note: str = ""


RESULTS: dict[int, CriterionResult] = {}


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    """Time a criterion block, record its verdict, and fail on a runtime overrun."""
    start = time.perf_counter()
    note = ""
    passed = False
    try:
        yield
        passed = True
    except BaseException as exc:
        note = f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        raise
    finally:
        elapsed = time.perf_counter() - start
        if passed and limit is not None and elapsed >= limit:
            passed = False
            note = f"runtime {elapsed:.1f}s exceeds {limit:.0f}s"
        RESULTS[number] = CriterionResult(number, title, passed, elapsed, limit, note)
    if limit is not None:
        assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s (limit {limit:.0f}s)"


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        r = RESULTS[n]
        limit = f" / limit {r.limit:.0f}s" if r.limit is not None else ""
        line = f"[{'PASS' if r.passed else 'FAIL'}] criterion {r.number:2d}: {r.title} ({r.seconds:.1f}s{limit})"
        if r.note:
            line += f" -- {r.note}"
        terminalreporter.write_line(line)

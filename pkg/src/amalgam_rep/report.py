"""Machine-readable verification reports."""

from __future__ import annotations

import json
import platform
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Literal

import numpy as np

from .errors import Inconclusive, MemoryBudgetExceeded

Status = Literal["pass", "fail", "skip", "inconclusive"]
STATUSES = ("pass", "fail", "skip", "inconclusive")


@dataclass
class Check:
    id: str
    paper_ref: str
    status: Status
    witness: str = ""
    millis: int = 0


class Skip(Exception):
    """Raised by a check body to record status ``skip``."""


def toolchain() -> dict[str, str]:
    from . import __version__
    from .groups import kernels

    return {
        "package": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "kernels": kernels.backend_name(),
    }


@dataclass
class VerificationReport:
    command: str
    seed: int = 0
    checks: list[Check] = field(default_factory=list)
    toolchain: dict[str, str] = field(default_factory=toolchain)

    def add(self, check: Check) -> Check:
        if any(c.id == check.id for c in self.checks):
            raise ValueError(f"duplicate check id {check.id!r}")
        self.checks.append(check)
        return check

    def run(self, check_id: str, ref: str, body: Callable[[], object]) -> Check:
        """Run ``body`` and record its outcome.

        ``body`` returns ``(ok, witness)``, a bare bool, or ``(status, witness)``
        with an explicit status string.
        """
        t0 = time.perf_counter()
        try:
            out = body()
            if isinstance(out, tuple):
                head, witness = out
            else:
                head, witness = out, ""
            if isinstance(head, str):
                status = head
            else:
                status = "pass" if head else "fail"
            if status == "fail" and not witness:
                witness = "check returned false"
        except Skip as exc:
            status, witness = "skip", str(exc)
        except (Inconclusive, MemoryBudgetExceeded) as exc:
            status, witness = "inconclusive", str(exc)
        except Exception as exc:  # a crashing check is a failed check
            status, witness = "fail", f"{type(exc).__name__}: {exc}"
        millis = int((time.perf_counter() - t0) * 1000)
        return self.add(Check(check_id, ref, status, str(witness), millis))

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def counts(self) -> dict[str, int]:
        return {s: sum(c.status == s for c in self.checks) for s in STATUSES}

    def exit_code(self) -> int:
        if any(c.status == "fail" for c in self.checks):
            return 1
        if any(c.status == "inconclusive" for c in self.checks):
            return 2
        return 0

    def merge(self, other: VerificationReport) -> None:
        for c in other.checks:
            self.add(c)

    # --- serialization ------------------------------------------------------

    def to_dict(self, *, timing: bool = True) -> dict:
        checks = [asdict(c) for c in self.checks]
        if not timing:
            for c in checks:
                c.pop("millis")
        return {"command": self.command, "seed": self.seed,
                "toolchain": self.toolchain, "checks": checks}

    def to_json(self, *, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing=timing), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> VerificationReport:
        rep = cls(data["command"], int(data.get("seed", 0)), [], dict(data.get("toolchain", {})))
        for c in data["checks"]:
            if c["status"] not in STATUSES:
                raise ValueError(f"unknown status {c['status']!r}")
            rep.add(Check(c["id"], c.get("paper_ref", ""), c["status"], c.get("witness", ""),
                          int(c.get("millis", 0))))
        return rep

    @classmethod
    def load(cls, path: str | Path) -> VerificationReport:
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_text(self) -> str:
        width = max([len(c.id) for c in self.checks] + [5])
        lines = [f"# {self.command} (seed {self.seed}, kernels {self.toolchain.get('kernels', '?')})"]
        for c in self.checks:
            line = f"{c.status.upper():<12} {c.id:<{width}}  {c.millis:>7} ms  {c.paper_ref}"
            if c.witness:
                line += f"\n{'':<12} {'':<{width}}  -> {c.witness}"
            lines.append(line)
        n = self.counts()
        lines.append(", ".join(f"{n[s]} {s}" for s in STATUSES))
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path, fmt: Literal["text", "json"] = "json") -> None:
        text = self.to_json() if fmt == "json" else self.to_text()
        Path(path).write_text(text, encoding="utf-8")

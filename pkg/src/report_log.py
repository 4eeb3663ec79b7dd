from __future__ import annotations

import json
from datetime import datetime
from pathlib import Path

from src.reports import VerificationReport


def _project_root() -> Path:
    # This file lives in <root>/src/; parent of src is the project root.
    return Path(__file__).resolve().parents[1]


def resolve_report_dir(dir_setting: str) -> Path:
    p = Path(dir_setting)
    if not p.is_absolute():
        p = _project_root() / p
    return p


def clear_report_dir(dir_path: Path) -> None:
    if not dir_path.exists():
        return
    for child in dir_path.glob("*.jsonl"):
        try:
            child.unlink()
        except OSError:
            raise RuntimeError(f"Failed to delete report log: {child}") from None


class ReportLog:
    """Append-only JSONL log of verification reports."""

    def __init__(self, dir_path: Path) -> None:
        self.dir_path = dir_path
        self.dir_path.mkdir(parents=True, exist_ok=True)
        self.path = self.dir_path / "reports.jsonl"

    def log(self, report: VerificationReport, **extra) -> None:
        record = {
            "ts": datetime.now().isoformat(timespec="seconds"),
            **extra,
            **report.model_dump(),
        }
        with self.path.open("a", encoding="utf-8") as f:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")

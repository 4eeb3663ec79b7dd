from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field


class Counterexample(BaseModel):
    detail: str
    data: dict[str, Any] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    """Outcome of one property check over one subject (a quiver, or a quiver and a tilting module)."""

    property: str
    subject: str
    passed: bool = True
    checked: int = 0
    counterexamples: list[Counterexample] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)

    def fail(self, example: Counterexample) -> None:
        self.passed = False
        self.counterexamples.append(example)

    def expect(self, condition: bool, detail: str, **data: Any) -> bool:
        if not condition:
            self.fail(Counterexample(detail=detail, data=data))
        return condition

    def merge(self, other: VerificationReport) -> None:
        self.checked += other.checked
        self.notes.extend(other.notes)
        for ex in other.counterexamples:
            self.fail(ex)


def merge_reports(prop: str, subject: str, reports: list[VerificationReport]) -> VerificationReport:
    merged = VerificationReport(property=prop, subject=subject)
    for r in sorted(reports, key=lambda r: r.subject):
        merged.merge(r)
    return merged


class RootRow(BaseModel):
    root: list[int]
    q: int


class ClassificationRow(BaseModel):
    label: str
    dim: list[int]
    tag: str
    hom: list[int]
    ext: list[int]
    supp_g: list[str]
    supp_f: list[str]


class ClusterRow(BaseModel):
    label: str
    x: list[int]
    g: list[int]
    abs_g: list[int]
    tag: str
    q_b: int


class TiltingRow(BaseModel):
    index: int
    summands: list[str]
    preprojective: bool
    mixed: int

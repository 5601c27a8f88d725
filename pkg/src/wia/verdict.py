"""Three-valued decision results with named criteria and witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

TRUE = "True"
FALSE = "False"
UNDECIDED = "Undecided"


@dataclass(frozen=True)
class Verdict:
    status: str
    criterion: str
    witness: dict = field(default_factory=dict)

    @property
    def is_true(self) -> bool:
        return self.status == TRUE

    @property
    def is_false(self) -> bool:
        return self.status == FALSE

    @property
    def decided(self) -> bool:
        return self.status != UNDECIDED

    def to_json(self) -> dict:
        out = {"status": self.status, "criterion": self.criterion}
        if self.witness:
            out["witness"] = self.witness
        return out


def verdict_true(criterion: str, witness: dict | None = None) -> Verdict:
    return Verdict(TRUE, criterion, witness or {})


def verdict_false(criterion: str, witness: dict | None = None) -> Verdict:
    return Verdict(FALSE, criterion, witness or {})


def undecided(shape: str) -> Verdict:
    return Verdict(UNDECIDED, "undecided-shape", {"shape": shape})

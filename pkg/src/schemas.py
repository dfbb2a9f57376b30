from typing import Dict, List, Optional

from pydantic import BaseModel, Field, validator

VERDICTS = ("provable", "defeated", "not-derivable", "unknown")
CLASSIFICATIONS = ("proof", "paraproof", "not-a-derivation")
EVENTS = ("subquestion", "fact", "answered", "exception", "subquestion-resolved", "error", "status")


class ProofNode(BaseModel):
    sequent: str
    rule: str
    witness: Optional[Dict[str, str]] = None
    premises: List["ProofNode"] = []


ProofNode.update_forward_refs()


class VerdictResponse(BaseModel):
    verdict: str
    witness: Optional[List[str]] = None
    proof: Optional[ProofNode] = None
    reason: Optional[str] = None

    @validator("verdict")
    def verdict_is_known(cls, value):
        if value not in VERDICTS:
            raise ValueError(f"unknown verdict {value!r}")
        return value


class ClassificationResponse(BaseModel):
    classification: str
    path: Optional[str] = None
    reason: Optional[str] = None
    defeated: Optional[List[str]] = None

    @validator("classification")
    def classification_is_known(cls, value):
        if value not in CLASSIFICATIONS:
            raise ValueError(f"unknown classification {value!r}")
        return value


class EroteticResponse(BaseModel):
    relation: str = Field(regex="^(evokes|implies)$")
    mode: str = Field(regex="^(semantic|proof)$")
    holds: bool
    clauses: Optional[Dict[str, bool]] = None
    violated: Optional[List[str]] = None
    witness: Optional[str] = None
    verdict: Optional[str] = None
    proof: Optional[ProofNode] = None


class ParseResponse(BaseModel):
    kind: str = Field(regex="^(dformula|question|sequent)$")
    text: str
    grouped: str
    tree: dict


class AssignmentViolationModel(BaseModel):
    atom: str
    formula: str
    reason: str


class AssignmentErrorResponse(BaseModel):
    error: str
    line: Optional[int] = None
    violations: List[AssignmentViolationModel] = []


class TranscriptEvent(BaseModel):
    event: str
    detail: str
    step: int = Field(ge=0)

    @validator("event")
    def event_is_known(cls, value):
        if value not in EVENTS:
            raise ValueError(f"unknown event {value!r}")
        return value

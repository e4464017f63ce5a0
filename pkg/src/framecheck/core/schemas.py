"""Document schemas: consistency reports, certificate files and run reports."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class ConsistencyStatus(str, Enum):
    REPRODUCED = "REPRODUCED"
    DISCREPANT = "DISCREPANT"
    UNCHECKED = "UNCHECKED"


class CoefficientDiff(BaseModel):
    exponent: int
    printed: int
    computed: int


class ConsistencyEntry(BaseModel):
    """Printed display compared with the relation computed from the recipe."""

    source: str
    lambda_power: int
    status: ConsistencyStatus
    diff: list[CoefficientDiff] = Field(default_factory=list)
    rhs_printed: int
    rhs_computed: int | None = None
    balanced: bool = True
    note: str | None = None


class CertificateClaim(BaseModel):
    """``m·target = Σ combination[r]·row_r`` holds exactly."""

    exponent: int | None = Field(
        default=None, description="Generator exponent when the target is a single t^j"
    )
    target: dict[int, int]
    m: int = Field(ge=1)
    prime: int
    case: str | None = None


class CertificateDocument(BaseModel):
    """Self-contained certificate file; the verifier needs nothing else."""

    claim: CertificateClaim
    rows: list[str]
    combination: dict[int, int]


class IdentityOutcome(BaseModel):
    identity: str
    holds: bool
    minimal_multiple: int | None = None
    error: str | None = None


class RunReport(BaseModel):
    """Everything learned about one (case, prime, source) run; never partial on failure."""

    case: str
    group: str
    prime: int
    source: str
    window: int
    i_max: int
    relation_counts: dict[str, int] = Field(default_factory=dict)
    dropped_relations: int = 0
    consistency: list[ConsistencyEntry] = Field(default_factory=list)
    zero_at_p: bool = False
    minimal_multiple: int | None = None
    certificate_verified: bool = False
    certificate_path: str | None = None
    unbalanced_support: list[str] = Field(
        default_factory=list,
        description="Unbalanced printed displays the certificate combination uses",
    )
    identities: list[IdentityOutcome] = Field(default_factory=list)
    failures: list[str] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)
    wall_time: float = 0.0


class ReportEntry(BaseModel):
    """One row of the machine-readable report; the key set is fixed."""

    model_config = ConfigDict(extra="forbid")

    case: str
    prime: int
    source: str
    verdict: bool
    m: int | None
    certificate_path: str | None
    consistency: list[ConsistencyEntry]

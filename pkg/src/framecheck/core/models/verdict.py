from pydantic import BaseModel, ConfigDict, Field, model_validator


class Certificate(BaseModel):
    """Integer combination of relation rows equal to ``m`` times the target."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    combination: dict[int, int]
    target: dict[int, int]
    claim: int | None = Field(default=None, description="Target exponent for a single t^j")


class Verdict(BaseModel):
    """p-local decision for one target; ``minimal_multiple`` is ``None`` for ∞."""

    model_config = ConfigDict(frozen=True)

    target: int
    prime: int
    minimal_multiple: int | None
    zero_at_p: bool
    certificate: Certificate | None = None

    @model_validator(mode="after")
    def _zero_needs_unit_multiple(self) -> "Verdict":
        if self.zero_at_p and (
            self.minimal_multiple is None or self.minimal_multiple % self.prime == 0
        ):
            raise ValueError("zero_at_p requires a finite multiple coprime to p")
        return self

from framecheck.core.models.case import CaseSpec, PrintedRelation
from framecheck.core.models.character import Character, CharacterError, Parity
from framecheck.core.models.relation import GeneratorWindow, Relation, RelationError
from framecheck.core.models.verdict import Certificate, Verdict

__all__ = [
    "CaseSpec",
    "Certificate",
    "Character",
    "CharacterError",
    "GeneratorWindow",
    "Parity",
    "PrintedRelation",
    "Relation",
    "RelationError",
    "Verdict",
]

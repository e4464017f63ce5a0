"""p-local verdicts, identity checks and the independent certificate checker."""

import json
import logging
from collections.abc import Mapping, Sequence
from math import gcd
from pathlib import Path

from pydantic import ValidationError

from framecheck.core.models.relation import Relation, RelationError
from framecheck.core.models.verdict import Certificate, Verdict
from framecheck.core.schemas import CertificateClaim, CertificateDocument
from framecheck.services.lattice import (
    CertificateError,
    RelationMatrix,
    minimal_multiple,
    order_with_combination,
)

logger = logging.getLogger(__name__)

PROVEN_PRIMES = (2, 3)


def is_zero_p_local(target: int, matrix: RelationMatrix, p: int) -> Verdict:
    """Decide ``t^target = 0`` after localizing at ``p``; attaches a certificate when it holds."""
    if p not in PROVEN_PRIMES:
        logger.info(f"p={p}: for all primes p ≥ 5 the class vanishes without these relations")
    m, combination = order_with_combination(target, matrix)
    zero = m is not None and m % p != 0
    certificate = None
    if zero:
        certificate = Certificate(m=m, combination=combination, target={target: 1}, claim=target)
    else:
        logger.warning(f"t^{target} is not zero at p={p} (minimal multiple {m or '∞'})")
    return Verdict(
        target=target, prime=p, minimal_multiple=m, zero_at_p=zero, certificate=certificate
    )


def identity_order(lhs: Mapping[int, int], matrix: RelationMatrix) -> int | None:
    """Least ``m`` with ``m·lhs`` in the row span, ``None`` for ∞; ``1`` for the empty sum."""
    sparse = {e: c for e, c in lhs.items() if c}
    if not sparse:
        return 1
    return minimal_multiple(sparse, matrix)


def check_identity(lhs: Mapping[int, int], matrix: RelationMatrix, p: int) -> bool:
    """True iff ``lhs = 0`` holds in the ``p``-localization."""
    m = identity_order(lhs, matrix)
    return m is not None and gcd(m, p) == 1


def _certificate_problem(cert: Certificate, relations: Sequence[Relation]) -> str | None:
    total: dict[int, int] = {}
    for index, coeff in cert.combination.items():
        if not 0 <= index < len(relations):
            return f"row {index} does not exist ({len(relations)} rows)"
        relation = relations[index]
        if relation.modulus and coeff:
            # the slack generator of this row appears nowhere else
            return (
                f"row {index} is modular (mod {relation.modulus}) "
                f"and cannot carry weight {coeff}"
            )
        for e, c in relation.terms.items():
            total[e] = total.get(e, 0) + coeff * c
    expected = {e: cert.m * c for e, c in cert.target.items() if c}
    total = {e: c for e, c in total.items() if c}
    if total != expected:
        return f"combination gives {total}, expected {expected}"
    return None


def verify_certificate(cert: Certificate, matrix: RelationMatrix | Sequence[Relation]) -> bool:
    """Replay ``Σ combination[r]·row_r`` over the relations and compare to ``m·target``."""
    relations = matrix.relations if isinstance(matrix, RelationMatrix) else list(matrix)
    problem = _certificate_problem(cert, relations)
    if problem:
        logger.warning(f"Certificate rejected: {problem}")
        return False
    return True


def certificate_document(
    cert: Certificate, matrix: RelationMatrix, p: int, case: str | None = None
) -> CertificateDocument:
    """Self-contained file form: only the rows the combination uses, renumbered."""
    used = sorted(r for r, c in cert.combination.items() if c)
    return CertificateDocument(
        claim=CertificateClaim(
            exponent=cert.claim, target=cert.target, m=cert.m, prime=p, case=case
        ),
        rows=[matrix.relations[r].to_line() for r in used],
        combination={n: cert.combination[r] for n, r in enumerate(used)},
    )


def write_certificate(document: CertificateDocument, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"Certificate written to {path}")
    return path


def read_certificate(path: Path) -> CertificateDocument:
    try:
        return CertificateDocument.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValidationError, json.JSONDecodeError) as e:
        raise CertificateError(f"{path}: unreadable certificate: {e}") from e


def verify_certificate_document(document: CertificateDocument) -> bool:
    """Check a certificate document using nothing but its own rows."""
    try:
        relations = [Relation.from_line(line) for line in document.rows]
    except RelationError as e:
        logger.warning(f"Certificate rejected: {e}")
        return False
    claim = document.claim
    if claim.m % claim.prime == 0:
        logger.warning(f"Certificate rejected: m={claim.m} is divisible by p={claim.prime}")
        return False
    cert = Certificate(
        m=claim.m, combination=document.combination, target=claim.target, claim=claim.exponent
    )
    return verify_certificate(cert, relations)


def verify_certificate_file(path: Path) -> bool:
    return verify_certificate_document(read_certificate(path))

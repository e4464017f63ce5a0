"""One (case, prime, source) run: relations, verdict, certificate and identities."""

import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from pathlib import Path

from framecheck.core.config import AdamsMode
from framecheck.core.models.case import CaseSpec, PrintedRelation
from framecheck.core.models.character import CharacterError
from framecheck.core.models.relation import GeneratorWindow, Relation, RelationError
from framecheck.core.schemas import IdentityOutcome, RunReport
from framecheck.services.catalog import consistency_check, resolve_character
from framecheck.services.decider import (
    certificate_document,
    identity_order,
    is_zero_p_local,
    verify_certificate,
    verify_certificate_file,
    write_certificate,
)
from framecheck.services.identities import IdentityParseError, parse_identity
from framecheck.services.lattice import RelationMatrix
from framecheck.services.relations import (
    DEFAULT_K_SETS,
    adams_relations,
    adams_spanning_relations,
    base_relations,
    from_printed,
    rescale_exponents,
    restriction_relations,
)

logger = logging.getLogger(__name__)


class Source(str, Enum):
    """Where the case relations come from."""

    COMPUTED = "computed"
    PRINTED = "printed"
    BOTH = "both"


@dataclass
class RelationSet:
    """Relations grouped by family, plus the steps that could not be built."""

    families: dict[str, list[Relation]] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def add(self, family: str, relations: list[Relation]) -> None:
        self.families.setdefault(family, []).extend(relations)

    def all(self) -> list[Relation]:
        seen: set = set()
        unique = []
        for relations in self.families.values():
            for r in relations:
                if r.key() not in seen:
                    seen.add(r.key())
                    unique.append(r)
        return unique


def default_k_set(p: int) -> tuple[int, ...]:
    if p in DEFAULT_K_SETS:
        return DEFAULT_K_SETS[p]
    return tuple(k for k in (-1, 2, 3, 4, 5, 6, 7) if gcd(k, p) == 1)[:4]


def printed_instances(case: CaseSpec, pr: PrintedRelation, i_max: int) -> list[Relation]:
    """A printed display at every shift, in the case's relabelled generators."""
    d = case.exponent_divisor
    if pr.prescaled or d == 1:
        return from_printed(pr, i_max)
    return rescale_exponents(from_printed(pr, i_max, step=d), d)


def build_relations(
    case: CaseSpec,
    p: int,
    source: Source,
    window: GeneratorWindow,
    i_max: int,
    adams_mode: AdamsMode = AdamsMode.LISTED,
) -> RelationSet:
    source = Source(source)
    result = RelationSet()

    if source in (Source.COMPUTED, Source.BOTH):
        for j in case.lambda_powers:
            try:
                character = resolve_character(case, j)
                result.add(
                    "restriction", restriction_relations(character, i_max, f"{case.name}:λ^{j}")
                )
            except (CharacterError, ValueError) as e:
                result.failures.append(f"computed λ^{j}: {e}")
    if source in (Source.PRINTED, Source.BOTH):
        for pr in case.printed_relations:
            try:
                result.add("printed", printed_instances(case, pr, i_max))
            except RelationError as e:
                result.failures.append(f"printed {pr.source_tag}: {e}")

    if AdamsMode(adams_mode) is AdamsMode.LISTED:
        result.add("adams", adams_relations(p, window, default_k_set(p)))
    else:
        result.add("adams", adams_spanning_relations(p, window))
    result.add("base", base_relations())
    return result


def _check_identities(
    case: CaseSpec, p: int, matrix: RelationMatrix, extra: list[str]
) -> list[IdentityOutcome]:
    outcomes = []
    for text in list(case.identities.get(p, [])) + list(extra):
        try:
            m = identity_order(parse_identity(text), matrix)
            holds = m is not None and gcd(m, p) == 1
            outcomes.append(IdentityOutcome(identity=text, holds=holds, minimal_multiple=m))
        except (IdentityParseError, ValueError) as e:
            outcomes.append(IdentityOutcome(identity=text, holds=False, error=str(e)))
    return outcomes


def unbalanced_support(
    case: CaseSpec, matrix: RelationMatrix, combination: dict[int, int]
) -> list[str]:
    """Source tags of unbalanced exact printed displays among the rows a combination uses."""
    unbalanced = {
        pr.source_tag for pr in case.printed_relations if not pr.modulus and not pr.is_balanced
    }
    used = set()
    for r, c in combination.items():
        tag = matrix.relations[r].provenance.rpartition("_")[0]
        if c and tag in unbalanced:
            used.add(tag)
    return sorted(used)


def run_case(
    case: CaseSpec,
    p: int,
    source: Source = Source.BOTH,
    window: int | None = None,
    i_max: int | None = None,
    adams_mode: AdamsMode = AdamsMode.LISTED,
    certificate_path: Path | None = None,
    identities: list[str] | None = None,
) -> RunReport:
    """Decide ``t = 0`` at ``p`` for one case; every failure is recorded, never raised."""
    started = time.perf_counter()
    source = Source(source)
    window = case.window if window is None else window
    i_max = case.i_max if i_max is None else i_max
    report = RunReport(
        case=case.name,
        group=case.group_name,
        prime=p,
        source=source.value,
        window=window,
        i_max=i_max,
        consistency=consistency_check(case),
    )
    if p not in case.primes:
        report.notes.append(f"{case.name} is proved at p in {case.primes}, not p={p}")

    bound = GeneratorWindow(window)
    relations = build_relations(case, p, source, bound, i_max, adams_mode)
    report.failures.extend(relations.failures)
    for family, rels in relations.families.items():
        report.relation_counts[family] = sum(1 for r in rels if bound.admits(r))

    matrix = RelationMatrix(relations.all(), bound)
    report.dropped_relations = matrix.dropped
    logger.info(
        f"{case.name} p={p} source={source.value}: {len(matrix.relations)} relations "
        f"over {matrix.width} columns"
    )

    verdict = is_zero_p_local(1, matrix, p)
    report.zero_at_p = verdict.zero_at_p
    report.minimal_multiple = verdict.minimal_multiple
    if verdict.certificate is not None:
        report.certificate_verified = verify_certificate(verdict.certificate, matrix)
        report.unbalanced_support = unbalanced_support(
            case, matrix, verdict.certificate.combination
        )
        for tag in report.unbalanced_support:
            logger.warning(f"{case.name} p={p}: t = 0 rests on the unbalanced display {tag}")
            report.notes.append(f"t = 0 rests on the unbalanced printed display {tag}")
        if certificate_path is not None:
            document = certificate_document(verdict.certificate, matrix, p, case.name)
            write_certificate(document, certificate_path)
            report.certificate_verified = verify_certificate_file(certificate_path)
            report.certificate_path = str(certificate_path)
    else:
        multiple = verdict.minimal_multiple or "∞"
        report.failures.append(
            f"t is not zero at p={p}: minimal multiple {multiple}, "
            f"{matrix.dropped} dropped relations"
        )
        if matrix.dropped:
            logger.warning(
                f"{case.name}: {matrix.dropped} dropped relations; "
                f"the window ±{window} may be too small"
            )
        report.notes.extend(case.notes)

    report.identities = _check_identities(case, p, matrix, identities or [])
    report.wall_time = round(time.perf_counter() - started, 3)
    return report

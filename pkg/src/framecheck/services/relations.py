"""Relation generators: restriction (shifted character), Adams, base and printed."""

import logging
from collections.abc import Iterable, Sequence
from math import gcd

from framecheck.core.models.case import PrintedRelation
from framecheck.core.models.character import Character, CharacterError
from framecheck.core.models.relation import GeneratorWindow, Relation, RelationError

logger = logging.getLogger(__name__)

DEFAULT_K_SETS: dict[int, tuple[int, ...]] = {2: (-1, 3, 5, 7), 3: (-1, 2, 4, 5)}


def restriction_relations(c: Character, i_max: int, source: str = "λ^1") -> list[Relation]:
    """``Σ_{k≠0} a_k·t^{k+i} − (Σ_{k≠0} a_k)·t^i = 0`` for ``i = 0..i_max``."""
    if not c.is_nonnegative():
        raise CharacterError(f"Not a character (negative coefficient): {c}")
    if not c.is_integral():
        raise CharacterError(f"Unresolved half-integer exponent in {c}")
    weights = {h // 2: a for h, a in c.coeffs.items() if h}
    if not weights:
        return []
    ell = sum(weights.values())
    relations: list[Relation] = []
    for i in range(i_max + 1):
        terms: dict[int, int] = {i: -ell}
        for k, a in weights.items():
            terms[k + i] = terms.get(k + i, 0) + a
        relation = Relation.build(terms, provenance=f"{source}_{i}")
        if relation is not None:
            relations.append(relation)
    return relations


def _dedupe(relations: Iterable[Relation]) -> list[Relation]:
    seen: set = set()
    unique: list[Relation] = []
    for r in relations:
        if r.key() not in seen:
            seen.add(r.key())
            unique.append(r)
    return unique


def adams_relations(p: int, window: GeneratorWindow, k_set: Sequence[int]) -> list[Relation]:
    """``t^j − k·t^{kj}`` for each ``k`` and ``j ≠ 0`` with both exponents in the window."""
    for k in k_set:
        if k == 0:
            raise RelationError("Adams multiplier k must be nonzero")
        if gcd(k, p) != 1:
            raise RelationError(f"Adams multiplier k={k} shares factor with p={p}")
    relations = []
    for k in k_set:
        if k == 1:
            continue
        for j in window.exponents():
            if j == 0 or k * j not in window:
                continue
            relations.append(Relation({j: 1, k * j: -k}, provenance=f"adams(p={p},k={k},j={j})"))
    return _dedupe(relations)


def _p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def adams_spanning_relations(p: int, window: GeneratorWindow) -> list[Relation]:
    """One Adams instance per generator: ``t^{p^a} − k·t^j`` with ``j = k·p^a``, ``p ∤ k``.

    Every Adams relation inside the window is a unit multiple (at ``p``) of
    an integer combination of these.
    """
    relations = []
    for j in window.exponents():
        if j == 0:
            continue
        base = _p_part(abs(j), p)
        k = j // base
        if k == 1:
            continue
        relations.append(
            Relation({base: 1, j: -k}, provenance=f"adams(p={p},k={k},j={base})")
        )
    return relations


def base_relations() -> list[Relation]:
    """``2·t^0 = 0``."""
    return [Relation({0: 2}, provenance="base")]


def rescale_exponents(relations: Iterable[Relation], d: int) -> list[Relation]:
    """Divide every exponent by ``d``; coefficients and moduli are unchanged."""
    if d < 1:
        raise RelationError(f"Rescale divisor must be positive, got {d}")
    relations = list(relations)
    if d == 1:
        return relations
    rescaled = []
    for r in relations:
        bad = [e for e in r.terms if e % d]
        if bad:
            raise RelationError(f"Exponents {bad} of {r.to_line()!r} are not divisible by {d}")
        rescaled.append(
            Relation({e // d: c for e, c in r.terms.items()}, r.modulus, r.provenance)
        )
    return rescaled


def from_printed(pr: PrintedRelation, i_max: int, step: int = 1) -> list[Relation]:
    """Instantiate a printed display at the shifts ``step·i`` for ``i = 0..i_max``."""
    coeffs = pr.full_coeffs()
    relations = []
    for i in range(i_max + 1):
        shift = step * i
        terms: dict[int, int] = {}
        for e, c in coeffs.items():
            terms[e + shift] = terms.get(e + shift, 0) + c
        terms[shift] = terms.get(shift, 0) - pr.rhs_multiplier
        relation = Relation.build(
            terms, modulus=pr.modulus, provenance=f"{pr.source_tag}_{shift}"
        )
        if relation is not None:
            relations.append(relation)
    return relations


def within_window(
    relations: Iterable[Relation], window: GeneratorWindow
) -> tuple[list[Relation], int]:
    """Split off relations leaving the window; returns ``(kept, dropped_count)``."""
    kept: list[Relation] = []
    dropped = 0
    for r in relations:
        if window.admits(r):
            kept.append(r)
        else:
            dropped += 1
    if dropped:
        logger.warning(f"Dropped {dropped} relations reaching beyond ±{window.bound}")
    return kept, dropped

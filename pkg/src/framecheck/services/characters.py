"""Exterior powers and spinor characters."""

import logging
from collections.abc import Sequence
from math import comb

from framecheck.core.models.character import Character, CharacterError, Parity, dim
from framecheck.core.utils import Exponent, to_half_units

logger = logging.getLogger(__name__)


def exterior_power(c: Character, j: int) -> Character:
    """The character of ``λ^j``: the ``j``-th elementary symmetric polynomial
    in the monomials of ``c``.

    Computed from the generating product ``∏_w (1 + s·γ^w)^{a_w}`` over the
    distinct weights, truncated at ``s``-degree ``j``.
    """
    if j < 0:
        raise CharacterError(f"Exterior power degree must be nonnegative, got {j}")
    if not c.is_nonnegative():
        raise CharacterError(f"Not a character (negative coefficient): {c}")
    if j > dim(c):
        return Character()

    # layers[d] holds the s^d coefficient as {half-unit exponent: coeff}
    layers: list[dict[int, int]] = [{0: 1}] + [{} for _ in range(j)]
    for weight, mult in c.coeffs.items():
        updated: list[dict[int, int]] = [{} for _ in range(j + 1)]
        for degree, layer in enumerate(layers):
            for half, coeff in layer.items():
                for r in range(min(mult, j - degree) + 1):
                    target = updated[degree + r]
                    key = half + r * weight
                    target[key] = target.get(key, 0) + comb(mult, r) * coeff
        layers = updated
    result = Character(layers[j])
    logger.debug(f"λ^{j} of a {dim(c)}-dimensional character has {len(result.coeffs)} terms")
    return result


def spinor_character(x: Sequence[Exponent], parity: Parity | str = Parity.FULL) -> Character:
    """Spin character with torus weights ``x``: the sum of ``γ^{(Σ ε_i x_i)/2}``.

    ``plus``/``minus`` keep the sign patterns with an even/odd number of
    minus signs; ``full`` keeps all of them.
    """
    parity = Parity(parity)
    if not x:
        raise CharacterError("Spinor character needs at least one torus weight")
    halves = [to_half_units(w) for w in x]

    # (odd number of minus signs, 2·Σ ε_i x_i) -> multiplicity
    states: dict[tuple[bool, int], int] = {(False, 0): 1}
    for h in halves:
        nxt: dict[tuple[bool, int], int] = {}
        for (odd, total), count in states.items():
            for key in ((odd, total + h), (not odd, total - h)):
                nxt[key] = nxt.get(key, 0) + count
        states = nxt

    coeffs: dict[int, int] = {}
    for (odd, total), count in states.items():
        if parity is Parity.PLUS and odd:
            continue
        if parity is Parity.MINUS and not odd:
            continue
        if total % 2:
            raise CharacterError(
                f"Spinor weights {list(x)} produce a quarter-integer exponent"
            )
        coeffs[total // 2] = coeffs.get(total // 2, 0) + count
    return Character(coeffs)

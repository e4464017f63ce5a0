"""Exact integer lattice engine over the generators ``t^j`` and slack generators.

Orders come from sympy's Hermite normal form over ``ZZ``. The certificate
path keeps its own echelon elimination, which records every row operation
as a sparse combination of the original rows so a basis vector can be
replayed as a certificate.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import hermite_normal_form

from framecheck.core.models.relation import GeneratorWindow, Relation
from framecheck.core.models.verdict import Certificate
from framecheck.services.relations import within_window

logger = logging.getLogger(__name__)

Combination = dict[int, int]


class CertificateError(ValueError):
    """A requested vector is not in the row span."""


class RelationMatrix:
    """Relations as dense integer rows over ``t^{-N}..t^{N}``.

    Each modular row gets its own slack column after the ``t`` columns.
    """

    def __init__(self, relations: Iterable[Relation], window: GeneratorWindow):
        self.window = window
        kept, self.dropped = within_window(relations, window)
        self.relations: tuple[Relation, ...] = tuple(kept)

        self.columns: list[str] = [f"t^{j}" for j in window.exponents()]
        self._slack: dict[int, int] = {}
        for index, relation in enumerate(self.relations):
            if relation.modulus:
                self._slack[index] = len(self.columns)
                self.columns.append(f"s{index}")

        self.rows: list[list[int]] = []
        for index, relation in enumerate(self.relations):
            row = [0] * len(self.columns)
            for e, c in relation.terms.items():
                row[self.column(e)] = c
            if index in self._slack:
                row[self._slack[index]] = -relation.modulus
            self.rows.append(row)
        logger.debug(
            f"Relation matrix {len(self.rows)}x{len(self.columns)} "
            f"({len(self._slack)} slack, {self.dropped} dropped)"
        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "RelationMatrix":
        """A bare matrix whose columns are ``t^0, t^1, …``; zero rows are skipped."""
        width = max((len(r) for r in rows), default=1)
        matrix = cls.__new__(cls)
        matrix.window = None
        matrix.dropped = 0
        matrix._slack = {}
        matrix.columns = [f"t^{j}" for j in range(width)]
        matrix.relations = tuple(
            Relation({j: c for j, c in enumerate(r)}, provenance=f"row{n}")
            for n, r in enumerate(rows)
            if any(r)
        )
        matrix.rows = [[r.terms.get(j, 0) for j in range(width)] for r in matrix.relations]
        return matrix

    @property
    def width(self) -> int:
        return len(self.columns)

    @property
    def slack_columns(self) -> list[int]:
        return sorted(self._slack.values())

    def column(self, exponent: int) -> int:
        """Column index of ``t^exponent``."""
        if self.window is None:
            if not 0 <= exponent < self.width:
                raise ValueError(f"t^{exponent} is not a column of this matrix")
            return exponent
        if exponent not in self.window:
            raise ValueError(f"t^{exponent} lies outside the window ±{self.window.bound}")
        return exponent + self.window.bound

    def vector(self, target: Mapping[int, int]) -> list[int]:
        """Dense vector of a sparse generator combination."""
        vec = [0] * self.width
        for e, c in target.items():
            vec[self.column(e)] += c
        return vec

    def elimination_order(self, last: int | None = None) -> list[int]:
        """Slack columns first, then the ``t`` columns, ``last`` (if given) at the end."""
        slack = set(self._slack.values())
        order = self.slack_columns + [c for c in range(self.width) if c not in slack and c != last]
        if last is not None:
            order.append(last)
        return order


@dataclass
class _Row:
    vec: list[int]
    combo: Combination

    def subtract(self, other: "_Row", q: int) -> None:
        if not q:
            return
        self.vec = [a - q * b for a, b in zip(self.vec, other.vec)]
        for r, c in other.combo.items():
            value = self.combo.get(r, 0) - q * c
            if value:
                self.combo[r] = value
            else:
                self.combo.pop(r, None)

    def negate(self) -> None:
        self.vec = [-a for a in self.vec]
        self.combo = {r: -c for r, c in self.combo.items()}


@dataclass
class HermiteBasis:
    """Echelon basis of a row lattice in a fixed column order.

    ``rows[n]`` has its pivot at ``pivots[n]``, positive, with every entry
    of the other rows in that column reduced into ``[0, pivot)``.
    """

    order: list[int]
    pivots: list[int] = field(default_factory=list)
    rows: list[list[int]] = field(default_factory=list)
    combinations: list[Combination] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivot_row(self, column: int) -> int | None:
        try:
            return self.pivots.index(column)
        except ValueError:
            return None

    def contains(self, vec: Sequence[int]) -> Combination | None:
        """Original-row combination equal to ``vec``, or ``None`` if outside the span."""
        residual = list(vec)
        combo: Combination = {}
        for pivot, row, row_combo in zip(self.pivots, self.rows, self.combinations):
            if not residual[pivot]:
                continue
            q, rem = divmod(residual[pivot], row[pivot])
            if rem:
                return None
            residual = [a - q * b for a, b in zip(residual, row)]
            for r, c in row_combo.items():
                combo[r] = combo.get(r, 0) + q * c
        if any(residual):
            return None
        return {r: c for r, c in combo.items() if c}


def hermite_form(rows: Sequence[Sequence[int]], order: Sequence[int] | None = None) -> HermiteBasis:
    """Row Hermite form that tracks combinations, columns taken in ``order``.

    Only the certificate path uses it; orders come from :func:`lattice_basis`.
    """
    width = len(rows[0]) if rows else 0
    order = list(range(width)) if order is None else list(order)
    active = [_Row(list(r), {n: 1}) for n, r in enumerate(rows) if any(r)]
    basis = HermiteBasis(order=order)
    pivot_rows: list[_Row] = []

    for col in order:
        live = [r for r in active if r.vec[col]]
        if not live:
            continue
        # Euclid on the column until one row is left
        while len(live) > 1:
            live.sort(key=lambda r: abs(r.vec[col]))
            head = live[0]
            for other in live[1:]:
                other.subtract(head, other.vec[col] // head.vec[col])
            live = [head] + [r for r in live[1:] if r.vec[col]]
        pivot = live[0]
        if pivot.vec[col] < 0:
            pivot.negate()
        active = [r for r in active if r is not pivot and any(r.vec)]
        for above in pivot_rows:
            above.subtract(pivot, above.vec[col] // pivot.vec[col])
        pivot_rows.append(pivot)
        basis.pivots.append(col)

    basis.rows = [r.vec for r in pivot_rows]
    basis.combinations = [r.combo for r in pivot_rows]
    return basis


def lattice_basis(
    rows: Sequence[Sequence[int]], coordinates: Sequence[int] | None = None
) -> list[list[int]]:
    """Hermite basis of the row lattice, each vector listed in ``coordinates`` order.

    sympy reduces columns, so the rows go in as the columns of the
    transpose. The last nonzero coordinate of basis vector ``n`` is its
    pivot, and it comes before the pivot of vector ``n + 1``.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    coordinates = list(range(len(rows[0]))) if coordinates is None else list(coordinates)
    transposed = DM([[row[c] for row in rows] for c in coordinates], ZZ)
    hnf = hermite_normal_form(transposed).to_Matrix().tolist()
    return [[int(x) for x in column] for column in zip(*hnf)]


def _generator_order(rows: Sequence[Sequence[int]], column: int) -> int | None:
    """Order of the unit vector at ``column`` modulo the row lattice."""
    if not rows:
        return None
    width = len(rows[0])
    coordinates = [column] + [c for c in range(width) if c != column]
    for vec in lattice_basis(rows, coordinates):
        # only a basis vector pivoting on the first coordinate lies on its axis
        if vec[0] and not any(vec[1:]):
            return abs(vec[0])
    return None


def minimal_multiple(target: int | Mapping[int, int], matrix: RelationMatrix) -> int | None:
    """Least ``m ≥ 1`` with ``m·target`` in the row span; ``None`` stands for ∞.

    An integer ``target`` is the generator ``t^target``.
    """
    if isinstance(target, int):
        return _generator_order(matrix.rows, matrix.column(target))
    vec = matrix.vector(target)
    if not any(vec):
        return 1
    # adjoin (target, -1) in a fresh last column; the order of that column is the answer
    rows = [row + [0] for row in matrix.rows] + [vec + [-1]]
    return _generator_order(rows, len(vec))


def order_with_combination(
    target: int | Mapping[int, int], matrix: RelationMatrix
) -> tuple[int | None, Combination | None]:
    """Minimal multiple of ``target`` with a row combination equal to that multiple."""
    m = minimal_multiple(target, matrix)
    if m is None:
        return None, None
    return m, extract_certificate(target, m, matrix).combination


def extract_certificate(
    target: int | Mapping[int, int], m: int, matrix: RelationMatrix
) -> Certificate:
    """Integer row combination equal to ``m·target``."""
    sparse = {target: 1} if isinstance(target, int) else {e: c for e, c in target.items() if c}
    vec = [m * a for a in matrix.vector(sparse)]
    basis = hermite_form(matrix.rows, matrix.elimination_order())
    combo = basis.contains(vec)
    if combo is None:
        raise CertificateError(f"{m}·{_describe(sparse)} is not in the span of the relations")
    return Certificate(
        m=m,
        combination=combo,
        target=sparse,
        claim=target if isinstance(target, int) else None,
    )


def _describe(target: Mapping[int, int]) -> str:
    return "(" + " + ".join(f"{c}*t^{e}" for e, c in sorted(target.items())) + ")"

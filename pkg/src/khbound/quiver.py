"""Quivers with relations attached to cyclic quotient singularities.

The weights ``(m; a_1, ..., a_d)`` determine a quiver on Z/m with arrows
``x^i_j: i -> i + a_j`` and commutativity relations between the two length-2
paths ``i -> i + a_j + a_j'``.  Pruning keeps the arrows that go up in the
ordering 0 < 1 < ... < m-1 and then drops the vertex 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence


class ValidationError(ValueError):
    """Singularity parameters violating the admissibility conditions."""


class TooSmall(ValidationError):
    pass


class RangeViolation(ValidationError):
    pass


class GcdViolation(ValidationError):
    pass


class SumViolation(ValidationError):
    pass


@dataclass(frozen=True)
class CyclicParams:
    m: int
    a: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.a)

    def canonical(self) -> "CyclicParams":
        return CyclicParams(self.m, tuple(sorted(self.a)))

    def label(self) -> str:
        return f"1/{self.m}({','.join(map(str, self.a))})"


def validate_params(m: int, a: Sequence[int]) -> CyclicParams:
    """Check the weights of a cyclic quotient singularity and freeze them.

    The weight order is kept as given; it fixes the branch indices of arrows.
    """
    a = tuple(int(x) for x in a)
    if m < 2:
        raise TooSmall(f"m = {m} must be at least 2")
    if len(a) < 2:
        raise TooSmall(f"need at least two weights, got {len(a)}")
    for j, x in enumerate(a, start=1):
        if not 0 < x < m:
            raise RangeViolation(f"a_{j} = {x} is not in the open range (0, {m})")
    for j, x in enumerate(a, start=1):
        if math.gcd(x, m) != 1:
            raise GcdViolation(f"gcd(a_{j}, m) = gcd({x}, {m}) = {math.gcd(x, m)} != 1")
    if sum(a) != m:
        raise SumViolation(f"weights sum to {sum(a)}, expected m = {m}")
    return CyclicParams(m, a)


class Stage(enum.Enum):
    FULL = "s1"
    PRUNED = "s2"
    FINAL = "s3"


class Status(enum.IntEnum):
    # ordered: statuses only ever increase under pruning
    COMMUTATIVITY = 0
    ZERO_PATH = 1
    VACUOUS = 2


@dataclass(frozen=True)
class Arrow:
    id: int
    base: int
    branch: int  # 1-based, as x^i_j
    target: int

    @property
    def name(self) -> str:
        return f"x^{self.base}_{self.branch}"


Path2 = tuple[int, int]  # arrow ids, in traversal order


@dataclass(frozen=True)
class Relation:
    """x^{i+a_j}_{j'} x^i_j = x^{i+a_j'}_j x^i_{j'} for a branch pair j < j'.

    ``left`` walks branch j then j', ``right`` walks j' then j.  ``zero_path``
    is the surviving side when exactly one side is left after pruning.
    """

    base: int
    pair: tuple[int, int]
    left: Path2
    right: Path2
    status: Status = Status.COMMUTATIVITY
    zero_path: Path2 | None = None

    def sides(self) -> tuple[Path2, ...]:
        if self.status is Status.COMMUTATIVITY:
            return (self.left, self.right)
        if self.status is Status.ZERO_PATH:
            return (self.zero_path,)
        return ()


@dataclass(frozen=True)
class QuiverWithRelations:
    params: CyclicParams
    stage: Stage
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...]
    _by_id: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {x.id: x for x in self.arrows})

    def arrow(self, arrow_id: int) -> Arrow:
        return self._by_id[arrow_id]

    def has_arrow(self, arrow_id: int) -> bool:
        return arrow_id in self._by_id

    def arrows_from(self, vertex: int) -> list[Arrow]:
        return [x for x in self.arrows if x.base == vertex]

    def live_relations(self) -> list[Relation]:
        return [r for r in self.relations if r.status is not Status.VACUOUS]

    def summary(self) -> dict:
        counts = {s.name.lower(): 0 for s in Status}
        for r in self.relations:
            counts[r.status.name.lower()] += 1
        return {
            "stage": self.stage.value,
            "vertices": len(self.vertices),
            "arrows": len(self.arrows),
            "relations": counts,
        }

    def is_acyclic(self) -> bool:
        return all(x.base < x.target for x in self.arrows)

    def to_dot(self) -> str:
        return to_dot(self)


def arrow_id(params: CyclicParams, base: int, branch: int) -> int:
    # lexicographic in (base, branch)
    return base * params.d + (branch - 1)


def build_full_quiver(params: CyclicParams) -> QuiverWithRelations:
    m, a, d = params.m, params.a, params.d
    arrows = tuple(
        Arrow(arrow_id(params, i, j), i, j, (i + a[j - 1]) % m)
        for i in range(m)
        for j in range(1, d + 1)
    )
    relations = []
    for i in range(m):
        for j in range(1, d + 1):
            for k in range(j + 1, d + 1):
                left = (arrow_id(params, i, j), arrow_id(params, (i + a[j - 1]) % m, k))
                right = (arrow_id(params, i, k), arrow_id(params, (i + a[k - 1]) % m, j))
                relations.append(Relation(i, (j, k), left, right))
    return QuiverWithRelations(params, Stage.FULL, tuple(range(m)), arrows, tuple(relations))


def _reclassify(rel: Relation, alive: set[int]) -> Relation:
    if rel.status is Status.VACUOUS:
        return rel
    left_ok = all(x in alive for x in rel.left)
    right_ok = all(x in alive for x in rel.right)
    if rel.status is Status.ZERO_PATH:
        # the already-dead side cannot come back
        if all(x in alive for x in rel.zero_path):
            return rel
        return Relation(rel.base, rel.pair, rel.left, rel.right, Status.VACUOUS)
    if left_ok and right_ok:
        return rel
    if left_ok or right_ok:
        survivor = rel.left if left_ok else rel.right
        return Relation(rel.base, rel.pair, rel.left, rel.right, Status.ZERO_PATH, survivor)
    return Relation(rel.base, rel.pair, rel.left, rel.right, Status.VACUOUS)


def prune_decreasing_arrows(q: QuiverWithRelations) -> QuiverWithRelations:
    """Drop every arrow i -> i' with i > i' (representatives 0..m-1)."""
    if q.stage is not Stage.FULL:
        raise ValueError(f"expected a stage s1 quiver, got {q.stage.value}")
    arrows = tuple(x for x in q.arrows if x.base < x.target)
    alive = {x.id for x in arrows}
    relations = tuple(_reclassify(r, alive) for r in q.relations)
    return QuiverWithRelations(q.params, Stage.PRUNED, q.vertices, arrows, relations)


def remove_vertex_zero(q: QuiverWithRelations) -> QuiverWithRelations:
    if q.stage is not Stage.PRUNED:
        raise ValueError(f"expected a stage s2 quiver, got {q.stage.value}")
    arrows = tuple(x for x in q.arrows if x.base != 0 and x.target != 0)
    alive = {x.id for x in arrows}
    relations = tuple(_reclassify(r, alive) for r in q.relations)
    vertices = tuple(v for v in q.vertices if v != 0)
    return QuiverWithRelations(q.params, Stage.FINAL, vertices, arrows, relations)


def build_quiver(params: CyclicParams) -> tuple[QuiverWithRelations, QuiverWithRelations, QuiverWithRelations]:
    """All three stages, in order."""
    full = build_full_quiver(params)
    pruned = prune_decreasing_arrows(full)
    return full, pruned, remove_vertex_zero(pruned)


def to_dot(q: QuiverWithRelations) -> str:
    lines = [f'digraph "{q.params.label()} {q.stage.value}" {{', "  rankdir=LR;"]
    for v in q.vertices:
        lines.append(f'  {v} [label="{v}"];')
    for x in sorted(q.arrows, key=lambda x: x.id):
        lines.append(f'  {x.base} -> {x.target} [label="{x.name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

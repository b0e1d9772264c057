"""Dimensions of the vertex blocks of kQ/<rho> for a pruned quiver.

Two engines compute the Cartan matrix ``C[i][j] = dim e_i (kQ/<rho>) e_j``
(paths from j to i modulo the relations):

* :func:`cartan_matrix_normal_form` orients every relation into a rewriting
  rule, checks all overlap ambiguities, and then counts irreducible paths
  with a transfer count along the (acyclic) quiver.  If the rules are not
  confluent it falls back to explicit equivalence classes over the finite
  path set (union-find).
* :func:`cartan_matrix_oracle` never rewrites: it takes quotients of vector
  spaces over Q by exact elimination, either on the literal path basis of
  each block or layer by layer through graded pieces of the algebra.

Both only ever look at the arrows and classified relations of the quiver.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .linalg import IntMatrix
from .quiver import QuiverWithRelations, Stage, Status

DEFAULT_PATH_BUDGET = 10**6

# oracle "auto" uses the literal path basis while every block stays this small
PATH_BASIS_CUTOFF = 4000


class PathBudgetExceeded(RuntimeError):
    """The instance needs more paths (or classes) than the configured cap."""


class EngineError(RuntimeError):
    pass


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)


def _require_final(q: QuiverWithRelations) -> None:
    if q.stage is not Stage.FINAL:
        raise EngineError(f"Cartan engines need the stage s3 quiver, got {q.stage.value}")
    if not q.is_acyclic():
        raise EngineError("quiver has an arrow that does not increase the vertex label")


def _out_arrows(q: QuiverWithRelations) -> dict[int, list]:
    out = defaultdict(list)
    for x in sorted(q.arrows, key=lambda x: x.id):
        out[x.base].append(x)
    return out


def count_paths(q: QuiverWithRelations, source: int) -> dict[int, int]:
    """Number of paths (ignoring relations) from ``source`` to every vertex."""
    n = defaultdict(int)
    n[source] = 1
    out = _out_arrows(q)
    for v in sorted(q.vertices):
        if n[v]:
            for x in out[v]:
                n[x.target] += n[v]
    return {v: n[v] for v in q.vertices}


def iter_paths(q: QuiverWithRelations, source: int, target: int) -> Iterator[tuple[int, ...]]:
    out = _out_arrows(q)
    # prune branches that cannot reach target: labels only increase
    stack = [(source, ())]
    while stack:
        v, word = stack.pop()
        if v == target:
            yield word
            continue
        for x in reversed(out[v]):
            if x.target <= target:
                stack.append((x.target, word + (x.id,)))


def enumerate_paths(
    q: QuiverWithRelations, source: int, target: int, budget: int = DEFAULT_PATH_BUDGET
) -> list[Path]:
    """All paths from ``source`` to ``target``, lexicographic in arrow ids."""
    _require_final(q)
    for v in (source, target):
        if v not in q.vertices:
            raise ValueError(f"vertex {v} is not in the quiver")
    total = count_paths(q, source)[target]
    if total > budget:
        raise PathBudgetExceeded(f"{total} paths from {source} to {target} exceed the budget {budget}")
    return [Path(source, target, w) for w in sorted(iter_paths(q, source, target))]


# --------------------------------------------------------------------------
# normal-form engine


class RewritingSystem:
    """Length-2 rewriting rules ``lead -> smaller`` (or ``lead -> 0``).

    Words are arrow-id tuples compared lexicographically; every rule replaces
    its left side by a strictly smaller word of the same length, so reduction
    terminates.
    """

    def __init__(self, q: QuiverWithRelations):
        self.rules: dict[tuple[int, int], tuple[int, int] | None] = {}
        self.conflicts: list[tuple[int, int]] = []
        for rel in q.live_relations():
            if rel.status is Status.COMMUTATIVITY:
                lead, rhs = max(rel.left, rel.right), min(rel.left, rel.right)
            else:
                lead, rhs = rel.zero_path, None
            if lead in self.rules and self.rules[lead] != rhs:
                self.conflicts.append(lead)
                continue
            self.rules[lead] = rhs
        self._q = q

    def normal_form(self, word: tuple[int, ...]) -> tuple[int, ...] | None:
        """Fully reduced form of ``word``; ``None`` if it reduces to zero."""
        word = tuple(word)
        while True:
            for k in range(len(word) - 1):
                pair = word[k : k + 2]
                if pair in self.rules:
                    rhs = self.rules[pair]
                    if rhs is None:
                        return None
                    word = word[:k] + rhs + word[k + 2 :]
                    break
            else:
                return word

    def ambiguities(self) -> list[tuple[int, int, int]]:
        leads_by_first = defaultdict(list)
        for lead in self.rules:
            leads_by_first[lead[0]].append(lead)
        return sorted(
            (a, b, c) for (a, b) in self.rules for (_, c) in leads_by_first.get(b, ())
        )

    def unresolved(self) -> list[tuple[int, int, int]]:
        bad = []
        for a, b, c in self.ambiguities():
            r1 = self.rules[(a, b)]
            r2 = self.rules[(b, c)]
            left = None if r1 is None else self.normal_form(r1 + (c,))
            right = None if r2 is None else self.normal_form((a,) + r2)
            if left != right:
                bad.append((a, b, c))
        return bad

    def is_confluent(self) -> bool:
        return not self.conflicts and not self.unresolved()

    def count_irreducible(self, source: int) -> dict[int, int]:
        """Irreducible paths from ``source``, per target vertex."""
        q = self._q
        out = _out_arrows(q)
        ending = defaultdict(int)  # arrow id -> irreducible paths ending with it
        incoming = defaultdict(list)
        for x in q.arrows:
            incoming[x.target].append(x)
        totals = {v: 0 for v in q.vertices}
        totals[source] = 1
        for v in sorted(q.vertices):
            if v < source:
                continue
            if v != source:
                totals[v] = sum(ending[x.id] for x in incoming[v])
            for x in out[v]:
                n = 1 if v == source else 0
                n += sum(ending[y.id] for y in incoming[v] if (y.id, x.id) not in self.rules)
                ending[x.id] = n
        return totals


def _union_find_classes(q, source, target, budget):
    """Explicit equivalence classes of paths from source to target.

    Returns ``(number of nonzero classes, least representative of each)``.
    """
    swaps = {}
    zero_words = set()
    for rel in q.live_relations():
        if rel.status is Status.COMMUTATIVITY:
            swaps.setdefault(rel.left, []).append(rel.right)
            swaps.setdefault(rel.right, []).append(rel.left)
        else:
            zero_words.add(rel.zero_path)
    paths = [p.arrows for p in enumerate_paths(q, source, target, budget)]
    index = {w: i for i, w in enumerate(paths)}
    parent = list(range(len(paths)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    zero = [False] * len(paths)
    for i, w in enumerate(paths):
        for k in range(len(w) - 1):
            pair = w[k : k + 2]
            if pair in zero_words:
                zero[i] = True
            for other in swaps.get(pair, ()):
                j = index[w[:k] + other + w[k + 2 :]]
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    dead = {find(i) for i in range(len(paths)) if zero[i]}
    reps = {}
    for i, w in enumerate(paths):
        r = find(i)
        if r not in dead and r not in reps:
            reps[r] = w  # paths are sorted, so the first hit is the least
    return len(reps), sorted(reps.values())


def class_representatives(q: QuiverWithRelations, source: int, target: int, budget: int = DEFAULT_PATH_BUDGET):
    """Lexicographically least path of every nonzero class, for reporting."""
    _require_final(q)
    return [Path(source, target, w) for w in _union_find_classes(q, source, target, budget)[1]]


def cartan_matrix_normal_form(
    q: QuiverWithRelations, path_budget: int = DEFAULT_PATH_BUDGET, method: str = "auto"
) -> IntMatrix:
    """Cartan matrix by counting normal forms.

    ``method`` is ``"rewriting"`` (requires confluent rules), ``"closure"``
    (explicit classes, subject to ``path_budget``) or ``"auto"``.
    """
    _require_final(q)
    verts = list(q.vertices)
    pos = {v: k for k, v in enumerate(verts)}
    n = len(verts)
    c = [[0] * n for _ in range(n)]
    if method == "auto":
        method = "rewriting" if RewritingSystem(q).is_confluent() else "closure"
    if method == "rewriting":
        rs = RewritingSystem(q)
        if not rs.is_confluent():
            raise EngineError("relations do not form a confluent rewriting system")
        for s in verts:
            for t, k in rs.count_irreducible(s).items():
                c[pos[t]][pos[s]] = k
    elif method == "closure":
        for s in verts:
            for t in verts:
                if t >= s:
                    c[pos[t]][pos[s]] = _union_find_classes(q, s, t, path_budget)[0]
    else:
        raise ValueError(f"unknown method {method!r}")
    return IntMatrix(c, ncols=n)


# --------------------------------------------------------------------------
# linear-algebra oracle


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return Fraction(a) / b


def _eliminate_into(piv: dict[int, dict], r: dict) -> None:
    """Reduce sparse row ``r`` against ``piv`` and add it if independent.

    Pivot rows are keyed by their largest column, whose coefficient is 1.
    """
    while r:
        hit = [p for p in r if p in piv]
        if not hit:
            break
        p = max(hit)
        c = r[p]
        for g, x in piv[p].items():
            y = r.get(g, 0) - c * x
            if y:
                r[g] = y
            else:
                del r[g]
    if r:
        p = max(r)
        lead = r[p]
        if lead == 1:
            piv[p] = r
        elif lead == -1:
            piv[p] = {g: -x for g, x in r.items()}
        else:
            piv[p] = {g: _div(x, lead) for g, x in r.items()}


def _back_substitute(piv: dict[int, dict]) -> None:
    # smallest pivot first: every other entry of a row lies below its pivot
    for p in sorted(piv):
        r = piv[p]
        for h in [h for h in r if h != p and h in piv]:
            c = r.pop(h)
            for g, x in piv[h].items():
                if g != h:
                    y = r.get(g, 0) - c * x
                    if y:
                        r[g] = y
                    else:
                        del r[g]


def _reduced_echelon(rows: list[dict[int, int]]) -> dict[int, dict]:
    """Fully reduced row echelon form of sparse rows over Q, keyed by pivot."""
    piv: dict[int, dict] = {}
    for row in rows:
        _eliminate_into(piv, {g: x for g, x in row.items() if x})
    _back_substitute(piv)
    return piv


def _rank(rows: list[dict[int, int]]) -> int:
    return len(_reduced_echelon(rows))


def _oracle_paths(q, path_budget):
    verts = list(q.vertices)
    pos = {v: k for k, v in enumerate(verts)}
    n = len(verts)
    c = [[0] * n for _ in range(n)]
    live = q.live_relations()
    for s in verts:
        for t in verts:
            if t < s:
                continue
            basis = {p.arrows: k for k, p in enumerate(enumerate_paths(q, s, t, path_budget))}
            rows = []
            for rel in live:
                sides = rel.sides()
                v0 = rel.base
                end = q.arrow(sides[0][1]).target
                if v0 < s or end > t:
                    continue
                signs = (1, -1) if len(sides) == 2 else (1,)
                for u in iter_paths(q, s, v0):
                    for w in iter_paths(q, end, t):
                        vec = {}
                        for sign, side in zip(signs, sides):
                            k = basis[u + side + w]
                            vec[k] = vec.get(k, 0) + sign
                        rows.append(vec)
            c[pos[t]][pos[s]] = len(basis) - _rank(rows)
    return IntMatrix(c, ncols=n)


def _interval_signature(q: QuiverWithRelations, lo: int, hi: int) -> tuple[frozenset, frozenset]:
    """Arrows and live relations of the full subquiver on [lo, hi], shifted to start at 0."""
    inside = {x.id for x in q.arrows if lo <= x.base and x.target <= hi}

    def key(arrow_id):
        x = q.arrow(arrow_id)
        return (x.base - lo, x.branch)

    arrows = frozenset((q.arrow(i).base - lo, q.arrow(i).target - lo, q.arrow(i).branch) for i in inside)
    rels = frozenset(
        (rel.base - lo, rel.status, tuple(tuple(key(i) for i in side) for side in rel.sides()))
        for rel in q.live_relations()
        if all(i in inside for side in rel.sides() for i in side)
    )
    return arrows, rels


def _shift_isomorphic(q: QuiverWithRelations, s: int, first: int) -> bool:
    top = max(q.vertices)
    return _interval_signature(q, s, top) == _interval_signature(q, first, top - s + first)


def _oracle_layered(q, path_budget):
    """Build each projective e_? A e_s one path length at a time.

    Piece (deg, v) is spanned by pairs (basis element b of the piece one
    arrow shorter, arrow x into v), modulo [b' . y] . z - [b' . y'] . z' for
    every relation y z = y' z' (or y z = 0) ending at v.  The grading is the
    branch multiset of a path when every relation is homogeneous for it, and
    plain path length otherwise.
    """
    live = q.live_relations()
    multigraded = all(
        sorted(q.arrow(x).branch for x in rel.left) == sorted(q.arrow(x).branch for x in rel.right)
        for rel in live
        if rel.status is Status.COMMUTATIVITY
    )
    # a multidegree is packed as base-m digits: a path has fewer than m arrows
    radix = q.params.m
    if multigraded:
        deg = {x.id: radix ** (x.branch - 1) for x in q.arrows}
    else:
        deg = {x.id: 1 for x in q.arrows}

    out = _out_arrows(q)
    rel_by_end = defaultdict(list)
    for rel in live:
        sides = rel.sides()
        rdeg = deg[sides[0][0]] + deg[sides[0][1]]
        signs = (1, -1) if len(sides) == 2 else (1,)
        terms = tuple((sign, y, z, deg[y], q.arrow(y).target) for sign, (y, z) in zip(signs, sides))
        rel_by_end[q.arrow(sides[0][1]).target].append((rel.base, rdeg, terms))

    verts = list(q.vertices)
    pos = {v: k for k, v in enumerate(verts)}
    n = len(verts)
    c = [[0] * n for _ in range(n)]
    out_pairs = {v: [(deg[x.id], x.target, x.id) for x in xs] for v, xs in out.items()}
    first = verts[0] if verts else None
    for s in verts:
        if s != first and _shift_isomorphic(q, s, first):
            # e_t A e_s only sees the full subquiver on [s, t]
            for t in verts:
                if t >= s:
                    c[pos[t]][pos[s]] = c[pos[t - s + first]][pos[first]]
            continue
        # piece key (deg, vertex) -> (dim, {(b, arrow id): ((k, coef), ...)})
        older: dict = {}
        prev = {(0, s): (1, None)}
        c[pos[s]][pos[s]] += 1
        while prev:
            gens: dict = {}
            for (dg, v), (dim, _) in prev.items():
                for xdeg, xt, xid in out_pairs.get(v, ()):
                    key = (dg + xdeg, xt)
                    g = gens.get(key)
                    if g is None:
                        g = gens[key] = {}
                    for b in range(dim):
                        g[(b, xid)] = len(g)
            layer = {}
            col = pos
            for key, g in gens.items():
                dg, t = key
                piv: dict = {}
                for base, rdeg, terms in rel_by_end.get(t, ()):
                    below = older.get((dg - rdeg, base))
                    if below is None:
                        continue
                    mids = [(sign, z, prev[(dg - rdeg + ydeg, ymid)][1], y) for sign, y, z, ydeg, ymid in terms]
                    for b in range(below[0]):
                        r = {}
                        for sign, z, mid, y in mids:
                            for k, coef in mid[(b, y)]:
                                gi = g[(k, z)]
                                x = r.get(gi, 0) + sign * coef
                                if x:
                                    r[gi] = x
                                else:
                                    del r[gi]
                        _eliminate_into(piv, r)
                _back_substitute(piv)
                dim = len(g) - len(piv)
                if not dim:
                    continue
                bpos = {}
                for i in range(len(g)):
                    if i not in piv:
                        bpos[i] = len(bpos)
                red = {}
                for gen, i in g.items():
                    if i in bpos:
                        red[gen] = ((bpos[i], 1),)
                    else:
                        red[gen] = tuple((bpos[h], -x) for h, x in piv[i].items() if h != i)
                layer[key] = (dim, red)
                c[col[t]][col[s]] += dim
                if c[col[t]][col[s]] > path_budget:
                    raise PathBudgetExceeded(f"block {s} -> {t} exceeds the budget {path_budget}")
            older, prev = prev, layer
    return IntMatrix(c, ncols=n)


def cartan_matrix_oracle(
    q: QuiverWithRelations, path_budget: int = DEFAULT_PATH_BUDGET, method: str = "auto"
) -> IntMatrix:
    """Cartan matrix as (basis size - rank of the relation span) over Q.

    ``method="paths"`` uses the literal path basis of every block and all
    two-sided multiples u.r.v of the relations; ``"layered"`` builds graded
    pieces of the algebra inductively and never lists paths.  ``"auto"``
    picks the path basis whenever every block has at most
    ``PATH_BASIS_CUTOFF`` paths.
    """
    _require_final(q)
    if method == "auto":
        largest = max((max(count_paths(q, s).values()) for s in q.vertices), default=0)
        method = "paths" if largest <= min(PATH_BASIS_CUTOFF, path_budget) else "layered"
    if method == "paths":
        return _oracle_paths(q, path_budget)
    if method == "layered":
        return _oracle_layered(q, path_budget)
    raise ValueError(f"unknown method {method!r}")

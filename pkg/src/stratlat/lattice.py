"""Finite complete lattices, maps between them, and Galois pairs.

Elements are addressed by index ``0..n-1``; labels exist for I/O only.
Orders are dense boolean matrices (``leq[i][j]`` iff ``i <= j``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import CycleError, NotALattice, NotMonotone, NotProjection

Matrix = tuple[tuple[bool, ...], ...]


class Verdict(NamedTuple):
    """A yes/no answer plus the first counterexample found (``None`` on yes)."""

    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


YES = Verdict(True, None)


def transitive_closure(n: int, pairs: Iterable[tuple[int, int]], reflexive=True) -> list[list[bool]]:
    rel = [[False] * n for _ in range(n)]
    if reflexive:
        for i in range(n):
            rel[i][i] = True
    for a, b in pairs:
        rel[a][b] = True
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return rel


def freeze(rel) -> Matrix:
    return tuple(tuple(bool(v) for v in row) for row in rel)


def _bound_table(n, leq, upper):
    """Least upper (or greatest lower) bound of every pair; raises on a missing one."""
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if upper:
                bounds = [k for k in range(n) if leq[i][k] and leq[j][k]]
                best = [b for b in bounds if all(leq[b][c] for c in bounds)]
            else:
                bounds = [k for k in range(n) if leq[k][i] and leq[k][j]]
                best = [b for b in bounds if all(leq[c][b] for c in bounds)]
            if not best:
                yield_kind = "join" if upper else "meet"
                raise NotALattice(f"no {yield_kind} for pair", witness=(i, j, yield_kind))
            table[i][j] = table[j][i] = best[0]
    return tuple(tuple(row) for row in table)


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    labels: tuple[str, ...]
    leq: Matrix
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    @classmethod
    def from_matrix(cls, labels: Sequence, leq) -> "FiniteLattice":
        labels = tuple(str(x) for x in labels)
        n = len(labels)
        if n == 0:
            raise NotALattice("a lattice needs at least one element")
        if len(set(labels)) != n:
            raise ValueError("duplicate element labels")
        leq = freeze(leq)
        for i in range(n):
            if not leq[i][i]:
                raise ValueError(f"order is not reflexive at {labels[i]!r}")
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise CycleError(
                        f"antisymmetry violated by {labels[i]!r} and {labels[j]!r}",
                        witness=(labels[i], labels[j]),
                    )
                if leq[i][j]:
                    for k in range(n):
                        if leq[j][k] and not leq[i][k]:
                            raise ValueError("order is not transitive")
        try:
            join = _bound_table(n, leq, upper=True)
            meet = _bound_table(n, leq, upper=False)
        except NotALattice as exc:
            i, j, kind = exc.witness
            raise NotALattice(
                f"{labels[i]!r} and {labels[j]!r} have no {kind}",
                witness=(labels[i], labels[j], kind),
            ) from None
        bottom = top = 0
        for k in range(1, n):
            bottom = meet[bottom][k]
            top = join[top][k]
        return cls(labels, leq, meet, join, bottom, top)

    # -- basic access -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown element {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def join(self, i: int, j: int) -> int:
        return self.join_table[i][j]

    def join_all(self, subset: Iterable[int]) -> int:
        acc = self.bottom
        for x in subset:
            acc = self.join_table[acc][x]
        return acc

    def meet_all(self, subset: Iterable[int]) -> int:
        acc = self.top
        for x in subset:
            acc = self.meet_table[acc][x]
        return acc

    def upset(self, x: int) -> list[int]:
        return [y for y in self.elements if self.leq[x][y]]

    def downset(self, x: int) -> list[int]:
        return [y for y in self.elements if self.leq[y][x]]

    def is_chain(self) -> bool:
        return all(self.leq[i][j] or self.leq[j][i] for i in self.elements for j in self.elements)

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i in self.elements:
            for j in self.elements:
                if self.lt(i, j) and not any(self.lt(i, k) and self.lt(k, j) for k in self.elements):
                    out.append((i, j))
        return out

    def dual(self) -> "FiniteLattice":
        leq = tuple(tuple(self.leq[j][i] for j in self.elements) for i in self.elements)
        return FiniteLattice(self.labels, leq, self.join_table, self.meet_table, self.top, self.bottom)

    def induced(self, subset: Iterable[int]) -> tuple["FiniteLattice", list[int]]:
        """Subposet on ``subset`` as a lattice, plus the index map back into ``self``.

        Meets and joins are recomputed inside the subposet, so they need not
        agree with those of ``self``.
        """
        members = sorted(set(subset))
        leq = [[self.leq[a][b] for b in members] for a in members]
        return FiniteLattice.from_matrix([self.labels[a] for a in members], leq), members

    def relabel(self, labels: Sequence) -> "FiniteLattice":
        labels = tuple(str(x) for x in labels)
        if len(labels) != self.n or len(set(labels)) != self.n:
            raise ValueError("relabel needs one fresh label per element")
        return FiniteLattice(labels, self.leq, self.meet_table, self.join_table, self.bottom, self.top)

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.labels == other.labels and self.leq == other.leq

    def __hash__(self):
        return hash((self.labels, self.leq))

    def __repr__(self):
        return f"FiniteLattice({list(self.labels)!r})"

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        """Canonical form: labels sorted, full reflexive order in lexicographic order."""
        labs = sorted(self.labels)
        pairs = sorted(
            (self.labels[i], self.labels[j]) for i in self.elements for j in self.elements if self.leq[i][j]
        )
        return {"elements": labs, "leq": [list(p) for p in pairs]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteLattice":
        return validate_lattice(data["elements"], data.get("leq", []))


def validate_lattice(elements: Sequence, leq_pairs: Iterable[Sequence]) -> FiniteLattice:
    """Close ``leq_pairs`` reflexively and transitively and build the lattice.

    Raises ``CycleError`` when the closure is not antisymmetric and
    ``NotALattice`` naming a pair without a meet or join.
    """
    labels = [str(e) for e in elements]
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise ValueError("duplicate element labels")
    pairs = []
    for pair in leq_pairs:
        a, b = (str(v) for v in pair)
        if a not in index or b not in index:
            raise KeyError(f"pair ({a!r}, {b!r}) mentions an undeclared element")
        pairs.append((index[a], index[b]))
    return FiniteLattice.from_matrix(labels, transitive_closure(len(labels), pairs))


def join_all(lattice: FiniteLattice, subset: Iterable[int]) -> int:
    return lattice.join_all(subset)


def meet_all(lattice: FiniteLattice, subset: Iterable[int]) -> int:
    return lattice.meet_all(subset)


def chain(labels: Sequence) -> FiniteLattice:
    labels = list(labels)
    return validate_lattice(labels, zip(labels, labels[1:]))


def product(a: FiniteLattice, b: FiniteLattice, sep=",") -> FiniteLattice:
    cells = [(i, j) for i in a.elements for j in b.elements]
    labels = [f"{a.labels[i]}{sep}{b.labels[j]}" for i, j in cells]
    leq = [[a.leq[i][k] and b.leq[j][l] for (k, l) in cells] for (i, j) in cells]
    return FiniteLattice.from_matrix(labels, leq)


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True, eq=False)
class LatticeMap:
    source: FiniteLattice
    target: FiniteLattice
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.n:
            raise ValueError("map table must be total on the source")
        if any(not 0 <= v < self.target.n for v in self.table):
            raise ValueError("map table has values outside the target")

    @classmethod
    def from_labels(cls, source, target, mapping: dict) -> "LatticeMap":
        missing = [lab for lab in source.labels if lab not in {str(k) for k in mapping}]
        if missing:
            raise ValueError(f"map is not total; missing {missing}")
        m = {str(k): str(v) for k, v in mapping.items()}
        return cls(source, target, tuple(target.index(m[lab]) for lab in source.labels))

    @classmethod
    def identity(cls, lattice: FiniteLattice) -> "LatticeMap":
        return cls(lattice, lattice, tuple(lattice.elements))

    def __call__(self, x: int) -> int:
        return self.table[x]

    def compose(self, inner: "LatticeMap") -> "LatticeMap":
        """``self ∘ inner``."""
        if inner.target is not self.source and inner.target != self.source:
            raise ValueError("maps do not compose")
        return LatticeMap(inner.source, self.target, tuple(self.table[v] for v in inner.table))

    def image(self) -> set[int]:
        return set(self.table)

    def fiber(self, y: int) -> list[int]:
        return [x for x in self.source.elements if self.table[x] == y]

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.n

    def is_monotone(self) -> Verdict:
        s, t = self.source, self.target
        for x in s.elements:
            for y in s.elements:
                if s.leq[x][y] and not t.leq[self.table[x]][self.table[y]]:
                    return Verdict(False, (s.labels[x], s.labels[y]))
        return YES

    def as_dict(self) -> dict[str, str]:
        return {self.source.labels[x]: self.target.labels[v] for x, v in enumerate(self.table)}

    def __eq__(self, other):
        if not isinstance(other, LatticeMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"LatticeMap({self.as_dict()!r})"


@dataclass(frozen=True)
class GaloisPair:
    """``upper`` is h: L' -> L, ``lower`` is k: L -> L'."""

    upper: LatticeMap
    lower: LatticeMap

    @property
    def is_projection_pair(self) -> bool:
        h, k = self.upper, self.lower
        return all(h(k(x)) == x for x in h.target.elements)


def _require_monotone(h: LatticeMap):
    v = h.is_monotone()
    if not v:
        raise NotMonotone(f"map is not monotone at {v.witness}", witness=v.witness)


def projection_adjoint(h: LatticeMap) -> GaloisPair:
    """Compute the embedding paired with the projection ``h``.

    The candidate lower adjoint sends x to the meet of all y with x <= h(y).
    Succeeds iff h∘k is the identity and k∘h lies below the identity.
    """
    _require_monotone(h)
    src, tgt = h.source, h.target
    k = tuple(src.meet_all(y for y in src.elements if tgt.leq[x][h(y)]) for x in tgt.elements)
    for x in tgt.elements:
        if h(k[x]) != x:
            raise NotProjection(
                f"h(k({tgt.labels[x]})) = {tgt.labels[h(k[x])]} is not {tgt.labels[x]}",
                witness=("h∘k = id", tgt.labels[x]),
            )
    for y in src.elements:
        if not src.leq[k[h(y)]][y]:
            raise NotProjection(
                f"k(h({src.labels[y]})) is not below {src.labels[y]}",
                witness=("k∘h <= id", src.labels[y]),
            )
    return GaloisPair(h, LatticeMap(tgt, src, k))


def is_locally_completely_additive(h: LatticeMap) -> Verdict:
    """Every nonempty fiber of ``h`` contains its own join.

    Enough for all subsets Y with h(Y) = {x}: such Y sits inside the fiber
    F of x, so y0 <= join(Y) <= join(F) for any y0 in Y and monotonicity
    squeezes h(join(Y)) to x.
    """
    _require_monotone(h)
    src, tgt = h.source, h.target
    for x in sorted(h.image()):
        top = src.join_all(h.fiber(x))
        if h(top) != x:
            return Verdict(False, (tgt.labels[x], src.labels[top], tgt.labels[h(top)]))
    return YES


def is_completely_additive(h: LatticeMap) -> Verdict:
    """h(bottom) = bottom and h(x ∨ y) = h(x) ∨ h(y) for all pairs.

    Every finite join is a fold of binary joins starting from bottom, so
    these cases cover all subsets.
    """
    _require_monotone(h)
    src, tgt = h.source, h.target
    if h(src.bottom) != tgt.bottom:
        return Verdict(False, ("bottom", src.labels[src.bottom], tgt.labels[h(src.bottom)]))
    for x in src.elements:
        for y in src.elements:
            if h(src.join(x, y)) != tgt.join(h(x), h(y)):
                return Verdict(False, (src.labels[x], src.labels[y]))
    return YES


def preserves_all_infima(h: LatticeMap) -> Verdict:
    """Dual of :func:`is_completely_additive`: top and pairwise meets."""
    _require_monotone(h)
    src, tgt = h.source, h.target
    if h(src.top) != tgt.top:
        return Verdict(False, ("top", src.labels[src.top], tgt.labels[h(src.top)]))
    for x in src.elements:
        for y in src.elements:
            if h(src.meet(x, y)) != tgt.meet(h(x), h(y)):
                return Verdict(False, (src.labels[x], src.labels[y]))
    return YES


def dual_map(h: LatticeMap) -> LatticeMap:
    """The same table viewed between the dual lattices."""
    return LatticeMap(h.source.dual(), h.target.dual(), h.table)

"""Inverse systems of finite lattices, their limits, and the representation round trip."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InternalError, IsoFailure, NotAModel, NotCoherent, NotProjection
from .lattice import (
    FiniteLattice,
    LatticeMap,
    Verdict,
    is_completely_additive,
    is_locally_completely_additive,
    projection_adjoint,
)
from .stratified import (
    StratifiedLattice,
    check_axiom,
    check_axioms,
    is_strong,
)


@dataclass(frozen=True, eq=False)
class InverseSystem:
    """Lattices ``tower[0..D]`` with projections ``maps[(a, b)]: tower[a] -> tower[b]`` for b < a."""

    tower: tuple[FiniteLattice, ...]
    maps: dict
    embeddings: dict

    @property
    def depth(self) -> int:
        return len(self.tower) - 1

    def h(self, a: int, b: int) -> LatticeMap:
        if a == b:
            return LatticeMap.identity(self.tower[a])
        return self.maps[(a, b)]

    def k(self, b: int, a: int) -> LatticeMap:
        """Embedding tower[b] -> tower[a] for b <= a."""
        if a == b:
            return LatticeMap.identity(self.tower[a])
        return self.embeddings[(a, b)]

    def to_json(self) -> dict:
        return {
            "tower": [L.to_json() for L in self.tower],
            "maps": [
                {"from": a, "to": a - 1, "table": self.maps[(a, a - 1)].as_dict()}
                for a in range(1, len(self.tower))
            ],
        }


def validate_system(tower: Sequence[FiniteLattice], maps) -> InverseSystem:
    """Check and complete an inverse system.

    ``maps`` is either a list whose i-th entry maps tower[i+1] onto tower[i],
    or a dict keyed by (from, to) level pairs.  Missing composites are
    derived from consecutive maps; supplied ones are checked against them.
    Every map must be a projection.
    """
    tower = tuple(tower)
    D = len(tower) - 1
    if isinstance(maps, dict):
        given = dict(maps)
    else:
        maps = list(maps)
        if len(maps) != D:
            raise ValueError(f"expected {D} consecutive maps, got {len(maps)}")
        given = {(a + 1, a): m for a, m in enumerate(maps)}
    for (a, b), m in given.items():
        if not 0 <= b < a <= D:
            raise ValueError(f"map key ({a}, {b}) is not a downward level pair")
        if m.source != tower[a] or m.target != tower[b]:
            raise ValueError(f"map ({a}, {b}) does not go from tower[{a}] to tower[{b}]")
    for a in range(1, D + 1):
        if (a, a - 1) not in given:
            raise ValueError(f"consecutive map ({a}, {a - 1}) is missing")
    full = {}
    for a in range(1, D + 1):
        full[(a, a - 1)] = given[(a, a - 1)]
        for b in range(a - 2, -1, -1):
            full[(a, b)] = full[(b + 1, b)].compose(full[(a, b + 1)])
    for key, m in given.items():
        if m.table != full[key].table:
            x = next(i for i in m.source.elements if m.table[i] != full[key].table[i])
            raise NotCoherent(
                f"map {key} disagrees with the composite of consecutive maps at {m.source.labels[x]}",
                witness=(key, m.source.labels[x]),
            )
    embeddings = {}
    for key, m in full.items():
        try:
            embeddings[key] = projection_adjoint(m).lower
        except NotProjection as exc:
            raise NotProjection(f"map {key} is not a projection: {exc}", witness=(key, exc.witness)) from None
    return InverseSystem(tower, full, embeddings)


@dataclass(frozen=True, eq=False)
class LimitModel:
    system: InverseSystem
    model: StratifiedLattice
    tuples: tuple[tuple[int, ...], ...]
    h_inf: tuple[LatticeMap, ...]
    k_inf: tuple[LatticeMap, ...]

    @property
    def lattice(self) -> FiniteLattice:
        return self.model.lattice

    def index_of(self, components: Sequence[int]) -> int:
        return self.tuples.index(tuple(components))


def _tuple_label(system, t):
    return "(" + ",".join(system.tower[a].labels[v] for a, v in enumerate(t)) + ")"


def build_limit(system: InverseSystem) -> LimitModel:
    """Compatible tuples, ordered pointwise, with level-α comparison of component α.

    A compatible tuple is determined by its top component, so the elements
    are enumerated from tower[D].  Joins come from an upper-bound scan since
    they need not be pointwise.
    """
    D = system.depth
    top = system.tower[D]
    tuples = tuple(tuple(system.h(D, b)(x) for b in range(D + 1)) for x in top.elements)
    leq = [[all(system.tower[a].leq[s[a]][t[a]] for a in range(D + 1)) for t in tuples] for s in tuples]
    lattice = FiniteLattice.from_matrix([_tuple_label(system, t) for t in tuples], leq)
    rels = []
    for a in range(D + 1):
        La = system.tower[a]
        rels.append(
            tuple(
                tuple(La.leq[s[a]][t[a]] and s[:a] == t[:a] for t in tuples)
                for s in tuples
            )
        )
    model = StratifiedLattice(lattice, tuple(rels))
    h_inf = tuple(LatticeMap(lattice, system.tower[a], tuple(t[a] for t in tuples)) for a in range(D + 1))
    index = {t: i for i, t in enumerate(tuples)}
    k_inf = []
    for a in range(D + 1):
        table = []
        for x in system.tower[a].elements:
            t = tuple(system.h(a, b)(x) if b <= a else system.k(a, b)(x) for b in range(D + 1))
            if t not in index:
                raise InternalError(f"embedding of level {a} left the limit", witness=(a, x))
            table.append(index[t])
        k_inf.append(LatticeMap(system.tower[a], lattice, tuple(table)))
    return LimitModel(system, model, tuples, h_inf, tuple(k_inf))


@dataclass(frozen=True)
class LimitClassification:
    kind: str  # from map additivity: strong | model | neither
    axiom_kind: str  # from the axioms on the limit: strong | model | neither
    map_reports: dict = field(default_factory=dict)
    failing_axiom: object = None

    @property
    def agrees(self) -> bool:
        return self.kind == self.axiom_kind


def classify_limit(system: InverseSystem) -> LimitClassification:
    """Classify by the additivity of every tower map, then cross-check on the built limit."""
    reports = {}
    local = complete = True
    for key in sorted(system.maps):
        m = system.maps[key]
        lv, cv = is_locally_completely_additive(m), is_completely_additive(m)
        reports[key] = {"local": lv, "complete": cv}
        local &= lv.holds
        complete &= cv.holds
    kind = "strong" if complete else "model" if local else "neither"
    limit = build_limit(system).model
    model_reports = check_axioms(limit, "model")
    failing = next((r for r in model_reports if not r.holds), None)
    if failing is not None:
        axiom_kind = "neither"
    else:
        a4s = check_axiom(limit, "A4*")
        axiom_kind = "strong" if a4s.holds else "model"
        if not a4s.holds:
            failing = a4s
    return LimitClassification(kind, axiom_kind, reports, failing)


def decompose(M: StratifiedLattice) -> InverseSystem:
    """Tower L|_0 ⊆ L|_1 ⊆ ... ⊆ L|_D = M with maps x ↦ x|_(α-1).

    Each level is the induced subposet.  Its joins are checked to be the
    restricted joins of M.
    """
    reports = check_axioms(M, "model")
    bad = next((r for r in reports if not r.holds), None)
    if bad is not None:
        raise NotAModel(f"input is not a model: {bad}", witness=(bad.axiom, bad.witness))
    L = M.lattice
    tower, members = [], []
    for a in M.levels:
        sub, idx = L.induced(M.image(a))
        r = M.restriction(a)
        for i, u in enumerate(idx):
            for j, v in enumerate(idx):
                if idx[sub.join(i, j)] != r[L.join(u, v)]:
                    raise InternalError(f"join in level {a} is not the restricted join", witness=(a, u, v))
        tower.append(sub)
        members.append(idx)
    maps = []
    for a in range(1, len(tower)):
        r = M.restriction(a - 1)
        pos = {u: i for i, u in enumerate(members[a - 1])}
        maps.append(LatticeMap(tower[a], tower[a - 1], tuple(pos[r[u]] for u in members[a])))
    return validate_system(tower, maps)


# ---------------------------------------------------------------------------
# isomorphisms


def _relations(S: StratifiedLattice, depth: int):
    return [S.lattice.leq] + [S.sq_matrix(a) for a in range(depth + 1)]


def check_stratified_map(S: StratifiedLattice, T: StratifiedLattice, table: Sequence[int]) -> Verdict:
    """Is ``table`` a bijection S -> T preserving and reflecting <= and every ⊑_α?"""
    if len(table) != S.n or sorted(table) != list(range(T.n)):
        return Verdict(False, ("not a bijection",))
    depth = max(S.depth, T.depth)
    names = ["<="] + [f"⊑_{a}" for a in range(depth + 1)]
    for name, rs, rt in zip(names, _relations(S, depth), _relations(T, depth)):
        for x in S.elements:
            for y in S.elements:
                if rs[x][y] != rt[table[x]][table[y]]:
                    return Verdict(False, (name, S.lattice.labels[x], S.lattice.labels[y]))
    return Verdict(True)


def find_isomorphism(S: StratifiedLattice, T: StratifiedLattice):
    """Some stratified isomorphism S -> T as a table, or None.  Backtracking with degree signatures."""
    if S.n != T.n:
        return None
    depth = max(S.depth, T.depth)
    rs, rt = _relations(S, depth), _relations(T, depth)

    def sig(rel, x, n):
        return tuple((sum(r[x][y] for y in range(n)), sum(r[y][x] for y in range(n))) for r in rel)

    sig_s = [sig(rs, x, S.n) for x in S.elements]
    sig_t = [sig(rt, y, T.n) for y in T.elements]
    if sorted(sig_s) != sorted(sig_t):
        return None
    order = sorted(S.elements, key=lambda x: sig_s[x])
    table = [-1] * S.n
    used = [False] * T.n

    def extend(k):
        if k == len(order):
            return True
        x = order[k]
        for y in T.elements:
            if used[y] or sig_t[y] != sig_s[x]:
                continue
            ok = all(
                r1[x][x2] == r2[y][table[x2]] and r1[x2][x] == r2[table[x2]][y]
                for x2 in order[:k]
                for r1, r2 in zip(rs, rt)
            )
            if ok:
                table[x], used[y] = y, True
                if extend(k + 1):
                    return True
                table[x], used[y] = -1, False
        return False

    return tuple(table) if extend(0) else None


def find_lattice_isomorphism(A: FiniteLattice, B: FiniteLattice):
    from .stratified import StratifiedLattice

    return find_isomorphism(StratifiedLattice(A, ()), StratifiedLattice(B, ()))


@dataclass(frozen=True, eq=False)
class Representation:
    system: InverseSystem
    limit: LimitModel
    table: tuple[int, ...]  # model element -> limit element

    def rows(self, M: StratifiedLattice) -> list[tuple[str, str]]:
        return [(M.lattice.labels[x], self.limit.lattice.labels[self.table[x]]) for x in M.elements]


def representation_isomorphism(M: StratifiedLattice) -> Representation:
    """Verify that x ↦ (x|_0, ..., x|_D) is a stratified isomorphism onto the limit of the decomposition."""
    system = decompose(M)
    limit = build_limit(system)
    positions = [{u: i for i, u in enumerate(M.image(a))} for a in M.levels]
    index = {t: i for i, t in enumerate(limit.tuples)}
    table = []
    for x in M.elements:
        t = tuple(positions[a][M.restriction(a)[x]] for a in M.levels)
        if t not in index:
            raise IsoFailure(f"{M.lattice.labels[x]} maps outside the limit", witness=(M.lattice.labels[x],))
        table.append(index[t])
    verdict = check_stratified_map(M, limit.model, table)
    if not verdict:
        raise IsoFailure(f"mediating map is not an isomorphism: {verdict.witness}", witness=verdict.witness)
    if is_strong(M):
        for key, m in system.maps.items():
            v = is_completely_additive(m)
            if not v:
                raise IsoFailure(f"strong model but tower map {key} is not completely additive", witness=(key, v.witness))
    return Representation(system, limit, tuple(table))

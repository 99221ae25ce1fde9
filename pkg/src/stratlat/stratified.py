"""Stratified complete lattices: axiom checkers, restrictions, and the lexicographic order.

A stratification of depth ``D`` stores preorders for levels ``0..D-1``.  Every
level from ``D`` on is the identity relation, so all quantification over
levels stops at ``D`` (the first identity level is the only one that can
still constrain anything).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .errors import A3dFails, NotAModel, PreconditionViolated
from .lattice import FiniteLattice, Matrix, freeze, transitive_closure

SUITES = {
    "model": ("A1", "A2", "A3", "A4", "A5", "A6"),
    "strong": ("A1", "A2", "A3", "A4", "A4*", "A5", "A6"),
    "dual": ("A3d", "A4d", "A4*d", "A5d"),
    "symmetric": ("A1", "A2", "A3", "A4", "A5", "A6", "A3d", "A4d", "A5d"),
    "B": ("C", "B1", "B2", "B3", "B4", "D"),
}
ALL_AXIOMS = (
    "A1", "A2", "A3", "A4", "A4*", "A5", "A6",
    "A3d", "A4d", "A4*d", "A5d",
    "B1", "B2", "B2*", "B3", "B4", "C", "D",
)


@dataclass(frozen=True, eq=False)
class StratifiedLattice:
    lattice: FiniteLattice
    preorders: tuple[Matrix, ...]

    def __post_init__(self):
        n = self.lattice.n
        for a, rel in enumerate(self.preorders):
            if len(rel) != n or any(len(row) != n for row in rel):
                raise ValueError(f"preorder {a} has the wrong shape")
            for i in range(n):
                if not rel[i][i]:
                    raise ValueError(f"preorder {a} is not reflexive")
                for j in range(n):
                    if rel[i][j] and any(rel[j][k] and not rel[i][k] for k in range(n)):
                        raise ValueError(f"preorder {a} is not transitive")

    @property
    def depth(self) -> int:
        return len(self.preorders)

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def elements(self) -> range:
        return self.lattice.elements

    @property
    def levels(self) -> range:
        """All levels that need checking: ``0..D`` inclusive."""
        return range(self.depth + 1)

    @cached_property
    def _identity(self) -> Matrix:
        n = self.n
        return tuple(tuple(i == j for j in range(n)) for i in range(n))

    def sq_matrix(self, alpha: int) -> Matrix:
        return self.preorders[alpha] if alpha < self.depth else self._identity

    def sq(self, alpha: int, x: int, y: int) -> bool:
        if alpha >= self.depth:
            return x == y
        return self.preorders[alpha][x][y]

    @cached_property
    def _eq(self) -> tuple[Matrix, ...]:
        out = []
        for rel in self.preorders:
            out.append(tuple(tuple(rel[i][j] and rel[j][i] for j in self.elements) for i in self.elements))
        out.append(self._identity)
        return tuple(out)

    def eq(self, alpha: int, x: int, y: int) -> bool:
        if alpha >= self.depth:
            return x == y
        return self._eq[alpha][x][y]

    def prefix_eq(self, alpha: int, x: int, y: int) -> bool:
        """x =_β y for every β < alpha."""
        return all(self._eq[b][x][y] for b in range(min(alpha, self.depth + 1)))

    def classes(self, alpha: int) -> list[list[int]]:
        seen, out = set(), []
        for x in self.elements:
            if x not in seen:
                cls = [y for y in self.elements if self.eq(alpha, x, y)]
                seen.update(cls)
                out.append(cls)
        return out

    def class_of(self, alpha: int, x: int) -> list[int]:
        return [y for y in self.elements if self.eq(alpha, x, y)]

    def up_alpha(self, alpha: int, x: int) -> list[int]:
        return [z for z in self.elements if self.sq(alpha, x, z)]

    def down_alpha(self, alpha: int, x: int) -> list[int]:
        return [z for z in self.elements if self.sq(alpha, z, x)]

    # -- restriction ----------------------------------------------------

    @cached_property
    def _restriction_tables(self) -> tuple:
        """Per level: the table of class meets, or the first failing element."""
        L = self.lattice
        out = []
        for a in self.levels:
            table = []
            for x in self.elements:
                m = L.meet_all(self.class_of(a, x))
                if not self.eq(a, m, x):
                    table = ("fail", x, m)
                    break
                table.append(m)
            out.append(tuple(table) if isinstance(table, list) else table)
        return tuple(out)

    def restriction(self, alpha: int) -> tuple[int, ...]:
        """Table of x -> x|_alpha; raises ``NotAModel`` if some class meet leaves its class."""
        if alpha >= self.depth:
            return tuple(self.elements)
        t = self._restriction_tables[alpha]
        if t and t[0] == "fail":
            _, x, m = t
            lab = self.lattice.labels
            raise NotAModel(
                f"meet of the level-{alpha} class of {lab[x]} is {lab[m]}, outside the class",
                witness=(alpha, lab[x], lab[m]),
            )
        return t

    @cached_property
    def _upset_restriction(self) -> tuple[tuple, ...]:
        """x ↦ meet of {z : x ⊑_α z} when it is =_α x, else None."""
        L = self.lattice
        out = []
        for a in self.levels:
            row = []
            for x in self.elements:
                m = L.meet_all(self.up_alpha(a, x))
                row.append(m if self.eq(a, m, x) else None)
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def _corestriction(self) -> tuple[tuple, ...]:
        """x ↦ join of {z : z ⊑_α x} when it is =_α x, else None."""
        L = self.lattice
        out = []
        for a in self.levels:
            row = []
            for x in self.elements:
                j = L.join_all(self.down_alpha(a, x))
                row.append(j if self.eq(a, j, x) else None)
            out.append(tuple(row))
        return tuple(out)

    def image(self, alpha: int) -> list[int]:
        """L|_alpha, sorted by index."""
        return sorted(set(self.restriction(alpha)))

    # -- misc -----------------------------------------------------------

    @cached_property
    def lex_matrix(self) -> Matrix:
        rel = [[x == y for y in self.elements] for x in self.elements]
        for a in self.levels:
            for x in self.elements:
                for y in self.elements:
                    if self.sq(a, x, y) and not self.sq(a, y, x):
                        rel[x][y] = True
        return freeze(rel)

    def to_json(self) -> dict:
        lab = self.lattice.labels
        data = self.lattice.to_json()
        data["depth"] = self.depth
        data["preorders"] = [
            {
                "alpha": a,
                "pairs": sorted([lab[i], lab[j]] for i in self.elements for j in self.elements if rel[i][j]),
                "include_leq": False,
            }
            for a, rel in enumerate(self.preorders)
        ]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "StratifiedLattice":
        if "preorders" not in data:
            raise ValueError("missing 'preorders'")
        lattice = FiniteLattice.from_json(data)
        blocks = sorted(data["preorders"], key=lambda b: b["alpha"])
        if [b["alpha"] for b in blocks] != list(range(len(blocks))):
            raise ValueError("preorder levels must be 0..D-1 without gaps")
        depth = data.get("depth", len(blocks))
        if depth < len(blocks):
            raise ValueError("depth is smaller than the number of preorder blocks")
        levels = [(b.get("pairs", []), b.get("include_leq", False)) for b in blocks]
        levels += [([], True)] * (depth - len(blocks))
        return stratify(lattice, levels)

    def __repr__(self):
        return f"StratifiedLattice({list(self.lattice.labels)!r}, depth={self.depth})"

    def __eq__(self, other):
        if not isinstance(other, StratifiedLattice):
            return NotImplemented
        return self.lattice == other.lattice and self.preorders == other.preorders

    def __hash__(self):
        return hash((self.lattice, self.preorders))


# ---------------------------------------------------------------------------
# constructors


def from_relations(lattice: FiniteLattice, relations: Sequence) -> StratifiedLattice:
    """Build from full index-based relation matrices (closed reflexively and transitively)."""
    n = lattice.n
    pre = []
    for rel in relations:
        pairs = [(i, j) for i in range(n) for j in range(n) if rel[i][j]]
        pre.append(freeze(transitive_closure(n, pairs)))
    return StratifiedLattice(lattice, tuple(pre))


def stratify(lattice: FiniteLattice, levels: Sequence) -> StratifiedLattice:
    """Build from label pairs per level: ``[(pairs, include_leq), ...]``.

    ``include_leq`` adds every x <= y with x =_β y for all earlier levels β,
    which is exactly what A6 makes mandatory.  At level 0 that is all of <=.
    """
    n = lattice.n
    closed: list[Matrix] = []
    for a, (pairs, include_leq) in enumerate(levels):
        idx = [(lattice.index(p), lattice.index(q)) for p, q in pairs]
        if include_leq:
            for x in lattice.elements:
                for y in lattice.elements:
                    if lattice.leq[x][y] and all(closed[b][x][y] and closed[b][y][x] for b in range(a)):
                        idx.append((x, y))
        closed.append(freeze(transitive_closure(n, idx)))
    return StratifiedLattice(lattice, tuple(closed))


def discrete(lattice: FiniteLattice, depth: int = 1) -> StratifiedLattice:
    """The stratification in which every =_α is the identity.

    Level 0 is <= itself and later levels are the identity.  Taking the
    identity at level 0 too would violate A6 on any lattice with two or more
    elements.
    """
    if depth < 1:
        raise ValueError("discrete stratification needs depth >= 1")
    ident = tuple(tuple(i == j for j in lattice.elements) for i in lattice.elements)
    return StratifiedLattice(lattice, (lattice.leq,) + (ident,) * (depth - 1))


def from_restrictions(lattice: FiniteLattice, tables: Sequence[Sequence[int]]) -> StratifiedLattice:
    """Relations x ⊑_α y iff x|_α <= y|_α and x|_β = y|_β for all β < α.

    ``tables`` gives x|_α for α < D as index tuples.
    """
    n = lattice.n
    rels = []
    for a, r in enumerate(tables):
        rels.append(
            tuple(
                tuple(
                    lattice.leq[r[x]][r[y]] and all(tables[b][x] == tables[b][y] for b in range(a))
                    for y in range(n)
                )
                for x in range(n)
            )
        )
    return StratifiedLattice(lattice, tuple(rels))


def dualize(S: StratifiedLattice) -> StratifiedLattice:
    """Reverse <= and every ⊑_α."""
    pre = tuple(tuple(tuple(rel[j][i] for j in S.elements) for i in S.elements) for rel in S.preorders)
    return StratifiedLattice(S.lattice.dual(), pre)


# ---------------------------------------------------------------------------
# axioms
#
# Each axiom is a predicate over integer instances plus a generator of all
# instances in lexicographic order.  The first failing instance is the
# (minimal) witness, and replaying a witness just re-runs the predicate.


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    holds: bool
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.holds

    def __str__(self):
        status = "holds" if self.holds else f"FAILS at {self.witness}"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.axiom}: {status}{extra}"


def _r(S, a, x):
    return x if a >= S.depth else S._upset_restriction[a][x]


def _cr(S, a, x):
    return x if a >= S.depth else S._corestriction[a][x]


def _pairs_over_levels(S, extra=2):
    for a in S.levels:
        yield from _tuples(S, a, extra)


def _tuples(S, a, k):
    if k == 0:
        yield (a,)
        return
    for rest in _tuples(S, a, k - 1):
        for x in S.elements:
            yield rest + (x,)


def _a1(S, a, b, x, y):
    return not S.sq(b, x, y) or S.eq(a, x, y)


def _a1_inst(S):
    for a in S.levels:
        for b in range(a + 1, S.depth + 1):
            for x in S.elements:
                for y in S.elements:
                    yield (a, b, x, y)


def _a2(S, x, y):
    return x == y or not all(S.eq(a, x, y) for a in S.levels)


def _a2_inst(S):
    for x in S.elements:
        for y in S.elements:
            yield (x, y)


def _a3(S, a, x):
    return _r(S, a, x) is not None


def _a4(S, a, x, y):
    return not S.eq(a, x, y) or S.eq(a, S.lattice.join(x, y), x)


def _a4s(S, a, x, y, z):
    L = S.lattice
    return not S.eq(a, x, y) or S.eq(a, L.join(x, z), L.join(y, z))


def _a5(S, a, x, y):
    if not S.lattice.leq[x][y]:
        return True
    rx, ry = _r(S, a, x), _r(S, a, y)
    return rx is not None and ry is not None and S.lattice.leq[rx][ry]


def _a6(S, a, x, y):
    return not (S.lattice.leq[x][y] and S.prefix_eq(a, x, y)) or S.sq(a, x, y)


def _a3d(S, a, x):
    return _cr(S, a, x) is not None


def _a4d(S, a, x, y):
    return not S.eq(a, x, y) or S.eq(a, S.lattice.meet(x, y), x)


def _a4sd(S, a, x, y, z):
    L = S.lattice
    return not S.eq(a, x, y) or S.eq(a, L.meet(x, z), L.meet(y, z))


def _a5d(S, a, x, y):
    if not S.lattice.leq[x][y]:
        return True
    cx, cy = _cr(S, a, x), _cr(S, a, y)
    return cx is not None and cy is not None and S.lattice.leq[cx][cy]


def _b1(S, a, b, x):
    ra, rb = _r(S, a, x), _r(S, b, x)
    return ra is not None and rb is not None and _r(S, b, ra) == rb


def _b1_inst(S):
    for a in S.levels:
        for b in range(a + 1):
            for x in S.elements:
                yield (a, b, x)


def _b3(S, x):
    rs = [_r(S, a, x) for a in S.levels]
    return None not in rs and S.lattice.join_all(rs) == x


def _b3_inst(S):
    for x in S.elements:
        yield (x,)


def _b4(S, a, x, y):
    rx, ry = _r(S, a, x), _r(S, a, y)
    if rx is None or ry is None:
        return False
    return rx != ry or _r(S, a, S.lattice.join(x, y)) == rx


def _b2s(S, a, x, y):
    L = S.lattice
    rx, ry, rj = _r(S, a, x), _r(S, a, y), _r(S, a, L.join(x, y))
    return None not in (rx, ry, rj) and rj == L.join(rx, ry)


def _c(S, a, x, y):
    rx = _r(S, a, x)
    if rx is None:
        return False
    return S.eq(a, rx, x) and (not S.sq(a, x, y) or S.lattice.leq[rx][y])


def _d(S, a, x, y):
    rx, ry = _r(S, a, x), _r(S, a, y)
    if rx is None or ry is None:
        return False
    rebuilt = S.lattice.leq[rx][ry] and all(_r(S, b, x) == _r(S, b, y) for b in range(a))
    return rebuilt == S.sq(a, x, y)


@dataclass(frozen=True)
class _Axiom:
    predicate: Callable
    instances: Callable[[StratifiedLattice], Iterator[tuple]]
    note: str = ""
    n_levels: int = 1  # leading instance entries that are levels, not elements


_AXIOMS: dict[str, _Axiom] = {
    "A1": _Axiom(_a1, _a1_inst, "witness (α, β, x, y): x ⊑_β y but not x =_α y", 2),
    "A2": _Axiom(_a2, _a2_inst, "witness (x, y): distinct yet equal at every level", 0),
    "A3": _Axiom(_a3, lambda S: _pairs_over_levels(S, 1), note="meet of the α-upset of x is not =_α x"),
    "A4": _Axiom(_a4, lambda S: _pairs_over_levels(S, 2), note="x =_α y but x ∨ y leaves the class"),
    "A4*": _Axiom(_a4s, lambda S: _pairs_over_levels(S, 3), note="x =_α y but x ∨ z, y ∨ z differ at α"),
    "A5": _Axiom(_a5, lambda S: _pairs_over_levels(S, 2), note="x <= y but x|_α, y|_α are not ordered or undefined"),
    "A6": _Axiom(_a6, lambda S: _pairs_over_levels(S, 2), note="x <= y and equal below α, yet not x ⊑_α y"),
    "A3d": _Axiom(_a3d, lambda S: _pairs_over_levels(S, 1), note="join of the α-downset of x is not =_α x"),
    "A4d": _Axiom(_a4d, lambda S: _pairs_over_levels(S, 2), note="x =_α y but x ∧ y leaves the class"),
    "A4*d": _Axiom(_a4sd, lambda S: _pairs_over_levels(S, 3), note="x =_α y but x ∧ z, y ∧ z differ at α"),
    "A5d": _Axiom(_a5d, lambda S: _pairs_over_levels(S, 2), note="x <= y but x|^α, y|^α are not ordered or undefined"),
    "B1": _Axiom(_b1, _b1_inst, "witness (α, β, x): (x|_α)|_β differs from x|_β", 2),
    "B2": _Axiom(_a5, lambda S: _pairs_over_levels(S, 2), note="same predicate as A5"),
    "B2*": _Axiom(_b2s, lambda S: _pairs_over_levels(S, 2), note="(x ∨ y)|_α differs from x|_α ∨ y|_α"),
    "B3": _Axiom(_b3, _b3_inst, "x is not the join of its restrictions", 0),
    "B4": _Axiom(_b4, lambda S: _pairs_over_levels(S, 2), note="x|_α = y|_α but (x ∨ y)|_α differs"),
    "C": _Axiom(_c, lambda S: _pairs_over_levels(S, 2), note="restriction is not the least element above which x's α-upset sits"),
    "D": _Axiom(_d, lambda S: _pairs_over_levels(S, 2), note="⊑_α differs from the relation rebuilt from restrictions"),
}
# Binary instances suffice for A4, A4*, B4, B2* and the duals: a join (meet)
# over a finite nonempty family is a fold of binary ones, and each step of
# the fold stays inside the relevant class by the binary case plus
# transitivity of =_α.  B2* on the empty family says ⊥|_α = ⊥, which holds
# in every model because ⊥|_α <= ⊥.


def _labelled(S, name, inst):
    k = _AXIOMS[name].n_levels
    return tuple(inst[:k]) + tuple(S.lattice.labels[i] for i in inst[k:])


def _unlabel(S, name, witness):
    k = _AXIOMS[name].n_levels
    return tuple(witness[:k]) + tuple(S.lattice.index(w) for w in witness[k:])


def check_axiom(S: StratifiedLattice, name: str) -> AxiomReport:
    ax = _AXIOMS[name]
    for inst in ax.instances(S):
        if not ax.predicate(S, *inst):
            return AxiomReport(name, False, _labelled(S, name, inst), ax.note)
    return AxiomReport(name, True)


def check_axioms(S: StratifiedLattice, suite="model") -> list[AxiomReport]:
    """Evaluate a named suite (see ``SUITES``), ``"all"``, or an explicit list of axiom ids."""
    if isinstance(suite, str):
        if suite == "all":
            names = ALL_AXIOMS
        elif suite in SUITES:
            names = SUITES[suite]
        elif suite in _AXIOMS:
            names = (suite,)
        else:
            raise ValueError(f"unknown axiom suite {suite!r}")
    else:
        names = tuple(suite)
    return [check_axiom(S, name) for name in names]


def all_hold(reports: Iterable[AxiomReport]) -> bool:
    return all(r.holds for r in reports)


def replay_witness(S: StratifiedLattice, report: AxiomReport) -> bool:
    """True iff the report's witness really violates its axiom."""
    if report.holds or report.witness is None:
        return False
    return not _AXIOMS[report.axiom].predicate(S, *_unlabel(S, report.axiom, report.witness))


def is_model(S: StratifiedLattice) -> bool:
    return all_hold(check_axioms(S, "model"))


def is_strong(S: StratifiedLattice) -> bool:
    return all_hold(check_axioms(S, "strong"))


def classify(S: StratifiedLattice) -> str:
    """One of not-model, model, strong, symmetric, strong-symmetric.

    For models, strong and symmetric coincide; seeing only one of them means
    a checker is wrong.
    """
    if not is_model(S):
        return "not-model"
    strong = check_axiom(S, "A4*").holds
    symmetric = all_hold(check_axioms(S, ("A3d", "A4d", "A5d")))
    if strong and symmetric:
        return "strong-symmetric"
    if strong:
        return "strong"
    if symmetric:
        return "symmetric"
    return "model"


# ---------------------------------------------------------------------------
# derived operators


def restrict(S: StratifiedLattice, x: int, alpha: int) -> int:
    """x|_α as the meet of the =_α class of x."""
    if alpha >= S.depth:
        return x
    return S.restriction(alpha)[x]


def corestrict(S: StratifiedLattice, x: int, alpha: int) -> int:
    """x|^α = join of {z : z ⊑_α x}; raises ``A3dFails`` when it is not =_α x."""
    if alpha >= S.depth:
        return x
    c = S._corestriction[alpha][x]
    if c is None:
        lab = S.lattice.labels
        j = S.lattice.join_all(S.down_alpha(alpha, x))
        raise A3dFails(
            f"join of everything ⊑_{alpha} {lab[x]} is {lab[j]}, not =_{alpha} {lab[x]}",
            witness=(alpha, lab[x]),
        )
    return c


@dataclass(frozen=True)
class LevelStructure:
    alpha: int
    classes: list[list[int]]
    restriction: tuple[int, ...]
    image: list[int]
    corestriction: tuple | None


def class_structure(S: StratifiedLattice) -> list[LevelStructure]:
    """Per level: =_α classes, x ↦ x|_α, L|_α and x ↦ x|^α (None where undefined)."""
    out = []
    for a in S.levels:
        r = S.restriction(a)
        co = tuple(_cr(S, a, x) for x in S.elements)
        out.append(LevelStructure(a, S.classes(a), r, sorted(set(r)), None if None in co else co))
    return out


def lex_leq(S: StratifiedLattice, x: int, y: int) -> bool:
    return S.lex_matrix[x][y]


def _require_model(S):
    reports = check_axioms(S, "model")
    bad = [r for r in reports if not r.holds]
    if bad:
        raise NotAModel(f"not a model: {bad[0]}", witness=(bad[0].axiom, bad[0].witness))


def lex_sup(S: StratifiedLattice, X: Iterable[int]) -> int:
    """⊑-least upper bound, built one level at a time.

    At level α keep the members of X whose restriction below α matches the
    part already built, and join their level-α restrictions together with
    that part inside L|_α.
    """
    X = list(X)
    L = S.lattice
    y = L.bottom
    for a in S.levels:
        r = S.restriction(a)
        if a == 0:
            Y = X
        else:
            prev = S.restriction(a - 1)
            Y = [x for x in X if prev[x] == y]
        y = r[L.join_all([r[x] for x in Y] + [y])]
    return y


def lex_inf(S: StratifiedLattice, X: Iterable[int]) -> int:
    """⊑-greatest lower bound; dual level construction.

    With survivors at level α, take the meet of their level-α restrictions
    (restricted again, as L|_α is not closed under meets of L).  Without
    survivors take the largest element of L|_α extending the prefix.
    """
    X = list(X)
    L = S.lattice
    y = None
    for a in S.levels:
        r = S.restriction(a)
        if a == 0:
            Y, Z = X, sorted(set(r))
        else:
            prev = S.restriction(a - 1)
            Y = [x for x in X if prev[x] == y]
            Z = sorted({r[z] for z in S.elements if prev[z] == y})
        if Y:
            y = r[L.meet_all(r[x] for x in Y)]
        else:
            y = r[L.join_all(Z)]
            if y not in Z:
                raise NotAModel(f"level-{a} interval has no top element", witness=(a,))
    return y


def lex_bounds_brute(S: StratifiedLattice, X: Sequence[int]) -> tuple[int | None, int | None]:
    """(⊑-sup, ⊑-inf) by scanning all elements; None where it does not exist."""
    lm = S.lex_matrix
    ups = [u for u in S.elements if all(lm[x][u] for x in X)]
    downs = [d for d in S.elements if all(lm[d][x] for x in X)]
    sup = [u for u in ups if all(lm[u][v] for v in ups)]
    inf = [d for d in downs if all(lm[e][d] for e in downs)]
    return (sup[0] if sup else None, inf[0] if inf else None)


def prefix_least(S: StratifiedLattice, ref: int, alpha: int) -> int:
    """Least element of {z : z =_β ref for all β < α}."""
    if alpha == 0:
        return S.lattice.bottom
    return restrict(S, ref, alpha - 1)


def sqcup_alpha(S: StratifiedLattice, X: Iterable[int], alpha: int, ref: int) -> int:
    """Least y agreeing with ``ref`` below α and α-above every member of X.

    Computed as the join of X|_α and the least element of that prefix class;
    both defining properties are re-checked by scanning the class.
    """
    X = list(X)
    lab = S.lattice.labels
    for x in X:
        if not S.prefix_eq(alpha, x, ref):
            raise PreconditionViolated(
                f"{lab[x]} does not agree with {lab[ref]} below level {alpha}", witness=(lab[x],)
            )
    L = S.lattice
    base = prefix_least(S, ref, alpha)
    y = L.join_all([restrict(S, x, alpha) for x in X] + [base])
    cls = [z for z in S.elements if S.prefix_eq(alpha, z, ref)]
    if y not in cls or not all(S.sq(alpha, x, y) for x in X):
        raise NotAModel(f"⊔_{alpha} escaped its class", witness=(alpha, lab[y]))
    for z in cls:
        if all(S.sq(alpha, x, z) for x in X) and not (L.leq[y][z] and S.sq(alpha, y, z)):
            raise NotAModel(f"⊔_{alpha} is not least below {lab[z]}", witness=(alpha, lab[y], lab[z]))
    return y


def check_prop_p3(S: StratifiedLattice, chains: Sequence[Sequence[int]], alpha: int) -> bool:
    """Join of per-chain ⊔_α agrees at level α with ⊔_α of the pointwise joins.

    Chains are finite; a shorter chain is padded with its last element,
    which changes neither side because ⊔_α of a chain only sees its values.
    """
    if not chains or any(len(c) == 0 for c in chains):
        raise PreconditionViolated("need a nonempty family of nonempty chains")
    lab = S.lattice.labels
    for c in chains:
        for u, v in zip(c, c[1:]):
            if not S.sq(alpha, u, v):
                raise PreconditionViolated(
                    f"chain step {lab[u]} -> {lab[v]} is not ⊑_{alpha}", witness=(lab[u], lab[v])
                )
    L = S.lattice
    length = max(len(c) for c in chains)
    padded = [list(c) + [c[-1]] * (length - len(c)) for c in chains]
    lhs = L.join_all(sqcup_alpha(S, c, alpha, c[0]) for c in padded)
    rows = [L.join_all(c[n] for c in padded) for n in range(length)]
    for u, v in zip(rows, rows[1:]):
        if not S.sq(alpha, u, v):
            raise PreconditionViolated("pointwise joins do not form a ⊑_α chain; is the model strong?")
    rhs = sqcup_alpha(S, rows, alpha, rows[0])
    return S.eq(alpha, lhs, rhs)


def b_axiomatization_round_trip(S: StratifiedLattice) -> list[AxiomReport]:
    """C, B1-B4 and D on the restriction family; B2* as well when A4* holds.

    D holding for every level is the statement that rebuilding the preorders
    from the restrictions returns the original ones.  A second, independent
    rebuild through :func:`from_restrictions` is compared as well.
    """
    reports = check_axioms(S, "B")
    if check_axiom(S, "A4*").holds:
        reports.append(check_axiom(S, "B2*"))
    if all_hold(reports):
        tables = [S.restriction(a) for a in range(S.depth)]
        rebuilt = from_restrictions(S.lattice, tables)
        if rebuilt.preorders != S.preorders:
            a = next(a for a in range(S.depth) if rebuilt.preorders[a] != S.preorders[a])
            reports.append(AxiomReport("D", False, (a,), "rebuilt relations differ"))
    return reports

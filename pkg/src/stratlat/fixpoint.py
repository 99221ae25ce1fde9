"""Weakly monotone maps on models and their stratified least and greatest fixed points."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InternalError, NotWeaklyMonotone, PreconditionViolated
from .lattice import Verdict
from .stratified import StratifiedLattice, lex_inf, lex_sup


@dataclass(frozen=True, eq=False)
class EndoFunction:
    model: StratifiedLattice
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.model.n or any(not 0 <= v < self.model.n for v in self.table):
            raise ValueError("function table must be a total self-map")

    def __call__(self, x: int) -> int:
        return self.table[x]

    @classmethod
    def from_labels(cls, model: StratifiedLattice, mapping: dict) -> "EndoFunction":
        L = model.lattice
        m = {str(k): str(v) for k, v in mapping.items()}
        missing = [lab for lab in L.labels if lab not in m]
        if missing:
            raise ValueError(f"function is not total; missing {missing}")
        return cls(model, tuple(L.index(m[lab]) for lab in L.labels))

    @classmethod
    def identity(cls, model):
        return cls(model, tuple(model.elements))

    @classmethod
    def constant(cls, model, c: int):
        return cls(model, (c,) * model.n)

    def to_json(self) -> dict:
        lab = self.model.lattice.labels
        return {"map": {lab[x]: lab[v] for x, v in enumerate(self.table)}}

    def fixed_points(self) -> list[int]:
        return [x for x in self.model.elements if self.table[x] == x]

    def __repr__(self):
        lab = self.model.lattice.labels
        return f"EndoFunction({[lab[v] for v in self.table]})"


def is_alpha_monotone(f: EndoFunction, alpha: int) -> Verdict:
    S = f.model
    for x in S.elements:
        for y in S.elements:
            if S.sq(alpha, x, y) and not S.sq(alpha, f(x), f(y)):
                lab = S.lattice.labels
                return Verdict(False, (alpha, lab[x], lab[y]))
    return Verdict(True)


def is_weakly_monotone(f: EndoFunction) -> Verdict:
    """α-monotone at every level up to the identity tail."""
    for a in f.model.levels:
        v = is_alpha_monotone(f, a)
        if not v:
            return v
    return Verdict(True)


def _require_weakly_monotone(f):
    v = is_weakly_monotone(f)
    if not v:
        raise NotWeaklyMonotone(f"not α-monotone at {v.witness}", witness=v.witness)


@dataclass(frozen=True)
class LevelFamily:
    """``components[α]`` maps each u in L|_α (by index) to f(u)|_α."""

    components: tuple[dict, ...]
    conditionally_monotone: bool
    compatible: bool
    reassembles: bool

    def __call__(self, alpha: int, u: int) -> int:
        return self.components[alpha][u]


def level_components(f: EndoFunction) -> LevelFamily:
    _require_weakly_monotone(f)
    S, L = f.model, f.model.lattice
    comps = []
    for a in S.levels:
        r = S.restriction(a)
        comps.append({u: r[f(u)] for u in S.image(a)})
    cond = all(
        not (L.leq[u][v] and S.prefix_eq(a, u, v)) or L.leq[comps[a][u]][comps[a][v]]
        for a in S.levels
        for u in comps[a]
        for v in comps[a]
    )
    compat = all(
        S.restriction(b)[comps[a][u]] == comps[b][S.restriction(b)[u]]
        for a in S.levels
        for b in range(a)
        for u in comps[a]
    )
    whole = all(
        S.restriction(a)[f(x)] == comps[a][S.restriction(a)[x]] for a in S.levels for x in S.elements
    )
    fam = LevelFamily(tuple(comps), cond, compat, whole)
    if not (cond and compat and whole):
        raise InternalError("level components of a weakly monotone map misbehave", witness=(cond, compat, whole))
    return fam


@dataclass
class LevelTrace:
    """Per level: the value fixed there and the iterates that led to it."""

    values: list[int] = field(default_factory=list)
    iterates: list[list[int]] = field(default_factory=list)


def _interval(S, a, prev):
    r = S.restriction(a)
    if a == 0:
        return sorted(set(r))
    back = S.restriction(a - 1)
    return sorted({r[z] for z in S.elements if back[z] == prev})


def _level_loop(f: EndoFunction, X: Sequence[int], upward: bool, trace: LevelTrace | None):
    S, L = f.model, f.model.lattice
    prev = None
    for a in S.levels:
        r = S.restriction(a)
        Z = _interval(S, a, prev)
        zset = set(Z)
        if a == 0:
            Y = [r[x] for x in X]
        else:
            back = S.restriction(a - 1)
            Y = [r[x] for x in X if back[x] == prev]
        if upward:
            end = r[L.meet_all(Z)]
            u = r[L.join_all(Y + [end])]
        else:
            end = r[L.join_all(Z)]
            u = r[L.meet_all(Y + [end])]
        if end not in zset:
            raise InternalError(f"level-{a} interval has no {'bottom' if upward else 'top'}", witness=(a,))
        steps = [u]
        for _ in range(len(Z) + 1):
            fu = r[f(u)]
            if fu not in zset:
                raise InternalError(f"level-{a} component left its interval", witness=(a, u, fu))
            nxt = r[L.join(u, fu)] if upward else r[L.meet(u, fu)]
            if nxt == u:
                break
            u = nxt
            steps.append(u)
        else:
            raise InternalError(f"no convergence at level {a}", witness=(a,))
        if r[f(u)] != u:
            raise InternalError(f"level-{a} limit is not a fixed point of the component", witness=(a, u))
        if trace is not None:
            trace.values.append(u)
            trace.iterates.append(steps)
        prev = u
    return prev


def _verify(f, X, y, upward):
    S = f.model
    lm = S.lex_matrix
    lab = S.lattice.labels
    if f(y) != y:
        raise InternalError(f"result {lab[y]} is not a fixed point", witness=(lab[y],))
    if upward:
        if not all(lm[x][y] for x in X):
            raise InternalError("result is not above the given set", witness=(lab[y],))
        for z in S.elements:
            if all(lm[x][z] for x in X) and lm[f(z)][z] and not lm[y][z]:
                raise InternalError(f"{lab[z]} is a smaller pre-fixed point", witness=(lab[y], lab[z]))
    else:
        if not all(lm[y][x] for x in X):
            raise InternalError("result is not below the given set", witness=(lab[y],))
        for z in S.elements:
            if all(lm[z][x] for x in X) and lm[z][f(z)] and not lm[z][y]:
                raise InternalError(f"{lab[z]} is a larger post-fixed point", witness=(lab[y], lab[z]))


def stratified_lfp_above(
    f: EndoFunction, X: Iterable[int] = (), trace: LevelTrace | None = None, verify: bool = True
) -> int:
    """The ⊑-least fixed point lying ⊑-above every member of X.

    X must consist of post-fixed points for <=.  At each level the search
    runs inside the interval of L|_α compatible with what earlier levels
    fixed, iterating u ← u ∨ f(u) restricted to that level from the join of
    the surviving members of X and the interval's bottom.
    """
    _require_weakly_monotone(f)
    X = list(X)
    L = f.model.lattice
    for x in X:
        if not L.leq[x][f(x)]:
            raise PreconditionViolated(f"{L.labels[x]} is not post-fixed", witness=(L.labels[x],))
    y = _level_loop(f, X, True, trace)
    if verify:
        _verify(f, X, y, True)
    return y


def stratified_gfp_below(
    f: EndoFunction, X: Iterable[int] = (), trace: LevelTrace | None = None, verify: bool = True
) -> int:
    """Dual of :func:`stratified_lfp_above` for a set of pre-fixed points."""
    _require_weakly_monotone(f)
    X = list(X)
    L = f.model.lattice
    for x in X:
        if not L.leq[f(x)][x]:
            raise PreconditionViolated(f"{L.labels[x]} is not pre-fixed", witness=(L.labels[x],))
    y = _level_loop(f, X, False, trace)
    if verify:
        _verify(f, X, y, False)
    return y


def stratified_lfp(f: EndoFunction, trace: LevelTrace | None = None, verify: bool = True) -> int:
    return stratified_lfp_above(f, (), trace, verify)


@dataclass(frozen=True)
class FixedPointLattice:
    points: tuple[int, ...]
    holds: bool
    exhaustive: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def fixed_point_lattice(f: EndoFunction, sample: int = 2000, seed: int = 0) -> FixedPointLattice:
    """Check that every subset of Fix(f) has a ⊑-sup and a ⊑-inf inside Fix(f).

    All subsets are tried when there are at most 12 fixed points; beyond
    that a seeded sample of ``sample`` subsets is used.
    """
    _require_weakly_monotone(f)
    S = f.model
    lm = S.lex_matrix
    pts = tuple(f.fixed_points())

    def bounds_ok(sub):
        ups = [p for p in pts if all(lm[x][p] for x in sub)]
        downs = [p for p in pts if all(lm[p][x] for x in sub)]
        has_sup = any(all(lm[u][v] for v in ups) for u in ups)
        has_inf = any(all(lm[e][d] for e in downs) for d in downs)
        return has_sup and has_inf

    exhaustive = len(pts) <= 12
    if exhaustive:
        subsets = itertools.chain.from_iterable(itertools.combinations(pts, k) for k in range(len(pts) + 1))
    else:
        rng = random.Random(seed)
        subsets = ([p for p in pts if rng.random() < 0.5] for _ in range(sample))
    for sub in subsets:
        if not bounds_ok(sub):
            lab = S.lattice.labels
            return FixedPointLattice(pts, False, exhaustive, tuple(lab[x] for x in sub))
    return FixedPointLattice(pts, True, exhaustive)


def check_supp_post_fixed(f: EndoFunction, X: Iterable[int], dual: bool = False) -> bool:
    """⊑-sup of <=-post-fixed points is post-fixed; with ``dual``, ⊑-inf of pre-fixed points is pre-fixed."""
    _require_weakly_monotone(f)
    X = list(X)
    S, L = f.model, f.model.lattice
    for x in X:
        ok = L.leq[f(x)][x] if dual else L.leq[x][f(x)]
        if not ok:
            kind = "pre" if dual else "post"
            raise PreconditionViolated(f"{L.labels[x]} is not {kind}-fixed", witness=(L.labels[x],))
    if dual:
        y = lex_inf(S, X)
        return L.leq[f(y)][y]
    y = lex_sup(S, X)
    return L.leq[y][f(y)]

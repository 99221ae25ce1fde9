"""Generators for small lattices, stratifications and weakly monotone maps."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceeded, NotALattice
from .fixpoint import EndoFunction
from .lattice import FiniteLattice
from .stratified import StratifiedLattice, from_restrictions, is_model

MAX_ELEMENTS = 7
MAX_DEPTH = 3
EXHAUSTIVE_STRAT = 6
EXHAUSTIVE_MAPS = 5


@dataclass(frozen=True)
class EnumerationBudget:
    max_elements: int = 5
    max_depth: int = 2
    seed: int = 0
    sample_count: int = 50

    def __post_init__(self):
        if not 1 <= self.max_elements <= MAX_ELEMENTS:
            raise BudgetExceeded(f"max_elements must be in 1..{MAX_ELEMENTS}", witness=(self.max_elements,))
        if not 1 <= self.max_depth <= MAX_DEPTH:
            raise BudgetExceeded(f"max_depth must be in 1..{MAX_DEPTH}", witness=(self.max_depth,))


# ---------------------------------------------------------------------------
# lattices


def _inner_posets(m: int) -> Iterator[list[list[bool]]]:
    """Partial orders on 0..m-1 in which i < j in the order implies i < j as integers."""
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    for mask in range(1 << len(pairs)):
        rel = [[i == j for j in range(m)] for i in range(m)]
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                rel[i][j] = True
        if all(not (rel[i][j] and rel[j][k]) or rel[i][k] for i in range(m) for j in range(m) for k in range(m)):
            yield rel


def _code(rel, perm):
    m = len(perm)
    return tuple(rel[perm[i]][perm[j]] for i in range(m) for j in range(m) if i != j)


def canonical_inner(rel) -> tuple:
    """Lexicographically largest code over all relabelings of the inner elements, with its permutation."""
    m = len(rel)
    best = None
    for perm in itertools.permutations(range(m)):
        c = _code(rel, perm)
        if best is None or c > best[0]:
            best = (c, perm)
    return best


def enumerate_lattices(n: int) -> Iterator[FiniteLattice]:
    """All lattices on n elements up to isomorphism, in a fixed canonical order.

    Every finite lattice with n >= 2 is a bounded poset, so it is a poset on
    n - 2 inner elements with a new bottom and top; naturally labelled inner
    posets cover every isomorphism class.
    """
    if not 1 <= n <= MAX_ELEMENTS:
        raise BudgetExceeded(f"lattice enumeration is limited to 1..{MAX_ELEMENTS} elements", witness=(n,))
    if n == 1:
        yield FiniteLattice.from_matrix(["e0"], [[True]])
        return
    m = n - 2
    found = {}
    for rel in _inner_posets(m):
        code, perm = canonical_inner(rel)
        if code in found:
            continue
        inner = [[rel[perm[i]][perm[j]] for j in range(m)] for i in range(m)]
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[0][i] = leq[i][n - 1] = leq[i][i] = True
        for i in range(m):
            for j in range(m):
                leq[i + 1][j + 1] = inner[i][j]
        try:
            found[code] = FiniteLattice.from_matrix([f"e{i}" for i in range(n)], leq)
        except NotALattice:
            found[code] = None
    # Largest code first: the code lists comparabilities, so chains come first.
    for code in sorted(found, reverse=True):
        if found[code] is not None:
            yield found[code]


# ---------------------------------------------------------------------------
# stratifications


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        yield [[first]] + part


def _good_block(L: FiniteLattice, block) -> bool:
    """Contains its meet and is closed under binary joins (needed by A3 and A4)."""
    s = set(block)
    return L.meet_all(block) in s and all(L.join(x, y) in s for x in block for y in block)


def _partitions_within(L, blocks):
    """Refinements of a partition all of whose blocks pass ``_good_block``."""
    per_block = []
    for b in blocks:
        opts = [p for p in _set_partitions(sorted(b)) if all(_good_block(L, c) for c in p)]
        per_block.append(opts)
    for combo in itertools.product(*per_block):
        yield [c for p in combo for c in p]


def _monotone_restriction(L, part):
    r = _restriction_table(L, part)
    return all(not L.leq[x][y] or L.leq[r[x]][r[y]] for x in L.elements for y in L.elements)


def _chains(L, depth, blocks):
    """Partition chains of the given length, finest last.

    The last partition must be discrete: A6 at the first identity level
    makes its classes antichains, and a join-closed antichain is a single
    point.  Partitions whose meet-restriction is not monotone break A5.
    """
    if depth == 1:
        yield [[[x] for x in sorted(x for b in blocks for x in b)]]
        return
    for part in _partitions_within(L, blocks):
        if not _monotone_restriction(L, part):
            continue
        for rest in _chains(L, depth - 1, part):
            yield [part] + rest


def _restriction_table(L, part):
    table = [0] * L.n
    for block in part:
        m = L.meet_all(block)
        for x in block:
            table[x] = m
    return tuple(table)


def enumerate_stratifications(
    lattice: FiniteLattice, depth: int, sample: int | None = None, seed: int = 0
) -> Iterator[StratifiedLattice]:
    """Every model of the given depth on ``lattice``.

    In a model the level-α classes form a chain of ever finer partitions,
    each class contains its meet and is join-closed, and the preorders are
    fixed by the classes: x ⊑_α y iff x|_α <= y|_α and the restrictions
    agree below α.  So the search runs over such partition chains, rebuilds
    the preorders (which already contain every pair A6 forces), and keeps
    the candidates that pass the model axioms.

    Lattices above six elements need ``sample``: a seeded sample of that
    size is drawn from the full stream.
    """
    if depth < 1 or depth > MAX_DEPTH:
        raise BudgetExceeded(f"depth must be in 1..{MAX_DEPTH}", witness=(depth,))
    if lattice.n > MAX_ELEMENTS or (lattice.n > EXHAUSTIVE_STRAT and sample is None):
        raise BudgetExceeded(
            f"exhaustive stratification search is limited to {EXHAUSTIVE_STRAT} elements", witness=(lattice.n,)
        )
    full = (
        S
        for parts in _chains(lattice, depth, [list(lattice.elements)])
        for S in [from_restrictions(lattice, [_restriction_table(lattice, p) for p in parts])]
        if is_model(S)
    )
    if sample is None:
        yield from full
        return
    pool = list(full)
    rng = random.Random(seed)
    chosen = sorted(rng.sample(range(len(pool)), min(sample, len(pool))))
    for i in chosen:
        yield pool[i]


def enumerate_models(budget: EnumerationBudget) -> Iterator[StratifiedLattice]:
    for n in range(1, budget.max_elements + 1):
        for L in enumerate_lattices(n):
            for d in range(1, budget.max_depth + 1):
                sample = budget.sample_count if n > EXHAUSTIVE_STRAT else None
                yield from enumerate_stratifications(L, d, sample=sample, seed=budget.seed)


# ---------------------------------------------------------------------------
# weakly monotone maps


def _extend(S, order, table, pos, values_for):
    if pos == len(order):
        yield tuple(table)
        return
    x = order[pos]
    for v in values_for(pos):
        ok = True
        for y in order[:pos]:
            w = table[y]
            for a in S.levels:
                if (S.sq(a, x, y) and not S.sq(a, v, w)) or (S.sq(a, y, x) and not S.sq(a, w, v)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            table[x] = v
            yield from _extend(S, order, table, pos + 1, values_for)
    table[x] = -1


def enumerate_weakly_monotone(
    model: StratifiedLattice, cap: int | None = None, seed: int = 0, samples: int = 100
) -> Iterator[EndoFunction]:
    """Maps preserving every ⊑_α.

    Exhaustive backtracking (tables in lexicographic order) for models with
    at most five elements.  Larger models get the identity, the constants,
    and ``samples`` further maps from seeded randomized backtracking.
    ``cap`` bounds the number of maps produced.
    """
    if model.n > 64:
        raise BudgetExceeded("model too large for map enumeration", witness=(model.n,))
    tables = _weakly_monotone_tables(model, seed, samples)
    for t in itertools.islice(tables, cap):
        yield EndoFunction(model, t)


def _weakly_monotone_tables(S, seed, samples):
    order = list(S.elements)
    if S.n <= EXHAUSTIVE_MAPS:
        yield from _extend(S, order, [-1] * S.n, 0, lambda pos: S.elements)
        return
    rng = random.Random(seed)
    seen = set()
    for t in [tuple(S.elements)] + [(c,) * S.n for c in S.elements]:
        if t not in seen:
            seen.add(t)
            yield t
    attempts = added = 0
    while added < samples and attempts < samples * 20:
        attempts += 1
        orders = [rng.sample(order, S.n) for _ in order]
        t = next(_extend(S, order, [-1] * S.n, 0, lambda pos: orders[pos]))
        if t not in seen:
            seen.add(t)
            added += 1
            yield t

"""Infinite-valued semantics of propositional normal logic programs.

Truth values form the chain F_0 < F_1 < ... < 0 < ... < T_1 < T_0.  The
minimum model is computed level by level; a well-founded-semantics oracle
(alternating fixpoint) is included for cross-checking.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterable, Mapping, Sequence

from .errors import DepthCapExceeded, InternalError, ParseError, StateSpaceTooLarge
from .fixpoint import EndoFunction, is_weakly_monotone, stratified_lfp
from .lattice import FiniteLattice, LatticeMap, chain, product
from .stratified import StratifiedLattice


@total_ordering
@dataclass(frozen=True)
class TruthValue:
    kind: str  # "F", "0" or "T"
    level: int = 0

    def __post_init__(self):
        if self.kind not in ("F", "0", "T") or self.level < 0 or (self.kind == "0" and self.level):
            raise ValueError(f"bad truth value {self.kind}_{self.level}")

    @property
    def key(self):
        if self.kind == "F":
            return (0, self.level)
        if self.kind == "T":
            return (2, -self.level)
        return (1, 0)

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        return "0" if self.kind == "0" else f"{self.kind}_{self.level}"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "TruthValue":
        text = text.strip()
        if text == "0":
            return ZERO
        m = re.fullmatch(r"([FT])_(\d+)", text)
        if not m:
            raise ValueError(f"not a truth value: {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def negate(self) -> "TruthValue":
        if self.kind == "F":
            return TruthValue("T", self.level + 1)
        if self.kind == "T":
            return TruthValue("F", self.level + 1)
        return self


def F(level):
    return TruthValue("F", level)


def T(level):
    return TruthValue("T", level)


ZERO = TruthValue("0")


def sq_value(alpha: int, x: TruthValue, y: TruthValue) -> bool:
    """x ⊑_α y on the chain: equal, or both at level >= α (or 0) with T_α kept and F_α reflected."""
    if x == y:
        return True

    def deep(v):
        return v.kind == "0" or v.level >= alpha

    if not (deep(x) and deep(y)):
        return False
    if x == T(alpha) and y != T(alpha):
        return False
    if y == F(alpha) and x != F(alpha):
        return False
    return True


# ---------------------------------------------------------------------------
# programs


@dataclass(frozen=True)
class Literal:
    atom: str
    positive: bool = True

    def __str__(self):
        return self.atom if self.positive else f"not {self.atom}"


@dataclass(frozen=True)
class Rule:
    head: str
    body: tuple[Literal, ...] = ()

    def __str__(self):
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...]
    atoms: tuple[str, ...]

    @classmethod
    def of(cls, rules: Iterable[Rule], extra_atoms: Iterable[str] = ()) -> "Program":
        rules = tuple(rules)
        seen: dict[str, None] = {}
        for r in rules:
            seen.setdefault(r.head)
            for lit in r.body:
                seen.setdefault(lit.atom)
        for a in extra_atoms:
            seen.setdefault(a)
        return cls(rules, tuple(seen))

    def rules_for(self, atom: str) -> list[Rule]:
        return [r for r in self.rules if r.head == atom]

    def __str__(self):
        return "\n".join(map(str, self.rules))


Interpretation = dict  # atom -> TruthValue, total over the program's atoms

_TOKEN = re.compile(r"(?P<ws>[ \t\r]+)|(?P<comment>%[^\n]*)|(?P<nl>\n)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<arrow>:-)|(?P<comma>,)|(?P<dot>\.)")


def _tokens(text):
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                yield kind, m.group(), line, col
            col += len(m.group())
        pos = m.end()
    yield "eof", "", line, col


def parse_program(text: str) -> Program:
    """Parse ``head.`` and ``head :- lit, ..., lit.`` statements; ``not`` marks negation."""
    toks = list(_tokens(text))
    i = 0
    rules = []

    def expect(kind, what):
        nonlocal i
        k, v, ln, c = toks[i]
        if k != kind:
            found = "end of input" if k == "eof" else repr(v)
            raise ParseError(f"expected {what}, found {found}", ln, c)
        i += 1
        return v

    while toks[i][0] != "eof":
        head = expect("ident", "an atom")
        body = []
        if toks[i][0] == "arrow":
            i += 1
            while True:
                if toks[i][0] == "ident" and toks[i][1] == "not" and toks[i + 1][0] == "ident":
                    i += 1
                    body.append(Literal(expect("ident", "an atom"), False))
                else:
                    body.append(Literal(expect("ident", "a literal"), True))
                if toks[i][0] == "comma":
                    i += 1
                    continue
                break
        expect("dot", "'.'")
        rules.append(Rule(head, tuple(body)))
    return Program.of(rules)


def literal_value(I: Mapping[str, TruthValue], lit: Literal) -> TruthValue:
    v = I[lit.atom]
    return v if lit.positive else v.negate()


def tp_step(P: Program, I: Mapping[str, TruthValue]) -> Interpretation:
    """One application of the program operator.

    Bodies take the minimum of their literals (T_0 when empty); heads take
    the maximum over their rules (F_0 when there are none).
    """
    out = {}
    for a in P.atoms:
        best = F(0)
        for r in P.rules_for(a):
            val = min((literal_value(I, lit) for lit in r.body), default=T(0))
            best = max(best, val)
        out[a] = best
    return out


def collapse3(I: Mapping[str, TruthValue]) -> dict[str, str]:
    return {a: {"F": "false", "0": "undef", "T": "true"}[v.kind] for a, v in I.items()}


# ---------------------------------------------------------------------------
# level-wise minimum model


@dataclass
class LevelRecord:
    alpha: int
    frozen: dict[str, TruthValue]
    iterations: int


@dataclass
class MinimumModel:
    values: dict[str, TruthValue]
    levels: dict[str, int | None]  # freezing level, None for atoms set to 0
    trace: list[LevelRecord] = field(default_factory=list)


def _truncate(v: TruthValue, alpha: int) -> TruthValue:
    """Restriction to level α on one coordinate: keep levels <= α, else F_(α+1)."""
    if v.kind != "0" and v.level <= alpha:
        return v
    return F(alpha + 1)


def rw_minimum_model(P: Program, verify_samples: int = 64, seed: int = 0) -> MinimumModel:
    """Least fixed point of the program operator for the lexicographic order.

    At level α every atom not yet frozen starts at F_α and the level
    component of the operator is iterated upward.  Atoms ending at F_α or
    T_α freeze; the rest continue at F_(α+1).  A level that freezes nothing
    would repeat forever, so the remaining atoms get 0.
    """
    values: dict[str, TruthValue] = {}
    levels: dict[str, int | None] = {}
    trace = []
    cap = len(P.atoms) + 1
    alpha = 0
    while len(values) < len(P.atoms):
        if alpha >= cap:
            raise DepthCapExceeded(f"no convergence within {cap} levels", witness=(alpha,))
        open_atoms = [a for a in P.atoms if a not in values]
        u = dict(values)
        u.update({a: F(alpha) for a in open_atoms})
        steps = 0
        while True:
            J = tp_step(P, u)
            nxt = dict(u)
            for a in open_atoms:
                nxt[a] = max(u[a], _truncate(J[a], alpha))
            if nxt == u:
                break
            u = nxt
            steps += 1
            if steps > 2 * len(open_atoms) + 1:
                raise InternalError(f"level {alpha} iteration does not settle", witness=(alpha,))
        frozen = {a: u[a] for a in open_atoms if u[a] in (F(alpha), T(alpha))}
        trace.append(LevelRecord(alpha, frozen, steps))
        if not frozen:
            for a in open_atoms:
                values[a], levels[a] = ZERO, None
            break
        for a, v in frozen.items():
            values[a], levels[a] = v, alpha
        alpha += 1
    values = {a: values[a] for a in P.atoms}
    levels = {a: levels[a] for a in P.atoms}
    if tp_step(P, values) != values:
        raise InternalError("minimum model is not a fixed point", witness=tuple(map(str, values.values())))
    if verify_samples:
        _sample_leastness(P, values, verify_samples, seed)
    return MinimumModel(values, levels, trace)


def interp_sq(alpha: int, I: Mapping, J: Mapping) -> bool:
    return all(sq_value(alpha, I[a], J[a]) for a in I)


def interp_lex_leq(I: Mapping, J: Mapping) -> bool:
    if I == J:
        return True
    top = max([v.level for v in list(I.values()) + list(J.values())] + [0]) + 1
    return any(interp_sq(a, I, J) and not interp_sq(a, J, I) for a in range(top + 1))


def _sample_leastness(P, I, samples, seed):
    rng = random.Random(seed)
    top = len(P.atoms) + 1
    pool = [ZERO] + [F(k) for k in range(top + 1)] + [T(k) for k in range(top + 1)]
    for _ in range(samples):
        J = {a: rng.choice(pool) for a in P.atoms}
        if interp_lex_leq(tp_step(P, J), J) and not interp_lex_leq(I, J):
            raise InternalError("a sampled pre-fixed interpretation lies below the minimum model",
                                witness=tuple(str(J[a]) for a in P.atoms))


# ---------------------------------------------------------------------------
# well-founded semantics oracle


def _least_model_of_reduct(P: Program, assumed_true: frozenset) -> frozenset:
    """Least model of the positive program left after evaluating negation against ``assumed_true``."""
    rules = []
    for r in P.rules:
        if any(not lit.positive and lit.atom in assumed_true for lit in r.body):
            continue
        rules.append((r.head, [lit.atom for lit in r.body if lit.positive]))
    true: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, pos in rules:
            if head not in true and all(b in true for b in pos):
                true.add(head)
                changed = True
    return frozenset(true)


def wfs_oracle(P: Program) -> dict[str, str]:
    """Well-founded model by the alternating fixpoint.

    Γ(I) is the least model of the reduct by I.  Γ is antitone, so Γ∘Γ is
    monotone; its least fixed point is the set of true atoms and Γ of that
    set bounds the atoms that are not false.
    """
    true = frozenset()
    while True:
        nxt = _least_model_of_reduct(P, _least_model_of_reduct(P, true))
        if nxt == true:
            break
        true = nxt
    possible = _least_model_of_reduct(P, true)
    return {a: "true" if a in true else "undef" if a in possible else "false" for a in P.atoms}


# ---------------------------------------------------------------------------
# finite truncations of the value chain


def v_labels(depth: int) -> list[str]:
    """F_0 .. F_(k-1), 0, T_(k-1) .. T_0 for depth k."""
    return [f"F_{i}" for i in range(depth)] + ["0"] + [f"T_{i}" for i in reversed(range(depth))]


def v_values(depth: int) -> list[TruthValue]:
    return [TruthValue.parse(s) for s in v_labels(depth)]


def v_chain(depth: int) -> FiniteLattice:
    return chain(v_labels(depth))


def _tuples(values, n):
    if n == 0:
        return [()]
    return [t + (v,) for t in _tuples(values, n - 1) for v in values]


def v_model(atoms: Sequence[str] | int, depth: int) -> StratifiedLattice:
    """The depth-k truncation of V^Z with the pointwise order and pointwise ⊑_α, α < k."""
    if isinstance(atoms, int):
        atoms = [f"z{i}" for i in range(atoms)]
    vals = v_values(depth)
    points = _tuples(vals, len(atoms))
    labels = [",".join(map(str, p)) for p in points]
    leq = [[all(a <= b for a, b in zip(p, q)) for q in points] for p in points]
    lattice = FiniteLattice.from_matrix(labels, leq)
    rels = tuple(
        tuple(tuple(all(sq_value(al, a, b) for a, b in zip(p, q)) for q in points) for p in points)
        for al in range(depth)
    )
    return StratifiedLattice(lattice, rels)


def v_point(atoms: Sequence[str], I: Mapping[str, TruthValue]) -> str:
    return ",".join(str(I[a]) for a in atoms)


def v_tower(n_atoms: int, depth: int):
    """Chains F_0 < .. < F_α < 0 < T_α < .. < T_0 for α < depth (powers for several atoms),
    each mapped to the previous by sending the level-α values to 0."""
    from .inverse_limit import validate_system

    chains = [v_chain(a + 1) for a in range(depth)]

    def power(L):
        out = L
        for _ in range(n_atoms - 1):
            out = product(out, L)
        return out

    tower = [power(c) for c in chains]
    maps = []
    for a in range(1, depth):
        src, tgt = tower[a], tower[a - 1]

        def collapse(label, a=a):
            parts = []
            for s in label.split(","):
                v = TruthValue.parse(s)
                parts.append("0" if v.kind != "0" and v.level >= a else s)
            return ",".join(parts)

        maps.append(LatticeMap(src, tgt, tuple(tgt.index(collapse(lab)) for lab in src.labels)))
    return validate_system(tower, maps)


def _clip(v: TruthValue, depth: int) -> TruthValue:
    return v if v.kind == "0" or v.level < depth else ZERO


def materialize_fp(P: Program, depth: int) -> EndoFunction:
    """The program operator on the depth-k truncation, values beyond depth k collapsed to 0."""
    S = v_model(list(P.atoms), depth)
    L = S.lattice
    table = []
    for lab in L.labels:
        parts = lab.split(",") if P.atoms else []
        I = {a: TruthValue.parse(s) for a, s in zip(P.atoms, parts)}
        J = tp_step(P, I)
        table.append(L.index(v_point(P.atoms, {a: _clip(J[a], depth) for a in P.atoms})))
    return EndoFunction(S, tuple(table))


def _bounded(P, depth):
    if len(P.atoms) > 2 or depth > 2:
        raise StateSpaceTooLarge(
            f"{len(P.atoms)} atoms at depth {depth} exceeds the materialization bound (2 atoms, depth 2)",
            witness=(len(P.atoms), depth),
        )


def verify_fp_weak_monotone(P: Program, depth: int) -> bool:
    _bounded(P, depth)
    return is_weakly_monotone(materialize_fp(P, depth)).holds


def generic_minimum_model(P: Program, depth: int) -> dict[str, TruthValue]:
    """Minimum model computed by the generic stratified solver on the materialized truncation."""
    _bounded(P, depth)
    f = materialize_fp(P, depth)
    y = stratified_lfp(f)
    parts = f.model.lattice.labels[y].split(",") if P.atoms else []
    return {a: TruthValue.parse(s) for a, s in zip(P.atoms, parts)}


def clip_interpretation(I: Mapping[str, TruthValue], depth: int) -> dict[str, TruthValue]:
    return {a: _clip(v, depth) for a, v in I.items()}

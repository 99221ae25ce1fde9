"""Shared, cached test corpora built from the enumerators and fixtures."""

from __future__ import annotations

import random
from functools import lru_cache
from pathlib import Path

from stratlat import EnumerationBudget, enumerate_lattices, enumerate_models, enumerate_weakly_monotone, parse_program
from stratlat.fixtures import five_element_strong_model, four_element_nonstrong_model, product_model
from stratlat.lattice import LatticeMap, chain, projection_adjoint
from stratlat.errors import NotMonotone, NotProjection

LP_DIR = Path(__file__).parent / "corpus"


def fixture_models():
    return [
        five_element_strong_model(),
        four_element_nonstrong_model(),
        product_model([chain(["a0", "a1"]), chain(["b0", "b1", "b2"])]),
    ]


@lru_cache(maxsize=None)
def models(max_elements=6, max_depth=2):
    return tuple(enumerate_models(EnumerationBudget(max_elements=max_elements, max_depth=max_depth)))


@lru_cache(maxsize=None)
def function_corpus(max_elements=5, max_depth=2):
    """(model, function) pairs: every weakly monotone map on every small model."""
    return tuple((S, f) for S in models(max_elements, max_depth) for f in enumerate_weakly_monotone(S))


@lru_cache(maxsize=None)
def small_lattices(max_n=5):
    return tuple(L for n in range(1, max_n + 1) for L in enumerate_lattices(n))


def _maps(src, tgt):
    import itertools

    for table in itertools.product(tgt.elements, repeat=src.n):
        yield LatticeMap(src, tgt, table)


@lru_cache(maxsize=None)
def projections(max_src=5, max_tgt=4):
    """Every projection between small lattices (source up to max_src elements)."""
    out = []
    for src in small_lattices(max_src):
        for tgt in small_lattices(max_tgt):
            if tgt.n > src.n or tgt.n == 1 and src.n > 3:
                continue
            for h in _maps(src, tgt):
                try:
                    projection_adjoint(h)
                except (NotMonotone, NotProjection):
                    continue
                out.append(h)
    return tuple(out)


def lp_corpus():
    return [(p.name, parse_program(p.read_text())) for p in sorted(LP_DIR.glob("*.lp"))]


def random_programs(count=150, atoms=("p", "q"), seed=7):
    """Seeded random programs over at most two atoms, bodies of up to two literals."""
    from stratlat.lp import Literal, Program, Rule

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        rules = []
        for _ in range(rng.randint(0, 4)):
            body = tuple(Literal(rng.choice(atoms), rng.random() < 0.5) for _ in range(rng.randint(0, 2)))
            rules.append(Rule(rng.choice(atoms), body))
        out.append(Program.of(rules, extra_atoms=atoms[: rng.randint(1, len(atoms))]))
    return out

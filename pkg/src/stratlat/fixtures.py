"""Small hand-built lattices, models and towers used by tests and the CLI."""

from __future__ import annotations

from .lattice import LatticeMap, chain, product, validate_lattice
from .stratified import StratifiedLattice, stratify

DIAMOND = ["bot", "0", "1", "top"]


def pentagon_lattice():
    """bot < 0, 0 < 1, 0 < 2, 1 and 2 incomparable, both below top."""
    return validate_lattice(
        ["bot", "0", "1", "2", "top"],
        [("bot", "0"), ("0", "1"), ("0", "2"), ("1", "top"), ("2", "top")],
    )


def diamond_lattice(labels=DIAMOND):
    b, x, y, t = labels
    return validate_lattice(labels, [(b, x), (b, y), (x, t), (y, t)])


def five_element_strong_model() -> StratifiedLattice:
    """Level 0 glues bot and 0; level 1 adds bot ⊑ 0; identity afterwards.

    Both levels also contain the pairs of <= that A6 forces.  The level-1
    generator is (bot, 0): using (bot, 1) instead would relate two elements
    that differ at level 0, which A1 forbids, and would not produce the
    restriction tables the model is meant to have (bot, 0 -> bot at level 0,
    identity at level 1).
    """
    L = pentagon_lattice()
    return stratify(L, [([("bot", "0"), ("0", "bot")], True), ([("bot", "0")], True)])


def four_element_nonstrong_model() -> StratifiedLattice:
    """Diamond with bot =_0 1 at level 0 and bot ⊑_1 1 at level 1.

    A model that fails A4* and A3d.
    """
    L = diamond_lattice()
    return stratify(L, [([("bot", "1"), ("1", "bot")], True), ([("bot", "1")], True)])


def two_level_tower():
    """Diamond below, pentagon above, the map gluing bot and 0.

    Its limit reproduces :func:`five_element_strong_model`.
    """
    from .inverse_limit import validate_system

    low = diamond_lattice(["bot", "1", "2", "top"])
    high = pentagon_lattice()
    h = LatticeMap.from_labels(high, low, {"bot": "bot", "0": "bot", "1": "1", "2": "2", "top": "top"})
    return validate_system([low, high], [h])


def multiset_lattices():
    """(source, target) of the multiset projection: bags of size <= 2 plus top, sets plus top."""
    src = validate_lattice(
        ["e", "a", "b", "aa", "ab", "bb", "top"],
        [
            ("e", "a"), ("e", "b"),
            ("a", "aa"), ("a", "ab"), ("b", "ab"), ("b", "bb"),
            ("aa", "top"), ("ab", "top"), ("bb", "top"),
        ],
    )
    tgt = validate_lattice(
        ["e", "a", "b", "ab", "top"],
        [("e", "a"), ("e", "b"), ("a", "ab"), ("b", "ab"), ("ab", "top")],
    )
    return src, tgt


def multiset_projection() -> LatticeMap:
    """Collapses aa to a and bb to b.  Locally completely additive, not completely additive."""
    src, tgt = multiset_lattices()
    table = {"e": "e", "a": "a", "b": "b", "aa": "a", "ab": "ab", "bb": "b", "top": "top"}
    return LatticeMap.from_labels(src, tgt, table)


def multiset_tower():
    from .inverse_limit import validate_system

    h = multiset_projection()
    return validate_system([h.target, h.source], [h])


def nonlocal_projection() -> LatticeMap:
    """Diamond onto the 2-chain sending everything but top to the bottom.

    A projection whose bottom fiber {bot, a, b} does not contain its join.
    """
    src = diamond_lattice(["bot", "a", "b", "top"])
    tgt = chain(["lo", "hi"])
    return LatticeMap.from_labels(src, tgt, {"bot": "lo", "a": "lo", "b": "lo", "top": "hi"})


def nonlocal_tower():
    from .inverse_limit import validate_system

    h = nonlocal_projection()
    return validate_system([h.target, h.source], [h])


def product_model(factors) -> StratifiedLattice:
    """Product of lattices L_0 x ... x L_{D-1}, where level α compares component α
    and requires equality on earlier components."""
    lat = factors[0]
    for f in factors[1:]:
        lat = product(lat, f, sep="|")
    parts = [tuple(lab.split("|")) for lab in lat.labels]
    idx = [[factors[k].index(p[k]) for k in range(len(factors))] for p in parts]
    rels = []
    for a in range(len(factors)):
        rels.append(
            tuple(
                tuple(
                    factors[a].leq[ix[a]][iy[a]] and all(ix[b] == iy[b] for b in range(a))
                    for iy in idx
                )
                for ix in idx
            )
        )
    return StratifiedLattice(lat, tuple(rels))


def chain_model(length: int, depth: int = 1) -> StratifiedLattice:
    from .stratified import discrete

    return discrete(chain([f"c{i}" for i in range(length)]), depth)

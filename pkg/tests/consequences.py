"""Derived properties that every model must satisfy, checked exhaustively.

``failures(S)`` yields ``(name, witness)`` for each violated property; an
empty result means the model passes the whole suite.  Witnesses use element
labels so they can be replayed by hand.
"""

from __future__ import annotations

import itertools

from stratlat import b_axiomatization_round_trip, check_axiom, lex_leq, restrict

import oracles


def _levels(S):
    return range(S.depth + 1)


def failures(S):
    L = S.lattice
    leq = L.leq
    lab = L.labels
    E = list(S.elements)
    r = {a: [restrict(S, x, a) for x in E] for a in _levels(S)}

    for a in _levels(S):
        for x in E:
            # the class meet and the meet of the α-upset give the same element
            if a < S.depth and r[a][x] != oracles.class_meet(S, a, x):
                yield "class meet", (a, lab[x])
            up = [z for z in E if S.sq(a, x, z)]
            if r[a][x] != L.meet_all(up):
                yield "upset meet", (a, lab[x])
            if not (leq[r[a][x]][x] and S.eq(a, x, r[a][x])):
                yield "restriction below and equivalent", (a, lab[x])
            if any(S.eq(a, x, z) and not leq[r[a][x]][z] for z in E):
                yield "restriction least in class", (a, lab[x])

    for a, b in itertools.product(_levels(S), repeat=2):
        for x in E:
            if a < b and not (leq[r[a][x]][r[b][x]] and S.eq(a, r[a][x], r[b][x])):
                yield "restrictions increase", (a, b, lab[x])
            expected = r[a][x] if a <= b else r[b][x]
            if r[b][r[a][x]] != expected:
                yield "restriction of restriction", (a, b, lab[x])

    for a in _levels(S):
        image = set(r[a])
        for x in E:
            if (x in image) != (x == r[a][x]):
                yield "image is the fixed set", (a, lab[x])
        for x, y in itertools.product(image, repeat=2):
            if S.eq(a, x, y) and x != y:
                yield "level equality is equality on the image", (a, lab[x], lab[y])

    for x in E:
        if L.join_all(r[a][x] for a in _levels(S)) != x:
            yield "join of restrictions", (lab[x],)

    for x, y in itertools.product(E, repeat=2):
        if leq[x][y] != all(leq[r[a][x]][r[a][y]] for a in _levels(S)):
            yield "order is levelwise", (lab[x], lab[y])
        for a in _levels(S):
            if leq[r[a][x]][y] != leq[r[a][x]][r[a][y]]:
                yield "restricted element below", (a, lab[x], lab[y])
            prefix = all(S.eq(b, x, y) for b in range(a))
            rx, ry = r[a][x], r[a][y]
            forms = (
                S.sq(a, x, y),
                leq[rx][ry] and prefix,
                leq[rx][y] and prefix,
                S.sq(a, rx, y),
                S.sq(a, x, ry),
                S.sq(a, rx, ry),
            )
            if len(set(forms)) != 1:
                yield "forms of the level preorder", (a, lab[x], lab[y])
            eq_forms = (S.eq(a, x, y), S.eq(a, rx, y), S.eq(a, rx, ry), rx == ry)
            if len(set(eq_forms)) != 1:
                yield "forms of level equality", (a, lab[x], lab[y])
        if leq[x][y] and not lex_leq(S, x, y):
            yield "order inside lexicographic order", (lab[x], lab[y])

    lm = S.lex_matrix
    for x, y, z in itertools.product(E, repeat=3):
        if lm[x][y] and lm[y][z] and not lm[x][z]:
            yield "lexicographic order transitive", (lab[x], lab[y], lab[z])
    for x, y in itertools.product(E, repeat=2):
        if x != y and lm[x][y] and lm[y][x]:
            yield "lexicographic order antisymmetric", (lab[x], lab[y])

    if check_axiom(S, "A4*").holds:
        # all subsets on small models; pairs (which generate every finite join) otherwise
        families = oracles.subsets(E) if S.n <= 10 else itertools.combinations_with_replacement(E, 2)
        for X in families:
            for a in _levels(S):
                if r[a][L.join_all(X)] != L.join_all(r[a][x] for x in X):
                    yield "restriction keeps joins", (a,) + tuple(lab[x] for x in X)

    rep = check_axiom(S, "A4*d")
    if not rep.holds:
        yield "A4*d", rep.witness

    for rep in b_axiomatization_round_trip(S):
        if not rep.holds:
            yield rep.axiom, rep.witness

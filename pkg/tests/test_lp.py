import pytest

from stratlat import classify, collapse3, decompose, generic_minimum_model, parse_program, rw_minimum_model, v_model, wfs_oracle
from stratlat.errors import ParseError, StateSpaceTooLarge
from stratlat.lp import (
    F,
    T,
    ZERO,
    Literal,
    Rule,
    TruthValue,
    clip_interpretation,
    interp_lex_leq,
    materialize_fp,
    sq_value,
    tp_step,
    v_values,
    verify_fp_weak_monotone,
)
from stratlat.fixpoint import is_weakly_monotone, level_components

from corpus_data import lp_corpus, random_programs


def test_truth_value_chain():
    vals = [F(0), F(1), F(2), ZERO, T(2), T(1), T(0)]
    assert vals == sorted(reversed(vals))
    assert [str(v) for v in vals] == ["F_0", "F_1", "F_2", "0", "T_2", "T_1", "T_0"]
    assert all(TruthValue.parse(str(v)) == v for v in vals)
    assert F(0).negate() == T(1) and T(3).negate() == F(4) and ZERO.negate() == ZERO
    with pytest.raises(ValueError):
        TruthValue.parse("X_1")


def test_parse_examples():
    P = parse_program("p.")
    assert P.rules == (Rule("p"),)
    P = parse_program("p :- q, not r.")
    assert P.rules == (Rule("p", (Literal("q"), Literal("r", False))),)
    assert P.atoms == ("p", "q", "r")
    assert parse_program("p :- not p.").rules == (Rule("p", (Literal("p", False),)),)
    # an atom called "not" is still an atom when nothing follows it
    assert parse_program("p :- not.").rules[0].body == (Literal("not"),)


@pytest.mark.parametrize("text,line,col", [("p :- .", 1, 6), ("p.\nq :- r", 2, 7), ("p :- q;", 1, 7), ("1p.", 1, 1)])
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_program(text)
    assert (exc.value.line, exc.value.column) == (line, col)
    assert str(exc.value).startswith(f"{line}:{col}:")


def test_tp_step_examples():
    P = parse_program("p.")
    assert tp_step(P, {"p": F(0)}) == {"p": T(0)}
    P = parse_program("q :- not p.")
    assert tp_step(P, {"q": F(0), "p": F(0)})["q"] == T(1)
    assert tp_step(P, {"q": F(0), "p": F(0)})["p"] == F(0)
    P = parse_program("p :- not p.")
    assert tp_step(P, {"p": ZERO}) == {"p": ZERO}


def test_minimum_model_examples():
    assert rw_minimum_model(parse_program("p.")).values == {"p": T(0)}
    m = rw_minimum_model(parse_program("q :- not p."))
    assert m.values == {"q": T(1), "p": F(0)}
    assert m.levels == {"q": 1, "p": 0}
    m = rw_minimum_model(parse_program("p :- not p."))
    assert m.values == {"p": ZERO} and m.levels == {"p": None}


def test_collapse3():
    assert collapse3({"a": T(1), "b": F(0), "c": ZERO}) == {"a": "true", "b": "false", "c": "undef"}


def test_wfs_examples():
    assert wfs_oracle(parse_program("p.")) == {"p": "true"}
    assert wfs_oracle(parse_program("p :- not p.")) == {"p": "undef"}
    game = parse_program("wa :- not wb.\nwb :- not wa.\nwc :- not wa.\n")
    assert wfs_oracle(game) == {"wa": "undef", "wb": "undef", "wc": "undef"}


@pytest.mark.parametrize("name,P", lp_corpus(), ids=[n for n, _ in lp_corpus()])
def test_corpus_agrees_with_wfs(name, P):
    m = rw_minimum_model(P)
    assert collapse3(m.values) == wfs_oracle(P)
    assert tp_step(P, m.values) == m.values
    frozen = [a for rec in m.trace for a in rec.frozen]
    assert len(frozen) == len(set(frozen))
    for rec in m.trace:
        assert all(v.level == rec.alpha and v.kind != "0" for v in rec.frozen.values())
    assert set(frozen) | {a for a, v in m.values.items() if v == ZERO} == set(P.atoms)


def test_corpus_is_large_enough():
    names = [n for n, _ in lp_corpus()]
    assert len(names) >= 20
    deepest = max(max([lvl for lvl in rw_minimum_model(P).levels.values() if lvl is not None], default=0) for _, P in lp_corpus())
    assert deepest >= 3


def test_weak_monotonicity_of_program_operator():
    assert verify_fp_weak_monotone(parse_program("p :- not q. q :- not p."), 2)
    assert verify_fp_weak_monotone(parse_program(""), 2)
    assert verify_fp_weak_monotone(parse_program("p."), 2)
    with pytest.raises(StateSpaceTooLarge):
        verify_fp_weak_monotone(parse_program("a. b. c."), 1)
    with pytest.raises(StateSpaceTooLarge):
        generic_minimum_model(parse_program("a."), 3)


@pytest.mark.parametrize("P", random_programs(60), ids=lambda P: str(P).replace("\n", " ") or "empty")
def test_specialised_and_generic_solvers_agree(P):
    rw = rw_minimum_model(P).values
    for depth in (1, 2):
        assert generic_minimum_model(P, depth) == clip_interpretation(rw, depth)


def test_level_components_of_program_operator():
    P = parse_program("p :- not q. q :- p.")
    f = materialize_fp(P, 2)
    fam = level_components(f)
    S = f.model
    for a in S.levels:
        r = S.restriction(a)
        for u in S.image(a):
            assert fam(a, u) == r[f(u)]


def test_value_chain_restriction_and_order():
    for a in range(3):
        for x in v_values(3):
            assert sq_value(a, x, x)
    assert sq_value(0, F(1), T(1)) and sq_value(0, T(1), T(0)) and not sq_value(0, T(0), T(1))
    assert not sq_value(1, F(1), F(0)) and not sq_value(1, T(1), ZERO)
    I, J = {"p": F(0)}, {"p": F(1)}
    assert interp_lex_leq(I, J) and not interp_lex_leq(J, I)


def test_value_model_is_strong_symmetric():
    for atoms in (1, 2):
        S = v_model(atoms, 2)
        assert classify(S) == "strong-symmetric"
        assert is_weakly_monotone(materialize_fp(parse_program("p :- not p."), 1)).holds
        assert len(decompose(S).tower) == 3

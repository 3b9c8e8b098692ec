"""Surface-syntax tests: grammar productions, name registration, errors."""

from __future__ import annotations

import pytest

from dkblite import kb as K
from dkblite.parser import (
    EXISTS_ASSERTION,
    NEG_EXISTS_ASSERTION,
    NEG_SUPEX,
    ParseError,
    SurfaceAxiom,
    parse_dkb,
    parse_query,
)


def one(text: str) -> SurfaceAxiom:
    axioms = parse_dkb(text).axioms
    assert len(axioms) == 1
    return axioms[0]


def err(text: str) -> ParseError:
    with pytest.raises(ParseError) as ei:
        parse_dkb(text)
    return ei.value


def test_subclass_statement():
    ax = one("Professor [= DeptMember.")
    assert ax == SurfaceAxiom(K.SUBCLASS, ("Professor", "DeptMember"))
    assert not ax.defeasible


def test_defeasible_supex():
    ax = one("D(DeptMember [= exists hasCourse).")
    assert ax.shape == K.SUPEX
    assert ax.args == ("DeptMember", "hasCourse")
    assert ax.defeasible


def test_reflexivity_rejected():
    e = err("Ref(R).")
    assert e.kind == "reflexivity-rejected"
    assert (e.line, e.column) == (1, 1)


def test_incomplete_inclusion_is_syntax_error():
    e = err("A [= .")
    assert e.kind == "syntax"
    assert e.line == 1


def test_every_statement_form():
    kb = parse_dkb("""
        % all statement forms in one document
        A(a).  -A(a).  R(a,b).  -R(a,b).
        exists R(a).  -exists R(a).
        A [= B.  A [= -B.  A [= exists R.  A [= -exists R.
        exists R [= B.
        Dis(R,S).  Inv(R,S).  Irr(R).
        D(A [= B).
    """)
    shapes = [ax.shape for ax in kb.axioms]
    assert shapes == [
        K.CONCEPT_ASSERTION, K.NEG_CONCEPT_ASSERTION,
        K.ROLE_ASSERTION, K.NEG_ROLE_ASSERTION,
        EXISTS_ASSERTION, NEG_EXISTS_ASSERTION,
        K.SUBCLASS, K.SUPNOT, K.SUPEX, NEG_SUPEX,
        K.SUBEX, K.DIS, K.INV, K.IRR, K.SUBCLASS,
    ]
    assert kb.axioms[-1].defeasible
    assert kb.concepts == ("A", "B")
    assert kb.roles == ("R", "S")
    assert kb.individuals == ("a", "b")


def test_auto_registration_by_position():
    kb = parse_dkb("worksFor(alice, acme). Employer(acme).")
    assert kb.roles == ("worksFor",)
    assert kb.concepts == ("Employer",)
    assert kb.individuals == ("acme", "alice")


def test_declarations_override_case_convention():
    kb = parse_dkb("concept lower. individual Big. lower(Big).")
    assert kb.axioms == (SurfaceAxiom(K.CONCEPT_ASSERTION, ("lower", "Big")),)


def test_declarations_apply_regardless_of_position():
    # Bare X [= Y reads as a role inclusion once both are known roles,
    # even when the declarations come later in the document.
    kb = parse_dkb("R [= S. role R. role S.")
    assert kb.axioms == (SurfaceAxiom(K.SUBROLE, ("R", "S")),)
    # Without declarations the same statement is a concept inclusion.
    kb2 = parse_dkb("R [= S.")
    assert kb2.axioms == (SurfaceAxiom(K.SUBCLASS, ("R", "S")),)


def test_mixed_role_concept_inclusion_rejected():
    e = err("R(a,b). R [= S.")
    assert e.kind == "unknown-construct"


def test_inverse_role_positions():
    kb = parse_dkb("A [= exists R^-. exists S^- [= B. R^- [= S. Inv(R,S^-).")
    assert [ax.args for ax in kb.axioms] == [
        ("A", "R^-"), ("S^-", "B"), ("R^-", "S"), ("R", "S^-")]
    assert kb.roles == ("R", "S")


def test_d_as_ordinary_predicate():
    # D(...) only wraps when the parentheses hold an axiom, not a bare
    # argument list.
    assert one("D(a).") == SurfaceAxiom(K.CONCEPT_ASSERTION, ("D", "a"))
    assert one("D(a,b).") == SurfaceAxiom(K.ROLE_ASSERTION, ("D", "a", "b"))


def test_nested_defeasible_wrapper_rejected():
    e = err("D(D(A [= B)).")
    assert e.kind == "unknown-construct"


def test_negated_existential_left_side_rejected():
    e = err("-exists R [= B.")
    assert e.kind == "unknown-construct"


def test_reserved_underscore_names():
    e = err("_N0(a).")
    assert e.kind == "syntax"
    assert "reserved" in e.message


def test_error_positions_are_one_based():
    e = err("A(a).\nB(b) C.\n")
    assert e.line == 2
    assert e.column == 6


def test_uppercase_individual_needs_declaration():
    e = err("A(Bob).")
    assert e.kind == "unknown-construct"
    parse_dkb("individual Bob. A(Bob).")


def test_sort_clash_detected():
    e = err("individual R. S(a,b). R(a,b).")
    assert e.kind == "unknown-construct"
    assert "both" in e.message


def test_comments_and_whitespace():
    kb = parse_dkb("% leading comment\n  A(a). % trailing\n\n%! pragma line\n")
    assert len(kb.axioms) == 1


def test_parse_query_forms():
    assert parse_query("DeptMember(alice)") == \
        K.Axiom(K.CONCEPT_ASSERTION, ("DeptMember", "alice"))
    assert parse_query("hasCourse(bob, aux_0).") == \
        K.Axiom(K.ROLE_ASSERTION, ("hasCourse", "bob", "aux_0"))
    assert parse_query("-A(a)") == \
        K.Axiom(K.NEG_CONCEPT_ASSERTION, ("A", "a"))
    assert parse_query("-R(a,b)") == \
        K.Axiom(K.NEG_ROLE_ASSERTION, ("R", "a", "b"))
    with pytest.raises(ParseError):
        parse_query("A [= B")
    with pytest.raises(ParseError):
        parse_query("A(a) junk")

"""Satisfiability, instance entailment, and model reporting for a DKB.

Everything funnels through the same pipeline: compile the KB to a
program, ground it, and inspect answer sets.  Satisfiability takes a
shortcut that needs no enumeration: overriding every candidate
exception at once yields the least constrained consequence set, and
the KB has a justified model exactly when that single least model is
consistent.  Entailment and reporting enumerate answer sets and decode
the exception atoms back to clashing assumptions.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kb as K
from .engine import (
    INCONSISTENT,
    AnswerSet,
    GroundProgram,
    answer_sets,
    ground,
    least_model,
    reduct,
)
from .translate import decode_ovr, output_atom, translate

__all__ = [
    "EntailmentResult",
    "JustifiedModelReport",
    "satisfiable",
    "entails",
    "justified_models",
    "json_report",
]


@dataclass(frozen=True)
class EntailmentResult:
    """Truth value of a query, with a marker for the degenerate case.

    An unsatisfiable KB has no answer sets, so every query holds in all
    of them vacuously; `unsat` keeps that outcome distinguishable."""
    entailed: bool
    unsat: bool

    def __bool__(self) -> bool:
        return self.entailed


@dataclass(frozen=True)
class JustifiedModelReport:
    """One answer set, decoded: the exceptions assumed and the ground
    assertions (positive and strongly negated) derived under them."""
    chi: tuple[K.ClashingAssumption, ...]
    derived_positive: frozenset[K.Axiom]
    derived_negative: frozenset[K.Axiom]


def _assumption_universe(gp: GroundProgram) -> frozenset:
    u = set(gp.ovr_universe)
    for r in gp.rules:
        u.update(r.naf)
    return frozenset(u)


def satisfiable(kb: K.DKB, ovr_on_aux: bool = False) -> bool:
    """Decide satisfiability with a single least-model computation.

    Dropping every rule guarded by a candidate exception leaves the
    fewest derivable consequences any answer set could contain; a clash
    in that set dooms every candidate, and consistency there is what a
    justified model needs."""
    gp = ground(translate(kb, ovr_on_aux))
    return least_model(reduct(gp, _assumption_universe(gp))) is not INCONSISTENT


def entails(kb: K.DKB, query: K.Axiom, max_ovr: int = 20,
            ovr_on_aux: bool = False) -> EntailmentResult:
    """True iff the query's output atom holds in every answer set.

    The query must be a ground assertion over declared names; aux
    constants are permitted as role arguments.  Negated assertion
    shapes test strong-negative membership (an extension: the output
    mapping defines them, but callers should surface them only behind
    an explicit opt-in)."""
    p = translate(kb, ovr_on_aux)
    atom = output_atom(p, query)
    models = answer_sets(ground(p), max_ovr=max_ovr)
    if not models:
        return EntailmentResult(entailed=True, unsat=True)
    return EntailmentResult(
        entailed=all(atom in m.literals for m in models), unsat=False)


def _ca_key(ca: K.ClashingAssumption) -> tuple:
    return (ca.axiom.shape, ca.axiom.args, ca.args)


def _decode(kb: K.DKB, m: AnswerSet) -> JustifiedModelReport:
    chi = sorted((decode_ovr(a) for a in m.ovr_atoms), key=_ca_key)
    assert len(set(chi)) == len(chi)
    pos: list[K.Axiom] = []
    neg: list[K.Axiom] = []
    for l in m.literals:
        if l.pred == "instd":
            ax = (K.neg_concept_assertion(l.args[1], l.args[0]) if l.neg
                  else K.concept_assertion(l.args[1], l.args[0]))
        elif l.pred == "tripled":
            ax = (K.neg_role_assertion(l.args[1], l.args[0], l.args[2])
                  if l.neg
                  else K.role_assertion(l.args[1], l.args[0], l.args[2]))
        else:
            continue
        (neg if l.neg else pos).append(ax)
    if __debug__:
        candidates = set(K.ca_candidates(kb))
        assert all(ca in candidates for ca in chi)
    return JustifiedModelReport(tuple(chi), frozenset(pos), frozenset(neg))


def justified_models(kb: K.DKB, max_ovr: int = 20,
                     ovr_on_aux: bool = False) -> list[JustifiedModelReport]:
    """One report per answer set; empty list iff the KB is unsatisfiable."""
    models = answer_sets(ground(translate(kb, ovr_on_aux)), max_ovr=max_ovr)
    return [_decode(kb, m) for m in models]


def json_report(kb: K.DKB, max_ovr: int = 20,
                ovr_on_aux: bool = False) -> dict:
    """The report as plain data, ready for JSON serialization."""
    reports = justified_models(kb, max_ovr=max_ovr, ovr_on_aux=ovr_on_aux)
    return {
        "satisfiable": bool(reports),
        "unsat_flag": not reports,
        "models": [
            {
                "chi": [{"axiom": ca.axiom.text(), "args": list(ca.args)}
                        for ca in r.chi],
                "positives": sorted(ax.text() for ax in r.derived_positive),
                "negatives": sorted(ax.text() for ax in r.derived_negative),
            }
            for r in reports
        ],
    }

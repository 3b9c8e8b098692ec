"""Compilation of a normal-form DKB into a logic program.

The program has three layers: input facts describing the knowledge base
(one fact per axiom, plus signature facts nom/cls/rol), a fixed rule
schema (strict inference rules, overriding rules that recognize
exceptional instances, application rules that apply defeasible axioms
unless overridden), and supporting facts enumerating the constant pool as
a chain (const/first/next/last) so that "x has no r-successor among all
constants" is computable by recursion along the chain.

Every right-existential axiom, strict or defeasible, owns one auxiliary
constant aux_<i> that stands for the class of successors it introduces;
numbering follows axiom order, strict before defeasible.

Default negation appears exclusively on the ovr predicate, and only in
application rules.  Overriding rules carry a nom(x) guard on their
exception-subject variables so that exceptions range over named
individuals only; translate(ovr_on_aux=True) widens the guard to every
constant for experimentation.
"""

from __future__ import annotations

from . import kb as K
from .program import Literal, Program, Rule, lit, neg

AUX_PREFIX = "aux_"

# Tag constants used as the first argument of ovr atoms.
OVR_TAG = {
    K.CONCEPT_ASSERTION: "insta",
    K.ROLE_ASSERTION: "triplea",
    K.NEG_CONCEPT_ASSERTION: "ninsta",
    K.NEG_ROLE_ASSERTION: "ntriplea",
    K.SUBCLASS: "subClass",
    K.SUPNOT: "supNot",
    K.SUBEX: "subEx",
    K.SUPEX: "supEx",
    K.SUBROLE: "subRole",
    K.DIS: "dis",
    K.INV: "inv",
    K.IRR: "irr",
}
_TAG_SHAPE = {v: k for k, v in OVR_TAG.items()}

# Predicates whose extension is fixed by the input facts; everything else
# (instd, tripled, all_nrel_step, all_nrel, ovr) is derived.
EDB_PREDICATES = frozenset((
    "nom", "cls", "rol", "const", "first", "next", "last",
    "insta", "triplea",
    "subClass", "supNot", "subEx", "supEx", "subRole", "dis", "inv", "irr",
    "def_insta", "def_triplea", "def_ninsta", "def_ntriplea",
    "def_subclass", "def_supnot", "def_subex", "def_supex",
    "def_subr", "def_dis", "def_inv", "def_irr",
))


def strict_rules() -> tuple[Rule, ...]:
    """Inference rules for strict axioms, including the contrapositive
    rules for negative information and the no-successor chain."""
    x, y, y1, w = "?x", "?y", "?y1", "?w"
    c, d, r, s = "?c", "?d", "?r", "?s"
    return (
        Rule(lit("instd", x, c), (lit("insta", x, c),), name="dl_inst"),
        Rule(lit("tripled", x, r, y), (lit("triplea", x, r, y),), name="dl_triple"),
        Rule(lit("instd", x, d),
             (lit("subClass", c, d), lit("instd", x, c)), name="dl_subc"),
        Rule(neg("instd", x, d),
             (lit("supNot", c, d), lit("instd", x, c)), name="dl_supnot"),
        Rule(lit("instd", x, d),
             (lit("subEx", r, d), lit("tripled", x, r, y)), name="dl_subex"),
        Rule(lit("tripled", x, r, w),
             (lit("supEx", c, r, w), lit("instd", x, c)), name="dl_supex"),
        Rule(lit("tripled", x, s, y),
             (lit("subRole", r, s), lit("tripled", x, r, y)), name="dl_subr"),
        Rule(neg("tripled", x, r, y),
             (lit("dis", r, s), lit("tripled", x, s, y)), name="dl_dis1"),
        Rule(neg("tripled", x, s, y),
             (lit("dis", r, s), lit("tripled", x, r, y)), name="dl_dis2"),
        Rule(lit("tripled", y, s, x),
             (lit("inv", r, s), lit("tripled", x, r, y)), name="dl_inv1"),
        Rule(lit("tripled", y, r, x),
             (lit("inv", r, s), lit("tripled", x, s, y)), name="dl_inv2"),
        Rule(neg("tripled", x, r, x),
             (lit("irr", r), lit("const", x)), name="dl_irr"),
        Rule(neg("instd", x, c), (neg("insta", x, c),), name="dl_ninst"),
        Rule(neg("tripled", x, r, y), (neg("triplea", x, r, y),), name="dl_ntriple"),
        Rule(neg("instd", x, c),
             (lit("subClass", c, d), neg("instd", x, d)), name="dl_nsubc"),
        # Contrapositive of "c implies not d": needs the positive fact.
        Rule(neg("instd", x, c),
             (lit("supNot", c, d), lit("instd", x, d)), name="dl_nsupnot"),
        Rule(neg("tripled", x, r, y),
             (lit("subEx", r, d), lit("const", y), neg("instd", x, d)),
             name="dl_nsubex"),
        Rule(neg("instd", x, c),
             (lit("supEx", c, r, w), lit("const", x), lit("all_nrel", x, r)),
             name="dl_nsupex"),
        Rule(neg("tripled", x, r, y),
             (lit("subRole", r, s), neg("tripled", x, s, y)), name="dl_nsubr"),
        Rule(neg("tripled", y, s, x),
             (lit("inv", r, s), neg("tripled", x, r, y)), name="dl_ninv1"),
        Rule(neg("tripled", y, r, x),
             (lit("inv", r, s), neg("tripled", x, s, y)), name="dl_ninv2"),
        # rol(r) keeps the role variable role-sorted during grounding.
        Rule(lit("all_nrel_step", x, r, y),
             (lit("rol", r), lit("first", y), neg("tripled", x, r, y)),
             name="dl_chain1"),
        Rule(lit("all_nrel_step", x, r, y),
             (lit("rol", r), lit("all_nrel_step", x, r, y1),
              lit("next", y1, y), neg("tripled", x, r, y)),
             name="dl_chain2"),
        Rule(lit("all_nrel", x, r),
             (lit("rol", r), lit("last", y), lit("all_nrel_step", x, r, y)),
             name="dl_chain3"),
    )


def overriding_rules(ovr_on_aux: bool = False) -> tuple[Rule, ...]:
    """Rules deriving ovr atoms: one per way a defeasible axiom can clash.

    The guard predicate restricts exception subjects to named individuals
    unless ovr_on_aux is set.
    """
    g = "const" if ovr_on_aux else "nom"
    x, y, w = "?x", "?y", "?w"
    c, d, r, s = "?c", "?d", "?r", "?s"
    return (
        Rule(lit("ovr", "insta", x, c),
             (lit("def_insta", x, c), neg("instd", x, c)), name="ovr_inst"),
        Rule(lit("ovr", "triplea", x, r, y),
             (lit("def_triplea", x, r, y), neg("tripled", x, r, y)),
             name="ovr_triple"),
        Rule(lit("ovr", "ninsta", x, c),
             (lit("def_ninsta", x, c), lit("instd", x, c)), name="ovr_ninst"),
        Rule(lit("ovr", "ntriplea", x, r, y),
             (lit("def_ntriplea", x, r, y), lit("tripled", x, r, y)),
             name="ovr_ntriple"),
        Rule(lit("ovr", "subClass", x, c, d),
             (lit("def_subclass", c, d), lit(g, x),
              lit("instd", x, c), neg("instd", x, d)), name="ovr_subc"),
        Rule(lit("ovr", "supNot", x, c, d),
             (lit("def_supnot", c, d), lit(g, x),
              lit("instd", x, c), lit("instd", x, d)), name="ovr_supnot"),
        Rule(lit("ovr", "subEx", x, r, d),
             (lit("def_subex", r, d), lit(g, x),
              lit("tripled", x, r, y), neg("instd", x, d)), name="ovr_subex"),
        Rule(lit("ovr", "supEx", x, c, r, w),
             (lit("def_supex", c, r, w), lit(g, x),
              lit("instd", x, c), lit("all_nrel", x, r)), name="ovr_supex"),
        Rule(lit("ovr", "subRole", x, y, r, s),
             (lit("def_subr", r, s), lit(g, x), lit(g, y),
              lit("tripled", x, r, y), neg("tripled", x, s, y)),
             name="ovr_subr"),
        Rule(lit("ovr", "dis", x, y, r, s),
             (lit("def_dis", r, s), lit(g, x), lit(g, y),
              lit("tripled", x, r, y), lit("tripled", x, s, y)),
             name="ovr_dis"),
        Rule(lit("ovr", "inv", x, y, r, s),
             (lit("def_inv", r, s), lit(g, x), lit(g, y),
              lit("tripled", x, r, y), neg("tripled", y, s, x)),
             name="ovr_inv1"),
        Rule(lit("ovr", "inv", x, y, r, s),
             (lit("def_inv", r, s), lit(g, x), lit(g, y),
              lit("tripled", y, s, x), neg("tripled", x, r, y)),
             name="ovr_inv2"),
        Rule(lit("ovr", "irr", x, r),
             (lit("def_irr", r), lit(g, x), lit("tripled", x, r, x)),
             name="ovr_irr"),
    )


def application_rules() -> tuple[Rule, ...]:
    """Rules applying defeasible axioms wherever they are not overridden.

    Mirrors the strict rules, with the axiom fact swapped for its
    defeasible variant and a default-negated ovr guard.  The guard tuple
    for inverse-role rules is always the pair in first-role orientation.
    """
    x, y, w = "?x", "?y", "?w"
    c, d, r, s = "?c", "?d", "?r", "?s"
    o = lambda *args: lit("ovr", *args)
    return (
        Rule(lit("instd", x, c), (lit("def_insta", x, c),),
             (o("insta", x, c),), name="app_inst"),
        Rule(lit("tripled", x, r, y), (lit("def_triplea", x, r, y),),
             (o("triplea", x, r, y),), name="app_triple"),
        Rule(neg("instd", x, c), (lit("def_ninsta", x, c),),
             (o("ninsta", x, c),), name="app_ninst"),
        Rule(neg("tripled", x, r, y), (lit("def_ntriplea", x, r, y),),
             (o("ntriplea", x, r, y),), name="app_ntriple"),
        Rule(lit("instd", x, d),
             (lit("def_subclass", c, d), lit("instd", x, c)),
             (o("subClass", x, c, d),), name="app_subc"),
        Rule(neg("instd", x, d),
             (lit("def_supnot", c, d), lit("instd", x, c)),
             (o("supNot", x, c, d),), name="app_supnot"),
        Rule(lit("instd", x, d),
             (lit("def_subex", r, d), lit("tripled", x, r, y)),
             (o("subEx", x, r, d),), name="app_subex"),
        Rule(lit("tripled", x, r, w),
             (lit("def_supex", c, r, w), lit("instd", x, c)),
             (o("supEx", x, c, r, w),), name="app_supex"),
        Rule(lit("tripled", x, s, y),
             (lit("def_subr", r, s), lit("tripled", x, r, y)),
             (o("subRole", x, y, r, s),), name="app_subr"),
        Rule(neg("tripled", x, r, y),
             (lit("def_dis", r, s), lit("tripled", x, s, y)),
             (o("dis", x, y, r, s),), name="app_dis1"),
        Rule(neg("tripled", x, s, y),
             (lit("def_dis", r, s), lit("tripled", x, r, y)),
             (o("dis", x, y, r, s),), name="app_dis2"),
        Rule(lit("tripled", y, s, x),
             (lit("def_inv", r, s), lit("tripled", x, r, y)),
             (o("inv", x, y, r, s),), name="app_inv1"),
        Rule(lit("tripled", x, r, y),
             (lit("def_inv", r, s), lit("tripled", y, s, x)),
             (o("inv", x, y, r, s),), name="app_inv2"),
        Rule(neg("tripled", x, r, x),
             (lit("def_irr", r), lit("const", x)),
             (o("irr", x, r),), name="app_irr"),
        Rule(neg("instd", x, c),
             (lit("def_subclass", c, d), neg("instd", x, d)),
             (o("subClass", x, c, d),), name="app_nsubc"),
        Rule(neg("instd", x, c),
             (lit("def_supnot", c, d), lit("instd", x, d)),
             (o("supNot", x, c, d),), name="app_nsupnot"),
        Rule(neg("tripled", x, r, y),
             (lit("def_subex", r, d), lit("const", y), neg("instd", x, d)),
             (o("subEx", x, r, d),), name="app_nsubex"),
        Rule(neg("instd", x, c),
             (lit("def_supex", c, r, w), lit("const", x),
              lit("all_nrel", x, r)),
             (o("supEx", x, c, r, w),), name="app_nsupex"),
        Rule(neg("tripled", x, r, y),
             (lit("def_subr", r, s), neg("tripled", x, s, y)),
             (o("subRole", x, y, r, s),), name="app_nsubr"),
        Rule(neg("tripled", y, s, x),
             (lit("def_inv", r, s), neg("tripled", x, r, y)),
             (o("inv", x, y, r, s),), name="app_ninv1"),
        Rule(neg("tripled", x, r, y),
             (lit("def_inv", r, s), neg("tripled", y, s, x)),
             (o("inv", x, y, r, s),), name="app_ninv2"),
    )


_SCHEMA_CACHE: dict[bool, tuple[Rule, ...]] = {}


def schema_rules(ovr_on_aux: bool = False) -> tuple[Rule, ...]:
    # The schema is fixed per guard flavour; rules are immutable, so the
    # two variants are built once and shared.
    cached = _SCHEMA_CACHE.get(ovr_on_aux)
    if cached is None:
        cached = strict_rules() + overriding_rules(ovr_on_aux) + application_rules()
        _SCHEMA_CACHE[ovr_on_aux] = cached
    return cached


def aux_prefix(kb: K.DKB) -> str:
    """Normally "aux_"; lengthened when a declared name would collide."""
    names = (set(kb.vocabulary.individuals) | set(kb.vocabulary.concepts)
             | set(kb.vocabulary.roles))
    prefix = AUX_PREFIX
    while any(n.startswith(prefix) for n in names):
        prefix += "_"
    return prefix


def aux_constants(kb: K.DKB) -> list[str]:
    """One constant per right-existential axiom, in aux-numbering order
    (kb.supex_axioms order: strict first, then defeasible)."""
    prefix = aux_prefix(kb)
    return [f"{prefix}{i}" for i in range(len(kb.supex_axioms()))]


def _axiom_fact(ax: K.Axiom, defeasible: bool, aux: str | None) -> Literal:
    s, a = ax.shape, ax.args
    if s == K.CONCEPT_ASSERTION:
        return lit("def_insta", a[1], a[0]) if defeasible else lit("insta", a[1], a[0])
    if s == K.NEG_CONCEPT_ASSERTION:
        return lit("def_ninsta", a[1], a[0]) if defeasible else neg("insta", a[1], a[0])
    if s == K.ROLE_ASSERTION:
        return lit("def_triplea", a[1], a[0], a[2]) if defeasible else lit("triplea", a[1], a[0], a[2])
    if s == K.NEG_ROLE_ASSERTION:
        return lit("def_ntriplea", a[1], a[0], a[2]) if defeasible else neg("triplea", a[1], a[0], a[2])
    pred = {
        K.SUBCLASS: "subclass", K.SUPNOT: "supnot", K.SUBEX: "subex",
        K.SUPEX: "supex", K.SUBROLE: "subr", K.DIS: "dis", K.INV: "inv",
        K.IRR: "irr",
    }[s]
    if defeasible:
        pred = "def_" + pred
    else:
        pred = {"subclass": "subClass", "supnot": "supNot", "subex": "subEx",
                "supex": "supEx", "subr": "subRole", "dis": "dis",
                "inv": "inv", "irr": "irr"}[pred]
    if s == K.SUPEX:
        return lit(pred, a[0], a[1], aux)
    return lit(pred, *a)


def supporting_facts(constants: tuple[str, ...]) -> tuple[Literal, ...]:
    """const per constant plus the first/next/last chain over them."""
    if not constants:
        return ()
    facts = [lit("const", c) for c in constants]
    facts.append(lit("first", constants[0]))
    for a, b in zip(constants, constants[1:]):
        facts.append(lit("next", a, b))
    facts.append(lit("last", constants[-1]))
    return tuple(facts)


def translate(kb: K.DKB, ovr_on_aux: bool = False) -> Program:
    """Compile the knowledge base: schema rules, one input fact per axiom,
    signature facts, and the supporting constant chain."""
    kb = kb.dedup()
    aux = aux_constants(kb)
    constants = kb.vocabulary.individuals + tuple(aux)
    facts: list[Literal] = []
    facts += [lit("nom", i) for i in kb.vocabulary.individuals]
    facts += [lit("cls", c) for c in kb.vocabulary.concepts]
    facts += [lit("rol", r) for r in kb.vocabulary.roles]
    next_aux = iter(aux)
    for defeasible, axioms in ((False, kb.strict), (True, kb.defeasible)):
        for ax in axioms:
            facts.append(_axiom_fact(
                ax, defeasible,
                next(next_aux) if ax.shape == K.SUPEX else None))
    facts += supporting_facts(constants)
    facts = sorted(dict.fromkeys(facts), key=lambda l: (l.pred, l.neg, l.args))
    return Program(schema_rules(ovr_on_aux), tuple(facts), constants)


class UnknownNameError(ValueError):
    pass


def _signature(p: Program) -> tuple[set[str], set[str], set[str]]:
    concepts = {f.args[0] for f in p.facts if f.pred == "cls"}
    roles = {f.args[0] for f in p.facts if f.pred == "rol"}
    return concepts, roles, set(p.constants)


def output_atom(p: Program, query: K.Axiom) -> Literal:
    """The derived literal whose membership in every answer set decides
    the query.  Positive queries map onto instd/tripled; the negated
    assertion shapes map onto the strongly negated literals (extension)."""
    concepts, roles, constants = _signature(p)
    s, a = query.shape, query.args
    if s in (K.CONCEPT_ASSERTION, K.NEG_CONCEPT_ASSERTION):
        if a[0] not in concepts:
            raise UnknownNameError(f"unknown concept {a[0]!r}")
        if a[1] not in constants:
            raise UnknownNameError(f"unknown individual {a[1]!r}")
        atom = lit("instd", a[1], a[0])
        return atom.complement() if s == K.NEG_CONCEPT_ASSERTION else atom
    if s in (K.ROLE_ASSERTION, K.NEG_ROLE_ASSERTION):
        if a[0] not in roles:
            raise UnknownNameError(f"unknown role {a[0]!r}")
        for ind in (a[1], a[2]):
            if ind not in constants:
                raise UnknownNameError(f"unknown individual {ind!r}")
        atom = lit("tripled", a[1], a[0], a[2])
        return atom.complement() if s == K.NEG_ROLE_ASSERTION else atom
    raise ValueError(f"not a ground assertion query: {query.text()}")


def decode_ovr(atom: Literal) -> K.ClashingAssumption:
    """Map a ground ovr atom back to the exception it records."""
    if atom.pred != "ovr" or atom.neg:
        raise ValueError(f"not an ovr atom: {atom.text()}")
    tag, rest = atom.args[0], atom.args[1:]
    shape = _TAG_SHAPE[tag]
    if shape == K.CONCEPT_ASSERTION:
        return K.ClashingAssumption(K.concept_assertion(rest[1], rest[0]), ())
    if shape == K.NEG_CONCEPT_ASSERTION:
        return K.ClashingAssumption(K.neg_concept_assertion(rest[1], rest[0]), ())
    if shape == K.ROLE_ASSERTION:
        return K.ClashingAssumption(K.role_assertion(rest[1], rest[0], rest[2]), ())
    if shape == K.NEG_ROLE_ASSERTION:
        return K.ClashingAssumption(K.neg_role_assertion(rest[1], rest[0], rest[2]), ())
    if shape in (K.SUBCLASS, K.SUPNOT):
        return K.ClashingAssumption(K.Axiom(shape, (rest[1], rest[2])), (rest[0],))
    if shape == K.SUBEX:
        return K.ClashingAssumption(K.subex(rest[1], rest[2]), (rest[0],))
    if shape == K.SUPEX:
        return K.ClashingAssumption(K.supex(rest[1], rest[2]), (rest[0],))
    if shape in (K.SUBROLE, K.DIS, K.INV):
        return K.ClashingAssumption(K.Axiom(shape, (rest[2], rest[3])),
                                    (rest[0], rest[1]))
    return K.ClashingAssumption(K.irr(rest[1]), (rest[0],))

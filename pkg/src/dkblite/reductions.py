"""Brute-force baselines built from two classical constructions.

Repair semantics: a flat (possibly inconsistent) KB becomes a DKB by
wrapping every data assertion as defeasible; entailment over the DKB is
cross-checked against direct enumeration of maximal consistent ABox
subsets.  Circumscription: a positive 2CNF with a distinguished target
variable becomes a DKB over one individual whose justified models track
the formula's minimal models; the target query is cross-checked against
direct enumeration of truth assignments.

Both checkers are deliberately naive full enumerations.  The repair
checker leans on the chase for the classical subroutines (consistency
of a repair, entailment from a repair); the circumscription checker is
pure propositional arithmetic and shares nothing with the pipeline.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import kb as K
from . import parser
from .engine import ResourceLimitError
from .normalize import normalize
from .oracle import DEPTH_EXCEEDED, DepthExceeded, HerbrandModel, chase

__all__ = [
    "FlatKB",
    "Positive2CNF",
    "from_inconsistent_kb",
    "ar_entails_bruteforce",
    "from_2cnf",
    "circ_entails_bruteforce",
    "render_flatkb",
    "parse_flatkb",
    "render_2cnf",
    "parse_2cnf",
]

_ASSERTIONS = frozenset((K.CONCEPT_ASSERTION, K.ROLE_ASSERTION,
                         K.NEG_CONCEPT_ASSERTION, K.NEG_ROLE_ASSERTION))


@dataclass(frozen=True)
class FlatKB:
    """A classical KB split into terminology and data; the data may
    contradict the terminology."""

    tbox: tuple[K.Axiom, ...]
    abox: tuple[K.Axiom, ...]

    def __post_init__(self) -> None:
        for ax in self.tbox:
            if ax.shape in _ASSERTIONS:
                raise ValueError(f"assertion in tbox: {ax.text()}")
        for ax in self.abox:
            if ax.shape not in _ASSERTIONS:
                raise ValueError(f"non-assertion in abox: {ax.text()}")


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def from_inconsistent_kb(k: FlatKB, emulate: bool = False) -> K.DKB:
    """Keep the terminology strict and make every data assertion
    defeasible.  With `emulate`, assertions stay strict and the default
    moves into an inclusion: A(a) becomes A'(a) with defeasible A' [= A
    for a fresh A' (likewise R'(a,b) with R' [= R), so that overriding
    the inclusion at a has the same effect as dropping the assertion."""
    if not emulate:
        return K.DKB.from_axioms(strict=k.tbox, defeasible=k.abox)
    taken = {n for ax in k.tbox + k.abox for n in ax.args}
    primed: dict[tuple[str, str], str] = {}
    strict: list[K.Axiom] = list(k.tbox)
    defeasible: list[K.Axiom] = []
    for ax in k.abox:
        if ax.shape == K.CONCEPT_ASSERTION:
            kind, name = "c", ax.args[0]
        elif ax.shape == K.ROLE_ASSERTION:
            kind, name = "r", ax.args[0]
        else:
            raise ValueError(
                f"no emulation for negated assertion {ax.text()}")
        key = (kind, name)
        if key not in primed:
            primed[key] = _fresh_name(name + "_d", taken)
            if kind == "c":
                defeasible.append(K.subclass(primed[key], name))
            else:
                defeasible.append(K.subrole(primed[key], name))
        if kind == "c":
            strict.append(K.concept_assertion(primed[key], ax.args[1]))
        else:
            strict.append(K.role_assertion(primed[key], ax.args[1],
                                           ax.args[2]))
    return K.DKB.from_axioms(strict=strict, defeasible=defeasible)


def _query_atom(query: K.Axiom):
    if query.shape == K.CONCEPT_ASSERTION:
        return (query.args[0], (query.args[1],))
    if query.shape == K.ROLE_ASSERTION:
        return (query.args[0], (query.args[1], query.args[2]))
    raise ValueError(f"not a positive assertion query: {query.text()}")


def _signature_kwargs(k: FlatKB) -> tuple:
    full = K.DKB.from_axioms(strict=k.tbox + k.abox)
    v = full.vocabulary
    return (v.individuals, v.concepts, v.roles)


# Pure function of hashable arguments; memoized because repair
# enumeration chases the same (terminology, subset) pair once per query.
@lru_cache(maxsize=65536)
def _chase_strict(tbox, abox, sig, depth_cap):
    individuals, concepts, roles = sig
    kb = K.DKB.from_axioms(strict=tbox + abox, individuals=individuals,
                           concepts=concepts, roles=roles)
    result = chase(kb, frozenset(), depth_cap=depth_cap)
    if result is DEPTH_EXCEEDED:
        raise DepthExceeded(frozenset())
    return result


def ar_entails_bruteforce(k: FlatKB, query: K.Axiom,
                          max_abox: int = 12, depth_cap: int = 8) -> bool:
    """Repair-based entailment by full enumeration: keep the maximal
    ABox subsets that are consistent with the terminology, and require
    the query in the chase of every one of them."""
    if len(k.abox) > max_abox:
        raise ResourceLimitError(
            f"abox has {len(k.abox)} assertions, cap is {max_abox}")
    atom = _query_atom(query)
    sig = _signature_kwargs(k)
    consistent: list[frozenset[int]] = []
    models: dict[frozenset[int], HerbrandModel] = {}
    n = len(k.abox)
    for mask in range(1 << n):
        subset = frozenset(i for i in range(n) if mask >> i & 1)
        result = _chase_strict(
            k.tbox, tuple(k.abox[i] for i in sorted(subset)), sig, depth_cap)
        if isinstance(result, HerbrandModel):
            consistent.append(subset)
            models[subset] = result
    repairs = [s for s in consistent
               if not any(s < t for t in consistent)]
    return all(models[s].holds(atom) for s in repairs)


@dataclass(frozen=True)
class Positive2CNF:
    """Conjunction of two-variable positive clauses, with one variable
    singled out as the query target."""

    variables: tuple[str, ...]
    clauses: tuple[tuple[str, str], ...]
    target: str

    def __post_init__(self) -> None:
        if self.target not in self.variables:
            raise ValueError(f"target {self.target!r} not a variable")
        for x, y in self.clauses:
            if x == y:
                raise ValueError(f"clause over a single variable: {x}")
            if x not in self.variables or y not in self.variables:
                raise ValueError(f"clause over undeclared variable: {x},{y}")


def from_2cnf(f: Positive2CNF) -> K.DKB:
    """One concept per variable over the single individual `a`: each
    clause x|y becomes x [= -y (or x [= z when y is the target z), and
    every non-target variable holds by default."""
    c = {x: "v_" + x for x in f.variables}
    strict: list[K.Axiom] = []
    for x, y in f.clauses:
        if f.target == y:
            strict.append(K.subclass(c[x], c[y]))
        elif f.target == x:
            strict.append(K.subclass(c[y], c[x]))
        else:
            strict.append(K.supnot(c[x], c[y]))
    defeasible = [K.concept_assertion(c[x], "a")
                  for x in f.variables if x != f.target]
    return K.DKB.from_axioms(
        strict=strict, defeasible=defeasible,
        individuals=("a",), concepts=tuple(c[x] for x in f.variables))


def circ_entails_bruteforce(f: Positive2CNF, max_vars: int = 20) -> bool:
    """Does the target hold in every model of the formula that is
    minimal in the non-target variables?  Full assignment enumeration."""
    n = len(f.variables)
    if n > max_vars:
        raise ResourceLimitError(f"{n} variables, cap is {max_vars}")
    index = {x: i for i, x in enumerate(f.variables)}
    sats: list[frozenset[str]] = []
    for mask in range(1 << n):
        if all(mask >> index[x] & 1 or mask >> index[y] & 1
               for x, y in f.clauses):
            sats.append(frozenset(x for x in f.variables
                                  if mask >> index[x] & 1))
    minimal = [s for s in sats
               if not any(t - {f.target} < s - {f.target} for t in sats)]
    return all(f.target in s for s in minimal)


# ---------------------------------------------------------------- corpus files
#
# One instance per file in the surface syntax; a pragma comment names
# the query (flat KBs) or the target variable (2CNF instances).

_PRAGMA = re.compile(r"^%!\s*(query|target):\s*(.+?)\s*$", re.MULTILINE)


def _pragma(text: str, key: str) -> str:
    hits = [m.group(2) for m in _PRAGMA.finditer(text) if m.group(1) == key]
    if len(hits) != 1:
        raise ValueError(f"expected exactly one %! {key}: pragma")
    return hits[0]


def render_flatkb(k: FlatKB, query: K.Axiom) -> str:
    kb = K.DKB.from_axioms(strict=k.tbox + k.abox)
    lines = [f"%! query: {query.text()}"]
    v = kb.vocabulary
    lines += [f"concept {n}." for n in v.concepts]
    lines += [f"role {n}." for n in v.roles]
    lines += [f"individual {n}." for n in v.individuals]
    lines += [f"{ax.text()}." for ax in k.tbox + k.abox]
    return "\n".join(lines) + "\n"


def parse_flatkb(text: str) -> tuple[FlatKB, K.Axiom]:
    query = parser.parse_query(_pragma(text, "query"))
    kb = normalize(parser.parse_dkb(text))
    if kb.defeasible:
        raise ValueError("flat corpus files take no defeasible axioms")
    tbox = tuple(ax for ax in kb.strict if ax.shape not in _ASSERTIONS)
    abox = tuple(ax for ax in kb.strict if ax.shape in _ASSERTIONS)
    return FlatKB(tbox, abox), query


def render_2cnf(f: Positive2CNF) -> str:
    kb = from_2cnf(f)
    lines = [f"%! target: {f.target}"]
    lines += [f"concept {n}." for n in kb.vocabulary.concepts]
    lines += ["individual a."]
    lines += [f"{ax.text()}." for ax in kb.strict]
    lines += [f"D({ax.text()})." for ax in kb.defeasible]
    return "\n".join(lines) + "\n"


def parse_2cnf(text: str) -> Positive2CNF:
    target = _pragma(text, "target")
    kb = normalize(parser.parse_dkb(text))
    names = {}
    for n in kb.vocabulary.concepts:
        if not n.startswith("v_"):
            raise ValueError(f"not a clause-variable concept: {n}")
        names[n] = n[2:]
    variables = tuple(names[n] for n in kb.vocabulary.concepts)
    if target not in variables:
        raise ValueError(f"target {target!r} not among the variables")
    clauses = []
    for ax in kb.strict:
        if ax.shape == K.SUPNOT:
            clauses.append((names[ax.args[0]], names[ax.args[1]]))
        elif ax.shape == K.SUBCLASS:
            if names[ax.args[1]] != target:
                raise ValueError(f"stray inclusion {ax.text()}")
            clauses.append((names[ax.args[0]], target))
        else:
            raise ValueError(f"stray axiom {ax.text()}")
    return Positive2CNF(variables, tuple(clauses), target)

"""Stratified semi-naive evaluation of function-free Horn rules.

Rules are written in the usual text form::

    reach(P2) :- wrt(P1, P2), reach(P1).
    attack(TP) :- sub(C1, CI, TP), pub(C, CO, TP), not pro(TP), reach(CI), reach(CO).

Terms starting with an upper-case letter or ``_`` are variables; quoted
strings are constants. Every derived atom keeps the rule instance that
first produced it, so each result has a finite derivation tree whose
leaves are input facts.
"""

import json
import re
from collections import defaultdict
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import networkx as nx
import structlog

from soa_threat_toolkit.core.facts import Atom, FactBase
from soa_threat_toolkit.utils.exceptions import ProgramError

logger = structlog.get_logger(__name__)


class Var(NamedTuple):
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[str, Var]


class Literal(NamedTuple):
    predicate: str
    terms: Tuple[Term, ...]
    negated: bool = False

    def variables(self) -> List[Var]:
        return [t for t in self.terms if isinstance(t, Var)]

    def __str__(self) -> str:
        rendered = ", ".join(str(t) if isinstance(t, Var) else json.dumps(t) for t in self.terms)
        return f"{'not ' if self.negated else ''}{self.predicate}({rendered})"


class Rule(NamedTuple):
    name: str
    head: Literal
    body: Tuple[Literal, ...]

    def __str__(self) -> str:
        return f"{self.head} :- {', '.join(str(b) for b in self.body)}."


class Derivation(NamedTuple):
    """The rule instance that produced an atom."""

    rule: str
    premises: Tuple[Atom, ...]


_LITERAL = re.compile(r"\s*(not\s+)?([a-z_][A-Za-z0-9_]*)\s*\(([^)]*)\)\s*")


def _parse_term(text: str) -> Term:
    text = text.strip()
    if not text:
        raise ProgramError("Empty term")
    if text[0] == '"':
        return json.loads(text)
    if text[0].isupper() or text[0] == "_":
        return Var(text)
    raise ProgramError(f"Cannot parse term '{text}'; quote constants")


def _parse_literal(text: str) -> Literal:
    match = _LITERAL.fullmatch(text)
    if not match:
        raise ProgramError(f"Cannot parse literal '{text.strip()}'")
    negated, predicate, args = match.groups()
    terms = tuple(_parse_term(t) for t in args.split(",")) if args.strip() else ()
    return Literal(predicate, terms, bool(negated))


def _split_body(text: str) -> List[str]:
    parts, depth, current = [], 0, []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    return [p for p in parts if p.strip()]


def parse_rule(name: str, text: str) -> Rule:
    """Parse ``head :- body.`` into a Rule and check it is range restricted.

    Raises:
        ProgramError: If the text is malformed or a head/negated variable
            is not bound by a positive body literal.
    """
    text = text.strip().rstrip(".")
    if ":-" not in text:
        raise ProgramError(f"Rule {name} has no ':-'")
    head_text, body_text = text.split(":-", 1)
    head = _parse_literal(head_text)
    if head.negated:
        raise ProgramError(f"Rule {name} has a negated head")
    body = tuple(_parse_literal(part) for part in _split_body(body_text))

    bound = {v for lit in body if not lit.negated for v in lit.variables()}
    unbound = [v.name for lit in (head,) + tuple(b for b in body if b.negated) for v in lit.variables() if v not in bound]
    if unbound:
        raise ProgramError(f"Rule {name} is not range restricted", sorted(set(unbound)))
    return Rule(name, head, body)


class _Relation:
    """Atoms of one predicate indexed on their first argument."""

    __slots__ = ("atoms", "order", "by_first")

    def __init__(self):
        self.atoms = set()
        self.order: List[Atom] = []
        self.by_first: Dict[str, List[Atom]] = defaultdict(list)

    def add(self, item: Atom) -> bool:
        if item in self.atoms:
            return False
        self.atoms.add(item)
        self.order.append(item)
        if item.args:
            self.by_first[item.args[0]].append(item)
        return True

    def lookup(self, first: Optional[str]) -> Sequence[Atom]:
        if first is None:
            return self.order
        return self.by_first.get(first, ())


def _match(literal: Literal, item: Atom, binding: Dict[Var, str]) -> Optional[Dict[Var, str]]:
    if len(item.args) != len(literal.terms):
        return None
    result = binding
    for term, value in zip(literal.terms, item.args):
        if isinstance(term, Var):
            bound = result.get(term)
            if bound is None:
                if result is binding:
                    result = dict(binding)
                result[term] = value
            elif bound != value:
                return None
        elif term != value:
            return None
    return result


def _ground(literal: Literal, binding: Mapping[Var, str]) -> Atom:
    return Atom(literal.predicate, tuple(binding[t] if isinstance(t, Var) else t for t in literal.terms))


def _first_key(literal: Literal, binding: Mapping[Var, str]) -> Optional[str]:
    if not literal.terms:
        return None
    first = literal.terms[0]
    if isinstance(first, Var):
        return binding.get(first)
    return first


class Program:
    """A stratified rule set.

    Args:
        rules: Rules to evaluate. Rule names must be unique.

    Raises:
        ProgramError: If names collide or negation occurs inside a recursive cycle.
    """

    def __init__(self, rules: Iterable[Rule]):
        self.rules: Tuple[Rule, ...] = tuple(rules)
        names = [r.name for r in self.rules]
        if len(set(names)) != len(names):
            raise ProgramError("Rule names must be unique", sorted({n for n in names if names.count(n) > 1}))
        self.strata: List[List[Rule]] = self._stratify()

    @classmethod
    def from_text(cls, rules: Mapping[str, str]) -> "Program":
        return cls(parse_rule(name, text) for name, text in rules.items())

    def dependency_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for rule in self.rules:
            graph.add_node(rule.head.predicate)
            for lit in rule.body:
                negative = lit.negated or graph.get_edge_data(lit.predicate, rule.head.predicate, {}).get("negative", False)
                graph.add_edge(lit.predicate, rule.head.predicate, negative=negative)
        return graph

    def _stratify(self) -> List[List[Rule]]:
        graph = self.dependency_graph()
        components = list(nx.strongly_connected_components(graph))
        component_of = {node: i for i, members in enumerate(components) for node in members}
        negative_cycles = sorted(
            f"{u} -> {v}"
            for u, v, data in graph.edges(data=True)
            if data["negative"] and component_of[u] == component_of[v]
        )
        if negative_cycles:
            raise ProgramError("Negation inside a recursive cycle; program is not stratifiable", negative_cycles)

        condensed = nx.condensation(graph, scc=components)
        order = nx.lexicographical_topological_sort(
            condensed, key=lambda n: min(condensed.nodes[n]["members"])
        )
        strata = []
        for node in order:
            members = condensed.nodes[node]["members"]
            rules = [r for r in self.rules if r.head.predicate in members]
            if rules:
                strata.append(rules)
        return strata

    def evaluate(self, facts: Union[FactBase, Iterable[Atom]]) -> Dict[Atom, Derivation]:
        """Compute the least model of the program over the given facts.

        Args:
            facts: Input atoms (extensional database).

        Returns:
            Every derived atom that is not an input fact, mapped to the
            rule instance that first produced it. Iteration order of the
            mapping follows derivation order.
        """
        relations: Dict[str, _Relation] = defaultdict(_Relation)
        for item in sorted(facts):
            relations[item.predicate].add(item)

        derived: Dict[Atom, Derivation] = {}
        for number, stratum in enumerate(self.strata):
            recursive = {r.head.predicate for r in stratum}
            rounds = self._evaluate_stratum(stratum, recursive, relations, derived)
            logger.debug("stratum_evaluated", stratum=number, rules=[r.name for r in stratum], rounds=rounds)
        return derived

    def _evaluate_stratum(self, rules, recursive, relations, derived) -> int:
        delta: Dict[str, List[Atom]] = defaultdict(list)
        for rule in rules:
            for item, premises in self._fire(rule, relations, None, None):
                if relations[item.predicate].add(item):
                    derived[item] = Derivation(rule.name, premises)
                    delta[item.predicate].append(item)

        rounds = 1
        while any(delta.values()):
            rounds += 1
            new_delta: Dict[str, List[Atom]] = defaultdict(list)
            for rule in rules:
                for position, lit in enumerate(rule.body):
                    if lit.negated or lit.predicate not in recursive or not delta.get(lit.predicate):
                        continue
                    for item, premises in self._fire(rule, relations, position, delta[lit.predicate]):
                        if relations[item.predicate].add(item):
                            derived[item] = Derivation(rule.name, premises)
                            new_delta[item.predicate].append(item)
            delta = new_delta
        return rounds

    def _fire(self, rule: Rule, relations, delta_position, delta_atoms) -> Iterator[Tuple[Atom, Tuple[Atom, ...]]]:
        positive = [(i, lit) for i, lit in enumerate(rule.body) if not lit.negated]
        negative = [lit for lit in rule.body if lit.negated]
        if delta_position is not None:
            positive.sort(key=lambda pair: pair[0] != delta_position)

        def extend(step: int, binding: Dict[Var, str], premises: Tuple[Atom, ...]):
            if step == len(positive):
                for lit in negative:
                    if _ground(lit, binding) in relations[lit.predicate].atoms:
                        return
                yield _ground(rule.head, binding), premises
                return
            position, lit = positive[step]
            if position == delta_position:
                candidates = delta_atoms
            else:
                candidates = relations[lit.predicate].lookup(_first_key(lit, binding))
            for item in list(candidates):
                extended = _match(lit, item, binding)
                if extended is not None:
                    yield from extend(step + 1, extended, premises + (item,))

        for head, premises in extend(0, {}, ()):
            ordered = self._body_order(rule, positive, premises)
            yield head, ordered

    @staticmethod
    def _body_order(rule: Rule, positive, premises) -> Tuple[Atom, ...]:
        by_position = {position: item for (position, _), item in zip(positive, premises)}
        return tuple(by_position[i] for i in range(len(rule.body)) if i in by_position)


def replay_derivation(item: Atom, derivations: Mapping[Atom, Derivation], facts: FactBase, rules: Mapping[str, Rule]) -> bool:
    """Re-check the derivation tree of an atom down to input facts.

    Args:
        item: The atom to justify.
        derivations: Derived atoms with their recorded rule instances.
        facts: The input facts the derivation must bottom out in.
        rules: Rules by name.

    Returns:
        True iff every node is a fact or a valid, acyclic rule instance.
    """
    done = set()
    active = set()

    def check(current: Atom) -> bool:
        if current in facts or current in done:
            return True
        if current in active or current not in derivations:
            return False
        derivation = derivations[current]
        rule = rules.get(derivation.rule)
        if rule is None:
            return False
        positive = [lit for lit in rule.body if not lit.negated]
        if len(positive) != len(derivation.premises):
            return False
        binding: Optional[Dict[Var, str]] = {}
        for lit, premise in zip(positive, derivation.premises):
            binding = _match(lit, premise, binding)
            if binding is None:
                return False
        if _ground(rule.head, binding) != current:
            return False
        for lit in rule.body:
            if lit.negated and _ground(lit, binding) in facts:
                return False
        active.add(current)
        ok = all(check(p) for p in derivation.premises)
        active.discard(current)
        if ok:
            done.add(current)
        return ok

    return check(item)


def dump_program(program: Program, facts: FactBase, derived: Iterable[Atom] = ()) -> str:
    """Render rules, facts and derived atoms in a line-oriented text form."""
    lines = [f"% {rule.name}\n{rule}" for rule in program.rules]
    lines.append("% facts")
    lines.extend(sorted(str(a) for a in facts.atoms))
    lines.append("% derived")
    lines.extend(sorted(str(a) for a in derived))
    return "\n".join(lines) + "\n"

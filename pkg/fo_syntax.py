"""
First-Order Syntax Module
Terms and formulas over the group signature (*, inv, e, =), their
S-expression text format, substitution and the length metric
"""
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from exceptions import ArityError, FormulaSyntaxError


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const1:
    """The identity constant e"""

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return frozenset()

    @cached_property
    def occurrences(self) -> Dict[int, int]:
        return {}


@dataclass(frozen=True)
class Var:
    """Variable v<index>"""
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"variable index must be natural, got {self.index}")

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return frozenset((self.index,))

    @cached_property
    def occurrences(self) -> Dict[int, int]:
        return {self.index: 1}


@dataclass(frozen=True)
class Mul:
    """Product left * right"""
    left: 'Term'
    right: 'Term'

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return self.left.free_vars | self.right.free_vars

    @cached_property
    def occurrences(self) -> Dict[int, int]:
        counts = dict(self.left.occurrences)
        for var, count in self.right.occurrences.items():
            counts[var] = counts.get(var, 0) + count
        return counts


@dataclass(frozen=True)
class Inv:
    """Inverse of a term"""
    arg: 'Term'

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return self.arg.free_vars

    @cached_property
    def occurrences(self) -> Dict[int, int]:
        return self.arg.occurrences


Term = Union[Const1, Var, Mul, Inv]

E = Const1()


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Eq:
    """Equation lhs = rhs"""
    lhs: Term
    rhs: Term

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return self.lhs.free_vars | self.rhs.free_vars


@dataclass(frozen=True)
class Not:
    """Negation"""
    arg: 'Formula'

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return self.arg.free_vars


def _flatten(kind: type, parts: Sequence['Formula']) -> Tuple['Formula', ...]:
    flat: List[Formula] = []
    for part in parts:
        if isinstance(part, kind):
            flat.extend(part.parts)
        else:
            flat.append(part)
    if not flat:
        raise ValueError(f"{kind.__name__} needs at least one operand")
    return tuple(flat)


@dataclass(frozen=True)
class And:
    """n-ary conjunction, flattened at construction"""
    parts: Tuple['Formula', ...]

    def __post_init__(self):
        object.__setattr__(self, 'parts', _flatten(And, self.parts))

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return frozenset().union(*(p.free_vars for p in self.parts))


@dataclass(frozen=True)
class Or:
    """n-ary disjunction, flattened at construction"""
    parts: Tuple['Formula', ...]

    def __post_init__(self):
        object.__setattr__(self, 'parts', _flatten(Or, self.parts))

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return frozenset().union(*(p.free_vars for p in self.parts))


@dataclass(frozen=True)
class Implies:
    """Implication premise => conclusion"""
    premise: 'Formula'
    conclusion: 'Formula'

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return self.premise.free_vars | self.conclusion.free_vars


@dataclass(frozen=True)
class Forall:
    """Universal quantifier binding v<var>"""
    var: int
    body: 'Formula'

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return self.body.free_vars - {self.var}


@dataclass(frozen=True)
class Exists:
    """Existential quantifier binding v<var>"""
    var: int
    body: 'Formula'

    @cached_property
    def free_vars(self) -> FrozenSet[int]:
        return self.body.free_vars - {self.var}


Formula = Union[Eq, Not, And, Or, Implies, Forall, Exists]
Quantifier = (Forall, Exists)


def Neq(lhs: Term, rhs: Term) -> Not:
    """lhs != rhs, sugar for Not(Eq(lhs, rhs))"""
    return Not(Eq(lhs, rhs))


def free_vars(node: Union[Term, Formula]) -> FrozenSet[int]:
    return node.free_vars


def is_sentence(f: Formula) -> bool:
    return not f.free_vars


@dataclass(frozen=True)
class LengthReport:
    """Size measures of a formula; symbol_count is the length |phi|"""
    symbol_count: int
    quantifier_count: int
    variable_count: int
    depth: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "symbol_count": self.symbol_count,
            "quantifier_count": self.quantifier_count,
            "variable_count": self.variable_count,
            "depth": self.depth,
        }


# ---------------------------------------------------------------------------
# Traversal helpers
# ---------------------------------------------------------------------------

def children(node: Union[Term, Formula]) -> Tuple[Union[Term, Formula], ...]:
    """Direct sub-nodes of a term or formula"""
    if isinstance(node, (Const1, Var)):
        return ()
    if isinstance(node, Mul):
        return (node.left, node.right)
    if isinstance(node, Inv):
        return (node.arg,)
    if isinstance(node, Eq):
        return (node.lhs, node.rhs)
    if isinstance(node, Not):
        return (node.arg,)
    if isinstance(node, (And, Or)):
        return node.parts
    if isinstance(node, Implies):
        return (node.premise, node.conclusion)
    if isinstance(node, (Forall, Exists)):
        return (node.body,)
    raise TypeError(f"not a term or formula: {node!r}")


def walk(node: Union[Term, Formula]) -> Iterator[Union[Term, Formula]]:
    """Pre-order iteration over every node"""
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(children(current)))


def all_vars(node: Union[Term, Formula]) -> FrozenSet[int]:
    """Every variable index occurring in the node, bound or free"""
    found = set()
    for sub in walk(node):
        if isinstance(sub, Var):
            found.add(sub.index)
        elif isinstance(sub, (Forall, Exists)):
            found.add(sub.var)
    return frozenset(found)


def length(f: Union[Term, Formula]) -> LengthReport:
    """
    Measure a formula

    Every quantifier (with its bound variable), connective, '=', '*', 'inv',
    constant and variable occurrence counts as one symbol.

    Args:
        f: Formula (or term) to measure

    Returns:
        LengthReport with symbol, quantifier and variable counts and depth
    """
    symbols = 0
    quantifiers = 0
    for sub in walk(f):
        symbols += 1
        if isinstance(sub, (Forall, Exists)):
            quantifiers += 1
    return LengthReport(
        symbol_count=symbols,
        quantifier_count=quantifiers,
        variable_count=len(all_vars(f)),
        depth=_depth(f),
    )


def _depth(node: Union[Term, Formula]) -> int:
    subs = children(node)
    if not subs:
        return 1
    return 1 + max(_depth(sub) for sub in subs)


def indexed_length(f: Union[Term, Formula]) -> int:
    """Alternate length where a variable index costs its binary digit count"""
    total = 0
    for sub in walk(f):
        if isinstance(sub, Var):
            total += max(1, sub.index.bit_length())
        elif isinstance(sub, (Forall, Exists)):
            total += 1 + max(1, sub.var.bit_length())
        else:
            total += 1
    return total


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

def _substitute_term(t: Term, var: int, replacement: Term) -> Term:
    if var not in t.free_vars:
        return t
    if isinstance(t, Var):
        return replacement
    if isinstance(t, Mul):
        return Mul(_substitute_term(t.left, var, replacement),
                   _substitute_term(t.right, var, replacement))
    if isinstance(t, Inv):
        return Inv(_substitute_term(t.arg, var, replacement))
    return t


def substitute(f: Union[Term, Formula], var: int, t: Term) -> Union[Term, Formula]:
    """
    Capture-avoiding substitution of term t for the free variable v<var>

    A binder that would capture a variable of t is renamed to a fresh index
    first.
    """
    if var not in f.free_vars:
        return f
    if isinstance(f, (Const1, Var, Mul, Inv)):
        return _substitute_term(f, var, t)
    if isinstance(f, Eq):
        return Eq(_substitute_term(f.lhs, var, t), _substitute_term(f.rhs, var, t))
    if isinstance(f, Not):
        return Not(substitute(f.arg, var, t))
    if isinstance(f, And):
        return And(tuple(substitute(p, var, t) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(substitute(p, var, t) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(substitute(f.premise, var, t), substitute(f.conclusion, var, t))

    # Quantifier whose body has var free
    bound, body = f.var, f.body
    if bound in t.free_vars:
        fresh = max(all_vars(body) | t.free_vars | {var, bound}) + 1
        body = substitute(body, bound, Var(fresh))
        bound = fresh
    return type(f)(bound, substitute(body, var, t))


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def render(f: Union[Term, Formula]) -> str:
    """Deterministic S-expression text for a term or formula"""
    if isinstance(f, Const1):
        return "e"
    if isinstance(f, Var):
        return f"v{f.index}"
    if isinstance(f, Mul):
        return f"(* {render(f.left)} {render(f.right)})"
    if isinstance(f, Inv):
        return f"(inv {render(f.arg)})"
    if isinstance(f, Eq):
        return f"(= {render(f.lhs)} {render(f.rhs)})"
    if isinstance(f, Not):
        return f"(not {render(f.arg)})"
    if isinstance(f, And):
        return "(and " + " ".join(render(p) for p in f.parts) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(render(p) for p in f.parts) + ")"
    if isinstance(f, Implies):
        return f"(=> {render(f.premise)} {render(f.conclusion)})"
    if isinstance(f, Forall):
        return f"(forall v{f.var} {render(f.body)})"
    if isinstance(f, Exists):
        return f"(exists v{f.var} {render(f.body)})"
    raise TypeError(f"not a term or formula: {f!r}")


_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")
_VAR = re.compile(r"v(\d+)\Z")


@dataclass
class _Token:
    text: str
    position: int


@dataclass
class _Parser:
    source: str
    tokens: List[_Token] = field(default_factory=list)
    index: int = 0

    def __post_init__(self):
        for match in _TOKEN.finditer(self.source):
            text = match.group()
            if text.isspace() or text.startswith(';'):
                continue
            self.tokens.append(_Token(text, match.start()))

    # Token helpers
    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _position(self) -> int:
        token = self._peek()
        return token.position if token is not None else len(self.source)

    def _next(self, expected: str) -> _Token:
        token = self._peek()
        if token is None:
            raise FormulaSyntaxError(len(self.source), expected)
        self.index += 1
        return token

    def _expect(self, text: str, arity_of: Optional[str] = None):
        token = self._peek()
        if token is None or token.text != text:
            error = ArityError if arity_of is not None else FormulaSyntaxError
            expected = f"'{text}'" if arity_of is None else f"'{text}' closing {arity_of}"
            raise error(self._position(), expected, None if token is None else token.text)
        self.index += 1

    def _variable(self) -> int:
        token = self._next("variable")
        match = _VAR.match(token.text)
        if match is None:
            raise FormulaSyntaxError(token.position, "variable", token.text)
        return int(match.group(1))

    # Grammar
    def term(self) -> Term:
        token = self._next("term")
        if token.text == 'e':
            return E
        match = _VAR.match(token.text)
        if match is not None:
            return Var(int(match.group(1)))
        if token.text != '(':
            raise FormulaSyntaxError(token.position, "term", token.text)

        head = self._next("'*' or 'inv'")
        if head.text == '*':
            left = self._term_argument('*')
            right = self._term_argument('*')
            self._expect(')', '*')
            return Mul(left, right)
        if head.text == 'inv':
            arg = self._term_argument('inv')
            self._expect(')', 'inv')
            return Inv(arg)
        raise FormulaSyntaxError(head.position, "'*' or 'inv'", head.text)

    def _term_argument(self, operator: str) -> Term:
        token = self._peek()
        if token is not None and token.text == ')':
            raise ArityError(token.position, f"argument of {operator}", token.text)
        return self.term()

    def formula(self) -> Formula:
        self._expect('(')
        head = self._next("connective")
        keyword = head.text

        if keyword == '=':
            lhs = self._term_argument('=')
            rhs = self._term_argument('=')
            self._expect(')', '=')
            return Eq(lhs, rhs)
        if keyword == 'not':
            arg = self.formula()
            self._expect(')', 'not')
            return Not(arg)
        if keyword in ('and', 'or'):
            parts = [self.formula()]
            while self._peek() is not None and self._peek().text != ')':
                parts.append(self.formula())
            self._expect(')')
            return And(tuple(parts)) if keyword == 'and' else Or(tuple(parts))
        if keyword == '=>':
            premise = self.formula()
            conclusion = self.formula()
            self._expect(')', '=>')
            return Implies(premise, conclusion)
        if keyword in ('forall', 'exists'):
            var = self._variable()
            body = self.formula()
            self._expect(')', keyword)
            return Forall(var, body) if keyword == 'forall' else Exists(var, body)

        raise FormulaSyntaxError(head.position, "connective", keyword)


def parse(source: str) -> Formula:
    """
    Parse S-expression text into a formula

    Args:
        source: Formula text; ';' starts a comment

    Returns:
        The formula AST

    Raises:
        FormulaSyntaxError: malformed text, with position and expected token
        ArityError: wrong operand count for a fixed-arity constructor
    """
    parser = _Parser(source)
    result = parser.formula()
    leftover = parser._peek()
    if leftover is not None:
        raise FormulaSyntaxError(leftover.position, "end-of-input", leftover.text)
    return result


def parse_term(source: str) -> Term:
    parser = _Parser(source)
    result = parser.term()
    leftover = parser._peek()
    if leftover is not None:
        raise FormulaSyntaxError(leftover.position, "end-of-input", leftover.text)
    return result

"""
Model Checking Module
First-order evaluation of formulas over finite groups, with memoization,
equation solving inside quantifier blocks and a node budget
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config import Config
from exceptions import (BudgetExceeded, InvariantViolation, NotClosed,
                        UnboundVariable)
from fo_syntax import (And, Const1, Eq, Exists, Forall, Formula, Implies, Inv,
                       Mul, Not, Or, Term, Var, all_vars, length)
from group_kernel import Group, GroupTable, as_table, is_isomorphic

logger = logging.getLogger(__name__)


@dataclass
class Environment:
    """Variable index -> element index"""
    bindings: Dict[int, int] = field(default_factory=dict)

    def bind(self, var: int, element: int) -> 'Environment':
        return Environment({**self.bindings, var: element})


@dataclass
class CheckOutcome:
    value: bool
    nodes_visited: int
    elapsed: float

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "nodes_visited": self.nodes_visited, "elapsed": self.elapsed}


def quantifier_depth(f: Formula) -> int:
    """Maximum nesting of quantifiers"""
    if isinstance(f, (Forall, Exists)):
        return 1 + quantifier_depth(f.body)
    if isinstance(f, Eq):
        return 0
    if isinstance(f, Not):
        return quantifier_depth(f.arg)
    if isinstance(f, (And, Or)):
        return max(quantifier_depth(p) for p in f.parts)
    if isinstance(f, Implies):
        return max(quantifier_depth(f.premise), quantifier_depth(f.conclusion))
    raise TypeError(f"not a formula: {f!r}")


@dataclass
class _BlockPlan:
    """Evaluation plan for a chain of existential quantifiers over a conjunction"""
    variables: List[int]
    upfront: List[Formula]
    checks: List[List[Formula]]
    solvers: List[Optional[Eq]]


def _solvable_for(eq: Eq, var: int) -> bool:
    return eq.lhs.occurrences.get(var, 0) + eq.rhs.occurrences.get(var, 0) == 1


class ModelChecker:
    """Evaluates formulas over one finite group"""

    def __init__(self, group: Group, budget: Optional[int] = None, memo: Optional[bool] = None):
        """
        Initialize the checker

        Args:
            group: Group to evaluate in (permutation groups are tabulated)
            budget: Node budget (default Config.BUDGET)
            memo: Memoize quantifier nodes; None switches it on for
                formulas with more than Config.MEMO_QUANTIFIERS quantifiers
        """
        self.logger = logging.getLogger(__name__)
        self.table: GroupTable = as_table(group)
        self.rows = self.table.rows
        self.inverses = self.table.inverses
        self.identity = self.table.identity
        self.elements = range(self.table.order)
        self.budget = Config.BUDGET if budget is None else budget
        self.memo_setting = memo

        self.nodes = 0
        self._memo: Dict[Tuple[int, Tuple[int, ...]], bool] = {}
        self._memo_on = False
        self._keys: Dict[int, Tuple[int, ...]] = {}
        self._plans: Dict[int, _BlockPlan] = {}
        self._narrowing: Dict[int, Optional[Tuple[Eq, ...]]] = {}

    # ------------------------------------------------------------------
    # Public entry points
    # ------------------------------------------------------------------

    def evaluate(self, f: Formula, env: Optional[Environment] = None) -> CheckOutcome:
        """
        Evaluate f under env

        Raises:
            UnboundVariable: a free variable of f has no binding
            BudgetExceeded: more than budget nodes visited
        """
        env = env or Environment()
        missing = sorted(v for v in f.free_vars if v not in env.bindings)
        if missing:
            raise UnboundVariable(f"variables {missing} are free but unbound")
        for var, element in env.bindings.items():
            if not 0 <= element < self.table.order:
                raise ValueError(f"v{var} is bound to {element}, not an element index")

        report = length(f)
        self._memo_on = (report.quantifier_count > Config.MEMO_QUANTIFIERS
                         if self.memo_setting is None else self.memo_setting)
        self._memo.clear()
        self._keys.clear()
        self._plans.clear()
        self._narrowing.clear()
        self.nodes = 0

        values: List[Optional[int]] = [None] * (max(self._all_indices(f, env)) + 1)
        for var, element in env.bindings.items():
            values[var] = element

        start = time.perf_counter()
        value = self._eval(f, values)
        elapsed = time.perf_counter() - start

        ceiling = (self.table.order + 1) ** quantifier_depth(f) * report.symbol_count
        if self.nodes > ceiling:
            raise InvariantViolation(f"visited {self.nodes} nodes, above the ceiling {ceiling}")
        return CheckOutcome(value=value, nodes_visited=self.nodes, elapsed=elapsed)

    @staticmethod
    def _all_indices(f: Formula, env: Environment) -> List[int]:
        return [0, *all_vars(f), *env.bindings]

    # ------------------------------------------------------------------
    # Terms
    # ------------------------------------------------------------------

    def _term(self, t: Term, values: List[Optional[int]]) -> int:
        if isinstance(t, Var):
            return values[t.index]
        if isinstance(t, Mul):
            return self.rows[self._term(t.left, values)][self._term(t.right, values)]
        if isinstance(t, Inv):
            return self.inverses[self._term(t.arg, values)]
        return self.identity

    def _solve(self, t: Term, target: int, var: int, values: List[Optional[int]]) -> int:
        """Value of var making t evaluate to target; var occurs exactly once in t"""
        while not isinstance(t, Var):
            if isinstance(t, Inv):
                target = self.inverses[target]
                t = t.arg
            elif var in t.left.free_vars:
                target = self.rows[target][self.inverses[self._term(t.right, values)]]
                t = t.left
            else:
                target = self.rows[self.inverses[self._term(t.left, values)]][target]
                t = t.right
        return target

    def _solve_eq(self, eq: Eq, var: int, values: List[Optional[int]]) -> int:
        if var in eq.lhs.free_vars:
            return self._solve(eq.lhs, self._term(eq.rhs, values), var, values)
        return self._solve(eq.rhs, self._term(eq.lhs, values), var, values)

    # ------------------------------------------------------------------
    # Formulas
    # ------------------------------------------------------------------

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"node budget {self.budget:,} exhausted")

    def _eval(self, f: Formula, values: List[Optional[int]]) -> bool:
        self._tick()

        if isinstance(f, Eq):
            return self._term(f.lhs, values) == self._term(f.rhs, values)
        if isinstance(f, Not):
            return not self._eval(f.arg, values)
        if isinstance(f, And):
            return all(self._eval(p, values) for p in f.parts)
        if isinstance(f, Or):
            return any(self._eval(p, values) for p in f.parts)
        if isinstance(f, Implies):
            return (not self._eval(f.premise, values)) or self._eval(f.conclusion, values)

        if self._memo_on:
            key = (id(f), tuple(values[v] for v in self._key_vars(f)))
            cached = self._memo.get(key)
            if cached is not None:
                return cached
            result = self._quantifier(f, values)
            self._memo[key] = result
            return result
        return self._quantifier(f, values)

    def _key_vars(self, f: Formula) -> Tuple[int, ...]:
        key = self._keys.get(id(f))
        if key is None:
            key = tuple(sorted(f.free_vars))
            self._keys[id(f)] = key
        return key

    def _quantifier(self, f: Formula, values: List[Optional[int]]) -> bool:
        if isinstance(f, Exists):
            return self._exists_block(f, values)
        if isinstance(f, Forall):
            return self._forall(f, values)
        raise TypeError(f"not a formula: {f!r}")

    def _forall(self, f: Forall, values: List[Optional[int]]) -> bool:
        var = f.var
        saved = values[var]
        narrowing = self._forall_narrowing(f)
        try:
            if narrowing is not None:
                # forall x ((x = s or x = t ...) -> B): only the solutions matter
                candidates = []
                for eq in narrowing:
                    solution = self._solve_eq(eq, var, values)
                    if solution not in candidates:
                        candidates.append(solution)
                body = f.body.conclusion
            else:
                candidates = self.elements
                body = f.body
            for element in candidates:
                values[var] = element
                if not self._eval(body, values):
                    return False
            return True
        finally:
            values[var] = saved

    def _forall_narrowing(self, f: Forall) -> Optional[Tuple[Eq, ...]]:
        key = id(f)
        if key not in self._narrowing:
            result = None
            if isinstance(f.body, Implies):
                premise = f.body.premise
                equations = premise.parts if isinstance(premise, Or) else (premise,)
                if all(isinstance(eq, Eq) and _solvable_for(eq, f.var) for eq in equations):
                    result = tuple(equations)
            self._narrowing[key] = result
        return self._narrowing[key]

    def _plan(self, f: Exists) -> _BlockPlan:
        plan = self._plans.get(id(f))
        if plan is not None:
            return plan

        variables: List[int] = []
        body: Formula = f
        while isinstance(body, Exists) and body.var not in variables:
            variables.append(body.var)
            body = body.body
        conjuncts = body.parts if isinstance(body, And) else (body,)

        position = {var: i for i, var in enumerate(variables)}
        upfront: List[Formula] = []
        checks: List[List[Formula]] = [[] for _ in variables]
        solvers: List[Optional[Eq]] = [None] * len(variables)
        for conjunct in conjuncts:
            levels = [position[v] for v in conjunct.free_vars if v in position]
            if not levels:
                upfront.append(conjunct)
                continue
            level = max(levels)
            checks[level].append(conjunct)
            if solvers[level] is None and isinstance(conjunct, Eq) and _solvable_for(conjunct, variables[level]):
                solvers[level] = conjunct

        plan = _BlockPlan(variables, upfront, checks, solvers)
        self._plans[id(f)] = plan
        return plan

    def _exists_block(self, f: Exists, values: List[Optional[int]]) -> bool:
        plan = self._plan(f)
        for conjunct in plan.upfront:
            if not self._eval(conjunct, values):
                return False

        saved = [values[var] for var in plan.variables]
        try:
            return self._search(plan, 0, values)
        finally:
            for var, old in zip(plan.variables, saved):
                values[var] = old

    def _search(self, plan: _BlockPlan, level: int, values: List[Optional[int]]) -> bool:
        if level == len(plan.variables):
            return True
        var = plan.variables[level]
        solver = plan.solvers[level]
        candidates = (self._solve_eq(solver, var, values),) if solver is not None else self.elements
        for element in candidates:
            self._tick()
            values[var] = element
            if all(self._eval(c, values) for c in plan.checks[level]) and \
               self._search(plan, level + 1, values):
                return True
        return False


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------

def eval_formula(f: Formula, group: Group, env: Optional[Environment] = None,
                 budget: Optional[int] = None, memo: Optional[bool] = None) -> CheckOutcome:
    """Evaluate f in group under env (see ModelChecker.evaluate)"""
    return ModelChecker(group, budget=budget, memo=memo).evaluate(f, env)


def check_sentence(sentence: Formula, group: Group, budget: Optional[int] = None,
                   memo: Optional[bool] = None, jobs: Optional[int] = None) -> CheckOutcome:
    """
    Truth value of a sentence in group

    Args:
        sentence: Closed formula
        group: Structure to check
        budget: Node budget (default Config.BUDGET)
        memo: Force memoization on or off
        jobs: Worker processes for the outermost quantifier (default Config.JOBS)

    Raises:
        NotClosed: sentence has free variables
    """
    if sentence.free_vars:
        raise NotClosed(f"free variables {sorted(sentence.free_vars)}")
    jobs = Config.JOBS if jobs is None else jobs
    if jobs > 1 and isinstance(sentence, (Forall, Exists)):
        from workers import check_split
        return check_split(sentence, as_table(group), jobs, budget=budget, memo=memo)
    return eval_formula(sentence, group, budget=budget, memo=memo)


def reference_eval(f: Formula, group: Group, env: Optional[Environment] = None) -> bool:
    """Plain Tarskian evaluation: no short-circuit, memo or narrowing"""
    table = as_table(group)
    bindings = dict(env.bindings) if env else {}
    missing = sorted(v for v in f.free_vars if v not in bindings)
    if missing:
        raise UnboundVariable(f"variables {missing} are free but unbound")

    def term(t: Term, b: Dict[int, int]) -> int:
        if isinstance(t, Const1):
            return table.identity
        if isinstance(t, Var):
            return b[t.index]
        if isinstance(t, Mul):
            return table.rows[term(t.left, b)][term(t.right, b)]
        return table.inverses[term(t.arg, b)]

    def formula(g: Formula, b: Dict[int, int]) -> bool:
        if isinstance(g, Eq):
            return term(g.lhs, b) == term(g.rhs, b)
        if isinstance(g, Not):
            return not formula(g.arg, b)
        if isinstance(g, And):
            return all([formula(p, b) for p in g.parts])
        if isinstance(g, Or):
            return any([formula(p, b) for p in g.parts])
        if isinstance(g, Implies):
            premise, conclusion = formula(g.premise, b), formula(g.conclusion, b)
            return (not premise) or conclusion
        results = [formula(g.body, {**b, g.var: x}) for x in range(table.order)]
        return all(results) if isinstance(g, Forall) else any(results)

    return formula(f, bindings)


@dataclass
class UniquenessReport:
    """Where a sentence holds across a catalog"""
    target: Optional[str]
    unique: bool
    models: List[str]
    violators: List[str]
    skipped: List[str]
    outcomes: Dict[str, CheckOutcome] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "unique": self.unique,
            "models": list(self.models),
            "violators": list(self.violators),
            "skipped": list(self.skipped),
            "outcomes": {name: o.to_dict() for name, o in self.outcomes.items()},
        }


def describes_uniquely(sentence: Formula, target: Optional[Group],
                       catalog: Sequence[Tuple[str, Group]],
                       max_order: Optional[int] = None,
                       budget: Optional[int] = None) -> UniquenessReport:
    """
    Check that a sentence holds exactly on the catalog members isomorphic to target

    Args:
        sentence: Closed formula
        target: Intended model; None uses the first model found
        catalog: (name, group) pairs
        max_order: Members above this order are skipped
        budget: Node budget per check

    Returns:
        UniquenessReport; violators are models not isomorphic to the target
        and non-models isomorphic to it
    """
    models, violators, skipped = [], [], []
    outcomes: Dict[str, CheckOutcome] = {}
    target_table = as_table(target) if target is not None else None
    target_name = getattr(target, "name", None) if target is not None else None

    for name, group in catalog:
        if max_order is not None and group.order > max_order:
            skipped.append(name)
            continue
        outcome = check_sentence(sentence, group, budget=budget)
        outcomes[name] = outcome
        logger.debug(f"{name}: {outcome.value} ({outcome.nodes_visited:,} nodes)")
        if outcome.value:
            models.append(name)
            if target_table is None:
                target_table, target_name = as_table(group), name
        if target_table is None:
            continue
        isomorphic = is_isomorphic(target_table, as_table(group)) is not None
        if outcome.value != isomorphic:
            violators.append(name)

    # Non-models seen before the first model have to be rechecked against it
    if target is None and target_table is not None:
        violators = [name for name, group in catalog
                     if name in outcomes and
                     outcomes[name].value != (is_isomorphic(target_table, as_table(group)) is not None)]

    unique = target_table is not None and not violators
    logger.info(f"Uniqueness sweep: {len(models)} model(s), {len(violators)} violator(s), "
                f"{len(skipped)} skipped")
    return UniquenessReport(
        target=target_name, unique=unique, models=models,
        violators=violators, skipped=skipped, outcomes=outcomes,
    )

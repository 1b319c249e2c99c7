"""
Sentence Synthesis Module
Builds generation formulas delta_{v,k}, describing sentences psi from
presentations, and checks the premises those sentences rely on
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from catalog import GaloisField, psl_group
from config import Config
from exceptions import (DiameterExceeded, InvariantViolation, NotGenerating,
                        NotSimple, PresentationFails, SizeLimit)
from fo_syntax import (And, E, Eq, Exists, Forall, Formula, Implies, Inv, Mul,
                       Neq, Or, Term, Var, length)
from group_kernel import (Group, Permutation, PermGroup, Presentation, Word,
                          alternating_generators, bfs_words, ceil_log2,
                          eval_word, is_simple)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SynthConstants:
    """
    Published length constants

    |delta_{v,k}| <= A*k + B*v + C and |psi| <= D*(v + l) + E, where l is the
    presentation length. Both delta bounds hold with equality.
    """
    A: int = 10
    B: int = 17
    C: int = 1
    D: int = 17
    E: int = 18

    def delta_bound(self, v: int, k: int) -> int:
        return self.A * k + self.B * v + self.C

    def psi_bound(self, v: int, presentation_length: int, guard_excess: int = 0) -> int:
        return self.D * (v + presentation_length) + self.E + guard_excess

    def to_dict(self) -> Dict[str, int]:
        return {"A": self.A, "B": self.B, "C": self.C, "D": self.D, "E": self.E}


SYNTH_CONSTANTS = SynthConstants()

# Symbol count of the three-element guard, the largest guard the D, E bound covers
AT_LEAST_3_GUARD_LENGTH = 15


class Variant(str, Enum):
    """Nontriviality guard placed in front of the relator equations"""
    SIMPLE = "simple"
    AT_LEAST_3 = "at_least_3"
    AT_LEAST = "at_least"


@dataclass
class DescriptionJob:
    """Everything needed to synthesize and verify one describing sentence"""
    presentation: Presentation
    target: Group
    assignment: List[Any]
    v: Optional[int] = None
    variant: Variant = Variant.SIMPLE
    min_order: int = 3
    name: str = ""

    def __post_init__(self):
        self.variant = Variant(self.variant)
        if len(self.assignment) != self.presentation.generator_count:
            raise ValueError(
                f"assignment has {len(self.assignment)} elements for "
                f"{self.presentation.generator_count} generators")
        if self.v is not None and self.v < 0:
            raise ValueError("diameter exponent v must be >= 0")
        if self.variant is Variant.AT_LEAST_3:
            self.min_order = 3
        if self.variant is Variant.AT_LEAST and self.min_order < 2:
            raise ValueError("min_order must be at least 2")


@dataclass
class PresentationReport:
    """Outcome of checking a job's premises"""
    relators_ok: bool
    generates: bool
    diameter: Optional[int]
    v: Optional[int]
    v_ok: bool
    failing_relators: List[int] = field(default_factory=list)
    reached: int = 0
    target_order: int = 0

    @property
    def ok(self) -> bool:
        return self.relators_ok and self.generates and self.v_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "relators_ok": self.relators_ok,
            "generates": self.generates,
            "diameter": self.diameter,
            "v": self.v,
            "v_ok": self.v_ok,
            "failing_relators": list(self.failing_relators),
            "reached": self.reached,
            "target_order": self.target_order,
        }


def word_to_term(word: Word) -> Term:
    """Left-associated product with generator x_j as variable v<j+1>"""
    term: Optional[Term] = None
    for index, sign in word.letters:
        letter = Var(index + 1) if sign == 1 else Inv(Var(index + 1))
        term = letter if term is None else Mul(term, letter)
    return E if term is None else term


def _delta(level: int, k: int, g: int) -> Formula:
    if level == 0:
        parts = []
        for j in range(1, k + 1):
            parts.extend([Eq(Var(g), Var(j)), Eq(Var(g), Inv(Var(j))), Eq(Var(g), E)])
        return Or(tuple(parts))

    u, v, w = k + 3 * level - 2, k + 3 * level - 1, k + 3 * level
    shared = Forall(w, Implies(Or((Eq(Var(w), Var(u)), Eq(Var(w), Var(v)))),
                               _delta(level - 1, k, w)))
    return Exists(u, Exists(v, And((Eq(Var(g), Mul(Var(u), Var(v))), shared))))


def delta_formula(v: int, k: int) -> Formula:
    """
    Generation formula delta_{v,k}(g; x_1..x_k)

    True at g iff g is a product of at most 2^v letters x_j^{+-1}. Each level
    splits g = u*v and reuses one copy of the level below through
    forall w ((w = u or w = v) -> delta(w)).

    Args:
        v: Diameter exponent
        k: Generator count

    Returns:
        Formula with free variables v0 (g) and v1..vk (x_1..x_k)
    """
    if k < 1:
        raise ValueError("delta needs k >= 1")
    if v < 0:
        raise ValueError("delta needs v >= 0")
    formula = _delta(v, k, 0)
    symbols = length(formula).symbol_count
    if symbols > SYNTH_CONSTANTS.delta_bound(v, k):
        raise InvariantViolation(f"|delta_{v},{k}| = {symbols} exceeds its published bound")
    return formula


def at_least_guard(min_order: int, first_var: int) -> Formula:
    """Sentence saying the group has at least min_order elements"""
    names = [Var(first_var + i) for i in range(min_order - 1)]
    parts = [Neq(a, E) for a in names]
    parts.extend(Neq(a, b) for i, a in enumerate(names) for b in names[i + 1:])
    body: Formula = And(tuple(parts))
    for var in reversed(names):
        body = Exists(var.index, body)
    return body


def _guard(job: DescriptionJob) -> Formula:
    k = job.presentation.generator_count
    if job.variant is Variant.SIMPLE:
        return Neq(Var(1), E)
    return at_least_guard(job.min_order, k + 1)


def psi_bound_for(job: DescriptionJob, v: int) -> int:
    """Published psi bound for a job, plus any guard longer than the three-element guard"""
    excess = max(0, length(_guard(job)).symbol_count - AT_LEAST_3_GUARD_LENGTH)
    return SYNTH_CONSTANTS.psi_bound(v, job.presentation.presentation_length, excess)


def verify_presentation(job: DescriptionJob) -> PresentationReport:
    """
    Check a job's premises without raising

    Evaluates every relator under the assignment, checks that the assignment
    generates the target, and measures the Cayley diameter against 2^v
    (v = ceil(log2 diameter) when the job leaves it open).
    """
    target = job.target
    failing = []
    for position, relator in enumerate(job.presentation.relators):
        if eval_word(relator, job.assignment, target) != target.identity:
            failing.append(position)

    geodesics = bfs_words(target, job.assignment)
    generates = len(geodesics) == target.order
    diameter = max(entry.distance for entry in geodesics.values()) if generates else None

    v = job.v
    if v is None and diameter is not None:
        v = ceil_log2(diameter)
    v_ok = diameter is not None and v is not None and diameter <= 2 ** v

    report = PresentationReport(
        relators_ok=not failing,
        generates=generates,
        diameter=diameter,
        v=v,
        v_ok=v_ok,
        failing_relators=failing,
        reached=len(geodesics),
        target_order=target.order,
    )
    logger.debug(f"Presentation check {job.name or ''}: {report.to_dict()}")
    return report


def describing_sentence(job: DescriptionJob, require_simple: bool = True) -> Formula:
    """
    Describing sentence psi for a presented group

    psi = exists x_1..x_k (guard and r_1 = e and ... and forall g delta_v(g; x)).

    Args:
        job: Presentation, target, assignment, v and variant
        require_simple: Enforce simplicity of the target for the simple variant

    Returns:
        Closed formula psi

    Raises:
        PresentationFails: relators do not vanish or the assignment does not generate
        DiameterExceeded: diameter larger than 2^v
        NotSimple: variant simple on a non-simple target
    """
    report = verify_presentation(job)
    if not report.relators_ok:
        raise PresentationFails(f"relators {report.failing_relators} do not vanish under the assignment")
    if not report.generates:
        raise PresentationFails(
            f"assignment generates {report.reached} of {report.target_order} elements")
    if not report.v_ok:
        raise DiameterExceeded(f"diameter {report.diameter} exceeds 2^{report.v}")
    if job.variant is Variant.SIMPLE and require_simple and not is_simple(job.target):
        raise NotSimple(f"{getattr(job.target, 'name', '') or 'target'} is not simple")

    presentation = job.presentation
    k = presentation.generator_count
    v = report.v

    guard = _guard(job)
    relations = [Eq(word_to_term(r), E) for r in presentation.relators]
    body = And((guard, *relations, Forall(0, delta_formula(v, k))))
    sentence: Formula = body
    for index in range(k, 0, -1):
        sentence = Exists(index, sentence)

    symbols = length(sentence).symbol_count
    bound = psi_bound_for(job, v)
    if symbols > bound:
        raise InvariantViolation(f"|psi| = {symbols} exceeds its bound {bound}")

    logger.info(f"Synthesized psi for {job.name or 'job'}: {symbols} symbols "
                f"(v={v}, l={presentation.presentation_length}, bound {bound})")
    return sentence


def alternating_presentation(k: int) -> Tuple[Presentation, List[Permutation], PermGroup]:
    """
    Carmichael presentation of A_k

    Generators x_i = (0 1 i+1) for i = 1..k-2 with relators x_i^3 and
    (x_i x_j)^2 for i < j.

    Returns:
        (presentation, assignment, A_k as a permutation group)
    """
    if k < 3:
        raise ValueError("alternating presentation needs k >= 3")
    count = k - 2
    assignment = [Permutation.from_cycles([(0, 1, i + 2)], k) for i in range(count)]
    relators = [Word(((i, 1),) * 3) for i in range(count)]
    for i in range(count):
        for j in range(i + 1, count):
            relators.append(Word(((i, 1), (j, 1)) * 2))
    group = PermGroup(k, alternating_generators(k), name=f"A{k}")
    return Presentation(count, tuple(relators)), assignment, group


@dataclass
class RowReductionReport:
    """Elementary-transvection word lengths over PSL_n(q)"""
    n: int
    q: int
    order: int
    max_factors: int
    bound: int
    distribution: Dict[int, int]

    @property
    def holds(self) -> bool:
        return self.max_factors <= self.bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "q": self.q,
            "order": self.order,
            "max_factors": self.max_factors,
            "bound": self.bound,
            "holds": self.holds,
            "distribution": {str(d): c for d, c in sorted(self.distribution.items())},
        }


def psl_row_reduction_check(n: int, q: int, group: Optional[PermGroup] = None,
                            elementary: Optional[Sequence[Permutation]] = None) -> RowReductionReport:
    """
    Shortest elementary-transvection factorizations of every element of PSL_n(q)

    Args:
        n: Matrix size (2 or 3)
        q: Field size
        group: PSL_n(q) acting on projective points (built when omitted)
        elementary: Images of the elementary transvections E_ij(t)

    Returns:
        RowReductionReport with the largest factor count over all elements

    Raises:
        SizeLimit: group larger than Config.PSL_LIMIT
        NotGenerating: the transvections do not generate the group
    """
    if n not in (2, 3):
        raise ValueError("row reduction check supports n = 2 or 3")
    GaloisField(q)  # validates q
    if group is None or elementary is None:
        group, elementary = psl_group(n, q)
    if group.order > Config.PSL_LIMIT:
        raise SizeLimit(f"PSL_{n}({q}) has {group.order} elements, limit is {Config.PSL_LIMIT}")

    geodesics = bfs_words(group, list(elementary))
    if len(geodesics) != group.order:
        raise NotGenerating(f"transvections reach {len(geodesics)} of {group.order} elements")

    distribution: Dict[int, int] = {}
    for entry in geodesics.values():
        distribution[entry.distance] = distribution.get(entry.distance, 0) + 1
    report = RowReductionReport(
        n=n, q=q, order=group.order,
        max_factors=max(distribution),
        bound=n * n,
        distribution=distribution,
    )
    logger.info(f"PSL_{n}({q}): max {report.max_factors} elementary factors (bound {report.bound})")
    return report

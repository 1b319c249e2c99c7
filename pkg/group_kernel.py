"""
Group Kernel Module
Finite groups as multiplication tables and permutation groups, words,
Cayley-graph search, orbits, centres, simplicity and isomorphism testing
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import (Callable, Dict, Iterable, Iterator, List, NamedTuple,
                    Optional, Sequence, Tuple, Union)

import numpy as np

from config import Config
from exceptions import (BaseMissing, InvalidGroupTable, NotGenerating,
                        OddPermutation, SizeLimit, WordIndexError)

logger = logging.getLogger(__name__)


def ceil_log2(m: int) -> int:
    """log m = min{r : 2^r >= m}; 0 for m <= 1"""
    if m <= 1:
        return 0
    return (m - 1).bit_length()


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """Bijection on {0, ..., n-1}; p * q applies q first"""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")
        object.__setattr__(self, 'images', images)

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> 'Permutation':
        perm = object.__new__(cls)
        object.__setattr__(perm, 'images', images)
        return perm

    @classmethod
    def identity(cls, degree: int) -> 'Permutation':
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> 'Permutation':
        """
        Build a permutation from disjoint cycles

        Args:
            cycles: Cycles such as [(0, 1), (2, 3)]
            degree: Number of points

        Returns:
            The permutation mapping each cycle entry to its successor
        """
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            cycle = [int(x) for x in cycle]
            for point in cycle:
                if point < 0 or point >= degree:
                    raise ValueError(f"point {point} outside 0..{degree - 1}")
                if point in seen:
                    raise ValueError(f"cycles are not disjoint at point {point}")
                seen.add(point)
            for position, point in enumerate(cycle):
                images[point] = cycle[(position + 1) % len(cycle)]
        return cls._trusted(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        mine = self.images
        return Permutation._trusted(tuple(mine[x] for x in other.images))

    def inverse(self) -> 'Permutation':
        inverse = [0] * len(self.images)
        for point, image in enumerate(self.images):
            inverse[image] = point
        return Permutation._trusted(tuple(inverse))

    def conjugate(self, by: 'Permutation') -> 'Permutation':
        """by * self * by^-1"""
        return by * self * by.inverse()

    def is_identity(self) -> bool:
        return all(point == image for point, image in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point"""
        seen = set()
        result = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self.images[point]
            result.append(tuple(cycle))
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = np.lcm(result, len(cycle))
        return int(result)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)


class PermGroup:
    """Permutation group given by generators; elements are closed lazily"""

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 name: str = "", elements: Optional[Sequence[Permutation]] = None):
        """
        Initialize permutation group

        Args:
            degree: Number of points acted on
            generators: Generating permutations (all of this degree)
            name: Display name
            elements: Known element list, skips the closure computation
        """
        self.degree = degree
        self.generators = [g for g in generators]
        self.name = name
        for gen in self.generators:
            if gen.degree != degree:
                raise ValueError(f"generator {gen} has degree {gen.degree}, expected {degree}")
        self._elements: Optional[List[Permutation]] = None
        self._index: Optional[Dict[Permutation, int]] = None
        self._table: Optional['GroupTable'] = None
        if elements is not None:
            self._elements = sorted(elements, key=lambda p: p.images)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @property
    def elements(self) -> List[Permutation]:
        """All elements, sorted lexicographically by image tuple (identity first)"""
        if self._elements is None:
            self._elements = self._closure()
        return self._elements

    def _closure(self) -> List[Permutation]:
        identity = tuple(range(self.degree))
        gens = [g.images for g in self.generators]
        seen = {identity}
        frontier = [identity]
        while frontier:
            next_frontier = []
            for current in frontier:
                for gen in gens:
                    product = tuple(current[x] for x in gen)
                    if product not in seen:
                        seen.add(product)
                        next_frontier.append(product)
            frontier = next_frontier
        logger.debug(f"Closure of {self.name or 'group'}: {len(seen)} elements")
        return [Permutation._trusted(images) for images in sorted(seen)]

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, perm: Permutation) -> int:
        if self._index is None:
            self._index = {p: i for i, p in enumerate(self.elements)}
        return self._index[perm]

    def __contains__(self, perm: Permutation) -> bool:
        if self._index is None:
            self._index = {p: i for i, p in enumerate(self.elements)}
        return perm in self._index

    def to_table(self) -> 'GroupTable':
        """Multiplication table over the sorted element list"""
        if self._table is None:
            self._table = GroupTable.from_permutations(self.elements, name=self.name)
        return self._table

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroup({self.name or 'unnamed'}, degree={self.degree}, <{gens}>)"


# ---------------------------------------------------------------------------
# Multiplication tables
# ---------------------------------------------------------------------------

class GroupTable:
    """Finite group as an n x n multiplication table over indices 0..n-1"""

    def __init__(self, table, name: str = "", labels: Optional[Sequence[Permutation]] = None,
                 validate: bool = True):
        """
        Initialize and validate a group table

        Args:
            table: n x n array, table[i][j] = index of i*j
            name: Display name
            labels: Optional element labels (permutations) in index order
            validate: Check group axioms (associativity exhaustively for
                n <= 256, by sampling above)

        Raises:
            InvalidGroupTable: The table is not a group
        """
        self.table = np.asarray(table, dtype=np.int64)
        self.name = name
        self.labels = list(labels) if labels is not None else None
        self._label_index: Optional[Dict[Permutation, int]] = None
        self._orders: Optional[np.ndarray] = None
        self._generating: Optional[List[int]] = None

        if self.table.ndim != 2 or self.table.shape[0] != self.table.shape[1] or self.table.shape[0] == 0:
            raise InvalidGroupTable(f"table must be a nonempty square array, got shape {self.table.shape}")
        n = self.table.shape[0]
        if self.table.min() < 0 or self.table.max() >= n:
            raise InvalidGroupTable("table entries must be element indices")

        arange = np.arange(n)
        row_identity = np.flatnonzero((self.table == arange).all(axis=1))
        if len(row_identity) == 0:
            raise InvalidGroupTable("no identity element")
        self.identity = int(row_identity[0])
        if not np.array_equal(self.table[:, self.identity], arange):
            raise InvalidGroupTable(f"element {self.identity} is only a left identity")

        self.inverse = np.argmax(self.table == self.identity, axis=1).astype(np.int64)
        if validate:
            self._validate()
        self.rows: List[List[int]] = self.table.tolist()
        self.inverses: List[int] = self.inverse.tolist()

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def _validate(self):
        n = self.order
        arange = np.arange(n)
        table = self.table

        # Latin square
        if not (np.sort(table, axis=1) == arange).all() or not (np.sort(table, axis=0) == arange[:, None]).all():
            raise InvalidGroupTable("table is not a Latin square")

        # Two-sided inverses
        if not (table[arange, self.inverse] == self.identity).all() or \
           not (table[self.inverse, arange] == self.identity).all():
            raise InvalidGroupTable("inverses are not two-sided")

        # Associativity
        if n <= Config.ASSOC_EXHAUSTIVE:
            for a in range(n):
                left = table[table[a]]          # (a*b)*c for all b, c
                right = table[a][table]         # a*(b*c) for all b, c
                if not np.array_equal(left, right):
                    raise InvalidGroupTable(f"associativity fails for a={a}")
        else:
            rng = np.random.default_rng(Config.SEED)
            a, b, c = rng.integers(0, n, size=(3, Config.ASSOC_SAMPLES))
            if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
                raise InvalidGroupTable("associativity fails on a sampled triple")

    @classmethod
    def from_permutations(cls, elements: Sequence[Permutation], name: str = "") -> 'GroupTable':
        """
        Multiplication table of a closed, lexicographically sorted permutation list

        Args:
            elements: All elements of a permutation group, sorted by image tuple
            name: Display name

        Returns:
            GroupTable with labels = elements
        """
        perms = np.array([p.images for p in elements], dtype=np.int64)
        count, degree = perms.shape
        table = np.empty((count, count), dtype=np.int64)
        chunk = max(1, (1 << 22) // max(1, count * degree))

        if degree ** degree < (1 << 62):
            # Lexicographic rank as a mixed-radix code
            weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
            codes = perms @ weights
            for start in range(0, count, chunk):
                block = perms[start:start + chunk][:, perms]        # block[i, j] = p_i o p_j
                block_codes = block @ weights
                positions = np.searchsorted(codes, block_codes)
                positions = np.minimum(positions, count - 1)
                if not np.array_equal(codes[positions], block_codes):
                    raise InvalidGroupTable("permutation list is not closed under composition")
                table[start:start + chunk] = positions
        else:
            index = {tuple(row): i for i, row in enumerate(perms.tolist())}
            for start in range(0, count, chunk):
                block = perms[start:start + chunk][:, perms]
                for offset, row in enumerate(block.tolist()):
                    try:
                        table[start + offset] = [index[tuple(images)] for images in row]
                    except KeyError:
                        raise InvalidGroupTable("permutation list is not closed under composition")

        return cls(table, name=name, labels=elements)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def index_of(self, label: Permutation) -> int:
        if self.labels is None:
            raise KeyError("table has no element labels")
        if self._label_index is None:
            self._label_index = {p: i for i, p in enumerate(self.labels)}
        return self._label_index[label]

    def element_orders(self) -> np.ndarray:
        """Order of every element"""
        if self._orders is None:
            orders = np.zeros(self.order, dtype=np.int64)
            for element in range(self.order):
                power, count = element, 1
                while power != self.identity:
                    power = self.rows[power][element]
                    count += 1
                orders[element] = count
            self._orders = orders
        return self._orders

    def order_profile(self) -> Tuple[Tuple[int, int], ...]:
        """Sorted (order, multiplicity) pairs"""
        values, counts = np.unique(self.element_orders(), return_counts=True)
        return tuple(zip(values.tolist(), counts.tolist()))

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def __repr__(self) -> str:
        return f"GroupTable({self.name or 'unnamed'}, order={self.order})"


Group = Union[GroupTable, PermGroup]


def as_table(group: Group) -> GroupTable:
    return group if isinstance(group, GroupTable) else group.to_table()


def group_order(group: Group) -> int:
    return group.order


def _operations(group: Group) -> Tuple[Callable, Callable, object]:
    if isinstance(group, GroupTable):
        rows, inverses = group.rows, group.inverses
        return (lambda a, b: rows[a][b]), (lambda a: inverses[a]), group.identity
    return (lambda a, b: a * b), (lambda a: a.inverse()), group.identity


# ---------------------------------------------------------------------------
# Words and presentations
# ---------------------------------------------------------------------------

Letter = Tuple[int, int]


@dataclass(frozen=True)
class Word:
    """Signed generator sequence x_j^{+-1}, multiplied left to right"""
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(j), int(s)) for j, s in self.letters)
        for index, sign in letters:
            if index < 0 or sign not in (1, -1):
                raise ValueError(f"bad letter ({index}, {sign})")
        object.__setattr__(self, 'letters', letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: 'Word') -> 'Word':
        return Word(self.letters + other.letters)

    def inverse(self) -> 'Word':
        return Word(tuple((j, -s) for j, s in reversed(self.letters)))

    def power(self, exponent: int) -> 'Word':
        if exponent < 0:
            return self.inverse().power(-exponent)
        return Word(self.letters * exponent)

    def max_generator(self) -> int:
        return max((j for j, _ in self.letters), default=-1)

    @classmethod
    def parse(cls, text: str) -> 'Word':
        """Parse 'x0 x1^-1 x0' style text; an empty string is the empty word"""
        letters = []
        for token in text.split():
            base, _, exponent = token.partition('^')
            if not base.startswith('x'):
                raise ValueError(f"bad letter {token!r}")
            index = int(base[1:])
            power = int(exponent) if exponent else 1
            sign = 1 if power > 0 else -1
            letters.extend([(index, sign)] * abs(power))
        return cls(tuple(letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{j}" if s == 1 else f"x{j}^-1" for j, s in self.letters)


@dataclass(frozen=True)
class Presentation:
    """Generator count plus relator words"""
    generator_count: int
    relators: Tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, 'relators', tuple(self.relators))
        if self.generator_count < 1:
            raise ValueError("a presentation needs at least one generator")
        for position, relator in enumerate(self.relators):
            if len(relator) == 0:
                raise ValueError(f"relator {position} is empty")
            if relator.max_generator() >= self.generator_count:
                raise ValueError(
                    f"relator {position} uses generator x{relator.max_generator()} "
                    f"but there are only {self.generator_count}")

    @property
    def presentation_length(self) -> int:
        """l = k + total relator length"""
        return self.generator_count + sum(len(r) for r in self.relators)


def eval_word(word: Word, assignment: Sequence, group: Group):
    """
    Evaluate a word under an assignment of generators

    Args:
        word: Word over x_0..x_{k-1}
        assignment: Element for each generator (indices for a GroupTable,
            permutations for a PermGroup)
        group: Ambient group

    Returns:
        The left-to-right product; the identity for the empty word
    """
    if word.max_generator() >= len(assignment):
        raise WordIndexError(
            f"word uses x{word.max_generator()} but only {len(assignment)} elements are assigned")
    mul, inv, result = _operations(group)
    for index, sign in word.letters:
        element = assignment[index]
        result = mul(result, element if sign == 1 else inv(element))
    return result


# ---------------------------------------------------------------------------
# Cayley graphs
# ---------------------------------------------------------------------------

class Geodesic(NamedTuple):
    distance: int
    witness: Word


def bfs_words(group: Group, gens: Sequence) -> Dict[object, Geodesic]:
    """
    Breadth-first search of the Cayley graph over gens and their inverses

    Letters are tried in generator order, + before -, so every witness is the
    shortlex-least geodesic word.

    Args:
        group: Ambient group
        gens: Nonempty list of elements

    Returns:
        Mapping from every reached element to (distance, witness word)
    """
    if not gens:
        raise ValueError("bfs_words needs at least one generator")
    mul, inv, identity = _operations(group)
    alphabet = []
    for index, gen in enumerate(gens):
        alphabet.append(((index, 1), gen))
        alphabet.append(((index, -1), inv(gen)))

    found: Dict[object, Geodesic] = {identity: Geodesic(0, Word())}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        distance, witness = found[current]
        for letter, element in alphabet:
            product = mul(current, element)
            if product not in found:
                found[product] = Geodesic(distance + 1, Word(witness.letters + (letter,)))
                queue.append(product)
    return found


def cayley_diameter(group: Group, gens: Sequence) -> int:
    """
    Diameter of the Cayley graph of group over gens and inverses

    Raises:
        NotGenerating: gens do not generate the group
    """
    geodesics = bfs_words(group, gens)
    if len(geodesics) != group.order:
        raise NotGenerating(f"generators reach {len(geodesics)} of {group.order} elements")
    return max(entry.distance for entry in geodesics.values())


def alternating_generators(k: int) -> List[Permutation]:
    """Base 3-cycle (0 1 2) plus (0 1 ... k-1) for odd k or (1 2 ... k-1) for even k"""
    if k < 3:
        raise ValueError("alternating generators need k >= 3")
    base = Permutation.from_cycles([(0, 1, 2)], k)
    if k == 3:
        return [base]
    if k % 2 == 1:
        long_cycle = Permutation.from_cycles([tuple(range(k))], k)
    else:
        long_cycle = Permutation.from_cycles([tuple(range(1, k))], k)
    return [base, long_cycle]


def three_cycle_decompose(perm: Permutation) -> List[Permutation]:
    """
    Write an even permutation as a product of at most k 3-cycles

    Returns:
        3-cycles c_1, ..., c_m with c_1 * ... * c_m == perm and m <= k - 2

    Raises:
        OddPermutation: perm is odd
    """
    if not perm.is_even():
        raise OddPermutation(f"{perm} is odd")
    degree = perm.degree
    current = list(perm.images)
    peeled = []

    # Fix points in increasing order by multiplying 3-cycles on the left
    for point in range(degree):
        if current[point] == point:
            continue
        target = current[point]
        third = current[target]
        if third == point:
            third = next(x for x in range(point + 1, degree) if x != target)
        cycle = list(range(degree))
        cycle[target], cycle[point], cycle[third] = point, third, target
        current = [cycle[x] for x in current]
        peeled.append(Permutation._trusted(tuple(cycle)))

    return [c.inverse() for c in peeled]


def is_three_cycle(perm: Permutation) -> bool:
    return perm.cycle_type() == (3,)


def express_three_cycle(target: Permutation, gens: Sequence[Permutation],
                        base_index: Optional[int] = None) -> Word:
    """
    Word for a 3-cycle via a conjugating word around the base 3-cycle

    Conjugation acts on the 3-cycles; a BFS over that action from the base
    (and its inverse) finds W with target = W * base^{+-1} * W^-1.

    Args:
        target: A 3-cycle
        gens: Generating set of A_k containing the base 3-cycle
        base_index: Position of the base in gens (default: the entry equal to (0 1 2))

    Returns:
        Word of length 2|W| + 1 evaluating to target

    Raises:
        BaseMissing: No base 3-cycle in gens
        NotGenerating: The target is not reachable by conjugation
    """
    if not is_three_cycle(target):
        raise ValueError(f"{target} is not a 3-cycle")
    degree = target.degree
    if base_index is None:
        base = Permutation.from_cycles([(0, 1, 2)], degree)
        matches = [i for i, g in enumerate(gens) if g == base]
        if not matches:
            raise BaseMissing("(0 1 2) is not among the generators")
        base_index = matches[0]
    elif base_index >= len(gens) or not is_three_cycle(gens[base_index]):
        raise BaseMissing(f"generator {base_index} is not a 3-cycle")

    base = gens[base_index]
    alphabet = []
    for index, gen in enumerate(gens):
        alphabet.append(((index, 1), gen, gen.inverse()))
        alphabet.append(((index, -1), gen.inverse(), gen))

    # state -> (conjugating letters, sign of base)
    reached: Dict[Permutation, Tuple[Tuple[Letter, ...], int]] = {base: ((), 1)}
    if base.inverse() not in reached:
        reached[base.inverse()] = ((), -1)
    queue = deque(reached)
    while queue and target not in reached:
        state = queue.popleft()
        conjugator, sign = reached[state]
        for letter, element, element_inverse in alphabet:
            image = element * state * element_inverse
            if image not in reached:
                reached[image] = ((letter,) + conjugator, sign)
                queue.append(image)

    if target not in reached:
        raise NotGenerating(f"{target} is not conjugate to the base under the generators")
    conjugator, sign = reached[target]
    outer = Word(conjugator)
    return outer + Word(((base_index, sign),)) + outer.inverse()


# ---------------------------------------------------------------------------
# Orbits and centres
# ---------------------------------------------------------------------------

def orbits(group: PermGroup, arity: int = 1) -> List[Tuple]:
    """
    Orbits of the diagonal action on points (arity 1) or ordered pairs (arity 2)

    Returns:
        Sorted list of orbits, each a sorted tuple of points or pairs
    """
    if arity not in (1, 2):
        raise ValueError("arity must be 1 or 2")
    points = range(group.degree)
    domain = list(points) if arity == 1 else list(itertools.product(points, repeat=2))
    gens = [g.images for g in group.generators]

    def act(gen, item):
        return gen[item] if arity == 1 else (gen[item[0]], gen[item[1]])

    seen = set()
    result = []
    for start in domain:
        if start in seen:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            item = queue.popleft()
            for gen in gens:
                image = act(gen, item)
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        seen |= orbit
        result.append(tuple(sorted(orbit)))
    return sorted(result)


def k2_at(group: PermGroup, r: int) -> int:
    """Number of 2-orbits containing a pair (r, t)"""
    return sum(1 for orbit in orbits(group, 2) if any(pair[0] == r for pair in orbit))


def centre(group: Group) -> List:
    """
    Elements commuting with every generator

    Returns:
        Sorted element indices for a GroupTable, sorted permutations for a PermGroup
    """
    if isinstance(group, PermGroup):
        return [g for g in group.elements if all(g * h == h * g for h in group.generators)]
    gens = np.array(generating_sequence(group), dtype=np.int64)
    table = group.table
    commutes = (table[:, gens] == table[gens, :].T).all(axis=1)
    return np.flatnonzero(commutes).tolist()


# ---------------------------------------------------------------------------
# Subgroups, simplicity, isomorphism
# ---------------------------------------------------------------------------

def subgroup_closure(group: GroupTable, gens: Iterable[int]) -> List[int]:
    """Sorted elements of the subgroup generated by gens"""
    gens = list(dict.fromkeys(gens))
    rows = group.rows
    seen = {group.identity}
    queue = deque([group.identity])
    while queue:
        current = queue.popleft()
        row = rows[current]
        for gen in gens:
            product = row[gen]
            if product not in seen:
                seen.add(product)
                queue.append(product)
    return sorted(seen)


def generating_sequence(group: GroupTable) -> List[int]:
    """Greedy generating sequence: repeatedly add an element of largest order outside the span"""
    if group._generating is None:
        orders = group.element_orders()
        ranked = sorted(range(group.order), key=lambda x: (-orders[x], x))
        gens: List[int] = []
        span = {group.identity}
        for candidate in ranked:
            if len(span) == group.order:
                break
            if candidate not in span:
                gens.append(candidate)
                span = set(subgroup_closure(group, gens))
        group._generating = gens
    return list(group._generating)


def conjugacy_class(group: GroupTable, element: int) -> List[int]:
    table = group.table
    return sorted(set(table[table[:, element], group.inverse].tolist()))


def conjugacy_classes(group: GroupTable) -> List[List[int]]:
    remaining = set(range(group.order))
    classes = []
    for element in range(group.order):
        if element in remaining:
            cls = conjugacy_class(group, element)
            remaining -= set(cls)
            classes.append(cls)
    return classes


def normal_closure(group: GroupTable, element: int) -> List[int]:
    """Smallest normal subgroup containing element"""
    return subgroup_closure(group, conjugacy_class(group, element))


def is_simple(group: Group) -> bool:
    """
    True iff the normal closure of every nonidentity element is the whole group

    Raises:
        SizeLimit: group larger than Config.SIMPLE_LIMIT
    """
    table = as_table(group) if isinstance(group, GroupTable) or group.order <= Config.SIMPLE_LIMIT else None
    if table is None or table.order > Config.SIMPLE_LIMIT:
        raise SizeLimit(f"simplicity test limited to {Config.SIMPLE_LIMIT} elements")
    if table.order < 2:
        return False
    for cls in conjugacy_classes(table):
        representative = cls[0]
        if representative == table.identity:
            continue
        if len(normal_closure(table, representative)) < table.order:
            return False
    return True


def homomorphism_candidates(source: GroupTable, gens: Sequence[int],
                            target: GroupTable) -> Iterator[Tuple[int, ...]]:
    """
    Image tuples for gens that respect element orders

    A candidate image of gens[i] has the same order as gens[i], and every
    product of two candidate images has the order of the corresponding
    product in the source.
    """
    source_orders = source.element_orders()
    target_orders = target.element_orders()
    pools = [np.flatnonzero(target_orders == source_orders[g]).tolist() for g in gens]
    pair_orders = {(i, j): source_orders[source.mul(gens[i], gens[j])]
                   for i in range(len(gens)) for j in range(len(gens)) if i != j}

    def extend(prefix: List[int]) -> Iterator[Tuple[int, ...]]:
        position = len(prefix)
        if position == len(gens):
            yield tuple(prefix)
            return
        for image in pools[position]:
            consistent = all(
                target_orders[target.mul(prefix[i], image)] == pair_orders[(i, position)] and
                target_orders[target.mul(image, prefix[i])] == pair_orders[(position, i)]
                for i in range(position))
            if consistent:
                prefix.append(image)
                yield from extend(prefix)
                prefix.pop()

    yield from extend([])


def extend_homomorphism(source: GroupTable, gens: Sequence[int], target: GroupTable,
                        images: Sequence[int]) -> Optional[List[int]]:
    """
    Extend gens -> images to an injective homomorphism, if one exists

    The map is grown along Cayley-graph edges x -> x*g; any edge whose two
    ends disagree rules the candidate out.
    """
    phi = [-1] * source.order
    phi[source.identity] = target.identity
    queue = deque([source.identity])
    source_rows, target_rows = source.rows, target.rows
    while queue:
        current = queue.popleft()
        image_current = phi[current]
        for gen, gen_image in zip(gens, images):
            successor = source_rows[current][gen]
            expected = target_rows[image_current][gen_image]
            if phi[successor] == -1:
                phi[successor] = expected
                queue.append(successor)
            elif phi[successor] != expected:
                return None
    if -1 in phi or len(set(phi)) != source.order:
        return None
    return phi


def is_isomorphic(first: Group, second: Group) -> Optional[Tuple[int, ...]]:
    """
    Search for an isomorphism between two finite groups

    Args:
        first: Source group
        second: Target group

    Returns:
        Tuple phi with phi[g] the image of element index g, or None
    """
    source, target = as_table(first), as_table(second)
    if source.order != target.order:
        return None
    if source.order_profile() != target.order_profile():
        return None
    if np.array_equal(source.table, target.table):
        return tuple(range(source.order))
    gens = generating_sequence(source)
    if not gens:
        return (target.identity,)
    for images in homomorphism_candidates(source, gens, target):
        phi = extend_homomorphism(source, gens, target, images)
        if phi is not None:
            return tuple(phi)
    return None

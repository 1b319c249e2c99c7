"""
Automorphism Lab Module
Automorphism groups, regular representations, holomorphs, the map R from
the normaliser onto Aut(G), and the orbit-count bound on the centre
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from config import Config
from exceptions import InvariantViolation, NotNormalizing, SizeLimit
from group_kernel import (GroupTable, Permutation, PermGroup, centre,
                          extend_homomorphism, generating_sequence,
                          homomorphism_candidates, orbits)

logger = logging.getLogger(__name__)


@dataclass
class AutGroup:
    """Aut(G) as permutations of element indices"""
    base: GroupTable
    automorphisms: List[Permutation]
    inner: List[Permutation]

    @property
    def order(self) -> int:
        return len(self.automorphisms)

    @property
    def out_order(self) -> int:
        return len(self.automorphisms) // len(self.inner)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.base.name,
            "group_order": self.base.order,
            "aut_order": self.order,
            "inner_order": len(self.inner),
            "out_order": self.out_order,
        }


def inner_automorphisms(group: GroupTable) -> List[Permutation]:
    """Conjugations x -> g x g^-1, deduplicated and sorted"""
    table = group.table
    seen = set()
    for g in range(group.order):
        images = table[g, table[:, group.inverse[g]]]
        seen.add(tuple(images.tolist()))
    return [Permutation(images) for images in sorted(seen)]


def automorphisms(group: GroupTable, allow_large: bool = False) -> AutGroup:
    """
    Exhaustive automorphism search

    A fixed generating sequence is mapped to every image tuple with matching
    element orders; tuples that extend to a bijective homomorphism are kept.

    Args:
        group: Group table
        allow_large: Raise the size limit from Config.AUT_LIMIT to Config.AUT_LARGE_LIMIT

    Raises:
        SizeLimit: group above the active limit
    """
    limit = Config.AUT_LARGE_LIMIT if allow_large else Config.AUT_LIMIT
    if group.order > limit:
        raise SizeLimit(f"automorphism search is limited to order {limit}, got {group.order}")

    gens = generating_sequence(group)
    found = []
    for images in homomorphism_candidates(group, gens, group):
        phi = extend_homomorphism(group, gens, group, images)
        if phi is not None:
            found.append(Permutation(tuple(phi)))
    found.sort(key=lambda p: p.images)

    inner = inner_automorphisms(group)
    result = AutGroup(base=group, automorphisms=found, inner=inner)
    if result.order % len(inner):
        raise InvariantViolation(f"|Inn| = {len(inner)} does not divide |Aut| = {result.order}")
    logger.info(f"Aut({group.name or 'G'}): order {result.order}, out {result.out_order}")
    return result


@dataclass
class RegularRep:
    """Left regular representation g -> tau_g, tau_g(x) = g x"""
    source: GroupTable
    image: PermGroup

    def tau(self, g: int) -> Permutation:
        return Permutation(tuple(self.source.rows[g]))


def regular_representation(group: GroupTable) -> RegularRep:
    """
    Embed group into Sym(G)

    Raises:
        InvariantViolation: the map fails to be an injective homomorphism
    """
    table = group.table
    gens = generating_sequence(group)
    for g in gens:
        if not np.array_equal(table[g][table], table[table[g]]):
            raise InvariantViolation(f"tau_{g} tau_h != tau_(gh)")
    if len({tuple(row) for row in group.rows}) != group.order:
        raise InvariantViolation("regular representation is not injective")

    elements = [Permutation(tuple(row)) for row in group.rows]
    image = PermGroup(group.order, [elements[g] for g in gens],
                      name=f"reg({group.name})", elements=elements)
    return RegularRep(source=group, image=image)


def holomorph(group: GroupTable, aut: Optional[AutGroup] = None) -> PermGroup:
    """
    Subgroup of Sym(G) generated by the regular image and Aut(G)

    Raises:
        SizeLimit: |G| * |Aut(G)| above Config.HOLOMORPH_LIMIT
        InvariantViolation: order differs from |G| * |Aut(G)|
    """
    aut = aut or automorphisms(group)
    expected = group.order * aut.order
    if expected > Config.HOLOMORPH_LIMIT:
        raise SizeLimit(f"holomorph of order {expected} exceeds {Config.HOLOMORPH_LIMIT}")

    regular = regular_representation(group)
    gens = list(regular.image.generators) + [a for a in aut.automorphisms if not a.is_identity()]
    if not gens:
        gens = [Permutation.identity(group.order)]
    result = PermGroup(group.order, gens, name=f"Hol({group.name})")
    if result.order != expected:
        raise InvariantViolation(f"holomorph has order {result.order}, expected {expected}")
    return result


def r_map(phi: Permutation, group: GroupTable) -> Permutation:
    """
    The automorphism R(phi): g -> h where phi tau_g phi^-1 = tau_h

    Raises:
        NotNormalizing: phi does not normalise the regular image
    """
    if phi.degree != group.order:
        raise NotNormalizing(f"phi acts on {phi.degree} points, G has {group.order} elements")
    table = group.table
    forward = np.array(phi.images, dtype=np.int64)
    backward = np.array(phi.inverse().images, dtype=np.int64)

    # h = phi(g * phi^-1(e))
    alpha = forward[table[:, backward[group.identity]]]
    conjugated = forward[table[:, backward]]        # row g: x -> phi(g * phi^-1(x))
    if not np.array_equal(conjugated, table[alpha]):
        raise NotNormalizing("phi does not normalise the regular representation")
    return Permutation(tuple(alpha.tolist()))


def brute_normalizer(group: PermGroup) -> PermGroup:
    """
    All sigma in S_n with sigma H sigma^-1 = H, by exhaustive sweep

    Raises:
        SizeLimit: degree above 8
    """
    if group.degree > 8:
        raise SizeLimit(f"brute normaliser is limited to degree 8, got {group.degree}")
    gens = group.generators
    found = []
    for images in itertools.permutations(range(group.degree)):
        sigma = Permutation._trusted(images)
        sigma_inverse = sigma.inverse()
        if all(sigma * h * sigma_inverse in group for h in gens):
            found.append(sigma)
    logger.debug(f"Brute normaliser of {group.name}: {len(found)} elements")
    return PermGroup(group.degree, found, name=f"N({group.name})", elements=found)


@dataclass
class NormalizerReport:
    group: str
    group_order: int
    aut_order: int
    out_order: int
    holomorph_order: int
    brute_order: Optional[int]
    agree: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def normalizer_report(group: GroupTable, brute: bool = False) -> NormalizerReport:
    """Holomorph order against |G|*|Aut|, optionally cross-checked by brute sweep"""
    aut = automorphisms(group)
    hol = holomorph(group, aut)
    brute_order, agree = None, None
    if brute:
        regular = regular_representation(group)
        normaliser = brute_normalizer(regular.image)
        brute_order = normaliser.order
        agree = set(normaliser.elements) == set(hol.elements)
    return NormalizerReport(
        group=group.name, group_order=group.order, aut_order=aut.order,
        out_order=aut.out_order, holomorph_order=hol.order,
        brute_order=brute_order, agree=agree,
    )


@dataclass
class CentreBoundReport:
    centre_order: int
    orbit_reps: List[int]
    k2_values: List[int]
    bound: int
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def centre_bound_report(group: PermGroup) -> CentreBoundReport:
    """|C(G)| against the product of k2(G, r) over 1-orbit representatives"""
    reps = [orbit[0] for orbit in orbits(group, 1)]
    pair_orbits = orbits(group, 2)
    k2_values = [sum(1 for orbit in pair_orbits if any(a == r for a, _ in orbit)) for r in reps]
    bound = math.prod(k2_values)
    centre_order = len(centre(group))
    report = CentreBoundReport(
        centre_order=centre_order, orbit_reps=reps, k2_values=k2_values,
        bound=bound, holds=centre_order <= bound,
    )
    logger.debug(f"Centre bound for {group.name}: {centre_order} <= {bound}")
    return report

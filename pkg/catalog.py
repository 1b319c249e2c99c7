"""
Catalog Module
Small-group catalog builders, finite fields and PSL_n(q) on projective points
"""
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import Config
from exceptions import CatalogError
from group_kernel import (GroupTable, Permutation, PermGroup,
                          alternating_generators, as_table)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Finite fields
# ---------------------------------------------------------------------------

# Monic reducing polynomials, coefficients from the constant term up
_MODULI = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    9: (3, (2, 2, 1)),
}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


class GaloisField:
    """GF(q) for prime q or q in {4, 8, 9}; elements are the integers 0..q-1"""

    def __init__(self, q: int):
        """
        Build addition and multiplication tables

        Args:
            q: Field size

        Raises:
            ValueError: unsupported q
        """
        if _is_prime(q):
            self.p, self.degree, modulus = q, 1, (0, 1)
        elif q in _MODULI:
            self.p, modulus = _MODULI[q]
            self.degree = len(modulus) - 1
        else:
            raise ValueError(f"GF({q}) is not supported (primes and 4, 8, 9 only)")
        self.q = q

        digits = [self._digits(a) for a in range(q)]
        self.add = np.zeros((q, q), dtype=np.int64)
        self.mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                self.add[a, b] = self._number([(x + y) % self.p for x, y in zip(digits[a], digits[b])])
                self.mul[a, b] = self._number(self._poly_mul(digits[a], digits[b], modulus))

        self.neg = np.argmax(self.add == 0, axis=1)
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.flatnonzero(self.mul[a] == 1)[0])

    def _digits(self, a: int) -> List[int]:
        result = []
        for _ in range(self.degree):
            result.append(a % self.p)
            a //= self.p
        return result

    def _number(self, digits: Sequence[int]) -> int:
        return sum(d * self.p ** i for i, d in enumerate(digits))

    def _poly_mul(self, a: Sequence[int], b: Sequence[int], modulus: Sequence[int]) -> List[int]:
        d = self.degree
        product = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                product[i + j] = (product[i + j] + x * y) % self.p
        for top in range(len(product) - 1, d - 1, -1):
            coefficient = product[top]
            if coefficient:
                for j in range(d + 1):
                    product[top - d + j] = (product[top - d + j] - coefficient * modulus[j]) % self.p
        return product[:d]


def psl_order(n: int, q: int) -> int:
    """|PSL_n(q)|"""
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q ** i - 1
    return order // math.gcd(n, q - 1)


def projective_points(n: int, field_: GaloisField) -> List[Tuple[int, ...]]:
    """Nonzero vectors of GF(q)^n whose first nonzero coordinate is 1, sorted"""
    points = []
    for vector in np.ndindex(*([field_.q] * n)):
        nonzero = [x for x in vector if x]
        if nonzero and nonzero[0] == 1:
            points.append(tuple(int(x) for x in vector))
    return sorted(points)


def psl_group(n: int, q: int) -> Tuple[PermGroup, List[Permutation]]:
    """
    PSL_n(q) acting on the projective points of GF(q)^n

    Args:
        n: Matrix size
        q: Field size

    Returns:
        (group generated by the transvections, transvection images E_ij(t)
        ordered by i, j, t)
    """
    if n < 2:
        raise ValueError("PSL_n(q) needs n >= 2")
    gf = GaloisField(q)
    points = projective_points(n, gf)
    index = {point: i for i, point in enumerate(points)}

    def normalize(vector: List[int]) -> Tuple[int, ...]:
        lead = next(x for x in vector if x)
        scale = gf.inv[lead]
        return tuple(int(gf.mul[scale, x]) for x in vector)

    elementary = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for t in range(1, q):
                images = []
                for point in points:
                    vector = list(point)
                    vector[i] = int(gf.add[vector[i], gf.mul[t, vector[j]]])
                    images.append(index[normalize(vector)])
                elementary.append(Permutation(tuple(images)))

    group = PermGroup(len(points), elementary, name=f"PSL{n}({q})")
    return group, elementary


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise CatalogError("cyclic group needs n >= 1")
    gens = [Permutation.from_cycles([tuple(range(n))], n)] if n > 1 else []
    return PermGroup(n, gens, name=f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Symmetries of the n-gon, order 2n"""
    if n < 3:
        raise CatalogError("dihedral group needs n >= 3")
    rotation = Permutation.from_cycles([tuple(range(n))], n)
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return PermGroup(n, [rotation, reflection], name=f"D{n}")


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise CatalogError("symmetric group needs n >= 1")
    if n == 1:
        return PermGroup(1, [], name="S1")
    gens = [Permutation.from_cycles([(0, 1)], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([tuple(range(n))], n))
    return PermGroup(n, gens, name=f"S{n}")


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise CatalogError("alternating group needs n >= 1")
    if n < 3:
        return PermGroup(n, [], name=f"A{n}")
    return PermGroup(n, alternating_generators(n), name=f"A{n}")


def quaternion() -> PermGroup:
    """Q8 in its regular action on 8 points"""
    i = Permutation.from_cycles([(0, 1, 2, 3), (4, 5, 6, 7)], 8)
    j = Permutation.from_cycles([(0, 4, 2, 6), (1, 7, 3, 5)], 8)
    return PermGroup(8, [i, j], name="Q8")


def direct(factors: Sequence[PermGroup], name: str = "") -> PermGroup:
    """Direct product acting on the disjoint union of the factors' points"""
    degree = sum(f.degree for f in factors)
    gens = []
    offset = 0
    for factor in factors:
        for gen in factor.generators:
            images = list(range(degree))
            for point, image in enumerate(gen.images):
                images[offset + point] = offset + image
            gens.append(Permutation(tuple(images)))
        offset += factor.degree
    return PermGroup(degree, gens, name=name or "x".join(f.name for f in factors))


def wreath(m: int) -> PermGroup:
    """C2 wr S_m on 2m points; block i is {2i, 2i+1}"""
    if m < 1:
        raise CatalogError("wreath product needs m >= 1")
    degree = 2 * m
    gens = [Permutation.from_cycles([(0, 1)], degree)]
    if m >= 2:
        gens.append(Permutation.from_cycles([(0, 2), (1, 3)], degree))
    if m >= 3:
        evens = tuple(range(0, degree, 2))
        odds = tuple(range(1, degree, 2))
        gens.append(Permutation.from_cycles([evens, odds], degree))
    return PermGroup(degree, gens, name=f"C2wrS{m}")


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

@dataclass
class CatalogEntry:
    """Named group with its construction recipe"""
    name: str
    construction: str
    params: Dict[str, Any]
    group: Any
    provenance: str = ""

    @cached_property
    def table(self) -> GroupTable:
        table = as_table(self.group)
        table.name = self.name
        return table

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def perm_group(self) -> Optional[PermGroup]:
        return self.group if isinstance(self.group, PermGroup) else None


def _default_spec() -> List[Dict[str, Any]]:
    spec: List[Dict[str, Any]] = []
    spec += [{"name": f"C{n}", "construction": "cyclic", "n": n} for n in range(1, 13)]
    spec += [{"name": f"D{n}", "construction": "dihedral", "n": n} for n in range(3, 13)]
    spec += [{"name": f"S{n}", "construction": "symmetric", "n": n} for n in range(2, 7)]
    spec += [{"name": f"A{n}", "construction": "alternating", "n": n} for n in range(3, 7)]
    spec += [
        {"name": "Q8", "construction": "quaternion"},
        {"name": "C2xC2", "construction": "direct", "factors": ["C2", "C2"]},
        {"name": "C2xC4", "construction": "direct", "factors": ["C2", "C4"]},
        {"name": "C2xC2xC2", "construction": "direct", "factors": ["C2", "C2", "C2"]},
        {"name": "A4xC2", "construction": "direct", "factors": ["A4", "C2"]},
        {"name": "PSL2(5)", "construction": "psl", "n": 2, "q": 5},
        {"name": "PSL2(7)", "construction": "psl", "n": 2, "q": 7},
    ]
    spec += [{"name": f"C2wrS{m}", "construction": "wreath", "m": m} for m in range(2, 5)]
    return spec


DEFAULT_CATALOG_SPEC: List[Dict[str, Any]] = _default_spec()


def _expected_order(construction: str, params: Dict[str, Any], factors: Sequence[PermGroup]) -> Optional[int]:
    if construction == "cyclic":
        return params["n"]
    if construction == "dihedral":
        return 2 * params["n"]
    if construction == "symmetric":
        return math.factorial(params["n"])
    if construction == "alternating":
        return max(1, math.factorial(params["n"]) // 2)
    if construction == "quaternion":
        return 8
    if construction == "direct":
        return int(np.prod([f.order for f in factors], dtype=np.int64))
    if construction == "psl":
        return psl_order(params["n"], params["q"])
    if construction == "wreath":
        return 2 ** params["m"] * math.factorial(params["m"])
    return params.get("order")


def _construct(item: Dict[str, Any], built: Dict[str, CatalogEntry]) -> Tuple[Any, List[PermGroup]]:
    construction = item.get("construction")
    factors: List[PermGroup] = []
    try:
        if construction == "cyclic":
            return cyclic(int(item["n"])), factors
        if construction == "dihedral":
            return dihedral(int(item["n"])), factors
        if construction == "symmetric":
            return symmetric(int(item["n"])), factors
        if construction == "alternating":
            return alternating(int(item["n"])), factors
        if construction == "quaternion":
            return quaternion(), factors
        if construction == "psl":
            return psl_group(int(item["n"]), int(item["q"]))[0], factors
        if construction == "wreath":
            return wreath(int(item["m"])), factors
        if construction == "direct":
            for factor in item["factors"]:
                if isinstance(factor, str):
                    if factor not in built:
                        raise CatalogError(f"direct factor {factor!r} is not an earlier entry")
                    group = built[factor].group
                else:
                    group, _ = _construct(factor, built)
                if not isinstance(group, PermGroup):
                    raise CatalogError("direct products need permutation-group factors")
                factors.append(group)
            return direct(factors), factors
        if construction == "file":
            from artifact_store import load_group
            return load_group(item["path"]), factors
    except KeyError as e:
        raise CatalogError(f"construction {construction!r} is missing parameter {e}")
    except ValueError as e:
        raise CatalogError(str(e))
    raise CatalogError(f"unknown construction {construction!r}")


def build_catalog(spec: Optional[Sequence[Dict[str, Any]]] = None) -> List[CatalogEntry]:
    """
    Build catalog entries from construction recipes

    Args:
        spec: List of {"name", "construction", params...}; defaults to
            Config.CATALOG, then DEFAULT_CATALOG_SPEC

    Returns:
        Entries in spec order

    Raises:
        CatalogError: duplicate names, unknown constructions, order mismatch
    """
    if spec is None:
        spec = Config.CATALOG or DEFAULT_CATALOG_SPEC

    entries: List[CatalogEntry] = []
    built: Dict[str, CatalogEntry] = {}
    for item in spec:
        name = item.get("name")
        if not name:
            raise CatalogError(f"catalog entry without a name: {item}")
        if name in built:
            raise CatalogError(f"duplicate catalog name {name!r}")

        construction = item.get("construction", "")
        params = {k: v for k, v in item.items() if k not in ("name", "construction", "provenance")}
        group, factors = _construct(item, built)
        group.name = name

        expected = _expected_order(construction, params, factors)
        if expected is not None and group.order != expected:
            raise CatalogError(f"{name}: built order {group.order}, expected {expected}")

        entry = CatalogEntry(
            name=name,
            construction=construction,
            params=params,
            group=group,
            provenance=item.get("provenance", f"{construction} construction"),
        )
        entries.append(entry)
        built[name] = entry
        logger.debug(f"Catalog entry {name}: order {group.order}")

    logger.info(f"Built catalog with {len(entries)} entries")
    return entries


def catalog_frame(entries: Sequence[CatalogEntry]) -> pd.DataFrame:
    """Name, order, construction and degree of every entry"""
    rows = []
    for entry in entries:
        perm = entry.perm_group
        rows.append({
            "name": entry.name,
            "order": entry.order,
            "construction": entry.construction,
            "degree": perm.degree if perm is not None else None,
        })
    return pd.DataFrame(rows, columns=["name", "order", "construction", "degree"])


def find_entry(entries: Sequence[CatalogEntry], name: str) -> CatalogEntry:
    for entry in entries:
        if entry.name == name:
            return entry
    raise CatalogError(f"no catalog entry named {name!r}")

"""Graded Betti numbers of monomial ideals over a field of any characteristic.

b_{i,j}(I) is the sum, over multidegrees m of total degree j, of the reduced
homology dim H~_{i-1} of the upper Koszul complex of I at m. Only multidegrees
in the lcm lattice of the generators can contribute.
"""

import logging
from collections import defaultdict
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DM
from sympy.polys.monomials import monomial_deg, monomial_div, monomial_lcm

from lexman.constants import CONVENTION_IDEAL, DEFAULT_SETTINGS
from lexman.exceptions import (
    BoundExceededError,
    ConstructionError,
    InvariantError,
    PreconditionError,
)
from lexman.hilbert import hf_ideal
from lexman.models import FieldSpec, RingContext, SimplicialComplexDesc
from lexman.monomial import MonomialIdeal, is_stable, support
from lexman.util import Monomial

logger = logging.getLogger(__name__)

# The 6-vertex triangulation of the real projective plane (0-based vertices).
RP2_FACETS = (
    (0, 1, 2),
    (0, 2, 3),
    (0, 3, 4),
    (0, 4, 5),
    (0, 1, 5),
    (1, 2, 4),
    (2, 3, 5),
    (1, 3, 4),
    (2, 4, 5),
    (1, 3, 5),
)


class BettiTable:
    """Graded Betti numbers b_{i,j} of an ideal, tagged with the field they were computed over.

    Tables compare equal when their entries and convention agree; the field is
    provenance only, so tables computed in different characteristics can be
    compared directly.
    """

    __slots__ = ("entries", "field", "convention")

    def __init__(
        self,
        entries: Mapping[Tuple[int, int], int],
        field: Optional[FieldSpec] = None,
        convention: str = CONVENTION_IDEAL,
    ):
        if any(value < 0 for value in entries.values()):
            raise InvariantError("Betti numbers cannot be negative")
        self.entries: Dict[Tuple[int, int], int] = {
            key: value for key, value in sorted(entries.items()) if value
        }
        self.field = field
        self.convention = convention

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.convention == other.convention and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.convention, tuple(self.entries.items())))

    def __repr__(self) -> str:
        return f"BettiTable({self.entries}, field={self.field})"

    @property
    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    @property
    def max_degree(self) -> int:
        return max((j for _, j in self.entries), default=0)

    def __str__(self) -> str:
        """Macaulay2-style display: column i, row j - i, dots for zeros."""
        if not self.entries:
            return "0"
        columns = range(self.projective_dimension + 1)
        rows = sorted({j - i for i, j in self.entries})
        rows = range(rows[0], rows[-1] + 1)
        totals = [sum(v for (i, _), v in self.entries.items() if i == col) for col in columns]
        cells = [[str(self[(col, row + col)] or ".") for col in columns] for row in rows]
        width = max(len(str(value)) for value in list(columns) + totals) + 1
        lines = [" " * 7 + "".join(f"{col:>{width}}" for col in columns)]
        lines.append(f"{'total:':>7}" + "".join(f"{value:>{width}}" for value in totals))
        for row, cell in zip(rows, cells):
            lines.append(f"{str(row) + ':':>7}" + "".join(f"{value:>{width}}" for value in cell))
        return "\n".join(lines)


def upper_koszul(ideal: MonomialIdeal, m: Monomial) -> SimplicialComplexDesc:
    """The upper Koszul complex: squarefree S ⊆ supp(m) with x^m / x^S in I.

    Args:
        ideal: the monomial ideal
        m: the multidegree

    Returns:
        The complex on supp(m); it has no faces at all when x^m is not in I.

    """
    vertices = sorted(support(m))
    faces = []
    for size in range(len(vertices) + 1):
        for face in combinations(vertices, size):
            quotient = monomial_div(m, tuple(int(pos in face) for pos in range(len(m))))
            if quotient in ideal:
                faces.append(face)
    return SimplicialComplexDesc(vertices, faces)


def matrix_rank(rows: Sequence[Sequence[int]], characteristic: int) -> int:
    """Exact rank of an integer matrix over QQ or GF(p)."""
    if not rows or not rows[0]:
        return 0
    domain = QQ if characteristic == 0 else GF(characteristic)
    return DM([list(row) for row in rows], domain).rank()


def _boundary_rank(upper: Sequence[tuple], lower: Sequence[tuple], characteristic: int) -> int:
    if not upper or not lower:
        return 0
    index = {face: row for row, face in enumerate(lower)}
    rows = [[0] * len(upper) for _ in lower]
    for col, face in enumerate(upper):
        for pos in range(len(face)):
            rows[index[face[:pos] + face[pos + 1 :]]][col] = -1 if pos % 2 else 1
    return matrix_rank(rows, characteristic)


@lru_cache(maxsize=4096)
def _reduced_homology(faces: FrozenSet[tuple], characteristic: int) -> Tuple[int, ...]:
    if not faces:
        return ()
    top = max(len(face) for face in faces) - 1
    by_dim = {k: sorted(face for face in faces if len(face) == k + 1) for k in range(-1, top + 1)}
    # ranks[k] is the rank of the boundary C_k -> C_{k-1}
    ranks = {k: _boundary_rank(by_dim[k], by_dim[k - 1], characteristic) for k in range(top + 1)}
    return tuple(
        len(by_dim[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(-1, top + 1)
    )


def homology_ranks(complex_: SimplicialComplexDesc, field: FieldSpec) -> Tuple[int, ...]:
    """Reduced homology dimensions dim H~_k for k = -1 .. dim C.

    Args:
        complex_: the simplicial complex
        field: the coefficient field

    Returns:
        The dimensions, starting at k = -1; empty for the void complex.

    """
    return _reduced_homology(complex_.faces, field.characteristic)


def lcm_lattice(
    gens: Sequence[Monomial], max_size: int = DEFAULT_SETTINGS["max_lattice_size"]
) -> FrozenSet[Monomial]:
    """All lcms of non-empty subsets of ``gens``.

    Raises:
        BoundExceededError: the lattice grows past ``max_size``

    """
    lattice = set(gens)
    frontier = list(lattice)
    while frontier:
        fresh = []
        for element in frontier:
            for gen in gens:
                joined = monomial_lcm(element, gen)
                if joined not in lattice:
                    lattice.add(joined)
                    fresh.append(joined)
        if len(lattice) > max_size:
            raise BoundExceededError(f"lcm lattice exceeds {max_size} elements")
        frontier = fresh
    return frozenset(lattice)


@lru_cache(maxsize=512)
def _koszul_faces(ideal: MonomialIdeal, max_size: int) -> Tuple[Tuple[int, FrozenSet[tuple]], ...]:
    """(degree, faces) of every non-void, non-cone upper Koszul complex of the ideal."""
    result = []
    for m in sorted(lcm_lattice(ideal.gens, max_size)):
        complex_ = upper_koszul(ideal, m)
        if complex_.vertices and tuple(complex_.vertices) in complex_.faces:
            # a full simplex is a cone and has no reduced homology
            continue
        result.append((monomial_deg(m), complex_.faces))
    return tuple(result)


def betti_table(
    ideal: MonomialIdeal,
    field: FieldSpec = FieldSpec(0),
    max_generators: int = DEFAULT_SETTINGS["max_betti_generators"],
    max_lattice_size: int = DEFAULT_SETTINGS["max_lattice_size"],
) -> BettiTable:
    """Graded Betti numbers of the ideal (as a module) over ``field``.

    Args:
        ideal: the monomial ideal
        field: the coefficient field
        max_generators: refuse ideals with more generators than this
        max_lattice_size: refuse ideals whose lcm lattice is larger than this

    Returns:
        The table b_{i,j}(I).

    """
    if len(ideal.gens) > max_generators:
        raise BoundExceededError(
            f"{len(ideal.gens)} generators exceed the Betti bound {max_generators}"
        )
    counts: Dict[Tuple[int, int], int] = defaultdict(int)
    for total, faces in _koszul_faces(ideal, max_lattice_size):
        for i, rank in enumerate(_reduced_homology(faces, field.characteristic)):
            if rank:
                counts[(i, total)] += rank
    table = BettiTable(counts, field)
    census = defaultdict(int)
    for gen in ideal.gens:
        census[monomial_deg(gen)] += 1
    if {j: v for (i, j), v in table.entries.items() if i == 0} != dict(census):
        raise ConstructionError(f"b_0 of {ideal} does not count its minimal generators")
    if table.projective_dimension > ideal.ring.n - 1:
        raise ConstructionError(f"Projective dimension of {ideal} exceeds n - 1")
    return table


def ek_betti(ideal: MonomialIdeal) -> BettiTable:
    """Eliahou-Kervaire Betti numbers of a stable ideal.

    b_{i,i+d} = sum over generators u of degree d of binomial(max(u) - 1, i),
    with max(u) the largest (1-based) index of a variable dividing u.
    """
    if not is_stable(ideal):
        raise PreconditionError(f"{ideal} is not stable")
    counts: Dict[Tuple[int, int], int] = defaultdict(int)
    for gen in ideal.gens:
        top = max(support(gen), default=0) + 1
        for i in range(top):
            counts[(i, i + monomial_deg(gen))] += comb(top - 1, i)
    return BettiTable(counts)


def betti_leq(smaller: BettiTable, larger: BettiTable) -> bool:
    """Check b_{i,j}(smaller) <= b_{i,j}(larger) for every i, j."""
    if smaller.convention != larger.convention:
        raise InvariantError(
            f"Cannot compare {smaller.convention} and {larger.convention} Betti tables"
        )
    return all(value <= larger[key] for key, value in smaller.entries.items())


def char_independent(
    ideal: MonomialIdeal, fields: Iterable[FieldSpec]
) -> Tuple[bool, Dict[int, BettiTable]]:
    """Compute the Betti table in every characteristic and report whether they agree."""
    tables = {field.characteristic: betti_table(ideal, field) for field in fields}
    distinct = set(tables.values())
    return len(distinct) <= 1, tables


def euler_check(ideal: MonomialIdeal, table: BettiTable) -> List[Tuple[int, int, int]]:
    """Compare sum_i (-1)^i b_{i,j} with the t^j coefficient of HS_I(t) (1 - t)^n.

    Returns:
        ``(j, betti_side, hilbert_side)`` for every degree where they differ.

    """
    n = ideal.ring.n
    top = table.max_degree
    dims = hf_ideal(ideal, top).dims
    mismatches = []
    for j in range(top + 1):
        betti_side = sum((-1) ** i * value for (i, k), value in table.entries.items() if k == j)
        hilbert_side = sum((-1) ** k * comb(n, k) * dims[j - k] for k in range(min(j, n) + 1))
        if betti_side != hilbert_side:
            mismatches.append((j, betti_side, hilbert_side))
    return mismatches


def stanley_reisner_ideal(ring: RingContext, facets: Iterable[Iterable[int]]) -> MonomialIdeal:
    """The ideal generated by the minimal non-faces of a simplicial complex.

    Args:
        ring: the ring whose variables are the vertices
        facets: the maximal faces, as collections of 0-based vertex indices

    Returns:
        The squarefree Stanley-Reisner ideal.

    """
    facets = [frozenset(facet) for facet in facets]

    def is_face(candidate) -> bool:
        return any(candidate <= facet for facet in facets)

    gens = []
    for size in range(ring.n + 1):
        for subset in combinations(range(ring.n), size):
            candidate = frozenset(subset)
            if not is_face(candidate) and all(
                is_face(candidate - {vertex}) for vertex in candidate
            ):
                gens.append(tuple(1 if pos in candidate else 0 for pos in range(ring.n)))
    return MonomialIdeal(ring, gens)

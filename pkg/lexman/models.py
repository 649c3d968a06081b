"""Standard value objects shared across lexman, and the schemas that serialize them."""
# pylint: disable=too-few-public-methods

from collections import namedtuple
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from marshmallow import Schema, fields, validate, validates, ValidationError
from marshmallow_enum import EnumField
from sympy.polys.monomials import monomial_deg
from sympy import isprime

from lexman.constants import DEFAULT_SETTINGS
from lexman.exceptions import InvariantError, RingMismatchError
from lexman.util import Monomial


class Ordering(Enum):
    """Result of comparing two monomials in lex order."""

    GREATER = 1
    EQUAL = 0
    LESS = -1


class TransformKind(Enum):
    """The rewriting operations the stabilization pipeline may apply."""

    SHIFT = "shift"
    SHIFT_PLUS_P = "shift_plus_p"
    COMPRESS = "compress"
    T_STEP = "t_step"
    POWERS_COMPRESS = "powers_compress"


class RingContext(namedtuple("RingContext", ["n"])):
    """The polynomial ring K[x_1, ..., x_n]; only the variable count is data."""

    __slots__ = ()

    def __new__(cls, n: int):
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InvariantError(f"A ring needs a positive number of variables, got {n!r}")
        return super().__new__(cls, n)

    def check(self, monomial: Sequence[int]) -> Monomial:
        """Validate an exponent vector against this ring and return it as a tuple."""
        if len(monomial) != self.n:
            raise RingMismatchError(
                f"Monomial {tuple(monomial)} has {len(monomial)} exponents, ring has {self.n}"
            )
        if any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in monomial):
            raise InvariantError(f"Exponents must be non-negative integers: {tuple(monomial)}")
        return tuple(monomial)

    @property
    def one(self) -> Monomial:
        """The unit monomial."""
        return (0,) * self.n


class PurePowers(namedtuple("PurePowers", ["e"])):
    """Exponents of P = (x_1^e_1, ..., x_r^e_r) with 2 <= e_1 <= ... <= e_r."""

    __slots__ = ()

    def __new__(cls, e: Iterable[int] = ()):
        e = tuple(e)
        if any(isinstance(value, bool) or not isinstance(value, int) for value in e):
            raise InvariantError(f"Pure power exponents must be integers: {e}")
        if any(value < 2 for value in e):
            raise InvariantError(f"Pure power exponents must be at least 2: {e}")
        if any(low > high for low, high in zip(e, e[1:])):
            raise InvariantError(f"Pure power exponents must be non-decreasing: {e}")
        return super().__new__(cls, e)

    @property
    def r(self) -> int:
        """Number of variables carrying a pure power."""
        return len(self.e)

    def exponent(self, index: int) -> Optional[int]:
        """The exponent attached to variable ``index`` (0-based), if any."""
        return self.e[index] if index < len(self.e) else None

    def generators(self, ring: RingContext) -> Tuple[Monomial, ...]:
        """The pure powers as monomials of ``ring``."""
        if self.r > ring.n:
            raise InvariantError(f"{self.r} pure powers do not fit in {ring.n} variables")
        return tuple(
            tuple(power if pos == index else 0 for pos in range(ring.n))
            for index, power in enumerate(self.e)
        )


class PiecewiseLexSpec(namedtuple("PiecewiseLexSpec", ["ring", "components"])):
    """Generators of L_(1), ..., L_(n); component i lives in the first i + 1 variables.

    Only the support condition is checked here; lexness of each component is
    checked by :func:`lexman.monomial.plex_ideal`.
    """

    __slots__ = ()

    def __new__(cls, ring: RingContext, components: Iterable[Iterable[Sequence[int]]] = ()):
        components = [
            tuple(sorted({ring.check(gen) for gen in component}, reverse=True))
            for component in components
        ]
        if len(components) > ring.n:
            raise InvariantError(f"{len(components)} plex components for {ring.n} variables")
        components += [()] * (ring.n - len(components))
        for index, component in enumerate(components):
            for gen in component:
                if any(gen[index + 1 :]):
                    raise InvariantError(
                        f"Generator {gen} of L_({index + 1}) uses variables beyond x{index + 1}"
                    )
        return super().__new__(cls, ring, tuple(components))

    @classmethod
    def from_short(cls, ring: RingContext, short: Mapping[int, Iterable[Sequence[int]]]):
        """Build a spec from 1-based component indices mapped to short exponent lists."""
        components = [[] for _ in range(ring.n)]
        for index, gens in short.items():
            if not 1 <= index <= ring.n:
                raise InvariantError(f"plex component {index} outside 1..{ring.n}")
            for gen in gens:
                if len(gen) != index:
                    raise InvariantError(
                        f"Generator of L_({index}) needs {index} exponents, got {len(gen)}"
                    )
                components[index - 1].append(tuple(gen) + (0,) * (ring.n - index))
        return cls(ring, components)

    @property
    def is_empty(self) -> bool:
        return not any(self.components)


AbDecomposition = namedtuple("AbDecomposition", ["f", "alpha", "beta"])


class FieldSpec(namedtuple("FieldSpec", ["characteristic"])):
    """A coefficient field, known only through its characteristic."""

    __slots__ = ()

    def __new__(cls, characteristic: int = 0):
        if characteristic != 0 and not isprime(characteristic):
            raise InvariantError(f"Characteristic must be 0 or a prime, got {characteristic}")
        return super().__new__(cls, int(characteristic))

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


class SimplicialComplexDesc(namedtuple("SimplicialComplexDesc", ["vertices", "faces"])):
    """A simplicial complex given by its full (downward closed) face set."""

    __slots__ = ()

    def __new__(cls, vertices: Iterable[int], faces: Iterable[Iterable[int]]):
        faces = frozenset(tuple(sorted(face)) for face in faces)
        for face in faces:
            for pos in range(len(face)):
                if face[:pos] + face[pos + 1 :] not in faces:
                    raise InvariantError(f"Face set is not downward closed at {face}")
        return super().__new__(cls, tuple(sorted(vertices)), faces)

    @property
    def dimension(self) -> int:
        """Largest face dimension; -1 for {∅} and -2 for the void complex."""
        return max((len(face) - 1 for face in self.faces), default=-2)


TransformStep = namedtuple(
    "TransformStep",
    ["kind", "pair", "t", "hf_before", "hf_after", "ideal", "betti_before", "betti_after"],
    defaults=(None, None),
)
Instance = namedtuple("Instance", ["ring", "powers", "plex", "ideal", "seed"])
TheoremReport = namedtuple(
    "TheoremReport",
    [
        "instance",
        "lex",
        "combined",
        "hf_match",
        "betti_ok",
        "tables",
        "stable",
        "stable_ok",
        "log",
    ],
    defaults=(None, None, ()),
)
IdealFile = namedtuple("IdealFile", ["ring", "powers", "plex", "gens"])


class SettingsSchema(Schema):
    """Validation schema for lexman settings."""

    truncation_margin = fields.Integer(
        load_default=DEFAULT_SETTINGS["truncation_margin"], validate=validate.Range(min=0)
    )
    truncation_cap = fields.Integer(
        load_default=DEFAULT_SETTINGS["truncation_cap"], validate=validate.Range(min=1)
    )
    step_cap = fields.Integer(
        load_default=DEFAULT_SETTINGS["step_cap"], validate=validate.Range(min=1)
    )
    max_inclusion_exclusion_generators = fields.Integer(
        load_default=DEFAULT_SETTINGS["max_inclusion_exclusion_generators"],
        validate=validate.Range(min=0, max=30),
    )
    max_betti_generators = fields.Integer(
        load_default=DEFAULT_SETTINGS["max_betti_generators"], validate=validate.Range(min=1)
    )
    max_lattice_size = fields.Integer(
        load_default=DEFAULT_SETTINGS["max_lattice_size"], validate=validate.Range(min=1)
    )
    audit_characteristics = fields.List(
        fields.Integer(), load_default=DEFAULT_SETTINGS["audit_characteristics"]
    )
    default_characteristics = fields.List(
        fields.Integer(), load_default=DEFAULT_SETTINGS["default_characteristics"]
    )

    @staticmethod
    def _check_characteristics(values):
        bad = [value for value in values if value != 0 and not isprime(value)]
        if bad:
            raise ValidationError(f"Characteristics must be 0 or prime, got {bad}")

    @validates("audit_characteristics")
    def validate_audit_characteristics(self, value, **_kwargs):
        """Marshmallow validator for the audit characteristics."""
        self._check_characteristics(value)

    @validates("default_characteristics")
    def validate_default_characteristics(self, value, **_kwargs):
        """Marshmallow validator for the verification characteristics."""
        self._check_characteristics(value)


class MonomialIdealSchema(Schema):
    """Serialize a monomial ideal as its variable count and minimal generators."""

    n = fields.Function(lambda ideal: ideal.ring.n)
    gens = fields.List(fields.List(fields.Integer()))
    degrees = fields.Function(lambda ideal: sorted({monomial_deg(gen) for gen in ideal.gens}))


class HilbertFunctionSchema(Schema):
    """Serialize a Hilbert function as its truncation degree and slice dimensions."""

    truncation = fields.Integer(attribute="D", data_key="D")
    dims = fields.List(fields.Integer())


class BettiTableSchema(Schema):
    """Serialize a Betti table as sorted ``[i, j, value]`` triples."""

    characteristic = fields.Function(
        lambda table: None if table.field is None else table.field.characteristic
    )
    convention = fields.Str()
    entries = fields.Function(
        lambda table: [[i, j, value] for (i, j), value in sorted(table.entries.items())]
    )


def _dump_tables(tables):
    if not tables:
        return None
    return {
        str(char): BettiTableSchema().dump(table) for char, table in sorted(tables.items())
    }


class TransformStepSchema(Schema):
    """Serialize one applied pipeline step."""

    kind = EnumField(TransformKind, by_value=True)
    pair = fields.List(fields.Integer())
    t = fields.Integer()
    hf_before = fields.Nested(HilbertFunctionSchema)
    hf_after = fields.Nested(HilbertFunctionSchema)
    ideal = fields.Nested(MonomialIdealSchema)
    betti_before = fields.Function(lambda step: _dump_tables(step.betti_before))
    betti_after = fields.Function(lambda step: _dump_tables(step.betti_after))


class InstanceSchema(Schema):
    """Serialize a theorem instance."""

    seed = fields.Integer(allow_none=True)
    n = fields.Function(lambda inst: inst.ring.n)
    powers = fields.Function(lambda inst: list(inst.powers.e))
    plex = fields.Function(
        lambda inst: [[list(gen) for gen in component] for component in inst.plex.components]
    )
    ideal = fields.Nested(MonomialIdealSchema)


class TheoremReportSchema(Schema):
    """Serialize a theorem verification report."""

    instance = fields.Nested(InstanceSchema)
    lex = fields.Nested(MonomialIdealSchema)
    combined = fields.Nested(MonomialIdealSchema)
    hf_match = fields.Boolean()
    betti_ok = fields.Function(
        lambda report: {str(char): ok for char, ok in sorted(report.betti_ok.items())}
    )
    tables = fields.Function(
        lambda report: {
            str(char): [BettiTableSchema().dump(table) for table in pair]
            for char, pair in sorted(report.tables.items())
        }
    )
    stable = fields.Nested(MonomialIdealSchema, allow_none=True)
    stable_ok = fields.Boolean(allow_none=True)
    log = fields.Nested(TransformStepSchema, many=True)


class IdealFileSchema(Schema):
    """Serialize a parsed ideal file."""

    n = fields.Function(lambda parsed: parsed.ring.n)
    powers = fields.Function(lambda parsed: list(parsed.powers.e) if parsed.powers else None)
    plex = fields.Function(
        lambda parsed: [[list(gen) for gen in component] for component in parsed.plex.components]
        if parsed.plex
        else None
    )
    gens = fields.List(fields.List(fields.Integer()))

"""The line-oriented ideal file format.

::

    # comments and blank lines are ignored
    ring 3
    powers 2 2
    plex 1 3
    gen 2 0 0
    gen 0 1 1

``ring`` comes first; ``powers`` at most once; ``plex i a1 .. ai`` adds a
generator to L_(i); ``gen a1 .. an`` adds a generator of I.
"""

import logging
from typing import Dict, List, Optional

from lexman.exceptions import InvariantError, ParseError
from lexman.models import IdealFile, Instance, PiecewiseLexSpec, PurePowers, RingContext
from lexman.monomial import MonomialIdeal, plex_ideal

logger = logging.getLogger(__name__)

STATEMENTS = ("ring", "powers", "plex", "gen")


def _integers(words: List[str], line: int) -> List[int]:
    try:
        return [int(word) for word in words]
    except ValueError as exc:
        raise ParseError(f"expected integers, got {' '.join(words)!r}", line) from exc


def parse_ideal_file(text: str) -> IdealFile:
    """Parse the text of an ideal file.

    Args:
        text: the file contents

    Returns:
        The parsed file, with generators in canonical (descending lex) order.

    Raises:
        ParseError: on syntax errors and invariant violations, with the line number

    """
    ring: Optional[RingContext] = None
    powers: Optional[PurePowers] = None
    plex: Dict[int, list] = {}
    plex_lines: Dict[int, int] = {}
    gens = []
    for number, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        keyword = words[0]
        if keyword not in STATEMENTS:
            raise ParseError(f"unknown statement {keyword!r}", number)
        values = _integers(words[1:], number)
        if ring is None:
            if keyword != "ring":
                raise ParseError("the first statement must be 'ring <n>'", number)
            if len(values) != 1:
                raise ParseError("'ring' takes exactly one integer", number)
            try:
                ring = RingContext(values[0])
            except InvariantError as exc:
                raise ParseError(str(exc), number) from exc
        elif keyword == "ring":
            raise ParseError("duplicate 'ring' statement", number)
        elif keyword == "powers":
            if powers is not None:
                raise ParseError("duplicate 'powers' statement", number)
            try:
                powers = PurePowers(values)
                powers.generators(ring)
            except InvariantError as exc:
                raise ParseError(str(exc), number) from exc
        elif keyword == "plex":
            if not values or not 1 <= values[0] <= ring.n:
                raise ParseError(f"'plex' needs a component index in 1..{ring.n}", number)
            index, exponents = values[0], values[1:]
            if len(exponents) != index or any(e < 0 for e in exponents):
                raise ParseError(
                    f"a generator of L_({index}) needs {index} non-negative exponents", number
                )
            plex.setdefault(index, []).append(tuple(exponents))
            plex_lines.setdefault(index, number)
        else:
            if len(values) != ring.n or any(e < 0 for e in values):
                raise ParseError(f"'gen' needs {ring.n} non-negative exponents", number)
            gens.append(tuple(values))
    if ring is None:
        raise ParseError("missing 'ring <n>' statement", 1)
    spec = None
    if plex:
        spec = PiecewiseLexSpec.from_short(ring, plex)
        for index, line in sorted(plex_lines.items()):
            component = PiecewiseLexSpec.from_short(ring, {index: plex[index]})
            try:
                plex_ideal(component)
            except InvariantError as exc:
                raise ParseError(str(exc), line) from exc
    return IdealFile(ring, powers, spec, tuple(sorted(set(gens), reverse=True)))


def read_ideal_file(path: str) -> IdealFile:
    """Read and parse an ideal file from disk."""
    with open(path, encoding="utf-8") as handle:
        parsed = parse_ideal_file(handle.read())
    logger.debug(f"Read {path}: n={parsed.ring.n}, {len(parsed.gens)} generators")
    return parsed


def render_ideal_file(parsed: IdealFile) -> str:
    """Render an ideal file canonically; parsing the result gives ``parsed`` back."""
    lines = [f"ring {parsed.ring.n}"]
    if parsed.powers is not None:
        lines.append(" ".join(["powers"] + [str(e) for e in parsed.powers.e]))
    if parsed.plex is not None:
        for index, component in enumerate(parsed.plex.components, start=1):
            for gen in component:
                lines.append(" ".join(["plex", str(index)] + [str(e) for e in gen[:index]]))
    for gen in parsed.gens:
        lines.append(" ".join(["gen"] + [str(e) for e in gen]))
    return "\n".join(lines) + "\n"


def file_ideal(parsed: IdealFile) -> MonomialIdeal:
    return MonomialIdeal(parsed.ring, parsed.gens)


def file_powers(parsed: IdealFile) -> PurePowers:
    """The pure powers of the file, empty when it has no 'powers' line."""
    return parsed.powers if parsed.powers is not None else PurePowers()


def file_plex(parsed: IdealFile) -> PiecewiseLexSpec:
    return parsed.plex if parsed.plex is not None else PiecewiseLexSpec(parsed.ring)


def file_instance(parsed: IdealFile, seed: Optional[int] = None) -> Instance:
    """Read the file as a theorem instance (P, L~, I)."""
    return Instance(parsed.ring, file_powers(parsed), file_plex(parsed), file_ideal(parsed), seed)


def instance_file(inst: Instance) -> IdealFile:
    """The ideal file describing a theorem instance."""
    return IdealFile(
        inst.ring,
        inst.powers,
        None if inst.plex.is_empty else inst.plex,
        inst.ideal.gens,
    )

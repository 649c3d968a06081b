from functools import lru_cache
from math import comb
from typing import Iterable, Tuple

Monomial = Tuple[int, ...]


def variable(n: int, index: int, power: int = 1) -> Monomial:
    """The monomial x_{index}^power in a ring with n variables (0-based index)."""
    return tuple(power if pos == index else 0 for pos in range(n))


def count_monomials(n: int, d: int) -> int:
    """Number of monomials of degree d in n variables."""
    if d < 0:
        return 0
    return comb(n - 1 + d, n - 1)


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> Tuple[Monomial, ...]:
    """All monomials of degree d in n variables, in descending lex order.

    Args:
        n: the number of variables
        d: the degree

    Returns:
        A tuple starting at x_1^d and ending at x_n^d.

    """
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    result = []
    for first in range(d, -1, -1):
        result.extend((first,) + rest for rest in monomials_of_degree(n - 1, d - first))
    return tuple(result)


def render_monomial(monomial: Monomial) -> str:
    """Render a monomial as a product of variables, e.g. ``x1^2*x3``.

    Args:
        monomial: the exponent vector to render

    Returns:
        The human readable product, or ``1`` for the unit monomial.

    """
    factors = []
    for index, exponent in enumerate(monomial, start=1):
        if exponent == 1:
            factors.append(f"x{index}")
        elif exponent > 1:
            factors.append(f"x{index}^{exponent}")
    return "*".join(factors) or "1"


def render_generators(gens: Iterable[Monomial]) -> str:
    """Render a generating set as ``(g1, g2, ...)``."""
    return "(" + ", ".join(render_monomial(gen) for gen in gens) + ")"

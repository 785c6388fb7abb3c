"""Independent reference computations used by the tests.

Nothing here imports the arithmetic tables of the package: polynomials go
through sympy's galoistools, Eisenstein values through complex floats, and
group elements through explicit 8x8 products.
"""

from __future__ import annotations

import cmath
import itertools

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem

OMEGA = cmath.exp(2j * cmath.pi / 3)


def lex_least_irreducible(degree: int) -> tuple[int, ...]:
    """Monic irreducible of the given degree, least coefficient vector low-to-high."""
    for low in itertools.product(range(3), repeat=degree):
        c = list(low) + [1]
        if gf_irreducible_p(c[::-1], 3, ZZ):
            return tuple(c)
    raise AssertionError("no irreducible polynomial")


def _poly(field, a: int) -> list:
    return [int(c) for c in field.coeffs(a)][::-1]


def _elem(field, hi_to_low) -> int:
    c = [int(x) % 3 for x in hi_to_low][::-1]
    c += [0] * (field.degree - len(c))
    return field.from_coeffs(c)


def poly_mul(field, a: int, b: int) -> int:
    mod = list(field.modulus)[::-1]
    return _elem(field, gf_rem(gf_mul(_poly(field, a), _poly(field, b), 3, ZZ), mod, 3, ZZ))


def poly_pow(field, a: int, e: int) -> int:
    mod = list(field.modulus)[::-1]
    return _elem(field, gf_pow_mod(_poly(field, a), e, mod, 3, ZZ))


def to_complex(z) -> complex:
    return z.a + z.b * OMEGA


def close(z, w, tol: float = 1e-9) -> bool:
    return abs(to_complex(z) - w) < tol

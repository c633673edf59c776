"""Arithmetic in GF(2^b) via log/antilog tables.

Field elements are plain Python ints in [0, 2^b).  Bit i of the integer is
the coefficient of alpha^i in the polynomial basis, where alpha is a root of
the fixed primitive polynomial for that degree.  All fields of a given degree
therefore share one canonical representation.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# One fixed primitive polynomial per degree, bit i = coefficient of x^i.
# Primitivity is re-verified at table-build time (construction raises if a
# polynomial fails to generate the full multiplicative group).
PRIMITIVE_POLY = {
    3: 0b1011,                # x^3 + x + 1
    4: 0b10011,               # x^4 + x + 1
    5: 0b100101,              # x^5 + x^2 + 1
    6: 0b1000011,             # x^6 + x + 1
    7: 0b10001001,            # x^7 + x^3 + 1
    8: 0b100011101,           # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,          # x^9 + x^4 + 1
    10: 0b10000001001,        # x^10 + x^3 + 1
    11: 0b100000000101,       # x^11 + x^2 + 1
    12: 0b1000001010011,      # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,     # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,    # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,   # x^15 + x + 1
    16: 0b10001000000001011,  # x^16 + x^12 + x^3 + x + 1
}

MIN_DEGREE = 3
MAX_DEGREE = 16


class GF2m:
    """GF(2^b) with table-based multiplication.

    Parameters
    ----------
    degree : int
        Extension degree b, 3 <= b <= 16.
    primitive_poly : int, optional
        Bitmask of the defining polynomial.  Defaults to the canonical entry
        in PRIMITIVE_POLY for the degree.
    """

    def __init__(self, degree: int, primitive_poly: int | None = None):
        if not MIN_DEGREE <= degree <= MAX_DEGREE:
            raise ValueError(f"degree must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {degree}")
        if primitive_poly is None:
            primitive_poly = PRIMITIVE_POLY[degree]
        if primitive_poly >> degree != 1:
            raise ValueError(f"polynomial 0b{primitive_poly:b} does not have degree {degree}")
        self.degree = degree
        self.primitive_poly = primitive_poly
        self.order = (1 << degree) - 1

        # alog[i] = alpha^i for i in [0, order); log[alog[i]] = i.
        alog = [0] * self.order
        log = [0] * (self.order + 1)
        x = 1
        for i in range(self.order):
            alog[i] = x
            log[x] = i
            x <<= 1
            if x >> degree:
                x ^= primitive_poly
        if x != 1 or len(set(alog)) != self.order:
            raise ValueError(f"0b{primitive_poly:b} is not primitive over GF(2^{degree})")
        self._alog = alog
        self._log = log
        # numpy copies for vectorized evaluation (chien search, matrix builds)
        self.alog_np = np.array(alog, dtype=np.int64)
        self.log_np = np.array(log, dtype=np.int64)
        self._quad_solver: list[int] | None = None

    def __repr__(self) -> str:
        return f"GF2m(degree={self.degree}, primitive_poly=0b{self.primitive_poly:b})"

    # -- basic arithmetic ---------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._alog[(self._log[a] + self._log[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._alog[(self.order - self._log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return self._alog[(self._log[a] * e) % self.order]

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def sqrt(self, a: int) -> int:
        # squaring is a bijection in characteristic 2
        if a == 0:
            return 0
        return self.pow(a, 1 << (self.degree - 1))

    def alpha_pow(self, e: int) -> int:
        """alpha^e, exponent taken mod the group order."""
        return self._alog[e % self.order]

    def dlog(self, a: int) -> int:
        """Discrete log base alpha; a must be nonzero."""
        if a == 0:
            raise ValueError("discrete log of 0 is undefined")
        return self._log[a]

    # -- bit-vector views ---------------------------------------------------

    def bit_column(self, a: int) -> np.ndarray:
        """Element as a length-b 0/1 column, most significant bit first.

        Entry j holds the coefficient of alpha^(b-1-j).
        """
        b = self.degree
        return np.array([(a >> (b - 1 - j)) & 1 for j in range(b)], dtype=np.uint8)

    def bit_columns(self, elements: np.ndarray) -> np.ndarray:
        """Vectorized bit_column: shape (b, len(elements))."""
        b = self.degree
        shifts = np.arange(b - 1, -1, -1, dtype=np.int64)
        return ((np.asarray(elements, dtype=np.int64)[None, :] >> shifts[:, None]) & 1).astype(np.uint8)

    def element_from_bits(self, bits) -> int:
        """Inverse of bit_column."""
        bits = np.asarray(bits)
        if bits.shape != (self.degree,):
            raise ValueError(f"expected {self.degree} bits, got shape {bits.shape}")
        value = 0
        for j, bit in enumerate(bits):
            value |= int(bit) << (self.degree - 1 - j)
        return value

    # -- characteristic-2 helpers for closed-form root finding --------------

    def trace(self, a: int) -> int:
        acc = 0
        x = a
        for _ in range(self.degree):
            acc ^= x
            x = self.sqr(x)
        return acc & 1

    def half_trace(self, a: int) -> int:
        # solves z^2 + z = a when the degree is odd and trace(a) == 0
        acc = 0
        x = a
        for _ in range((self.degree + 1) // 2):
            acc ^= x
            x = self.sqr(self.sqr(x))
        return acc

    def solve_quadratic_unit(self, u: int) -> int | None:
        """One solution z of z^2 + z = u, or None if there is none.

        The other solution is z ^ 1.  Odd degrees use the half-trace; even
        degrees solve the GF(2)-linear system for the map z -> z^2 + z.
        """
        if self.trace(u) != 0:
            return None
        if self.degree % 2 == 1:
            z = self.half_trace(u)
        else:
            z = self._solve_quad_by_table(u)
        assert self.sqr(z) ^ z == u
        return z

    def _solve_quad_by_table(self, u: int) -> int:
        if self._quad_solver is None:
            cols = [self.sqr(1 << j) ^ (1 << j) for j in range(self.degree)]
            self._quad_solver = cols
        sol = solve_gf2(self._quad_solver, u, self.degree)
        if sol is None:
            raise AssertionError("trace said solvable but the linear solve disagreed")
        particular, _kernel = sol
        return particular


def solve_gf2(columns: list[int], rhs: int, nbits: int) -> tuple[int, list[int]] | None:
    """Solve sum_j x_j * columns[j] = rhs over GF(2) for the bits x_j.

    columns[j] is a bitmask of length nbits.  Returns (particular solution,
    kernel basis) with solutions encoded as bitmasks over j, or None when the
    system is inconsistent.
    """
    n = len(columns)
    # rows of the augmented matrix: low n bits = coefficients, bit n = rhs
    rows = []
    for r in range(nbits):
        row = 0
        for j in range(n):
            row |= ((columns[j] >> r) & 1) << j
        row |= ((rhs >> r) & 1) << n
        rows.append(row)

    pivot_col_of_row: list[int] = []
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, nbits):
            if (rows[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            pivot_col_of_row.append(-1)
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(nbits):
            if r != rank and (rows[r] >> col) & 1:
                rows[r] ^= rows[rank]
        pivot_col_of_row.append(col)
        rank += 1
    # inconsistent if any zero row has rhs bit set
    for r in range(rank, nbits):
        if rows[r] >> n:
            return None

    pivots = [c for c in pivot_col_of_row if c >= 0]
    free = [c for c in range(n) if c not in pivots]
    particular = 0
    for r, col in enumerate(pivots):
        if (rows[r] >> n) & 1:
            particular |= 1 << col
    kernel = []
    for f in free:
        vec = 1 << f
        for r, col in enumerate(pivots):
            if (rows[r] >> f) & 1:
                vec |= 1 << col
        kernel.append(vec)
    return particular, kernel


@lru_cache(maxsize=None)
def make_field(degree: int) -> GF2m:
    """Shared GF(2^degree) instance with the canonical primitive polynomial."""
    return GF2m(degree)

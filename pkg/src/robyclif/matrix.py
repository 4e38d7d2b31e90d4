"""Dense matrices over sparse polynomials.

Every entry of a ``PolyMatrix`` shares one variable context, so products run
straight through the kernel term-map routines without per-entry alignment.
Dimensions in this package stay small (at most a few thousand rows) while
entries carry the real weight, hence dense storage of sparse entries.
"""

from __future__ import annotations

from fractions import Fraction

from . import kernel
from .errors import InputError
from .poly import Poly, Scalar, parse_poly

__all__ = ["PolyMatrix", "matpoly_pow", "is_scalar_multiple_of_identity"]


class PolyMatrix:
    __slots__ = ("nrows", "ncols", "vars", "data")

    def __init__(self, nrows: int, ncols: int, vars: tuple, data: list, *, _canonical=False):
        # data: flat row-major list of term maps aligned to vars
        if _canonical:
            self.nrows, self.ncols, self.vars, self.data = nrows, ncols, vars, data
            return
        if nrows < 0 or ncols < 0 or len(data) != nrows * ncols:
            raise InputError("matrix shape does not match entry count")
        self.nrows, self.ncols = nrows, ncols
        self.vars = tuple(vars)
        self.data = data

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rows(cls, rows) -> "PolyMatrix":
        """Build from nested lists of Poly / scalar / polynomial strings."""
        grid = []
        for row in rows:
            grid.append([cls._entry_poly(x) for x in row])
        nrows = len(grid)
        ncols = len(grid[0]) if grid else 0
        if any(len(r) != ncols for r in grid):
            raise InputError("ragged rows in matrix literal")
        vs = set()
        for row in grid:
            for p in row:
                vs.update(p.vars)
        vars = tuple(sorted(vs))
        data = [p.aligned(vars) for row in grid for p in row]
        return cls(nrows, ncols, vars, data, _canonical=True)

    @staticmethod
    def _entry_poly(x) -> Poly:
        if isinstance(x, Poly):
            return x
        if isinstance(x, str):
            return parse_poly(x)
        if isinstance(x, Scalar):
            return Poly.const(x)
        raise InputError(f"cannot interpret {type(x).__name__} as a matrix entry")

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        one = Fraction(1)
        data = [({(): one} if i == j else {}) for i in range(n) for j in range(n)]
        return cls(n, n, (), data, _canonical=True)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "PolyMatrix":
        return cls(nrows, ncols, (), [{} for _ in range(nrows * ncols)], _canonical=True)

    @classmethod
    def diagonal(cls, entries) -> "PolyMatrix":
        polys = [cls._entry_poly(x) for x in entries]
        n = len(polys)
        vs = tuple(sorted({v for p in polys for v in p.vars}))
        data = [
            (polys[i].aligned(vs) if i == j else {}) for i in range(n) for j in range(n)
        ]
        return cls(n, n, vs, data, _canonical=True)

    # -- context -----------------------------------------------------------------

    def aligned_data(self, vars: tuple) -> list:
        if vars == self.vars:
            return self.data
        return [
            Poly(self.vars, t, _canonical=True).aligned(vars) for t in self.data
        ]

    def _common(self, other: "PolyMatrix"):
        if self.vars == other.vars:
            return self.vars, self.data, other.data
        vs = tuple(sorted(set(self.vars) | set(other.vars)))
        return vs, self.aligned_data(vs), other.aligned_data(vs)

    # -- access --------------------------------------------------------------------

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> Poly:
        return Poly(self.vars, self.data[i * self.ncols + j], _canonical=True).pruned()

    def rows(self):
        for i in range(self.nrows):
            yield [self.entry(i, j) for j in range(self.ncols)]

    def submatrix(self, row_idx, col_idx) -> "PolyMatrix":
        data = [
            self.data[i * self.ncols + j] for i in row_idx for j in col_idx
        ]
        return PolyMatrix(len(row_idx), len(col_idx), self.vars, data, _canonical=True)

    def transpose(self) -> "PolyMatrix":
        data = [
            self.data[i * self.ncols + j]
            for j in range(self.ncols)
            for i in range(self.nrows)
        ]
        return PolyMatrix(self.ncols, self.nrows, self.vars, data, _canonical=True)

    # -- arithmetic -------------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise InputError(f"shape mismatch: {self.shape} + {other.shape}")
        vs, a, b = self._common(other)
        data = [kernel.add_terms(x, y) for x, y in zip(a, b)]
        return PolyMatrix(self.nrows, self.ncols, vs, data, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise InputError(f"shape mismatch: {self.shape} - {other.shape}")
        vs, a, b = self._common(other)
        data = [kernel.sub_terms(x, y) for x, y in zip(a, b)]
        return PolyMatrix(self.nrows, self.ncols, vs, data, _canonical=True)

    def __neg__(self):
        return PolyMatrix(
            self.nrows, self.ncols, self.vars, [kernel.neg_terms(t) for t in self.data],
            _canonical=True,
        )

    def scaled(self, c) -> "PolyMatrix":
        """Multiply every entry by a Poly or scalar."""
        if isinstance(c, Scalar):
            data = [kernel.scale_terms(t, c if not isinstance(c, int) else Fraction(c)) for t in self.data]
            return PolyMatrix(self.nrows, self.ncols, self.vars, data, _canonical=True)
        p = self._entry_poly(c)
        vs = tuple(sorted(set(self.vars) | set(p.vars)))
        pt = p.aligned(vs)
        data = [kernel.mul_terms(t, pt) for t in self.aligned_data(vs)]
        return PolyMatrix(self.nrows, self.ncols, vs, data, _canonical=True)

    def __mul__(self, other):
        if isinstance(other, (Poly,) + Scalar):
            return self.scaled(other)
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise InputError(f"shape mismatch: {self.shape} @ {other.shape}")
        vs, a, b = self._common(other)
        data = kernel.matmul_terms(a, b, self.nrows, self.ncols, other.ncols)
        return PolyMatrix(self.nrows, other.ncols, vs, data, _canonical=True)

    def __rmul__(self, other):
        if isinstance(other, (Poly,) + Scalar):
            return self.scaled(other)
        return NotImplemented

    def pow(self, n: int) -> "PolyMatrix":
        """Binary exponentiation; n >= 0, square matrix."""
        if self.nrows != self.ncols:
            raise InputError("only square matrices can be raised to a power")
        if not isinstance(n, int) or n < 0:
            raise InputError("matrix powers must be nonnegative integers")
        result = PolyMatrix.identity(self.nrows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def kron(self, other: "PolyMatrix") -> "PolyMatrix":
        """Kronecker product; left factor indexes the outer blocks."""
        vs, a, b = self._common(other)
        n, m = self.nrows * other.nrows, self.ncols * other.ncols
        data = [None] * (n * m)
        for i in range(self.nrows):
            for j in range(self.ncols):
                block = a[i * self.ncols + j]
                for k in range(other.nrows):
                    for l in range(other.ncols):
                        data[(i * other.nrows + k) * m + (j * other.ncols + l)] = (
                            kernel.mul_terms(block, b[k * other.ncols + l]) if block else {}
                        )
        return PolyMatrix(n, m, vs, data, _canonical=True)

    def substitute(self, bindings) -> "PolyMatrix":
        rows = [
            [self.entry(i, j).substitute(bindings) for j in range(self.ncols)]
            for i in range(self.nrows)
        ]
        return PolyMatrix.from_rows(rows) if self.data else PolyMatrix.zeros(self.nrows, self.ncols)

    # -- queries --------------------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(not t for t in self.data)

    def first_nonzero(self):
        """(i, j, Poly) of the first nonzero entry in row-major order, or None."""
        for i in range(self.nrows):
            for j in range(self.ncols):
                t = self.data[i * self.ncols + j]
                if t:
                    return i, j, Poly(self.vars, t, _canonical=True).pruned()
        return None

    def scalar_identity_multiple(self):
        """The Poly c with self == c * I, or None if there is no such c."""
        if self.nrows != self.ncols or self.nrows == 0:
            return None
        diag = self.data[0]
        for i in range(self.nrows):
            for j in range(self.ncols):
                t = self.data[i * self.ncols + j]
                if i == j:
                    if t != diag:
                        return None
                elif t:
                    return None
        return Poly(self.vars, diag, _canonical=True).pruned()

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        _, a, b = self._common(other)
        return a == b

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        rows = []
        for i in range(self.nrows):
            rows.append("[" + ", ".join(str(self.entry(i, j)) for j in range(self.ncols)) + "]")
        return "[" + ", ".join(rows) + "]"

    def __repr__(self) -> str:
        return f"PolyMatrix({self.nrows}x{self.ncols})"


def matpoly_pow(m: PolyMatrix, n: int) -> PolyMatrix:
    """Contract-named wrapper for :meth:`PolyMatrix.pow`."""
    return m.pow(n)


def is_scalar_multiple_of_identity(m: PolyMatrix):
    """The scalar (as Poly) with m == c*I, or None."""
    return m.scalar_identity_multiple()

"""Finite free algebras over polynomial rings and their characteristic polynomials.

A ``FreeAlgebra`` is a free module R^d with a commutative, associative,
unital multiplication given by structure constants in R.  All three laws are
validated eagerly at construction; nothing downstream rechecks them.  The
characteristic polynomial of the generic element is computed from the regular
representation by the Berkowitz algorithm, which is division-free, so it works
verbatim over the polynomial ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .matrix import PolyMatrix
from .poly import Poly
from .report import Report

__all__ = [
    "FreeAlgebra",
    "CharPoly",
    "split_algebra",
    "monogenic_algebra",
    "regular_representation",
    "char_poly",
    "char_poly_of_matrix",
    "restrict_char_poly",
    "cayley_hamilton_check",
]


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, str):
        from .poly import parse_poly

        return parse_poly(x)
    return Poly.const(x)


class FreeAlgebra:
    """Structure constants c[i][j] = coordinates of gamma_i * gamma_j."""

    __slots__ = ("rank", "basis_names", "dual_names", "base_vars", "degrees", "table", "unit", "tvar")

    def __init__(
        self,
        basis_names,
        table,
        *,
        base_vars=(),
        unit=None,
        degrees=None,
        dual_names=None,
        tvar="t",
        validate=True,
    ):
        self.rank = len(basis_names)
        d = self.rank
        if d < 1:
            raise InputError("an algebra needs at least one basis element")
        self.basis_names = tuple(str(n) for n in basis_names)
        if len(set(self.basis_names)) != d:
            raise InputError("duplicate basis names")
        self.tvar = tvar
        if dual_names is None:
            dual_names = tuple(f"G{i + 1}" for i in range(d))
        self.dual_names = tuple(dual_names)
        if len(self.dual_names) != d or len(set(self.dual_names)) != d:
            raise InputError("need one distinct dual variable per basis element")
        if tvar in self.dual_names:
            raise InputError(f"{tvar!r} cannot double as a dual variable")
        self.degrees = tuple(int(x) for x in degrees) if degrees is not None else None
        if self.degrees is not None and len(self.degrees) != d:
            raise InputError("need one degree per basis element")
        self.table = [
            [[_as_poly(c) for c in table[i][j]] for j in range(d)] for i in range(d)
        ]
        for i in range(d):
            for j in range(d):
                if len(self.table[i][j]) != d:
                    raise InputError("structure constant rows must have length rank")
        if unit is None:
            unit_coords = [Poly.const(1)] + [Poly.zero()] * (d - 1)
        else:
            unit_coords = [_as_poly(c) for c in unit]
            if len(unit_coords) != d:
                raise InputError("unit coordinate vector must have length rank")
        self.unit = unit_coords
        used = set(base_vars)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    used.update(self.table[i][j][k].vars)
        for c in unit_coords:
            used.update(c.vars)
        reserved = set(self.dual_names) | {tvar}
        if reserved & used:
            raise InputError(
                f"structure constants collide with dual variables or {tvar!r}: "
                f"{sorted(reserved & used)}"
            )
        self.base_vars = tuple(sorted(used))
        if validate:
            self._validate()

    # -- laws -------------------------------------------------------------

    def _validate(self) -> None:
        d = self.rank
        c = self.table
        for i in range(d):
            for j in range(i + 1, d):
                if any(c[i][j][k] != c[j][i][k] for k in range(d)):
                    raise InputError(
                        f"multiplication is not commutative at "
                        f"({self.basis_names[i]}, {self.basis_names[j]})"
                    )
        for j in range(d):
            got = self.product(self.unit, self._basis_coords(j))
            want = self._basis_coords(j)
            if any(got[k] != want[k] for k in range(d)):
                raise InputError(f"unit law fails on {self.basis_names[j]}")
        for i in range(d):
            for j in range(d):
                ij = self.product(self._basis_coords(i), self._basis_coords(j))
                for k in range(d):
                    left = self.product(ij, self._basis_coords(k))
                    jk = self.product(self._basis_coords(j), self._basis_coords(k))
                    right = self.product(self._basis_coords(i), jk)
                    if any(left[m] != right[m] for m in range(d)):
                        raise InputError(
                            f"multiplication is not associative at "
                            f"({self.basis_names[i]}, {self.basis_names[j]}, {self.basis_names[k]})"
                        )
        if self.degrees is not None:
            for i in range(d):
                for j in range(d):
                    for k in range(d):
                        p = c[i][j][k]
                        if not p:
                            continue
                        want = self.degrees[i] + self.degrees[j] - self.degrees[k]
                        if p.homogeneous_degree() != want:
                            raise InputError(
                                f"structure constant ({i},{j},{k}) is not homogeneous "
                                f"of degree {want}: {p}"
                            )

    # -- algebra operations --------------------------------------------------

    @property
    def unit_is_first_basis_element(self) -> bool:
        """False for presentations like the split one, where the unit is a sum."""
        return self.unit[0] == 1 and not any(self.unit[1:])

    def _basis_coords(self, j: int):
        return [Poly.const(1) if k == j else Poly.zero() for k in range(self.rank)]

    def product(self, u, v):
        """Coordinates of the product of two coordinate vectors."""
        d = self.rank
        out = [Poly.zero() for _ in range(d)]
        for i in range(d):
            ui = u[i]
            if not ui:
                continue
            for j in range(d):
                vj = v[j]
                if not vj:
                    continue
                uv = ui * vj
                for k in range(d):
                    ck = self.table[i][j][k]
                    if ck:
                        out[k] = out[k] + uv * ck
        return out

    def element_rep(self, coords) -> PolyMatrix:
        """Matrix of multiplication by sum(coords[i] * gamma_i) in the basis."""
        d = self.rank
        coords = [_as_poly(c) for c in coords]
        rows = []
        for k in range(d):
            row = []
            for j in range(d):
                acc = Poly.zero()
                for i in range(d):
                    ck = self.table[i][j][k]
                    if ck and coords[i]:
                        acc = acc + coords[i] * ck
                row.append(acc)
            rows.append(row)
        return PolyMatrix.from_rows(rows)

    def regular_representation(self) -> PolyMatrix:
        """Matrix of the generic element sum(Gamma_i gamma_i); linear in duals."""
        return self.element_rep([Poly.variable(g) for g in self.dual_names])

    def restrict(self, bindings) -> "FreeAlgebra":
        """Substitute base variables (e.g. onto a line); laws survive substitution."""
        keys = set(bindings)
        if not keys <= set(self.base_vars):
            raise InputError(f"bindings must cover base variables only, got {sorted(keys)}")
        new_table = [
            [[c.substitute(bindings) for c in self.table[i][j]] for j in range(self.rank)]
            for i in range(self.rank)
        ]
        new_unit = [c.substitute(bindings) for c in self.unit]
        new_base = set(self.base_vars) - keys
        for b in bindings.values():
            new_base.update(_as_poly(b).vars)
        return FreeAlgebra(
            self.basis_names,
            new_table,
            base_vars=tuple(sorted(new_base)),
            unit=new_unit,
            degrees=None if bindings else self.degrees,
            dual_names=self.dual_names,
            tvar=self.tvar,
        )

    def __eq__(self, other):
        if not isinstance(other, FreeAlgebra):
            return NotImplemented
        if (
            self.rank != other.rank
            or self.basis_names != other.basis_names
            or self.dual_names != other.dual_names
            or self.tvar != other.tvar
            or self.degrees != other.degrees
        ):
            return False
        if any(a != b for a, b in zip(self.unit, other.unit)):
            return False
        d = self.rank
        return all(
            self.table[i][j][k] == other.table[i][j][k]
            for i in range(d)
            for j in range(d)
            for k in range(d)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"FreeAlgebra(rank={self.rank}, basis={list(self.basis_names)})"


@dataclass
class CharPoly:
    """det(t*I - rho(generic)): monic of degree rank in t, over R[duals]."""

    rank: int
    poly: Poly
    tvar: str
    dual_names: tuple

    def __post_init__(self):
        self.dual_names = tuple(self.dual_names)
        coeffs = self.coefficients()
        top = coeffs.get(self.rank)
        if top is None or top != 1:
            raise InputError("characteristic polynomial must be monic of degree rank")
        # the t^(d-j) coefficient is a degree-j form in the dual variables
        for k, c in coeffs.items():
            if c and c.homogeneous_degree(self.dual_names) != self.rank - k:
                raise InputError(
                    f"t^{k} coefficient is not homogeneous of degree "
                    f"{self.rank - k} in the dual variables: {c}"
                )

    def coefficients(self) -> dict:
        """Map t-exponent -> coefficient Poly (t removed from the context)."""
        return self.poly.coefficient_map(self.tvar)

    def substitute_base(self, bindings) -> "CharPoly":
        banned = (set(self.dual_names) | {self.tvar}) & set(bindings)
        if banned:
            raise InputError(f"cannot bind dual variables or {self.tvar!r}: {sorted(banned)}")
        for v in bindings.values():
            vp = _as_poly(v)
            if set(vp.vars) & (set(self.dual_names) | {self.tvar}):
                raise InputError("binding values may not involve dual variables or t")
        return CharPoly(self.rank, self.poly.substitute(bindings), self.tvar, self.dual_names)

    def evaluate_matrix(self, m: PolyMatrix, gamma_values) -> PolyMatrix:
        """chi with t -> m and Gamma_i -> gamma_values[i], by Horner."""
        if len(gamma_values) != self.rank:
            raise InputError("need one value per dual variable")
        bindings = dict(zip(self.dual_names, gamma_values))
        coeffs = {
            j: c.substitute(bindings) for j, c in self.coefficients().items()
        }
        n = m.nrows
        acc = PolyMatrix.identity(n)  # monic leading coefficient
        for j in range(self.rank - 1, -1, -1):
            acc = acc * m
            cj = coeffs.get(j)
            if cj is not None and cj:
                acc = acc + PolyMatrix.identity(n).scaled(cj)
        return acc

    def __eq__(self, other):
        if not isinstance(other, CharPoly):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.tvar == other.tvar
            and self.dual_names == other.dual_names
            and self.poly == other.poly
        )

    def __str__(self) -> str:
        return str(self.poly)


# -- the Berkowitz algorithm ----------------------------------------------------


def _berkowitz_vector(m: PolyMatrix) -> list:
    """Coefficients of det(t*I - m), descending in t, leading 1 first.

    Division-free Toeplitz recursion: the vector for an n x n matrix is a
    lower-triangular Toeplitz matrix (built from the last row/column blocks)
    applied to the vector of the leading (n-1) x (n-1) submatrix.
    """
    one = Poly.const(1)
    n = m.nrows
    if n == 0:
        return [one]
    if n == 1:
        return [one, -m.entry(0, 0)]
    sub = list(range(n - 1))
    a = m.submatrix(sub, sub)
    r = m.submatrix([n - 1], sub)          # last row without the corner
    c = m.submatrix(sub, [n - 1])          # last column without the corner
    corner = m.entry(n - 1, n - 1)
    diags = [c]
    for _ in range(n - 2):
        diags.append(a * diags[-1])
    items = [one, -corner]
    for d in diags:
        items.append(-(r * d).entry(0, 0))
    prev = _berkowitz_vector(a)
    out = []
    for i in range(n + 1):
        acc = Poly.zero()
        for j in range(len(prev)):
            if 0 <= i - j < len(items):
                acc = acc + items[i - j] * prev[j]
        out.append(acc)
    return out


def char_poly_of_matrix(m: PolyMatrix, tvar: str = "t") -> Poly:
    """det(tvar*I - m) as a Poly, computed without divisions."""
    if m.nrows != m.ncols:
        raise InputError("characteristic polynomial needs a square matrix")
    if tvar in m.vars:
        raise InputError(f"matrix entries already involve {tvar!r}")
    vec = _berkowitz_vector(m)
    t = Poly.variable(tvar)
    n = m.nrows
    acc = Poly.zero()
    for i, coeff in enumerate(vec):
        if coeff:
            acc = acc + coeff * t ** (n - i)
    return acc


# -- contract-named operations -----------------------------------------------------


def split_algebra(d: int, *, base_vars=(), dual_names=None, tvar="t") -> FreeAlgebra:
    """R^d with coordinatewise product: orthogonal idempotents e_1..e_d.

    The unit is e_1 + ... + e_d, not a basis element; all operations consult
    the stored unit coordinates rather than assuming gamma_1 is the unit.
    """
    if d < 1:
        raise InputError("split algebra needs rank >= 1")
    names = [f"e{i + 1}" for i in range(d)]
    if dual_names is None:
        dual_names = [f"x{i + 1}" for i in range(d)]
    table = [
        [
            [Poly.const(1) if (i == j and k == i) else Poly.zero() for k in range(d)]
            for j in range(d)
        ]
        for i in range(d)
    ]
    return FreeAlgebra(
        names,
        table,
        base_vars=base_vars,
        unit=[Poly.const(1)] * d,
        degrees=[0] * d,
        dual_names=dual_names,
        tvar=tvar,
    )


def monogenic_algebra(p: Poly, var: str, *, dual_names=None, tvar="t") -> FreeAlgebra:
    """R[z]/(p(z)) for p monic in var; basis 1, z, ..., z^(d-1)."""
    p = _as_poly(p)
    if var not in p.vars:
        raise InputError(f"defining polynomial does not involve {var!r}")
    d = p.degree_in(var)
    if d < 1:
        raise InputError("defining polynomial must have positive degree")
    coeffs = p.coefficient_map(var)
    if coeffs.get(d) != 1:
        raise InputError(f"defining polynomial must be monic in {var!r}")
    # z^d = -(lower part); tail[k] = coefficient of z^k in z^d
    tail = [-(coeffs.get(k, Poly.zero())) for k in range(d)]
    base_vars = tuple(v for v in p.vars if v != var)
    pows = [[Poly.const(1) if k == i else Poly.zero() for k in range(d)] for i in range(d)]
    for _ in range(d, 2 * d - 1):
        prev = pows[-1]
        shifted = [Poly.zero()] + prev[:-1]
        top = prev[d - 1]
        if top:
            shifted = [shifted[k] + top * tail[k] for k in range(d)]
        pows.append(shifted)
    table = [[pows[i + j] for j in range(d)] for i in range(d)]
    names = ["1"] if d == 1 else ["1", var] + [_power_name(var, k, base_vars) for k in range(2, d)]
    graded = p.homogeneous_degree() == d
    return FreeAlgebra(
        names,
        table,
        base_vars=base_vars,
        degrees=list(range(d)) if graded else None,
        dual_names=dual_names,
        tvar=tvar,
    )


def _power_name(var: str, k: int, taken) -> str:
    name = f"{var}{k}"
    while name in taken:
        name += "_"
    return name


def regular_representation(algebra: FreeAlgebra) -> PolyMatrix:
    return algebra.regular_representation()


def char_poly(algebra: FreeAlgebra) -> CharPoly:
    """Characteristic polynomial of the generic element, monic in t.

    The t^(d-j) coefficient is (-1)^j tr(wedge^j rho) and in particular has
    total degree j in the dual variables; the determinant route computes all
    of them at once.
    """
    rho = algebra.regular_representation()
    poly = char_poly_of_matrix(rho, algebra.tvar)
    return CharPoly(algebra.rank, poly, algebra.tvar, algebra.dual_names)


def restrict_char_poly(chi: CharPoly, bindings) -> CharPoly:
    """Substitute base-ring variables only (duals and t are off limits)."""
    return chi.substitute_base(bindings)


def cayley_hamilton_check(algebra: FreeAlgebra, chi: CharPoly | None = None) -> Report:
    """chi(rho(generic), Gamma) == 0 as a matrix of polynomial identities.

    By default chi is recomputed from the algebra.  Passing a chi computed
    elsewhere turns this into a consistency check between the two: feeding it
    the characteristic polynomial of a different (or corrupted) multiplication
    table makes the identity fail.
    """
    report = Report(title=f"cayley-hamilton: rank {algebra.rank}")
    if chi is None:
        chi = char_poly(algebra)
    elif chi.rank != algebra.rank or chi.dual_names != algebra.dual_names:
        raise InputError("characteristic polynomial does not match the algebra's shape")
    rho = algebra.regular_representation()
    value = chi.evaluate_matrix(rho, [Poly.variable(g) for g in algebra.dual_names])
    offender = value.first_nonzero()
    report.add(
        "cayley_hamilton",
        offender is None,
        detail="" if offender is None else f"entry ({offender[0]},{offender[1]}): {offender[2]}",
    )
    report.meta["rank"] = algebra.rank
    return report

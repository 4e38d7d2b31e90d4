"""Graded Roby modules: construction, twisted tensor products, verification.

A Roby module for a degree-e form F is a matrix assignment m -> phi(m) with
phi(m)^e = F(m)*I; the variant targeting a characteristic polynomial carries
one action per algebra basis element plus a T-slot and satisfies
psi(a, rT)^d = chi(a, r)*I.  Both flavors live in one class here, told apart
by the presence of the T-slot.  Every identity is verified symbolically on a
generic element with fresh coefficients, never sampled numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, VerificationError
from .freealg import CharPoly, FreeAlgebra, char_poly, split_algebra
from .matrix import PolyMatrix
from .poly import HomForm, Poly, parse_poly
from .report import Report
from .scalars import CycScalar, is_primitive_root

__all__ = [
    "GradedRobyModule",
    "MonomialSpec",
    "Filtration",
    "CharMorphism",
    "AlgebraEmbedding",
    "monomial_roby",
    "monomial_charpoly_roby",
    "split_roby",
    "zero_roby",
    "twisted_tensor",
    "char_morphism",
    "verify_roby",
    "verify_char_morphism",
    "verify_filtered_pseudo",
    "induce_roby",
    "reindex_for_line",
    "in_ideal",
    "fresh_names",
]


def fresh_names(prefix: str, count: int, avoid) -> list:
    """Symbolic coefficient names prefix1..prefixN, dodging the avoid set."""
    taken = set(avoid)
    out = []
    for i in range(count):
        name = f"{prefix}{i + 1}" if count > 1 else prefix
        while name in taken:
            name += "_"
        taken.add(name)
        out.append(name)
    return out


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, str):
        return parse_poly(x)
    return Poly.const(x)


class GradedRobyModule:
    """Action matrices with a Z/eZ grading, targeting a form or a char poly.

    ``target_vars`` name the variables of ``target_poly`` substituted by the
    generic coefficients during verification, parallel to ``actions``.  For
    form targets they coincide with ``action_names``; for characteristic
    polynomial targets the actions are named by algebra basis elements while
    the target lives in the dual variables, plus ``tvar`` for the T-slot.
    """

    __slots__ = (
        "degree",
        "dim",
        "grading",
        "action_names",
        "target_vars",
        "actions",
        "tslot",
        "tvar",
        "target_poly",
        "source_algebra",
    )

    def __init__(
        self,
        degree: int,
        grading,
        action_names,
        actions,
        target_poly: Poly,
        *,
        target_vars=None,
        tslot: PolyMatrix | None = None,
        tvar: str | None = None,
        source_algebra: FreeAlgebra | None = None,
    ):
        if not isinstance(degree, int) or degree < 2:
            raise InputError(f"Roby degree must be an integer >= 2, got {degree!r}")
        self.degree = degree
        self.action_names = tuple(action_names)
        if not self.action_names:
            raise InputError("a Roby module needs at least one action")
        if len(set(self.action_names)) != len(self.action_names):
            raise InputError("duplicate action names")
        self.actions = [
            m if isinstance(m, PolyMatrix) else PolyMatrix.from_rows(m) for m in actions
        ]
        if len(self.actions) != len(self.action_names):
            raise InputError("need exactly one action matrix per name")
        dims = {m.nrows for m in self.actions} | {m.ncols for m in self.actions}
        if len(dims) != 1:
            raise InputError("action matrices must be square and of equal size")
        self.dim = dims.pop()
        if self.dim < 1:
            raise InputError("the module must have positive dimension")
        self.grading = tuple(int(g) % degree for g in grading)
        if len(self.grading) != self.dim:
            raise InputError("grading length must equal the module dimension")
        self.target_vars = tuple(target_vars) if target_vars is not None else self.action_names
        if len(self.target_vars) != len(self.action_names):
            raise InputError("target variables must parallel the actions")
        if (tslot is None) != (tvar is None):
            raise InputError("a T-slot needs a t-variable name and vice versa")
        if tslot is not None and not isinstance(tslot, PolyMatrix):
            tslot = PolyMatrix.from_rows(tslot)
        if tslot is not None and tslot.shape != (self.dim, self.dim):
            raise InputError("T-slot shape does not match the module")
        if tvar is not None and tvar in self.target_vars:
            raise InputError(f"{tvar!r} cannot double as a dual variable")
        self.tslot = tslot
        self.tvar = tvar
        if not isinstance(target_poly, Poly):
            raise InputError("target must be a Poly")
        self.target_poly = target_poly
        if source_algebra is not None:
            if source_algebra.basis_names != self.action_names:
                raise InputError("source algebra basis does not match the action names")
            if source_algebra.dual_names != self.target_vars:
                raise InputError("source algebra duals do not match the target variables")
            if tvar is not None and source_algebra.tvar != tvar:
                raise InputError("source algebra uses a different t-variable")
        self.source_algebra = source_algebra

    # -- access ------------------------------------------------------------

    @property
    def has_tslot(self) -> bool:
        return self.tslot is not None

    def action(self, name: str) -> PolyMatrix:
        try:
            return self.actions[self.action_names.index(name)]
        except ValueError:
            raise InputError(f"no action named {name!r}") from None

    def with_source(self, algebra: FreeAlgebra) -> "GradedRobyModule":
        """Attach (or replace) the source algebra; names must line up."""
        return GradedRobyModule(
            self.degree,
            self.grading,
            self.action_names,
            self.actions,
            self.target_poly,
            target_vars=self.target_vars,
            tslot=self.tslot,
            tvar=self.tvar,
            source_algebra=algebra,
        )

    def generic_matrix(self, coeff_names, t_name: str | None = None) -> PolyMatrix:
        """Sum coeff_i * action_i (+ t * T) with the given variable names."""
        if len(coeff_names) != len(self.actions):
            raise InputError("need one coefficient name per action")
        acc = PolyMatrix.zeros(self.dim, self.dim)
        for name, m in zip(coeff_names, self.actions):
            acc = acc + m.scaled(Poly.variable(name))
        if self.tslot is not None:
            if t_name is None:
                raise InputError("this module carries a T-slot; pass its coefficient name")
            acc = acc + self.tslot.scaled(Poly.variable(t_name))
        return acc

    def all_vars(self):
        vs = set(self.target_poly.vars)
        vs.update(self.target_vars)
        vs.update(v for m in self.actions for v in m.vars)
        if self.tslot is not None:
            vs.update(self.tslot.vars)
            vs.add(self.tvar)
        return vs

    def __repr__(self) -> str:
        kind = "charpoly" if self.has_tslot else "form"
        return f"GradedRobyModule({kind}, degree={self.degree}, dim={self.dim})"


@dataclass(frozen=True)
class MonomialSpec:
    """One monomial t^i * (c_1 G_{k_1}) ... (c_{d-i} G_{k_{d-i}}) of a char poly.

    Dual indices are 1-based positions into the algebra basis.  The factor
    count is pinned to d - i, so pure t^d monomials (i = d) are excluded;
    they cannot occur in chi - chi_0, whose t-degree is below d.
    """

    d: int
    t_exp: int
    factors: tuple
    dual_indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(_as_poly(c) for c in self.factors))
        object.__setattr__(self, "dual_indices", tuple(int(k) for k in self.dual_indices))
        if self.d < 2:
            raise InputError("monomial specs need algebra rank >= 2")
        if not 0 <= self.t_exp < self.d:
            raise InputError(f"t-exponent must lie in [0, {self.d - 1}], got {self.t_exp}")
        want = self.d - self.t_exp
        if len(self.factors) != want or len(self.dual_indices) != want:
            raise InputError(f"need exactly {want} coefficient factors and dual indices")
        for k in self.dual_indices:
            if not 1 <= k <= self.d:
                raise InputError(f"dual index {k} out of range 1..{self.d}")

    def value(self, dual_names, tvar: str) -> Poly:
        """The monomial as a Poly in the dual variables and t."""
        acc = Poly.variable(tvar) ** self.t_exp
        for c, k in zip(self.factors, self.dual_indices):
            acc = acc * c * Poly.variable(dual_names[k - 1])
        return acc


def in_ideal(p: Poly, ideal_vars) -> bool:
    """True when every term of p is divisible by one of the given variables."""
    return not p.substitute({v: 0 for v in ideal_vars})


def reindex_for_line(spec: MonomialSpec, ideal_vars) -> MonomialSpec:
    """Move a factor lying in the ideal (ideal_vars) into the last slot.

    The monomial value is symmetric in its factors, so this is a relabeling;
    the filtration argument downstream needs the last factor in the ideal.
    """
    pairs = list(zip(spec.factors, spec.dual_indices))
    if in_ideal(pairs[-1][0], ideal_vars):
        return spec
    for s in range(len(pairs) - 1):
        if in_ideal(pairs[s][0], ideal_vars):
            pairs.append(pairs.pop(s))
            fs, ks = zip(*pairs)
            return MonomialSpec(spec.d, spec.t_exp, fs, ks)
    raise InputError("no coefficient factor lies in the line ideal")


# -- constructions ---------------------------------------------------------


def _cyclic_grading(n: int, e: int):
    # deg(w_r) = r for r = 1..n, reduced mod e
    return tuple((j + 1) % e for j in range(n))


def monomial_roby(form: HomForm, factors=None) -> GradedRobyModule:
    """The e-dimensional module of a one-term degree-e form.

    action(x_i) sends w_j to (factor c_j) * w_{j+1} when the j-th factor of
    the monomial is x_i, indices cyclic.  ``factors`` optionally distributes
    the coefficient across the e slots as (coefficient, variable) pairs;
    by default the whole coefficient rides on the first factor.
    """
    e = form.degree
    coeff, arg_exps = form.single_term()
    if factors is None:
        seq = []
        for v in form.arg_vars:
            seq.extend([v] * arg_exps.get(v, 0))
        factors = [(coeff if j == 0 else Poly.const(1), v) for j, v in enumerate(seq)]
    factors = [(_as_poly(c), v) for c, v in factors]
    if len(factors) != e:
        raise InputError(f"need exactly {e} factors for a degree-{e} form")
    check = Poly.const(1)
    for c, v in factors:
        if v not in form.arg_vars:
            raise InputError(f"{v!r} is not an argument variable of the form")
        check = check * c * Poly.variable(v)
    if check != form.underlying:
        raise InputError("factor product does not reproduce the form")
    rows = {
        v: [[Poly.zero() for _ in range(e)] for _ in range(e)] for v in form.arg_vars
    }
    for j, (c, v) in enumerate(factors):
        rows[v][(j + 1) % e][j] = c
    actions = [PolyMatrix.from_rows(rows[v]) for v in form.arg_vars]
    return GradedRobyModule(
        e,
        _cyclic_grading(e, e),
        form.arg_vars,
        actions,
        form.underlying,
    )


def monomial_charpoly_roby(spec: MonomialSpec, algebra: FreeAlgebra) -> GradedRobyModule:
    """The d-dimensional T-slot module of one char-poly monomial.

    gamma_p moves eps_r to c_{r-i} * eps_{r+1} exactly when p = k(r-i) and
    r > i; T moves eps_r to eps_{r+1} for r <= i and kills the rest.  The
    top vector wraps to eps_1.  In the graded case each coefficient factor
    must be homogeneous of the degree of its basis element.
    """
    d = algebra.rank
    if spec.d != d:
        raise InputError(f"spec is for rank {spec.d}, algebra has rank {d}")
    if algebra.degrees is not None:
        for s, (c, k) in enumerate(zip(spec.factors, spec.dual_indices)):
            want = algebra.degrees[k - 1]
            if c and c.homogeneous_degree() != want:
                raise InputError(
                    f"factor {s + 1} must be homogeneous of degree {want} "
                    f"(the degree of {algebra.basis_names[k - 1]}), got {c}"
                )
    i = spec.t_exp
    zero_grid = [[Poly.zero() for _ in range(d)] for _ in range(d)]
    grids = [[row[:] for row in zero_grid] for _ in range(d)]
    tgrid = [row[:] for row in zero_grid]
    for r in range(1, d + 1):  # r indexes eps_r, column r-1
        if r <= i:
            tgrid[r % d][r - 1] = Poly.const(1)
        else:
            c = spec.factors[r - i - 1]
            p = spec.dual_indices[r - i - 1]
            grids[p - 1][r % d][r - 1] = c
    return GradedRobyModule(
        d,
        _cyclic_grading(d, d),
        algebra.basis_names,
        [PolyMatrix.from_rows(g) for g in grids],
        spec.value(algebra.dual_names, algebra.tvar),
        target_vars=algebra.dual_names,
        tslot=PolyMatrix.from_rows(tgrid),
        tvar=algebra.tvar,
        source_algebra=algebra,
    )


def split_roby(d: int, *, dual_names=None) -> GradedRobyModule:
    """The cyclic module over the split algebra: chi = (t-x_1)...(t-x_d).

    T(w_j) = w_{j+1} and e_i(w_j) = -w_{j+1} when i = j+1, so the generic
    element moves w_j to (r - a_{j+1}) w_{j+1} and its d-th power telescopes.
    """
    if d < 2:
        raise InputError("split modules need rank >= 2")
    algebra = split_algebra(d, dual_names=dual_names)
    zero_grid = [[Poly.zero() for _ in range(d)] for _ in range(d)]
    grids = [[row[:] for row in zero_grid] for _ in range(d)]
    tgrid = [row[:] for row in zero_grid]
    for j0 in range(d):  # column j0 is w_{j0+1}
        tgrid[(j0 + 1) % d][j0] = Poly.const(1)
        i = (j0 + 1) % d  # the index with i = j+1, zero-based
        grids[i][(j0 + 1) % d][j0] = Poly.const(-1)
    return GradedRobyModule(
        d,
        _cyclic_grading(d, d),
        algebra.basis_names,
        [PolyMatrix.from_rows(g) for g in grids],
        char_poly(algebra).poly,
        target_vars=algebra.dual_names,
        tslot=PolyMatrix.from_rows(tgrid),
        tvar=algebra.tvar,
        source_algebra=algebra,
    )


def zero_roby(degree: int, action_names) -> GradedRobyModule:
    """The rank-one module of the zero form: all actions vanish."""
    names = tuple(action_names)
    return GradedRobyModule(
        degree,
        (0,),
        names,
        [PolyMatrix.zeros(1, 1) for _ in names],
        Poly.zero(),
    )


# -- twisted tensor product --------------------------------------------------


def twisted_tensor(
    m1: GradedRobyModule,
    m2: GradedRobyModule,
    xi,
    *,
    require_primitive: bool = True,
) -> GradedRobyModule:
    """phi(m)(w1 (x) w2) = phi1(m)w1 (x) w2 + xi^deg(w1) w1 (x) phi2(m)w2.

    Targets add; gradings add mod e.  xi must be a primitive e-th root of
    unity for the Roby identity to survive (the mixed terms cancel through
    q-binomial coefficients); pass require_primitive=False only to build the
    documented failing counterexample.
    """
    if m1.degree != m2.degree:
        raise InputError(f"cannot tensor degrees {m1.degree} and {m2.degree}")
    e = m1.degree
    if m1.has_tslot != m2.has_tslot:
        raise InputError("cannot tensor a form module with a char-poly module")
    if not isinstance(xi, (int, Fraction, CycScalar)):
        raise InputError(f"the twist must be an exact scalar, got {type(xi).__name__}")
    if require_primitive and not is_primitive_root(xi, e):
        raise InputError(f"the twist must be a primitive root of unity of order {e}")
    if m1.has_tslot:
        if (m1.action_names, m1.target_vars, m1.tvar) != (
            m2.action_names,
            m2.target_vars,
            m2.tvar,
        ):
            raise InputError("char-poly modules must share basis and dual names")
        names = m1.action_names
        tvars = m1.target_vars
        pairs = [(m1.actions[i], m2.actions[i]) for i in range(len(names))]
    else:
        names = list(m1.action_names)
        names.extend(v for v in m2.action_names if v not in m1.action_names)
        names = tuple(names)
        tvars = names
        z1 = PolyMatrix.zeros(m1.dim, m1.dim)
        z2 = PolyMatrix.zeros(m2.dim, m2.dim)
        a1 = {n: a for n, a in zip(m1.action_names, m1.actions)}
        a2 = {n: a for n, a in zip(m2.action_names, m2.actions)}
        pairs = [(a1.get(n, z1), a2.get(n, z2)) for n in names]

    eye2 = PolyMatrix.identity(m2.dim)
    dxi = PolyMatrix.diagonal([xi ** g for g in m1.grading])
    actions = [a.kron(eye2) + dxi.kron(b) for a, b in pairs]
    tslot = None
    if m1.has_tslot:
        tslot = m1.tslot.kron(eye2) + dxi.kron(m2.tslot)
    grading = [
        (g1 + g2) % e for g1 in m1.grading for g2 in m2.grading
    ]
    source = None
    if (
        m1.source_algebra is not None
        and m2.source_algebra is not None
        and m1.source_algebra == m2.source_algebra
    ):
        source = m1.source_algebra
    return GradedRobyModule(
        e,
        grading,
        names,
        actions,
        m1.target_poly + m2.target_poly,
        target_vars=tvars,
        tslot=tslot,
        tvar=m1.tvar,
        source_algebra=source,
    )


# -- characteristic morphisms ---------------------------------------------------


@dataclass
class CharMorphism:
    """Matrices C(gamma_i) with chi(C(a), a) = 0; verified, never assumed."""

    source: FreeAlgebra
    matrices: list
    charpoly: CharPoly

    def __post_init__(self):
        if len(self.matrices) != self.source.rank:
            raise InputError("need one matrix per algebra basis element")
        dims = {m.nrows for m in self.matrices} | {m.ncols for m in self.matrices}
        if len(dims) != 1:
            raise InputError("characteristic morphism matrices must be square, equal size")
        if self.charpoly.rank != self.source.rank:
            raise InputError("characteristic polynomial rank does not match the algebra")

    @property
    def dim(self) -> int:
        return self.matrices[0].nrows

    def generic_matrix(self, coeff_names) -> PolyMatrix:
        acc = PolyMatrix.zeros(self.dim, self.dim)
        for name, m in zip(coeff_names, self.matrices):
            acc = acc + m.scaled(Poly.variable(name))
        return acc

    def substitute_base(self, bindings) -> "CharMorphism":
        """Restrict along base-ring substitution (e.g. onto a line)."""
        return CharMorphism(
            self.source.restrict(bindings),
            [m.substitute(bindings) for m in self.matrices],
            self.charpoly.substitute_base(bindings),
        )

    def all_vars(self):
        vs = set(self.charpoly.poly.vars)
        vs.update(self.charpoly.dual_names)
        vs.add(self.charpoly.tvar)
        for m in self.matrices:
            vs.update(m.vars)
        return vs


def char_morphism(module: GradedRobyModule) -> CharMorphism:
    """Extract C(gamma_i) = -action(gamma_i) * action(T)^(d-1).

    T^(d-1) is T^(-1) because T^d = I for a monic target; that identity is
    checked here rather than trusted, and a module whose T-slot is not cyclic
    (a single-monomial module, say) is rejected.
    """
    if module.tslot is None:
        raise InputError("characteristic morphisms need a T-slot target")
    if module.source_algebra is None:
        raise InputError("attach the source algebra before extracting the morphism")
    d = module.degree
    t_inv = module.tslot.pow(d - 1)
    if module.tslot * t_inv != PolyMatrix.identity(module.dim):
        report = Report(title="characteristic morphism extraction")
        report.add("tslot_invertible", False, detail="action(T)^d is not the identity")
        raise VerificationError("action(T)^d != I; target cannot be monic", report=report)
    matrices = [-(a * t_inv) for a in module.actions]
    chi = CharPoly(
        d, module.target_poly, module.tvar, module.target_vars
    )
    return CharMorphism(module.source_algebra, matrices, chi)


# -- verification ------------------------------------------------------------------


def _graded_check(report: Report, module: GradedRobyModule) -> None:
    e = module.degree
    g = module.grading
    named = list(zip(module.action_names, module.actions))
    if module.tslot is not None:
        named.append(("T", module.tslot))
    for name, m in named:
        for r in range(m.nrows):
            for c in range(m.ncols):
                if m.data[r * m.ncols + c] and g[r] != (g[c] + 1) % e:
                    report.add(
                        "graded",
                        False,
                        detail=f"action {name} entry ({r},{c}) breaks the grading",
                    )
                    return
    report.add("graded", True)


def verify_roby(module: GradedRobyModule) -> Report:
    """Gradedness plus the power identity on a generic element, both exact."""
    report = Report(title=f"roby module: degree {module.degree}, dim {module.dim}")
    _graded_check(report, module)
    avoid = module.all_vars()
    coeffs = fresh_names("s", len(module.actions), avoid)
    bindings = {v: Poly.variable(s) for v, s in zip(module.target_vars, coeffs)}
    t_name = None
    if module.tslot is not None:
        t_name = fresh_names("r", 1, avoid | set(coeffs))[0]
        bindings[module.tvar] = Poly.variable(t_name)
    generic = module.generic_matrix(coeffs, t_name)
    power = generic.pow(module.degree)
    value = module.target_poly.substitute(bindings)
    diff = power - PolyMatrix.identity(module.dim).scaled(value)
    offender = diff.first_nonzero()
    report.add(
        "power_identity",
        offender is None,
        detail=""
        if offender is None
        else f"entry ({offender[0]},{offender[1]}): {offender[2]}",
    )
    report.meta["dim"] = module.dim
    report.meta["degree"] = module.degree
    report.meta["actions"] = list(module.action_names)
    report.meta["tslot"] = module.has_tslot
    return report


def verify_char_morphism(cm: CharMorphism, chi: CharPoly | None = None) -> Report:
    """Cayley-Hamilton for the generic element; unit and multiplicativity too.

    Only the Cayley-Hamilton identity is required: a characteristic morphism
    need not be an algebra morphism, so the unit and multiplicativity rows
    are informational.
    """
    if chi is None:
        chi = cm.charpoly
    if len(cm.matrices) != chi.rank:
        raise InputError("matrix count must equal the characteristic polynomial rank")
    report = Report(title=f"characteristic morphism: rank {chi.rank}, dim {cm.dim}")
    algebra = cm.source
    avoid = cm.all_vars()
    coeffs = fresh_names("a", chi.rank, avoid)
    generic = cm.generic_matrix(coeffs)
    value = chi.evaluate_matrix(generic, [Poly.variable(a) for a in coeffs])
    offender = value.first_nonzero()
    report.add(
        "cayley_hamilton",
        offender is None,
        detail=""
        if offender is None
        else f"entry ({offender[0]},{offender[1]}): {offender[2]}",
    )
    unit_image = PolyMatrix.zeros(cm.dim, cm.dim)
    for coeff, m in zip(algebra.unit, cm.matrices):
        unit_image = unit_image + m.scaled(coeff)
    report.add(
        "unit",
        unit_image == PolyMatrix.identity(cm.dim),
        required=False,
    )
    mult_ok, mult_detail = _multiplicativity(algebra, cm.matrices)
    report.add("multiplicativity", mult_ok, required=False, detail=mult_detail)
    report.meta["rank"] = chi.rank
    report.meta["dim"] = cm.dim
    return report


def _multiplicativity(algebra: FreeAlgebra, matrices) -> tuple:
    d = algebra.rank
    n = matrices[0].nrows
    for i in range(d):
        for j in range(i, d):
            rhs = PolyMatrix.zeros(n, n)
            for k in range(d):
                c = algebra.table[i][j][k]
                if c:
                    rhs = rhs + matrices[k].scaled(c)
            if matrices[i] * matrices[j] != rhs:
                return False, (
                    f"C({algebra.basis_names[i]})*C({algebra.basis_names[j]}) "
                    f"is not the image of the product"
                )
    return True, ""


@dataclass(frozen=True)
class Filtration:
    """An increasing chain of coordinate subspaces exhausting the module."""

    dim: int
    flags: tuple
    levels: tuple = ()

    def __post_init__(self):
        flags = tuple(frozenset(int(i) for i in f) for f in self.flags)
        object.__setattr__(self, "flags", flags)
        levels = tuple(self.levels) if self.levels else tuple(range(len(flags)))
        object.__setattr__(self, "levels", levels)
        if not flags:
            raise InputError("a filtration needs at least one flag")
        if len(levels) != len(flags):
            raise InputError("need one level label per flag")
        if list(levels) != sorted(set(levels)):
            raise InputError("level labels must strictly increase")
        if any(i < 0 or i >= self.dim for f in flags for i in f):
            raise InputError("flag indices out of range")
        prev: frozenset = frozenset()
        for f in flags:
            if not prev < f:
                raise InputError("flags must strictly increase")
            prev = f
        if flags[-1] != frozenset(range(self.dim)):
            raise InputError("the last flag must be the whole space")

    @classmethod
    def trivial(cls, dim: int) -> "Filtration":
        return cls(dim, (range(dim),))

    @classmethod
    def from_levels(cls, labels) -> "Filtration":
        """Build flags from a per-basis-vector level labeling."""
        labels = list(labels)
        cuts = sorted(set(labels))
        flags = []
        acc: set = set()
        for level in cuts:
            acc |= {i for i, l in enumerate(labels) if l == level}
            flags.append(frozenset(acc))
        return cls(len(labels), flags, tuple(cuts))

    def quotients(self):
        """(level, sorted index list) per graded piece, flag-adapted order."""
        prev: frozenset = frozenset()
        out = []
        for level, f in zip(self.levels, self.flags):
            out.append((level, sorted(f - prev)))
            prev = f
        return out


def verify_filtered_pseudo(cm: CharMorphism, filtration: Filtration) -> Report:
    """Flag preservation plus algebra-morphism laws on each graded quotient."""
    if filtration.dim != cm.dim:
        raise InputError("filtration dimension does not match the morphism")
    algebra = cm.source
    report = Report(
        title=f"filtered pseudomorphism: dim {cm.dim}, {len(filtration.flags)} flags"
    )
    ok = True
    detail = ""
    for name, m in zip(algebra.basis_names, cm.matrices):
        for f in filtration.flags:
            for c in sorted(f):
                for r in range(cm.dim):
                    if r not in f and m.data[r * m.ncols + c]:
                        ok = False
                        detail = f"C({name}) entry ({r},{c}) leaves a flag"
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("flags_preserved", ok, detail=detail)
    unit_ok, mult_ok = True, True
    unit_detail, mult_detail = "", ""
    if ok:
        for level, idx in filtration.quotients():
            blocks = [m.submatrix(idx, idx) for m in cm.matrices]
            n = len(idx)
            unit_image = PolyMatrix.zeros(n, n)
            for coeff, b in zip(algebra.unit, blocks):
                unit_image = unit_image + b.scaled(coeff)
            if unit_ok and unit_image != PolyMatrix.identity(n):
                unit_ok = False
                unit_detail = f"quotient at level {level} misses the unit"
            if mult_ok:
                good, why = _multiplicativity(algebra, blocks)
                if not good:
                    mult_ok = False
                    mult_detail = f"level {level}: {why}"
    report.add("quotient_unit", ok and unit_ok, detail=unit_detail)
    report.add("quotient_multiplicativity", ok and mult_ok, detail=mult_detail)
    report.meta["levels"] = [level for level, _ in filtration.quotients()]
    report.meta["quotient_dims"] = [len(idx) for _, idx in filtration.quotients()]
    return report


# -- induction from a module over a cover ------------------------------------------


@dataclass(frozen=True)
class AlgebraEmbedding:
    """A -> B^(x n), componentwise algebra morphisms, given by B-coordinates.

    components[p][m] is the coordinate vector (over the basis of B) of the
    image of the p-th basis element of A in the m-th factor.
    """

    source: FreeAlgebra
    target: FreeAlgebra
    components: tuple

    def __post_init__(self):
        comps = tuple(
            tuple(tuple(_as_poly(c) for c in vec) for vec in row)
            for row in self.components
        )
        object.__setattr__(self, "components", comps)
        a, b = self.source, self.target
        if len(comps) != a.rank:
            raise InputError("need one image per basis element of the source")
        n = {len(row) for row in comps}
        if len(n) != 1:
            raise InputError("ragged component count")
        self_n = n.pop()
        if self_n < 1:
            raise InputError("need at least one component")
        for row in comps:
            for vec in row:
                if len(vec) != b.rank:
                    raise InputError("coordinate vectors must have the target's rank")
        for m in range(self_n):
            unit_image = [Poly.zero() for _ in range(b.rank)]
            for p in range(a.rank):
                if a.unit[p]:
                    for i in range(b.rank):
                        unit_image[i] = unit_image[i] + a.unit[p] * comps[p][m][i]
            if any(unit_image[i] != b.unit[i] for i in range(b.rank)):
                raise InputError(f"component {m + 1} does not preserve the unit")
            for p in range(a.rank):
                for q in range(p, a.rank):
                    left = b.product(list(comps[p][m]), list(comps[q][m]))
                    right = [Poly.zero() for _ in range(b.rank)]
                    for k in range(a.rank):
                        c = a.table[p][q][k]
                        if c:
                            for i in range(b.rank):
                                right[i] = right[i] + c * comps[k][m][i]
                    if any(left[i] != right[i] for i in range(b.rank)):
                        raise InputError(
                            f"component {m + 1} is not multiplicative on "
                            f"({a.basis_names[p]}, {a.basis_names[q]})"
                        )

    @property
    def ncomponents(self) -> int:
        return len(self.components[0])


def induce_roby(
    split_module: GradedRobyModule,
    module_action,
    embedding: AlgebraEmbedding,
) -> GradedRobyModule:
    """Restrict the split construction along A -> B^(x d) acting on a module.

    ``module_action`` gives the B-module structure on a free module W, one
    matrix per basis element of B; the axioms are checked eagerly.  The
    output lives on k^d (x) W, T acts by the split T on the k^d factor, and
    gamma_p acts through the split idempotent slots by the images of its
    embedding components.  Both the Roby identity for chi_A and the
    B-linearity of the extracted characteristic morphism are verified;
    failure raises rather than returning a broken module.
    """
    a = embedding.source
    b = embedding.target
    d = embedding.ncomponents
    if a.rank != d:
        raise InputError(
            f"embedding has {d} components but the source algebra has rank {a.rank}; "
            "the induced module needs one component per basis element"
        )
    if split_module.tslot is None or split_module.dim != d or split_module.degree != d:
        raise InputError(f"the split module must be the rank-{d} cyclic one")
    actions_b = [m if isinstance(m, PolyMatrix) else PolyMatrix.from_rows(m) for m in module_action]
    if len(actions_b) != b.rank:
        raise InputError("need one action matrix per basis element of B")
    sizes = {m.nrows for m in actions_b} | {m.ncols for m in actions_b}
    if len(sizes) != 1:
        raise InputError("module action matrices must be square, equal size")
    w = sizes.pop()
    unit_action = PolyMatrix.zeros(w, w)
    for coeff, m in zip(b.unit, actions_b):
        unit_action = unit_action + m.scaled(coeff)
    if unit_action != PolyMatrix.identity(w):
        raise InputError("module action does not send the unit of B to the identity")
    for i in range(b.rank):
        for j in range(i, b.rank):
            rhs = PolyMatrix.zeros(w, w)
            for k in range(b.rank):
                c = b.table[i][j][k]
                if c:
                    rhs = rhs + actions_b[k].scaled(c)
            if actions_b[i] * actions_b[j] != rhs:
                raise InputError(
                    f"module action breaks on ({b.basis_names[i]}, {b.basis_names[j]})"
                )

    def rho(coords) -> PolyMatrix:
        acc = PolyMatrix.zeros(w, w)
        for c, m in zip(coords, actions_b):
            if c:
                acc = acc + m.scaled(c)
        return acc

    eye_w = PolyMatrix.identity(w)
    new_actions = []
    for p in range(a.rank):
        acc = PolyMatrix.zeros(d * w, d * w)
        for m in range(d):
            block = rho(embedding.components[p][m])
            acc = acc + split_module.actions[m].kron(block)
        new_actions.append(acc)
    new_tslot = split_module.tslot.kron(eye_w)
    grading = [g for g in split_module.grading for _ in range(w)]
    module = GradedRobyModule(
        d,
        grading,
        a.basis_names,
        new_actions,
        char_poly(a).poly,
        target_vars=a.dual_names,
        tslot=new_tslot,
        tvar=a.tvar,
        source_algebra=a,
    )
    report = verify_roby(module)
    if not report.ok:
        raise VerificationError(
            "induced module fails the Roby identity; the embedding does not "
            "multiply out to the characteristic polynomial",
            report=report,
        )
    cm = char_morphism(module)
    linearity = Report(title="induced morphism B-linearity")
    for i, mb in enumerate(actions_b):
        diag = PolyMatrix.identity(d).kron(mb)
        for p, cmat in enumerate(cm.matrices):
            if cmat * diag != diag * cmat:
                linearity.add(
                    "module_morphism",
                    False,
                    detail=f"C({a.basis_names[p]}) fails to commute with "
                    f"{b.basis_names[i]}",
                )
                raise VerificationError(
                    "characteristic morphism is not B-linear", report=linearity
                )
    return module

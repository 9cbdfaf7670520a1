"""Constructions that derive new algebras or validate structural hypotheses.

Each operation either produces a new spec (twist, direct sum, induced
trialgebra, product reshuffles) or tests a hypothesis (graph closure,
Rota-Baxter, averaging, swap).  Constructed algebras are re-verified with
the axiom checkers and returned together with the resulting report; no
construction emits an unchecked algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .core import (
    CheckReport,
    LinearMap,
    StructureTensor,
    SuperBasis,
    SuperalgebraSpec,
    TrialgebraSpec,
    Violation,
    check_bihom,
    check_morphism,
    check_superalgebra,
    validate_evenness,
)
from .errors import (
    CommutationError,
    InputError,
    NotAutomorphismError,
    ParityError,
)
from .linalg import Matrix, RationalLike, add_vectors, frac, invert, solve_in_span, unit_vector

_ZERO = Fraction(0)


@dataclass(frozen=True)
class TwistResult:
    """Conjugated algebra plus the change-of-basis consistency verdict."""

    twisted: TrialgebraSpec
    conjugated_gamma: LinearMap
    conjugated_xi: LinearMap
    constants_match: bool
    report: CheckReport


@dataclass(frozen=True)
class GraphCheckResult:
    """Closure of a map's graph inside the direct sum, next to morphism-ness."""

    is_subalgebra: bool
    is_morphism: bool
    sum: TrialgebraSpec
    morphism_report: CheckReport


@dataclass(frozen=True)
class InduceResult:
    """Trialgebra induced by a Rota-Baxter operator, with its axiom report."""

    spec: TrialgebraSpec
    report: CheckReport


@dataclass(frozen=True)
class SwapResult:
    """Outcome of exchanging the two structure maps."""

    hypothesis_holds: bool
    swapped: TrialgebraSpec
    swapped_passes: bool
    report: CheckReport


@dataclass(frozen=True)
class SumProductResult:
    """Spec with the right product replaced by right + perp, plus its report."""

    spec: TrialgebraSpec
    report: CheckReport


@dataclass(frozen=True)
class BracketPairSpec:
    """A star product and a bracket sharing one graded basis and structure maps."""

    name: str
    basis: SuperBasis
    star: StructureTensor
    bracket: StructureTensor
    gamma: LinearMap
    xi: LinearMap

    def __post_init__(self) -> None:
        n = self.basis.dimension
        for label, tensor in (("star", self.star), ("bracket", self.bracket)):
            if tensor.dim != n:
                raise InputError(f"{label} tensor dimension {tensor.dim} does not match basis size {n}")
            validate_evenness(tensor, self.basis, label)


@dataclass(frozen=True)
class CommutatorResult:
    """Skew products built from the trialgebra, plus the Leibniz verdict."""

    pair: BracketPairSpec
    leibniz: CheckReport


@dataclass(frozen=True)
class TotalProductResult:
    """Single-product superalgebra summing all three products, plus its report."""

    alg: SuperalgebraSpec
    report: CheckReport


def _require_shape(m: LinearMap, n: int, label: str) -> None:
    if m.matrix.rows != n or m.matrix.cols != n:
        raise InputError(f"{label} must be {n}x{n}, got {m.matrix.rows}x{m.matrix.cols}")


def _require_even(m: LinearMap, label: str) -> None:
    if not m.is_even:
        raise ParityError(f"{label} must be an even map")


def _twisted_tensor(tensor: StructureTensor, l: Matrix, linv: Matrix) -> StructureTensor:
    n = tensor.dim
    constants: dict[tuple[int, int, int], Fraction] = {}
    for i in range(n):
        for j in range(n):
            w = l.apply(tensor.bilinear(linv.col(i), linv.col(j)))
            for k in range(n):
                if w[k]:
                    constants[(i, j, k)] = w[k]
    return StructureTensor.build(n, constants)


def yau_twist(spec: TrialgebraSpec, l: LinearMap) -> TwistResult:
    """Conjugate all three products and both structure maps by an invertible even map.

    The products become x o' y = l(l^-1(x) o l^-1(y)) and the maps become
    l gamma l^-1 and l xi l^-1.  ``constants_match`` re-derives the structure
    constants in the basis {l(e_k)} and compares them with the originals.
    """
    xi = spec.require_xi()
    n = spec.dimension
    _require_shape(l, n, "twist map")
    _require_even(l, "twist map")
    linv = invert(l.matrix)

    new_gamma = LinearMap.square(spec.basis, l.matrix @ spec.gamma.matrix @ linv)
    new_xi = LinearMap.square(spec.basis, l.matrix @ xi.matrix @ linv)
    twisted = TrialgebraSpec(
        name=spec.name,
        basis=spec.basis,
        left=_twisted_tensor(spec.left, l.matrix, linv),
        right=_twisted_tensor(spec.right, l.matrix, linv),
        perp=_twisted_tensor(spec.perp, l.matrix, linv),
        gamma=new_gamma,
        xi=new_xi,
    )

    match = True
    lcol = [l.matrix.col(i) for i in range(n)]
    for tag, original in spec.products():
        twisted_tensor = twisted.tensor(tag)
        for i in range(n):
            for j in range(n):
                coords = linv.apply(twisted_tensor.bilinear(lcol[i], lcol[j]))
                if coords != original.basis_product(i, j):
                    match = False

    return TwistResult(
        twisted=twisted,
        conjugated_gamma=new_gamma,
        conjugated_xi=new_xi,
        constants_match=match,
        report=check_bihom(twisted),
    )


def conjugate_automorphism(spec: TrialgebraSpec, l: LinearMap, phi: LinearMap) -> CheckReport:
    """Verify that conjugating an automorphism by the twist map yields an
    automorphism of the twisted algebra."""
    n = spec.dimension
    _require_shape(phi, n, "phi")
    if not check_morphism(spec, spec, phi).passed:
        raise NotAutomorphismError("phi is not a morphism of the spec onto itself")
    try:
        invert(phi.matrix)
    except Exception as exc:
        raise NotAutomorphismError("phi is not invertible") from exc
    result = yau_twist(spec, l)
    linv = invert(l.matrix)
    conjugated = LinearMap.square(spec.basis, l.matrix @ phi.matrix @ linv)
    return check_morphism(result.twisted, result.twisted, conjugated)


def _offset_tensor(tensor: StructureTensor, offset: int) -> dict[tuple[int, int, int], Fraction]:
    return {(i + offset, j + offset, k + offset): v for (i, j, k), v in tensor.items()}


def _block_diagonal(a: Matrix, b: Matrix) -> Matrix:
    n, m = a.rows, b.rows
    rows = []
    for i in range(n):
        rows.append(list(a.row(i)) + [_ZERO] * m)
    for i in range(m):
        rows.append([_ZERO] * n + list(b.row(i)))
    return Matrix.from_rows(rows)


def direct_sum(a: TrialgebraSpec, b: TrialgebraSpec) -> TrialgebraSpec:
    """Block sum: componentwise products, block-diagonal structure maps."""
    if (a.xi is None) != (b.xi is None):
        raise InputError("both summands must agree on whether xi is present")
    parities = a.basis.parities + b.basis.parities
    n = len(parities)
    basis = SuperBasis(parities)

    def merged(tag: str) -> StructureTensor:
        table = dict(_offset_tensor(a.tensor(tag), 0))  # type: ignore[arg-type]
        table.update(_offset_tensor(b.tensor(tag), a.dimension))  # type: ignore[arg-type]
        return StructureTensor.build(n, table)

    xi = None
    if a.xi is not None and b.xi is not None:
        xi = LinearMap.square(basis, _block_diagonal(a.xi.matrix, b.xi.matrix))
    return TrialgebraSpec(
        name=f"dsum({a.name},{b.name})",
        basis=basis,
        left=merged("left"),
        right=merged("right"),
        perp=merged("perp"),
        gamma=LinearMap.square(basis, _block_diagonal(a.gamma.matrix, b.gamma.matrix)),
        xi=xi,
    )


def graph_subalgebra_check(a: TrialgebraSpec, b: TrialgebraSpec, xi_map: LinearMap) -> GraphCheckResult:
    """Test whether the graph {(x, f(x))} is closed inside the direct sum,
    and independently whether f is a morphism; the two verdicts coincide
    exactly when the closure proposition holds."""
    if xi_map.matrix.cols != a.dimension or xi_map.matrix.rows != b.dimension:
        raise InputError(
            f"graph map must be {b.dimension}x{a.dimension}, "
            f"got {xi_map.matrix.rows}x{xi_map.matrix.cols}"
        )
    total = direct_sum(a, b)
    n = total.dimension
    graph_vectors = [
        tuple(unit_vector(a.dimension, i)) + xi_map.matrix.col(i) for i in range(a.dimension)
    ]

    def in_graph(v) -> bool:
        return solve_in_span(graph_vectors, v) is not None

    closed = True
    for _, tensor in total.products():
        for gi in graph_vectors:
            for gj in graph_vectors:
                if not in_graph(tensor.bilinear(gi, gj)):
                    closed = False
    maps = [total.gamma.matrix]
    if total.xi is not None:
        maps.append(total.xi.matrix)
    for m in maps:
        for gi in graph_vectors:
            if not in_graph(m.apply(gi)):
                closed = False

    morphism_report = check_morphism(a, b, xi_map)
    return GraphCheckResult(
        is_subalgebra=closed,
        is_morphism=morphism_report.passed,
        sum=total,
        morphism_report=morphism_report,
    )


def _require_commutes(lam: Matrix, other: Matrix, label: str) -> None:
    if lam @ other != other @ lam:
        raise CommutationError(f"operator does not commute with {label}")


def rota_baxter_check(
    spec: TrialgebraSpec,
    lam: LinearMap,
    weight: RationalLike,
    literal: bool = False,
) -> CheckReport:
    """Check the Rota-Baxter identity of the given weight for each product.

    Default mode checks, per product o and basis pair,
    lam(d) o lam(v) = lam(lam(d) o v + d o lam(v) + c*(d o v)).
    Literal mode instead crosses the outer and inner products of the first
    two identities (right outside with left inside, and the reverse).
    """
    xi = spec.require_xi()
    n = spec.dimension
    c = frac(weight)
    _require_shape(lam, n, "lambda")
    _require_even(lam, "lambda")
    _require_commutes(lam.matrix, spec.gamma.matrix, "gamma")
    _require_commutes(lam.matrix, xi.matrix, "xi")

    lcol = [lam.matrix.col(i) for i in range(n)]
    units = [unit_vector(n, i) for i in range(n)]

    def rhs_inner(tensor: StructureTensor, i: int, j: int):
        inner = add_vectors(tensor.bilinear(lcol[i], units[j]), tensor.bilinear(units[i], lcol[j]))
        return lam.matrix.apply(add_vectors(inner, tuple(c * x for x in tensor.basis_product(i, j))))

    violations: list[Violation] = []
    if literal:
        cases = [
            ("rb-literal-right", spec.right, spec.left),
            ("rb-literal-left", spec.left, spec.right),
            ("rb-literal-perp", spec.perp, spec.perp),
        ]
    else:
        cases = [(f"rb-{tag}", tensor, tensor) for tag, tensor in spec.products()]
    for axiom_id, outer, inner in cases:
        for i in range(n):
            for j in range(n):
                lhs = outer.bilinear(lcol[i], lcol[j])
                rhs = rhs_inner(inner, i, j)
                if lhs != rhs:
                    violations.append(Violation(axiom_id, (i, j), lhs, rhs))
    return CheckReport.collect(violations)


def rota_baxter_induce(alg: SuperalgebraSpec, lam: LinearMap, weight: RationalLike) -> InduceResult:
    """Split the single product through a Rota-Baxter operator:
    d <| v = d * lam(v), d |> v = lam(d) * v, d . v = c*(d * v).

    Preconditions are enforced: the superalgebra must be BiHom-associative
    and lam must be an even Rota-Baxter operator of the given weight that
    commutes with both structure maps.  The induced trialgebra is returned
    with its own axiom report attached.
    """
    n = alg.dimension
    c = frac(weight)
    _require_shape(lam, n, "lambda")
    _require_even(lam, "lambda")
    _require_commutes(lam.matrix, alg.gamma.matrix, "gamma")
    _require_commutes(lam.matrix, alg.xi.matrix, "xi")
    if not check_superalgebra(alg).passed:
        raise InputError("input superalgebra fails BiHom-associativity")

    star = alg.star
    lcol = [lam.matrix.col(i) for i in range(n)]
    units = [unit_vector(n, i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = star.bilinear(lcol[i], lcol[j])
            inner = add_vectors(star.bilinear(lcol[i], units[j]), star.bilinear(units[i], lcol[j]))
            rhs = lam.matrix.apply(
                add_vectors(inner, tuple(c * x for x in star.basis_product(i, j)))
            )
            if lhs != rhs:
                raise InputError(
                    f"lambda is not a Rota-Baxter operator of weight {c} (fails at pair {(i, j)})"
                )

    left: dict[tuple[int, int, int], Fraction] = {}
    right: dict[tuple[int, int, int], Fraction] = {}
    perp: dict[tuple[int, int, int], Fraction] = {}
    for i in range(n):
        for j in range(n):
            lv = star.bilinear(units[i], lcol[j])
            rv = star.bilinear(lcol[i], units[j])
            pv = star.basis_product(i, j)
            for k in range(n):
                if lv[k]:
                    left[(i, j, k)] = lv[k]
                if rv[k]:
                    right[(i, j, k)] = rv[k]
                if pv[k] and c:
                    perp[(i, j, k)] = c * pv[k]

    spec = TrialgebraSpec(
        name=f"rb({alg.name})",
        basis=alg.basis,
        left=StructureTensor.build(n, left),
        right=StructureTensor.build(n, right),
        perp=StructureTensor.build(n, perp),
        gamma=alg.gamma,
        xi=alg.xi,
    )
    return InduceResult(spec=spec, report=check_bihom(spec))


def averaging_check(spec: TrialgebraSpec, lam: LinearMap) -> CheckReport:
    """Check the averaging identities lam(lam(d) o r) = lam(d) o lam(r) = lam(d o lam(r))
    for each product, plus commutation of lam with both structure maps."""
    xi = spec.require_xi()
    n = spec.dimension
    _require_shape(lam, n, "lambda")
    _require_even(lam, "lambda")

    violations: list[Violation] = []
    for label, other in (("gamma", spec.gamma.matrix), ("xi", xi.matrix)):
        lhs_m = lam.matrix @ other
        rhs_m = other @ lam.matrix
        for j in range(n):
            if lhs_m.col(j) != rhs_m.col(j):
                violations.append(Violation(f"avg-{label}-commute", (j,), lhs_m.col(j), rhs_m.col(j)))

    lcol = [lam.matrix.col(i) for i in range(n)]
    units = [unit_vector(n, i) for i in range(n)]
    for tag, tensor in spec.products():
        for i in range(n):
            for j in range(n):
                t1 = lam.matrix.apply(tensor.bilinear(lcol[i], units[j]))
                t2 = tensor.bilinear(lcol[i], lcol[j])
                t3 = lam.matrix.apply(tensor.bilinear(units[i], lcol[j]))
                if t1 != t2:
                    violations.append(Violation(f"avg-{tag}-1", (i, j), t1, t2))
                if t2 != t3:
                    violations.append(Violation(f"avg-{tag}-2", (i, j), t2, t3))
    return CheckReport.collect(violations)


def swap_construct(spec: TrialgebraSpec) -> SwapResult:
    """Exchange gamma and xi; the involution hypotheses (both squares and
    both compositions equal to the identity) are evaluated alongside."""
    xi = spec.require_xi()
    n = spec.dimension
    ident = Matrix.identity(n)
    g, x = spec.gamma.matrix, xi.matrix
    hypothesis = g @ g == ident and x @ x == ident and g @ x == ident and x @ g == ident
    swapped = replace(spec, gamma=xi, xi=spec.gamma)
    report = check_bihom(swapped)
    return SwapResult(
        hypothesis_holds=hypothesis,
        swapped=swapped,
        swapped_passes=report.passed,
        report=report,
    )


def sum_product_construct(spec: TrialgebraSpec) -> SumProductResult:
    """Install right + perp as the new right product, keeping left and perp."""
    star = spec.right.add(spec.perp)
    out = replace(spec, name=f"sum({spec.name})", right=star)
    return SumProductResult(spec=out, report=check_bihom(out))


def _sign(p: int, q: int) -> Fraction:
    return Fraction(-1) if p and q else Fraction(1)


def _skew(tensor: StructureTensor, other: StructureTensor, parities: tuple[int, ...]) -> StructureTensor:
    """c'(i,j,k) = tensor(i,j,k) - (-1)^{|i||j|} other(j,i,k)."""
    keys = {key for key, _ in tensor.items()}
    keys.update((j, i, k) for (i, j, k), _ in other.items())
    table: dict[tuple[int, int, int], Fraction] = {}
    for i, j, k in keys:
        value = tensor.coefficient(i, j, k) - _sign(parities[i], parities[j]) * other.coefficient(j, i, k)
        if value:
            table[(i, j, k)] = value
    return StructureTensor.build(tensor.dim, table)


def commutator_construct(spec: TrialgebraSpec) -> CommutatorResult:
    """Build d * v = d <| v - (-1)^{|d||v|} v |> d and the perp bracket
    [d, v] = d . v - (-1)^{|d||v|} v . d, then check the closing identity
    [d,v] * gamma(xi(r)) = [d*r, xi(v)] + [gamma(d), v*r] on basis triples."""
    xi = spec.require_xi()
    n = spec.dimension
    parities = spec.basis.parities
    star = _skew(spec.left, spec.right, parities)
    bracket = _skew(spec.perp, spec.perp, parities)
    pair = BracketPairSpec(
        name=f"comm({spec.name})",
        basis=spec.basis,
        star=star,
        bracket=bracket,
        gamma=spec.gamma,
        xi=xi,
    )

    gx = spec.gamma.matrix @ xi.matrix
    violations: list[Violation] = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = star.bilinear(bracket.basis_product(i, j), gx.col(k))
                rhs = add_vectors(
                    bracket.bilinear(star.basis_product(i, k), xi.matrix.col(j)),
                    bracket.bilinear(spec.gamma.matrix.col(i), star.basis_product(j, k)),
                )
                if lhs != rhs:
                    violations.append(Violation("leibniz", (i, j, k), lhs, rhs))
    return CommutatorResult(pair=pair, leibniz=CheckReport.collect(violations))


def total_product_construct(spec: TrialgebraSpec) -> TotalProductResult:
    """Sum all three products into one star product and check BiHom-associativity."""
    xi = spec.require_xi()
    star = spec.left.add(spec.right).add(spec.perp)
    alg = SuperalgebraSpec(
        name=f"total({spec.name})",
        basis=spec.basis,
        star=star,
        gamma=spec.gamma,
        xi=xi,
    )
    return TotalProductResult(alg=alg, report=check_superalgebra(alg))

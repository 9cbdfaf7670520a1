"""Data model and axiom checkers for BiHom-associative supertrialgebras.

An algebra lives on a Z/2-graded basis and is described by three sparse
structure-constant tensors (the left, right, and middle products) together
with one or two even structure maps ``gamma`` and ``xi``.  With ``xi``
present the object is a BiHom candidate; without it the Hom axiom system
applies.  Checks sweep basis tuples, which suffices by multilinearity, and
return reports whose violation witnesses can be replayed through
``product_eval``.

Matrix convention: a map sends the j-th basis vector to the j-th column,
so ``matrix[i][j]`` is the coefficient of ``e_i`` in the image of ``e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Mapping, Sequence

from .errors import InputError, ModeError, ParityError
from .linalg import (
    Matrix,
    RationalLike,
    Vector,
    add_vectors,
    canonical_span,
    frac,
    nullspace_basis,
    zero_vector,
)

ProductTag = Literal["left", "right", "perp"]
PRODUCT_TAGS: tuple[ProductTag, ...] = ("left", "right", "perp")

_ZERO = Fraction(0)


@dataclass(frozen=True)
class SuperBasis:
    """Ordered homogeneous basis: one parity bit (0 even, 1 odd) per vector."""

    parities: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.parities) < 1:
            raise InputError("a basis needs at least one vector")
        if any(p not in (0, 1) for p in self.parities):
            raise ParityError("parities must be 0 or 1")

    @property
    def dimension(self) -> int:
        return len(self.parities)

    def parity(self, i: int) -> int:
        return self.parities[i]


def parity_class(matrix: Matrix, row_parities: Sequence[int], col_parities: Sequence[int]) -> str:
    """Classify a matrix between graded bases as ``even``, ``odd``, or ``mixed``.

    Even means every entry that connects coordinates of different parities
    vanishes; odd means every entry connecting equal parities vanishes.  The
    zero matrix satisfies both conditions and is reported as even.
    """
    even_ok = True
    odd_ok = True
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            if matrix.entry(i, j) == 0:
                continue
            if row_parities[i] == col_parities[j]:
                odd_ok = False
            else:
                even_ok = False
    if even_ok:
        return "even"
    if odd_ok:
        return "odd"
    return "mixed"


@dataclass(frozen=True)
class LinearMap:
    """A linear map between graded coordinate spaces.

    Columns index the source basis and rows the target basis, so the map is
    applied to coordinate columns by matrix multiplication.
    """

    matrix: Matrix
    row_parities: tuple[int, ...]
    col_parities: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.matrix.rows != len(self.row_parities):
            raise InputError("row parity list does not match the matrix height")
        if self.matrix.cols != len(self.col_parities):
            raise InputError("column parity list does not match the matrix width")

    @classmethod
    def square(cls, basis: SuperBasis, matrix: Matrix) -> "LinearMap":
        if matrix.rows != basis.dimension or matrix.cols != basis.dimension:
            raise InputError(
                f"map must be {basis.dimension}x{basis.dimension}, got {matrix.rows}x{matrix.cols}"
            )
        return cls(matrix, basis.parities, basis.parities)

    @classmethod
    def between(cls, src: SuperBasis, dst: SuperBasis, matrix: Matrix) -> "LinearMap":
        if matrix.rows != dst.dimension or matrix.cols != src.dimension:
            raise InputError(
                f"map must be {dst.dimension}x{src.dimension}, got {matrix.rows}x{matrix.cols}"
            )
        return cls(matrix, dst.parities, src.parities)

    @property
    def parity_class(self) -> str:
        return parity_class(self.matrix, self.row_parities, self.col_parities)

    @property
    def is_even(self) -> bool:
        return self.parity_class == "even"

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(v)

    def col(self, j: int) -> Vector:
        return self.matrix.col(j)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if self.col_parities != other.row_parities:
            raise InputError("composition parities do not line up")
        return LinearMap(self.matrix @ other.matrix, self.row_parities, other.col_parities)

    def power(self, k: int) -> "LinearMap":
        if self.row_parities != self.col_parities:
            raise InputError("powers need an endomorphism")
        return LinearMap(self.matrix.power(k), self.row_parities, self.col_parities)


def identity_map(basis: SuperBasis) -> LinearMap:
    return LinearMap.square(basis, Matrix.identity(basis.dimension))


@dataclass(frozen=True)
class StructureTensor:
    """Sparse structure constants of one bilinear product.

    ``constants[(i, j, k)]`` is the coefficient of ``e_k`` in ``e_i * e_j``;
    absent triples are zero and stored zeros are dropped at build time.
    """

    dim: int
    constants: Mapping[tuple[int, int, int], Fraction]

    @classmethod
    def build(
        cls, dim: int, entries: Mapping[tuple[int, int, int], RationalLike] | None = None
    ) -> "StructureTensor":
        table: dict[tuple[int, int, int], Fraction] = {}
        for (i, j, k), raw in (entries or {}).items():
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise InputError(f"structure constant index {(i, j, k)} out of range for dim {dim}")
            value = frac(raw)
            if value != 0:
                table[(i, j, k)] = value
        return cls(dim, table)

    def coefficient(self, i: int, j: int, k: int) -> Fraction:
        return self.constants.get((i, j, k), _ZERO)

    def items(self) -> Iterator[tuple[tuple[int, int, int], Fraction]]:
        return iter(sorted(self.constants.items()))

    def basis_product(self, i: int, j: int) -> Vector:
        out = [_ZERO] * self.dim
        for k in range(self.dim):
            c = self.constants.get((i, j, k))
            if c is not None:
                out[k] = c
        return tuple(out)

    def bilinear(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise InputError("bilinear arguments must match the tensor dimension")
        out = [_ZERO] * self.dim
        for (i, j, k), c in self.constants.items():
            if x[i] and y[j]:
                out[k] += c * x[i] * y[j]
        return tuple(out)

    def add(self, other: "StructureTensor") -> "StructureTensor":
        if self.dim != other.dim:
            raise InputError("cannot add tensors of different dimensions")
        merged: dict[tuple[int, int, int], Fraction] = dict(self.constants)
        for key, value in other.constants.items():
            merged[key] = merged.get(key, _ZERO) + value
        return StructureTensor.build(self.dim, merged)

    def scale(self, s: RationalLike) -> "StructureTensor":
        f = frac(s)
        return StructureTensor.build(self.dim, {key: f * v for key, v in self.constants.items()})

    @property
    def is_zero(self) -> bool:
        return not self.constants

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.dim == other.dim and dict(self.constants) == dict(other.constants)


def validate_evenness(tensor: StructureTensor, basis: SuperBasis, label: str) -> None:
    """A product of homogeneous vectors must land in the summed parity."""
    for (i, j, k), _ in tensor.items():
        if basis.parity(k) != (basis.parity(i) + basis.parity(j)) % 2:
            raise ParityError(
                f"{label} constant at {(i, j, k)}: parity(k)={basis.parity(k)} "
                f"differs from parity(i)+parity(j)={(basis.parity(i) + basis.parity(j)) % 2}"
            )


def _validate_structure_map(m: LinearMap, basis: SuperBasis, label: str) -> None:
    if m.matrix.rows != basis.dimension or m.matrix.cols != basis.dimension:
        raise InputError(f"{label} must be square of size {basis.dimension}")
    if not m.is_even:
        raise ParityError(f"{label} must be an even map")


@dataclass(frozen=True)
class TrialgebraSpec:
    """A finite-dimensional supertrialgebra candidate given by its constants."""

    name: str
    basis: SuperBasis
    left: StructureTensor
    right: StructureTensor
    perp: StructureTensor
    gamma: LinearMap
    xi: LinearMap | None = None

    def __post_init__(self) -> None:
        n = self.basis.dimension
        for tag in PRODUCT_TAGS:
            tensor = getattr(self, tag)
            if tensor.dim != n:
                raise InputError(f"{tag} tensor dimension {tensor.dim} does not match basis size {n}")
            validate_evenness(tensor, self.basis, tag)
        _validate_structure_map(self.gamma, self.basis, "gamma")
        if self.xi is not None:
            _validate_structure_map(self.xi, self.basis, "xi")

    @classmethod
    def build(
        cls,
        name: str,
        parities: Sequence[int],
        left: Mapping[tuple[int, int, int], RationalLike],
        right: Mapping[tuple[int, int, int], RationalLike],
        perp: Mapping[tuple[int, int, int], RationalLike],
        gamma: Matrix | Sequence[Sequence[RationalLike]],
        xi: Matrix | Sequence[Sequence[RationalLike]] | None = None,
    ) -> "TrialgebraSpec":
        basis = SuperBasis(tuple(parities))
        n = basis.dimension
        as_matrix = lambda m: m if isinstance(m, Matrix) else Matrix.from_rows(m)
        return cls(
            name=name,
            basis=basis,
            left=StructureTensor.build(n, left),
            right=StructureTensor.build(n, right),
            perp=StructureTensor.build(n, perp),
            gamma=LinearMap.square(basis, as_matrix(gamma)),
            xi=None if xi is None else LinearMap.square(basis, as_matrix(xi)),
        )

    @property
    def dimension(self) -> int:
        return self.basis.dimension

    @property
    def is_bihom(self) -> bool:
        return self.xi is not None

    def tensor(self, tag: ProductTag) -> StructureTensor:
        if tag not in PRODUCT_TAGS:
            raise InputError(f"unknown product tag {tag!r}")
        return getattr(self, tag)

    def products(self) -> Iterator[tuple[ProductTag, StructureTensor]]:
        for tag in PRODUCT_TAGS:
            yield tag, getattr(self, tag)

    def require_xi(self) -> LinearMap:
        if self.xi is None:
            raise ModeError(f"{self.name}: this operation needs the second structure map xi")
        return self.xi

    def with_name(self, name: str) -> "TrialgebraSpec":
        return replace(self, name=name)


@dataclass(frozen=True)
class SuperalgebraSpec:
    """A single-product BiHom superalgebra candidate."""

    name: str
    basis: SuperBasis
    star: StructureTensor
    gamma: LinearMap
    xi: LinearMap

    def __post_init__(self) -> None:
        n = self.basis.dimension
        if self.star.dim != n:
            raise InputError(f"star tensor dimension {self.star.dim} does not match basis size {n}")
        validate_evenness(self.star, self.basis, "star")
        _validate_structure_map(self.gamma, self.basis, "gamma")
        _validate_structure_map(self.xi, self.basis, "xi")

    @classmethod
    def build(
        cls,
        name: str,
        parities: Sequence[int],
        star: Mapping[tuple[int, int, int], RationalLike],
        gamma: Matrix | Sequence[Sequence[RationalLike]],
        xi: Matrix | Sequence[Sequence[RationalLike]],
    ) -> "SuperalgebraSpec":
        basis = SuperBasis(tuple(parities))
        n = basis.dimension
        as_matrix = lambda m: m if isinstance(m, Matrix) else Matrix.from_rows(m)
        return cls(
            name=name,
            basis=basis,
            star=StructureTensor.build(n, star),
            gamma=LinearMap.square(basis, as_matrix(gamma)),
            xi=LinearMap.square(basis, as_matrix(xi)),
        )

    @property
    def dimension(self) -> int:
        return self.basis.dimension


@dataclass(frozen=True)
class Violation:
    """One failed identity instance with its replayable evaluation."""

    axiom_id: str
    indices: tuple[int, ...]
    lhs: Vector
    rhs: Vector


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an axiom sweep; empty violation list means success."""

    violations: tuple[Violation, ...] = ()

    @classmethod
    def collect(cls, violations: Iterable[Violation]) -> "CheckReport":
        ordered = sorted(violations, key=lambda v: (v.axiom_id, v.indices))
        return cls(tuple(ordered))

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: "CheckReport") -> "CheckReport":
        return CheckReport.collect(self.violations + other.violations)


def product_eval(spec: TrialgebraSpec, tag: ProductTag, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    """Evaluate one of the three products on arbitrary coordinate vectors."""
    return spec.tensor(tag).bilinear(x, y)


def _check(axiom_id: str, indices: tuple[int, ...], lhs: Vector, rhs: Vector, out: list[Violation]) -> None:
    if lhs != rhs:
        out.append(Violation(axiom_id, indices, lhs, rhs))


def check_bihom(spec: TrialgebraSpec) -> CheckReport:
    """Verify the BiHom-associativity axiom system on all basis triples.

    Axiom (i) asks the two structure maps to commute.  The remaining axioms
    relate re-bracketings of the three products, with gamma twisting the
    outer-left argument and xi the outer-right argument; chained equalities
    are split into consecutive pairwise checks (suffixes ``-a`` and ``-b``).
    """
    xi = spec.require_xi()
    n = spec.dimension
    g = spec.gamma.matrix
    x = xi.matrix
    violations: list[Violation] = []

    gx = g @ x
    xg = x @ g
    for j in range(n):
        _check("i", (j,), gx.col(j), xg.col(j), violations)

    left, right, perp = spec.left, spec.right, spec.perp
    lp = [[left.basis_product(i, j) for j in range(n)] for i in range(n)]
    rp = [[right.basis_product(i, j) for j in range(n)] for i in range(n)]
    pp = [[perp.basis_product(i, j) for j in range(n)] for i in range(n)]
    gcol = [g.col(i) for i in range(n)]
    xcol = [x.col(i) for i in range(n)]

    for i in range(n):
        for j in range(n):
            for k in range(n):
                t = (i, j, k)
                ii_lhs = left.bilinear(lp[i][j], xcol[k])        # (d<q)<xi(y)
                ii_mid = left.bilinear(gcol[i], rp[j][k])        # gamma(d)<(q>y)
                ii_rhs = left.bilinear(gcol[i], pp[j][k])        # gamma(d)<(q.y)
                _check("ii-a", t, ii_lhs, ii_mid, violations)
                _check("ii-b", t, ii_mid, ii_rhs, violations)

                _check("iii", t, ii_lhs, right.bilinear(gcol[i], lp[j][k]), violations)

                iv_lhs = right.bilinear(lp[i][j], gcol[k])       # (d<q)>gamma(y)
                iv_mid = right.bilinear(xcol[i], rp[j][k])       # xi(d)>(q>y)
                iv_rhs = right.bilinear(pp[i][j], xcol[k])       # (d.q)>xi(y)
                _check("iv-a", t, iv_lhs, iv_mid, violations)
                _check("iv-b", t, iv_mid, iv_rhs, violations)

                _check("v", t, left.bilinear(pp[i][j], xcol[k]),
                       perp.bilinear(gcol[i], lp[j][k]), violations)
                _check("vi", t, perp.bilinear(lp[i][j], xcol[k]),
                       perp.bilinear(gcol[i], rp[j][k]), violations)
                _check("vii", t, perp.bilinear(rp[i][j], xcol[k]),
                       right.bilinear(gcol[i], pp[j][k]), violations)

    return CheckReport.collect(violations)


def check_hom(spec: TrialgebraSpec) -> CheckReport:
    """Verify the single-twist (Hom) axiom system, ignoring ``xi``.

    Checks multiplicativity of gamma over the three products on basis pairs
    and the eleven triple identities, all twisted by gamma alone.
    """
    n = spec.dimension
    g = spec.gamma.matrix
    violations: list[Violation] = []

    left, right, perp = spec.left, spec.right, spec.perp
    lp = [[left.basis_product(i, j) for j in range(n)] for i in range(n)]
    rp = [[right.basis_product(i, j) for j in range(n)] for i in range(n)]
    pp = [[perp.basis_product(i, j) for j in range(n)] for i in range(n)]
    gcol = [g.col(i) for i in range(n)]

    for tag, prods in (("left", lp), ("right", rp), ("perp", pp)):
        tensor = spec.tensor(tag)  # type: ignore[arg-type]
        for i in range(n):
            for j in range(n):
                _check(f"gamma-{tag}", (i, j), g.apply(prods[i][j]),
                       tensor.bilinear(gcol[i], gcol[j]), violations)

    triples = (
        ("h01", left, lp, left, rp),    # (d<q)<g(y) = g(d)<(q>y)
        ("h02", right, lp, right, rp),  # (d<q)>g(y) = g(d)>(q>y)
        ("h03", left, lp, left, pp),    # (d<q)<g(y) = g(d)<(q.y)
        ("h04", perp, lp, perp, rp),    # (d<q).g(y) = g(d).(q>y)
        ("h05", right, pp, right, rp),  # (d.q)>g(y) = g(d)>(q>y)
        ("h06", left, lp, left, lp),    # (d<q)<g(y) = g(d)<(q<y)
        ("h07", left, rp, right, lp),   # (d>q)<g(y) = g(d)>(q<y)
        ("h08", right, rp, right, rp),  # (d>q)>g(y) = g(d)>(q>y)
        ("h09", left, pp, perp, lp),    # (d.q)<g(y) = g(d).(q<y)
        ("h10", perp, rp, right, pp),   # (d>q).g(y) = g(d)>(q.y)
        ("h11", perp, pp, perp, pp),    # (d.q).g(y) = g(d).(q.y)
    )
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for axiom_id, outer, inner_l, router, inner_r in triples:
                    _check(
                        axiom_id,
                        (i, j, k),
                        outer.bilinear(inner_l[i][j], gcol[k]),
                        router.bilinear(gcol[i], inner_r[j][k]),
                        violations,
                    )
    return CheckReport.collect(violations)


def check_multiplicative(spec: TrialgebraSpec) -> CheckReport:
    """Check that gamma and xi are endomorphisms for all three products."""
    xi = spec.require_xi()
    n = spec.dimension
    violations: list[Violation] = []
    for label, m in (("gamma", spec.gamma.matrix), ("xi", xi.matrix)):
        mcol = [m.col(i) for i in range(n)]
        for tag, tensor in spec.products():
            for i in range(n):
                for j in range(n):
                    _check(
                        f"{label}-{tag}",
                        (i, j),
                        m.apply(tensor.basis_product(i, j)),
                        tensor.bilinear(mcol[i], mcol[j]),
                        violations,
                    )
    return CheckReport.collect(violations)


def check_superalgebra(alg: SuperalgebraSpec) -> CheckReport:
    """Verify BiHom-associativity of a single product: (d*v)*xi(r) = gamma(d)*(v*r)."""
    n = alg.dimension
    star = alg.star
    gcol = [alg.gamma.matrix.col(i) for i in range(n)]
    xcol = [alg.xi.matrix.col(i) for i in range(n)]
    sp = [[star.basis_product(i, j) for j in range(n)] for i in range(n)]
    violations: list[Violation] = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                _check(
                    "bihom-assoc",
                    (i, j, k),
                    star.bilinear(sp[i][j], xcol[k]),
                    star.bilinear(gcol[i], sp[j][k]),
                    violations,
                )
    return CheckReport.collect(violations)


def check_morphism(src: TrialgebraSpec, dst: TrialgebraSpec, pi: LinearMap) -> CheckReport:
    """Check that ``pi`` intertwines the structure maps and the three products.

    The map may be rectangular; its columns must match the source basis and
    its rows the target basis.
    """
    if pi.matrix.cols != src.dimension or pi.matrix.rows != dst.dimension:
        raise InputError(
            f"morphism matrix must be {dst.dimension}x{src.dimension}, "
            f"got {pi.matrix.rows}x{pi.matrix.cols}"
        )
    if (src.xi is None) != (dst.xi is None):
        raise InputError("source and target must agree on whether xi is present")
    p = pi.matrix
    violations: list[Violation] = []

    pairs = [("gamma-compat", src.gamma.matrix, dst.gamma.matrix)]
    if src.xi is not None and dst.xi is not None:
        pairs.append(("xi-compat", src.xi.matrix, dst.xi.matrix))
    for axiom_id, src_m, dst_m in pairs:
        lhs_m = dst_m @ p
        rhs_m = p @ src_m
        for j in range(src.dimension):
            _check(axiom_id, (j,), lhs_m.col(j), rhs_m.col(j), violations)

    pcol = [p.col(i) for i in range(src.dimension)]
    for tag in PRODUCT_TAGS:
        src_t = src.tensor(tag)
        dst_t = dst.tensor(tag)
        for i in range(src.dimension):
            for j in range(src.dimension):
                _check(
                    tag,
                    (i, j),
                    p.apply(src_t.basis_product(i, j)),
                    dst_t.bilinear(pcol[i], pcol[j]),
                    violations,
                )
    return CheckReport.collect(violations)


def center(spec: TrialgebraSpec) -> tuple[Vector, ...]:
    """Canonical basis of {u : gamma(xi(u)) annihilates S on both sides, all products}."""
    xi = spec.require_xi()
    n = spec.dimension
    m = spec.gamma.matrix @ xi.matrix
    rows: list[list[Fraction]] = []
    for _, tensor in spec.products():
        for j in range(n):
            for k in range(n):
                row_l = [_ZERO] * n
                row_r = [_ZERO] * n
                for col in range(n):
                    acc_l = _ZERO
                    acc_r = _ZERO
                    for i in range(n):
                        mi = m.entry(i, col)
                        if mi:
                            acc_l += mi * tensor.coefficient(i, j, k)
                            acc_r += mi * tensor.coefficient(j, i, k)
                    row_l[col] = acc_l
                    row_r[col] = acc_r
                if any(row_l):
                    rows.append(row_l)
                if any(row_r):
                    rows.append(row_r)
    if not rows:
        return tuple(nullspace_basis(Matrix.zero(0, n)))
    return tuple(nullspace_basis(Matrix.from_rows(rows)))


def centralizer(spec: TrialgebraSpec, subset: Sequence[Sequence[Fraction]]) -> tuple[Vector, ...]:
    """Canonical basis of the vectors in span(subset) whose gamma-xi image
    multiplies to zero against every subset vector, on both sides, for all
    three products."""
    xi = spec.require_xi()
    n = spec.dimension
    vecs = [tuple(v) for v in subset]
    for v in vecs:
        if len(v) != n:
            raise InputError("subset vectors must match the algebra dimension")
    if not vecs:
        return ()
    m = spec.gamma.matrix @ xi.matrix
    images = [m.apply(v) for v in vecs]
    rows: list[list[Fraction]] = []
    for _, tensor in spec.products():
        for a in vecs:
            for k in range(n):
                row_l = []
                row_r = []
                for img in images:
                    row_l.append(tensor.bilinear(img, a)[k])
                    row_r.append(tensor.bilinear(a, img)[k])
                if any(row_l):
                    rows.append(row_l)
                if any(row_r):
                    rows.append(row_r)
    coeff_matrix = Matrix.from_rows(rows) if rows else Matrix.zero(0, len(vecs))
    solutions = nullspace_basis(coeff_matrix)
    members = []
    for coeffs in solutions:
        u = zero_vector(n)
        for c, v in zip(coeffs, vecs):
            u = add_vectors(u, tuple(c * comp for comp in v))
        members.append(u)
    return canonical_span(members, n)

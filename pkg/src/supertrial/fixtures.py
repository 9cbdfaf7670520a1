"""Built-in example algebras and a violation injector for negative tests.

The corpus covers the structural variety the checkers need: a zero-product
algebra with an odd coordinate, a one-dimensional idempotent, the dual
numbers, their twist by a non-identity endomorphism, a graded variant of
the dual numbers with an odd square-zero generator, and a decomposable
direct sum.  Every fixture passes the full axiom and multiplicativity
checks; the test suite re-validates this on each run.
"""

from __future__ import annotations

from dataclasses import replace

from .constructions import direct_sum
from .core import StructureTensor, TrialgebraSpec
from .errors import InputError
from .linalg import RationalLike, frac

FIXTURE_NAMES = (
    "zero2",
    "idem1",
    "dual2",
    "dual2-twisted",
    "grassmann2",
    "dsum-zero2-idem1",
)

_IDENTITY_1 = [[1]]
_IDENTITY_2 = [[1, 0], [0, 1]]

_DUAL_CONSTANTS = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}
_DUAL_TWISTED_CONSTANTS = {(0, 0, 0): 1, (0, 1, 1): 2, (1, 0, 1): 2}


def _zero2() -> TrialgebraSpec:
    return TrialgebraSpec.build(
        "zero2", [0, 1], {}, {}, {}, _IDENTITY_2, _IDENTITY_2
    )


def _idem1() -> TrialgebraSpec:
    point = {(0, 0, 0): 1}
    return TrialgebraSpec.build(
        "idem1", [0], point, point, point, _IDENTITY_1, _IDENTITY_1
    )


def _dual2() -> TrialgebraSpec:
    return TrialgebraSpec.build(
        "dual2",
        [0, 0],
        _DUAL_CONSTANTS,
        _DUAL_CONSTANTS,
        _DUAL_CONSTANTS,
        _IDENTITY_2,
        _IDENTITY_2,
    )


def _dual2_twisted() -> TrialgebraSpec:
    alpha = [[1, 0], [0, 2]]
    return TrialgebraSpec.build(
        "dual2-twisted",
        [0, 0],
        _DUAL_TWISTED_CONSTANTS,
        _DUAL_TWISTED_CONSTANTS,
        _DUAL_TWISTED_CONSTANTS,
        alpha,
        alpha,
    )


def _grassmann2() -> TrialgebraSpec:
    return TrialgebraSpec.build(
        "grassmann2",
        [0, 1],
        _DUAL_CONSTANTS,
        _DUAL_CONSTANTS,
        _DUAL_CONSTANTS,
        _IDENTITY_2,
        _IDENTITY_2,
    )


def _dsum() -> TrialgebraSpec:
    return direct_sum(_zero2(), _idem1()).with_name("dsum-zero2-idem1")


_BUILDERS = {
    "zero2": _zero2,
    "idem1": _idem1,
    "dual2": _dual2,
    "dual2-twisted": _dual2_twisted,
    "grassmann2": _grassmann2,
    "dsum-zero2-idem1": _dsum,
}


def builtin(name: str) -> TrialgebraSpec:
    """Return the named corpus fixture."""
    builder = _BUILDERS.get(name)
    if builder is None:
        known = ", ".join(FIXTURE_NAMES)
        raise InputError(f"unknown fixture {name!r}; known fixtures: {known}")
    return builder()


def corpus() -> list[TrialgebraSpec]:
    """All fixtures, in a fixed order."""
    return [builtin(name) for name in FIXTURE_NAMES]


def inject_violation(
    spec: TrialgebraSpec, op: str, triple: tuple[int, int, int], delta: RationalLike
) -> TrialgebraSpec:
    """Return a copy with one structure constant perturbed by a nonzero delta.

    The perturbed tensor must still respect the parity-evenness invariant;
    inadmissible triples are rejected rather than silently accepted.
    """
    d = frac(delta)
    if d == 0:
        raise InputError("delta must be nonzero")
    tensor = spec.tensor(op)  # type: ignore[arg-type]
    i, j, k = triple
    n = spec.dimension
    for idx in triple:
        if not 0 <= idx < n:
            raise InputError(f"triple {triple} out of range for dimension {n}")
    table = dict(tensor.constants)
    table[(i, j, k)] = table.get((i, j, k), frac(0)) + d
    return replace(spec, **{op: StructureTensor.build(n, table)})

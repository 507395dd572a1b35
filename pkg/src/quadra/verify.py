"""Brute-force oracle: measure moments from first principles, sequence
comparison, and seeded random instance generation."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasibleSpecError, LengthMismatchError
from .moments import MomentSequence
from .numerics import is_exact
from .tmp import INFINITY, Measure, is_infinity

#: fixed denominator for randomly drawn rational atoms/densities, keeping
#: exact-arithmetic bit sizes bounded across the pipeline
RANDOM_DENOMINATOR = 1000


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for a random prescribed-node instance."""

    atom_count: int
    atom_range: tuple = (-10, 10)
    density_range: tuple = (Fraction(1, 10), 5)
    prescribe: int = 1
    include_infinity: bool = False
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.prescribe <= self.atom_count:
            raise InfeasibleSpecError("prescribe must be within 0..atom_count")
        if not (self.atom_range[0] < self.atom_range[1]
                and 0 < self.density_range[0] < self.density_range[1]):
            raise InfeasibleSpecError("ranges must be nonempty (densities positive)")


def moments_of(measure: Measure, degree: int) -> MomentSequence:
    """gamma_i = sum of rho_j * y_j^i over real atoms; the infinity atom
    contributes its density to gamma_degree only."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    exact = all(is_infinity(a) or is_exact(a) for a, _ in measure.atoms) \
        and all(is_exact(d) for _, d in measure.atoms)
    zero = Fraction(0) if exact else 0.0
    gamma = []
    for i in range(degree + 1):
        gamma.append(sum((d * a ** i for a, d in measure.real_atoms), start=zero))
    if measure.infinity_density is not None:
        gamma[degree] += measure.infinity_density
    return MomentSequence(tuple(gamma))


@dataclass(frozen=True)
class CompareResult:
    match: bool
    index: int | None = None
    delta: object = None


def compare(expected: MomentSequence, actual: MomentSequence,
            tol: float = 1e-6) -> CompareResult:
    """Exact comparison when both sequences are exact, otherwise relative with
    denominator max(1, |expected_i|)."""
    if expected.degree != actual.degree:
        raise LengthMismatchError(
            f"lengths differ: {expected.degree + 1} vs {actual.degree + 1}")
    exact = all(is_exact(x) for x in expected.gamma + actual.gamma)
    for i, (e, a) in enumerate(zip(expected.gamma, actual.gamma)):
        if exact:
            if e != a:
                return CompareResult(False, i, a - e)
        else:
            delta = abs(float(a) - float(e))
            if delta > tol * max(1.0, abs(float(e))):
                return CompareResult(False, i, delta)
    return CompareResult(True)


def reproduction_ok(gamma: MomentSequence, measure: Measure,
                    tol: float = 1e-6) -> bool:
    """Moment reproduction test used by the solvers.  Exact when everything
    is rational; in float the tolerance is scaled by the magnitude of the
    measure's own terms, since sums like rho * y^i may cancel far below the
    size of their summands."""
    got = moments_of(measure, gamma.degree)
    exact = all(is_exact(x) for x in gamma.gamma + got.gamma)
    if exact:
        return gamma.gamma == got.gamma
    for i, (e, a) in enumerate(zip(gamma.gamma, got.gamma)):
        scale = sum(abs(float(d)) * abs(float(y)) ** i
                    for y, d in measure.real_atoms)
        if abs(float(a) - float(e)) > tol * max(1.0, abs(float(e)), scale):
            return False
    return True


def random_instance(spec: InstanceSpec):
    """Deterministic under seed.  Returns the generating measure, its exact
    moments to the implied degree, and the prescribed problem (prescribing the
    first ``prescribe`` atoms).

    Sizing: d1 = prescribe and the total atom count (including the infinity
    atom when requested) equals d1 + d2, so D = d1 + 2*d2 - 1."""
    from .prescribed import PrescribedProblem  # local import to avoid a cycle

    rng = random.Random(spec.seed)
    lo, hi = (Fraction(x) for x in spec.atom_range)
    sep = (hi - lo) / RANDOM_DENOMINATOR  # 1e-3 of the range width
    lo_k, hi_k = int(lo * RANDOM_DENOMINATOR), int(hi * RANDOM_DENOMINATOR)
    if (hi_k - lo_k) < 2 * spec.atom_count:
        raise InfeasibleSpecError("cannot place separated atoms in range")
    atoms: list[Fraction] = []
    for _ in range(spec.atom_count):
        for _attempt in range(10000):
            cand = Fraction(rng.randint(lo_k, hi_k), RANDOM_DENOMINATOR)
            if all(abs(cand - a) >= sep for a in atoms):
                atoms.append(cand)
                break
        else:
            raise InfeasibleSpecError("cannot place separated atoms in range")
    dlo, dhi = (Fraction(x) for x in spec.density_range)
    dlo_k, dhi_k = int(dlo * RANDOM_DENOMINATOR), int(dhi * RANDOM_DENOMINATOR)
    densities = [Fraction(rng.randint(dlo_k, dhi_k), RANDOM_DENOMINATOR)
                 for _ in range(spec.atom_count + int(spec.include_infinity))]
    densities = [d if d > 0 else Fraction(1, RANDOM_DENOMINATOR) for d in densities]
    pairs = list(zip(atoms, densities))
    if spec.include_infinity:
        pairs.append((INFINITY, densities[-1]))
    measure = Measure(tuple(pairs))
    d1 = spec.prescribe
    d2 = spec.atom_count + int(spec.include_infinity) - d1
    if d2 < 1:
        raise InfeasibleSpecError(
            "need at least one free atom (or the infinity atom) beyond the prescribed ones")
    degree = d1 + 2 * d2 - 1
    gamma = moments_of(measure, degree)
    problem = PrescribedProblem(gamma, tuple(atoms[:d1]), d2,
                                allow_infinity=spec.include_infinity)
    return measure, gamma, problem

"""Minimal (generalized) quadrature rules containing prescribed real nodes.

The real-node path decides existence of a (d1+d2)-atomic representing
measure whose support contains the prescribed nodes; the generalized path
additionally allows the evaluation-at-infinity atom.  All condition checks
(singularity, positive definiteness, tail equality, infinity-mass sign) are
exact when the inputs are rational."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidProblemError, SingularMatrixError
from .moments import (
    MomentSequence,
    localize,
    localizing_matrix,
    moment_matrix,
    recursive_extend,
)
from .numerics import (
    determinant,
    is_exact,
    is_positive_definite,
    solve_linear,
    symmetric_eigenvalues,
)
from .polynomials import Poly, poly_from_roots, poly_mul, real_roots
from .tmp import (
    Certificate,
    Measure,
    INFINITY,
    densities_from_nodes,
    rationalize_root,
    DENSITY_POSITIVITY_RTOL,
)

#: relative threshold at which a recovered node is considered to collide
#: with a prescribed one (a verification failure, not a mathematical "no")
NODE_COLLISION_RTOL = 1e-8


@dataclass(frozen=True)
class PrescribedProblem:
    """Moment data of degree D = d1 + 2*d2 - 1 with d1 prescribed nodes."""

    gamma: MomentSequence
    prescribed: tuple
    d2: int
    allow_infinity: bool = False

    def __post_init__(self):
        object.__setattr__(self, "prescribed", tuple(self.prescribed))

    @property
    def d1(self) -> int:
        return len(self.prescribed)

    @property
    def degree(self) -> int:
        return self.d1 + 2 * self.d2 - 1

    def validate(self) -> None:
        if self.d1 < 1:
            raise InvalidProblemError("at least one prescribed node required")
        if self.d2 < 1:
            raise InvalidProblemError("d2 must be at least 1")
        if len(set(map(float, self.prescribed))) != self.d1:
            raise InvalidProblemError("prescribed nodes must be distinct")
        if self.gamma.degree != self.degree:
            raise InvalidProblemError(
                f"expected degree {self.degree} moments, got {self.gamma.degree}")
        if not is_positive_definite(moment_matrix(self.gamma, self.degree // 2)):
            raise InvalidProblemError(
                "moment matrix of order floor(D/2) must be positive definite")


@dataclass(frozen=True)
class QuadratureVerdict:
    status: str  # 'exists' | 'not_exists' | 'indeterminate'
    measure: Measure | None = None
    g: Poly | None = None
    h: Poly | None = None
    extended: MomentSequence | None = None
    extended_order: int | None = None
    certificate: Certificate | None = None

    @property
    def exists(self) -> bool:
        return self.status == "exists"

    def eigenvalue_report(self) -> list[float]:
        """Float eigenvalues of the extended moment matrix (reporting only)."""
        if self.extended is None or self.extended_order is None:
            return []
        m = moment_matrix(self.extended, self.extended_order)
        return symmetric_eigenvalues([[float(x) for x in row] for row in m])


def _is_singular(matrix) -> bool:
    if not matrix:
        return False  # the 0x0 matrix counts as invertible
    try:
        return determinant(matrix) == 0
    except ValueError:
        return True


def _solve_lambda(gamma: MomentSequence, f: Poly, order: int) -> list:
    """lambda = H_f(order)^-1 (gamma^(f)_{order+1}, ..., gamma^(f)_{2*order+1}).

    The right-hand side is the e_i-weighted combination of moment vectors in
    the defining formula, collapsed through the localized sequence."""
    if order < 0:
        return []
    hf = localizing_matrix(gamma, f, order)
    vals = localize(gamma, f).values
    rhs = list(vals[order + 1: 2 * order + 2])
    return solve_linear(hf, rhs)


def _assemble_measure(gamma_for_densities: MomentSequence, prescribed, g: Poly,
                      infinity_mass=None):
    """Recover remaining nodes from g, polish, solve densities, and gate on
    positivity.  Returns (measure, certificate); exactly one is None."""
    rr = real_roots(g) if g.degree > 0 else None
    if rr is not None and not rr.ok:
        return None, Certificate("root_degeneracy", evidence=rr.status)
    recovered = [rationalize_root(g, x) for x in (rr.roots if rr else ())]
    for node in recovered:
        for x in prescribed:
            if abs(float(node) - float(x)) <= NODE_COLLISION_RTOL * max(
                    1.0, abs(float(x))):
                return None, Certificate("root_degeneracy", evidence=node)
    nodes = list(prescribed) + recovered
    try:
        rho = densities_from_nodes(gamma_for_densities, nodes)
    except SingularMatrixError:
        return None, Certificate("root_degeneracy", evidence=nodes)
    exact = all(is_exact(x) for x in nodes) and all(is_exact(x) for x in rho)
    # slack absorbs float round-off only; zero/negative weights cannot form
    # a measure and are reported as numeric failure, never absence
    slack = 0 if exact else DENSITY_POSITIVITY_RTOL * float(gamma_for_densities[0])
    if any(float(d) <= -slack for d in rho):
        return None, Certificate("root_degeneracy", evidence=rho)
    pairs = list(zip(nodes, rho))
    if infinity_mass is not None:
        pairs.append((INFINITY, infinity_mass))
    try:
        return Measure(tuple(pairs)), None
    except ValueError:
        return None, Certificate("root_degeneracy", evidence=rho)


def _verified(measure: Measure, gamma: MomentSequence) -> bool:
    from .verify import reproduction_ok  # local import: verify builds on this module

    return reproduction_ok(gamma, measure)


def solve_prescribed_real(problem: PrescribedProblem) -> QuadratureVerdict:
    """Decide existence of a (d1+d2)-atomic real representing measure whose
    support contains the prescribed nodes, and construct it when it exists."""
    problem.validate()
    gamma, d1, d2 = problem.gamma, problem.d1, problem.d2
    f = poly_from_roots(problem.prescribed)
    hf = localizing_matrix(gamma, f, d2 - 1)
    if _is_singular(hf):
        return QuadratureVerdict(
            "not_exists", certificate=Certificate("localizing_singular", evidence=hf))
    lam = _solve_lambda(gamma, f, d2 - 1)
    one = Fraction(1) if all(is_exact(c) for c in lam) else 1.0
    g = Poly(tuple(-c for c in lam) + (one,))
    h = poly_mul(f, g)
    # Two extension steps beyond the minimum complete the full moment matrix
    # of order d1+d2; positive definiteness is checked at order d1+d2-1.
    extended = recursive_extend(gamma, h, d1 + 1)
    pd = is_positive_definite(moment_matrix(extended, d1 + d2 - 1))
    if not pd:
        return QuadratureVerdict(
            "not_exists", extended=extended, extended_order=d1 + d2 - 1,
            certificate=Certificate("extended_not_pd", index=pd.witness_order))
    measure, cert = _assemble_measure(gamma, problem.prescribed, g)
    if measure is None:
        return QuadratureVerdict(
            "indeterminate", g=g, h=h, extended=extended,
            extended_order=d1 + d2 - 1, certificate=cert)
    if not _verified(measure, gamma):
        return QuadratureVerdict(
            "indeterminate", g=g, h=h, extended=extended,
            extended_order=d1 + d2 - 1,
            certificate=Certificate("root_degeneracy", evidence=measure))
    return QuadratureVerdict("exists", measure=measure, g=g, h=h,
                             extended=extended, extended_order=d1 + d2 - 1)


def solve_prescribed_generalized(problem: PrescribedProblem) -> QuadratureVerdict:
    """Real path first; on a negative verdict, look for a (d1+d2-1)-atomic
    real measure on the twice-truncated sequence that also matches gamma_{D-1}
    and leaves strictly positive mass alpha at degree D for the infinity atom."""
    real = solve_prescribed_real(problem)
    if real.status != "not_exists":
        return real
    gamma, d1, d2 = problem.gamma, problem.d1, problem.d2
    bigd = problem.degree
    f = poly_from_roots(problem.prescribed)
    hf = localizing_matrix(gamma, f, d2 - 2)
    if _is_singular(hf):
        return QuadratureVerdict(
            "not_exists", certificate=Certificate("localizing_singular", evidence=hf))
    lam = _solve_lambda(gamma, f, d2 - 2)
    one = Fraction(1) if all(is_exact(c) for c in lam) else 1.0
    g = Poly(tuple(-c for c in lam) + (one,))
    h = poly_mul(f, g)
    hat = gamma.truncate(bigd - 2)
    # far enough for both the PD check (degree 2(d1+d2-2)) and the two tail
    # comparisons at degrees D-1 and D
    steps = max(d1 - 1, 2)
    extended = recursive_extend(hat, h, steps)
    if not _tail_equal(extended[bigd - 1], gamma[bigd - 1]):
        return QuadratureVerdict(
            "not_exists", g=g, h=h, extended=extended, extended_order=d1 + d2 - 2,
            certificate=Certificate("tail_mismatch", index=bigd - 1,
                                    evidence=extended[bigd - 1]))
    pd = is_positive_definite(moment_matrix(extended, d1 + d2 - 2))
    if not pd:
        return QuadratureVerdict(
            "not_exists", g=g, h=h, extended=extended, extended_order=d1 + d2 - 2,
            certificate=Certificate("extended_not_pd", index=pd.witness_order))
    alpha = gamma[bigd] - extended[bigd]
    if not alpha > 0:
        return QuadratureVerdict(
            "not_exists", g=g, h=h, extended=extended, extended_order=d1 + d2 - 2,
            certificate=Certificate("infinity_mass_nonpositive", evidence=alpha))
    measure, cert = _assemble_measure(hat, problem.prescribed, g, infinity_mass=alpha)
    if measure is None:
        return QuadratureVerdict(
            "indeterminate", g=g, h=h, extended=extended,
            extended_order=d1 + d2 - 2, certificate=cert)
    if not _verified(measure, gamma):
        return QuadratureVerdict(
            "indeterminate", g=g, h=h, extended=extended,
            extended_order=d1 + d2 - 2,
            certificate=Certificate("root_degeneracy", evidence=measure))
    return QuadratureVerdict("exists", measure=measure, g=g, h=h,
                             extended=extended, extended_order=d1 + d2 - 2)


def _tail_equal(a, b) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(float(a) - float(b)) <= 1e-9 * max(1.0, abs(float(b)))


def solve(problem: PrescribedProblem) -> QuadratureVerdict:
    if problem.allow_infinity:
        return solve_prescribed_generalized(problem)
    return solve_prescribed_real(problem)


def search_minimal(gamma: MomentSequence, prescribed, allow_infinity: bool):
    """Smallest atom count d1+i whose truncated problem admits a measure that
    also represents the remaining moments (up to an infinity atom when
    allowed); falls through to the full-size verdict."""
    d1 = len(prescribed)
    bigd = gamma.degree
    if bigd < d1 + 1:
        raise InvalidProblemError("sequence too short for the prescribed nodes")
    d2_max = (bigd - d1 + 1) // 2
    exact_fit = bigd == d1 + 2 * d2_max - 1
    from .verify import moments_of  # local import: verify builds on this module

    last = None
    for i in range(1, d2_max + 1):
        if i == d2_max and exact_fit:
            break  # the full-size problem is handled below
        di = d1 + 2 * i - 1
        sub = PrescribedProblem(gamma.truncate(di), prescribed, i)
        try:
            sub.validate()
        except InvalidProblemError:
            continue
        verdict = solve_prescribed_real(sub)
        last = verdict
        if not verdict.exists:
            continue
        produced = moments_of(verdict.measure, bigd)
        if not all(_tail_equal(produced[j], gamma[j]) for j in range(di + 1, bigd)):
            continue
        alpha = gamma[bigd] - produced[bigd]
        if _tail_equal(alpha, 0 * alpha):
            return d1 + i, verdict
        if alpha > 0 and allow_infinity:
            measure = Measure(verdict.measure.atoms + ((INFINITY, alpha),))
            verdict = QuadratureVerdict(
                "exists", measure=measure, g=verdict.g, h=verdict.h,
                extended=verdict.extended, extended_order=verdict.extended_order)
            return d1 + i, verdict
    if exact_fit:
        full = PrescribedProblem(gamma, prescribed, d2_max,
                                 allow_infinity=allow_infinity)
        return d1 + d2_max, solve(full)
    if last is None:
        raise InvalidProblemError("no feasible truncation for this sequence")
    return d1 + d2_max, QuadratureVerdict(
        "not_exists", certificate=Certificate("tail_mismatch", index=bigd,
                                              evidence=last))


def determinantal_cross_check(gamma: MomentSequence, x1, d2: int) -> list[float]:
    """d1 = 1 cross-check: real roots in y of
    y -> det(H_{(x - x1)(x - y)}(d2 - 1)), obtained by exact sampling at
    d2+1 points and interpolation.  These must coincide with the roots of g."""
    fx1 = poly_from_roots([x1])
    if _is_singular(localizing_matrix(gamma, fx1, d2 - 1)):
        raise SingularMatrixError("H_f(d2-1) must be invertible")
    samples = []
    for s in range(d2 + 1):
        y = Fraction(s) if is_exact(x1) else float(s)
        fy = poly_mul(fx1, poly_from_roots([y]))
        samples.append((y, determinant(localizing_matrix(gamma, fy, d2 - 1))))
    # interpolate the degree-d2 polynomial F(x1, y) through the samples
    vand = [[y ** i for i in range(d2 + 1)] for y, _ in samples]
    coeffs = solve_linear(vand, [v for _, v in samples])
    lead = coeffs[-1]
    if lead == 0:
        raise SingularMatrixError("interpolated determinant polynomial degenerate")
    monic = Poly(tuple(c / lead for c in coeffs))
    rr = real_roots(monic)
    return list(rr.roots)

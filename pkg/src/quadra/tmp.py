"""Classical truncated Hamburger moment problem: atoms, measures, rank,
recursive-generation certificates, and the even-degree solver."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    IndeterminateError,
    NonpositiveMassError,
    NotPDError,
    NotPrgError,
    NotSingularError,
    OddDegreeError,
    SingularMatrixError,
)
from .moments import MomentSequence, moment_matrix, moment_vector, riesz_eval
from .numerics import (
    is_exact,
    is_positive_definite,
    solve_consistent,
    solve_linear,
)
from .polynomials import Poly, poly_from_roots, real_roots

#: candidate denominators tried when polishing a float root back to a rational
_POLISH_DENOMINATORS = (1, 1000, 10**6, 10**12)

#: relative slack accepted when verifying float densities are positive
DENSITY_POSITIVITY_RTOL = 1e-9


class _Infinity:
    """The distinguished evaluation-at-infinity atom (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinity"


INFINITY = _Infinity()


def is_infinity(atom) -> bool:
    return atom is INFINITY


@dataclass(frozen=True)
class Measure:
    """Finitely atomic measure: (atom, density) pairs with strictly positive
    densities, distinct real atoms ascending, at most one infinity atom last."""

    atoms: tuple

    def __post_init__(self):
        real = [(a, d) for a, d in self.atoms if not is_infinity(a)]
        inf = [(a, d) for a, d in self.atoms if is_infinity(a)]
        if len(inf) > 1:
            raise ValueError("at most one infinity atom")
        if any(d <= 0 for _, d in self.atoms):
            raise ValueError("densities must be strictly positive")
        positions = [a for a, _ in real]
        if len(set(map(float, positions))) != len(positions):
            raise ValueError("real atom positions must be distinct")
        real.sort(key=lambda pair: float(pair[0]))
        object.__setattr__(self, "atoms", tuple(real + inf))

    @property
    def real_atoms(self):
        return tuple(p for p in self.atoms if not is_infinity(p[0]))

    @property
    def infinity_density(self):
        for a, d in self.atoms:
            if is_infinity(a):
                return d
        return None

    def __len__(self):
        return len(self.atoms)


@dataclass(frozen=True)
class Certificate:
    """Which condition failed, where, and the witnessing object."""

    stage: str
    index: int | None = None
    evidence: object = None


@dataclass(frozen=True)
class TmpVerdict:
    status: str  # 'unique' | 'infinitely_many' | 'not_representable'
    measure: Measure | None = None
    rank: int | None = None
    certificate: Certificate | None = None


@dataclass(frozen=True)
class PrgResult:
    ok: bool
    # 'recursion' with the first violating moment index, or 'minor' with the
    # order of the first non-positive leading principal minor
    kind: str | None = None
    index: int | None = None


def _check_even(gamma: MomentSequence) -> int:
    if gamma.degree % 2 != 0:
        raise OddDegreeError("sequence degree must be even")
    return gamma.degree // 2


def rank_of_sequence(gamma: MomentSequence) -> int:
    """d+1 when M_d is nonsingular, otherwise the least i such that the i-th
    column of M_d lies in the span of the preceding columns (exact)."""
    d = _check_even(gamma)
    if gamma[0] <= 0:
        raise NonpositiveMassError("gamma_0 must be positive")
    # Incremental exact column-space test via row echelon accumulation.
    basis = []  # echelon rows: (pivot_position, vector)
    for i in range(d + 1):
        v = [Fraction(x) if is_exact(x) else x for x in moment_vector(gamma, i, d)]
        for pos, row in basis:
            if v[pos] != 0:
                factor = v[pos] / row[pos]
                v = [a - factor * b for a, b in zip(v, row)]
        pivot = next((p for p, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return i
        basis.append((pivot, v))
    return d + 1


def generating_polynomial(gamma: MomentSequence) -> Poly:
    """Monic degree-r polynomial x^r - sum phi_i x^i with coefficients from
    the exact solve M_{r-1} phi = v_r^{(r-1)}; requires a singular sequence
    with M_{r-1} positive definite."""
    d = _check_even(gamma)
    r = rank_of_sequence(gamma)
    if r > d:
        raise NotSingularError("sequence is nonsingular; no generating polynomial")
    if not is_positive_definite(moment_matrix(gamma, r - 1)):
        raise NotPrgError(f"M_{r - 1} is not positive definite")
    phi = solve_linear(moment_matrix(gamma, r - 1), moment_vector(gamma, r, r - 1))
    one = Fraction(1) if all(is_exact(c) for c in phi) else 1.0
    return Poly(tuple(-c for c in phi) + (one,))


def check_prg(gamma: MomentSequence) -> PrgResult:
    """Positively-recursively-generated test: M_{r-1} positive definite and,
    when singular, the generating recursion reproduces gamma_r .. gamma_{2d}."""
    d = _check_even(gamma)
    if gamma[0] <= 0:
        raise NonpositiveMassError("gamma_0 must be positive")
    r = rank_of_sequence(gamma)
    pd = is_positive_definite(moment_matrix(gamma, r - 1))
    if not pd:
        return PrgResult(False, "minor", pd.witness_order)
    if r == d + 1:
        return PrgResult(True)
    phi = solve_linear(moment_matrix(gamma, r - 1), moment_vector(gamma, r, r - 1))
    for j in range(r, 2 * d + 1):
        predicted = sum(phi[t] * gamma[j - r + t] for t in range(r))
        if predicted != gamma[j]:
            return PrgResult(False, "recursion", j)
    return PrgResult(True)


def densities_from_nodes(gamma: MomentSequence, nodes) -> list:
    """Densities matching the first ``len(nodes)`` moments at the given nodes.

    Solves the Vandermonde system V rho = (gamma_0, ..., gamma_{r-1}) in
    closed form: rho_j = L(ell_j) / ell_j(x_j) with ell_j the monic
    polynomial vanishing at every other node and L the linear functional
    sending x^i to gamma_i.  This stays accurate even when node magnitudes
    differ wildly.  Positivity is the caller's responsibility.
    """
    r = len(nodes)
    if len(set(map(float, nodes))) != r:
        raise SingularMatrixError("nodes must be distinct")
    if r > gamma.degree + 1:
        raise ValueError("more nodes than moments")
    rho = []
    for j, xj in enumerate(nodes):
        ell = poly_from_roots([x for k, x in enumerate(nodes) if k != j])
        rho.append(riesz_eval(gamma, ell) / ell(xj))
    return rho


def _refine_root(p: Poly, x: float):
    """Sharpen a float root estimate of an exact polynomial.

    Exact Newton steps converge quadratically, so a machine-precision seed
    reaches far beyond double precision in a few iterations.  Returns
    ``(value, is_exact_root)`` where the value is either a verified exact
    rational root or a high-precision rational approximation.
    """
    refined = Fraction(x)
    dp = p.derivative()
    for _ in range(5):
        slope = dp(refined)
        if slope == 0:
            break
        step = Fraction(p(refined), slope)
        refined = (refined - step).limit_denominator(10 ** 60)
        if step == 0:
            break
    for den in _POLISH_DENOMINATORS:
        cand = refined.limit_denominator(den) if den > 1 else Fraction(round(refined))
        if p(cand) == 0:
            return cand, True
    return refined, False


def rationalize_root(p: Poly, x: float):
    """Return an exact rational root of p near x when one exists, else x.
    Only meaningful for exact polynomials."""
    if not all(is_exact(c) for c in p.coeffs):
        return x
    value, found = _refine_root(p, x)
    return value if found else x


def _measure_from_nodes(gamma: MomentSequence, p: Poly, float_nodes) -> Measure:
    """Polish, solve for densities, verify positivity and moment reproduction.

    Densities can be dominated by cancellation when node magnitudes differ
    wildly, so when the node polynomial is exact they are computed in exact
    arithmetic from high-precision rational roots and rounded only at the
    end.
    """
    if all(is_exact(c) for c in p.coeffs):
        refined = [_refine_root(p, x) for x in float_nodes]
        nodes = [value for value, _ in refined]
        exact = all(found for _, found in refined)
    else:
        nodes = list(float_nodes)
        exact = False
    rho = densities_from_nodes(gamma, nodes)
    # slack absorbs float round-off only; anything at or below zero cannot
    # form a measure and signals numeric failure, never absence
    slack = 0 if exact else DENSITY_POSITIVITY_RTOL * float(gamma[0])
    if any(float(d) <= -slack for d in rho):
        raise IndeterminateError("recovered density not positive; numeric failure")
    if not exact:
        nodes = [x if isinstance(x, float) else float(x) for x in nodes]
        rho = [float(d) for d in rho]
    try:
        measure = Measure(tuple(zip(nodes, rho)))
    except ValueError as exc:
        raise IndeterminateError(str(exc)) from exc
    from .verify import reproduction_ok  # local import: verify builds on tmp

    if not reproduction_ok(gamma, measure):
        raise IndeterminateError("moment reproduction failed")
    return measure


def solve_tmp(gamma: MomentSequence) -> TmpVerdict:
    """Even-degree truncated Hamburger solver.

    Not representable exactly when the prg certificate fails; unique
    rank-atomic measure when rank <= d; infinitely many when M_d is positive
    definite."""
    d = _check_even(gamma)
    if gamma[0] <= 0:
        raise NonpositiveMassError("gamma_0 must be positive")
    prg = check_prg(gamma)
    if not prg.ok:
        return TmpVerdict(
            "not_representable",
            certificate=Certificate(stage=f"prg_{prg.kind}", index=prg.index))
    r = rank_of_sequence(gamma)
    if r == d + 1:
        return TmpVerdict("infinitely_many", rank=r)
    p = generating_polynomial(gamma)
    rr = real_roots(p)
    if not rr.ok:
        raise IndeterminateError(
            f"root extraction degenerate ({rr.status}) despite exact certificates")
    return TmpVerdict("unique", measure=_measure_from_nodes(gamma, p, rr.roots), rank=r)


def flat_extension(gamma: MomentSequence, next_odd) -> MomentSequence:
    """Append gamma_{2d+1} = next_odd and the rank-preserving
    gamma_{2d+2} = v^T M_d^{-1} v with v = (gamma_{d+1}, ..., gamma_{2d+1});
    the result has rank d+1 and a unique (d+1)-atomic measure."""
    d = _check_even(gamma)
    md = moment_matrix(gamma, d)
    v = list(gamma.gamma[d + 1:]) + [next_odd]
    if is_positive_definite(md):
        x = solve_linear(md, v)
    else:
        # degenerate but consistent data (e.g. a single-atom sequence closed
        # by its own recursion) still extends; v^T x is solution-independent
        try:
            x = solve_consistent(md, v)
        except SingularMatrixError as exc:
            raise NotPDError(
                "flat extension needs M_d positive definite or a consistent "
                "singular system") from exc
    closing = sum(a * b for a, b in zip(v, x))
    return MomentSequence(gamma.gamma + (next_odd, closing))

"""Moment sequences, Riesz functionals, moment/localizing matrices, band
matrices, and recursive extension."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DegreeTooHighError,
    IndexRangeError,
    OrderTooHighError,
    RepeatedPointError,
    TooManyPointsError,
)
from .polynomials import Poly, elementary_symmetric


@dataclass(frozen=True)
class MomentSequence:
    """Finite real sequence (gamma_0, ..., gamma_D)."""

    gamma: tuple

    def __post_init__(self):
        g = tuple(self.gamma)
        if not g:
            raise ValueError("moment sequence must be non-empty")
        object.__setattr__(self, "gamma", g)

    @property
    def degree(self) -> int:
        return len(self.gamma) - 1

    def __getitem__(self, i):
        return self.gamma[i]

    def truncate(self, degree: int) -> "MomentSequence":
        if degree > self.degree:
            raise DegreeTooHighError(f"cannot truncate to degree {degree}")
        return MomentSequence(self.gamma[: degree + 1])


@dataclass(frozen=True)
class LocalizedSequence:
    """The sequence i -> L(f * x^i) of a base sequence under the Riesz
    functional L, for 0 <= i <= D - deg f."""

    base: MomentSequence
    f: Poly
    values: tuple = field(init=False)

    def __post_init__(self):
        vals = tuple(
            riesz_eval(self.base, self.f.shift(i))
            for i in range(self.base.degree - self.f.degree + 1)
        )
        object.__setattr__(self, "values", vals)


def riesz_eval(gamma: MomentSequence, p: Poly):
    """L(p) = sum p_i * gamma_i."""
    if p.degree > gamma.degree:
        raise DegreeTooHighError(
            f"polynomial degree {p.degree} exceeds sequence degree {gamma.degree}")
    return sum((c * gamma[i] for i, c in enumerate(p.coeffs)), start=0 * gamma[0])


def moment_vector(gamma: MomentSequence, i: int, j: int) -> list:
    """The column (gamma_i, ..., gamma_{i+j})."""
    if i < 0 or j < 0 or i + j > gamma.degree:
        raise IndexRangeError(f"moment vector ({i},{j}) out of range")
    return list(gamma.gamma[i: i + j + 1])


def moment_matrix(gamma: MomentSequence, ell: int) -> list:
    """(ell+1) x (ell+1) Hankel matrix with (i,j) entry gamma_{i+j}."""
    if ell < -1 or 2 * ell > gamma.degree:
        raise OrderTooHighError(f"order {ell} too high for degree {gamma.degree}")
    return [[gamma[i + j] for j in range(ell + 1)] for i in range(ell + 1)]


def localize(gamma: MomentSequence, f: Poly) -> LocalizedSequence:
    if f.degree > gamma.degree:
        raise DegreeTooHighError("localizing polynomial degree exceeds sequence degree")
    return LocalizedSequence(gamma, f)


def localizing_matrix(gamma: MomentSequence, f: Poly, ell: int) -> list:
    """Hankel matrix of the f-localized sequence; ell = -1 yields the legal
    0x0 matrix (needed by the generalized path with d2 = 1)."""
    if ell == -1:
        return []
    if ell < -1 or 2 * ell + f.degree > gamma.degree:
        raise OrderTooHighError(f"localizing order {ell} too high")
    vals = localize(gamma, f).values
    return [[vals[i + j] for j in range(ell + 1)] for i in range(ell + 1)]


def band_matrix(points, d: int) -> list:
    """The (d-k+1) x (d+1) banded matrix with entries
    b_ij = (-1)^(k+i-j) e_{k+i-j} for i <= j <= i+k (1-based), zero elsewhere,
    built directly from the closed-form entry rule."""
    k = len(points)
    if k >= d:
        raise TooManyPointsError(f"need k < d, got k={k}, d={d}")
    if len(set(points)) != k:
        raise RepeatedPointError("band matrix points must be distinct")
    e = elementary_symmetric(points)
    zero = 0 * e[0]
    rows = []
    for i in range(1, d - k + 2):
        row = []
        for j in range(1, d + 2):
            if i <= j <= i + k:
                row.append((-1) ** (k + i - j) * e[k + i - j])
            else:
                row.append(zero)
        rows.append(row)
    return rows


def recursive_extend(gamma: MomentSequence, h: Poly, count: int) -> MomentSequence:
    """Append ``count`` entries, each generated by the linear recursion of the
    monic polynomial h = x^r - sum phi_i x^i from the previous r entries."""
    r = h.degree
    if not h.is_monic:
        raise ValueError("recursion polynomial must be monic")
    if r > gamma.degree + 1:
        raise DegreeTooHighError("recursion order exceeds available moments")
    phi = [-c for c in h.coeffs[:-1]]
    g = list(gamma.gamma)
    for _ in range(count):
        g.append(sum(phi[r - i] * g[-i] for i in range(1, r + 1)))
    return MomentSequence(tuple(g))

"""Univariate polynomial algebra: symmetric functions, construction from
roots, companion matrices, and float root extraction.

Coefficients are stored lowest degree first (convolution convenience); all
display is highest-first."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotMonicError
from .numerics import is_exact

#: relative threshold classifying companion eigenvalues as real / distinct
ROOT_CLASSIFY_RTOL = 1e-8


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies x**i.
    The zero polynomial has empty coeffs."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return Poly((0,) * k + self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c}")
            else:
                mono = "x" if i == 1 else f"x^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


ONE = Poly((Fraction(1),))


def elementary_symmetric(points) -> list:
    """(e_0, ..., e_k) for the given points, e_0 = 1, by iterative
    convolution with (1 + x_j t)."""
    e = [Fraction(1) if all(is_exact(p) for p in points) else 1.0]
    for p in points:
        e = e + [0 * e[0]]
        for i in range(len(e) - 1, 0, -1):
            e[i] = e[i] + p * e[i - 1]
    return e


def poly_from_roots(roots) -> Poly:
    """Monic polynomial prod (x - r_i); coefficient of x^(k-i) is (-1)^i e_i."""
    e = elementary_symmetric(roots)
    k = len(roots)
    one = Fraction(1) if all(is_exact(r) for r in roots) else 1.0
    coeffs = [(-1) ** i * e[i] for i in range(k, -1, -1)]
    coeffs[-1] = one
    return Poly(tuple(coeffs))


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p.coeffs or not q.coeffs:
        return Poly(())
    out = [0 * (p.coeffs[0] * q.coeffs[0])] * (p.degree + q.degree + 1)
    for i, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Poly(tuple(out))


def companion_matrix(p: Poly):
    """k x k companion matrix of a monic degree-k polynomial
    p = x^k - sum lambda_i x^i: ones on the subdiagonal, last column
    (lambda_0, ..., lambda_{k-1}); satisfies p(x) = det(x I - C)."""
    if not p.is_monic:
        raise NotMonicError("companion matrix needs a monic polynomial")
    k = p.degree
    if k < 1:
        raise NotMonicError("degree must be at least 1")
    zero = 0 * p.coeffs[0]
    c = [[zero for _ in range(k)] for _ in range(k)]
    for i in range(1, k):
        c[i][i - 1] = zero + 1
    for i in range(k):
        c[i][k - 1] = -p.coeffs[i]
    return c


@dataclass(frozen=True)
class RootResult:
    """Outcome of float root extraction.

    status: 'all_real_distinct' | 'complex_root' | 'repeated_root';
    roots hold the ascending real roots when all-real-distinct."""

    status: str
    roots: tuple = ()

    @property
    def ok(self) -> bool:
        return self.status == "all_real_distinct"


def real_roots(p: Poly, rtol: float = ROOT_CLASSIFY_RTOL) -> RootResult:
    """All roots of a monic polynomial via eigenvalues of the (balanced)
    companion matrix, one Newton polish step each.  Returns all-real-distinct
    only when every root is real and pairwise separated at threshold
    ``rtol * max(1, |root|)``; otherwise reports the degeneracy kind."""
    if not p.is_monic:
        raise NotMonicError("root extraction needs a monic polynomial")
    k = p.degree
    if k == 0:
        return RootResult("all_real_distinct", ())
    comp = np.array([[float(x) for x in row] for row in companion_matrix(p)])
    eig = np.linalg.eigvals(comp)
    fc = [float(c) for c in p.coeffs]
    fp = Poly(tuple(fc))
    fd = fp.derivative()
    polished = []
    for z in eig:
        dz = fd(z)
        if dz != 0:
            z = z - fp(z) / dz
        polished.append(complex(z))
    for z in polished:
        if abs(z.imag) > rtol * max(1.0, abs(z)):
            return RootResult("complex_root")
    roots = sorted(z.real for z in polished)
    for a, b in zip(roots, roots[1:]):
        if b - a <= rtol * max(1.0, abs(a), abs(b)):
            return RootResult("repeated_root")
    return RootResult("all_real_distinct", tuple(roots))

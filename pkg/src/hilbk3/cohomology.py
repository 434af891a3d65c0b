"""Betti numbers of Hilbert schemes of points via diagonal strata.

The cycle map from the Hilbert scheme of n points to the n-th symmetric
power is semismall, so rationally the cohomology decomposes as a direct sum
over diagonal strata, each contributing its own cohomology shifted up by the
complex codimension of the stratum.  Each stratum is a product of symmetric
powers of the surface, whose Poincare polynomials are exact binomial sums.
All arithmetic is integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .partitions import YoungDiagram, codim_diagonal, diagrams_of


def _multichoose(m: int, k: int) -> int:
    # multisets of size k from m symbols; comb(m+k-1, k) breaks at m = k = 0
    if k == 0:
        return 1
    return comb(m + k - 1, k)


def _trim(betti) -> tuple[int, ...]:
    b = list(betti)
    while b and b[-1] == 0:
        b.pop()
    return tuple(b)


@dataclass(frozen=True)
class PoincarePolynomial:
    """Integer coefficient list, betti[i] = b_i; trailing zeros trimmed."""

    betti: tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(x, int) or x < 0 for x in self.betti):
            raise ValueError("Betti numbers must be nonnegative integers")
        object.__setattr__(self, "betti", _trim(self.betti))

    @property
    def top_degree(self) -> int:
        return len(self.betti) - 1

    def coefficient(self, i: int) -> int:
        return self.betti[i] if 0 <= i < len(self.betti) else 0

    @property
    def euler_characteristic(self) -> int:
        return sum(b if i % 2 == 0 else -b for i, b in enumerate(self.betti))

    @property
    def is_palindromic(self) -> bool:
        return self.betti == self.betti[::-1]

    @property
    def has_only_even_degrees(self) -> bool:
        return all(b == 0 for b in self.betti[1::2])

    def shifted(self, k: int) -> "PoincarePolynomial":
        if k < 0:
            raise ValueError("shift must be nonnegative")
        return PoincarePolynomial((0,) * k + self.betti)

    def __add__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        a, b = self.betti, other.betti
        if len(a) < len(b):
            a, b = b, a
        return PoincarePolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __mul__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        a, b = self.betti, other.betti
        if not a or not b:
            return PoincarePolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PoincarePolynomial(tuple(out))


@dataclass(frozen=True)
class SurfaceBetti:
    """Betti numbers of a compact surface with no odd cohomology."""

    b0: int
    b2: int
    b4: int

    def __post_init__(self):
        if self.b0 != 1:
            raise ValueError("b0 must be 1 (connected surface)")
        if self.b2 < 0 or self.b4 < 0:
            raise ValueError("Betti numbers must be nonnegative")

    @classmethod
    def k3(cls) -> "SurfaceBetti":
        return cls(1, 22, 1)  # b2 = 22 for a K3 surface, taken as input

    @classmethod
    def from_vector(cls, betti) -> "SurfaceBetti":
        b = tuple(betti)
        if len(b) != 5:
            raise ValueError("expected (b0, b1, b2, b3, b4)")
        if b[1] != 0 or b[3] != 0:
            raise ValueError("surfaces with odd cohomology are not supported")
        return cls(b[0], b[2], b[4])

    def poincare(self) -> PoincarePolynomial:
        return PoincarePolynomial((self.b0, 0, self.b2, 0, self.b4))


def symmetric_power_poincare(surface: SurfaceBetti, n: int) -> PoincarePolynomial:
    """Poincare polynomial of the n-th symmetric power.

    Coefficient of q^n in prod_{i in 0,2,4} (1 - q t^i)^(-b_i): a multiset of
    n basis classes split as j0 + j2 + j4 over the three even degrees, with
    multichoose counts per degree.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = [0] * (4 * n + 1)
    for j0 in range(n + 1):
        for j2 in range(n - j0 + 1):
            j4 = n - j0 - j2
            out[2 * j2 + 4 * j4] += (
                _multichoose(surface.b0, j0)
                * _multichoose(surface.b2, j2)
                * _multichoose(surface.b4, j4)
            )
    return PoincarePolynomial(tuple(out))


def diagonal_poincare(surface: SurfaceBetti, diagram: YoungDiagram) -> PoincarePolynomial:
    """Poincare polynomial of a diagonal stratum closure.

    The stratum for a diagram is the product, over distinct part values, of
    the symmetric power of the surface in the multiplicity of that value.
    """
    ref = diagram.refinement()
    poly = PoincarePolynomial((1,))
    for mult in ref.multiplicities:
        poly = poly * symmetric_power_poincare(surface, mult)
    return poly


@dataclass(frozen=True)
class StratumContribution:
    diagram: YoungDiagram
    codim: int
    poincare: PoincarePolynomial  # of the stratum itself, unshifted


@dataclass(frozen=True)
class StratumLedger:
    """All stratum contributions for one Hilbert scheme, before summation."""

    n: int
    surface: SurfaceBetti
    contributions: tuple[StratumContribution, ...]

    def total(self) -> PoincarePolynomial:
        out = PoincarePolynomial(())
        for c in self.contributions:
            out = out + c.poincare.shifted(c.codim)
        return out

    def entries_in_degree(self, i: int) -> tuple[tuple[YoungDiagram, int], ...]:
        """Nonzero contributions b_{i - codim}(stratum), stratum by stratum."""
        out = []
        for c in self.contributions:
            b = c.poincare.coefficient(i - c.codim) if i >= c.codim else 0
            if b:
                out.append((c.diagram, b))
        return tuple(out)


def hilbert_stratum_ledger(surface: SurfaceBetti, n: int) -> StratumLedger:
    if n < 1:
        raise ValueError("n must be >= 1")
    contributions = tuple(
        StratumContribution(d, codim_diagonal(d), diagonal_poincare(surface, d))
        for d in diagrams_of(n)
    )
    return StratumLedger(n, surface, contributions)


def hilbert_poincare(surface: SurfaceBetti, n: int) -> PoincarePolynomial:
    """Poincare polynomial of the Hilbert scheme of n points."""
    return hilbert_stratum_ledger(surface, n).total()

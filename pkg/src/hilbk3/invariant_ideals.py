"""Invariant ideals of a truncated polynomial ring in two variables.

The ring is C[x, y] / m^N with monomial basis {x^a y^b : a + b < N}.  The
relevant symmetry acts through the operators

    e = x d/dy,   f = y d/dx,   h = [e, f] = x d/dx - y d/dy,

which preserve total degree, so each graded slice A_l (degree-l monomials)
is a module; A_l is irreducible (certified by counting highest-weight
vectors), the slices are pairwise non-isomorphic, hence every invariant
subspace is a sum of full slices, and the ideal condition forces an upward
closed set of degrees.  The classification is therefore {m^j : 1 <= j < N},
which classify_invariant_ideals discovers by exhaustive enumeration and
double-checks.

The same operators in the window a + b < i + 1 detect which monomial ideals
of colength i are invariant: exactly the staircase m^l when i = l(l+1)/2 is
triangular, and none otherwise (punctual_fixed_points).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .partitions import YoungDiagram, is_triangular, partitions_of

MAX_TRUNCATION = 12  # exhaustive 2^N subset sweep stays cheap up to here


class TruncatedRing:
    """Monomial model of C[x, y]/m^N with the three degree-preserving operators."""

    def __init__(self, truncation: int):
        if not isinstance(truncation, int) or truncation < 1:
            raise ValueError("truncation must be a positive integer")
        self.truncation = truncation
        self.monomials = tuple(
            (a, l - a) for l in range(truncation) for a in range(l, -1, -1)
        )
        self.index = {m: k for k, m in enumerate(self.monomials)}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def degree_indices(self, l: int) -> tuple[int, ...]:
        return tuple(k for k, (a, b) in enumerate(self.monomials) if a + b == l)

    # single-monomial actions; None means the image is zero
    def act_e(self, mono):
        a, b = mono
        return (b, (a + 1, b - 1)) if b >= 1 else None

    def act_f(self, mono):
        a, b = mono
        return (a, (a - 1, b + 1)) if a >= 1 else None

    def act_h(self, mono):
        a, b = mono
        return (a - b, mono)

    def _operator_matrix(self, act) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for k, mono in enumerate(self.monomials):
            image = act(mono)
            if image is not None and image[0] != 0:
                coeff, target = image
                out[self.index[target]][k] = Fraction(coeff)
        return out

    def matrix_e(self):
        return self._operator_matrix(self.act_e)

    def matrix_f(self):
        return self._operator_matrix(self.act_f)

    def matrix_h(self):
        return self._operator_matrix(self.act_h)

    def matrix_e_on_degree(self, l: int) -> list[list[Fraction]]:
        idx = self.degree_indices(l)
        monos = [self.monomials[k] for k in idx]
        pos = {m: r for r, m in enumerate(monos)}
        out = [[Fraction(0)] * len(monos) for _ in range(len(monos))]
        for c, mono in enumerate(monos):
            image = self.act_e(mono)
            if image is not None and image[0] != 0:
                out[pos[image[1]]][c] = Fraction(image[0])
        return out


def highest_weight_dimension(e_matrix) -> int:
    """Number of independent vectors killed by e (nullity of the matrix)."""
    ncols = len(e_matrix[0]) if e_matrix else 0
    return len(linalg.nullspace(e_matrix, ncols))


def irreducibility_certificate(l: int, truncation: int | None = None) -> bool:
    """The degree-l slice has a single highest-weight line, so is irreducible."""
    if l < 0:
        raise ValueError("degree must be nonnegative")
    ring = TruncatedRing(truncation if truncation is not None else l + 1)
    if truncation is not None and l >= truncation:
        raise ValueError("degree outside the ring")
    return highest_weight_dimension(ring.matrix_e_on_degree(l)) == 1


@dataclass(frozen=True)
class InvariantIdeal:
    """An invariant ideal of the truncated ring, recorded by its degree support."""

    truncation: int
    degrees: tuple[int, ...]

    def maximal_ideal_power(self) -> int | None:
        """j if the ideal is m^j (support {j, ..., N-1}), else None."""
        if self.degrees and self.degrees == tuple(range(self.degrees[0], self.truncation)):
            return self.degrees[0]
        return None


def _is_ideal_support(degrees: frozenset[int], truncation: int) -> bool:
    # closed under multiplication by x and y: degree l full slice maps onto
    # the full degree l+1 slice, so support must be upward closed
    return all(l + 1 in degrees for l in degrees if l + 1 < truncation)


def _recheck_ideal(ring: TruncatedRing, degrees: tuple[int, ...]) -> bool:
    """Independent monomial-by-monomial closure check under x, y, e, f."""
    support = set(degrees)
    members = {m for m in ring.monomials if sum(m) in support}
    for (a, b) in members:
        for shifted in ((a + 1, b), (a, b + 1)):
            if sum(shifted) < ring.truncation and shifted not in members:
                return False
        image = ring.act_e((a, b))
        if image is not None and image[0] != 0 and image[1] not in members:
            return False
        image = ring.act_f((a, b))
        if image is not None and image[0] != 0 and image[1] not in members:
            return False
    return True


def classify_invariant_ideals(truncation: int) -> tuple[InvariantIdeal, ...]:
    """All proper nonzero invariant ideals of C[x,y]/m^N, by exhaustion.

    Certifies the graded slices irreducible first (so invariant subspaces
    are sums of slices), sweeps all 2^N degree supports, keeps the ideal
    ones, and independently rechecks every answer.
    """
    n = truncation
    if n > MAX_TRUNCATION:
        raise ValueError(f"exhaustive sweep capped at truncation {MAX_TRUNCATION}")
    ring = TruncatedRing(n)
    for l in range(n):
        if not irreducibility_certificate(l, n):
            raise RuntimeError(f"degree {l} slice failed its irreducibility certificate")
    found = []
    for mask in range(1, 1 << n):
        degrees = frozenset(l for l in range(n) if mask >> l & 1)
        if len(degrees) == n:
            continue  # the whole ring is not a proper ideal
        if 0 in degrees:
            continue  # contains the unit, hence everything; skip as improper
        if _is_ideal_support(degrees, n):
            ideal = InvariantIdeal(n, tuple(sorted(degrees)))
            if not _recheck_ideal(ring, ideal.degrees):
                raise RuntimeError(f"recheck failed for support {ideal.degrees}")
            found.append(ideal)
    return tuple(sorted(found, key=lambda i: i.degrees))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal of colength |staircase| with the staircase quotient.

    The quotient basis is {x^a y^b : a < staircase.parts[b]}, parts indexed
    by the y-exponent.
    """

    staircase: YoungDiagram
    truncation: int

    def colength(self) -> int:
        return self.staircase.n

    def quotient_monomials(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (a, b) for b, part in enumerate(self.staircase.parts) for a in range(part)
        )

    def ideal_monomials_in_window(self) -> frozenset[tuple[int, int]]:
        window = {
            (a, b)
            for a in range(self.truncation)
            for b in range(self.truncation)
            if a + b < self.truncation
        }
        return frozenset(window - self.quotient_monomials())

    def generators(self) -> tuple[tuple[int, int], ...]:
        """Minimal monomial generators (the staircase corners)."""
        parts = self.staircase.parts
        gens = [(parts[0], 0)]
        for b in range(1, len(parts)):
            if parts[b] < parts[b - 1]:
                gens.append((parts[b], b))
        gens.append((0, len(parts)))
        return tuple(gens)


def _staircase_is_stable(quotient: frozenset[tuple[int, int]]) -> bool:
    # e = x d/dy sends the ideal monomial (a-1, b+1) onto the quotient cell
    # (a, b), and f = y d/dx sends (a+1, b-1) there; stability can only fail
    # at such a preimage, so scanning the quotient cells' antidiagonal
    # neighbours is the full operator check
    for (a, b) in quotient:
        if a >= 1 and (a - 1, b + 1) not in quotient:
            return False
        if b >= 1 and (a + 1, b - 1) not in quotient:
            return False
    return True


def punctual_fixed_points(i: int) -> tuple[MonomialIdeal, ...]:
    """Colength-i monomial ideals stable under e and f, inside the window N = i+1.

    The operators preserve total degree, so the window suffices.  The result
    is the single staircase (l, l-1, ..., 1) when i = l(l+1)/2 and empty
    otherwise; an independent colength recheck runs on every hit.
    """
    if i < 1:
        raise ValueError("colength must be >= 1")
    truncation = i + 1
    fixed = []
    for parts in partitions_of(i):
        ideal = MonomialIdeal(YoungDiagram(parts), truncation)
        quotient = ideal.quotient_monomials()
        if _staircase_is_stable(quotient):
            if len(quotient) != i or any(a + b >= truncation for a, b in quotient):
                raise RuntimeError("colength recheck failed")
            fixed.append(ideal)
    return tuple(fixed)

"""Beauville-Bogomolov lattice model for H^2 of a Hilbert scheme of points.

For n >= 2 the second cohomology of the Hilbert scheme of n points on a K3
surface M is H^2(M) perp Q.delta, where delta is half the exceptional
divisor of the cycle map and q(delta) = -2(n-1); on H^2(M) the BB form is
the intersection form.  The default surface gram is E8(-1) + E8(-1) + three
hyperbolic planes, self-tested to be even and unimodular of signature (3,19).

A hyperkaehler rotation is encoded by a period triple: three pairwise
BB-orthogonal classes of positive norm.  The induced su(2) action on H^2 is
generated by the three skew operators

    L_a x = w_c B(w_b, x) - w_b B(w_c, x)        ((a,b,c) cyclic),

which are BB-skew for any valid triple (no normalization, so everything
stays rational; L_a w_b is proportional to w_c with positive factor q(w_b),
and [L_a, L_b] = q(w_c) L_c).  A class or tensor is invariant under the
rotations iff the three derivations vanish on it.

The two obstruction routes for candidate trianalytic subvarieties live here:
the exact pullback coefficient on the exceptional square for candidates
coming from a smaller Hilbert scheme, and the failure of su(2)-invariance of
the degree-4 restriction functional f = B + 2(n-1) d^2 for the punctual
candidate, where d is the coordinate functional dual to delta (d vanishes on
H^2(M), d(delta) = 1; with that normalization f(delta, delta) = 0).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from . import linalg
from .partitions import YoungDiagram, is_triangular, trianalytic_candidates

_E8_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8))


def _e8_cartan() -> list[list[int]]:
    m = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        m[i - 1][j - 1] = m[j - 1][i - 1] = -1
    return m


@lru_cache(maxsize=None)
def default_k3_gram() -> tuple[tuple[int, ...], ...]:
    """E8(-1) + E8(-1) + U + U + U, with construction self-test."""
    g = [[0] * 22 for _ in range(22)]
    e8 = _e8_cartan()
    for block in range(2):
        off = 8 * block
        for i in range(8):
            for j in range(8):
                g[off + i][off + j] = -e8[i][j]
    for block in range(3):
        off = 16 + 2 * block
        g[off][off + 1] = g[off + 1][off] = 1
    if any(g[i][i] % 2 for i in range(22)):
        raise RuntimeError("default gram is not even")
    if linalg.det(g) not in (1, -1):
        raise RuntimeError("default gram is not unimodular")
    if linalg.signature(g) != (3, 19, 0):
        raise RuntimeError("default gram has wrong signature")
    return tuple(tuple(row) for row in g)


@dataclass(frozen=True)
class H2Lattice:
    """H^2 of the Hilbert scheme of n points, n >= 1; n = 1 has no delta."""

    n: int
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")
        g = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        if any(len(row) != len(g) for row in g):
            raise ValueError("gram must be square")
        for i in range(len(g)):
            for j in range(len(g)):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram must be symmetric")
        if linalg.det([list(r) for r in g]) == 0:
            raise ValueError("gram must be nondegenerate")
        object.__setattr__(self, "gram", g)

    @property
    def dim_v(self) -> int:
        return len(self.gram)

    @property
    def has_delta(self) -> bool:
        return self.n >= 2

    @property
    def total_dim(self) -> int:
        return self.dim_v + (1 if self.has_delta else 0)

    @property
    def delta_norm(self) -> Fraction:
        return Fraction(-2 * (self.n - 1))

    def full_gram(self) -> list[list[Fraction]]:
        d = self.dim_v
        if not self.has_delta:
            return [list(row) for row in self.gram]
        g = [list(row) + [Fraction(0)] for row in self.gram]
        g.append([Fraction(0)] * d + [self.delta_norm])
        return g


def k3_lattice(n: int, gram=None) -> H2Lattice:
    return H2Lattice(n, tuple(tuple(row) for row in (gram if gram is not None else default_k3_gram())))


@dataclass(frozen=True)
class H2Class:
    """A class v + delta_coeff * delta, v in coordinates of the surface part."""

    v: tuple[Fraction, ...]
    delta: Fraction

    @classmethod
    def make(cls, v, delta=0) -> "H2Class":
        return cls(tuple(Fraction(x) for x in v), Fraction(delta))


def delta_class(lat: H2Lattice) -> H2Class:
    if not lat.has_delta:
        raise ValueError("n = 1 has no exceptional class")
    return H2Class.make((0,) * lat.dim_v, 1)


def basis_class(lat: H2Lattice, i: int) -> H2Class:
    v = [0] * lat.dim_v
    v[i] = 1
    return H2Class.make(v)


def _check_member(lat: H2Lattice, x: H2Class) -> None:
    if len(x.v) != lat.dim_v:
        raise ValueError("class has wrong surface dimension")
    if not lat.has_delta and x.delta != 0:
        raise ValueError("n = 1 classes cannot have a delta component")


def coords(lat: H2Lattice, x: H2Class) -> list[Fraction]:
    _check_member(lat, x)
    return list(x.v) + ([x.delta] if lat.has_delta else [])


def class_from_coords(lat: H2Lattice, c) -> H2Class:
    if len(c) != lat.total_dim:
        raise ValueError("coordinate length mismatch")
    if lat.has_delta:
        return H2Class.make(c[:-1], c[-1])
    return H2Class.make(c, 0)


def bb_pair(lat: H2Lattice, x: H2Class, y: H2Class) -> Fraction:
    _check_member(lat, x)
    _check_member(lat, y)
    g = lat.gram
    d = lat.dim_v
    val = sum(x.v[i] * g[i][j] * y.v[j] for i in range(d) for j in range(d) if g[i][j] != 0)
    return Fraction(val) + x.delta * y.delta * lat.delta_norm


def q_norm(lat: H2Lattice, x: H2Class) -> Fraction:
    return bb_pair(lat, x, x)


def pullback(src: H2Lattice, dst: H2Lattice, x: H2Class) -> H2Class:
    """Pull a class back along the rational map from the dst Hilbert scheme.

    Defined when dst.n divides src.n with triangular quotient: identity on
    the surface part, delta_n -> (n/l) delta_l for l >= 2 and delta_n -> 0
    for l = 1.
    """
    if src.gram != dst.gram:
        raise ValueError("lattices must share the surface gram")
    n, l = src.n, dst.n
    if n % l != 0:
        raise ValueError(f"{l} does not divide {n}")
    t = n // l
    ok, _ = is_triangular(t)
    if not ok:
        raise ValueError(f"quotient {t} = {n}/{l} is not triangular")
    _check_member(src, x)
    if not dst.has_delta:
        return H2Class.make(x.v, 0)
    return H2Class.make(x.v, x.delta * Fraction(n, l))


def obstruction_coefficient(n: int, l: int) -> Fraction:
    """Coefficient on the exceptional square after pulling back the BB dual.

    c(n, l) = 1/(2(l-1)) - (n/l)/(2(n-1)); zero iff n = l.  Requires l >= 2,
    l | n and n/l triangular (the existence conditions for the map).
    """
    if not (isinstance(n, int) and isinstance(l, int)):
        raise ValueError("n and l must be integers")
    if l < 2 or n < l:
        raise ValueError("need 2 <= l <= n")
    if n % l != 0:
        raise ValueError(f"{l} does not divide {n}")
    t = n // l
    ok, _ = is_triangular(t)
    if not ok:
        raise ValueError(f"quotient {t} is not triangular")
    if t != 1:
        # weaker redundant check: the two delta norms cannot agree under the
        # scaling unless t = 1; provably never fires
        assert n - 1 != t * (l - 1)
    return Fraction(1, 2 * (l - 1)) - Fraction(t, 2 * (n - 1))


@dataclass(frozen=True)
class Sym2Tensor:
    """Symmetric 2-tensor in coordinates, tagged covariant or contravariant."""

    entries: tuple[tuple[Fraction, ...], ...]
    covariant: bool

    def __post_init__(self):
        e = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if any(len(row) != len(e) for row in e):
            raise ValueError("tensor must be square")
        for i in range(len(e)):
            for j in range(i):
                if e[i][j] != e[j][i]:
                    raise ValueError("tensor must be symmetric")
        object.__setattr__(self, "entries", e)

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def bb_form_tensor(lat: H2Lattice) -> Sym2Tensor:
    return Sym2Tensor(tuple(tuple(r) for r in lat.full_gram()), covariant=True)


def bb_inverse_tensor(lat: H2Lattice) -> Sym2Tensor:
    inv = linalg.inverse(lat.full_gram())
    return Sym2Tensor(tuple(tuple(r) for r in inv), covariant=False)


def delta_squared_tensor(lat: H2Lattice) -> Sym2Tensor:
    """d tensor d for the delta-coordinate functional d (covariant)."""
    if not lat.has_delta:
        raise ValueError("n = 1 has no exceptional class")
    size = lat.total_dim
    e = [[Fraction(0)] * size for _ in range(size)]
    e[size - 1][size - 1] = Fraction(1)
    return Sym2Tensor(tuple(tuple(r) for r in e), covariant=True)


def transported_bb_tensor(src: H2Lattice, dst: H2Lattice) -> Sym2Tensor:
    """The BB dual tensor of src transported to dst coordinates.

    Surface block unchanged; the coefficient -1/(2(n-1)) on the exceptional
    square is carried through the exceptional scaling delta_n -> (n/l)
    delta_l, picking up one factor n/l.
"""
    if src.gram != dst.gram:
        raise ValueError("lattices must share the surface gram")
    if not (src.has_delta and dst.has_delta):
        raise ValueError("both lattices need an exceptional class")
    n, l = src.n, dst.n
    if n % l != 0 or not is_triangular(n // l)[0]:
        raise ValueError("transport needs l | n with triangular quotient")
    inv = linalg.inverse([list(r) for r in src.gram])
    size = dst.total_dim
    out = [[Fraction(0)] * size for _ in range(size)]
    for i in range(dst.dim_v):
        for j in range(dst.dim_v):
            out[i][j] = inv[i][j]
    out[size - 1][size - 1] = Fraction(n, l) * Fraction(-1, 2 * (n - 1))
    return Sym2Tensor(tuple(tuple(r) for r in out), covariant=False)


def obstruction_coefficient_from_tensors(src: H2Lattice, dst: H2Lattice) -> Fraction:
    """Independent route to c(n, l): transported BB dual minus the target BB dual.

    The surface blocks must cancel exactly (checked), leaving a pure
    exceptional-square coefficient.
    """
    t = transported_bb_tensor(src, dst)
    b = bb_inverse_tensor(dst)
    size = t.size
    diff = [[t.entries[i][j] - b.entries[i][j] for j in range(size)] for i in range(size)]
    for i in range(size):
        for j in range(size):
            if (i, j) != (size - 1, size - 1) and diff[i][j] != 0:
                raise RuntimeError("surface block failed to cancel in the transport")
    return diff[size - 1][size - 1]


@dataclass(frozen=True)
class PeriodTriple:
    """Three pairwise BB-orthogonal classes of positive norm."""

    lattice: H2Lattice
    w: tuple[H2Class, H2Class, H2Class]

    def __post_init__(self):
        if len(self.w) != 3:
            raise ValueError("need exactly three classes")
        for i in range(3):
            if q_norm(self.lattice, self.w[i]) <= 0:
                raise ValueError("degenerate period triple: nonpositive norm")
            for j in range(i + 1, 3):
                if bb_pair(self.lattice, self.w[i], self.w[j]) != 0:
                    raise ValueError("degenerate period triple: not orthogonal")

    @property
    def has_delta_component(self) -> bool:
        return any(x.delta != 0 for x in self.w)

    def coord_vectors(self) -> list[list[Fraction]]:
        return [coords(self.lattice, x) for x in self.w]


def su2_generators(lat: H2Lattice, triple: PeriodTriple):
    """Three BB-skew operators generating the rotation action of the triple."""
    if triple.lattice != lat:
        raise ValueError("triple belongs to a different lattice")
    g = lat.full_gram()
    ws = triple.coord_vectors()
    gws = [linalg.mat_vec(g, w) for w in ws]
    size = lat.total_dim
    ops = []
    for a in range(3):
        b, c = (a + 1) % 3, (a + 2) % 3
        wb, wc, gb, gc = ws[b], ws[c], gws[b], gws[c]
        ops.append([[wc[i] * gb[j] - wb[i] * gc[j] for j in range(size)] for i in range(size)])
    return tuple(ops)


def _integer_scaled(m) -> list[list[int]]:
    dens = [Fraction(x).denominator for row in m for x in row]
    s = lcm(*dens) if dens else 1
    return [[int(Fraction(x) * s) for x in row] for row in m]


def _derivation(op, tensor_rows, covariant: bool):
    if covariant:
        lt = linalg.mat_mul(linalg.transpose(op), tensor_rows)
        tl = linalg.mat_mul(tensor_rows, op)
        return linalg.mat_scale(linalg.mat_add(lt, tl), -1)
    lt = linalg.mat_mul(op, tensor_rows)
    tl = linalg.mat_mul(tensor_rows, linalg.transpose(op))
    return linalg.mat_add(lt, tl)


def is_su2_invariant(lat: H2Lattice, tensor: Sym2Tensor, triple: PeriodTriple) -> bool:
    """All three rotation derivations vanish on the tensor."""
    if tensor.size != lat.total_dim:
        raise ValueError("tensor size mismatch")
    t = _integer_scaled(tensor.rows())
    for op in su2_generators(lat, triple):
        d = _derivation(_integer_scaled(op), t, tensor.covariant)
        if not linalg.is_zero_matrix(d):
            return False
    return True


def _sym_upper(m) -> list:
    size = len(m)
    return [m[i][j] for i in range(size) for j in range(i, size)]


def orbit_dimension_d2(lat: H2Lattice, triple: PeriodTriple) -> int:
    """Dimension of the rotation module generated by d^2 inside Sym^2(H^2)*.

    Exact saturation: 1 when the triple is orthogonal to delta, and
    C(dim V0 + 1, 2) - 1 = 9 otherwise, where V0 is the degree-1 module of d
    (the span of d^2 picks out only a line inside the two-dimensional trivial
    isotypic part of Sym^2 V0, hence one less than the full symmetric
    square).
    """
    t0 = _integer_scaled(delta_squared_tensor(lat).rows())
    ops = [_integer_scaled(op) for op in su2_generators(lat, triple)]
    size = lat.total_dim
    ech = linalg.Echelon(size * (size + 1) // 2)
    frontier = []
    if ech.add(_sym_upper(t0)):
        frontier.append(t0)
    while frontier:
        grown = []
        for t in frontier:
            for op in ops:
                u = _derivation(op, t, covariant=True)
                if ech.add(_sym_upper(u)):
                    grown.append(u)
        frontier = grown
    return ech.rank


def delta_module_dimension(lat: H2Lattice, triple: PeriodTriple) -> int:
    """Dimension of the rotation module generated by the functional d."""
    if not lat.has_delta:
        raise ValueError("n = 1 has no exceptional class")
    size = lat.total_dim
    d = [0] * size
    d[size - 1] = 1
    ops = [_integer_scaled(op) for op in su2_generators(lat, triple)]
    ech = linalg.Echelon(size)
    frontier = []
    if ech.add(d):
        frontier.append(d)
    while frontier:
        grown = []
        for phi in frontier:
            for op in ops:
                image = linalg.vec_mat(phi, op)  # phi o L, covariant action
                if ech.add(image):
                    grown.append(image)
        frontier = grown
    return ech.rank


def h4_obstruction(lat: H2Lattice, triple: PeriodTriple) -> bool:
    """Whether f = B + 2(n-1) d^2 fails to be invariant under the triple.

    Requires n triangular >= 3 (the punctual candidate exists only there)
    and a triple with nonzero projection of the delta functional onto the
    span, i.e. some w_a with a delta component.
    """
    n = lat.n
    ok, _ = is_triangular(n)
    if not ok or n < 3:
        raise ValueError(f"n = {n} is not a triangular number >= 3")
    if not triple.has_delta_component:
        raise ValueError("period triple is orthogonal to the exceptional class; "
                         "the precondition proj(delta-dual) != 0 fails")
    size = lat.total_dim
    f = lat.full_gram()
    f[size - 1][size - 1] += Fraction(2 * (n - 1))
    tensor = Sym2Tensor(tuple(tuple(r) for r in f), covariant=True)
    # by construction f(delta, delta) = -2(n-1) + 2(n-1) = 0
    assert tensor.entries[size - 1][size - 1] == 0
    return not is_su2_invariant(lat, tensor, triple)


@lru_cache(maxsize=None)
def _positive_basis(lat: H2Lattice) -> tuple[tuple[Fraction, ...], ...]:
    p, diag = linalg.congruence_diagonalize([list(r) for r in lat.gram])
    cols = [[p[i][j] for i in range(lat.dim_v)] for j in range(lat.dim_v) if diag[j] > 0]
    if len(cols) < 3:
        raise ValueError("surface gram has no positive 3-space")
    return tuple(tuple(c) for c in cols[:3])


def random_period_triple(lat: H2Lattice, rng: random.Random,
                         with_delta: bool = True) -> PeriodTriple:
    """Deterministic-in-seed random valid triple.

    Random rational mixing of an exact positive basis plus integer noise,
    repaired to positive norm by scaling, then BB Gram-Schmidt (exact).  If
    with_delta, delta is mixed into w1 with a scale keeping the norm
    positive, so the triple has a delta component; otherwise the triple
    stays inside the surface part.
    """
    basis = _positive_basis(lat)
    dim = lat.dim_v
    for _ in range(256):
        vs = []
        ok = True
        for _ in range(3):
            mix = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in basis]
            v = [sum(m * b[i] for m, b in zip(mix, basis)) for i in range(dim)]
            noise = [Fraction(rng.randint(-1, 1)) for _ in range(dim)]
            if all(x == 0 for x in v):
                ok = False
                break
            cls = None
            scale = 1
            while scale <= 1 << 24:
                w = H2Class.make([scale * a + z for a, z in zip(v, noise)], 0)
                if q_norm(lat, w) > 0:
                    cls = w
                    break
                scale *= 2
            if cls is None:
                ok = False
                break
            vs.append(cls)
        if not ok:
            continue
        # exact Gram-Schmidt; reject as soon as a reduced vector loses
        # positivity, so every divisor norm below is already checked > 0
        ws: list[H2Class] = []
        for w in vs:
            for u in ws:
                coeff = bb_pair(lat, u, w) / q_norm(lat, u)
                w = H2Class.make([a - coeff * b for a, b in zip(w.v, u.v)],
                                 w.delta - coeff * u.delta)
            if q_norm(lat, w) <= 0:
                break
            ws.append(w)
        if len(ws) < 3:
            continue
        if with_delta:
            if not lat.has_delta:
                raise ValueError("n = 1 has no exceptional class")
            scale = 1
            while scale * scale * q_norm(lat, ws[0]) <= 2 * (lat.n - 1):
                scale *= 2
            ws[0] = H2Class.make([scale * a for a in ws[0].v], 1)
        return PeriodTriple(lat, (ws[0], ws[1], ws[2]))
    raise RuntimeError("failed to draw a valid period triple")


@dataclass(frozen=True)
class CandidateCertificate:
    diagram: YoungDiagram
    kind: str            # "improper" | "simple" | "mixed"
    status: str          # "whole-space" | "obstructed" | "flagged" | "not-obstructed"
    method: str | None   # "pullback-coefficient" | "degree-4-functional"
    coefficient: Fraction | None
    detail: str


@dataclass(frozen=True)
class CertificationReport:
    n: int
    seed: int
    verdict: str         # "certified" | "inconclusive"
    certificates: tuple[CandidateCertificate, ...]


def certify_no_trianalytic(n: int, gram=None, seed: int = 0) -> CertificationReport:
    """Obstruct every proper simple trianalytic candidate on n points.

    Candidates with equal parts of size > 1 come from a smaller Hilbert
    scheme: obstructed by a nonzero pullback coefficient (l >= 2) or by the
    non-invariance of the degree-4 functional (l = 1, seeded period triple).
    Mixed-part candidates are product-type and only flagged.  The verdict is
    "certified" iff every proper simple candidate is obstructed; the random
    seed affects only the choice of period triples, never the verdict.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    certificates = []
    for audit in trianalytic_candidates(n):
        if not audit.survives:
            continue
        d = audit.diagram
        values = set(d.parts)
        if values == {1}:
            certificates.append(CandidateCertificate(
                diagram=d, kind="improper", status="whole-space", method=None,
                coefficient=None,
                detail="all parts 1: the unpinned shape is the whole space, not a proper subvariety",
            ))
        elif len(values) == 1:
            l = d.length
            if l >= 2:
                c = obstruction_coefficient(n, l)
                status = "obstructed" if c != 0 else "not-obstructed"
                certificates.append(CandidateCertificate(
                    diagram=d, kind="simple", status=status,
                    method="pullback-coefficient", coefficient=c,
                    detail=(f"pullback of the BB dual along the map from {l} points: "
                            f"coefficient 1/(2*{l - 1}) - {n // l}/(2*{n - 1}) = {c} "
                            f"on the exceptional square"),
                ))
            else:
                lat = k3_lattice(n, gram)
                triple = random_period_triple(lat, rng, with_delta=True)
                obstructed = h4_obstruction(lat, triple)
                verb = "is not" if obstructed else "is"
                certificates.append(CandidateCertificate(
                    diagram=d, kind="simple",
                    status="obstructed" if obstructed else "not-obstructed",
                    method="degree-4-functional", coefficient=None,
                    detail=(f"f = B + 2*{n - 1}*d^2 (with f(delta,delta) = 0) {verb} "
                            f"invariant under the rotations of a period triple with a "
                            f"delta component (seed={seed})"),
                ))
        else:
            certificates.append(CandidateCertificate(
                diagram=d, kind="mixed", status="flagged", method=None,
                coefficient=None,
                detail="mixed part sizes: product-type candidate, flagged, not certified here",
            ))
    simple = [c for c in certificates if c.kind == "simple"]
    verdict = "certified" if all(c.status == "obstructed" for c in simple) else "inconclusive"
    return CertificationReport(n=n, seed=seed, verdict=verdict,
                               certificates=tuple(certificates))

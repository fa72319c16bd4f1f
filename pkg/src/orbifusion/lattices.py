"""Exact lattices glued from codes over the doubled hexagonal block.

Every lattice here lives in l copies of the rank-2 ambient block with Gram
[[4, -2], [-2, 4]] (the doubled hexagonal lattice spanned by b1, b2).  Ambient
coordinates are stored as integers scaled by 6, so that all the dual cosets
(halves from the F4 direction, thirds from the F3 direction) stay integral:
a stored row v represents the vector (v/6) . (b1, b2, b1, b2, ...), and

    <u, v> = u M v^T / 36,   M = blockdiag([[4,-2],[-2,4]], ... l times).

Bases are kept in Hermite normal form, which makes equality, determinants and
membership checks cheap and deterministic.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import GuardError, NotFound, ParseError, PreconditionError
from . import codes
from .codes import F3, F4, LinearCode

MAX_ENUM_RANK = 12

# Scaled (x6) representatives of the twelve dual-block cosets, one block.
# F4 index i picks the half-vector part, F3 index j the third-vector part.
_HALF_REP = {0: (0, 0), 1: (0, 3), 2: (-3, -3), 3: (3, 0)}   # 0, b2/2, b0/2, b1/2
_THIRD_REP = {0: (0, 0), 1: (-2, 2), 2: (2, -2)}             # 0, (-b1+b2)/3, (b1-b2)/3


def coset_vector(i: int, j: int, ell: int = 1, pos: int = 0) -> tuple:
    """Standard representative of the (i, j) dual-block coset at one position."""
    if not (0 <= i < 4 and 0 <= j < 3):
        raise ParseError("coset_vector expects i in F4, j in F3")
    h, t = _HALF_REP[i], _THIRD_REP[j]
    out = [0] * (2 * ell)
    out[2 * pos] = h[0] + t[0]
    out[2 * pos + 1] = h[1] + t[1]
    return tuple(out)


def pair_vector(lam, delta) -> tuple:
    """Representative with block i from the F4 word lam and j from the F3 word delta."""
    if len(lam) != len(delta):
        raise PreconditionError("length mismatch")
    out = []
    for i, j in zip(lam, delta):
        h, t = _HALF_REP[i], _THIRD_REP[j]
        out.append(h[0] + t[0])
        out.append(h[1] + t[1])
    return tuple(out)


def inner(u, v) -> Fraction:
    """Exact inner product of two scaled coordinate rows."""
    assert len(u) == len(v) and len(u) % 2 == 0
    acc = 0
    for k in range(0, len(u), 2):
        a1, a2 = u[k], u[k + 1]
        b1, b2 = v[k], v[k + 1]
        acc += 4 * a1 * b1 + 4 * a2 * b2 - 2 * a1 * b2 - 2 * a2 * b1
    return Fraction(acc, 36)


def norm(u) -> Fraction:
    return inner(u, u)


def _hnf(rows, n):
    """Hermite normal form basis (upper triangular, positive pivots) of the
    subgroup of Z^n generated by the given rows.  Requires full rank."""
    mat = [list(r) for r in rows if any(r)]
    basis = []
    for col in range(n):
        while True:
            live = [r for r in mat if r[col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            for r in live[1:]:
                q = r[col] // p[col]
                if q:
                    for j in range(n):
                        r[j] -= q * p[j]
        live = [r for r in mat if r[col] != 0]
        if not live:
            raise PreconditionError("generators do not have full rank")
        p = live[0]
        mat = [r for r in mat if r is not p and any(r)]
        if p[col] < 0:
            p = [-x for x in p]
        basis.append(p)
    # canonical reduction of entries above each pivot
    for i in range(n):
        d = basis[i][i]
        for k in range(i):
            q = basis[k][i] // d
            if q:
                for j in range(n):
                    basis[k][j] -= q * basis[i][j]
    return [tuple(r) for r in basis]


class LatticeBasis:
    """Full-rank sublattice of the scaled ambient, with exact Gram data."""

    def __init__(self, ell, rows):
        self.ell = ell
        self.rank = 2 * ell
        self.basis = tuple(_hnf(rows, self.rank))
        self._gram = None

    @property
    def gram(self):
        if self._gram is None:
            b = self.basis
            self._gram = tuple(tuple(inner(u, v) for v in b) for u in b)
        return self._gram

    def det_basis(self) -> int:
        d = 1
        for i in range(self.rank):
            d *= self.basis[i][i]
        return d

    def det_gram(self) -> Fraction:
        # det(B M B^T / 36) = det(B)^2 12^l / 36^(2l)
        return Fraction(self.det_basis() ** 2 * 12 ** self.ell, 36 ** self.rank)

    def coords_of(self, v):
        """Rational coordinates t with t . basis = v (forward substitution)."""
        t = [Fraction(0)] * self.rank
        v = list(v)
        for j in range(self.rank):
            acc = sum(t[i] * self.basis[i][j] for i in range(j))
            t[j] = Fraction(v[j] - acc, self.basis[j][j])
        return t

    def contains(self, v) -> bool:
        return all(t.denominator == 1 for t in self.coords_of(v))

    def __eq__(self, other):
        return (isinstance(other, LatticeBasis)
                and self.ell == other.ell and self.basis == other.basis)

    def __repr__(self):
        return f"LatticeBasis(ell={self.ell}, rank={self.rank}, det={self.det_gram()})"


def _lift_f4_rows(code: LinearCode):
    """Z-generators of the half-vector layer of an F4 code (row and w*row)."""
    rows = []
    zero = (0,) * code.length
    for g in code.gens:
        for s in (1, 2):
            word = codes.vec_scale(F4, s, g)
            rows.append(pair_vector(word, zero))
    return rows


def _lift_f3_rows(code: LinearCode):
    zero = (0,) * code.length
    return [pair_vector(zero, g) for g in code.gens]


def _base_rows(ell):
    rows = []
    for k in range(2 * ell):
        r = [0] * (2 * ell)
        r[k] = 6
        rows.append(tuple(r))
    return rows


def _span_lattice(c4: LinearCode, c3: LinearCode) -> LatticeBasis:
    ell = c4.length
    rows = _base_rows(ell) + _lift_f4_rows(c4) + _lift_f3_rows(c3)
    return LatticeBasis(ell, rows)


def build_lattice(C: LinearCode, D: LinearCode) -> LatticeBasis:
    """The even lattice glued from a self-orthogonal F4/F3 code pair."""
    if C.field != F4 or D.field != F3:
        raise PreconditionError("build_lattice expects (F4 code, F3 code)")
    if C.length != D.length:
        raise PreconditionError("codes must have equal length")
    if not codes.is_self_orthogonal(C) or not codes.is_self_orthogonal(D):
        raise PreconditionError("codes must be self-orthogonal")
    return _span_lattice(C, D)


def is_even(b: LatticeBasis) -> bool:
    """All basis norms even integers and all pairings integral."""
    g = b.gram
    for i in range(b.rank):
        if g[i][i].denominator != 1 or g[i][i].numerator % 2:
            return False
        for j in range(i):
            if g[i][j].denominator != 1:
                return False
    return True


def verify_dual(C: LinearCode, D: LinearCode) -> dict:
    """Check that the dual-code lattice is the dual lattice.

    Confirms integral pairing between the two bases, membership of the primal
    in the dual-code lattice, and that the index equals det(gram).
    """
    lat = build_lattice(C, D)
    dual = _span_lattice(codes.dual_code(C), codes.dual_code(D))
    pairs_integral = all(
        inner(u, v).denominator == 1 for u in lat.basis for v in dual.basis)
    membership_ok = all(dual.contains(u) for u in lat.basis)
    index = Fraction(lat.det_basis(), dual.det_basis())
    det = lat.det_gram()
    report = {
        "pairsIntegral": pairs_integral,
        "membership": membership_ok,
        "index": index,
        "detGram": det,
        "indexMatchesDet": index == det,
    }
    report["passed"] = pairs_integral and membership_ok and report["indexMatchesDet"]
    return report


# ---------------------------------------------------------------------------
# Eisenstein integers and the hexacode lattice
# ---------------------------------------------------------------------------

class EisensteinInt:
    """a + b*xi with xi a primitive cube root of unity (xi^2 = -1 - xi)."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = int(a)
        self.b = int(b)

    def __add__(self, other):
        return EisensteinInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, int):
            return EisensteinInt(self.a * other, self.b * other)
        a, b, c, d = self.a, self.b, other.a, other.b
        # (a + b xi)(c + d xi) = ac - bd + (ad + bc - bd) xi
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, EisensteinInt) and (self.a, self.b) == (other.a, other.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"EisensteinInt({self.a}, {self.b})"

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b


XI = EisensteinInt(0, 1)


def reduce_mod2(z: EisensteinInt) -> int:
    """Reduction Z[xi] -> Z[xi]/2Z[xi] in the F4 encoding, with xi -> w."""
    return (z.a % 2) | ((z.b % 2) << 1)


_F4_LIFT = {0: EisensteinInt(0, 0), 1: EisensteinInt(1, 0),
            2: EisensteinInt(0, 1), 3: EisensteinInt(1, 1)}


def f4_lift(sym: int) -> EisensteinInt:
    return _F4_LIFT[sym]


def _eisenstein_row(entries):
    """Scaled ambient coordinates of an Eisenstein vector: a + b*xi -> (3a, 3b).

    This embedding carries the real part of the standard Hermitian form, so
    norms come out as sums of Eisenstein norms.
    """
    out = []
    for z in entries:
        out.append(3 * z.a)
        out.append(3 * z.b)
    return tuple(out)


def k12() -> LatticeBasis:
    """The rank-12 even lattice of Eisenstein vectors reducing into the hexacode."""
    hexa = codes.builtin("hexacode")
    rows = _base_rows(6)
    for g in hexa.gens:
        lifted = [f4_lift(s) for s in g]
        rows.append(_eisenstein_row(lifted))
        rows.append(_eisenstein_row([XI * z for z in lifted]))
    return LatticeBasis(6, rows)


# ---------------------------------------------------------------------------
# Bounded enumeration (exact Fincke-Pohst)
# ---------------------------------------------------------------------------

def _solve_coords(rows, v):
    """Rational t with t . rows = v, by Gaussian elimination over Q."""
    n = len(rows)
    # transpose so we solve A x = v with columns = rows
    a = [[Fraction(rows[i][j]) for i in range(n)] for j in range(n)]
    rhs = [Fraction(x) for x in v]
    perm = list(range(n))
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        rhs[col] *= inv
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                rhs[r] -= f * rhs[col]
    del perm
    return rhs


def _gram_schmidt(rows):
    """Exact Gram-Schmidt data (mu, squared norms) for basis rows."""
    n = len(rows)
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar2 = [Fraction(0)] * n
    proj = [[Fraction(x) for x in row] for row in rows]
    m = len(rows[0])
    for i in range(n):
        for j in range(i):
            num = inner(rows[i], rows[j])
            for k in range(j):
                num -= mu[j][k] * mu[i][k] * bstar2[k]
            mu[i][j] = num / bstar2[j]
        for j in range(i):
            f = mu[i][j]
            if f:
                pj = proj[j]
                proj[i] = [x - f * y for x, y in zip(proj[i], pj)]
        v = proj[i]
        acc = Fraction(0)
        for k in range(0, m, 2):
            a1, a2 = v[k], v[k + 1]
            acc += 4 * a1 * a1 + 4 * a2 * a2 - 4 * a1 * a2
        bstar2[i] = acc / 36
    return mu, bstar2


def _reduce_rows(rows):
    """Exact lattice reduction of the rows (enumeration preprocessing only).

    Keeps the generated lattice fixed; shortens and near-orthogonalizes the
    basis so the branch-and-bound tree stays small.
    """
    b = [list(r) for r in rows]
    n = len(b)
    delta = Fraction(3, 4)
    k = 1
    mu, bstar2 = _gram_schmidt(b)
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, bstar2 = _gram_schmidt(b)
        if bstar2[k] >= (delta - mu[k][k - 1] ** 2) * bstar2[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, bstar2 = _gram_schmidt(b)
            k = max(k - 1, 1)
    return [tuple(r) for r in b]


def _cholesky(gram):
    """Rational quadratic-completion data: Q(x) = sum_i d[i] (x_i + sum_{j>i} m[i][j] x_j)^2."""
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        for k in range(i):
            qk = q[k]
            f = qk[i]
            if f:
                dk = qk[k]
                for j in range(i, n):
                    q[i][j] -= dk * f * qk[j]
        d = q[i][i]
        if d <= 0:
            raise PreconditionError("gram matrix not positive definite")
        for j in range(i + 1, n):
            q[i][j] /= d
    return q


def _floor_sqrt_shift(R, c):
    """floor(sqrt(R) - c) for rationals R >= 0, c; exact.

    Seeds with a float guess, then corrects against the monotone predicate
    n <= sqrt(R) - c, which is decidable exactly:
    n + c <= 0, or (n + c)^2 <= R.
    """
    g = math.floor(math.sqrt(float(R)) - float(c))

    def ok(n):
        s = n + c
        return s <= 0 or s * s <= R

    while ok(g + 1):
        g += 1
    while not ok(g):
        g -= 1
    return g


def _int_range(c, R):
    """All integers x with (x + c)^2 <= R, as an inclusive (lo, hi) pair."""
    if R < 0:
        return 0, -1
    hi = _floor_sqrt_shift(R, c)
    lo = -_floor_sqrt_shift(R, -c)
    return lo, hi


def enumerate_coset(b: LatticeBasis, shift=None, bound=Fraction(6)):
    """Yield (coords, norm) for every coset vector shift + lattice with norm <= bound.

    coords are scaled ambient coordinates; norms are exact.  The enumeration
    is a Gram-based branch and bound over the quadratic completion, entirely
    in rational arithmetic (floats only seed interval guesses, which are then
    corrected exactly).
    """
    n = b.rank
    if n > 2 * MAX_ENUM_RANK:
        raise GuardError(f"enumeration refused: rank {n} > {2 * MAX_ENUM_RANK}")
    bound = Fraction(bound)
    basis = getattr(b, "_reduced", None)
    if basis is None:
        basis = _reduce_rows(b.basis)
        b._reduced = basis
    if shift is None:
        t = [Fraction(0)] * n
        shift = (0,) * n
    else:
        t = _solve_coords(basis, shift)
    gram = [[inner(u, v) for v in basis] for u in basis]
    q = _cholesky(gram)
    xs = [0] * n

    def rec(i, remaining, acc):
        c = t[i]
        qi = q[i]
        for j in range(i + 1, n):
            xj = xs[j] + t[j]
            if xj:
                c += qi[j] * xj
        lo, hi = _int_range(c, remaining / qi[i])
        for x in range(lo, hi + 1):
            z = x + c
            term = qi[i] * z * z
            xs[i] = x
            if i == 0:
                nrm = acc + term
                coords = list(shift)
                for k in range(n):
                    xk = xs[k]
                    if xk:
                        rowk = basis[k]
                        for j in range(n):
                            coords[j] += xk * rowk[j]
                yield tuple(coords), nrm
            else:
                yield from rec(i - 1, remaining - term, acc + term)
        xs[i] = 0

    yield from rec(n - 1, bound, Fraction(0))


def min_norm_coset(b: LatticeBasis, shift=None, bound=Fraction(6)) -> Fraction:
    """Exact minimal norm over nonzero vectors of shift + lattice, within bound."""
    best = None
    for coords, nrm in enumerate_coset(b, shift, bound):
        if not any(coords):
            continue
        if best is None or nrm < best:
            best = nrm
    if best is None:
        raise NotFound(Fraction(bound))
    return best


def min_norm(b: LatticeBasis, shift=None, start_bound=Fraction(4)) -> Fraction:
    """min_norm_coset with the doubling retry protocol."""
    bound = Fraction(start_bound)
    while True:
        try:
            return min_norm_coset(b, shift, bound)
        except NotFound:
            bound *= 2


def count_by_norm(b: LatticeBasis, bound) -> dict:
    """Histogram {norm: count} of nonzero lattice vectors with norm <= bound."""
    hist = {}
    for coords, nrm in enumerate_coset(b, None, bound):
        if not any(coords):
            continue
        hist[nrm] = hist.get(nrm, 0) + 1
    return dict(sorted(hist.items()))


def export_json(b: LatticeBasis) -> dict:
    """Scaled integer basis plus the Gram matrix as numerator/denominator pairs."""
    return {
        "ell": b.ell,
        "rank": b.rank,
        "scale": 6,
        "basis": [list(row) for row in b.basis],
        "gram": [[[f.numerator, f.denominator] for f in row] for row in b.gram],
    }

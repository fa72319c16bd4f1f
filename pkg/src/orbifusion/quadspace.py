"""The F3 quadratic space carried by the 3^8 irreducible labels of the
hexacode orbifold (length 6, trivial ternary code).

All labels are simple currents there, so fusing is single-valued and the
label set is an elementary abelian 3-group.  The group coordinates

    phi: U0(a, x) -> (a, x, 0),  TW(1, a, x) -> (-a, x, 1),
         TW(2, a, x) -> (a, -x, 2)

identify it with F3^8; phi is an implementation construction and is validated
against the six closed product rules before anything downstream trusts it.
The quadratic form is

    q(U0(a,x)) = wt(a),   q(TW(i,a,x)) = wt(a) + x + 1   (mod 3),

where wt(a) mod 3 agrees with three times the lattice norm of a dual coset
representative (checked exactly against the lattice layer), and the bilinear
form is read off the fusion product as B(u,v) = 2(q(u v) - q(u) - q(v)).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import codes, lattices
from .codes import F3, F4
from .errors import PreconditionError, VerificationError
from .fusion import _fuse_labels
from .registry import TW, U0, UC, Registry, label_text, registry

DIM = 8


def context() -> Registry:
    """The fixed registry: hexacode paired with the trivial ternary code."""
    return registry(codes.builtin("hexacode"), codes.builtin("trivial:F3:6"))


def all_labels() -> list:
    return context().modules()


# ---------------------------------------------------------------------------
# Group coordinates
# ---------------------------------------------------------------------------

def _neg(v):
    return tuple((-a) % 3 for a in v)


def phi(label) -> tuple:
    """Group coordinates (v in F3^6, t, s) of a label."""
    if isinstance(label, U0):
        return label.d + (label.e, 0)
    if isinstance(label, TW) and label.s == 1:
        return _neg(label.h) + (label.e, 1)
    if isinstance(label, TW) and label.s == 2:
        return label.h + ((-label.e) % 3, 2)
    raise PreconditionError(f"not a hexacode-orbifold label: {label!r}")


def phi_inv(coord) -> object:
    v, t, s = tuple(coord[:6]), coord[6] % 3, coord[7] % 3
    if s == 0:
        return U0(v, t)
    if s == 1:
        return TW(1, _neg(v), t)
    return TW(2, v, (-t) % 3)


def coord_add(u, v):
    return tuple((a + b) % 3 for a, b in zip(u, v))


def fuse_single(a, b):
    """The single-valued product of two labels; asserts simple-current shape."""
    fv = _fuse_labels(context(), a, b)
    if len(fv.terms) != 1 or next(iter(fv.terms.values())) != 1:
        raise VerificationError(f"product of {label_text(a)} and {label_text(b)}"
                                " is not a single label")
    return next(iter(fv.terms))


def validate_phi(pairs) -> bool:
    """phi(a b) == phi(a) + phi(b) on the given label pairs, via actual fusion."""
    for a, b in pairs:
        if phi(fuse_single(a, b)) != coord_add(phi(a), phi(b)):
            return False
    return True


# ---------------------------------------------------------------------------
# The quadratic and bilinear forms
# ---------------------------------------------------------------------------

def _wt3(v) -> int:
    return sum(1 for a in v if a) % 3


def qform(label) -> int:
    if isinstance(label, U0):
        return _wt3(label.d)
    if isinstance(label, TW):
        return (_wt3(label.h) + label.e + 1) % 3
    raise PreconditionError(f"not a hexacode-orbifold label: {label!r}")


def qform_from_lattice(a) -> int:
    """3 <v, v> mod 3 for a dual-coset representative of a; the oracle that
    justifies the Hamming-weight shortcut in qform."""
    v = lattices.pair_vector((0,) * 6, a)
    val = 3 * lattices.norm(v)
    assert val.denominator == 1
    return val.numerator % 3


def verify_qform_lattice() -> bool:
    """Weight reduction == lattice computation, over all 729 dual cosets and
    a spread of alternative coset representatives."""
    reg = context()
    hexa = reg.C
    words = [w for w in hexa.codewords()[:8]]
    for a in reg.d_cosets:
        base = qform_from_lattice(a)
        if base != _wt3(a):
            return False
        for lam in words:
            v = lattices.pair_vector(lam, a)
            val = 3 * lattices.norm(v)
            if val.denominator != 1 or val.numerator % 3 != base:
                return False
    return True


def bform(u, v) -> int:
    """B(u, v) = (q(u v) - q(u) - q(v)) / 2, with 1/2 = 2 in F3."""
    return 2 * (qform(fuse_single(u, v)) - qform(u) - qform(v)) % 3


def bform_gram() -> list:
    """Gram matrix of B on the standard coordinate basis."""
    basis = [phi_inv(tuple(1 if j == i else 0 for j in range(DIM)))
             for i in range(DIM)]
    return [[bform(x, y) for y in basis] for x in basis]


def bform_coords(gram, cu, cv) -> int:
    acc = 0
    for i in range(DIM):
        if cu[i]:
            row = gram[i]
            acc += cu[i] * sum(row[j] * cv[j] for j in range(DIM))
    return acc % 3


# ---------------------------------------------------------------------------
# Type classification
# ---------------------------------------------------------------------------

def isotropic_count(m: int, plus: bool, p: int = 3) -> int:
    """Classical count of singular vectors (zero included) of a nondegenerate
    form of dimension 2m over F_p."""
    if plus:
        return p ** (2 * m - 1) + p ** m - p ** (m - 1)
    return p ** (2 * m - 1) - p ** m + p ** (m - 1)


def singular_count() -> int:
    return sum(1 for r in all_labels() if qform(r) == 0)


def classify_type() -> tuple:
    """(witt type, singular count), by brute force against the two candidates."""
    count = singular_count()
    if count == isotropic_count(DIM // 2, plus=False):
        return "minus", count
    if count == isotropic_count(DIM // 2, plus=True):
        return "plus", count
    raise VerificationError(f"singular count {count} matches neither type")


def radical_dim() -> int:
    """Dimension of the radical of B; zero means non-singular."""
    gram = bform_gram()
    return DIM - _rank3(gram)


def _rank3(rows):
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] % 3), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 if mat[rank][col] % 3 == 1 else 2
        mat[rank] = [(inv * x) % 3 for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] % 3:
                f = mat[i][col] % 3
                mat[i] = [(x - f * y) % 3 for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Minimal conformal weights
# ---------------------------------------------------------------------------

_WEIGHT_BY_Q = {0: Fraction(1), 1: Fraction(2, 3), 2: Fraction(4, 3)}


def min_weight(label) -> Fraction:
    """Minimal conformal weight of the label.

    Zero for the vacuum; otherwise determined by q: 1 for singular labels,
    2/3 for q = 1, 4/3 for q = 2.  Untwisted values are re-derived from
    exact coset minima in the lattice layer (see verify_min_weights); the
    twisted values follow from the same weight classes together with the
    twisted-sector ground energy 2/3.
    """
    reg = context()
    if label == reg.vacuum() or (isinstance(label, U0) and not any(label.d)
                                 and label.e == 0):
        return Fraction(0)
    return _WEIGHT_BY_Q[qform(label)]


def _block_minima() -> dict:
    """Minimal norms of the twelve rank-2 dual-block cosets, by enumeration."""
    base = lattices.build_lattice(codes.builtin("trivial:F4:1"),
                                  codes.builtin("trivial:F3:1"))
    mins = {}
    for i in range(4):
        for j in range(3):
            if i == 0 and j == 0:
                mins[(0, 0)] = Fraction(0)
            else:
                mins[(i, j)] = lattices.min_norm(
                    base, lattices.coset_vector(i, j), Fraction(2))
    return mins


def untwisted_coset_min_norm(a, block_minima=None) -> Fraction:
    """Exact minimal norm of the dual coset a of the hexacode lattice,
    via the product decomposition over hexacode words."""
    if block_minima is None:
        block_minima = _block_minima()
    hexa = codes.builtin("hexacode")
    best = None
    for lam in hexa.codewords():
        total = sum((block_minima[(i, j)] for i, j in zip(lam, a)),
                    Fraction(0))
        if best is None or total < best:
            best = total
    return best


def verify_min_weights(sample=None) -> bool:
    """Untwisted nonzero-coset weights match min_weight, from the lattice.

    Checks the product-decomposition minimum for every coset, and the direct
    branch-and-bound enumeration on a sample of them.
    """
    reg = context()
    blocks = _block_minima()
    lat = lattices.build_lattice(reg.C, reg.D)
    cosets = [a for a in reg.d_cosets if any(a)]
    for a in cosets:
        nrm = untwisted_coset_min_norm(a, blocks)
        if nrm / 2 != min_weight(U0(a, 0)):
            return False
    if sample is None:
        sample = [cosets[0], cosets[1], cosets[-1], cosets[len(cosets) // 2]]
    for a in sample:
        shift = lattices.pair_vector((0,) * 6, a)
        direct = lattices.min_norm(lat, shift, Fraction(4))
        if direct != untwisted_coset_min_norm(a, blocks):
            return False
    return True


# ---------------------------------------------------------------------------
# Maximal totally singular subspaces
# ---------------------------------------------------------------------------

def _span_rows(rows):
    out = []
    for coeffs in itertools.product(range(3), repeat=len(rows)):
        v = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % 3
                  for j in range(len(rows[0]) if rows else 0))
        out.append(v)
    return out


def _orthogonal_complement(gram, chosen):
    """Basis of the B-orthogonal complement of the chosen coordinate rows."""
    if not chosen:
        return [tuple(1 if j == i else 0 for j in range(DIM)) for i in range(DIM)]
    # rows of constraints: B(u, x) = 0 -> (u . gram) . x = 0
    cons = []
    for u in chosen:
        cons.append(tuple(sum(u[i] * gram[i][j] for i in range(DIM)) % 3
                          for j in range(DIM)))
    mat = [list(r) for r in cons]
    reduced, pivots = _rref3_pivots(mat)
    basis = []
    for f in range(DIM):
        if f in pivots:
            continue
        v = [0] * DIM
        v[f] = 1
        for row, p in zip(reduced, pivots):
            v[p] = (-row[f]) % 3
        basis.append(tuple(v))
    return basis


def _rref3_pivots(mat):
    mat = [list(r) for r in mat]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] % 3), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 if mat[r][col] % 3 == 1 else 2
        mat[r] = [(inv * x) % 3 for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] % 3:
                f = mat[i][col] % 3
                mat[i] = [(x - f * y) % 3 for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def _q_coord(coord) -> int:
    return qform(phi_inv(coord))


def _frame_with_values(gram, targets) -> list:
    """Greedy B-orthogonal frame whose q-values follow the target sequence."""
    chosen = []
    for want in targets:
        comp = _orthogonal_complement(gram, chosen)
        found = None
        for v in _span_rows(comp):
            if any(v) and _q_coord(v) == want % 3:
                found = v
                break
        if found is None:
            raise VerificationError("frame construction failed; form degenerate?")
        chosen.append(found)
    return chosen


def standard_isometry() -> list:
    """An 8x8 matrix M over F3 (row convention x -> x M) with q(xM) = -q(x).

    Built from two B-orthogonal frames: one arbitrary anisotropic-diagonal
    frame, one with the negated diagonal values; the map sending frame to
    frame negates q.
    """
    gram = bform_gram()
    u_frame = []
    d_values = []
    for _ in range(DIM):
        comp = _orthogonal_complement(gram, u_frame)
        found = None
        for v in _span_rows(comp):
            if any(v) and _q_coord(v) != 0:
                found = v
                break
        assert found is not None
        u_frame.append(found)
        d_values.append(_q_coord(found))
    v_frame = _frame_with_values(gram, [(-d) % 3 for d in d_values])
    m_u = _inv3([list(r) for r in u_frame])
    return _matmul3(m_u, [list(r) for r in v_frame])


def _matmul3(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            f = a[i][t] % 3
            if f:
                row = b[t]
                for j in range(m):
                    out[i][j] = (out[i][j] + f * row[j]) % 3
    return out


def _inv3(mat):
    n = len(mat)
    aug = [list(r) + [1 if j == i else 0 for j in range(n)]
           for i, r in enumerate(mat)]
    reduced, pivots = _rref3_pivots(aug)
    if pivots != list(range(n)):
        raise PreconditionError("matrix not invertible mod 3")
    return [row[n:] for row in reduced]


def apply_map(matrix, coord):
    return tuple(sum(coord[i] * matrix[i][j] for i in range(DIM)) % 3
                 for j in range(DIM))


class SEta:
    """The graph subspace {(a, eta(a))} of a q-negating linear map."""

    def __init__(self, matrix):
        self.matrix = [list(r) for r in matrix]
        _inv3(self.matrix)  # must be invertible

    def image(self, coord):
        return apply_map(self.matrix, coord)

    def basis_pairs(self):
        out = []
        for i in range(DIM):
            e = tuple(1 if j == i else 0 for j in range(DIM))
            out.append((e, self.image(e)))
        return out

    def members(self):
        for coord in itertools.product(range(3), repeat=DIM):
            yield coord, self.image(coord)


def build_s_eta(matrix) -> SEta:
    """Validate that the map negates q everywhere, then wrap its graph."""
    s = SEta(matrix)
    for coord in itertools.product(range(3), repeat=DIM):
        if (_q_coord(s.image(coord)) + _q_coord(coord)) % 3:
            raise PreconditionError("map does not negate the quadratic form")
    return s


def recover_eta(pairs) -> list:
    """Inverse of build_s_eta: read the map off a spanning set of graph pairs.

    Rejects subspaces whose first projection is degenerate (those contain an
    element of conformal weight below 2 and cannot arise here).
    """
    rows = [tuple(a) + tuple(b) for a, b in pairs]
    reduced, pivots = _rref3_pivots([list(r) for r in rows])
    if len(reduced) != DIM:
        raise PreconditionError("pairs do not span an 8-dimensional subspace")
    a_part = [r[:DIM] for r in reduced]
    b_part = [r[DIM:] for r in reduced]
    if _rank3(a_part) != DIM:
        raise PreconditionError("first projection is degenerate")
    return _matmul3(_inv3(a_part), b_part)


def s_eta_checks(s: SEta) -> dict:
    """Totally singular, minimal weight 2, and recover-inverts checks."""
    singular = True
    weights_two = True
    min_wt = None
    for coord, img in s.members():
        if not any(coord):
            continue
        if (_q_coord(coord) + _q_coord(img)) % 3:
            singular = False
        wt = min_weight(phi_inv(coord)) + min_weight(phi_inv(img))
        if min_wt is None or wt < min_wt:
            min_wt = wt
        if wt != 2:
            weights_two = False
    recovered = recover_eta(s.basis_pairs())
    return {
        "totallySingular": singular,
        "dimension": DIM,
        "minWeight": str(min_wt),
        "allPairsWeightTwo": weights_two,
        "recoverInverts": recovered == s.matrix,
    }


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

def quadspace_report() -> dict:
    witt, count = classify_type()
    hist = {}
    for r in all_labels():
        key = str(min_weight(r))
        hist[key] = hist.get(key, 0) + 1
    s = build_s_eta(standard_isometry())
    return {
        "dim": DIM,
        "singularCount": count,
        "type": witt,
        "radicalDim": radical_dim(),
        "weightHistogram": dict(sorted(hist.items())),
        "sEtaChecks": s_eta_checks(s),
    }

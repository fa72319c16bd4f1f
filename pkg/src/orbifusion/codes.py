"""Linear codes over GF(4) and GF(3), with the inner products used throughout.

GF(4) = {0, 1, w, W} is encoded as integers 0, 1, 2, 3 (two bits, addition is
XOR, conjugation is the Frobenius x -> x^2, so w and W swap).  GF(4) codes are
paired Hermitianly, x.y = sum x_i conj(y_i); GF(3) codes Euclideanly.

Codes are held in reduced row echelon form, which is unique per subspace, so
two `LinearCode` objects are equal iff they span the same code.  Coset
representatives are lexicographically minimal in their coset (field order
0 < 1 < w < W resp. 0 < 1 < 2, leftmost position most significant).
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import GuardError, ParseError, PreconditionError

F4 = "F4"
F3 = "F3"

# GF(4) multiplication under the 0,1,w,W <-> 0,1,2,3 encoding.
_F4_MUL = np.array(
    [[0, 0, 0, 0],
     [0, 1, 2, 3],
     [0, 2, 3, 1],
     [0, 3, 1, 2]], dtype=np.int64)
_F4_CONJ = np.array([0, 1, 3, 2], dtype=np.int64)

_SYMBOLS = {F4: "01wW", F3: "012"}
_FIELD_SIZE = {F4: 4, F3: 3}

MAX_ENUM_DIM = 24          # codeword enumeration guard
MAX_COSET_SPACE = 3 ** 10  # coset quotient guard


def field_size(field):
    return _FIELD_SIZE[field]


def f4_mul(a, b):
    """GF(4) product, elementwise on arrays."""
    return _F4_MUL[a, b]


def f4_conj(a):
    """GF(4) conjugation x -> x^2 (swaps w and W)."""
    return _F4_CONJ[a]


def vec_add(field, x, y):
    """Sum of two codewords (tuples) over the field."""
    if field == F4:
        return tuple(a ^ b for a, b in zip(x, y))
    return tuple((a + b) % 3 for a, b in zip(x, y))


def vec_neg(field, x):
    if field == F4:
        return tuple(x)
    return tuple((-a) % 3 for a in x)


def vec_scale(field, c, x):
    """Scalar multiple c*x."""
    if field == F4:
        return tuple(int(_F4_MUL[c, a]) for a in x)
    return tuple((c * a) % 3 for a in x)


def inner(field, x, y):
    """Hermitian (F4) or Euclidean (F3) inner product of two codewords."""
    if field == F4:
        acc = 0
        for a, b in zip(x, y):
            acc ^= int(_F4_MUL[a, _F4_CONJ[b]])
        return acc
    return sum(a * b for a, b in zip(x, y)) % 3


def weight(x):
    """Hamming weight."""
    return sum(1 for a in x if a)


def _inv(field, a):
    if field == F4:
        return {1: 1, 2: 3, 3: 2}[a]
    return {1: 1, 2: 2}[a]


def _rref(field, rows, length):
    """Reduced row echelon form over the field; returns independent rows."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(length):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = _inv(field, mat[r][col])
        mat[r] = list(vec_scale(field, inv, mat[r]))
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                c = mat[i][col]
                scaled = vec_scale(field, c, mat[r])
                mat[i] = list(vec_add(field, mat[i], vec_neg(field, scaled)))
        pivots.append(col)
        r += 1
    return [tuple(row) for row in mat[:r]], pivots


class LinearCode:
    """A length-l linear code, canonicalized to reduced row echelon form."""

    def __init__(self, field, length, rows=()):
        if field not in (F4, F3):
            raise ParseError(f"unknown field {field!r}")
        if length <= 0:
            raise ParseError("length must be positive")
        for row in rows:
            if len(row) != length:
                raise ParseError("generator row length mismatch")
            if any(not (0 <= a < _FIELD_SIZE[field]) for a in row):
                raise ParseError("symbol out of field range")
        gens, pivots = _rref(field, rows, length)
        self.field = field
        self.length = length
        self.gens = tuple(gens)
        self.dim = len(gens)
        self.pivots = tuple(pivots)

    def __eq__(self, other):
        return (isinstance(other, LinearCode)
                and self.field == other.field
                and self.length == other.length
                and self.gens == other.gens)

    def __hash__(self):
        return hash((self.field, self.length, self.gens))

    def __repr__(self):
        return f"LinearCode({self.field}, n={self.length}, k={self.dim})"

    def size(self):
        return _FIELD_SIZE[self.field] ** self.dim

    def codewords(self):
        """All codewords as tuples; guarded by MAX_ENUM_DIM."""
        if self.dim > MAX_ENUM_DIM:
            raise GuardError(
                f"codeword enumeration refused: dim {self.dim} > {MAX_ENUM_DIM}")
        q = _FIELD_SIZE[self.field]
        words = [tuple([0] * self.length)]
        for g in self.gens:
            mults = [vec_scale(self.field, c, g) for c in range(q)]
            words = [vec_add(self.field, w, m) for w in words for m in mults]
        return words

    def contains(self, v):
        """Membership test by reduction against the echelon generators."""
        v = list(v)
        for row, p in zip(self.gens, self.pivots):
            if v[p]:
                scaled = vec_scale(self.field, v[p], row)
                v = list(vec_add(self.field, tuple(v), vec_neg(self.field, scaled)))
        return not any(v)

    def reduce(self, v):
        """Canonical coset invariant: v with pivot columns cleared."""
        v = list(v)
        for row, p in zip(self.gens, self.pivots):
            if v[p]:
                scaled = vec_scale(self.field, v[p], row)
                v = list(vec_add(self.field, tuple(v), vec_neg(self.field, scaled)))
        return tuple(v)


def dual_code(c: LinearCode) -> LinearCode:
    """Dual under the field's designated inner product.

    Hermitian duality over F4 is Euclidean duality of the conjugated
    generators, so the kernel is computed over the field directly.
    """
    field, n = c.field, c.length
    if c.dim == 0:
        rows = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        return LinearCode(field, n, rows)
    # Solve G* x = 0 where G* is the (conjugated) generator matrix.
    if field == F4:
        mat = [tuple(int(_F4_CONJ[a]) for a in row) for row in c.gens]
    else:
        mat = list(c.gens)
    mat, pivots = _rref(field, mat, n)
    free = [j for j in range(n) if j not in pivots]
    rows = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, p in zip(mat, pivots):
            # pivot entry is 1, so x_p = -row[f]
            v[p] = vec_neg(field, (row[f],))[0]
        rows.append(tuple(v))
    return LinearCode(field, n, rows)


def is_self_orthogonal(c: LinearCode) -> bool:
    return all(inner(c.field, g, h) == 0 for g in c.gens for h in c.gens)


def is_self_dual(c: LinearCode) -> bool:
    return is_self_orthogonal(c) and 2 * c.dim == c.length


class WeightEnumerator:
    """Homogeneous weight enumerator, stored as coefficients of X^(l-w) Y^w."""

    def __init__(self, length, coeffs):
        assert len(coeffs) == length + 1
        self.length = length
        self.coeffs = tuple(coeffs)

    def __eq__(self, other):
        return (isinstance(other, WeightEnumerator)
                and self.length == other.length and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"WeightEnumerator({self.length}, {list(self.coeffs)})"

    def __call__(self, x, y):
        return sum(a * x ** (self.length - w) * y ** w
                   for w, a in enumerate(self.coeffs))


def weight_enumerator(c: LinearCode) -> WeightEnumerator:
    """Hamming weight distribution of the code, by full enumeration."""
    coeffs = [0] * (c.length + 1)
    for word in c.codewords():
        coeffs[weight(word)] += 1
    return WeightEnumerator(c.length, coeffs)


def w_prime(c: LinearCode) -> WeightEnumerator:
    """(W_C - X^l)/3, the enumerator of nonzero words counted per scalar orbit.

    Requires a self-orthogonal F4 code; those are closed under scaling by w,
    which is what makes every coefficient divisible by 3.
    """
    if c.field != F4:
        raise PreconditionError("w_prime is defined for F4 codes")
    if not is_self_orthogonal(c):
        raise PreconditionError("w_prime requires a self-orthogonal code")
    we = weight_enumerator(c)
    coeffs = list(we.coeffs)
    coeffs[0] -= 1
    out = []
    for a in coeffs:
        q, r = divmod(a, 3)
        if r:
            raise PreconditionError("weight distribution not closed under scaling")
        out.append(q)
    return WeightEnumerator(c.length, out)


def w_congruence(length: int, eps: int) -> WeightEnumerator:
    """Weight enumerator of {x in F3^l : sum x_i = eps mod 3}.

    Computed by a (sum mod 3, weight) dynamic program; the brute-force
    3^l enumeration is kept in the tests as an oracle.
    """
    if length > MAX_ENUM_DIM:
        raise GuardError(f"w_congruence refused: length {length} > {MAX_ENUM_DIM}")
    eps %= 3
    counts = [[0] * (length + 1) for _ in range(3)]
    counts[0][0] = 1
    for _ in range(length):
        nxt = [[0] * (length + 1) for _ in range(3)]
        for s in range(3):
            for w in range(length + 1):
                n = counts[s][w]
                if not n:
                    continue
                nxt[s][w] += n
                if w + 1 <= length:
                    nxt[(s + 1) % 3][w + 1] += n
                    nxt[(s + 2) % 3][w + 1] += n
        counts = nxt
    return WeightEnumerator(length, counts[eps])


# ---------------------------------------------------------------------------
# Cosets and tau orbits
# ---------------------------------------------------------------------------

def coset_min(c: LinearCode, v) -> tuple:
    """Lexicographically minimal element of v + C (exhaustive over C)."""
    return min(vec_add(c.field, tuple(v), w) for w in c.codewords())


def coset_reps(c: LinearCode) -> list:
    """Canonical representatives of C^perp / C, sorted lexicographically."""
    if not is_self_orthogonal(c):
        raise PreconditionError("coset_reps requires a self-orthogonal code")
    dual = dual_code(c)
    q = _FIELD_SIZE[c.field]
    n_cosets = q ** (dual.dim - c.dim)
    if n_cosets > MAX_COSET_SPACE:
        raise GuardError(
            f"coset enumeration refused: {n_cosets} cosets > {MAX_COSET_SPACE}")
    # Extend a basis of C to a basis of C^perp; the complement enumerates
    # the quotient, each element then canonicalized by full coset scan.
    rows = list(c.gens)
    complement = []
    for g in dual.gens:
        trial, _ = _rref(c.field, rows + [g], c.length)
        if len(trial) > len(rows):
            rows = trial
            complement.append(g)
    assert len(complement) == dual.dim - c.dim
    words = c.codewords()
    reps = set()
    for coeffs in itertools.product(range(q), repeat=len(complement)):
        v = tuple([0] * c.length)
        for ci, g in zip(coeffs, complement):
            v = vec_add(c.field, v, vec_scale(c.field, ci, g))
        reps.add(min(vec_add(c.field, v, w) for w in words))
    assert len(reps) == n_cosets
    return sorted(reps)


def tau_orbit_rep(c: LinearCode, v) -> tuple:
    """Canonical label of the scalar orbit {v+C, wv+C, Wv+C} of a coset."""
    if c.field != F4:
        raise PreconditionError("tau orbits only exist for F4 codes")
    reps = [coset_min(c, vec_scale(F4, s, v)) for s in (1, 2, 3)]
    if any(reps[0]) and len(set(reps)) != 3:
        # Cannot happen for F4-linear C (w*v = v mod C forces v in C), but
        # the orbit count formula would silently break if it did.
        raise PreconditionError("coset fixed by scalar multiplication")
    return min(reps)


def tau_orbits(c: LinearCode) -> list:
    """Zero orbit plus (|C^perp/C|-1)/3 nonzero orbit labels, sorted."""
    orbits = {tau_orbit_rep(c, v) for v in coset_reps(c)}
    return sorted(orbits)


# ---------------------------------------------------------------------------
# Named codes and file I/O
# ---------------------------------------------------------------------------

_W, _WB = 2, 3

_HEXACODE_ROWS = [
    (1, 0, 0, 1, _WB, _W),
    (0, 1, 0, 1, _W, _WB),
    (0, 0, 1, 1, 1, 1),
]
_TETRACODE_ROWS = [(1, 1, 1, 0), (0, 1, 2, 1)]
_B_ROWS = [(1, 1)]


def builtin(name: str) -> LinearCode:
    """Named codes: hexacode, tetracode, B, trivial:<field>:<l>, full:<field>:<l>."""
    if name == "hexacode":
        return LinearCode(F4, 6, _HEXACODE_ROWS)
    if name == "tetracode":
        return LinearCode(F3, 4, _TETRACODE_ROWS)
    if name == "B":
        return LinearCode(F4, 2, _B_ROWS)
    parts = name.split(":")
    if len(parts) == 3 and parts[0] in ("trivial", "full"):
        kind, field, l = parts
        if field not in (F4, F3):
            raise ParseError(f"unknown field in builtin name {name!r}")
        try:
            length = int(l)
        except ValueError:
            raise ParseError(f"bad length in builtin name {name!r}") from None
        if length <= 0:
            raise ParseError(f"bad length in builtin name {name!r}")
        if kind == "trivial":
            return LinearCode(field, length)
        rows = [tuple(1 if j == i else 0 for j in range(length))
                for i in range(length)]
        return LinearCode(field, length, rows)
    raise ParseError(f"unknown builtin code {name!r}")


def direct_sum(a: LinearCode, b: LinearCode) -> LinearCode:
    """Direct sum of two codes over the same field."""
    if a.field != b.field:
        raise PreconditionError("direct_sum requires a common field")
    zeros_a = (0,) * a.length
    zeros_b = (0,) * b.length
    rows = [g + zeros_b for g in a.gens] + [zeros_a + g for g in b.gens]
    return LinearCode(a.field, a.length + b.length, rows)


def format_code(c: LinearCode) -> str:
    """Plain-text form: field on line 1, one generator row per line."""
    syms = _SYMBOLS[c.field]
    lines = [c.field]
    for row in c.gens:
        lines.append(" ".join(syms[a] for a in row))
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> LinearCode:
    """Inverse of format_code; raises ParseError with the offending line number."""
    lines = [ln for ln in text.splitlines()]
    stripped = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not stripped:
        raise ParseError("parse:1")
    lineno, header = stripped[0]
    if header not in (F4, F3):
        raise ParseError(f"parse:{lineno}")
    syms = _SYMBOLS[header]
    rows = []
    length = None
    for lineno, ln in stripped[1:]:
        try:
            row = tuple(syms.index(tok) for tok in ln.split())
        except ValueError:
            raise ParseError(f"parse:{lineno}") from None
        if length is None:
            length = len(row)
        elif len(row) != length:
            raise ParseError(f"parse:{lineno}")
        rows.append(row)
    if length is None:
        raise ParseError(f"parse:{stripped[0][0]}")
    return LinearCode(header, length, rows)


def load_code(path) -> LinearCode:
    with open(path) as fh:
        return parse_code(fh.read())


def code_info(c: LinearCode) -> dict:
    """Summary dict used by the CLI."""
    return {
        "field": c.field,
        "length": c.length,
        "dim": c.dim,
        "selfOrthogonal": is_self_orthogonal(c),
        "selfDual": is_self_dual(c),
        "weightEnumerator": list(weight_enumerator(c).coeffs),
    }

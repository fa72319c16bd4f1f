"""Irreducible module labels for an orbifold code-lattice pair, with exact
quantum dimensions, conformal weight classes, contragredient duals and the
global dimension.

A label is one of three shapes:

    U0(d, e)    -- untwisted, zero F4-part: a D-dual coset d and a Z3 grade e
    UC(l, d)    -- untwisted, nonzero scalar orbit l of an F4-dual coset
    TW(s, h, e) -- twisted sector s in {1, 2}, D-dual coset h, Z3 grade e

All coset data is canonical (lexicographically minimal representatives), so
labels are value types usable as dict keys.  The text grammar

    U0:d=<vec>:e=<0|1|2>   UC:l=<vec>:d=<vec>   TW:s=<1|2>:h=<vec>:e=<0|1|2>

round-trips bit-exactly; lists of labels are always ordered by that text.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import codes, lattices
from .codes import F3, F4, LinearCode
from .errors import ParseError, PreconditionError


@dataclass(frozen=True)
class U0:
    d: tuple
    e: int


@dataclass(frozen=True)
class UC:
    l: tuple
    d: tuple


@dataclass(frozen=True)
class TW:
    s: int
    h: tuple
    e: int


_F4_SYM = "01wW"
_F3_SYM = "012"


def _fmt_vec(v, field):
    syms = _F4_SYM if field == F4 else _F3_SYM
    return ",".join(syms[a] for a in v)


def _parse_vec(text, field):
    syms = _F4_SYM if field == F4 else _F3_SYM
    out = []
    for tok in text.split(","):
        if tok not in syms:
            raise ParseError(f"bad symbol {tok!r} in label vector")
        out.append(syms.index(tok))
    return tuple(out)


def label_text(label) -> str:
    if isinstance(label, U0):
        return f"U0:d={_fmt_vec(label.d, F3)}:e={label.e}"
    if isinstance(label, UC):
        return f"UC:l={_fmt_vec(label.l, F4)}:d={_fmt_vec(label.d, F3)}"
    if isinstance(label, TW):
        return f"TW:s={label.s}:h={_fmt_vec(label.h, F3)}:e={label.e}"
    raise ParseError(f"not a module label: {label!r}")


def parse_label(text: str):
    """Parse the label grammar; purely syntactic, no code context."""
    parts = text.split(":")
    try:
        kind = parts[0]
        fields = dict(p.split("=", 1) for p in parts[1:])
        if kind == "U0" and set(fields) == {"d", "e"}:
            return U0(_parse_vec(fields["d"], F3), int(fields["e"]))
        if kind == "UC" and set(fields) == {"l", "d"}:
            return UC(_parse_vec(fields["l"], F4), _parse_vec(fields["d"], F3))
        if kind == "TW" and set(fields) == {"s", "h", "e"}:
            s = int(fields["s"])
            if s not in (1, 2):
                raise ParseError("TW sector must be 1 or 2")
            return TW(s, _parse_vec(fields["h"], F3), int(fields["e"]))
    except ParseError:
        raise
    except Exception:
        raise ParseError(f"malformed label {text!r}") from None
    raise ParseError(f"malformed label {text!r}")


class Registry:
    """Coset bookkeeping and module-level invariants for a code pair."""

    def __init__(self, C: LinearCode, D: LinearCode):
        if C.field != F4 or D.field != F3:
            raise PreconditionError("expected an F4 code and an F3 code")
        if C.length != D.length:
            raise PreconditionError("codes must have equal length")
        if not codes.is_self_orthogonal(C) or not codes.is_self_orthogonal(D):
            raise PreconditionError("codes must be self-orthogonal")
        self.C = C
        self.D = D
        self.ell = C.length
        self.dimc = C.dim
        self.c_cosets = codes.coset_reps(C)
        self.d_cosets = codes.coset_reps(D)
        self.c_orbits = codes.tau_orbits(C)
        self.nonzero_orbits = tuple(o for o in self.c_orbits if any(o))
        self.c_index = len(self.c_cosets)
        self.d_index = len(self.d_cosets)
        self.c_self_dual = self.c_index == 1
        self._d_words = D.codewords()
        self._c_words = C.codewords()
        self._modules = None

    # -- coset canonicalization ------------------------------------------

    def canon_d(self, v) -> tuple:
        return min(codes.vec_add(F3, tuple(v), w) for w in self._d_words)

    def canon_c(self, v) -> tuple:
        return min(codes.vec_add(F4, tuple(v), w) for w in self._c_words)

    def orbit_of(self, v) -> tuple:
        return codes.tau_orbit_rep(self.C, v)

    # -- label constructors and validation --------------------------------

    def u0(self, d, e) -> U0:
        return U0(self.canon_d(d), e % 3)

    def uc(self, l, d) -> UC:
        if self.c_self_dual:
            raise PreconditionError("no UC labels for a self-dual F4 code")
        rep = self.orbit_of(l)
        if not any(rep):
            raise PreconditionError("UC requires a nonzero orbit")
        return UC(rep, self.canon_d(d))

    def tw(self, s, h, e) -> TW:
        if s not in (1, 2):
            raise PreconditionError("twisted sector must be 1 or 2")
        return TW(s, self.canon_d(h), e % 3)

    def validate(self, label):
        """Raise unless the label is canonical for this code pair."""
        if isinstance(label, U0):
            if len(label.d) != self.ell or label.d != self.canon_d(label.d):
                raise PreconditionError("U0 coset not canonical for this pair")
            if label.e % 3 != label.e:
                raise PreconditionError("bad grade")
        elif isinstance(label, UC):
            if self.c_self_dual:
                raise PreconditionError("no UC labels for a self-dual F4 code")
            if len(label.l) != self.ell or label.l != self.orbit_of(label.l):
                raise PreconditionError("UC orbit not canonical for this pair")
            if not any(label.l):
                raise PreconditionError("UC requires a nonzero orbit")
            if label.d != self.canon_d(label.d):
                raise PreconditionError("UC coset not canonical")
        elif isinstance(label, TW):
            if label.s not in (1, 2) or label.e % 3 != label.e:
                raise PreconditionError("bad twisted label")
            if len(label.h) != self.ell or label.h != self.canon_d(label.h):
                raise PreconditionError("TW coset not canonical for this pair")
        else:
            raise PreconditionError(f"not a module label: {label!r}")
        return label

    # -- the classification ------------------------------------------------

    def modules(self) -> list:
        """All irreducible labels, ordered by their text form."""
        if self._modules is None:
            out = []
            for d in self.d_cosets:
                for e in range(3):
                    out.append(U0(d, e))
            for orb in self.nonzero_orbits:
                for d in self.d_cosets:
                    out.append(UC(orb, d))
            for s in (1, 2):
                for h in self.d_cosets:
                    for e in range(3):
                        out.append(TW(s, h, e))
            out.sort(key=label_text)
            expected = 3 * self.d_index \
                + self.d_index * (self.c_index - 1) // 3 \
                + 6 * self.d_index
            assert len(out) == expected == len(set(out))
            self._modules = out
        return self._modules

    def vacuum(self) -> U0:
        return U0((0,) * self.ell, 0)

    # -- quantum dimensions -------------------------------------------------

    def qdim(self, label) -> int:
        self.validate(label)
        if isinstance(label, U0):
            return 1
        if isinstance(label, UC):
            return 3
        return 2 ** (self.ell - 2 * self.dimc)

    def qdim_via_enumerators(self, label) -> Fraction:
        """Recompute the quantum dimension from weight-enumerator limits."""
        self.validate(label)
        ell = self.ell
        w0 = codes.w_congruence(ell, 0)
        wp = codes.w_prime(self.C)
        if isinstance(label, U0):
            we = codes.w_congruence(ell, label.e)
            return Fraction(we(1, 1) + wp(1, 1), w0(1, 1) + wp(1, 1))
        if isinstance(label, UC):
            size = self.C.size()
            return Fraction(size * 3 ** ell, w0(1, 1) + wp(3, 3))
        we = codes.w_congruence(ell, label.e)
        return Fraction(2 ** ell * we(1, 1), w0(1, 1) + wp(3, 3))

    # -- conformal weights mod Z ---------------------------------------------

    def weight_mod1(self, label) -> Fraction:
        self.validate(label)
        if isinstance(label, U0):
            return Fraction(2 * sum(a * a for a in label.d), 3) % 1
        if isinstance(label, TW):
            val = 10 * self.ell - 3 * (sum(a * a for a in label.h) + label.e)
            return Fraction(val, 9) % 1
        v = lattices.pair_vector(label.l, label.d)
        return (lattices.norm(v) / 2) % 1

    # -- contragredient duals -------------------------------------------------

    def contragredient(self, label):
        self.validate(label)
        if isinstance(label, U0):
            return U0(self.canon_d(codes.vec_neg(F3, label.d)), (-label.e) % 3)
        if isinstance(label, UC):
            return UC(label.l, self.canon_d(codes.vec_neg(F3, label.d)))
        return TW(3 - label.s, label.h, label.e)

    # -- global dimension -------------------------------------------------------

    def glob_dimension(self) -> int:
        return sum(self.qdim(m) ** 2 for m in self.modules())

    def verify_glob_conjecture(self) -> bool:
        """glob of the orbifold equals |group|^2 times glob of the lattice VOA."""
        glob_lattice = self.c_index * self.d_index
        return self.glob_dimension() == 9 * glob_lattice


_registry_cache: dict = {}


def registry(C: LinearCode, D: LinearCode) -> Registry:
    key = (C, D)
    reg = _registry_cache.get(key)
    if reg is None:
        reg = _registry_cache[key] = Registry(C, D)
    return reg


# Spec-shaped functional surface.

def list_modules(C, D):
    return registry(C, D).modules()


def qdim(label, C, D):
    return registry(C, D).qdim(label)


def qdim_via_enumerators(label, C, D):
    return registry(C, D).qdim_via_enumerators(label)


def weight_mod1(label, C, D):
    return registry(C, D).weight_mod1(label)


def contragredient(label, C, D):
    return registry(C, D).contragredient(label)


def glob_dimension(C, D):
    return registry(C, D).glob_dimension()


def verify_glob_conjecture(C, D):
    return registry(C, D).verify_glob_conjecture()

"""The fusion product on irreducible module labels, and its verification.

The product splits into five shapes (simple-current action of the untwisted
zero sector, untwisted x untwisted, untwisted x twisted, opposite twisted
sectors, equal twisted sectors).  The equal-sector coefficients come from the
cube-root gadget Xi(n) = xi^n + xi^(2n) in {2, -1}:

    coeff(e) = (2^(l-2d) + (-1)^l * Xi(l - e)) / 3,   e = 0, 1, 2,

which is always a nonnegative integer for self-orthogonal inputs.  Products
of a UC pair expand through the three scalar twists of the second factor;
when a twist lands inside the code the summand decomposes into the three
graded U0 pieces.  Everything is exact integer arithmetic.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from . import codes
from .codes import F3, F4, LinearCode
from .errors import GuardError, PreconditionError, VerificationError
from .registry import TW, U0, UC, Registry, label_text, registry


def xi(n: int) -> int:
    """xi^n + xi^(2n) for a primitive cube root of unity: 2 or -1."""
    return 2 if n % 3 == 0 else -1


def twisted_coeffs(ell: int, d: int) -> list:
    """Multiplicities of the three graded pieces in an equal-sector square."""
    if 2 * d > ell:
        raise PreconditionError("need 2*dim <= length")
    m = 2 ** (ell - 2 * d)
    out = []
    for e in range(3):
        num = m + (-1) ** ell * xi(ell - e)
        assert num % 3 == 0
        out.append(num // 3)
    assert sum(out) == m and all(c >= 0 for c in out)
    return out


def solve_twisted_system(ell: int, d: int) -> tuple:
    """Nonnegative integer multiset {x, y, z} with
    x+y+z = 2^(l-2d), xy+yz+zx = (4^(l-2d)-1)/3, x^2+y^2+z^2 = xy+yz+zx+1.

    The last equation says the pairwise differences square-sum to 2, so the
    sorted solution is (t+1, t+1, t) or (t+1, t, t); the linear equation pins
    t, and the remaining equations are verified exactly.
    """
    if 2 * d > ell:
        raise PreconditionError("need 2*dim <= length")
    m = 2 ** (ell - 2 * d)
    r = m % 3
    assert r != 0
    if r == 1:
        t = (m - 1) // 3
        sol = (t + 1, t, t)
    else:
        t = (m - 2) // 3
        sol = (t + 1, t + 1, t)
    x, y, z = sol
    assert x + y + z == m
    assert x * y + y * z + z * x == (4 ** (ell - 2 * d) - 1) // 3
    assert x * x + y * y + z * z == x * y + y * z + z * x + 1
    return sol


class FusionVector:
    """Formal nonnegative-integer combination of module labels."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for label, mult in (terms.items() if isinstance(terms, dict) else terms):
                self.add(label, mult)

    def add(self, label, mult=1):
        if mult < 0:
            raise PreconditionError("fusion multiplicities are nonnegative")
        if mult:
            new = self.terms.get(label, 0) + mult
            self.terms[label] = new

    def __getitem__(self, label):
        return self.terms.get(label, 0)

    def __eq__(self, other):
        return isinstance(other, FusionVector) and self.terms == other.terms

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: label_text(kv[0])))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = " + ".join(f"{m}*{label_text(l)}" if m != 1 else label_text(l)
                          for l, m in self)
        return f"<{body or '0'}>"

    def qdim(self, reg: Registry):
        return sum(m * reg.qdim(l) for l, m in self.terms.items())


def _fuse_labels(reg: Registry, a, b) -> FusionVector:
    """Product of two irreducible labels as a FusionVector."""
    ell = reg.ell
    out = FusionVector()

    # Normalize the argument order: U0 first, then UC, then TW; for mixed
    # twisted sectors the tau-sector factor goes first and the other order
    # is defined by commutativity.
    rank = {U0: 0, UC: 1, TW: 2}
    if rank[type(a)] > rank[type(b)]:
        a, b = b, a
    if isinstance(a, TW) and isinstance(b, TW) and a.s == 2 and b.s == 1:
        a, b = b, a

    if isinstance(a, U0):
        if isinstance(b, U0):
            out.add(reg.u0(codes.vec_add(F3, a.d, b.d), a.e + b.e))
        elif isinstance(b, UC):
            out.add(reg.uc(b.l, codes.vec_add(F3, a.d, b.d)))
        else:
            i = b.s
            shift = codes.vec_scale(F3, (-i) % 3, a.d)
            out.add(reg.tw(i, codes.vec_add(F3, b.h, shift), i * a.e + b.e))
        return out

    if isinstance(a, UC):
        if isinstance(b, UC):
            dsum = codes.vec_add(F3, a.d, b.d)
            inside = 0
            for h in range(3):
                mu = codes.vec_add(
                    F4, a.l, codes.vec_scale(F4, (1, 2, 3)[h], b.l))
                if reg.C.contains(mu):
                    inside += 1
                    for e in range(3):
                        out.add(reg.u0(dsum, e))
                else:
                    out.add(reg.uc(mu, dsum))
            assert inside <= 1
        else:
            i = b.s
            shift = codes.vec_scale(F3, (-i) % 3, a.d)
            eta = codes.vec_add(F3, b.h, shift)
            for rho in range(3):
                out.add(reg.tw(i, eta, rho))
        return out

    assert isinstance(a, TW) and isinstance(b, TW)
    if a.s == b.s:
        coeffs = twisted_coeffs(ell, reg.dimc)
        hsum = codes.vec_neg(F3, codes.vec_add(F3, a.h, b.h))
        other = 3 - a.s
        for e, c in enumerate(coeffs):
            if c:
                out.add(reg.tw(other, hsum, e - a.e - b.e), c)
        return out

    # opposite sectors, normalized to (tau, tau^2)
    diff = codes.vec_add(F3, b.h, codes.vec_neg(F3, a.h))
    out.add(reg.u0(diff, a.e - b.e))
    for orb in reg.nonzero_orbits:
        out.add(reg.uc(orb, diff))
    return out


def fuse(a, b, C: LinearCode, D: LinearCode) -> FusionVector:
    reg = registry(C, D)
    reg.validate(a)
    reg.validate(b)
    return _fuse_labels(reg, a, b)


def fuse_vectors(reg: Registry, u, v) -> FusionVector:
    """Bilinear extension of the product to FusionVectors."""
    if not isinstance(u, FusionVector):
        u = FusionVector({u: 1})
    if not isinstance(v, FusionVector):
        v = FusionVector({v: 1})
    out = FusionVector()
    for la, ma in u.terms.items():
        for lb, mb in v.terms.items():
            for lc, mc in _fuse_labels(reg, la, lb).terms.items():
                out.add(lc, ma * mb * mc)
    return out


MAX_MATRIX_LABELS = 10 ** 4


def fusion_matrix(a, C: LinearCode, D: LinearCode) -> np.ndarray:
    """N(a)[b][c] = multiplicity of c in a x b, indexed by list order."""
    reg = registry(C, D)
    reg.validate(a)
    labels = reg.modules()
    if len(labels) > MAX_MATRIX_LABELS:
        raise GuardError(
            f"fusion matrix refused: {len(labels)} labels > {MAX_MATRIX_LABELS}")
    index = {l: i for i, l in enumerate(labels)}
    mat = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for b_label in labels:
        row = index[b_label]
        for c_label, mult in _fuse_labels(reg, a, b_label).terms.items():
            mat[row, index[c_label]] = mult
    return mat


# ---------------------------------------------------------------------------
# Verification suite
# ---------------------------------------------------------------------------

MAX_FULL_LABELS = 100


@dataclass
class VerifyReport:
    label_count: int
    mode: str
    seed: int | None
    checks: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def note_failure(self, check, detail):
        self.checks[check] = False
        if len(self.counterexamples) < 50:
            self.counterexamples.append(f"{check}: {detail}")

    def to_json(self) -> dict:
        return {
            "labelCount": self.label_count,
            "mode": self.mode,
            "seed": self.seed,
            "checks": dict(sorted(self.checks.items())),
            "counterexamples": sorted(self.counterexamples),
            "flags": sorted(self.flags),
            "passed": self.passed,
        }


def verify_suite(C: LinearCode, D: LinearCode, mode="full", seed=0) -> VerifyReport:
    """Exercise ring axioms and structure statements, reporting counterexamples.

    mode is "full" (every pair and triple; label count capped) or
    "sampled:<n>" (n seeded random triples, all pairwise checks kept full
    when the pair count is modest, sampled otherwise).
    """
    reg = registry(C, D)
    labels = reg.modules()
    n = len(labels)
    full = mode == "full"
    if full:
        if n > MAX_FULL_LABELS:
            raise GuardError(
                f"full verification refused: {n} labels > {MAX_FULL_LABELS}")
        n_samples = None
        rng = None
    else:
        if not mode.startswith("sampled:"):
            raise PreconditionError(f"unknown mode {mode!r}")
        n_samples = int(mode.split(":", 1)[1])
        rng = random.Random(seed)
    report = VerifyReport(label_count=n, mode=mode,
                          seed=None if full else seed)

    pair_table = {}

    def table(a, b):
        got = pair_table.get((a, b))
        if got is None:
            got = pair_table[(a, b)] = _fuse_labels(reg, a, b)
        return got

    vac = reg.vacuum()

    def pairs():
        if full or n * n <= 40000:
            for a in labels:
                for b in labels:
                    yield a, b
        else:
            for _ in range(n_samples):
                yield rng.choice(labels), rng.choice(labels)

    # vacuum unit
    report.checks["vacuum_unit"] = True
    for a in labels:
        if table(vac, a) != FusionVector({a: 1}):
            report.note_failure("vacuum_unit", label_text(a))

    # commutativity, duality symmetries, qdim multiplicativity
    report.checks["commutativity"] = True
    report.checks["duality"] = True
    report.checks["qdim_multiplicative"] = True
    duals = {a: reg.contragredient(a) for a in labels}
    for a, b in pairs():
        fab = table(a, b)
        if fab != table(b, a):
            report.note_failure("commutativity", f"{label_text(a)} x {label_text(b)}")
        if fab.qdim(reg) != reg.qdim(a) * reg.qdim(b):
            report.note_failure("qdim_multiplicative",
                                f"{label_text(a)} x {label_text(b)}")
        for c, mult in fab.terms.items():
            if table(a, duals[c])[duals[b]] != mult:
                report.note_failure(
                    "duality",
                    f"N({label_text(a)},{label_text(b)};{label_text(c)})")

    # associativity
    report.checks["associativity"] = True

    def triples():
        if full:
            for a in labels:
                for b in labels:
                    for c in labels:
                        yield a, b, c
        else:
            for _ in range(n_samples):
                yield (rng.choice(labels), rng.choice(labels), rng.choice(labels))

    for a, b, c in triples():
        left = FusionVector()
        for l1, m1 in table(a, b).terms.items():
            for l2, m2 in table(l1, c).terms.items():
                left.add(l2, m1 * m2)
        right = FusionVector()
        for l1, m1 in table(b, c).terms.items():
            for l2, m2 in table(a, l1).terms.items():
                right.add(l2, m1 * m2)
        if left != right:
            report.note_failure(
                "associativity",
                f"({label_text(a)},{label_text(b)},{label_text(c)})")

    # group structure for a self-dual F4 code
    if reg.c_self_dual:
        report.checks["group_order"] = len(labels) == 9 * reg.d_index
        report.checks["group_closure"] = True
        report.checks["group_exponent_3"] = True
        report.checks["group_inverses"] = True
        for a, b in pairs():
            fab = table(a, b)
            if len(fab) != 1 or fab.qdim(reg) != 1:
                report.note_failure("group_closure",
                                    f"{label_text(a)} x {label_text(b)}")
        for a in labels:
            sq = table(a, a)
            cube = fuse_vectors(reg, sq, a)
            if cube != FusionVector({vac: 1}):
                report.note_failure("group_exponent_3", label_text(a))
            if table(a, duals[a]) != FusionVector({vac: 1}):
                report.note_failure("group_inverses", label_text(a))
    else:
        report.flags.append("opposite-sector products emit UC summands "
                            "(strictly self-orthogonal F4 code)")

    return report


# ---------------------------------------------------------------------------
# Table export
# ---------------------------------------------------------------------------

def fusion_table(C: LinearCode, D: LinearCode) -> list:
    """All pairwise products as JSON-ready rows, ordered by label text."""
    reg = registry(C, D)
    labels = reg.modules()
    if len(labels) > MAX_FULL_LABELS:
        raise GuardError(
            f"table refused: {len(labels)} labels > {MAX_FULL_LABELS}")
    rows = []
    for a in labels:
        for b in labels:
            result = [{"label": label_text(l), "mult": m}
                      for l, m in _fuse_labels(reg, a, b)]
            rows.append({"a": label_text(a), "b": label_text(b), "result": result})
    return rows


def fusion_table_csv(C: LinearCode, D: LinearCode) -> str:
    """CSV variant: one row per (a, b, c, mult); labels are quoted since the
    vector grammar itself uses commas."""
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC)
    writer.writerow(["a", "b", "c", "mult"])
    for row in fusion_table(C, D):
        for item in row["result"]:
            writer.writerow([row["a"], row["b"], item["label"], item["mult"]])
    return buf.getvalue()

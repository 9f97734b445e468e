"""Canonical noncommutative expressions over kinetic-momentum and field atoms.

An expression is a merged sum of terms

    coeff * i^ip * (dimension monomial) * (basis matrix) * (word of atoms)

with coeff an exact rational, ip in {0, 1}, and the word kept in a fixed
canonical order: field components first (E before B, by index), then the
scalar potential V, then momentum components Pi by index.  Reordering a word
emits the commutator corrections

    [Pi_i, Pi_j] = (i hbar / c) eps_ijk (e B_k - et E_k)
    [Pi_i, V]    = i hbar (e E_i + et B_i)

while field atoms commute with everything.  Fields are homogeneous by
construction: there is no gradient atom, so gradient terms cannot appear.

The dimension monomial tracks integer exponents of hbar, c, m, the energy
gap Eg = 2 m c^2, the charges e and et, and the gap-scaled anomalous moments
mu and d.  The 1/Eg order of a term is minus its Eg exponent.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import clifford

# ---------------------------------------------------------------------------
# Atoms

E1, E2, E3, B1, B2, B3, VPOT, P1, P2, P3 = range(10)

ATOM_NAMES = ("E1", "E2", "E3", "B1", "B2", "B3", "V", "P1", "P2", "P3")
_ATOM_BY_NAME = {name: code for code, name in enumerate(ATOM_NAMES)}

ATOM_LATEX = ("E_x", "E_y", "E_z", "B_x", "B_y", "B_z", "V",
              r"\Pi_x", r"\Pi_y", r"\Pi_z")


def field_e(i: int) -> int:
    """Electric field component atom, i in 1..3."""
    return E1 + i - 1


def field_b(i: int) -> int:
    return B1 + i - 1


def pi(i: int) -> int:
    return P1 + i - 1


def is_field(atom: int) -> bool:
    return atom < VPOT


def is_pi(atom: int) -> bool:
    return atom > VPOT


def field_degree(word: tuple[int, ...]) -> int:
    return sum(1 for a in word if a < VPOT)


# ---------------------------------------------------------------------------
# Dimension monomials

DIM_NAMES = ("hbar", "c", "m", "Eg", "e", "et", "mu", "d")
_DIM_INDEX = {name: k for k, name in enumerate(DIM_NAMES)}
DIM_ZERO = (0,) * 8

_I_HBAR, _I_C, _I_M, _I_EG, _I_E, _I_ET, _I_MU, _I_D = range(8)


def dim(**exponents: int) -> tuple[int, ...]:
    vec = [0] * 8
    for name, exp in exponents.items():
        vec[_DIM_INDEX[name]] = exp
    return tuple(vec)


def dim_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def eg_order(key) -> int:
    """1/Eg order of a term key (mass term has order -1)."""
    return -key[0][_I_EG]


# ---------------------------------------------------------------------------
# Basis-matrix product table (mat codes 0..15 = left*4 + right)

ID_MAT = 0
BETA_MAT = 12


def mat_code(left: int, right: int) -> int:
    return left * 4 + right


def mat_parts(mat: int) -> tuple[int, int]:
    return mat // 4, mat % 4


_PHASE_TO_IP = {1: 0, 1j: 1, -1: 2, -1j: 3}


def _build_mat_table():
    table = []
    for m1 in range(16):
        row = []
        for m2 in range(16):
            a = clifford.BasisElement(*mat_parts(m1))
            b = clifford.BasisElement(*mat_parts(m2))
            prod = clifford.basis_mul(a, b)
            row.append((mat_code(prod.left, prod.right), _PHASE_TO_IP[prod.phase]))
        table.append(tuple(row))
    return tuple(table)


MAT_TABLE = _build_mat_table()

MAT_ODD = tuple(clifford.beta_grade(clifford.BasisElement(*mat_parts(m))) == clifford.ODD
                for m in range(16))

_MAT_LATEX = {
    ID_MAT: "",
    BETA_MAT: r"\check\beta",
}
for _i in (1, 2, 3):
    _MAT_LATEX[mat_code(0, _i)] = rf"\Sigma_{'xyz'[_i-1]}"
    _MAT_LATEX[mat_code(3, _i)] = rf"\check\beta\Sigma_{'xyz'[_i-1]}"
    _MAT_LATEX[mat_code(1, _i)] = rf"\check\alpha_{'xyz'[_i-1]}"


# ---------------------------------------------------------------------------
# Word normal ordering

_EPS3 = {(1, 2): (3, 1), (2, 1): (3, -1),
         (2, 3): (1, 1), (3, 2): (1, -1),
         (3, 1): (2, 1), (1, 3): (2, -1)}

_DIM_PIV_E = dim(hbar=1, e=1)
_DIM_PIV_B = dim(hbar=1, et=1)
_DIM_PIPI_B = dim(hbar=1, c=-1, e=1)
_DIM_PIPI_E = dim(hbar=1, c=-1, et=1)


@lru_cache(maxsize=None)
def _order_word(word: tuple[int, ...]):
    """Canonicalize a word.

    Returns a tuple of (canonical_word, dim_delta, ip, coeff) contributions.
    Each adjacent swap of noncommuting atoms replaces the pair with the
    commutator's atoms; corrections recurse on strictly shorter words, so the
    rewriting terminates.
    """
    for k in range(len(word) - 1):
        if word[k] > word[k + 1]:
            break
    else:
        return ((word, DIM_ZERO, 0, Fraction(1)),)

    a, b = word[k], word[k + 1]
    head, tail = word[:k], word[k + 2:]
    acc: dict[tuple, Fraction] = {}

    def _accumulate(sub_word, extra_dim, extra_ip, scale):
        for w, dd, ip, coeff in _order_word(sub_word):
            ip_tot = ip + extra_ip
            c = coeff * scale * (-1 if ip_tot >= 2 else 1)
            key = (w, dim_mul(dd, extra_dim), ip_tot % 2)
            acc[key] = acc.get(key, Fraction(0)) + c

    _accumulate(head + (b, a) + tail, DIM_ZERO, 0, Fraction(1))

    if is_pi(a) and b == VPOT:
        # Pi_i V -> V Pi_i + i hbar (e E_i + et B_i)
        i = a - VPOT
        _accumulate(head + (field_e(i),) + tail, _DIM_PIV_E, 1, Fraction(1))
        _accumulate(head + (field_b(i),) + tail, _DIM_PIV_B, 1, Fraction(1))
    elif is_pi(a) and is_pi(b):
        # Pi_i Pi_j -> Pi_j Pi_i + (i hbar / c) eps_ijk (e B_k - et E_k)
        kk, sign = _EPS3[(a - VPOT, b - VPOT)]
        _accumulate(head + (field_b(kk),) + tail, _DIM_PIPI_B, 1, Fraction(sign))
        _accumulate(head + (field_e(kk),) + tail, _DIM_PIPI_E, 1, Fraction(-sign))
    # every other out-of-order pair commutes: swap with no correction

    return tuple((w, dd, ip, c) for (w, dd, ip), c in acc.items() if c)


# ---------------------------------------------------------------------------
# Expressions

class Expression:
    """Merged, canonically ordered sum of terms; the empty sum is zero.

    Instances are treated as immutable: every operation returns a fresh
    expression and the term dict is never mutated after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Expression":
        return Expression()

    @staticmethod
    def term(coeff, word=(), mat: int = ID_MAT, ip: int = 0, dims: tuple = DIM_ZERO) -> "Expression":
        coeff = Fraction(coeff)
        if coeff == 0:
            return Expression()
        if ip % 4 >= 2:
            coeff = -coeff
        ip %= 2
        acc: dict[tuple, Fraction] = {}
        for w, dd, dip, c in _order_word(tuple(word)):
            tot_ip = ip + dip
            val = coeff * c * (-1 if tot_ip >= 2 else 1)
            key = (dim_mul(dims, dd), mat, tot_ip % 2, w)
            _merge(acc, key, val)
        return Expression(acc)

    @staticmethod
    def from_basis(elem: clifford.BasisElement, coeff=1) -> "Expression":
        return Expression.term(coeff, mat=mat_code(elem.left, elem.right),
                               ip=_PHASE_TO_IP[elem.phase])

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Expression") -> "Expression":
        out = dict(self.terms)
        for key, val in other.terms.items():
            _merge(out, key, val)
        return Expression(out)

    def __sub__(self, other: "Expression") -> "Expression":
        out = dict(self.terms)
        for key, val in other.terms.items():
            _merge(out, key, -val)
        return Expression(out)

    def __neg__(self) -> "Expression":
        return Expression({key: -val for key, val in self.terms.items()})

    def scale(self, coeff, ip: int = 0, dims: tuple = DIM_ZERO) -> "Expression":
        """Multiply by a scalar monomial coeff * i^ip * dims."""
        coeff = Fraction(coeff)
        if coeff == 0:
            return Expression()
        out: dict[tuple, Fraction] = {}
        for (d, mat, tip, w), val in self.terms.items():
            tot = tip + ip
            c = val * coeff * (-1 if tot % 4 >= 2 else 1)
            _merge(out, (dim_mul(d, dims), mat, tot % 2, w), c)
        return Expression(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Expression) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "Expression(0)"
        return f"Expression({len(self.terms)} terms)"

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])


def _merge(acc: dict, key, val) -> None:
    new = acc.get(key, Fraction(0)) + val
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


def mul(a: Expression, b: Expression, max_order: int | None = None) -> Expression:
    """Product in canonical form.

    max_order drops every product term whose 1/Eg order exceeds it before
    normal ordering; orders add under multiplication, so this is an exact
    truncation, not a bound.
    """
    out: dict[tuple, Fraction] = {}
    for (d1, m1, ip1, w1), c1 in a.terms.items():
        o1 = -d1[_I_EG]
        for (d2, m2, ip2, w2), c2 in b.terms.items():
            if max_order is not None and o1 - d2[_I_EG] > max_order:
                continue
            mat, mip = MAT_TABLE[m1][m2]
            base_dim = dim_mul(d1, d2)
            base_ip = ip1 + ip2 + mip
            base_coeff = c1 * c2
            for w, dd, dip, c in _order_word(w1 + w2):
                tot = base_ip + dip
                val = base_coeff * c * (-1 if tot % 4 >= 2 else 1)
                _merge(out, (dim_mul(base_dim, dd), mat, tot % 2, w), val)
    return Expression(out)


def commutator(a: Expression, b: Expression, max_order: int | None = None) -> Expression:
    return mul(a, b, max_order) - mul(b, a, max_order)


def anticommutator(a: Expression, b: Expression, max_order: int | None = None) -> Expression:
    return mul(a, b, max_order) + mul(b, a, max_order)


def hermitian_conjugate(e: Expression) -> Expression:
    """Adjoint: words reverse (all atoms are self-adjoint), i conjugates,
    and the phase-free basis matrices are Hermitian."""
    out: dict[tuple, Fraction] = {}
    for (d, mat, ip, w), c in e.terms.items():
        coeff = -c if ip else c
        for w2, dd, dip, c2 in _order_word(w[::-1]):
            tot = ip + dip
            val = coeff * c2 * (-1 if tot % 4 >= 2 else 1)
            _merge(out, (dim_mul(d, dd), mat, tot % 2, w2), val)
    return Expression(out)


def is_hermitian(e: Expression) -> bool:
    return hermitian_conjugate(e) == e


def is_anti_hermitian(e: Expression) -> bool:
    return hermitian_conjugate(e) == -e


# ---------------------------------------------------------------------------
# Filters and substitutions

def normal_order(e: Expression) -> Expression:
    """Re-canonicalize from raw term data.

    Expressions built through the public operations are already canonical;
    this rebuilds one whose term dict was assembled by hand.
    """
    total = Expression.zero()
    for (d, mat, ip, w), c in e.terms.items():
        total = total + Expression.term(c, word=w, mat=mat, ip=ip, dims=d)
    return total


def truncate_fields(e: Expression) -> Expression:
    """Drop every term whose word carries two or more field atoms."""
    return Expression({key: val for key, val in e.terms.items()
                       if field_degree(key[3]) < 2})


def truncate_order(e: Expression, max_order: int) -> Expression:
    return Expression({key: val for key, val in e.terms.items()
                       if eg_order(key) <= max_order})


def by_order(e: Expression) -> dict[int, Expression]:
    slices: dict[int, dict] = {}
    for key, val in e.terms.items():
        slices.setdefault(eg_order(key), {})[key] = val
    return {n: Expression(t) for n, t in sorted(slices.items())}


def order_slice(e: Expression, n: int) -> Expression:
    return Expression({key: val for key, val in e.terms.items()
                       if eg_order(key) == n})


def beta_split(e: Expression) -> tuple[Expression, Expression]:
    """(even, odd) with respect to the beta grading; exact term by term."""
    even: dict[tuple, Fraction] = {}
    odd: dict[tuple, Fraction] = {}
    for key, val in e.terms.items():
        (odd if MAT_ODD[key[1]] else even)[key] = val
    return Expression(even), Expression(odd)


def substitute_energy_gap(e: Expression) -> Expression:
    """Replace every power of Eg by (2 m c^2)^k."""
    out: dict[tuple, Fraction] = {}
    for (d, mat, ip, w), c in e.terms.items():
        k = d[_I_EG]
        if k:
            d = list(d)
            d[_I_EG] = 0
            d[_I_M] += k
            d[_I_C] += 2 * k
            d = tuple(d)
            c = c * Fraction(2) ** k
        _merge(out, (d, mat, ip, w), c)
    return Expression(out)


def substitute_moments(e: Expression, ge, gte) -> Expression:
    """Replace the gap-scaled moments: mu -> (ge/2 - 1) e hbar c and
    d -> (gte/2 - 1) et hbar c, with exact rational g values."""
    fe = Fraction(ge) / 2 - 1
    ft = Fraction(gte) / 2 - 1
    out: dict[tuple, Fraction] = {}
    for (d, mat, ip, w), c in e.terms.items():
        a, b = d[_I_MU], d[_I_D]
        if a or b:
            factor = fe ** a * ft ** b
            if factor == 0:
                continue
            dd = list(d)
            dd[_I_MU] = dd[_I_D] = 0
            dd[_I_E] += a
            dd[_I_ET] += b
            dd[_I_HBAR] += a + b
            dd[_I_C] += a + b
            d = tuple(dd)
            c = c * factor
        _merge(out, (d, mat, ip, w), c)
    return Expression(out)


def drop_symbols(e: Expression, *names: str) -> Expression:
    """Drop terms carrying a positive power of any named dimension symbol
    (models setting a charge or moment to zero)."""
    idx = [_DIM_INDEX[n] for n in names]
    return Expression({key: val for key, val in e.terms.items()
                       if all(key[0][i] <= 0 for i in idx)})


def project_particle_block(e: Expression) -> Expression:
    """Evaluate the block sign on the particle sector: beta -> +1."""
    out: dict[tuple, Fraction] = {}
    for (d, mat, ip, w), c in e.terms.items():
        left, right = mat_parts(mat)
        if left == 3:
            mat = mat_code(0, right)
        elif left != 0:
            raise ValueError("expression has inter-block matrix content")
        _merge(out, (d, mat, ip, w), c)
    return Expression(out)


# ---------------------------------------------------------------------------
# Serialization

_PHASE_NAMES = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}
_PHASE_VALUES = {"+1": 0, "+i": 1, "-1": 2, "-i": 3}


def to_json_dict(e: Expression) -> dict:
    terms = []
    for (d, mat, ip, w), c in e.sorted_items():
        left, right = mat_parts(mat)
        terms.append({
            "coeff": str(c),
            "dim": {name: d[k] for k, name in enumerate(DIM_NAMES) if d[k]},
            "mat": {"left": left, "right": right, "phase": _PHASE_NAMES[ip]},
            "word": [ATOM_NAMES[a] for a in w],
        })
    return {"terms": terms}


def from_json_dict(data: dict) -> Expression:
    total = Expression()
    for t in data["terms"]:
        m = t["mat"]
        total = total + Expression.term(
            Fraction(t["coeff"]),
            word=tuple(_ATOM_BY_NAME[a] for a in t["word"]),
            mat=mat_code(m["left"], m["right"]),
            ip=_PHASE_VALUES[m["phase"]],
            dims=dim(**t.get("dim", {})),
        )
    return total


_DIM_LATEX = ("\\hbar", "c", "m", "E_g", "e", r"\tilde e", r"\mu''", "d''")


def to_latex(e: Expression) -> str:
    if e.is_zero():
        return "0"
    parts = []
    for (d, mat, ip, w), c in e.sorted_items():
        num, den = [], []
        if abs(c.numerator) != 1:
            num.append(str(abs(c.numerator)))
        if c.denominator != 1:
            den.append(str(c.denominator))
        for k, exp in enumerate(d):
            sym = _DIM_LATEX[k]
            if exp > 0:
                num.append(sym if exp == 1 else f"{sym}^{{{exp}}}")
            elif exp < 0:
                den.append(sym if exp == -1 else f"{sym}^{{{-exp}}}")
        body = " ".join(num) or "1"
        if den:
            body = rf"\frac{{{body}}}{{{' '.join(den)}}}"
        if ip:
            body += " i"
        matname = _MAT_LATEX.get(mat)
        if matname is None:
            left, right = mat_parts(mat)
            matname = rf"(\sigma_{left} \otimes \sigma_{right})"
        if matname:
            body += " " + matname
        for a in w:
            body += " " + ATOM_LATEX[a]
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text

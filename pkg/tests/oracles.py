"""Independent brute-force expander used to cross-check the canonical engine.

Terms here are (complex coefficient, dimension tuple, explicit 4x4 numpy
matrix, word list).  Reordering resolves the *last* out-of-order adjacent
pair each pass (the engine resolves the first), matrices are multiplied
numerically instead of through the basis product table, and nothing is
memoized.  Agreement between the two paths is therefore a real consistency
check, not a tautology.
"""

from __future__ import annotations

import numpy as np

from dyonfw import algebra as al
from dyonfw import clifford as cl

_EPS = {(1, 2): (3, 1), (2, 1): (3, -1), (2, 3): (1, 1),
        (3, 2): (1, -1), (3, 1): (2, 1), (1, 3): (2, -1)}


def _dim_add(d, **kw):
    vec = list(d)
    for name, exp in kw.items():
        vec[al._DIM_INDEX[name]] += exp
    return tuple(vec)


def expand(terms):
    """Fully reorder a list of (coeff, dim, matrix, word) raw terms.

    Returns a dict (dim, word) -> 4x4 complex matrix.
    """
    work = [(complex(c), tuple(d), np.array(m, dtype=complex), list(w))
            for c, d, m, w in terms]
    out: dict[tuple, np.ndarray] = {}
    while work:
        coeff, dims, mat, word = work.pop()
        swap_at = None
        for k in range(len(word) - 2, -1, -1):
            if word[k] > word[k + 1]:
                swap_at = k
                break
        if swap_at is None:
            key = (dims, tuple(word))
            if key in out:
                out[key] = out[key] + coeff * mat
            else:
                out[key] = coeff * mat
            continue
        a, b = word[swap_at], word[swap_at + 1]
        swapped = word[:swap_at] + [b, a] + word[swap_at + 2:]
        work.append((coeff, dims, mat, swapped))
        if al.is_pi(a) and b == al.VPOT:
            i = a - al.VPOT
            rest = word[:swap_at] + word[swap_at + 2:]
            work.append((coeff * 1j, _dim_add(dims, hbar=1, e=1), mat,
                         rest[:swap_at] + [al.field_e(i)] + rest[swap_at:]))
            work.append((coeff * 1j, _dim_add(dims, hbar=1, et=1), mat,
                         rest[:swap_at] + [al.field_b(i)] + rest[swap_at:]))
        elif al.is_pi(a) and al.is_pi(b):
            kk, sign = _EPS[(a - al.VPOT, b - al.VPOT)]
            rest = word[:swap_at] + word[swap_at + 2:]
            work.append((coeff * 1j * sign, _dim_add(dims, hbar=1, c=-1, e=1),
                         mat, rest[:swap_at] + [al.field_b(kk)] + rest[swap_at:]))
            work.append((coeff * -1j * sign, _dim_add(dims, hbar=1, c=-1, et=1),
                         mat, rest[:swap_at] + [al.field_e(kk)] + rest[swap_at:]))
    return {key: m for key, m in out.items() if np.abs(m).max() > 1e-12}


def expression_to_matrices(e: al.Expression) -> dict:
    """Collapse an engine expression to the same (dim, word) -> matrix map."""
    out: dict[tuple, np.ndarray] = {}
    for (d, mat, ip, w), c in e.terms.items():
        left, right = al.mat_parts(mat)
        m = cl.to_numeric(cl.BasisElement(left, right)) * complex(c) * (1j if ip else 1)
        if (d, w) in out:
            out[(d, w)] = out[(d, w)] + m
        else:
            out[(d, w)] = m
    return {key: m for key, m in out.items() if np.abs(m).max() > 1e-12}


def matrices_equal(a: dict, b: dict, tol: float = 1e-9) -> bool:
    keys = set(a) | set(b)
    zero = np.zeros((4, 4), dtype=complex)
    return all(np.abs(a.get(k, zero) - b.get(k, zero)).max() <= tol for k in keys)


def raw_terms_from_expression(e: al.Expression):
    """Engine expression -> raw oracle terms (no reordering applied)."""
    raw = []
    for (d, mat, ip, w), c in e.terms.items():
        left, right = al.mat_parts(mat)
        m = cl.to_numeric(cl.BasisElement(left, right))
        raw.append((complex(c) * (1j if ip else 1), d, m, list(w)))
    return raw


def random_raw_term(rng, max_atoms: int = 5, max_basis: int = 3):
    """One random raw term: integer coefficient, random word, random basis
    product of up to max_basis factors (multiplied numerically)."""
    coeff = complex(rng.randint(-3, 3) or 1, rng.randint(-2, 2))
    word = [rng.randrange(10) for _ in range(rng.randint(0, max_atoms))]
    mat = np.eye(4, dtype=complex)
    for _ in range(rng.randint(0, max_basis)):
        elem = cl.BasisElement(rng.randrange(4), rng.randrange(4),
                               cl.PHASES[rng.randrange(4)])
        mat = mat @ cl.to_numeric(elem)
    dims = al.dim(hbar=rng.randint(-1, 1), c=rng.randint(-1, 1))
    return coeff, dims, mat, word


def engine_term_from_raw(raw) -> al.Expression:
    """Rebuild a raw term inside the engine (basis matrix decomposed exactly)."""
    coeff, dims, mat, word = raw
    total = al.Expression.zero()
    for left in range(4):
        for right in range(4):
            basis = cl.to_numeric(cl.BasisElement(left, right))
            # exact projection: the 16 elements are trace-orthogonal
            overlap = np.trace(basis.conj().T @ mat) / 4
            if abs(overlap) < 1e-12:
                continue
            re, im = overlap.real, overlap.imag
            for part, ip in ((re, 0), (im, 1)):
                val = round(part * 4)
                if val:
                    from fractions import Fraction
                    total = total + al.Expression.term(
                        Fraction(val, 4), word=tuple(word),
                        mat=al.mat_code(left, right), ip=ip, dims=dims)
    # fold in the complex scalar coefficient
    from fractions import Fraction
    re = Fraction(str(coeff.real)) if coeff.real else Fraction(0)
    im = Fraction(str(coeff.imag)) if coeff.imag else Fraction(0)
    out = total.scale(re) if re else al.Expression.zero()
    if im:
        out = out + total.scale(im, ip=1)
    return out

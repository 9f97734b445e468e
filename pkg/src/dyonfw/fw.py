"""Staged block-diagonalization of Dirac-type Hamiltonians.

Each stage conjugates by exp(S) with S = beta * (current odd part) / Eg and
keeps terms through the target 1/Eg order.  Three stages suffice through
order six; the residual odd parts of later stages are checked to start high
enough that they cannot touch the kept even slices.  The stability of the
even slices across stages (h''(n) = h'(n) for n <= 6) is asserted by running
the stages, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from . import algebra as al
from .algebra import Expression


class PipelineError(RuntimeError):
    """A structural guarantee of the staged transformation failed."""


@dataclass(frozen=True)
class OddEvenSplit:
    """Rest-mass slot plus the beta-even and beta-odd remainder."""

    mass: Expression
    even: Expression
    odd: Expression

    def even_slice(self, n: int) -> Expression:
        return al.order_slice(self.even, n)

    def odd_slice(self, n: int) -> Expression:
        return al.order_slice(self.odd, n)


_MASS_KEY = (al.dim(Eg=1), al.BETA_MAT, 0, ())


def split_even_odd(h: Expression) -> OddEvenSplit:
    """Split off the (Eg/2) beta rest-mass term, then grade the remainder."""
    terms = dict(h.terms)
    mass_coeff = terms.pop(_MASS_KEY, None)
    mass = (Expression({_MASS_KEY: mass_coeff}) if mass_coeff is not None
            else Expression.zero())
    even, odd = al.beta_split(Expression(terms))
    return OddEvenSplit(mass=mass, even=even, odd=odd)


def stage_generator(odd: Expression) -> Expression:
    """S = beta * odd / Eg; anti-Hermitian whenever odd is Hermitian and odd."""
    beta = Expression.term(1, mat=al.BETA_MAT, dims=al.dim(Eg=-1))
    return al.mul(beta, odd)


def bch_conjugate(s: Expression, h: Expression, max_order: int) -> Expression:
    """exp(s) h exp(-s) = sum_n ad_s^n(h) / n!, truncated above max_order.

    Every term of s must sit at a positive 1/Eg order, so each nesting raises
    the order and truncating inside the loop is exact.  s is required to be
    anti-Hermitian (that is what makes exp(s) unitary).
    """
    if max_order > 6:
        raise ValueError("expansion supported through order 6 only")
    if not al.is_anti_hermitian(s):
        raise PipelineError("stage generator is not anti-Hermitian")
    if any(al.eg_order(k) < 1 for k in s.terms):
        raise PipelineError("stage generator has terms at non-positive order")
    total = al.truncate_order(h, max_order)
    nested = total
    for n in range(1, 4 * (max_order + 2)):
        nested = al.commutator(s, nested, max_order=max_order)
        if nested.is_zero():
            break
        total = total + nested.scale(Fraction(1, factorial(n)))
    else:
        raise PipelineError("commutator nesting did not terminate")
    return total


@dataclass(frozen=True)
class FWOrderReport:
    """Machine-derived slice of one expansion order against its target form."""

    order: int
    derived: Expression
    reference: Expression | None = None

    @property
    def diff(self) -> Expression | None:
        if self.reference is None:
            return None
        return self.derived - self.reference

    @property
    def passed(self) -> bool | None:
        if self.reference is None:
            return None
        return self.diff.is_zero()

    def to_json_dict(self) -> dict:
        out = {"order": self.order, "pass": self.passed,
               "derived": al.to_json_dict(self.derived)}
        if self.reference is not None:
            out["reference"] = al.to_json_dict(self.reference)
            out["diff"] = al.to_json_dict(self.diff)
        return out

    def to_latex(self) -> str:
        lines = [f"% order {self.order}", al.to_latex(self.derived)]
        if self.reference is not None:
            lines += ["% reference", al.to_latex(self.reference),
                      "% difference", al.to_latex(self.diff)]
        return "\n".join(lines)


@dataclass
class FWRunResult:
    """Everything the staged transformation produced.

    stage1 holds the first conjugated Hamiltonian's split (its odd slices are
    the raw ingredients of the higher-order corrections); even_slices are the
    final stable slices h''(n) = h'(n).
    """

    model: str
    target_order: int
    reports: list[FWOrderReport]
    stage1: OddEvenSplit
    stage2: OddEvenSplit
    stage3: OddEvenSplit
    even_slices: dict[int, Expression] = field(default_factory=dict)

    def report(self, n: int) -> FWOrderReport:
        for r in self.reports:
            if r.order == n:
                return r
        raise ValueError(f"no report for order {n}")

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports if r.passed is not None)


def _min_order(e: Expression) -> int | None:
    return min((al.eg_order(k) for k in e.terms), default=None)


def fw_run(h: Expression, target_order: int = 6, references=None,
           model: str = "dirac") -> FWRunResult:
    """Run the three-stage transformation and report per-order slices.

    references maps order -> target Expression (may be missing orders).
    Raises PipelineError if a residual odd part appears below its guaranteed
    starting order (stage 2 must start at 3, stage 3 at 4) or if the even
    slices are not stable across the third stage.
    """
    if not 1 <= target_order <= 6:
        raise ValueError("target_order must be in 1..6")
    references = references or {}

    split0 = split_even_odd(h)
    if split0.mass.is_zero() and split0.odd.is_zero() and split0.even.is_zero():
        return FWRunResult(model, target_order, [], split0, split0, split0)

    s1 = stage_generator(split0.odd)
    h1 = bch_conjugate(s1, h, target_order)
    split1 = split_even_odd(h1)
    if split1.mass != split0.mass:
        raise PipelineError("rest-mass term not preserved by stage 1")
    o1_start = _min_order(split1.odd)
    if o1_start is not None and o1_start < 1:
        raise PipelineError("stage-1 odd part below order 1")

    s2 = stage_generator(split1.odd)
    h2 = bch_conjugate(s2, h1, target_order)
    split2 = split_even_odd(h2)
    o2_start = _min_order(split2.odd)
    if o2_start is not None and o2_start < 3:
        raise PipelineError(
            f"stage-2 odd part starts at order {o2_start}, expected >= 3")

    s3 = stage_generator(split2.odd)
    h3 = bch_conjugate(s3, h2, target_order)
    split3 = split_even_odd(h3)
    o3_start = _min_order(split3.odd)
    if o3_start is not None and o3_start < 4:
        raise PipelineError(
            f"stage-3 odd part starts at order {o3_start}, expected >= 4")

    # Stability of the even slices: stage 3 must not move them.  Stages 4..6
    # would conjugate by generators built from odd parts starting at order 4,
    # whose even corrections begin beyond 2*4, so they cannot contribute
    # through order 6 given the starting orders verified above.
    for n in range(0, target_order + 1):
        if split3.even_slice(n) != split2.even_slice(n):
            raise PipelineError(f"even slice {n} changed in stage 3")

    reports = []
    even_slices = {}
    for n in range(1, target_order + 1):
        derived = split3.even_slice(n)
        even_slices[n] = derived
        reports.append(FWOrderReport(order=n, derived=derived,
                                     reference=references.get(n)))
    return FWRunResult(model, target_order, reports, split1, split2, split3,
                       even_slices)


def extract_order(reports, n: int) -> Expression:
    """Derived expression of order n from a report list; n must be present."""
    for r in reports:
        if r.order == n:
            return r.derived
    raise ValueError(f"order {n} not in reports")


def nested_commutator(outer: Expression, inner: Expression, times: int,
                      max_order: int | None = None) -> Expression:
    """[outer, [outer, ... [outer, inner]]] with `times` nestings."""
    out = inner
    for _ in range(times):
        out = al.commutator(outer, out, max_order=max_order)
    return out

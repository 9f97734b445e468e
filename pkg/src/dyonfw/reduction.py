"""Physical reduction of the derived slices and the boost-velocity comparison.

A derived slice becomes "physical" by writing the gap out as 2 m c^2 and
dropping terms with two field factors.  The surviving terms are grouped into
the orbital part (block-diagonal matrix content only) and the spin part
(couplings carrying a Pauli factor), then the spin part is decomposed onto
six structural channels

    sector e:   Sigma.B,   Sigma.(E x Pi),  (Sigma.Pi)(B.Pi)
    sector et:  Sigma.E,   Sigma.(B x Pi),  (Sigma.Pi)(E.Pi)

each with a polynomial prefactor in (|Pi|/mc)^2.  Replacing |Pi|/mc by
beta*gamma(beta) turns each prefactor into a power series in the boost speed,
which is compared exactly against the classical spin-precession coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import algebra as al
from . import hamiltonians as ham
from .algebra import Expression
from .fw import FWRunResult
from .series import SeriesPoly, gamma_ratio_series, gamma_series, xi_series


class ReductionError(RuntimeError):
    """Terms survived that none of the expected structures accounts for."""


def physicalize(e: Expression) -> Expression:
    return al.truncate_fields(al.substitute_energy_gap(e))


def physical_orders(result: FWRunResult) -> dict[int, Expression]:
    return {n: physicalize(ex) for n, ex in result.even_slices.items()}


def _is_orbit_key(key) -> bool:
    left, right = al.mat_parts(key[1])
    return right == 0 and left in (0, 3)


def _is_spin_key(key) -> bool:
    left, right = al.mat_parts(key[1])
    return right != 0 and left in (0, 3)


def reduce_to_physical(result: FWRunResult) -> tuple[Expression, Expression]:
    """Group every physicalized term into (H_orbit, H_spin).

    Orbital terms carry only block-diagonal matrix content (identity or the
    block sign); spin terms carry a Pauli factor.  Anything else is a
    classification failure and raises.
    """
    total = Expression.term(1, mat=al.BETA_MAT, dims=al.dim(m=1, c=2))
    if not result.stage3.even.is_zero():
        total = total + al.order_slice(result.stage3.even, 0)
    for ex in result.even_slices.values():
        total = total + ex
    total = physicalize(total)

    orbit, spin, residue = {}, {}, {}
    for key, val in total.terms.items():
        if _is_orbit_key(key):
            orbit[key] = val
        elif _is_spin_key(key):
            spin[key] = val
        else:
            residue[key] = val
    if residue:
        raise ReductionError(f"{len(residue)} terms left unclassified")
    return Expression(orbit), Expression(spin)


def pauli_extra_terms(result: FWRunResult) -> tuple[Expression, Expression]:
    """Split the anomalous-moment terms by field pairing.

    Returns (static, cross): static collects mu-with-B and d-with-E couplings,
    cross collects mu-with-E and d-with-B.  Terms carrying an anomalous moment
    but no single identifiable field report as residue.
    """
    total = Expression.zero()
    for ex in result.even_slices.values():
        total = total + ex
    total = physicalize(total)

    static, cross = {}, {}
    for key, val in total.terms.items():
        mu_exp, d_exp = key[0][6], key[0][7]
        if not mu_exp and not d_exp:
            continue
        kinds = {("E" if a < 3 else "B") for a in key[3] if al.is_field(a)}
        if len(kinds) != 1 or mu_exp + d_exp != 1:
            raise ReductionError(f"unrecognized anomalous term {key}")
        kind = kinds.pop()
        if (mu_exp and kind == "B") or (d_exp and kind == "E"):
            static[key] = val
        else:
            cross[key] = val
    return Expression(static), Expression(cross)


# ---------------------------------------------------------------------------
# Exact decomposition onto structural channels

def decompose(e: Expression, basis: dict) -> dict:
    """Exact coefficients of e on the given expressions.

    Each basis expression must own at least one term key unique to it; the
    residue after peeling all components must vanish.
    """
    signature = {}
    key_owners: dict[tuple, list] = {}
    for label, bexpr in basis.items():
        for key in bexpr.terms:
            key_owners.setdefault(key, []).append(label)
    for label, bexpr in basis.items():
        unique = [k for k in bexpr.terms if len(key_owners[k]) == 1]
        if not unique:
            raise ValueError(f"basis element {label} has no signature key")
        signature[label] = unique[0]

    residue = e
    coeffs = {}
    for label, bexpr in basis.items():
        sig = signature[label]
        c = residue.terms.get(sig, Fraction(0)) / bexpr.terms[sig]
        coeffs[label] = c
        if c:
            residue = residue - bexpr.scale(c)
    if not residue.is_zero():
        raise ReductionError(
            f"{len(residue)} terms outside the channel space")
    return coeffs


_MOMENT_DIMS = {
    "e": al.dim(hbar=1, m=-1, c=-1, e=1),
    "et": al.dim(hbar=1, m=-1, c=-1, et=1),
}
_DIRECT_KIND = {"e": "B", "et": "E"}
_CROSS_KIND = {"e": "E", "et": "B"}

CHANNEL_GAMMA_POWER = {"direct": 0, "cross": 1, "long": 2}
_CHANNEL_MAX_K = {"direct": 2, "cross": 2, "long": 1}


def channel_basis() -> dict:
    """Structural channels with moment-normalized cores, keyed by
    (sector, channel, k) for the (|Pi|/mc)^2k relativistic corrections."""
    basis = {}
    for sector in ("e", "et"):
        dims = _MOMENT_DIMS[sector]
        half = Fraction(1, 2)
        direct = ham.mat_dot_field(0, _DIRECT_KIND[sector], coeff=half, dims=dims)
        cross = ham.sigma_dot_field_cross_pi(
            _CROSS_KIND[sector], coeff=half, dims=al.dim_mul(dims, al.dim(m=-1, c=-1)))
        long_core = al.truncate_fields(al.mul(
            ham.sigma_dot_pi(1, dims=al.dim(m=-1, c=-1)),
            ham.field_dot_pi(_DIRECT_KIND[sector], coeff=half,
                             dims=al.dim_mul(dims, al.dim(m=-1, c=-1)))))
        for name, core in (("direct", direct), ("cross", cross), ("long", long_core)):
            for k in range(_CHANNEL_MAX_K[name] + 1):
                grown = core if k == 0 else al.truncate_fields(
                    al.mul(ham.xi_squared(k), core))
                basis[(sector, name, k)] = grown
    return basis


@dataclass(frozen=True)
class ChannelSeries:
    """Per-channel coefficient series in the boost speed."""

    series: dict

    def __getitem__(self, key):
        return self.series[key]


def spin_channels_to_series(spin: Expression, max_deg: int = 8) -> ChannelSeries:
    """Decompose a spin Hamiltonian and convert prefactors to beta series.

    The expression is projected on the particle block first; each momentum
    factor in a channel core contributes one factor gamma(beta) on top of the
    structural beta-hat vectors.
    """
    flat = al.project_particle_block(spin)
    coeffs = decompose(flat, channel_basis())
    xi = xi_series(max_deg)
    xi2 = xi * xi
    gam = gamma_series(max_deg)
    out = {}
    for sector in ("e", "et"):
        for name in ("direct", "cross", "long"):
            total = SeriesPoly.zero(max_deg)
            for k in range(_CHANNEL_MAX_K[name] + 1):
                c = coeffs.get((sector, name, k), Fraction(0))
                if c:
                    total = total + (xi2 ** k) * c
            total = total * gam ** CHANNEL_GAMMA_POWER[name]
            out[(sector, name)] = total
    return ChannelSeries(out)


def tbmt_channel_series(ge, gte, max_deg: int = 8) -> ChannelSeries:
    """Classical spin-precession coefficients on the same channel structures.

    From H = -(e/mc) s.F - (et/mc) s.F_dual with s = hbar Sigma / 2 and the
    dual fields B -> -E, E -> B; coefficients are exact series in beta.
    """
    gam = gamma_series(max_deg)
    inv_gam = gam.inverse()
    ratio = gamma_ratio_series(max_deg)
    ge = Fraction(ge)
    gte = Fraction(gte)
    out = {
        ("e", "direct"): -(inv_gam + (ge / 2 - 1)),
        ("e", "cross"): ratio - ge / 2,
        ("e", "long"): ratio * (ge / 2 - 1),
        ("et", "direct"): inv_gam + (gte / 2 - 1),
        ("et", "cross"): ratio - gte / 2,
        ("et", "long"): -(ratio * (gte / 2 - 1)),
    }
    return ChannelSeries(out)


@dataclass(frozen=True)
class TbmtMatch:
    """Outcome of the FW-vs-classical comparison for one (ge, gte) pair."""

    ge: Fraction
    gte: Fraction
    mismatches: tuple

    @property
    def passed(self) -> bool:
        return not self.mismatches


def match_tbmt(h_spin: Expression, static: Expression, cross: Expression,
               params: ham.ParticleParams, through_degree: int = 5) -> TbmtMatch:
    """Compare the full spin Hamiltonian against the classical coefficients.

    h_spin is the reduced Dirac spin part; static and cross are the anomalous
    pieces.  The comparison runs channel by channel through the requested
    total degree in the boost speed (a channel structure carrying j beta-hat
    vectors leaves degree through_degree - j for its scalar series).
    """
    total = h_spin + al.substitute_moments(static + cross, params.ge, params.gte)
    fw = spin_channels_to_series(total)
    classical = tbmt_channel_series(params.ge, params.gte)
    mismatches = []
    for (sector, name), fw_series in fw.series.items():
        deg = through_degree - CHANNEL_GAMMA_POWER[name]
        ref = classical[(sector, name)]
        for d in range(deg + 1):
            if fw_series[d] != ref[d]:
                mismatches.append((sector, name, d, fw_series[d], ref[d]))
    return TbmtMatch(Fraction(params.ge), Fraction(params.gte), tuple(mismatches))


# ---------------------------------------------------------------------------
# Scalar series identities

@dataclass(frozen=True)
class SeriesCheckReport:
    name: str
    derived: tuple
    expected: tuple

    @property
    def passed(self) -> bool:
        return self.derived == self.expected


def series_check(max_deg: int = 8) -> list[SeriesCheckReport]:
    """The three prefactor identities relating xi polynomials to gamma forms."""
    xi = xi_series(max_deg)
    xi2 = xi * xi
    gam = gamma_series(max_deg)

    reports = []
    intrinsic = 1 - xi2 * Fraction(1, 2) + xi2 * xi2 * Fraction(3, 8)
    reports.append(SeriesCheckReport(
        "intrinsic_prefactor_vs_inverse_gamma",
        tuple(intrinsic[d] for d in range(5)),
        tuple(gam.inverse()[d] for d in range(5))))

    boosted = (1 - xi2 * Fraction(3, 4) + xi2 * xi2 * Fraction(5, 8)) * xi * Fraction(1, 2)
    target = (1 - gamma_ratio_series(max_deg)) * SeriesPoly.x(max_deg)
    reports.append(SeriesCheckReport(
        "boosted_prefactor_vs_gamma_ratio",
        tuple(boosted[d] for d in range(6)),
        tuple(target[d] for d in range(6))))

    explicit_gamma = (Fraction(1), Fraction(0), Fraction(1, 2), Fraction(0),
                      Fraction(3, 8), Fraction(0), Fraction(5, 16))
    reports.append(SeriesCheckReport(
        "lorentz_factor_series",
        tuple(gam[d] for d in range(7)),
        explicit_gamma))
    return reports


# ---------------------------------------------------------------------------
# Effective dipole moments

def effective_dipoles(order: int) -> tuple[tuple, tuple]:
    """Boosted effective dipole pair as component expressions (indexed 1..3).

    order 1 gives the leading pair

        p_eff = beta mu_p + (xi x mu_m) / 2
        m_eff = beta mu_m - (xi x mu_p) / 2

    with the intrinsic moments mu_m = (e hbar/2mc) Sigma and
    mu_p = -(et hbar/2mc) Sigma; order 4 attaches the relativistic prefactor
    polynomials in |xi|^2 to the intrinsic and boosted pieces.
    """
    if order not in (1, 4):
        raise ValueError("supported expansion orders: 1 and 4")
    half = Fraction(1, 2)
    mu_m_dims = al.dim(hbar=1, m=-1, c=-1, e=1)
    mu_p_dims = al.dim(hbar=1, m=-1, c=-1, et=1)

    if order == 1:
        intrinsic_pref = Expression.term(1)
        cross_pref = Expression.term(half)
    else:
        xi2 = ham.xi_squared()
        xi4 = ham.xi_squared(2)
        intrinsic_pref = (Expression.term(1) + xi2.scale(Fraction(-1, 2))
                          + xi4.scale(Fraction(3, 8)))
        cross_pref = (Expression.term(1) + xi2.scale(Fraction(-3, 4))
                      + xi4.scale(Fraction(5, 8))).scale(half)

    def moment_component(i: int, coeff, dims, with_block_sign: bool) -> Expression:
        mat = al.mat_code(3 if with_block_sign else 0, i)
        return Expression.term(coeff, mat=mat, dims=dims)

    def xi_cross_moment(i: int, coeff, dims) -> Expression:
        # (xi x moment)_i = eps_ijk (Pi_j / mc) * moment_k
        out = Expression.zero()
        for a, j, k, sign in ham._EPS_TRIPLES:
            if a == i:
                out = out + Expression.term(
                    Fraction(coeff) * sign, word=(al.pi(j),),
                    mat=al.mat_code(0, k),
                    dims=al.dim_mul(dims, al.dim(m=-1, c=-1)))
        return out

    p_eff, m_eff = [], []
    for i in (1, 2, 3):
        p_eff.append(al.truncate_fields(
            al.mul(intrinsic_pref, moment_component(i, -half, mu_p_dims, True))
            + al.mul(cross_pref, xi_cross_moment(i, half, mu_m_dims))))
        m_eff.append(al.truncate_fields(
            al.mul(intrinsic_pref, moment_component(i, half, mu_m_dims, True))
            - al.mul(cross_pref, xi_cross_moment(i, -half, mu_p_dims))))
    return tuple(p_eff), tuple(m_eff)

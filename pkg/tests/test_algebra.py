"""Canonical form, normal ordering, truncation, conjugation, serialization."""

import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from dyonfw import algebra as al
from dyonfw import hamiltonians as ham

import oracles


def term(coeff, word=(), mat=al.ID_MAT, ip=0, **dims):
    return al.Expression.term(coeff, word=word, mat=mat, ip=ip, dims=al.dim(**dims))


def test_pi_past_potential_emits_field_correction():
    # Pi_x V = V Pi_x + i hbar (e E_x + et B_x)
    lhs = term(1, word=(al.pi(1), al.VPOT))
    expected = (term(1, word=(al.VPOT, al.pi(1)))
                + term(1, word=(al.field_e(1),), ip=1, hbar=1, e=1)
                + term(1, word=(al.field_b(1),), ip=1, hbar=1, et=1))
    assert lhs == expected


def test_pi_pi_swap_emits_dual_field_pair():
    # Pi_y Pi_x = Pi_x Pi_y - (i hbar / c)(e B_z - et E_z)
    lhs = term(1, word=(al.pi(2), al.pi(1)))
    expected = (term(1, word=(al.pi(1), al.pi(2)))
                + term(-1, word=(al.field_b(3),), ip=1, hbar=1, c=-1, e=1)
                + term(1, word=(al.field_e(3),), ip=1, hbar=1, c=-1, et=1))
    assert lhs == expected


def test_fields_commute_without_correction():
    assert term(1, word=(al.pi(2), al.field_e(1))) == term(1, word=(al.field_e(1), al.pi(2)))
    assert term(1, word=(al.VPOT, al.field_b(2))) == term(1, word=(al.field_b(2), al.VPOT))


def test_mul_by_zero():
    omega = ham.omega_odd()
    assert al.mul(omega, al.Expression.zero()).is_zero()
    assert al.mul(al.Expression.zero(), omega).is_zero()


def test_omega_squared_closed_form():
    omega = ham.omega_odd()
    expected = (ham.pi_squared(1, dims=al.dim(c=2))
                + ham.mat_dot_field(0, "B", coeff=-1, dims=al.dim(hbar=1, c=1, e=1))
                + ham.mat_dot_field(0, "E", coeff=1, dims=al.dim(hbar=1, c=1, et=1)))
    assert al.mul(omega, omega) == expected


def test_omega_cubed_is_odd_with_momentum_degree_three():
    omega = ham.omega_odd()
    cubed = al.mul(al.mul(omega, omega), omega)
    even, odd = al.beta_split(cubed)
    assert even.is_zero()
    degrees = {sum(1 for a in key[3] if al.is_pi(a)) for key in cubed.terms}
    assert degrees == {1, 3}
    # cross-check the full canonical form against the brute-force expander
    raw = oracles.raw_terms_from_expression(omega)
    triple = [(c1 * c2 * c3, al.dim_mul(al.dim_mul(d1, d2), d3),
               m1 @ m2 @ m3, w1 + w2 + w3)
              for c1, d1, m1, w1 in raw
              for c2, d2, m2, w2 in raw
              for c3, d3, m3, w3 in raw]
    assert oracles.matrices_equal(
        oracles.expand(triple), oracles.expression_to_matrices(cubed))


def test_commutator_of_anything_with_itself_vanishes():
    d_op = al.commutator(ham.omega_odd(), ham.omega_even())
    assert al.commutator(d_op, d_op).is_zero()


def test_truncate_fields_drops_bilinear_terms():
    mixed = term(1, word=(al.field_e(1), al.field_b(2), al.pi(1)))
    assert al.truncate_fields(mixed).is_zero()
    kinetic = ham.pi_squared()
    assert al.truncate_fields(kinetic) == kinetic


def test_sixth_power_weak_field_reduction():
    # Omega^6 under linear-field truncation is the kinetic sextic plus a
    # quartic Zeeman-type piece: c^6 Pi^6 - 3 c^5 hbar Pi^4 Sigma.(eB - et E);
    # rescaled by (1/2mc^2)^5 that is the 1/32 kinetic and -3/16 dipole pair.
    omega = ham.omega_odd()
    omega2 = al.mul(omega, omega)
    omega6 = al.mul(al.mul(omega2, omega2), omega2)
    direct = al.truncate_fields(
        ham.pi_squared(3, dims=al.dim(c=6))
        + al.mul(ham.pi_squared(2, dims=al.dim(c=5, hbar=1)),
                 ham.mat_dot_field(0, "B", coeff=-3, dims=al.dim(e=1))
                 + ham.mat_dot_field(0, "E", coeff=3, dims=al.dim(et=1))))
    assert al.truncate_fields(omega6) == direct


def test_hermitian_conjugation_examples():
    d_op = al.commutator(ham.omega_odd(), ham.omega_even())
    assert al.hermitian_conjugate(d_op) == -d_op
    w_op = al.commutator(d_op, ham.omega_odd())
    assert al.hermitian_conjugate(w_op) == w_op
    kinetic = al.mul(al.Expression.term(1, mat=al.BETA_MAT), ham.pi_squared())
    assert al.hermitian_conjugate(kinetic) == kinetic


def test_conjugate_matches_numeric_oracle_with_commuting_placeholders():
    # evaluate D as a matrix with scalar placeholders for the field atoms
    import numpy as np
    from dyonfw import clifford as cl
    d_op = al.commutator(ham.omega_odd(), ham.omega_even())
    placeholders = {al.field_e(i): 0.3 * i for i in (1, 2, 3)}
    placeholders.update({al.field_b(i): 0.1 * i + 0.7 for i in (1, 2, 3)})
    numeric = np.zeros((4, 4), dtype=complex)
    for (d, mat, ip, w), c in d_op.terms.items():
        scalar = complex(c) * (1j if ip else 1)
        for atom in w:
            scalar *= placeholders[atom]
        numeric += scalar * cl.to_numeric(cl.BasisElement(*al.mat_parts(mat)))
    assert np.abs(numeric + numeric.conj().T).max() < 1e-12  # anti-Hermitian


def test_order_bookkeeping_reads_energy_gap_exponent():
    e = term(1, word=(al.pi(1),), Eg=-3)
    assert al.eg_order(next(iter(e.terms))) == 3
    assert al.truncate_order(e, 2).is_zero()
    assert al.truncate_order(e, 3) == e


def test_substitute_energy_gap():
    e = term(3, word=(al.pi(1),), Eg=-2)
    out = al.substitute_energy_gap(e)
    assert out == term(Fraction(3, 4), word=(al.pi(1),), m=-2, c=-4)


def test_substitute_moments():
    e = term(1, word=(al.field_b(1),), mu=1)
    out = al.substitute_moments(e, ge=3, gte=2)
    assert out == term(Fraction(1, 2), word=(al.field_b(1),), e=1, hbar=1, c=1)
    assert al.substitute_moments(e, ge=2, gte=2).is_zero()


def test_normal_order_rebuilds_hand_made_dicts():
    raw = al.Expression({(al.DIM_ZERO, al.ID_MAT, 0, (al.pi(2), al.pi(1))): Fraction(1)})
    fixed = al.normal_order(raw)
    assert fixed == term(1, word=(al.pi(2), al.pi(1)))
    assert (al.DIM_ZERO, al.ID_MAT, 0, (al.pi(1), al.pi(2))) in fixed.terms


def test_json_roundtrip():
    d_op = al.commutator(ham.omega_odd(), ham.omega_even())
    data = al.to_json_dict(d_op)
    assert al.from_json_dict(data) == d_op
    assert data["terms"][0]["mat"]["phase"] in ("+1", "+i")


def test_latex_emits_zero_and_terms():
    assert al.to_latex(al.Expression.zero()) == "0"
    text = al.to_latex(term(Fraction(-1, 2), word=(al.pi(1),), mat=al.BETA_MAT, c=2))
    assert "\\check\\beta" in text and "\\Pi_x" in text and "\\frac" in text


# ---------------------------------------------------------------------------
# Properties

_atoms = st.integers(min_value=0, max_value=9)
_words = st.lists(_atoms, min_size=0, max_size=6).map(tuple)


@settings(max_examples=300, deadline=None)
@given(_words)
def test_normal_order_is_confluent(word):
    """Same canonical form from the engine and the opposite-sweep expander."""
    import numpy as np
    engine = al.Expression.term(1, word=word)
    brute = oracles.expand([(1.0, al.DIM_ZERO, np.eye(4, dtype=complex), list(word))])
    assert oracles.matrices_equal(brute, oracles.expression_to_matrices(engine))


@settings(max_examples=200, deadline=None)
@given(_words, st.integers(0, 15), st.integers(0, 3))
def test_hermitian_conjugate_is_an_involution(word, mat, ip):
    e = al.Expression.term(Fraction(3, 7), word=word, mat=mat, ip=ip,
                           dims=al.dim(hbar=1))
    assert al.hermitian_conjugate(al.hermitian_conjugate(e)) == e


@settings(max_examples=100, deadline=None)
@given(_words, _words)
def test_product_matches_bruteforce(word1, word2):
    import numpy as np
    a = al.Expression.term(1, word=word1)
    b = al.Expression.term(2, word=word2, dims=al.dim(c=1))
    engine = al.mul(a, b)
    brute = oracles.expand([(2.0, al.dim(c=1), np.eye(4, dtype=complex),
                             list(word1) + list(word2))])
    assert oracles.matrices_equal(brute, oracles.expression_to_matrices(engine))


def test_randomized_oracle_equivalence_small():
    rng = random.Random(20260810)
    for _ in range(100):
        raw = [oracles.random_raw_term(rng) for _ in range(rng.randint(1, 3))]
        engine = al.Expression.zero()
        for r in raw:
            engine = engine + oracles.engine_term_from_raw(r)
        assert oracles.matrices_equal(
            oracles.expand(raw), oracles.expression_to_matrices(engine))

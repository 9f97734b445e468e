"""Hamiltonian construction and the even/odd decomposition."""

from fractions import Fraction

from dyonfw import algebra as al
from dyonfw import hamiltonians as ham
from dyonfw.fw import split_even_odd


def test_dirac_hamiltonian_pieces():
    h = ham.build_dirac_hamiltonian(ham.ParticleParams(e=1, etilde=1))
    split = split_even_odd(h)
    assert split.even == ham.potential()
    assert split.odd == ham.omega_odd()
    assert split.mass == ham.rest_mass_term()


def test_neutral_particle_has_no_potential():
    h = ham.build_dirac_hamiltonian(ham.ParticleParams(e=0, etilde=0))
    assert h == ham.rest_mass_term() + ham.omega_odd()


def test_electron_case_matches_dirac():
    # no magnetic charge: structurally the same operator content
    h = ham.build_dirac_hamiltonian(ham.ParticleParams(e=1, etilde=0))
    assert h == ham.rest_mass_term() + ham.omega_odd() + ham.potential()


def test_pauli_reduces_to_dirac_at_g_two():
    p = ham.ParticleParams(e=1, etilde=1, ge=2, gte=2)
    assert ham.build_dirac_pauli_hamiltonian(p) == ham.build_dirac_hamiltonian(p)


def test_pauli_split_gains_field_couplings():
    p = ham.ParticleParams(e=1, etilde=1, ge=3, gte=3)
    h = ham.build_dirac_pauli_hamiltonian(p)
    split = split_even_odd(h)
    even_extra = split.even - ham.potential()
    odd_extra = split.odd - ham.omega_odd()
    assert even_extra == ham.pauli_even_coupling().scale(1, dims=al.dim(Eg=-1))
    assert odd_extra == ham.pauli_odd_coupling().scale(1, dims=al.dim(Eg=-1))
    # couplings are Hermitian even though the odd one carries i gamma
    assert al.is_hermitian(even_extra)
    assert al.is_hermitian(odd_extra)


def test_electron_amm_only():
    p = ham.ParticleParams(e=1, etilde=0, ge=Fraction("2.0023"), gte=2)
    h = ham.build_dirac_pauli_hamiltonian(p)
    extra = h - ham.build_dirac_hamiltonian(p)
    assert not extra.is_zero()
    assert al.drop_symbols(extra, "mu").is_zero()  # everything carries mu


def test_split_of_zero():
    split = split_even_odd(al.Expression.zero())
    assert split.mass.is_zero() and split.even.is_zero() and split.odd.is_zero()


def test_derived_moment_factors():
    p = ham.ParticleParams(m=2, e=3, etilde=5, ge=4, gte=1)
    assert p.amm_factor == 1
    assert p.aem_factor == Fraction(-1, 2)
    assert p.mu_prime() == 3 * 1 / (2 * 2)
    assert p.d_prime() == 5 * -0.5 / (2 * 2)

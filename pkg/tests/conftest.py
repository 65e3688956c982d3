"""Shared fixtures: the full reference-grid spectra and normalized states,
computed once per session."""

from __future__ import annotations

import pytest

from rashbadot.radial_basis import DotParameters, exterior_pair, interior_pair
from rashbadot.reference_levels import REFERENCE_ROWS
from rashbadot.spectral_solver import find_spectrum
from rashbadot.wavefunction import normalize, solve_coefficients


@pytest.fixture(scope="session")
def table_spectra():
    """{(m, v, beta_factor): EnergySpectrum} over the whole reference grid."""
    out = {}
    for row in REFERENCE_ROWS:
        params = DotParameters(v=row.v, beta=row.beta, m=row.m)
        out[(row.m, row.v, row.beta_factor)] = find_spectrum(params)
    return out


@pytest.fixture(scope="session")
def table_states(table_spectra):
    """{(m, v, beta_factor): [normalized BoundState, ...]} for every level."""
    out = {}
    for key, spectrum in table_spectra.items():
        states = []
        for e in spectrum.levels:
            states.append(normalize(solve_coefficients(spectrum.params, e)))
        out[key] = states
    return out


def matching_residuals(state) -> list[float]:
    """The four continuity mismatches at r = 1, scaled by local magnitude."""
    p = state.params
    m = p.m
    bi, bi1 = interior_pair(m, state.e, p.beta, 1.0)
    be, be1 = exterior_pair(m, state.e, p.v, p.beta, 1.0)
    pairs = (
        (state.c1 * bi.f + state.d1 * bi.g, state.c2 * be.f + state.d2 * be.g),
        (state.c1 * bi.df + state.d1 * bi.dg, state.c2 * be.df + state.d2 * be.dg),
        (state.c1 * bi1.g + state.d1 * bi1.f, state.c2 * be1.g - state.d2 * be1.f),
        (state.c1 * bi1.dg + state.d1 * bi1.df, state.c2 * be1.dg - state.d2 * be1.df),
    )
    return [abs(a - b) / max(abs(a), abs(b), 1.0) for a, b in pairs]

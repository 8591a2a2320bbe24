"""Boundary coefficients, localized Landau spectra and identity checks."""
import json

from . import _core
from ._core import (
    LleError,
    LocalSpectrum,
    coeff,
    entropy,
    hermite_fn,
    hermite_poly,
    kernel,
    laguerre,
    lambda_ell,
    lll_disk_eigenvalues,
    nu_from_mu,
    poly_boundary_coeff,
    region_info,
    removed_area,
    renyi_h,
    roccaforte_terms,
    schatten_cross_norm,
    spectrum,
    suite_names,
)


def scaling_fit(Ls, values, model="linear"):
    return json.loads(_core.scaling_fit(list(Ls), list(values), model))


def verify(suite, seed=42, cases=1000, threads=1):
    return json.loads(_core.verify(suite, seed, cases, threads))


def region(spec):
    """Region JSON text from a dict, for the functions taking a region."""
    return spec if isinstance(spec, str) else json.dumps(spec)

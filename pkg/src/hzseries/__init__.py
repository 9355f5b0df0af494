"""Hurwitz class numbers, Hirzebruch-Zagier series and class number identities."""

from .arith import Rational, ResidueClass, kronecker, sigma1, sigma1_twisted
from .discform import DiscriminantForm, GroupElement, build_discriminant_form, ternary_check, zero_count_check
from .hurwitz import HurwitzTable, TableTooSmall, build_table, hurwitz_formula, hurwitz_oracle, load_or_build
from .identities import (
    CalibrationError,
    CalibrationReport,
    IdentityRecord,
    RouteDisagreement,
    calibrate,
    restricted_sum,
    scalarize_prime,
    verify_catalog,
)
from .quadratic import PellOrbitSet, fundamental_unit, norm_equation_orbits
from .series import CoefficientValue, SeriesTable, class_number_sum, correction_sum, hz_coefficient, series_table

__version__ = "0.1.0"

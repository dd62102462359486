"""Per-atom and per-molecule physicochemical properties."""

from .crippen import crippen_contributions, crippen_logp_mr
from .estate import estate_indices
from .gasteiger import GasteigerError, gasteiger_charges
from .labute import labute_contributions
from .properties import (
    AtomProperties,
    PropertyFile,
    PropertyFileError,
    atom_properties,
    native_properties,
    write_property_file,
)
from .scalars import SCALAR_NAMES, MissingCoordinatesError, molecule_scalars
from .tpsa import tpsa_contributions
from .vcharge import VChargeError, v_charges

__all__ = [
    "AtomProperties", "GasteigerError", "MissingCoordinatesError", "PropertyFile", "PropertyFileError",
    "SCALAR_NAMES", "VChargeError", "atom_properties", "crippen_contributions", "crippen_logp_mr",
    "estate_indices", "gasteiger_charges", "labute_contributions", "molecule_scalars",
    "native_properties", "tpsa_contributions", "v_charges", "write_property_file",
]

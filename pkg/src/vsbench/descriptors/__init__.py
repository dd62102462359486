"""391-dimensional scalar + signed autocorrelation descriptor."""

from .autocorr import (
    AC2D_LEN,
    AC3D_LEN,
    DESCRIPTOR_LEN,
    RADIAL_EDGES,
    DescriptorVector,
    descriptor_layout,
    descriptor_properties,
    full_descriptor,
    signed_autocorrelation_2d,
    signed_autocorrelation_3d,
)
from .io import read_descriptor_csv, write_descriptor_csv

__all__ = [
    "AC2D_LEN", "AC3D_LEN", "DESCRIPTOR_LEN", "RADIAL_EDGES", "DescriptorVector", "descriptor_layout",
    "descriptor_properties", "full_descriptor", "read_descriptor_csv", "signed_autocorrelation_2d",
    "signed_autocorrelation_3d", "write_descriptor_csv",
]

"""Photon path-reuse renderer: Python bindings for the C++ core."""

from ._pathreuse import (
    builtin_scenes,
    decode_path_info,
    encode_path_info,
    energies_close,
    memory_footprint,
    prune_probability,
    render_builtin,
    run_builtin,
)

__all__ = [
    "builtin_scenes",
    "decode_path_info",
    "encode_path_info",
    "energies_close",
    "memory_footprint",
    "prune_probability",
    "render_builtin",
    "run_builtin",
]

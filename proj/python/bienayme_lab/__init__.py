"""Conditioned Bienayme trees: samplers, codings and scaling sequences."""

from ._core import (
    ConstructError,
    OffspringDist,
    SamplerError,
    SpecError,
    Q_table,
    a_n,
    b_n,
    construct,
    count_Sd,
    decode,
    encode,
    ff_decode,
    h_n,
    load,
    preset_names,
    sample,
    stochorder,
    vervaat,
)

__all__ = [
    "ConstructError",
    "OffspringDist",
    "SamplerError",
    "SpecError",
    "Q_table",
    "a_n",
    "b_n",
    "construct",
    "count_Sd",
    "decode",
    "encode",
    "ff_decode",
    "h_n",
    "load",
    "preset_names",
    "sample",
    "stochorder",
    "vervaat",
]

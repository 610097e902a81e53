"""Python access to the Zecale aggregation library."""

from ._zecale import (
    DemoKeys,
    bench_pairings,
    decode_xvalid,
    encode_xvalid,
    gas_saved,
    hash_id,
    nested_modulus,
    to_digest,
    to_field,
    verify_demo,
    wrapping_modulus,
    xh_limbs,
)

__all__ = [
    "DemoKeys",
    "bench_pairings",
    "decode_xvalid",
    "encode_xvalid",
    "gas_saved",
    "hash_id",
    "nested_modulus",
    "to_digest",
    "to_field",
    "verify_demo",
    "wrapping_modulus",
    "xh_limbs",
]

"""Seeded per-(phase, vertex) random streams and exponential sampling.

Every stream is a counter-based generator keyed by ``(master_seed, phase,
vertex)``.  The key is built by folding the three inputs through the
SplitMix64 finaliser ``mix``::

    key = mix(mix(mix(seed ^ SEED_SALT) + phase) + vertex)     (mod 2**64)

and the ``j``-th raw word of a stream is ``mix(key + (j + 1) * GOLDEN)``.
A raw word ``w`` becomes a uniform in ``(0, 1]`` as ``((w >> 11) + 1) / 2**53``,
so an all-zero top half maps to the smallest positive value and 1.0 is
reachable.  ``mix`` is a bijection on 64-bit words, so for a fixed seed and
phase distinct vertices always get distinct keys.

The scalar path (:class:`RandomStream`) and the vectorised path
(:func:`phase_radii`) produce bit-identical values.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
SEED_SALT = 0x5851F42D4C957F2D
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / float(1 << 53)


def _mix(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def _check_seed(master_seed: int) -> int:
    master_seed = int(master_seed)
    if not 0 <= master_seed <= MASK64:
        raise ValueError(f"master seed must be a 64-bit unsigned integer, got {master_seed}")
    return master_seed


def stream_key(master_seed: int, phase: int, vertex: int) -> int:
    seed = _check_seed(master_seed)
    k = _mix(seed ^ SEED_SALT)
    k = _mix(k + int(phase))
    return _mix(k + int(vertex))


class RandomStream:
    """Deterministic stream of uniforms in ``(0, 1]`` for one (phase, vertex)."""

    __slots__ = ("key", "counter")

    def __init__(self, key: int, counter: int = 0):
        self.key = key & MASK64
        self.counter = counter

    def next_word(self) -> int:
        self.counter += 1
        return _mix(self.key + self.counter * GOLDEN)

    def uniform(self) -> float:
        return ((self.next_word() >> 11) + 1) * _INV_2_53

    def __repr__(self) -> str:
        return f"RandomStream(key={self.key:#018x}, counter={self.counter})"


def derive_stream(master_seed: int, phase: int, vertex: int) -> RandomStream:
    return RandomStream(stream_key(master_seed, phase, vertex))


def exponential_from_uniform(u, beta: float):
    """Inverse-transform an ``Exp(beta)`` sample from ``u`` in ``(0, 1]``."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    return -np.log(u) / beta


def sample_exponential(stream: RandomStream, beta: float) -> float:
    """Draw one ``Exp(beta)`` value (mean ``1/beta``) from ``stream``."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    # routed through a 1-element array so scalar and vector paths share one log kernel
    return float(exponential_from_uniform(np.array([stream.uniform()]), beta)[0])


def vertex_uniforms(master_seed: int, phase: int, vertices, draw: int = 0) -> np.ndarray:
    """The ``draw``-th uniform of every listed vertex's stream for ``phase``."""
    seed = _check_seed(master_seed)
    base = _mix(_mix(seed ^ SEED_SALT) + int(phase))
    v = np.asarray(vertices, dtype=np.uint64)
    keys = _mix_array(np.uint64(base) + v)
    words = _mix_array(keys + np.uint64(((draw + 1) * GOLDEN) & MASK64))
    return ((words >> np.uint64(11)) + np.uint64(1)).astype(np.float64) * _INV_2_53


def phase_radii(master_seed: int, phase: int, vertices, beta: float) -> np.ndarray:
    """First ``Exp(beta)`` sample of each vertex's stream for ``phase``.

    Equal, element for element, to
    ``sample_exponential(derive_stream(master_seed, phase, v), beta)``.
    """
    return exponential_from_uniform(vertex_uniforms(master_seed, phase, vertices), beta)

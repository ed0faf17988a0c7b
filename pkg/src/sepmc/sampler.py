"""Uniform sampling in m-balls with deterministic, splittable random streams.

Stream derivation
-----------------
A stream is identified by the triple (seed, worker, chunk).  It is realized
as numpy's Philox counter-based generator keyed through
``SeedSequence(entropy=seed, spawn_key=(worker, chunk))``; both SeedSequence
hashing and the Philox bit stream are stable, documented parts of numpy, so
identical triples reproduce identical draws bit-for-bit on any machine and
distinct triples give statistically independent streams.  Merging results
from any partition of chunks over workers is therefore scheduling-free.

Ball sampling
-------------
A point uniform in the m-ball of radius r is drawn as z/|z| * r * u^(1/m)
with z an m-vector of independent standard normals and u uniform on (0, 1);
this is exactly uniform in any dimension.  Draw order per batch is fixed
(normals first, then radial uniforms), which pins the byte-exact output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Largest batch materialized at once, to bound memory for big counts.
_DRAW_BATCH = 1 << 16

_U64 = 1 << 64


@dataclass(frozen=True)
class StreamSpec:
    """Reproducible random stream id: (master seed, worker index, chunk index)."""

    seed: int
    worker: int
    chunk: int

    def __post_init__(self):
        if not (0 <= self.seed < _U64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.worker < 0 or self.chunk < 0:
            raise ValueError("worker and chunk indices must be non-negative")

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        ss = np.random.SeedSequence(
            entropy=self.seed, spawn_key=(self.worker, self.chunk)
        )
        return np.random.Generator(np.random.Philox(ss))


def derive_stream(seed: int, worker: int, chunk: int) -> StreamSpec:
    """Injective (seed, worker, chunk) -> stream mapping."""
    return StreamSpec(int(seed), int(worker), int(chunk))


# Radial uniforms are clamped to [tiny, 1 - 2^-40].  The lower clamp keeps
# u^(1/m) defined at u = 0; the upper one keeps u^(1/m) far enough below 1
# that the recomputed point norm can never round above the radius.  Both
# clamps move sets of measure <= 1e-12.
_U_LO = np.finfo(float).tiny
_U_HI = 1.0 - 2.0**-40


def ball_from_draws(normals: np.ndarray, uniforms: np.ndarray, radius: float) -> np.ndarray:
    """Deterministic map from raw draws to points in the radius-ball.

    ``normals`` has shape (n, m), ``uniforms`` shape (n,) with values in
    [0, 1).  A zero normal vector (probability zero, but cheap to guard) is
    clamped away from 0/0.
    """
    m = normals.shape[1]
    u = np.clip(uniforms, _U_LO, _U_HI)
    norms = np.sqrt(np.einsum("ij,ij->i", normals, normals))
    norms = np.maximum(norms, np.finfo(float).tiny)
    scale = radius * u ** (1.0 / m) / norms
    return normals * scale[:, None]


def sample_ball(dim: int, radius: float, stream, count: int) -> np.ndarray:
    """Draw ``count`` points uniform in the closed dim-ball of given radius.

    ``stream`` is a StreamSpec (the draw sequence then restarts at the
    stream origin) or an np.random.Generator (draws continue from its
    current state, for callers accumulating statistics over many calls).
    Returns an array of shape (count, dim) with every row norm <= radius.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if radius <= 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    rng = stream.generator() if isinstance(stream, StreamSpec) else stream
    out = np.empty((count, dim))
    done = 0
    while done < count:
        n = min(_DRAW_BATCH, count - done)
        z = rng.standard_normal((n, dim))
        u = rng.random(n)
        out[done : done + n] = ball_from_draws(z, u, radius)
        done += n
    return out

"""Seedable counter-based random number generation.

The generator is fixed by this project so that runs are bit-reproducible and
so that the exact draw streams can be recreated in any language.  The full
algorithm, in order of consumption:

* Raw 64-bit stream.  Output ``k`` (1-based) of the stream with seed ``s`` is
  ``mix64((s + k * 0x9E3779B97F4A7C15) mod 2^64)`` where ``mix64`` is the
  standard splitmix64 finalizer::

      z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
      z ^= z >> 27;  z *= 0x94D049BB133111EB
      z ^= z >> 31

* Uniform in (0, 1): take the top 53 bits, ``u = (raw >> 11 + 0.5) * 2^-53``.
  Never returns 0.0 or 1.0.

* Standard normal: two uniforms per deviate,
  ``z = sqrt(-2 ln u1) * cos(2 pi u2)`` with ``u1`` then ``u2`` drawn as two
  consecutive blocks of the batch size.

* Gamma(shape >= 1, rate 1): squeeze rejection sampling.  Each round draws
  one candidate per still-empty slot, in slot order; a candidate consumes
  exactly one normal deviate and one uniform (three uniforms total).  With
  ``d = shape - 1/3``, ``c = 1/sqrt(9 d)``, ``v = (1 + c x)^3``, the
  candidate ``d v`` is accepted when ``v > 0`` and either
  ``u < 1 - 0.0331 x^4`` or ``ln u < x^2 / 2 + d (1 - v + ln v)``.
  For shape < 1 a Gamma(shape + 1) batch is drawn first, then one uniform
  per value for the boost ``g * u^(1/shape)``.

* Substream seeds: replication ``j`` of a run with master seed ``s`` uses
  ``mix64((s + j * 0xD1B54A32D192ED03) mod 2^64)``.

All state lives in the :class:`Stream` instance; nothing global is touched.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

__all__ = ["Stream", "substream_seed", "mix64"]

_MASK = (1 << 64) - 1
_U64 = np.uint64
_GOLDEN = _U64(0x9E3779B97F4A7C15)
_SUBSTREAM = _U64(0xD1B54A32D192ED03)
_MUL1 = _U64(0xBF58476D1CE4E5B9)
_MUL2 = _U64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = _U64(30), _U64(27), _U64(31), _U64(11)
_TWO_M53 = 2.0 ** -53


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _MUL1
    z = (z ^ (z >> _S27)) * _MUL2
    return z ^ (z >> _S31)


def mix64(value: int) -> int:
    """The splitmix64 finalizer on a single 64-bit integer."""
    z = value & _MASK
    z = ((z ^ (z >> 30)) * int(_MUL1)) & _MASK
    z = ((z ^ (z >> 27)) * int(_MUL2)) & _MASK
    return z ^ (z >> 31)


def substream_seed(master_seed: int, index: int) -> int:
    """Derived seed for substream ``index`` (>= 1) of ``master_seed``."""
    if index < 1:
        raise DomainError(f"substream index must be >= 1, got {index}")
    return mix64(master_seed + index * int(_SUBSTREAM))


class Stream:
    """Counter-based deviate stream; see the module docstring for the exact
    algorithm of every draw."""

    def __init__(self, seed: int):
        self._seed = _U64(int(seed) & _MASK)
        self._counter = 0

    @property
    def consumed(self) -> int:
        """Number of raw 64-bit outputs consumed so far."""
        return self._counter

    def raw(self, count: int) -> np.ndarray:
        idx = np.arange(self._counter + 1, self._counter + count + 1,
                        dtype=np.uint64)
        self._counter += count
        return _mix(self._seed + idx * _GOLDEN)

    def uniforms(self, count: int) -> np.ndarray:
        """i.i.d. uniforms strictly inside (0, 1)."""
        high = np.asarray(self.raw(count) >> _S11, dtype=np.float64)
        return (high + 0.5) * _TWO_M53

    def normals(self, count: int) -> np.ndarray:
        """i.i.d. standard normal deviates."""
        u = self.uniforms(2 * count)
        return np.sqrt(-2.0 * np.log(u[:count])) * np.cos(
            2.0 * np.pi * u[count:])

    def gammas(self, shape: float, count: int) -> np.ndarray:
        """i.i.d. Gamma(shape, rate 1) deviates."""
        if not shape > 0.0:
            raise DomainError(f"gamma shape must be > 0, got {shape}")
        if shape < 1.0:
            g = self.gammas(shape + 1.0, count)
            u = self.uniforms(count)
            return g * u ** (1.0 / shape)
        d = shape - 1.0 / 3.0
        c = 1.0 / np.sqrt(9.0 * d)
        out = np.empty(count)
        pending = np.arange(count)
        while pending.size:
            m = pending.size
            x = self.normals(m)
            u = self.uniforms(m)
            v = (1.0 + c * x) ** 3
            pos = v > 0.0
            x2 = x * x
            accept = pos & (u < 1.0 - 0.0331 * x2 * x2)
            slow = pos & ~accept
            if slow.any():
                lv = np.log(np.where(pos, v, 1.0))
                accept |= slow & (np.log(u) < 0.5 * x2 + d * (1.0 - v + lv))
            out[pending[accept]] = d * v[accept]
            pending = pending[~accept]
        return out

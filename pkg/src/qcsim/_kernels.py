"""Bit-mask stride kernels over the raw amplitude array.

Each gate touches the state once, updating amplitude pairs (1q), quartets
(2q) or octets (3q) in place; the general kernel handles any arity. Gate
matrices arrive flattened row-major in one buffer so a whole gate sequence
runs inside a single compiled loop with no per-gate Python dispatch.

Bit convention: wire q of an n-qubit register is bit (n-1-q) of the state
index; the first wire of a gate is the most significant local bit.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _apply_1q(amps, mf, o, b):
    m00 = mf[o]
    m01 = mf[o + 1]
    m10 = mf[o + 2]
    m11 = mf[o + 3]
    tk = 1 << b
    for g in range(amps.shape[0] >> 1):
        i0 = ((g >> b) << (b + 1)) | (g & (tk - 1))
        i1 = i0 + tk
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = m00 * a0 + m01 * a1
        amps[i1] = m10 * a0 + m11 * a1


@njit(cache=True, nogil=True)
def _apply_2q(amps, mf, o, b1, b2):
    m00 = mf[o]
    m01 = mf[o + 1]
    m02 = mf[o + 2]
    m03 = mf[o + 3]
    m10 = mf[o + 4]
    m11 = mf[o + 5]
    m12 = mf[o + 6]
    m13 = mf[o + 7]
    m20 = mf[o + 8]
    m21 = mf[o + 9]
    m22 = mf[o + 10]
    m23 = mf[o + 11]
    m30 = mf[o + 12]
    m31 = mf[o + 13]
    m32 = mf[o + 14]
    m33 = mf[o + 15]
    lo = b1 if b1 < b2 else b2
    hi = b2 if b1 < b2 else b1
    tlo = 1 << lo
    thi = 1 << hi
    k1 = 1 << b1
    k2 = 1 << b2
    for g in range(amps.shape[0] >> 2):
        i = ((g >> lo) << (lo + 1)) | (g & (tlo - 1))
        i = ((i >> hi) << (hi + 1)) | (i & (thi - 1))
        i01 = i + k2
        i10 = i + k1
        i11 = i + k1 + k2
        a0 = amps[i]
        a1 = amps[i01]
        a2 = amps[i10]
        a3 = amps[i11]
        amps[i] = m00 * a0 + m01 * a1 + m02 * a2 + m03 * a3
        amps[i01] = m10 * a0 + m11 * a1 + m12 * a2 + m13 * a3
        amps[i10] = m20 * a0 + m21 * a1 + m22 * a2 + m23 * a3
        amps[i11] = m30 * a0 + m31 * a1 + m32 * a2 + m33 * a3


@njit(cache=True, nogil=True)
def _apply_3q(amps, mf, o, b1, b2, b3):
    # local index j = (bit at b1) << 2 | (bit at b2) << 1 | (bit at b3)
    offs = np.empty(8, dtype=np.int64)
    for j in range(8):
        off = 0
        if (j >> 2) & 1:
            off += 1 << b1
        if (j >> 1) & 1:
            off += 1 << b2
        if j & 1:
            off += 1 << b3
        offs[j] = off
    sb = np.sort(np.array([b1, b2, b3], dtype=np.int64))
    v = np.empty(8, dtype=np.complex128)
    for g in range(amps.shape[0] >> 3):
        base = g
        for i in range(3):
            b = sb[i]
            bk = 1 << b
            base = ((base >> b) << (b + 1)) | (base & (bk - 1))
        for j in range(8):
            v[j] = amps[base + offs[j]]
        for j in range(8):
            acc = 0.0 + 0.0j
            row = o + j * 8
            for l in range(8):
                acc += mf[row + l] * v[l]
            amps[base + offs[j]] = acc


@njit(cache=True, nogil=True)
def _apply_kq(amps, mf, o, bits):
    k = bits.shape[0]
    dim = 1 << k
    offs = np.zeros(dim, dtype=np.int64)
    for j in range(dim):
        off = 0
        for i in range(k):
            if (j >> (k - 1 - i)) & 1:
                off += 1 << bits[i]
        offs[j] = off
    sb = np.sort(bits)
    v = np.empty(dim, dtype=np.complex128)
    for g in range(amps.shape[0] >> k):
        base = g
        for i in range(k):
            b = sb[i]
            bk = 1 << b
            base = ((base >> b) << (b + 1)) | (base & (bk - 1))
        for j in range(dim):
            v[j] = amps[base + offs[j]]
        for j in range(dim):
            acc = 0.0 + 0.0j
            row = o + j * dim
            for l in range(dim):
                acc += mf[row + l] * v[l]
            amps[base + offs[j]] = acc


@njit(cache=True, nogil=True)
def _run_program(amps, arities, mat_flat, mat_off, tgt_bits, tgt_off):
    for g in range(arities.shape[0]):
        k = arities[g]
        o = mat_off[g]
        t = tgt_off[g]
        if k == 1:
            _apply_1q(amps, mat_flat, o, tgt_bits[t])
        elif k == 2:
            _apply_2q(amps, mat_flat, o, tgt_bits[t], tgt_bits[t + 1])
        elif k == 3:
            _apply_3q(amps, mat_flat, o, tgt_bits[t], tgt_bits[t + 1], tgt_bits[t + 2])
        else:
            _apply_kq(amps, mat_flat, o, tgt_bits[t : t + k])


def warmup():
    """Force JIT compilation of every kernel (first-use cost, excluded from timings)."""
    amps = np.zeros(16, dtype=np.complex128)
    amps[0] = 1.0
    eye2 = np.eye(2, dtype=np.complex128).ravel()
    eye4 = np.eye(4, dtype=np.complex128).ravel()
    eye8 = np.eye(8, dtype=np.complex128).ravel()
    eye16 = np.eye(16, dtype=np.complex128).ravel()
    _apply_1q(amps, eye2, 0, 0)
    _apply_2q(amps, eye4, 0, 1, 0)
    _apply_3q(amps, eye8, 0, 2, 1, 0)
    _apply_kq(amps, eye16, 0, np.array([3, 2, 1, 0], dtype=np.int64))
    _run_program(
        amps,
        np.array([1], dtype=np.int64),
        eye2,
        np.array([0], dtype=np.int64),
        np.array([0], dtype=np.int64),
        np.array([0], dtype=np.int64),
    )

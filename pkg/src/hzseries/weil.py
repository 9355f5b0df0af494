"""Weil representation and Schroedinger representation as complex matrices.

Matrices act on column vectors indexed by ``df.elements``; column ``j`` is
the image of the basis vector ``e_{elements[j]}``.  The binary forms used
here are indefinite, so the signature is 0 and no metaplectic phases occur.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .discform import DiscriminantForm, frac1


def e(x) -> complex:
    """``exp(2 pi i x)`` for a rational ``x``, reduced mod 1 first."""
    return cmath.exp(2j * math.pi * float(frac1(x)))


def rho_generator(df: DiscriminantForm, which: str) -> np.ndarray:
    """``rho(S)`` or ``rho(T)``."""
    els = df.elements
    N = len(els)
    if which == "T":
        return np.diag([e(-df.q(g)) for g in els])
    if which == "S":
        M = np.empty((N, N), dtype=complex)
        for j, g in enumerate(els):
            for i, h in enumerate(els):
                M[i, j] = e(df.pairing(g, h))
        return M / math.sqrt(N)
    raise ValueError(f"unknown generator {which!r}")


def _matmul(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


GENERATORS = {
    "S": ((0, -1), (1, 0)),
    "T": ((1, 1), (0, 1)),
    "T^-1": ((1, -1), (0, 1)),
}


def word_matrix(word) -> tuple:
    M = ((1, 0), (0, 1))
    for tok in word:
        M = _matmul(M, GENERATORS[tok])
    return M


def generator_word(M) -> list[str]:
    """Write ``M`` in SL2(Z) as a product of ``S``, ``T``, ``T^-1``.

    Euclidean reduction of the bottom row: peel off ``T**q`` and ``S`` on the
    left until ``c = 0``, then ``M = +-T**b`` with ``-1 = S**2``.
    """
    (a, b), (c, d) = M
    if a * d - b * c != 1:
        raise ValueError(f"det of {M} is not 1")
    word: list[str] = []
    while c != 0:
        q = a // c
        # M = T^q S (S^-1 T^-q M)
        word += ["T" if q > 0 else "T^-1"] * abs(q) + ["S"]
        a, b = a - q * c, b - q * d
        a, b, c, d = c, d, -a, -b
    if a == -1:
        word += ["S", "S"]
        b = -b
    word += ["T" if b > 0 else "T^-1"] * abs(b)
    return word


def rho_word(df: DiscriminantForm, M) -> np.ndarray:
    """``rho(M)`` for ``M`` in SL2(Z) as a product of generator matrices."""
    word = generator_word(M)
    assert word_matrix(word) == tuple(tuple(r) for r in M)
    S, T = rho_generator(df, "S"), rho_generator(df, "T")
    mats = {"S": S, "T": T, "T^-1": T.conj().T}
    R = np.eye(len(df), dtype=complex)
    for tok in word:
        R = R @ mats[tok]
    return R


def sigma_beta(df: DiscriminantForm, lam: int, mu: int, t: int) -> np.ndarray:
    """Schroedinger representation: ``e_g -> e(-mu <beta, g> + (lam mu - t) Q(beta)) e_{g - lam beta}``."""
    N = len(df)
    R = np.zeros((N, N), dtype=complex)
    qb = df.q(df.beta)
    for j, g in enumerate(df.elements):
        i = df.index(g - lam * df.beta)
        R[i, j] = e(-mu * df.pairing(df.beta, g) + (lam * mu - t) * qb)
    return R


def heisenberg_mul(h1, h2):
    l1, m1, t1 = h1
    l2, m2, t2 = h2
    return (l1 + l2, m1 + m2, t1 + t2 + l1 * m2 - l2 * m1)


def heisenberg_act(h, M):
    """Right action ``(lam, mu, t) . M = (a lam + c mu, b lam + d mu, t)``."""
    (a, b), (c, d) = M
    lam, mu, t = h
    return (a * lam + c * mu, b * lam + d * mu, t)


def gamma0_matrix(df: DiscriminantForm, M) -> np.ndarray:
    """``e_g -> e(-b d Q(g)) e_{d g}``, the expected shape of ``rho(M)`` on Gamma_0(level)."""
    (a, b), (c, d) = M
    N = len(df)
    R = np.zeros((N, N), dtype=complex)
    for j, g in enumerate(df.elements):
        R[df.index(d * g), j] = e(-b * d * df.q(g))
    return R


def proportionality(A: np.ndarray, B: np.ndarray) -> tuple[complex, float]:
    """Best scalar ``c`` with ``A ~ c B`` and the max-entry residual ``|A - c B|``."""
    c = np.vdot(B, A) / np.vdot(B, B)
    return complex(c), float(np.max(np.abs(A - c * B)))


def is_unitary(A: np.ndarray, tol: float = 1e-9) -> bool:
    return bool(np.allclose(A.conj().T @ A, np.eye(A.shape[0]), atol=tol, rtol=0))


def _conjugated(df, h, M, orientation):
    R = rho_word(df, M)
    Ri = R.conj().T
    if orientation == "inverse-left":
        return Ri @ sigma_beta(df, *h) @ R
    return R @ sigma_beta(df, *h) @ Ri


def compatibility_residual(df: DiscriminantForm, h, M, orientation: str) -> float:
    """Max deviation between the conjugated ``sigma_beta(h)`` and ``sigma_beta(h . M)``.

    ``orientation`` is ``"inverse-left"`` for ``rho(M)^-1 sigma(h) rho(M)``
    or ``"inverse-right"`` for ``rho(M) sigma(h) rho(M)^-1``.
    """
    lhs = _conjugated(df, h, M, orientation)
    return float(np.max(np.abs(lhs - sigma_beta(df, *heisenberg_act(h, M)))))


def select_orientation(df: DiscriminantForm, tol: float = 1e-9) -> str:
    """Decide on the generators which conjugation order intertwines ``rho`` and ``sigma_beta``."""
    probes = [(1, 0, 0), (0, 1, 0), (1, 1, 1)]
    for orientation in ("inverse-left", "inverse-right"):
        if all(compatibility_residual(df, h, GENERATORS[g], orientation) < tol
               for g in ("S", "T") for h in probes):
            return orientation
    raise ArithmeticError(f"no intertwining orientation found for m={df.m}")

"""State families, coefficient-vector <-> density-matrix maps, positivity and PPT tests.

A state is parameterized as rho = I/d + sum_a c_a G_a with orthonormal
Hermitian generators G_a (see `algebra.generator_basis`), so the coefficient
vector c is an isometric Hilbert-Schmidt coordinate chart: Tr(rho^2) =
1/d + |c|^2.  Purity <= 1 then bounds every valid state inside the ball of
radius sqrt(1 - 1/d), which is the ball the Monte Carlo sampler draws from.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import algebra
from .algebra import generator_basis, labels_for, min_eigenvalue

# A state counts as positive when the smallest eigenvalue of its density
# matrix is >= -POSITIVITY_TOL.  The boundary has measure zero under the
# sampling distribution, so this only guards against eigensolver round-off.
POSITIVITY_TOL = 1e-12

# Residual above which density_to_coeffs declares its input outside the
# family's generator span.
SPAN_TOL = 1e-10

TRACE_TOL = 1e-12


class SpanError(ValueError):
    """Input matrix has components outside the family's generator span."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(
            f"matrix has out-of-span component of norm {residual:.3e} "
            f"(> {SPAN_TOL:.0e})"
        )


@dataclass(frozen=True)
class StateCase:
    """One of the three bipartite state families."""

    tag: str        # 'rebit' | 'qubit' | 'quaterbit'
    dim: int        # ambient (complex) matrix dimension d
    num_coeffs: int # coefficient dimension m
    radius: float   # outsphere radius sqrt(1 - 1/d)

    @property
    def labels(self) -> tuple:
        return labels_for(self.tag)

    @property
    def basis(self) -> np.ndarray:
        return generator_basis(self.tag)

    def __str__(self) -> str:
        return self.tag


REBIT = StateCase("rebit", 4, 9, np.sqrt(3 / 4))
QUBIT = StateCase("qubit", 4, 15, np.sqrt(3 / 4))
QUATERBIT = StateCase("quaterbit", 8, 27, np.sqrt(7 / 8))

CASES = {c.tag: c for c in (REBIT, QUBIT, QUATERBIT)}


def get_case(tag) -> StateCase:
    if isinstance(tag, StateCase):
        return tag
    try:
        return CASES[tag]
    except KeyError:
        raise ValueError(f"unknown state case {tag!r}") from None


@dataclass(frozen=True)
class CoeffVector:
    """Real coefficient vector of one state, in the case's label order."""

    case: StateCase
    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        if c.shape != (self.case.num_coeffs,):
            raise ValueError(
                f"{self.case.tag} coefficient vector must have shape "
                f"({self.case.num_coeffs},), got {c.shape}"
            )
        object.__setattr__(self, "c", c)

    def norm_sq(self) -> float:
        return float(self.c @ self.c)


def coeffs_to_density(v: CoeffVector) -> np.ndarray:
    """Assemble rho = I/d + sum_a c_a G_a (Hermitian, unit trace, linear in c)."""
    d = v.case.dim
    rho = np.eye(d, dtype=complex) / d
    rho += np.einsum("a,aij->ij", v.c, v.case.basis)
    return rho


def density_to_coeffs(rho: np.ndarray, case) -> CoeffVector:
    """Project a unit-trace Hermitian matrix onto the family's generators.

    c_a = Tr(rho G_a).  Raises SpanError when rho has a component outside
    the generator span (plus identity), e.g. a generic 8x8 Hermitian matrix
    that is not of quaternionic form.
    """
    case = get_case(case)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (case.dim, case.dim):
        raise ValueError(f"expected shape {(case.dim, case.dim)}, got {rho.shape}")
    algebra.check_hermitian(rho)
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"matrix trace {tr} is not 1 within {TRACE_TOL:.0e}")
    coeffs = np.real(np.einsum("aij,ji->a", case.basis, rho))
    v = CoeffVector(case, coeffs)
    residual = float(np.max(np.abs(rho - coeffs_to_density(v))))
    if residual > SPAN_TOL:
        raise SpanError(residual)
    return v


@dataclass(frozen=True)
class QuaterbitBlocks:
    """Block data of a traceless quaternionic Hermitian 4x4 matrix.

    Diagonal blocks are A*I2 .. D*I2 with A+B+C+D = 0; the six strictly
    upper blocks are the 2x2 representations of q0..q5 (row-major order),
    the lower blocks their conjugate transposes.
    """

    A: float
    B: float
    C: float
    D: float
    q: tuple  # six Quaternion instances

    def __post_init__(self):
        if len(self.q) != 6:
            raise ValueError("expected exactly six quaternions")
        s = self.A + self.B + self.C + self.D
        if abs(s) > 1e-14:
            raise ValueError(f"diagonal blocks must sum to zero, got {s:.3e}")


# (row, col) of each quaternion block in the 4x4 quaternionic matrix.
_BLOCK_SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def blocks_to_matrix(b: QuaterbitBlocks) -> np.ndarray:
    """Assemble the traceless 8x8 complex matrix from its quaternion blocks."""
    out = np.zeros((8, 8), dtype=complex)
    for slot, x in enumerate((b.A, b.B, b.C, b.D)):
        out[2 * slot : 2 * slot + 2, 2 * slot : 2 * slot + 2] = x * np.eye(2)
    for (r, c), quat in zip(_BLOCK_SLOTS, b.q):
        blk = quat.to_block()
        out[2 * r : 2 * r + 2, 2 * c : 2 * c + 2] = blk
        out[2 * c : 2 * c + 2, 2 * r : 2 * r + 2] = blk.conj().T
    return out


def quaterbit_from_blocks(b: QuaterbitBlocks) -> CoeffVector:
    """Coefficient vector of I/8 + blocks_to_matrix(b).

    The block form spans exactly the quaterbit generator set, so the
    projection is lossless; a nonzero out-of-span residual raises.
    """
    rho = np.eye(8, dtype=complex) / 8 + blocks_to_matrix(b)
    return density_to_coeffs(rho, QUATERBIT)


@lru_cache(maxsize=None)
def pt_sign_vector(tag: str, subsystem: str = "B") -> np.ndarray:
    """Signs (+-1) the partial transpose applies to each coefficient.

    Transposing one tensor slot flips exactly the generators carrying
    sigma_y in that slot (sigma_y^T = -sigma_y; the other Paulis are
    symmetric).  Subsystem 'B' is the second index, 'A' the first; for the
    quaterbit labels (i, j, k) the subsystems are i and j while k indexes
    the 2x2 quaternion representation space, which is not transposed.
    """
    if subsystem not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    pos = 0 if subsystem == "A" else 1
    signs = np.array(
        [-1.0 if lab[pos] == 2 else 1.0 for lab in labels_for(tag)]
    )
    signs.setflags(write=False)
    return signs


def partial_transpose(v: CoeffVector, subsystem: str = "B") -> CoeffVector:
    """Partial transpose in coefficient space: a per-label sign flip.

    Equals the matrix-level one-subsystem transpose of coeffs_to_density(v)
    exactly, is an isometric involution, and maps each label set to itself.
    """
    return CoeffVector(v.case, v.c * pt_sign_vector(v.case.tag, subsystem))


def is_positive(v: CoeffVector) -> bool:
    """True iff the state's smallest eigenvalue is >= -POSITIVITY_TOL."""
    return min_eigenvalue(coeffs_to_density(v)) >= -POSITIVITY_TOL


def ppt_test(v: CoeffVector, subsystem: str = "B") -> bool:
    """Positive-partial-transpose test: positivity of the partial transpose."""
    return is_positive(partial_transpose(v, subsystem))

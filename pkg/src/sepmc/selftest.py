"""Named invariant battery behind the CLI selftest command.

Each check returns (ok, detail).  The checks deliberately re-derive
expectations through independent routes (e.g. the matrix-level partial
transpose by index reshuffling) so they can catch bugs in the production
paths they shadow.
"""

from __future__ import annotations

import numpy as np

from .algebra import Quaternion
from .conjecture import p_of_alpha
from .engine import TallyCounts, run_chunk
from .sampler import derive_stream, sample_ball
from .states import CASES, coeffs_to_density, CoeffVector, partial_transpose

_SEED = 20240901


def matrix_partial_transpose(rho: np.ndarray, dims: tuple, sys_index: int) -> np.ndarray:
    """Index-level partial transpose: transpose one tensor factor of rho.

    ``dims`` are the factor dimensions (their product is rho's size);
    ``sys_index`` picks the transposed factor.  Independent of the
    coefficient-space sign-flip implementation.
    """
    k = len(dims)
    t = rho.reshape(dims + dims)
    perm = list(range(2 * k))
    perm[sys_index], perm[k + sys_index] = perm[k + sys_index], perm[sys_index]
    n = rho.shape[0]
    return t.transpose(perm).reshape(n, n)


def pt_dims(case) -> tuple:
    """Tensor factorization used by the matrix-level PT oracle (B = factor 1)."""
    return (2, 2) if case.dim == 4 else (2, 2, 2)


def check_quaternion_homomorphism(n_pairs: int = 1000) -> tuple:
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    for _ in range(n_pairs):
        p = Quaternion(*rng.standard_normal(4))
        q = Quaternion(*rng.standard_normal(4))
        dev = np.max(np.abs((p * q).to_block() - p.to_block() @ q.to_block()))
        dev = max(dev, np.max(np.abs(p.conjugate().to_block() - p.to_block().conj().T)))
        dev = max(dev, abs((p * q).norm() - p.norm() * q.norm()))
        worst = max(worst, float(dev))
    return worst <= 1e-12, f"max deviation {worst:.2e} (tol 1e-12)"


def check_generator_gram() -> tuple:
    worst = 0.0
    for case in CASES.values():
        basis = case.basis
        gram = np.einsum("aij,bji->ab", basis, basis)
        worst = max(worst, float(np.max(np.abs(gram - np.eye(case.num_coeffs)))))
        worst = max(worst, float(np.max(np.abs(np.trace(basis, axis1=1, axis2=2)))))
    return worst <= 1e-14, f"max Gram/trace deviation {worst:.2e} (tol 1e-14)"


def check_pt_involution(n_vectors: int = 200) -> tuple:
    rng = np.random.default_rng(_SEED + 1)
    for case in CASES.values():
        for _ in range(n_vectors):
            v = CoeffVector(case, rng.standard_normal(case.num_coeffs))
            w = partial_transpose(partial_transpose(v))
            if not np.array_equal(w.c, v.c):
                return False, f"{case.tag}: PT applied twice is not the identity"
            if partial_transpose(v).norm_sq() != v.norm_sq():
                return False, f"{case.tag}: PT is not an isometry"
    return True, "involution and isometry exact for all cases"


def check_pt_spectrum(n_vectors: int = 200) -> tuple:
    rng = np.random.default_rng(_SEED + 2)
    worst = 0.0
    for case in CASES.values():
        dims = pt_dims(case)
        for _ in range(n_vectors):
            c = rng.standard_normal(case.num_coeffs)
            c *= case.radius / np.linalg.norm(c)
            v = CoeffVector(case, c)
            lhs = coeffs_to_density(partial_transpose(v))
            rhs = matrix_partial_transpose(coeffs_to_density(v), dims, 1)
            dev = np.max(np.abs(np.linalg.eigvalsh(lhs) - np.linalg.eigvalsh(rhs)))
            worst = max(worst, float(dev))
    return worst <= 1e-10, f"max spectrum deviation {worst:.2e} (tol 1e-10)"


def check_kramers_pairs(n_vectors: int = 200) -> tuple:
    rng = np.random.default_rng(_SEED + 3)
    case = CASES["quaterbit"]
    worst = 0.0
    for _ in range(n_vectors):
        c = rng.standard_normal(case.num_coeffs)
        c *= case.radius * rng.random() ** (1 / 27) / np.linalg.norm(c)
        v = CoeffVector(case, c)
        for state in (v, partial_transpose(v)):
            w = np.linalg.eigvalsh(coeffs_to_density(state))
            worst = max(worst, float(np.max(np.abs(w[::2] - w[1::2]))))
    return worst <= 1e-9, f"max Kramers pair gap {worst:.2e} (tol 1e-9)"


def check_ball_moments(n_draws: int = 1_000_000) -> tuple:
    details = []
    ok = True
    for k, case in enumerate(CASES.values()):
        m = case.num_coeffs
        pts = sample_ball(m, case.radius, derive_stream(_SEED + 4, k, 0), n_draws)
        t = np.einsum("ij,ij->i", pts, pts) / case.radius**2
        mean = float(t.mean())
        se = float(t.std(ddof=1) / np.sqrt(n_draws))
        z = (mean - m / (m + 2)) / se
        details.append(f"{case.tag} z={z:+.2f}")
        ok = ok and abs(z) <= 5.0
    return ok, "E[|x|^2]/r^2 vs m/(m+2): " + ", ".join(details)


def check_tally_ordering() -> tuple:
    parts = [run_chunk("qubit", derive_stream(_SEED + 5, 0, i), 20_000) for i in range(3)]
    total = TallyCounts.zero()
    for t in parts:
        if not 0 <= t.n_sep <= t.n_positive <= t.n_total:
            return False, "chunk tally ordering violated"
        total = total.merge(t)
    if total != parts[2].merge(parts[1]).merge(parts[0]):
        return False, "merge is not order-independent"
    if total.merge(TallyCounts.zero()) != total:
        return False, "zero tally is not a merge identity"
    return True, f"3 chunks merged: {total.n_sep}/{total.n_positive}/{total.n_total}"


def check_conjecture_rationals() -> tuple:
    targets = ((0.5, 29 / 64), (1.0, 8 / 33), (2.0, 26 / 323))
    worst = 0.0
    for alpha, target in targets:
        res = p_of_alpha(alpha, 1e-12)
        worst = max(worst, abs(res.value - target))
    return worst < 1e-10, f"max |value - rational| = {worst:.2e} (tol 1e-10)"


CHECKS = (
    ("quaternion-homomorphism", check_quaternion_homomorphism),
    ("generator-gram", check_generator_gram),
    ("pt-involution", check_pt_involution),
    ("pt-spectrum", check_pt_spectrum),
    ("kramers-pairs", check_kramers_pairs),
    ("ball-moments", check_ball_moments),
    ("tally-ordering", check_tally_ordering),
    ("conjecture-rationals", check_conjecture_rationals),
)


def run_selftest(report=print) -> list:
    """Run every check; returns the list of (name, ok, detail)."""
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
        if report:
            report(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
    return results

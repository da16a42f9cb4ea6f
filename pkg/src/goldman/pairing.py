"""The Goldman symplectic pairing on cocycles, two independent ways.

The production path is the closed form in the dual generators,

    omega(chi1, chi2) = sum_k  B(chi1(alpha_k), Ad(sigma(R_{k-1})) chi2(a_k))
                              - B(chi1(beta_k),  Ad(sigma(R_k))     chi2(b_k)),

with B(u, v) = tr(uv).  The oracle path evaluates the cup-product
2-cochain on the fundamental two-cycle through the group-ring
anti-involution of the Fox derivatives.  The two share only the word
algebra; their agreement is a standing cross-check of both.

The pairing is complex bilinear, skew on cohomology classes, and
independent of the choice of cocycle representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances
from .errors import DegenerateFormError, InputError
from .cocycles import Cocycle, CocycleBasis, extend, extend_ring
from .linalg import frob, split_singular_values
from .reps import Representation, evaluate
from .words import anti_involution


def _common_base(chi1: Cocycle, chi2: Cocycle) -> Representation:
    if not chi1.base.same_base(chi2.base):
        raise InputError("pairing requires cocycles over the same base representation")
    return chi1.base


def pairing_dual(chi1: Cocycle, chi2: Cocycle) -> complex:
    """Closed-form pairing in the dual generators alpha_k, beta_k."""
    rep = _common_base(chi1, chi2)
    pres = rep.presentation
    duals = pres.dual_generators()
    total = 0.0 + 0.0j
    for k in range(1, pres.genus + 1):
        alpha, beta = duals[2 * (k - 1)], duals[2 * (k - 1) + 1]
        s_prev = evaluate(rep, pres.relator(k - 1))
        s_k = evaluate(rep, pres.relator(k))
        av = chi2.values[2 * (k - 1)]
        bv = chi2.values[2 * (k - 1) + 1]
        total += np.trace(extend(chi1, alpha) @ (s_prev @ av @ np.linalg.inv(s_prev)))
        total -= np.trace(extend(chi1, beta) @ (s_k @ bv @ np.linalg.inv(s_k)))
    return complex(total)


def pairing_cup(chi1: Cocycle, chi2: Cocycle) -> complex:
    """Cup-product cochain evaluated on the fundamental two-cycle.

    Equals -sum over generators of B(chi1(# dR/dx), chi2(x)) with # the
    group-ring anti-involution; chi1 is extended linearly to the ring.
    """
    rep = _common_base(chi1, chi2)
    cycle = rep.presentation.fundamental_two_cycle()
    total = 0.0 + 0.0j
    for coefficient, generator in cycle.pairs:
        index = generator.runs[0][0]
        total -= np.trace(
            extend_ring(chi1, anti_involution(coefficient)) @ chi2.values[index]
        )
    return complex(total)


@dataclass(frozen=True, eq=False)
class GoldmanGram:
    """Skew Gram matrix of the pairing on a list of cocycles."""

    base: Representation
    vectors: tuple[Cocycle, ...]
    matrix: np.ndarray
    space: str

    @property
    def skewness_residual(self) -> float:
        return frob(self.matrix + self.matrix.T)

    def rank(self, rel_tol: float = tolerances.SVD_RELATIVE):
        """(rank, margin) of the Gram matrix at the global threshold."""
        svals = np.linalg.svd(self.matrix, compute_uv=False)
        return split_singular_values(svals, rel_tol)


def gram(basis: CocycleBasis, space: str = "h1-complement",
         parallel: bool = False) -> GoldmanGram:
    """Pairwise dual-formula pairings over a basis.

    space selects the cocycles: "z1" or "h1-complement".  Entries are
    independent, so assembly may run concurrently; the result is written
    into a preallocated matrix and is deterministic either way.
    """
    if space == "z1":
        vectors = basis.basis
    elif space == "h1-complement":
        vectors = basis.h1_complement
    else:
        raise InputError(f"unknown Gram space {space!r}")
    d = len(vectors)
    matrix = np.zeros((d, d), dtype=complex)
    pairs = [(i, j) for i in range(d) for j in range(d)]

    def entry(ij):
        i, j = ij
        return i, j, pairing_dual(vectors[i], vectors[j])

    if parallel:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor() as pool:
            for i, j, value in pool.map(entry, pairs):
                matrix[i, j] = value
    else:
        for ij in pairs:
            i, j, value = entry(ij)
            matrix[i, j] = value
    matrix.setflags(write=False)
    return GoldmanGram(base=basis.base, vectors=tuple(vectors), matrix=matrix,
                       space=space)


@dataclass(frozen=True, eq=False)
class SymplecticBasis:
    """Darboux pairs (e_i, f_i) with pairing matrix the standard block J.

    transform holds the change of basis: column c of transform expresses
    the c-th output vector in the input basis, ordered e_1..e_m f_1..f_m.
    """

    base: Representation
    e: tuple[Cocycle, ...]
    f: tuple[Cocycle, ...]
    transform: np.ndarray

    @property
    def pair_count(self) -> int:
        return len(self.e)


def standard_block_j(m: int) -> np.ndarray:
    j = np.zeros((2 * m, 2 * m))
    j[:m, m:] = np.eye(m)
    j[m:, :m] = -np.eye(m)
    return j


def symplectic_basis(g: GoldmanGram) -> SymplecticBasis:
    """Skew Gram-Schmidt: reduce a nondegenerate skew form to block J.

    Pivots take the first remaining vector as e and its largest partner
    as f; both choices are deterministic, so a Gram matrix already in
    standard block form comes back with the identity transform.
    """
    matrix = np.array(g.matrix)
    d = matrix.shape[0]
    if d % 2 != 0:
        raise DegenerateFormError(f"odd-dimensional skew form (d={d}) is degenerate")
    scale = max(np.abs(matrix).max(), 1.0)
    threshold = 1e-10 * scale

    basis = [np.eye(d, dtype=complex)[:, i] for i in range(d)]

    def omega(x, y):
        return complex(x @ matrix @ y)

    e_vectors, f_vectors = [], []
    remaining = list(range(d))
    active = {i: basis[i] for i in remaining}
    while remaining:
        i = remaining[0]
        e_vec = active[i]
        pair_values = [abs(omega(e_vec, active[j])) for j in remaining[1:]]
        if not pair_values or max(pair_values) <= threshold:
            raise DegenerateFormError(
                "skew form is degenerate on the requested space",
                null_vector=e_vec)
        j = remaining[1:][int(np.argmax(pair_values))]
        f_vec = active[j] / omega(e_vec, active[j])
        for k in remaining:
            if k in (i, j):
                continue
            u = active[k]
            active[k] = u - omega(u, f_vec) * e_vec + omega(u, e_vec) * f_vec
        remaining = [k for k in remaining if k not in (i, j)]
        e_vectors.append(e_vec)
        f_vectors.append(f_vec)

    transform = np.column_stack(e_vectors + f_vectors)

    def combine(coeffs):
        flat = sum(c * v.flat for c, v in zip(coeffs, g.vectors))
        from .cocycles import from_flat

        return from_flat(g.base, flat)

    e_cocycles = tuple(combine(transform[:, c]) for c in range(len(e_vectors)))
    f_cocycles = tuple(combine(transform[:, len(e_vectors) + c])
                       for c in range(len(f_vectors)))
    return SymplecticBasis(base=g.base, e=e_cocycles, f=f_cocycles,
                           transform=transform)


@dataclass(frozen=True)
class UnitaryLocusReport:
    """Outcome of the reality/nondegeneracy check on the unitary locus."""

    max_imaginary: float
    offending_pair: tuple[int, int] | None
    real_rank: int
    expected_rank: int
    margin: float
    passed: bool

    def lines(self):
        yield f"max-imaginary: {self.max_imaginary:.6e}"
        if self.offending_pair is not None:
            yield f"offending-pair: {self.offending_pair[0]} {self.offending_pair[1]}"
        yield f"real-rank: {self.real_rank}"
        yield f"expected-rank: {self.expected_rank}"
        yield f"rank-margin: {self.margin:.6e}"
        yield f"verdict: {'PASS' if self.passed else 'FAIL'}"


def unitary_restriction_check(cocycles, imag_tol: float = 1e-10) -> UnitaryLocusReport:
    """Check that pairings of anti-Hermitian-valued cocycles are real and
    that the resulting real skew form is nondegenerate.

    These are the finite-dimensional shadows of the statement that the
    pairing restricts to (a multiple of) the natural Kaehler form on the
    unitary locus; the trace form is negative-definite on anti-Hermitian
    matrices, which is what forces the values real.
    """
    cocycles = list(cocycles)
    if not cocycles:
        raise InputError("need at least one cocycle")
    base = cocycles[0].base
    if base.flavor != "unitary":
        raise InputError("unitary restriction check requires a unitary base")
    for chi in cocycles:
        for m in chi.values:
            if frob(m + m.conj().T) > tolerances.VERIFICATION * max(1.0, frob(m)):
                raise InputError("cocycle values are not anti-Hermitian")
    d = len(cocycles)
    matrix = np.zeros((d, d), dtype=complex)
    max_imag = 0.0
    offending = None
    for i in range(d):
        for j in range(d):
            value = pairing_dual(cocycles[i], cocycles[j])
            matrix[i, j] = value
            if abs(value.imag) > max_imag:
                max_imag = abs(value.imag)
                if abs(value.imag) >= imag_tol:
                    offending = (i, j)
    svals = np.linalg.svd(matrix.real, compute_uv=False)
    rank, margin = split_singular_values(svals)
    passed = max_imag < imag_tol and rank == d
    return UnitaryLocusReport(
        max_imaginary=max_imag,
        offending_pair=offending,
        real_rank=rank,
        expected_rank=d,
        margin=margin,
        passed=passed,
    )

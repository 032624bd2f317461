"""Finite matrices of small Hankel operators and their spectral norms.

For a polynomial symbol phi the operator f -> conj-analytic projection of
(conj(phi) * f) sends the monomial z^beta to

    sum_{gamma >= 0} conj(phihat(beta + gamma)) * conj(z)^gamma,

so its matrix over monomial bases has entries

    entry[gamma, beta] = conj(phihat(beta + gamma)).

An entry can only be nonzero when beta + gamma lies in the support of phi,
hence the operator is fully represented on the downward closure of the
support (all indices componentwise below some supported index). Everything
outside that finite block is identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DomainError
from .symbols import Symbol, degree, grlex_key


@dataclass(frozen=True)
class NormEstimate:
    """A computed norm together with how it was obtained.

    method is one of "spectral-exact", "grid-quadrature", "monte-carlo" or
    "closed-form"; metadata is a free-form description (grid sizes, seeds,
    refinement data) making the estimate self-describing.
    """

    value: float
    method: str
    error_bound: float
    metadata: str = ""


@dataclass
class HankelMatrix:
    """Dense matrix block of a Hankel operator on explicit monomial bases.

    column_basis indexes the analytic input side (beta), row_basis the
    conjugate-analytic output side (gamma). entries[i, j] depends only on
    row_basis[i] + column_basis[j], which is the Hankel structure.
    """

    column_basis: tuple
    row_basis: tuple
    entries: np.ndarray

    @property
    def shape(self):
        return self.entries.shape

    def dump_text(self) -> str:
        """Plain-text dump: 'rows <n> cols <m>' then one 're,im ...' line per row."""
        r, c = self.entries.shape
        lines = [f"rows {r} cols {c}"]
        for i in range(r):
            lines.append(
                " ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in self.entries[i])
            )
        return "\n".join(lines) + "\n"


def _downward_closure(support):
    """All multi-indices componentwise dominated by some element of support."""
    closed = set()
    for alpha in support:
        closed.update(product(*(range(e + 1) for e in alpha)))
    return sorted(closed, key=grlex_key)


def active_bases(s: Symbol):
    """Column and row bases on which the operator of s can act nontrivially.

    Both sides equal the downward closure of the support, in graded lex
    order. The zero symbol yields empty bases.
    """
    closure = tuple(_downward_closure(s.support))
    return closure, closure


def _fill(s: Symbol, rows, cols) -> HankelMatrix:
    entries = np.zeros((len(rows), len(cols)), dtype=complex)
    for i, gamma in enumerate(rows):
        for j, beta in enumerate(cols):
            c = s.coeff(tuple(x + y for x, y in zip(beta, gamma)))
            if c != 0:
                entries[i, j] = c.conjugate()
    return HankelMatrix(tuple(cols), tuple(rows), entries)


def build_matrix(s: Symbol) -> HankelMatrix:
    """Matrix of the full operator of s on its active bases.

    All omitted rows and columns are identically zero, so the spectral norm
    of this finite matrix is the operator norm. The zero symbol gives an
    empty matrix.
    """
    cols, rows = active_bases(s)
    return _fill(s, rows, cols)


def build_block(s: Symbol, k: int) -> HankelMatrix:
    """Block of a homogeneous symbol: degree-k columns, degree-(m-k) rows.

    Requires s to be m-homogeneous. For k > m the block is the zero
    operator and an empty matrix is returned.
    """
    m = s.is_homogeneous()
    if m is None:
        raise DomainError("build_block requires a homogeneous symbol")
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise DomainError(f"block index must be an integer >= 0, got {k!r}")
    if k > m:
        return HankelMatrix((), (), np.zeros((0, 0), dtype=complex))
    closure = _downward_closure(s.support)
    cols = [a for a in closure if degree(a) == k]
    rows = [a for a in closure if degree(a) == m - k]
    return _fill(s, rows, cols)


def spectral_norm(matrix) -> NormEstimate:
    """Largest singular value, via dense SVD.

    Accepts a HankelMatrix or anything convertible to a 2-d array. LAPACK
    SVD is backward stable, so the relative error is far below the 1e-12
    budget reported here for matrices up to a few thousand rows.
    """
    entries = matrix.entries if isinstance(matrix, HankelMatrix) else np.asarray(matrix)
    if entries.size == 0:
        return NormEstimate(0.0, "spectral-exact", 0.0, "empty matrix")
    value = float(np.linalg.svd(entries, compute_uv=False)[0])
    return NormEstimate(
        value,
        "spectral-exact",
        1e-12 * value,
        f"dense SVD of a {entries.shape[0]}x{entries.shape[1]} matrix",
    )


def operator_norm(s: Symbol) -> NormEstimate:
    """Operator norm of the Hankel operator of a polynomial symbol."""
    mat = build_matrix(s)
    est = spectral_norm(mat)
    r, c = mat.shape
    return NormEstimate(est.value, est.method, est.error_bound, f"active basis {r}x{c}")

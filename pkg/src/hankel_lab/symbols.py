"""Sparse analytic polynomials on the d-torus.

A symbol is a finite sum  sum_alpha c_alpha z^alpha  with multi-indices
alpha in N_0^d stored as exponent tuples. Coefficients are complex doubles
and exact zeros are dropped, so the stored support is canonical. Symbols
are immutable after construction and all operations return new objects,
which makes concurrent reads safe.

The canonical ordering of multi-indices is graded lexicographic: lower
total degree first, and within a degree the earlier variables carry the
higher powers first, so for d=2 the degree-2 indices come as
(2,0), (1,1), (0,2).
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError, ParseError


def degree(alpha) -> int:
    """Total degree of an exponent tuple."""
    return sum(alpha)


def dominated_by(beta, alpha) -> bool:
    """Componentwise comparison beta <= alpha."""
    return all(b <= a for b, a in zip(beta, alpha))


def grlex_key(alpha):
    """Sort key realising the graded lexicographic order."""
    return (sum(alpha), tuple(-e for e in alpha))


def _validated_index(alpha, dim):
    alpha = tuple(alpha)
    if len(alpha) != dim:
        raise DomainError(
            f"multi-index {alpha} has length {len(alpha)}, expected dimension {dim}"
        )
    for e in alpha:
        if not isinstance(e, int) or isinstance(e, bool) or e < 0:
            raise DomainError(f"multi-index {alpha}: exponents must be integers >= 0")
    return alpha


class Symbol:
    """Polynomial symbol with finitely many nonzero Fourier coefficients."""

    __slots__ = ("dim", "_coeffs")

    def __init__(self, dim, terms=()):
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise DomainError(f"dimension must be a positive integer, got {dim!r}")
        coeffs = {}
        for alpha, c in terms:
            alpha = _validated_index(alpha, dim)
            coeffs[alpha] = coeffs.get(alpha, 0j) + complex(c)
        self.dim = dim
        self._coeffs = {a: c for a, c in coeffs.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim) -> "Symbol":
        return cls(dim)

    @classmethod
    def one(cls, dim) -> "Symbol":
        return cls(dim, [((0,) * dim, 1.0)])

    @classmethod
    def monomial(cls, dim, alpha, coeff=1.0) -> "Symbol":
        return cls(dim, [(alpha, coeff)])

    @classmethod
    def variable(cls, dim, j) -> "Symbol":
        """The coordinate symbol z_j (0-based j)."""
        if not 0 <= j < dim:
            raise DomainError(f"variable index {j} outside 0..{dim - 1}")
        alpha = tuple(1 if i == j else 0 for i in range(dim))
        return cls(dim, [(alpha, 1.0)])

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def support(self):
        """Multi-indices with nonzero coefficient, in graded lex order."""
        return tuple(sorted(self._coeffs, key=grlex_key))

    def terms(self):
        """(alpha, coefficient) pairs in graded lex order."""
        return [(a, self._coeffs[a]) for a in self.support]

    def coeff(self, alpha) -> complex:
        return self._coeffs.get(tuple(alpha), 0j)

    def degree(self) -> int:
        """Largest total degree in the support (0 for the zero symbol)."""
        return max((degree(a) for a in self._coeffs), default=0)

    def variable_support(self) -> frozenset:
        """Indices j such that some supported monomial contains z_j."""
        active = set()
        for a in self._coeffs:
            active.update(j for j, e in enumerate(a) if e > 0)
        return frozenset(active)

    def is_homogeneous(self):
        """The common total degree m, or None. The zero symbol reports 0."""
        degrees = {degree(a) for a in self._coeffs}
        if not degrees:
            return 0
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def homogeneous_part(self, m) -> "Symbol":
        """Restriction to the terms of total degree m."""
        return Symbol(self.dim, [(a, c) for a, c in self._coeffs.items() if degree(a) == m])

    # -- algebra -----------------------------------------------------------

    def _require_same_dim(self, other):
        if self.dim != other.dim:
            raise DomainError(
                f"dimension mismatch: {self.dim} vs {other.dim} "
                "(embed one symbol first)"
            )

    def __add__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        self._require_same_dim(other)
        terms = list(self._coeffs.items()) + list(other._coeffs.items())
        return Symbol(self.dim, terms)

    def __neg__(self):
        return Symbol(self.dim, [(a, -c) for a, c in self._coeffs.items()])

    def __sub__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Symbol):
            self._require_same_dim(other)
            terms = []
            for a, ca in self._coeffs.items():
                for b, cb in other._coeffs.items():
                    terms.append((tuple(x + y for x, y in zip(a, b)), ca * cb))
            return Symbol(self.dim, terms)
        if isinstance(other, (int, float, complex)):
            return Symbol(self.dim, [(a, c * other) for a, c in self._coeffs.items()])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.dim == other.dim and self._coeffs == other._coeffs

    __hash__ = None

    # -- analysis ----------------------------------------------------------

    def h2_norm(self) -> float:
        """sqrt of the sum of squared coefficient moduli (Parseval)."""
        return math.sqrt(math.fsum(abs(c) ** 2 for c in self._coeffs.values()))

    def reflect(self) -> "Symbol":
        """Conjugate every coefficient; the support is unchanged.

        On the torus this realises z -> conj(phi(conj(z))).
        """
        return Symbol(self.dim, [(a, c.conjugate()) for a, c in self._coeffs.items()])

    def evaluate(self, angles) -> complex:
        """Value at the torus point (e^{i t_1}, ..., e^{i t_d})."""
        angles = tuple(angles)
        if len(angles) != self.dim:
            raise DomainError(
                f"got {len(angles)} angles for a symbol in dimension {self.dim}"
            )
        total = 0j
        for a, c in self._coeffs.items():
            total += c * cmath.exp(1j * sum(e * t for e, t in zip(a, angles)))
        return total

    def embed(self, new_dim) -> "Symbol":
        """Reinterpret in a larger dimension by appending zero exponents."""
        if new_dim < self.dim:
            raise DomainError(f"cannot embed dimension {self.dim} into {new_dim}")
        pad = (0,) * (new_dim - self.dim)
        return Symbol(new_dim, [(a + pad, c) for a, c in self._coeffs.items()])

    # -- rendering ---------------------------------------------------------

    def __repr__(self):
        return f"Symbol(dim={self.dim}, terms={len(self._coeffs)})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for a, c in self.terms():
            factors = [f"z{j + 1}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(a) if e > 0]
            mono = "*".join(factors) if factors else "1"
            if c.imag == 0:
                cs = f"{c.real:g}"
            else:
                cs = f"({c.real:g}{c.imag:+g}j)"
            parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


def make_symbol(dim, terms) -> Symbol:
    """Build a Symbol from (multi-index, coefficient) pairs.

    Duplicate indices are summed and exact-zero coefficients dropped.
    """
    return Symbol(dim, terms)


def separate_variables(a: Symbol, b: Symbol) -> bool:
    """True when the two symbols involve disjoint sets of variables."""
    if a.dim != b.dim:
        raise DomainError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return not (a.variable_support() & b.variable_support())


# -- text format -----------------------------------------------------------
#
# Line oriented, UTF-8:
#   dim <d>
#   <re> <im> : <e1> <e2> ... <ed>
# '#' starts a comment line; blank lines are ignored. Floats are written
# with repr() so the writer/parser round-trip is bit-identical.


def format_symbol(s: Symbol) -> str:
    lines = [f"dim {s.dim}"]
    for a, c in s.terms():
        lines.append(f"{c.real!r} {c.imag!r} : " + " ".join(str(e) for e in a))
    return "\n".join(lines) + "\n"


def parse_symbol(text: str) -> Symbol:
    dim = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise ParseError(f"expected 'dim <d>', got {line!r}", line=lineno)
            try:
                dim = int(parts[1])
            except ValueError:
                raise ParseError(f"bad dimension {parts[1]!r}", line=lineno) from None
            if dim < 1:
                raise ParseError(f"dimension must be >= 1, got {dim}", line=lineno)
            continue
        if ":" not in line:
            raise ParseError("expected '<re> <im> : <exponents>'", line=lineno)
        left, _, right = line.partition(":")
        coeff_parts = left.split()
        if len(coeff_parts) != 2:
            raise ParseError(
                f"expected two reals before ':', got {len(coeff_parts)}", line=lineno
            )
        try:
            c = complex(float(coeff_parts[0]), float(coeff_parts[1]))
        except ValueError:
            raise ParseError(f"bad coefficient {left.strip()!r}", line=lineno) from None
        exp_parts = right.split()
        if len(exp_parts) != dim:
            raise ParseError(
                f"expected {dim} exponents, got {len(exp_parts)}", line=lineno
            )
        try:
            alpha = tuple(int(p) for p in exp_parts)
        except ValueError:
            raise ParseError(f"bad exponent list {right.strip()!r}", line=lineno) from None
        if any(e < 0 for e in alpha):
            raise ParseError(f"negative exponent in {alpha}", line=lineno)
        terms.append((alpha, c))
    if dim is None:
        raise ParseError("missing 'dim <d>' header")
    return Symbol(dim, terms)

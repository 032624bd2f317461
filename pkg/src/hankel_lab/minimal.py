"""Minimal-norm classification and the separated-variables construction.

A symbol has minimal norm when its Hankel operator norm equals its H^2
norm, which is the universal lower bound. For homogeneous symbols the
operator splits into blocks by input degree, the block norms for k and
m-k coincide after coefficient conjugation, and the k=0 block norm is the
H^2 norm itself, so only the blocks 1 <= k <= floor(m/2) are decisive.

Sums and products of minimal-norm symbols in disjoint variables are again
minimal-norm (for sums the pieces must vanish at the origin). RecipeExpr
trees encode such constructions with monomial leaves, the only polynomial
inner functions up to constants, and build_recipe validates the
disjointness structurally so the resulting symbol is certified minimal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, ParseError
from .hankel import build_block, operator_norm, spectral_norm
from .symbols import Symbol, degree


@dataclass
class MinimalityVerdict:
    """Outcome of a minimality check.

    gap is the tested norm excess over the H^2 norm: operator norm minus
    H^2 norm for the full check, and (max decisive block norm) minus H^2
    norm for the homogeneous path, where it may be negative. status is
    "minimal" exactly when gap <= tolerance. Verdicts with |gap| within
    the tolerance carry a "boundary" note.
    """

    status: str
    gap: float
    tolerance: float
    block_norms: list = None
    note: str = ""


def _verdict(gap, tol, block_norms=None, note=""):
    status = "minimal" if gap <= tol else "not-minimal"
    if not note and abs(gap) <= tol:
        note = "boundary"
    return MinimalityVerdict(status, gap, tol, block_norms, note)


def _check_classify_args(s, tol):
    if s.is_zero:
        raise DomainError("cannot classify the zero symbol")
    if tol < 1e-12:
        raise DomainError(f"tolerance must be >= 1e-12, got {tol}")


def classify(s: Symbol, tol: float = 1e-9) -> MinimalityVerdict:
    """Compare the full operator norm against the H^2 norm."""
    _check_classify_args(s, tol)
    gap = operator_norm(s).value - s.h2_norm()
    return _verdict(gap, tol)


def classify_homogeneous(s: Symbol, tol: float = 1e-9) -> MinimalityVerdict:
    """Classify an m-homogeneous symbol from its decisive blocks only.

    Computes the blocks k = 1 .. floor(m/2); for m <= 1 that range is
    empty and the symbol is minimal outright. Agrees with classify() on
    every homogeneous input.
    """
    _check_classify_args(s, tol)
    m = s.is_homogeneous()
    if m is None:
        raise DomainError("classify_homogeneous requires a homogeneous symbol")
    block_norms = [(k, spectral_norm(build_block(s, k)).value) for k in range(1, m // 2 + 1)]
    if not block_norms:
        return _verdict(0.0, tol, [], note="no decisive blocks")
    gap = max(v for _, v in block_norms) - s.h2_norm()
    return _verdict(gap, tol, block_norms)


def d1_monomial_test(s: Symbol) -> bool:
    """Minimality test for one-variable polynomial symbols.

    A one-variable polynomial generates a minimal-norm operator exactly
    when it is a constant multiple of an inner function, and a polynomial
    of constant modulus on the circle is a constant multiple of a
    monomial; hence the test is a single-element support.
    """
    if s.dim != 1:
        raise DomainError("d1_monomial_test requires dimension 1")
    if s.is_zero:
        raise DomainError("d1_monomial_test requires a nonzero symbol")
    return len(s.support) == 1


# -- construction recipe -----------------------------------------------------


@dataclass(frozen=True)
class RecipeLeaf:
    """A constant multiple of a monomial, c * z^alpha with degree(alpha) >= 1."""

    coefficient: complex
    exponents: tuple


@dataclass(frozen=True)
class RecipeNode:
    """sum or prod of sub-recipes in pairwise disjoint variables."""

    op: str
    children: tuple


def _leaf_dims(expr, out):
    if isinstance(expr, RecipeLeaf):
        out.add(len(expr.exponents))
    else:
        for child in expr.children:
            _leaf_dims(child, out)


def _validate(expr, path):
    """Returns the variable support of expr; raises on any violation."""
    if isinstance(expr, RecipeLeaf):
        if complex(expr.coefficient) == 0:
            raise DomainError(f"recipe violation at {path}: zero coefficient leaf")
        if any(e < 0 for e in expr.exponents):
            raise DomainError(f"recipe violation at {path}: negative exponent")
        if degree(expr.exponents) < 1:
            raise DomainError(
                f"recipe violation at {path}: leaf must vanish at the origin "
                "(monomial degree >= 1)"
            )
        return {j for j, e in enumerate(expr.exponents) if e > 0}
    if expr.op not in ("sum", "prod"):
        raise DomainError(f"recipe violation at {path}: unknown op {expr.op!r}")
    if not expr.children:
        raise DomainError(f"recipe violation at {path}: empty {expr.op} node")
    seen = {}
    combined = set()
    for i, child in enumerate(expr.children):
        child_path = f"{path}.{expr.op}[{i}]"
        support = _validate(child, child_path)
        overlap = support & combined
        if overlap:
            shared = ", ".join(f"z{j + 1}" for j in sorted(overlap))
            first = next(seen[j] for j in sorted(overlap))
            raise DomainError(
                f"recipe violation at {path}: variables {shared} shared "
                f"between {first} and {child_path}"
            )
        for j in support:
            seen[j] = child_path
        combined |= support
    return combined


def _evaluate(expr, dim):
    if isinstance(expr, RecipeLeaf):
        return Symbol.monomial(dim, expr.exponents, expr.coefficient)
    parts = [_evaluate(child, dim) for child in expr.children]
    out = parts[0]
    for part in parts[1:]:
        out = out + part if expr.op == "sum" else out * part
    return out


def recipe_dimension(expr) -> int:
    dims = set()
    _leaf_dims(expr, dims)
    if not dims:
        raise DomainError("recipe has no leaves")
    if len(dims) > 1:
        raise DomainError(f"recipe leaves disagree on dimension: {sorted(dims)}")
    return dims.pop()


def build_recipe(expr) -> Symbol:
    """Evaluate a validated recipe tree into its (certified minimal) symbol."""
    dim = recipe_dimension(expr)
    _validate(expr, "root")
    return _evaluate(expr, dim)


# -- recipe text format ------------------------------------------------------
#
# S-expressions: (sum ...), (prod ...), leaf (mono <re> <im> : <e1> ... <ed>).


def format_recipe(expr) -> str:
    if isinstance(expr, RecipeLeaf):
        exps = " ".join(str(e) for e in expr.exponents)
        c = complex(expr.coefficient)
        return f"(mono {c.real!r} {c.imag!r} : {exps})"
    inner = " ".join(format_recipe(child) for child in expr.children)
    return f"({expr.op} {inner})"


def _tokenize(text):
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#"):
            continue
        spaced = line.replace("(", " ( ").replace(")", " ) ")
        tokens.extend((tok, lineno) for tok in spaced.split())
    return tokens


def _parse_expr(tokens, pos):
    if pos >= len(tokens):
        raise ParseError("unexpected end of recipe")
    tok, line = tokens[pos]
    if tok != "(":
        raise ParseError(f"expected '(', got {tok!r}", line=line)
    pos += 1
    if pos >= len(tokens):
        raise ParseError("unexpected end of recipe", line=line)
    head, line = tokens[pos]
    pos += 1
    if head == "mono":
        fields = []
        while pos < len(tokens) and tokens[pos][0] not in ("(", ")"):
            fields.append(tokens[pos])
            pos += 1
        if pos >= len(tokens) or tokens[pos][0] != ")":
            raise ParseError("unterminated (mono ...)", line=line)
        pos += 1
        values = [f for f, _ in fields]
        if values.count(":") != 1:
            raise ParseError("mono needs exactly one ':'", line=line)
        sep = values.index(":")
        if sep != 2:
            raise ParseError("mono needs '<re> <im>' before ':'", line=line)
        try:
            c = complex(float(values[0]), float(values[1]))
        except ValueError:
            raise ParseError(f"bad mono coefficient {values[:2]}", line=line) from None
        try:
            exps = tuple(int(v) for v in values[sep + 1:])
        except ValueError:
            raise ParseError(f"bad mono exponents {values[sep + 1:]}", line=line) from None
        if not exps:
            raise ParseError("mono needs at least one exponent", line=line)
        return RecipeLeaf(c, exps), pos
    if head in ("sum", "prod"):
        children = []
        while pos < len(tokens) and tokens[pos][0] != ")":
            child, pos = _parse_expr(tokens, pos)
            children.append(child)
        if pos >= len(tokens):
            raise ParseError(f"unterminated ({head} ...)", line=line)
        return RecipeNode(head, tuple(children)), pos + 1
    raise ParseError(f"unknown recipe node {head!r}", line=line)


def parse_recipe(text: str):
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty recipe")
    expr, pos = _parse_expr(tokens, 0)
    if pos != len(tokens):
        tok, line = tokens[pos]
        raise ParseError(f"trailing input {tok!r}", line=line)
    return expr

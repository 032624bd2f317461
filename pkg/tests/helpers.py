"""Shared builders and independent oracles for the test suite.

The oracles here deliberately avoid the library's own evaluation and
basis-enumeration code paths: direct exponential sums, brute-force
simplex matrices, and plain trapezoid loops.
"""

import cmath
import itertools
import math

import numpy as np

from hankel_lab import Symbol, make_symbol


def z(dim, j):
    return Symbol.variable(dim, j)


def phi2(a):
    return make_symbol(2, [((2, 0), 1.0), ((1, 1), a), ((0, 2), 1.0)])


def phi3(b):
    return make_symbol(2, [((3, 0), 1.0), ((2, 1), b), ((1, 2), b), ((0, 3), 1.0)])


def pair_product(d):
    """Product of d pair sums (z1+z2)(z3+z4)... in dimension 2d."""
    dim = 2 * d
    out = Symbol.one(dim)
    for j in range(d):
        out = out * (z(dim, 2 * j) + z(dim, 2 * j + 1))
    return out


def random_symbol(rng, dim, max_degree=3, n_terms=4, complex_coeffs=True,
                  homogeneous=None, variables=None, no_constant=False):
    """Random nonzero symbol with bounded degree on a variable subset."""
    variables = list(range(dim)) if variables is None else list(variables)
    while True:
        terms = []
        for _ in range(n_terms):
            target = homogeneous if homogeneous is not None else int(rng.integers(0, max_degree + 1))
            if no_constant and homogeneous is None:
                target = max(target, 1)
            alpha = [0] * dim
            for _ in range(target):
                alpha[variables[rng.integers(0, len(variables))]] += 1
            c = rng.uniform(-2, 2)
            if complex_coeffs:
                c = complex(c, rng.uniform(-2, 2))
            terms.append((tuple(alpha), c))
        s = make_symbol(dim, terms)
        if not s.is_zero:
            return s


def eval_direct(s, angles):
    """Independent pointwise evaluation (plain Python exp sum)."""
    total = 0j
    for alpha, c in s.terms():
        total += c * cmath.exp(1j * sum(e * t for e, t in zip(alpha, angles)))
    return total


def grid_mean_abs_pow(s, n, p):
    """Plain trapezoid mean of |phi|^p over the n^d uniform grid."""
    points = [2 * math.pi * t / n for t in range(n)]
    total = 0.0
    for angles in itertools.product(points, repeat=s.dim):
        total += abs(eval_direct(s, angles)) ** p
    return total / n**s.dim


def brute_matrix(s, max_degree=None):
    """Operator matrix over the full simplex of indices of degree <= D.

    Independent of the library's active-basis enumeration; only the entry
    rule  entry[gamma, beta] = conj(coeff(beta + gamma))  is shared.
    """
    if max_degree is None:
        max_degree = s.degree()
    basis = [
        alpha
        for alpha in itertools.product(range(max_degree + 1), repeat=s.dim)
        if sum(alpha) <= max_degree
    ]
    out = np.zeros((len(basis), len(basis)), dtype=complex)
    for i, gamma in enumerate(basis):
        for j, beta in enumerate(basis):
            out[i, j] = s.coeff(tuple(x + y for x, y in zip(beta, gamma))).conjugate()
    return out


def brute_norm(s, max_degree=None):
    mat = brute_matrix(s, max_degree)
    if mat.size == 0:
        return 0.0
    return float(np.linalg.svd(mat, compute_uv=False)[0])

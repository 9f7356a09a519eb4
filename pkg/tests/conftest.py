"""Shared generators for randomized cross-validation sweeps."""

import itertools

import numpy as np

from nonstab.families import maximal_form_spec
from nonstab.gottesman import GottesmanSpec, synthesize_phase_matrix, validate


def random_maximal_spec(rng, n, q=2):
    """A random product-form maximal spec on n digits."""
    upper = np.triu(rng.integers(0, q, size=(n, n)))
    spec = maximal_form_spec(q, n, upper)
    assert validate(spec) == []
    return spec


def random_nonmaximal_spec(rng, n, r, q=2):
    """A random valid spec with r < n: L = [I; 0], M with symmetric top block."""
    assert r < n
    m_mat = rng.integers(0, q, size=(n, r))
    top = m_mat[:r, :]
    m_mat[:r, :] = (top + top.T) % q  # make L^T M symmetric
    l_mat = np.zeros((n, r), dtype=np.int64)
    l_mat[:r, :] = np.eye(r, dtype=np.int64)
    d_mat = synthesize_phase_matrix(q, l_mat, m_mat)
    spec = GottesmanSpec(q=q, L=l_mat, M=m_mat, D=d_mat)
    assert validate(spec) == []
    return spec


def random_description(rng, spec, max_size=4):
    """A random nonempty Fourier description over `spec`."""
    from nonstab.fourier_code import FourierDescription

    size = int(rng.integers(1, min(max_size, spec.size) + 1))
    members = set()
    while len(members) < size:
        members.add(tuple(int(v) for v in rng.integers(0, spec.q, size=spec.r)))
    return FourierDescription(spec, frozenset(members))


def brute_force_subspace_count(m, q, r):
    """Count r-dimensional subspaces of GF(q)^m by closing every vector set."""
    vectors = list(itertools.product(range(q), repeat=m))
    subspaces = set()
    for basis in itertools.combinations(vectors[1:], r):
        span = set()
        for coeffs in itertools.product(range(q), repeat=r):
            v = tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) % q for i in range(m))
            span.add(v)
        if len(span) == q**r:
            subspaces.add(frozenset(span))
    return len(subspaces)


def brute_force_forbidden(spec, d):
    """Forbidden index set by exhaustive enumeration of all (x, y) pairs.

    Independent of the library's linear solver: subgroup membership is
    decided against an explicit materialization of all q^r elements.
    """
    q, n, r = spec.q, spec.n, spec.r
    image = set()
    for a in itertools.product(range(q), repeat=r):
        element = spec.element(np.array(a, dtype=np.int64))
        image.add((element.a, element.b))
    out = set()
    for x in itertools.product(range(q), repeat=n):
        for y in itertools.product(range(q), repeat=n):
            weight = sum(1 for i in range(n) if x[i] or y[i])
            if not 1 <= weight <= d - 1:
                continue
            if (x, y) in image:
                continue
            u = tuple(
                int(sum(spec.L[i, j] * y[i] - spec.M[i, j] * x[i] for i in range(n)) % q)
                for j in range(r)
            )
            out.add(u)
    return out

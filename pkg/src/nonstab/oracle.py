"""Independent verification through explicit states.

States are sparse maps from basis words to complex amplitudes, stored as a
sorted array of packed word indices plus an amplitude array; all sums run
in sorted word order so results are bit-stable.  Codewords are built by
applying the code projection to standard basis words, which only needs the
subgroup data; for specs carrying the product-form certificate the closed
form is evaluated as a second, independent path and compared.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .fourier_code import FourierDescription, code_dimension, projection_coefficients
from .galois import linear_solve
from .gottesman import GottesmanSpec
from .weyl import AlphabetGroup, WeylElement

PRUNE_TOL = 1e-14
DENSE_CAP = 2**20


def _radix_powers(group: AlphabetGroup, n: int) -> np.ndarray:
    radices = np.array([group.orders[j % group.k] for j in range(n * group.k)], dtype=np.int64)
    powers = np.ones(len(radices), dtype=np.int64)
    for j in range(len(radices) - 2, -1, -1):
        powers[j] = powers[j + 1] * radices[j + 1]
    return powers


def _unpack(group: AlphabetGroup, n: int, packed: np.ndarray) -> np.ndarray:
    width = n * group.k
    powers = _radix_powers(group, n)
    out = np.zeros((len(packed), width), dtype=np.int64)
    for j in range(width):
        out[:, j] = (packed // powers[j]) % group.orders[j % group.k]
    return out


@dataclass(frozen=True, eq=False)
class SparseState:
    """Sparse complex state on words of length n over an abelian alphabet."""

    group: AlphabetGroup
    n: int
    words: np.ndarray  # (count, n*k), rows sorted by packed index
    amps: np.ndarray  # complex128

    @classmethod
    def from_pairs(cls, group: AlphabetGroup, n: int, words, amps) -> "SparseState":
        """Canonical state: duplicate words merged, near-zeros pruned, sorted."""
        words = np.array(words, dtype=np.int64).reshape(-1, n * group.k)
        amps = np.asarray(amps, dtype=complex).ravel()
        if words.shape[0] != amps.shape[0]:
            raise ValueError("words and amplitudes differ in length")
        for j in range(words.shape[1]):
            words[:, j] %= group.orders[j % group.k]
        powers = _radix_powers(group, n)
        packed = words @ powers
        uniq, inverse = np.unique(packed, return_inverse=True)
        merged = np.zeros(len(uniq), dtype=complex)
        np.add.at(merged, inverse, amps)
        keep = np.abs(merged) > PRUNE_TOL
        out_words = _unpack(group, n, uniq[keep])
        out_amps = merged[keep]
        out_words.setflags(write=False)
        out_amps.setflags(write=False)
        return cls(group, n, out_words, out_amps)

    @classmethod
    def from_dict(cls, group: AlphabetGroup, n: int, mapping: dict) -> "SparseState":
        words = list(mapping.keys())
        amps = [mapping[w] for w in words]
        if not words:
            return cls.from_pairs(group, n, np.zeros((0, n * group.k)), [])
        return cls.from_pairs(group, n, np.array(words), amps)

    @classmethod
    def basis_word(cls, group: AlphabetGroup, word) -> "SparseState":
        word = group.word(word)
        return cls.from_pairs(group, len(word) // group.k, [word], [1.0])

    @cached_property
    def packed(self) -> np.ndarray:
        return self.words @ _radix_powers(self.group, self.n)

    def items(self):
        for row, amp in zip(self.words, self.amps):
            yield tuple(int(v) for v in row), complex(amp)

    def to_dict(self) -> dict:
        return dict(self.items())

    def __len__(self) -> int:
        return len(self.amps)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def normalized(self) -> "SparseState":
        nrm = self.norm()
        if nrm < PRUNE_TOL:
            raise ValueError("cannot normalize a (near-)zero state")
        return SparseState.from_pairs(self.group, self.n, self.words, self.amps / nrm)

    def scaled(self, factor: complex) -> "SparseState":
        return SparseState.from_pairs(self.group, self.n, self.words, self.amps * factor)

    def inner(self, other: "SparseState") -> complex:
        """<self | other>, conjugate-linear in self."""
        if self.group != other.group or self.n != other.n:
            raise ValueError("states live on different word spaces")
        common, ia, ib = np.intersect1d(
            self.packed, other.packed, assume_unique=True, return_indices=True
        )
        if not len(common):
            return 0.0 + 0.0j
        return complex(np.sum(np.conj(self.amps[ia]) * other.amps[ib]))

    def fidelity(self, other: "SparseState") -> float:
        return abs(self.inner(other))

    def to_dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        dim = self.group.size**self.n
        if dim > cap:
            raise ValueError(f"dense dimension {dim} exceeds cap {cap}")
        out = np.zeros(dim, dtype=complex)
        out[self.packed] = self.amps
        return out


def apply(g: WeylElement, state: SparseState) -> SparseState:
    """Monomial action of w^phase U_a V_b: shift by a, multiply by <b, x>."""
    if g.group != state.group or g.n != state.n:
        raise ValueError("element and state act on different word spaces")
    grp = state.group
    p = grp.phase_denominator
    coeffs = np.array(
        [(p // grp.orders[j % grp.k]) * g.b[j] for j in range(len(g.b))], dtype=np.int64
    )
    exponents = (g.phase + state.words @ coeffs) % p
    roots = np.exp(2j * np.pi * np.arange(p) / p)
    new_amps = state.amps * roots[exponents]
    new_words = state.words + np.array(g.a, dtype=np.int64)
    return SparseState.from_pairs(grp, state.n, new_words, new_amps)


# ----------------------------------------------------------------------
# Codewords
# ----------------------------------------------------------------------


def _spec_tables(spec: GottesmanSpec):
    """(index rows, U-parts, V-parts, phase exponents) for the whole subgroup."""
    if spec.size > 2**16:
        raise ValueError(f"subgroup size {spec.size} exceeds cap {2**16}")
    a_rows = np.array(
        list(itertools.product(range(spec.q), repeat=spec.r)), dtype=np.int64
    )
    la = (a_rows @ spec.L.T) % spec.q
    ma = (a_rows @ spec.M.T) % spec.q
    rho = spec.rho_batch(a_rows)
    return a_rows, la, ma, rho


def codeword(description: FourierDescription, u, closed_form_tol: float = 1e-10) -> SparseState:
    """Unit eigenvector of the subgroup with character index u (maximal specs).

    Built by applying the rank-one character projection to standard basis
    words, in lexicographic order, until a nonzero image appears.  When the
    spec carries a product-form certificate, the closed form is computed as
    an independent second path and the two must agree.
    """
    spec = description.spec
    if tuple(int(v) for v in u) not in description.members:
        raise ValueError("u is not a member of the Fourier description")
    if not spec.is_maximal():
        raise ValueError("codeword construction requires a maximal spec")
    q, n, p = spec.q, spec.n, spec.phase_denominator
    unit = p // q
    dim = q**n
    if dim > DENSE_CAP:
        raise ValueError(f"state dimension {dim} exceeds cap {DENSE_CAP}")
    a_rows, la, ma, rho = _spec_tables(spec)
    u_vec = np.array(u, dtype=np.int64)
    chi = (unit * ((a_rows @ u_vec) % q)) % p
    roots = np.exp(2j * np.pi * np.arange(p) / p)
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    group = spec.group

    state = None
    for w_tuple in itertools.product(range(q), repeat=n):
        w = np.array(w_tuple, dtype=np.int64)
        exponents = (rho + unit * ((ma @ w) % q) - chi) % p
        targets = ((la + w) % q) @ powers
        dense = np.zeros(dim, dtype=complex)
        np.add.at(dense, targets, roots[exponents])
        dense /= spec.size
        norm = np.linalg.norm(dense)
        if norm > 1e-8:
            support = np.nonzero(np.abs(dense) > PRUNE_TOL)[0]
            state = SparseState.from_pairs(
                group, n, _unpack(group, n, support), dense[support] / norm
            )
            break
    if state is None:
        raise ValueError("projection vanished on every basis word (invalid spec?)")
    if spec.quad_upper is not None:
        try:
            reference = closed_form_codeword(spec, u)
        except ValueError:
            reference = None  # no product-form coordinates (q divides n)
        if reference is not None and abs(state.fidelity(reference) - 1.0) > closed_form_tol:
            raise RuntimeError(
                "projection-built codeword disagrees with the closed form"
            )
    return state


def message_coordinates(spec: GottesmanSpec, u) -> tuple[np.ndarray, int]:
    """Express a character index as product-form coordinates (c, delta).

    Solves u = L^T c + delta * w with c in the sum-zero code, where w is
    determined by the V-part offset of the spec.  Requires the certificate
    and a unique solution (fails when q divides the digit count).
    """
    if spec.quad_upper is None:
        raise ValueError("spec does not carry a product-form certificate")
    q, n = spec.q, spec.n
    field = spec.field
    l7 = (spec.quad_upper + spec.quad_upper.T) % q
    w_vec = ((spec.M - (l7 @ spec.L) % q).T @ np.ones(n, dtype=np.int64)) % q
    system = np.zeros((n + 1, n + 1), dtype=np.int64)
    system[:n, :n] = spec.L.T
    system[:n, n] = w_vec
    system[n, :n] = 1
    rhs = np.concatenate([np.array(u, dtype=np.int64) % q, [0]])
    solution = linear_solve(field, system, rhs)
    if solution is None:
        raise ValueError("character has no product-form coordinates")
    x, kernel = solution
    if kernel:
        raise ValueError(
            "product-form coordinates are not unique (degenerate: q divides n)"
        )
    return x[:n], int(x[n])


def sum_zero_words(n: int, q: int) -> np.ndarray:
    """All words in GF(q)^n with zero digit sum, in lexicographic order."""
    free = np.array(list(itertools.product(range(q), repeat=n - 1)), dtype=np.int64)
    last = (-free.sum(axis=1)) % q
    return np.hstack([free, last[:, None]])


def closed_form_codeword(spec: GottesmanSpec, u) -> SparseState:
    """Codeword of a product-form spec, from its explicit amplitude formula:

        sum over sum-zero x of  w^((x+d)^T Q (x+d)) conj(w)^(x . c) |x + d>

    normalized, with Q the certificate matrix and (c, d = delta * ones)
    the product-form coordinates of u.
    """
    c_vec, delta = message_coordinates(spec, u)
    q, n = spec.q, spec.n
    upper = spec.quad_upper
    xs = sum_zero_words(n, q)
    zs = (xs + delta) % q
    quad = np.einsum("ij,jk,ik->i", zs, upper, zs) % q
    lin = (xs @ c_vec) % q
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    amps = roots[quad] * np.conj(roots[lin]) / math.sqrt(len(xs))
    return SparseState.from_pairs(spec.group, n, zs, amps)


# ----------------------------------------------------------------------
# Knill-Laflamme checks
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class OracleReport:
    passed: bool
    witness: dict | None = None
    counts: dict | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json_dict(self) -> dict:
        out: dict = {"pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.counts is not None:
            out["counts"] = self.counts
        return out


def _error_tables(q: int, n: int, w: int, cap: int):
    from .gottesman import bounded_pair_arrays

    return bounded_pair_arrays(q, n, min(w, n), cap=cap)


def kl_check(
    description: FourierDescription,
    d: int,
    tol: float = 1e-9,
    cap: int = DENSE_CAP,
) -> OracleReport:
    """Direct check that every error of weight < d is detected.

    For each error g and the codeword basis {phi_u}, the matrix of
    <phi_u| g |phi_v> must be a constant multiple of the identity within
    `tol`.  Maximal specs use the explicit codeword basis; non-maximal
    specs check P g P = phi(g) P on the dense projection.
    """
    spec = description.spec
    q, n = spec.q, spec.n
    dim = q**n
    if dim > cap:
        raise ValueError(f"dense dimension {dim} exceeds cap {cap}")
    xs, ys = _error_tables(q, n, d - 1, cap=10**7)
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = _unpack(spec.group, n, np.arange(dim))

    if spec.is_maximal():
        members = description.sorted_members()
        basis = np.column_stack(
            [codeword(description, u).to_dense(cap) for u in members]
        )
        kk = len(members)
        for idx in range(xs.shape[0]):
            x, y = xs[idx], ys[idx]
            targets = ((digits + x) % q) @ powers
            phases = roots[(digits @ y) % q]
            moved = np.zeros_like(basis)
            moved[targets] = phases[:, None] * basis
            gram = basis.conj().T @ moved
            diag = np.diag(gram)
            off = gram - np.diag(diag)
            bad_off = np.abs(off) > tol
            if bad_off.any():
                i, j = np.argwhere(bad_off)[0]
                return OracleReport(
                    False,
                    witness={
                        "error": {"x": x.tolist(), "y": y.tolist()},
                        "u": list(members[i]),
                        "v": list(members[j]),
                        "value": [float(off[i, j].real), float(off[i, j].imag)],
                    },
                )
            spread = np.abs(diag - diag[0])
            if spread.max() > tol:
                j = int(np.argmax(spread))
                return OracleReport(
                    False,
                    witness={
                        "error": {"x": x.tolist(), "y": y.tolist()},
                        "u": list(members[j]),
                        "v": list(members[j]),
                        "value": [float(diag[j].real), float(diag[j].imag)],
                    },
                )
        return OracleReport(
            True, counts={"errors": int(xs.shape[0]), "pairs": kk * kk}
        )

    projection = dense_projection(description, cap=cap)
    trace = np.trace(projection).real
    for idx in range(xs.shape[0]):
        x, y = xs[idx], ys[idx]
        targets = ((digits + x) % q) @ powers
        phases = roots[(digits @ y) % q]
        moved = np.zeros_like(projection)
        moved[targets] = phases[:, None] * projection  # g @ P
        pgp = projection @ moved
        phi = np.trace(pgp) / trace
        deviation = np.abs(pgp - phi * projection).max()
        if deviation > tol:
            return OracleReport(
                False,
                witness={
                    "error": {"x": x.tolist(), "y": y.tolist()},
                    "value": float(deviation),
                },
            )
    return OracleReport(True, counts={"errors": int(xs.shape[0])})


def dense_projection(description: FourierDescription, cap: int = 2**12) -> np.ndarray:
    """The code projection as a dense matrix (small n only)."""
    spec = description.spec
    q, n, p = spec.q, spec.n, spec.phase_denominator
    dim = q**n
    if dim > cap:
        raise ValueError(f"dense dimension {dim} exceeds cap {cap}")
    coeffs = projection_coefficients(description)
    a_rows, la, ma, rho = _spec_tables(spec)
    roots = np.exp(2j * np.pi * np.arange(p) / p)
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = _unpack(spec.group, n, np.arange(dim))
    unit = p // q
    out = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim)
    for idx in range(a_rows.shape[0]):
        t_a = coeffs[tuple(map(int, a_rows[idx]))]
        if abs(t_a) < PRUNE_TOL:
            continue
        rows = ((digits + la[idx]) % q) @ powers
        phases = roots[(rho[idx] + unit * ((digits @ ma[idx]) % q)) % p]
        out[rows, cols] += t_a * phases
    return out


def orthonormality_check(description: FourierDescription, tol: float = 1e-10) -> OracleReport:
    """Gram matrix of the codeword basis must be the identity within tol."""
    members = description.sorted_members()
    states = [codeword(description, u) for u in members]
    kk = len(states)
    gram = np.zeros((kk, kk), dtype=complex)
    for i in range(kk):
        for j in range(kk):
            gram[i, j] = states[i].inner(states[j])
    deviation = np.abs(gram - np.eye(kk))
    if deviation.max() > tol:
        i, j = np.unravel_index(np.argmax(deviation), deviation.shape)
        return OracleReport(
            False,
            witness={"u": list(members[i]), "v": list(members[j]),
                     "value": [float(gram[i, j].real), float(gram[i, j].imag)]},
        )
    return OracleReport(True, counts={"codewords": kk})


def codeword_count_matches_dimension(description: FourierDescription) -> bool:
    return len(description.sorted_members()) == code_dimension(description)

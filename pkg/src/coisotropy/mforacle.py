"""Independent computational oracles on explicit matrix actions.

Multiplicity-freeness is decided by openness of a generic Borel orbit
(exact rank over the Gaussian rationals with a double-precision
cross-check), cohomogeneity by generic orbit dimension of the compact real
form, the rank of a principal isotropy subalgebra by the centralizer of a
generic element, and polarity candidates are killed by the Lie triple
system test on explicit tangent data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    QMat,
    QQi,
    QQI_ZERO,
    commutator,
    complex_rank,
    float_rank,
    frac_nullspace,
    frac_rank,
    frac_rref,
    int_rank,
    realify_vector,
)
from .matrep import MatrixRep, RealRep


DEFAULT_SEED = 20240101
SAMPLE_BOUND = 97
N_SAMPLES = 3
MAX_ROUNDS = 5


class GenericityError(RuntimeError):
    """Sampled ranks failed to stabilize; never silently answered."""


class OracleDisagreement(RuntimeError):
    """Exact rank and floating-point rank disagreed; hard failure."""


@dataclass
class OrbitProbe:
    """Bookkeeping for one stabilized sampling run."""

    sample_points: list[tuple]
    seeds: list[int]
    value: int
    rounds_used: int


@dataclass
class CohomReport:
    cohomogeneity: int
    group_rank: int
    principal_isotropy_rank: int

    @property
    def coisotropic(self) -> bool:
        return self.cohomogeneity == self.group_rank - self.principal_isotropy_rank


def _rng(seed: int, idx: int, rnd: int) -> random.Random:
    return random.Random(f"{seed}:{idx}:{rnd}")


def _sample_complex_vector(dim: int, rng: random.Random, bound: int) -> tuple:
    while True:
        v = tuple(
            QQi(rng.randint(-bound, bound), rng.randint(-bound, bound))
            for _ in range(dim)
        )
        if any(v):
            return v


def _sample_real_vector(dim: int, rng: random.Random, bound: int) -> tuple:
    while True:
        v = tuple(QQi(rng.randint(-bound, bound)) for _ in range(dim))
        if any(v):
            return v


def _stabilize(evaluate, dim: int, seed: int, sampler) -> OrbitProbe:
    """Evaluate an integer invariant at N_SAMPLES generic points.

    Samples must agree; on disagreement the integer entry range is scaled
    up tenfold, up to MAX_ROUNDS times, after which a GenericityError is
    raised rather than returning a possibly non-generic answer.
    """
    bound = SAMPLE_BOUND
    for rnd in range(MAX_ROUNDS):
        points = []
        values = []
        seeds = []
        for idx in range(N_SAMPLES):
            rng = _rng(seed, idx, rnd)
            v = sampler(dim, rng, bound)
            points.append(v)
            seeds.append(idx)
            values.append(evaluate(v))
        if len(set(values)) == 1:
            return OrbitProbe(
                sample_points=points, seeds=seeds, value=values[0], rounds_used=rnd + 1
            )
        bound *= 10
    raise GenericityError("sample ranks did not stabilize after 5 rounds")


def _checked_complex_rank(rows: list[tuple]) -> int:
    exact = complex_rank(rows)
    approx = float_rank(rows)
    if exact != approx:
        raise OracleDisagreement(
            f"exact rank {exact} vs floating rank {approx}; inputs are suspect"
        )
    return exact


def mf_test(rep: MatrixRep, seed: int = DEFAULT_SEED) -> bool:
    """True iff a Borel subgroup of the complexified group has an open orbit.

    The rank of {b . v : b Borel generator} at a generic v is compared with
    the module dimension; ranks are exact over the Gaussian rationals and
    cross-checked in double precision.
    """
    dim = rep.space_dim
    if dim == 0:
        return True
    borel = rep.borel_generators()
    if not borel:
        return False

    def rank_at(v) -> int:
        rows = [g.apply(v) for g in borel]
        return _checked_complex_rank(rows)

    probe = _stabilize(rank_at, dim, seed, _sample_complex_vector)
    return probe.value == dim


def _real_action_rows(rep, v) -> list[list[Fraction]]:
    if isinstance(rep, RealRep):
        rows = []
        for g in rep.gens:
            gv = g.apply(v)
            rows.append([z.re for z in gv])
        return rows
    rows = []
    for g in rep.compact_gens:
        rows.append(realify_vector(g.apply(v)))
    return rows


def _real_dim(rep) -> int:
    return rep.dim if isinstance(rep, RealRep) else 2 * rep.space_dim


def _sampler_for(rep):
    if isinstance(rep, RealRep):
        return _sample_real_vector
    return lambda dim_c, rng, bound: _sample_complex_vector(dim_c, rng, bound)


def _sample_dim(rep) -> int:
    return rep.dim if isinstance(rep, RealRep) else rep.space_dim


def cohomogeneity(rep, seed: int = DEFAULT_SEED) -> int:
    """Real codimension of a generic orbit of the compact group."""
    dim_r = _real_dim(rep)
    if dim_r == 0:
        return 0

    def orbit_rank(v) -> int:
        return frac_rank(_real_action_rows(rep, v))

    probe = _stabilize(orbit_rank, _sample_dim(rep), seed, _sampler_for(rep))
    return dim_r - probe.value


def _isotropy_basis(rep, v) -> list[QMat]:
    """Exact basis of {X in compact algebra : X v = 0}."""
    gens = rep.gens if isinstance(rep, RealRep) else rep.compact_gens
    if not gens:
        return []
    rows = _real_action_rows(rep, v)
    # kernel of the transpose system: coefficients c with sum c_k (g_k v) = 0
    ncols = len(gens)
    sys_rows = []
    dim_r = len(rows[0])
    for comp in range(dim_r):
        sys_rows.append([rows[k][comp] for k in range(ncols)])
    kernel = frac_nullspace(sys_rows, ncols)
    out = []
    for coeffs in kernel:
        acc = QMat.zeros(gens[0].nrows, gens[0].ncols)
        for c, g in zip(coeffs, gens):
            if c:
                acc = acc + g.scale(QQi(c))
        out.append(acc)
    return out


def _vectorize_real(mat: QMat) -> list[Fraction]:
    out = []
    for i in range(mat.nrows):
        for j in range(mat.ncols):
            v = mat.get(i, j)
            out.append(v.re)
            out.append(v.im)
    return out


def _algebra_rank(basis: list[QMat], rng: random.Random, bound: int = 97) -> int:
    """Rank of a compact Lie algebra given by a matrix basis.

    Dimension of the centralizer of a generic element; the centralizer of a
    generic element of a compact algebra is a maximal torus.
    """
    n = len(basis)
    if n == 0:
        return 0
    z = QMat.zeros(basis[0].nrows, basis[0].ncols)
    for g in basis:
        z = z + g.scale(QQi(rng.randint(-bound, bound)))
    rows = []
    for g in basis:
        rows.append(_vectorize_real(commutator(g, z)))
    sys_rows = []
    ncomp = len(rows[0])
    for comp in range(ncomp):
        sys_rows.append([rows[k][comp] for k in range(n)])
    return len(frac_nullspace(sys_rows, n))


def principal_isotropy_rank(rep, seed: int = DEFAULT_SEED) -> int:
    """Rank of the isotropy subalgebra at a generic point."""
    if _real_dim(rep) == 0:
        # everything stabilizes the zero module
        if isinstance(rep, RealRep):
            raise ValueError("zero-dimensional RealRep has no group data")
        return rep.group.rank

    def rank_at(v) -> int:
        basis = _isotropy_basis(rep, v)
        if not basis:
            return 0
        vals = set()
        for t in range(N_SAMPLES):
            rng = _rng(seed, 1000 + t, 0)
            vals.add(_algebra_rank(basis, rng))
        if len(vals) != 1:
            raise GenericityError("centralizer rank unstable inside isotropy algebra")
        return vals.pop()

    probe = _stabilize(rank_at, _sample_dim(rep), seed, _sampler_for(rep))
    return probe.value


def group_rank_of(rep, group_rank: int | None = None) -> int:
    if group_rank is not None:
        return group_rank
    if isinstance(rep, RealRep):
        raise ValueError("RealRep needs an explicit group rank")
    return rep.group.rank


def coisotropic_by_rank(
    rep, seed: int = DEFAULT_SEED, group_rank: int | None = None
) -> CohomReport:
    """Cohomogeneity against rank difference, the rank-based coisotropy test."""
    return CohomReport(
        cohomogeneity=cohomogeneity(rep, seed),
        group_rank=group_rank_of(rep, group_rank),
        principal_isotropy_rank=principal_isotropy_rank(rep, seed),
    )


# ---------------------------------------------------------------------------
# symmetric pairs and the Lie triple system test


@dataclass
class SymmetricPair:
    """Exact bases of g = k + p for a symmetric-space isotropy splitting."""

    name: str
    g_basis: list[QMat]
    k_basis: list[QMat]
    p_basis: list[QMat]

    def validate(self) -> None:
        for x in self.k_basis:
            for y in self.k_basis:
                if not _in_span(self.k_basis, commutator(x, y)):
                    raise ValueError("[k, k] escapes k")
            for y in self.p_basis:
                if not _in_span(self.p_basis, commutator(x, y)):
                    raise ValueError("[k, p] escapes p")
        for x in self.p_basis:
            for y in self.p_basis:
                if not _in_span(self.k_basis, commutator(x, y)):
                    raise ValueError("[p, p] escapes k")


@dataclass
class LieTripleResult:
    closed: bool
    witness: tuple[int, int, int] | None = None
    witness_bracket: QMat | None = None

    def __bool__(self):
        return self.closed


def _in_span(basis: list[QMat], target: QMat) -> bool:
    if target.is_zero():
        return True
    if not basis:
        return False
    rows = [_vectorize_real(b) for b in basis]
    t = _vectorize_real(target)
    ncols = len(rows)
    aug = []
    for comp in range(len(t)):
        aug.append([rows[k][comp] for k in range(ncols)] + [t[comp]])
    _, piv = frac_rref(aug)
    return ncols not in piv


def lie_triple_test(pair: SymmetricPair, m_basis: list[QMat]) -> LieTripleResult:
    """Closure of span(m_basis) under the double bracket, exactly.

    m_basis must lie inside p; the candidate section exp(m) is totally
    geodesic precisely when every [[X, Y], Z] stays in the span.
    """
    for m in m_basis:
        if not _in_span(pair.p_basis, m):
            raise ValueError("m_basis is not contained in p")
    return lie_triple_closure(m_basis)


def lie_triple_closure(m_basis: list[QMat]) -> LieTripleResult:
    """Closure of the real span of m_basis under double matrix brackets.

    This is the raw test applied directly to tangent data written in slice
    coordinates (brackets are plain matrix commutators there); embedding
    the coordinates into an ambient orthogonal algebra first can change
    the verdict, so callers record which model produced their numbers.
    """
    for i, x in enumerate(m_basis):
        for j, y in enumerate(m_basis):
            inner = commutator(x, y)
            for k, z in enumerate(m_basis):
                triple = commutator(inner, z)
                if not _in_span(m_basis, triple):
                    return LieTripleResult(
                        closed=False, witness=(i, j, k), witness_bracket=triple
                    )
    return LieTripleResult(closed=True)


def brackets_vanish(m_basis: list[QMat]) -> bool:
    return all(
        commutator(x, y).is_zero() for x in m_basis for y in m_basis
    )


def so_even_u_pair(m: int) -> SymmetricPair:
    """so(2m) = u(m) + p with p the (anti)holomorphic tangent of SO(2m)/U(m).

    Real matrices; the complex structure is J = [[0, -I], [I, 0]], k is its
    commutant, p its anticommutant:  k = [[A, -B], [B, A]] (A skew, B sym),
    p = [[P, Q], [Q, -P]] (P, Q skew).
    """
    n = 2 * m
    g_basis = []
    for a in range(n):
        for b in range(a + 1, n):
            g_basis.append(QMat(n, n, {(a, b): QQi(1), (b, a): QQi(-1)}))
    k_basis = []
    for a in range(m):
        for b in range(a + 1, m):
            skew = {(a, b): QQi(1), (b, a): QQi(-1)}
            k_basis.append(
                QMat(n, n, {**skew, **{(m + a, m + b): QQi(1), (m + b, m + a): QQi(-1)}})
            )
    for a in range(m):
        for b in range(a, m):
            ent = {}
            if a == b:
                ent[(a, m + a)] = QQi(-1)
                ent[(m + a, a)] = QQi(1)
            else:
                ent[(a, m + b)] = QQi(-1)
                ent[(b, m + a)] = QQi(-1)
                ent[(m + a, b)] = QQi(1)
                ent[(m + b, a)] = QQi(1)
            k_basis.append(QMat(n, n, ent))
    p_basis = []
    for a in range(m):
        for b in range(a + 1, m):
            skew_p = {(a, b): QQi(1), (b, a): QQi(-1),
                      (m + a, m + b): QQi(-1), (m + b, m + a): QQi(1)}
            p_basis.append(QMat(n, n, skew_p))
            skew_q = {(a, m + b): QQi(1), (b, m + a): QQi(-1),
                      (m + a, b): QQi(1), (m + b, a): QQi(-1)}
            p_basis.append(QMat(n, n, skew_q))
    return SymmetricPair(f"so({n})/u({m})", g_basis, k_basis, p_basis)


def embed_p_so_even(m: int, w_entries: dict[tuple[int, int], QQi]) -> QMat:
    """Skew complex m x m matrix W = P + iQ -> [[P, Q], [Q, -P]] in p."""
    n = 2 * m
    ent: dict[tuple[int, int], QQi] = {}

    def add(i, j, val: QQi):
        if val:
            ent[(i, j)] = ent.get((i, j), QQI_ZERO) + val

    for (a, b), v in w_entries.items():
        add(a, b, QQi(v.re))
        add(m + a, m + b, QQi(-v.re))
        add(a, m + b, QQi(v.im))
        add(m + a, b, QQi(v.im))
    return QMat(n, n, ent)


def sp_u_pair(m: int) -> SymmetricPair:
    """Compact sp(m) = u(m) + p inside 2m x 2m complex matrices.

    Elements are [[A, B], [-conj(B), conj(A)]] with A antihermitian and B
    symmetric; k is the B = 0 part, p the A = 0 part (p is Sym^2 C^m as a
    real space).
    """
    n = 2 * m
    g_basis: list[QMat] = []
    k_basis: list[QMat] = []
    p_basis: list[QMat] = []

    def a_block(ent_a: dict[tuple[int, int], QQi]) -> QMat:
        ent = {}
        for (i, j), v in ent_a.items():
            ent[(i, j)] = v
            ent[(m + i, m + j)] = v.conj()
        return QMat(n, n, ent)

    def b_block(ent_b: dict[tuple[int, int], QQi]) -> QMat:
        ent = {}
        for (i, j), v in ent_b.items():
            ent[(i, m + j)] = v
            ent[(m + i, j)] = -v.conj()
        return QMat(n, n, ent)

    for a in range(m):
        k_basis.append(a_block({(a, a): QQi(0, 1)}))
        for b in range(a + 1, m):
            k_basis.append(a_block({(a, b): QQi(1), (b, a): QQi(-1)}))
            k_basis.append(a_block({(a, b): QQi(0, 1), (b, a): QQi(0, 1)}))
    for a in range(m):
        for b in range(a, m):
            if a == b:
                p_basis.append(b_block({(a, a): QQi(1)}))
                p_basis.append(b_block({(a, a): QQi(0, 1)}))
            else:
                p_basis.append(b_block({(a, b): QQi(1), (b, a): QQi(1)}))
                p_basis.append(b_block({(a, b): QQi(0, 1), (b, a): QQi(0, 1)}))
    g_basis = k_basis + p_basis
    return SymmetricPair(f"sp({m})/u({m})", g_basis, k_basis, p_basis)


def maximal_abelian_in_p(
    pair: SymmetricPair, seed: int = DEFAULT_SEED
) -> list[QMat]:
    """Commutant of a generic p-element inside p: a maximal abelian subspace."""
    rng = random.Random(f"{seed}:abelian")
    z = QMat.zeros(pair.p_basis[0].nrows, pair.p_basis[0].ncols)
    for g in pair.p_basis:
        z = z + g.scale(QQi(rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND)))
    n = len(pair.p_basis)
    rows = [_vectorize_real(commutator(g, z)) for g in pair.p_basis]
    sys_rows = []
    for comp in range(len(rows[0])):
        sys_rows.append([rows[k][comp] for k in range(n)])
    kernel = frac_nullspace(sys_rows, n)
    out = []
    for coeffs in kernel:
        acc = QMat.zeros(z.nrows, z.ncols)
        for c, g in zip(coeffs, pair.p_basis):
            if c:
                acc = acc + g.scale(QQi(c))
        out.append(acc)
    return out

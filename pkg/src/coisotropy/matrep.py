"""Explicit matrix realizations over the Gaussian rationals.

Standard modules of the classical algebras are realized in split form so
that Cartan generators are diagonal and positive root vectors are strictly
upper triangular in the constructed weight basis.  Spin modules come from a
Clifford algebra built out of Pauli tensor products; arbitrary dominant
weights are realized through an exact contravariant-form construction.
Tensor products, symmetric and exterior squares, duals, direct sums and
torus charge lines are functorial on the generator lists.

For every module the lowering generator of a positive root is the adjoint
of the raising generator with respect to an invariant positive form, so
the real span of {i*h, e - f, i*(e + f)}, together with i times the torus
charge matrices, is exactly the compact real form acting on the module.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import (
    QMat,
    QQi,
    QQI_I,
    QQI_ONE,
    QQI_ZERO,
    block_diag,
    commutator,
    frac_nullspace,
    frac_rref,
    kron,
)
from .rootsys import (
    DominantWeight,
    RootSystem,
    SimpleType,
    build_root_system,
    weyl_dim,
)


class NotRealizable(ValueError):
    """Raised for module terms with no matrix model; use encoded slice data."""


class RepresentationError(ValueError):
    pass


WEIGHT_MODULE_DIM_CAP = 256


# ---------------------------------------------------------------------------
# group and module specifications


@dataclass(frozen=True)
class Factor:
    """One factor of a reductive group: su/so/sp family or exceptional."""

    kind: str
    n: int

    def __post_init__(self):
        kinds = ("su", "so", "sp", "g2", "f4", "e6", "e7", "e8")
        if self.kind not in kinds:
            raise RepresentationError(f"unknown factor kind {self.kind!r}")
        if self.kind in ("su", "so", "sp") and self.n < 1:
            raise RepresentationError(f"{self.kind}(n) needs n >= 1")
        if self.kind in ("g2", "f4", "e6", "e7", "e8"):
            expected = int(self.kind[1])
            if self.n != expected:
                raise RepresentationError(f"{self.kind}({self.n}) is not valid")

    @property
    def dim(self) -> int:
        k, n = self.kind, self.n
        if k == "su":
            return n * n - 1
        if k == "so":
            return n * (n - 1) // 2
        if k == "sp":
            return n * (2 * n + 1)
        return {"g2": 14, "f4": 52, "e6": 78, "e7": 133, "e8": 248}[k]

    @property
    def rank(self) -> int:
        k, n = self.kind, self.n
        if k == "su":
            return n - 1
        if k == "so":
            return n // 2
        if k == "sp":
            return n
        return self.n

    @property
    def borel_dim(self) -> int:
        """(dim + rank)/2, from closed forms (valid for so(2) etc. as well)."""
        return (self.dim + self.rank) // 2

    @property
    def simple_type(self) -> SimpleType | None:
        """Simple type of the factor, or None when the factor is trivial."""
        k, n = self.kind, self.n
        if k == "su":
            return SimpleType("A", n - 1) if n >= 2 else None
        if k == "so":
            if n in (1, 2):
                return None
            if n == 4:
                raise RepresentationError("so(4) is not simple; use su(2)+su(2)")
            return SimpleType("B", (n - 1) // 2) if n % 2 else SimpleType("D", n // 2)
        if k == "sp":
            return SimpleType("C", n)
        fam = {"g2": "G", "f4": "F", "e6": "E", "e7": "E", "e8": "E"}[k]
        return SimpleType(fam, self.n)

    @property
    def std_dim(self) -> int:
        """Dimension of the module the DSL term std() denotes."""
        k, n = self.kind, self.n
        if k == "su":
            return n
        if k == "so":
            return n
        if k == "sp":
            return 2 * n
        return {"g2": 7, "f4": 26, "e6": 27, "e7": 56, "e8": 248}[k]

    def __str__(self):
        return f"{self.kind}({self.n})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _parallel(u, v) -> bool:
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] - u[j] * v[i] != 0:
                return False
    return True


@dataclass(frozen=True)
class GroupSpec:
    """Simple factors plus torus lines in an ambient product of circles.

    Each torus line is a primitive integer direction vector over the
    ambient circle coordinates; forbidden directions record the
    slope-exclusion conditions and are rejected at construction.
    """

    factors: tuple[Factor, ...] = ()
    torus_lines: tuple[tuple[int, ...], ...] = ()
    forbidden_lines: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        arities = {len(line) for line in self.torus_lines}
        arities |= {len(line) for line in self.forbidden_lines}
        if len(arities) > 1:
            raise RepresentationError("torus lines must share the circle arity")
        for line in self.torus_lines:
            if not any(line):
                raise RepresentationError("torus line must be nonzero")
            g = 0
            for c in line:
                g = _gcd(g, c)
            if g != 1:
                raise RepresentationError(f"torus line {line} is not primitive")
            for bad in self.forbidden_lines:
                if _parallel(line, bad):
                    raise RepresentationError(
                        f"torus line {line} lies on the excluded direction {bad}"
                    )

    @property
    def n_circles(self) -> int:
        for line in self.torus_lines + self.forbidden_lines:
            return len(line)
        return 0

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors) + len(self.torus_lines)

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors) + len(self.torus_lines)

    @property
    def borel_dim(self) -> int:
        return sum(f.borel_dim for f in self.factors) + len(self.torus_lines)

    def __str__(self):
        parts = [str(f) for f in self.factors]
        parts += [
            "u1[" + ",".join(str(c) for c in line) + "]" for line in self.torus_lines
        ]
        return " + ".join(parts) if parts else "(trivial group)"


@dataclass(frozen=True)
class Term:
    """One tensor slot of a summand: a module of a single factor."""

    kind: str  # std | sym2 | alt2 | spin | weight | triv
    factor: int = 0  # 1-based factor index; 0 for triv
    weight: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("std", "sym2", "alt2", "spin", "weight", "triv"):
            raise RepresentationError(f"unknown term kind {self.kind!r}")
        if self.kind == "triv" and self.factor:
            raise RepresentationError("triv takes no factor index")
        if self.kind != "triv" and self.factor < 1:
            raise RepresentationError("term needs a 1-based factor index")
        if self.kind == "weight" and self.weight is None:
            raise RepresentationError("weight term needs coefficients")


@dataclass(frozen=True)
class Summand:
    terms: tuple[Term, ...]
    dual: bool = False
    charges: tuple[int, ...] = ()


@dataclass(frozen=True)
class RepSpec:
    summands: tuple[Summand, ...]

    def __post_init__(self):
        if not self.summands:
            raise RepresentationError("module needs at least one summand")


# ---------------------------------------------------------------------------
# per-factor modules with a Chevalley split


@dataclass
class ModuleGens:
    """Generator matrices of one simple factor acting on one module.

    cartan is indexed by simple roots, raising/lowering by the positive
    roots of the factor root system, in its positive_roots order.  Each
    lowering generator is the adjoint of its raising partner with respect
    to an invariant positive form.
    """

    dim: int
    cartan: list[QMat] = field(default_factory=list)
    raising: list[QMat] = field(default_factory=list)
    lowering: list[QMat] = field(default_factory=list)

    def map_all(self, f) -> "ModuleGens":
        return ModuleGens(
            dim=-1,  # caller fixes
            cartan=[f(m) for m in self.cartan],
            raising=[f(m) for m in self.raising],
            lowering=[f(m) for m in self.lowering],
        )


def _orth_coords(rs: RootSystem):
    return [rs._orth(root) for root in rs.positive_roots]


@functools.lru_cache(maxsize=None)
def _std_module(stype: SimpleType) -> ModuleGens:
    fam, r = stype.family, stype.rank
    rs = build_root_system(stype)
    if fam == "A":
        return _std_A(rs, r)
    if fam == "C":
        return _std_C(rs, r)
    if fam in ("B", "D"):
        return _std_BD(rs, r, odd=(fam == "B"))
    # exceptional standard module = smallest fundamental module
    best = min(
        range(r),
        key=lambda i: weyl_dim(rs, DominantWeight.fundamental(r, i)),
    )
    return _weight_module(stype, tuple(int(i == best) for i in range(r)))


def _std_A(rs: RootSystem, r: int) -> ModuleGens:
    n = r + 1
    mod = ModuleGens(dim=n)
    for i in range(r):
        mod.cartan.append(QMat(n, n, {(i, i): QQI_ONE, (i + 1, i + 1): QQi(-1)}))
    for orth in _orth_coords(rs):
        i = next(k for k, v in enumerate(orth) if v == 1)
        j = next(k for k, v in enumerate(orth) if v == -1)
        mod.raising.append(QMat(n, n, {(i, j): QQI_ONE}))
        mod.lowering.append(QMat(n, n, {(j, i): QQI_ONE}))
    return mod


def _std_C(rs: RootSystem, r: int) -> ModuleGens:
    # weight-ordered basis (e_1..e_r, f_r..f_1)
    n = 2 * r
    pp = lambda i: i  # noqa: E731
    pm = lambda i: 2 * r - 1 - i  # noqa: E731
    mod = ModuleGens(dim=n)
    hd = [
        {(pp(i), pp(i)): QQI_ONE, (pm(i), pm(i)): QQi(-1)} for i in range(r)
    ]
    for i in range(r - 1):
        d = dict(hd[i])
        d[(pp(i + 1), pp(i + 1))] = QQi(-1)
        d[(pm(i + 1), pm(i + 1))] = QQI_ONE
        mod.cartan.append(QMat(n, n, d))
    mod.cartan.append(QMat(n, n, hd[r - 1]))
    for orth in _orth_coords(rs):
        pos = [k for k, v in enumerate(orth) if v > 0]
        neg = [k for k, v in enumerate(orth) if v < 0]
        if 2 in orth:
            i = orth.index(2)
            e = QMat(n, n, {(pp(i), pm(i)): QQI_ONE})
        elif len(pos) == 2:
            i, j = pos
            e = QMat(n, n, {(pp(i), pm(j)): QQI_ONE, (pp(j), pm(i)): QQI_ONE})
        else:
            i, j = pos[0], neg[0]
            e = QMat(n, n, {(pp(i), pp(j)): QQI_ONE, (pm(j), pm(i)): QQi(-1)})
        mod.raising.append(e)
        mod.lowering.append(e.transpose())
    return mod


def _std_BD(rs: RootSystem, r: int, odd: bool) -> ModuleGens:
    # split realization for the antidiagonal symmetric form; basis
    # (e_1..e_r, [middle], f_r..f_1) carries strictly decreasing weights
    n = 2 * r + 1 if odd else 2 * r
    pp = lambda i: i  # noqa: E731
    pm = lambda i: n - 1 - i  # noqa: E731
    mid = r
    mod = ModuleGens(dim=n)
    hd = [
        {(pp(i), pp(i)): QQI_ONE, (pm(i), pm(i)): QQi(-1)} for i in range(r)
    ]
    for i in range(r - 1):
        d = dict(hd[i])
        d[(pp(i + 1), pp(i + 1))] = QQi(-1)
        d[(pm(i + 1), pm(i + 1))] = QQI_ONE
        mod.cartan.append(QMat(n, n, d))
    if odd:
        mod.cartan.append(QMat(n, n, {k: v + v for k, v in hd[r - 1].items()}))
    else:
        d = dict(hd[r - 2])
        for k, v in hd[r - 1].items():
            d[k] = d.get(k, QQI_ZERO) + v
        mod.cartan.append(QMat(n, n, d))
    for orth in _orth_coords(rs):
        pos = [k for k, v in enumerate(orth) if v > 0]
        neg = [k for k, v in enumerate(orth) if v < 0]
        if len(pos) == 1 and not neg:
            i = pos[0]
            e = QMat(n, n, {(pp(i), mid): QQI_ONE, (mid, pm(i)): QQi(-1)})
        elif len(pos) == 2:
            i, j = pos
            e = QMat(n, n, {(pp(i), pm(j)): QQI_ONE, (pp(j), pm(i)): QQi(-1)})
        else:
            i, j = pos[0], neg[0]
            e = QMat(n, n, {(pp(i), pp(j)): QQI_ONE, (pm(j), pm(i)): QQi(-1)})
        mod.raising.append(e)
        mod.lowering.append(e.transpose())
    return mod


# ---------------------------------------------------------------------------
# spin modules via Pauli tensor products


_SX = QMat(2, 2, {(0, 1): QQI_ONE, (1, 0): QQI_ONE})
_SY = QMat(2, 2, {(0, 1): QQi(0, -1), (1, 0): QQI_I})
_SZ = QMat(2, 2, {(0, 0): QQI_ONE, (1, 1): QQi(-1)})


def _pauli_chain(k: int, pos: int, op: QMat) -> QMat:
    out = QMat.identity(1)
    for t in range(k):
        if t < pos:
            out = kron(out, _SZ)
        elif t == pos:
            out = kron(out, op)
        else:
            out = kron(out, QMat.identity(2))
    return out


@functools.lru_cache(maxsize=None)
def _spin_module(n: int, chirality: int = 1) -> ModuleGens:
    if not 3 <= n <= 12:
        raise NotRealizable("spin modules are provided for 3 <= n <= 12")
    k = n // 2
    odd = n % 2 == 1
    gammas = []
    for j in range(k):
        gammas.append(_pauli_chain(k, j, _SX))
        gammas.append(_pauli_chain(k, j, _SY))
    chain_z = functools.reduce(kron, [_SZ] * k)
    if odd:
        gammas.append(chain_z)
    dim_full = 2**k
    stype = SimpleType("B", k) if odd else SimpleType("D", k)
    rs = build_root_system(stype)

    half = QQi(Fraction(1, 2))
    ihalf = QQi(0, Fraction(1, 2))
    raisers = [
        gammas[2 * j].scale(half) + gammas[2 * j + 1].scale(ihalf) for j in range(k)
    ]
    lowerers = [m.conj_transpose() for m in raisers]

    def root_vector(orth) -> QMat:
        pos = [t for t, v in enumerate(orth) if v > 0]
        neg = [t for t, v in enumerate(orth) if v < 0]
        if len(pos) == 1 and not neg:
            return raisers[pos[0]] @ gammas[-1]
        if len(pos) == 2:
            return raisers[pos[0]] @ raisers[pos[1]]
        return raisers[pos[0]] @ lowerers[neg[0]]

    horth = []
    for j in range(k):
        m = (gammas[2 * j] @ gammas[2 * j + 1]).scale(QQi(0, Fraction(-1, 2)))
        assert m.is_diagonal()
        horth.append(m)

    if odd:
        indices = list(range(dim_full))
    else:
        want = QQI_ONE if chirality > 0 else QQi(-1)
        indices = [i for i in range(dim_full) if chain_z.get(i, i) == want]
    weights = [
        tuple(h.get(idx, idx).re for h in horth) for idx in indices
    ]
    scale = [Fraction(3 ** (k - j)) for j in range(k)]
    order = sorted(
        range(len(indices)),
        key=lambda t: sum(s * w for s, w in zip(scale, weights[t])),
        reverse=True,
    )
    sel = [indices[t] for t in order]
    posmap = {old: new for new, old in enumerate(sel)}

    def restrict(m: QMat) -> QMat:
        ent = {}
        for (i, j), v in m.entries.items():
            if i in posmap and j in posmap:
                ent[(posmap[i], posmap[j])] = v
            elif (i in posmap) != (j in posmap):
                raise RepresentationError("operator does not preserve chirality")
        return QMat(len(sel), len(sel), ent)

    mod = ModuleGens(dim=len(sel))
    for i in range(k - 1):
        mod.cartan.append(restrict(horth[i] - horth[i + 1]))
    if odd:
        mod.cartan.append(restrict(horth[k - 1].scale(QQi(2))))
    else:
        mod.cartan.append(restrict(horth[k - 2] + horth[k - 1]))
    for root in rs.positive_roots:
        e = restrict(root_vector(rs._orth(root)))
        if e.is_zero():
            raise RepresentationError(f"vanishing spin root vector for {root}")
        mod.raising.append(e)
        mod.lowering.append(e.conj_transpose())
    return mod


# ---------------------------------------------------------------------------
# arbitrary dominant weights by the exact contravariant-form construction


@functools.lru_cache(maxsize=None)
def _weight_module(stype: SimpleType, coeffs: tuple[int, ...]) -> ModuleGens:
    """Irreducible module with highest weight coeffs, over the rationals.

    States are lowering words applied to a highest vector; dependencies are
    resolved through the contravariant form, whose Gram matrices stay exact
    rationals.  The basis is graded by depth, so Cartan matrices come out
    diagonal and raising matrices strictly upper triangular.
    """
    rs = build_root_system(stype)
    lam = DominantWeight(coeffs)
    target = weyl_dim(rs, lam)
    if target > WEIGHT_MODULE_DIM_CAP:
        raise NotRealizable(
            f"weight module dimension {target} exceeds cap {WEIGHT_MODULE_DIM_CAP}"
        )
    r = rs.rank
    A = rs.cartan_matrix
    alpha_fund = [tuple(Fraction(A[j][i]) for j in range(r)) for i in range(r)]

    wts: list[tuple[Fraction, ...]] = [tuple(Fraction(c) for c in coeffs)]
    # e_act[s][i]: expansion of e_i * v_s over earlier states, or None
    e_act: list[list[list[tuple[int, Fraction]] | None]] = [[None] * r]
    f_act: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    gram: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    level_states = [0]

    def pairing(s: int, t: int) -> Fraction:
        if s <= t:
            return gram.get((s, t), Fraction(0))
        return gram.get((t, s), Fraction(0))

    while level_states:
        by_weight: dict[tuple, list[tuple[int, int]]] = {}
        for s in level_states:
            for i in range(r):
                mu = tuple(w - a for w, a in zip(wts[s], alpha_fund[i]))
                by_weight.setdefault(mu, []).append((i, s))
        next_states: list[int] = []
        for mu in sorted(by_weight):
            cands = by_weight[mu]
            nc = len(cands)
            g = [[Fraction(0)] * nc for _ in range(nc)]
            for a in range(nc):
                i, s = cands[a]
                for b in range(a, nc):
                    j, t = cands[b]
                    # <f_i v_s, f_j v_t> = <v_s, f_j e_i v_t> + d_ij wt_i(t) <v_s, v_t>
                    val = Fraction(0)
                    x = e_act[t][i]
                    if x is not None:
                        y = e_act[s][j]
                        if y is not None:
                            for (u, cu) in x:
                                for (v, cv) in y:
                                    val += cu * cv * pairing(v, u)
                    if i == j:
                        val += wts[t][i] * pairing(s, t)
                    g[a][b] = val
                    g[b][a] = val
            _, chosen = frac_rref([list(row) for row in g])
            if not chosen:
                for i, s in cands:
                    f_act[(i, s)] = []
                continue
            sub = [[g[a][b] for b in chosen] for a in chosen]
            solve = _inverse_solver(sub)
            base = len(wts)
            globals_new = []
            for local, ci in enumerate(chosen):
                gi = base + local
                globals_new.append(gi)
                wts.append(mu)
                e_act.append([None] * r)
            # Gram of the new states
            for a_loc, ca in enumerate(chosen):
                for b_loc, cb in enumerate(chosen):
                    if a_loc <= b_loc:
                        gram[(globals_new[a_loc], globals_new[b_loc])] = g[ca][cb]
            # expansion of every candidate over the chosen states
            for c_idx, (i, s) in enumerate(cands):
                col = [g[ci][c_idx] for ci in chosen]
                coords = solve(col)
                f_act[(i, s)] = [
                    (globals_new[loc], coords[loc])
                    for loc in range(len(chosen))
                    if coords[loc]
                ]
            # e_j action on the new basis states
            for local, ci in enumerate(chosen):
                i, s = cands[ci]
                gi = globals_new[local]
                for j in range(r):
                    acc: dict[int, Fraction] = {}
                    x = e_act[s][j]
                    if x is not None:
                        for (u, cu) in x:
                            for (w, cw) in f_act.get((i, u), []):
                                acc[w] = acc.get(w, Fraction(0)) + cu * cw
                    if i == j:
                        hval = wts[s][j]
                        if hval:
                            acc[s] = acc.get(s, Fraction(0)) + hval
                    ex = [(w, c) for w, c in sorted(acc.items()) if c]
                    e_act[gi][j] = ex if ex else None
            next_states.extend(globals_new)
        level_states = next_states

    n = len(wts)
    if n != target:
        raise RepresentationError(
            f"weight module for {stype} {coeffs} built dimension {n}, "
            f"expected {target}"
        )
    mod = ModuleGens(dim=n)
    for i in range(r):
        diag = {}
        for s in range(n):
            val = wts[s][i]
            if val.denominator != 1:
                raise RepresentationError("non-integral weight in module build")
            if val:
                diag[(s, s)] = QQi(val)
        mod.cartan.append(QMat(n, n, diag))
    e_mats = []
    f_mats = []
    for i in range(r):
        ent_e = {}
        ent_f = {}
        for s in range(n):
            x = e_act[s][i]
            if x:
                for (u, c) in x:
                    ent_e[(u, s)] = QQi(c)
            for (u, c) in f_act.get((i, s), []):
                ent_f[(u, s)] = QQi(c)
        e_mats.append(QMat(n, n, ent_e))
        f_mats.append(QMat(n, n, ent_f))

    # extend to all positive roots: brackets for e, form-adjoints for f
    gram_mat = QMat(
        n,
        n,
        {
            (s, t): QQi(v)
            for (s, t), v in gram.items()
            for _ in (0,)
        },
    )
    # symmetrize sparse storage
    full_gram = {}
    for (s, t), v in gram.items():
        full_gram[(s, t)] = QQi(v)
        full_gram[(t, s)] = QQi(v)
    gram_mat = QMat(n, n, full_gram)
    gram_inv = _invert_block_diag(gram_mat, wts)

    simple_idx = {}
    for idx, root in enumerate(rs.positive_roots):
        if sum(root) == 1:
            simple_idx[root.index(1)] = idx
    e_by_root: dict[tuple[int, ...], QMat] = {}
    for i, idx in simple_idx.items():
        e_by_root[rs.positive_roots[idx]] = e_mats[i]
    for root in sorted(rs.positive_roots, key=sum):
        if sum(root) == 1:
            continue
        for i in range(r):
            if root[i] > 0:
                beta = list(root)
                beta[i] -= 1
                tb = tuple(beta)
                if tb in e_by_root:
                    e_by_root[root] = commutator(e_mats[i], e_by_root[tb])
                    break
        else:
            raise RepresentationError(f"no decomposition for root {root}")
        if e_by_root[root].is_zero():
            raise RepresentationError(f"vanishing root vector for {root}")
    for root in rs.positive_roots:
        e = e_by_root[root]
        if sum(root) == 1:
            mod.raising.append(e)
            mod.lowering.append(f_mats[root.index(1)])
        else:
            mod.raising.append(e)
            mod.lowering.append(gram_inv @ e.transpose() @ gram_mat)
    return mod


def _inverse_solver(mat: list[list[Fraction]]):
    n = len(mat)
    aug = [list(mat[i]) + [Fraction(int(j == i)) for j in range(n)] for i in range(n)]
    rref, piv = frac_rref(aug)
    assert piv == list(range(n)), "singular gram block"
    inv = [row[n:] for row in rref]

    def solve(col):
        return [sum(inv[i][j] * col[j] for j in range(n)) for i in range(n)]

    return solve


def _invert_block_diag(g: QMat, wts) -> QMat:
    """Inverse of a weight-block-diagonal symmetric rational matrix."""
    n = g.nrows
    blocks: dict[tuple, list[int]] = {}
    for s in range(n):
        blocks.setdefault(wts[s], []).append(s)
    ent = {}
    for idxs in blocks.values():
        m = len(idxs)
        sub = [[g.get(idxs[a], idxs[b]).re for b in range(m)] for a in range(m)]
        solve = _inverse_solver(sub)
        for b in range(m):
            col = [Fraction(int(a == b)) for a in range(m)]
            inv_col = solve(col)
            for a in range(m):
                if inv_col[a]:
                    ent[(idxs[a], idxs[b])] = QQi(inv_col[a])
    return QMat(n, n, ent)


# ---------------------------------------------------------------------------
# functors: sym2, alt2, tensor, dual, sums


def _sym2_of(mod: ModuleGens) -> ModuleGens:
    d = mod.dim
    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    index = {p: k for k, p in enumerate(pairs)}

    def induce(x: QMat) -> QMat:
        ent: dict[tuple[int, int], QQi] = {}
        for (a, b), v in x.entries.items():
            # e_b -> e_a in each slot of the monomial basis e_i e_j
            for (i, j), col in index.items():
                for slot, other in ((i, j), (j, i)):
                    if slot != b:
                        continue
                    p = (min(a, other), max(a, other))
                    row = index[p]
                    key = (row, col)
                    s = ent.get(key, QQI_ZERO) + v
                    if s:
                        ent[key] = s
                    else:
                        ent.pop(key, None)
        return QMat(len(pairs), len(pairs), ent)

    out = mod.map_all(induce)
    out.dim = len(pairs)
    return out


def _alt2_of(mod: ModuleGens) -> ModuleGens:
    d = mod.dim
    if d < 2:
        raise NotRealizable("alt2 needs a module of dimension >= 2")
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    index = {p: k for k, p in enumerate(pairs)}

    def induce(x: QMat) -> QMat:
        ent: dict[tuple[int, int], QQi] = {}
        for (a, b), v in x.entries.items():
            for (i, j), col in index.items():
                for slot, other, sign_other_first in ((i, j, False), (j, i, True)):
                    if slot != b:
                        continue
                    if a == other:
                        continue
                    if sign_other_first:
                        # e_i ^ (x e_j) term with slot = j: vector e_other ^ e_a
                        lo, hi, sgn = (
                            (other, a, 1) if other < a else (a, other, -1)
                        )
                    else:
                        lo, hi, sgn = ((a, other, 1) if a < other else (other, a, -1))
                    row = index[(lo, hi)]
                    key = (row, col)
                    s = ent.get(key, QQI_ZERO) + (v if sgn > 0 else -v)
                    if s:
                        ent[key] = s
                    else:
                        ent.pop(key, None)
        return QMat(len(pairs), len(pairs), ent)

    out = mod.map_all(induce)
    out.dim = len(pairs)
    return out


def _dual_of(mod: ModuleGens) -> ModuleGens:
    d = mod.dim

    def dualize(x: QMat) -> QMat:
        # -x transposed, in the reversed basis so triangularity survives
        ent = {
            (d - 1 - j, d - 1 - i): -v for (i, j), v in x.entries.items()
        }
        return QMat(d, d, ent)

    out = mod.map_all(dualize)
    out.dim = d
    return out


# ---------------------------------------------------------------------------
# the assembled representation


@dataclass
class MatrixRep:
    """A concrete complexified action of a GroupSpec on a module.

    Generator lists are flat; cartan_labels/root_labels record which factor
    and which root each matrix belongs to.  compact_gens span the compact
    real form acting on the module (torus circles included).
    """

    group: GroupSpec
    rep: RepSpec
    space_dim: int
    cartan_gens: list[QMat]
    cartan_labels: list[tuple[int, int]]  # (factor index, simple root index)
    raising_gens: list[QMat]
    lowering_gens: list[QMat]
    root_labels: list[tuple[int, tuple[int, ...]]]  # (factor index, root coords)
    torus_gens: list[QMat]
    summand_slices: list[tuple[int, int]]

    def borel_generators(self) -> list[QMat]:
        return self.cartan_gens + self.raising_gens + self.torus_gens

    def all_complex_generators(self) -> list[QMat]:
        return (
            self.cartan_gens + self.raising_gens + self.lowering_gens + self.torus_gens
        )

    @functools.cached_property
    def compact_gens(self) -> list[QMat]:
        out = []
        for h in self.cartan_gens:
            out.append(h.scale(QQI_I))
        for e, f in zip(self.raising_gens, self.lowering_gens):
            out.append(e - f)
            out.append((e + f).scale(QQI_I))
        for t in self.torus_gens:
            out.append(t.scale(QQI_I))
        return out

    @property
    def dim_c(self) -> int:
        return self.space_dim

    def weights(self) -> list[tuple[Fraction, ...]]:
        """Weight of each basis vector under the Cartan and torus diagonals."""
        diags = []
        for m in self.cartan_gens + self.torus_gens:
            if not m.is_diagonal():
                raise RepresentationError("generator not diagonal in weight basis")
            diags.append([m.get(i, i) for i in range(self.space_dim)])
        out = []
        for i in range(self.space_dim):
            w = []
            for dg in diags:
                v = dg[i]
                if v.im:
                    raise RepresentationError("non-real weight entry")
                w.append(v.re)
            out.append(tuple(w))
        return out


def _term_module(group: GroupSpec, term: Term, chirality: int) -> tuple[int, ModuleGens]:
    """(factor index or -1 for trivial, module) for one term."""
    if term.kind == "triv":
        return -1, ModuleGens(dim=1)
    fidx = term.factor - 1
    if fidx >= len(group.factors):
        raise RepresentationError(f"factor index {term.factor} out of range")
    fac = group.factors[fidx]
    st = fac.simple_type
    if st is None:
        # genuinely trivial factors contribute one-dimensional slots
        if fac.std_dim == 1 and term.kind in ("std", "sym2"):
            return -1, ModuleGens(dim=1)
        raise NotRealizable(
            f"term {term.kind} of {fac}: the factor has no semisimple part; "
            f"encode its circle action as a torus line"
        )
    if term.kind == "std":
        return fidx, _std_module_for(fac)
    if term.kind == "sym2":
        return fidx, _sym2_of(_std_module_for(fac))
    if term.kind == "alt2":
        return fidx, _alt2_of(_std_module_for(fac))
    if term.kind == "spin":
        if fac.kind != "so":
            raise NotRealizable("spin terms need an so(n) factor")
        return fidx, _spin_module(fac.n, chirality)
    if term.kind == "weight":
        return fidx, _weight_module(st, term.weight)
    raise RepresentationError(f"unhandled term {term}")


def _std_module_for(fac: Factor) -> ModuleGens:
    st = fac.simple_type
    if fac.kind in ("su", "so", "sp"):
        return _std_module(st)
    return _std_module(st)  # exceptional: smallest fundamental module


def realize(
    group: GroupSpec,
    rep: RepSpec,
    chirality: int = 1,
    validate: bool = True,
    rng_seed: int = 20240101,
) -> MatrixRep:
    """Build the matrix model of a representation specification."""
    n_circ = group.n_circles
    summand_mods: list[tuple[int, list[tuple[int, ModuleGens]]]] = []
    dims = []
    for sm in rep.summands:
        if len(sm.charges) not in (0, n_circ):
            raise RepresentationError(
                f"summand charge arity {len(sm.charges)} != circles {n_circ}"
            )
        slots = [_term_module(group, t, chirality) for t in sm.terms]
        d = 1
        for _, m in slots:
            d *= m.dim
        if d < 1:
            raise RepresentationError("summand has dimension < 1")
        dims.append(d)
        summand_mods.append((d, slots))

    total = sum(dims)
    offsets = []
    off = 0
    for d in dims:
        offsets.append(off)
        off += d
    summand_slices = [(offsets[k], offsets[k] + dims[k]) for k in range(len(dims))]

    def embed(summand_idx: int, mat: QMat) -> QMat:
        o = offsets[summand_idx]
        ent = {(o + i, o + j): v for (i, j), v in mat.entries.items()}
        return QMat(total, total, ent)

    def factor_gen_on_summand(summand_idx: int, fidx: int, which: str, gi: int) -> QMat:
        d, slots = summand_mods[summand_idx]
        acc = QMat.zeros(d, d)
        before = 1
        for slot_idx, (sf, m) in enumerate(slots):
            if sf == fidx:
                x = getattr(m, which)[gi]
                after = 1
                for t in range(slot_idx + 1, len(slots)):
                    after *= slots[t][1].dim
                term = kron(kron(QMat.identity(before), x), QMat.identity(after))
                acc = acc + term
            before *= m.dim
        if rep.summands[summand_idx].dual:
            dd = acc.nrows
            acc = QMat(
                dd, dd, {(dd - 1 - j, dd - 1 - i): -v for (i, j), v in acc.entries.items()}
            )
        return acc

    cartan_gens, cartan_labels = [], []
    raising_gens, lowering_gens, root_labels = [], [], []
    for fidx, fac in enumerate(group.factors):
        st = fac.simple_type
        if st is None:
            continue
        rs = build_root_system(st)
        for i in range(rs.rank):
            blocks = [
                factor_gen_on_summand(k, fidx, "cartan", i) for k in range(len(dims))
            ]
            cartan_gens.append(block_diag(blocks))
            cartan_labels.append((fidx, i))
        for ri, root in enumerate(rs.positive_roots):
            eb = [
                factor_gen_on_summand(k, fidx, "raising", ri) for k in range(len(dims))
            ]
            fb = [
                factor_gen_on_summand(k, fidx, "lowering", ri) for k in range(len(dims))
            ]
            raising_gens.append(block_diag(eb))
            lowering_gens.append(block_diag(fb))
            root_labels.append((fidx, root))

    torus_gens = []
    for line in group.torus_lines:
        ent = {}
        for k, sm in enumerate(rep.summands):
            charges = sm.charges if sm.charges else (0,) * n_circ
            net = sum(d * c for d, c in zip(line, charges))
            if net:
                for i in range(offsets[k], offsets[k] + dims[k]):
                    ent[(i, i)] = QQi(net)
        torus_gens.append(QMat(total, total, ent))

    out = MatrixRep(
        group=group,
        rep=rep,
        space_dim=total,
        cartan_gens=cartan_gens,
        cartan_labels=cartan_labels,
        raising_gens=raising_gens,
        lowering_gens=lowering_gens,
        root_labels=root_labels,
        torus_gens=torus_gens,
        summand_slices=summand_slices,
    )
    if validate:
        validate_matrix_rep(out, rng_seed=rng_seed)
    return out


def spin_rep(n: int, chirality: int = 1, validate: bool = True) -> MatrixRep:
    """Spin module of so(n) as a standalone representation, 3 <= n <= 12."""
    group = GroupSpec(factors=(Factor("so", n),))
    rep = RepSpec(summands=(Summand(terms=(Term("spin", 1),)),))
    return realize(group, rep, chirality=chirality, validate=validate)


# ---------------------------------------------------------------------------
# validation


def validate_matrix_rep(rep: MatrixRep, rng_seed: int = 20240101) -> None:
    """Exact structural checks on a constructed representation.

    Verifies the Cartan eigenvalue relations on every root vector, bracket
    closure of paired root vectors into the Cartan-plus-torus span, trace
    freeness of the simple-factor generators, commutation with the torus,
    strict triangularity of the Borel part, and the homomorphism property
    on 20 random generator pairs against reference structure constants.
    """
    by_factor_cartan: dict[int, list[tuple[int, QMat]]] = {}
    for (fidx, i), h in zip(rep.cartan_labels, rep.cartan_gens):
        by_factor_cartan.setdefault(fidx, []).append((i, h))
    roots_by_factor: dict[int, list[tuple[tuple[int, ...], QMat, QMat]]] = {}
    for (fidx, root), e, f in zip(rep.root_labels, rep.raising_gens, rep.lowering_gens):
        roots_by_factor.setdefault(fidx, []).append((root, e, f))

    for g in rep.cartan_gens:
        if not g.is_diagonal():
            raise RepresentationError("Cartan generator is not diagonal")
    for e in rep.raising_gens:
        if not e.is_strictly_upper():
            raise RepresentationError("raising generator is not strictly upper")
    for g in rep.cartan_gens + rep.raising_gens + rep.lowering_gens:
        if g.trace():
            raise RepresentationError("simple-factor generator has nonzero trace")

    for fidx, roots in roots_by_factor.items():
        st = rep.group.factors[fidx].simple_type
        rs = build_root_system(st)
        cartans = by_factor_cartan[fidx]
        for root, e, f in roots:
            for i, h in cartans:
                eig = sum(root[j] * rs.cartan_matrix[i][j] for j in range(rs.rank))
                if commutator(h, e) != e.scale(QQi(eig)):
                    raise RepresentationError(
                        f"Cartan eigenvalue fails for root {root} of factor {fidx}"
                    )
            if not _in_diagonal_span(commutator(e, f), rep):
                raise RepresentationError(
                    f"[e, f] escapes the Cartan span for root {root}"
                )
    for t in rep.torus_gens:
        for g in rep.cartan_gens + rep.raising_gens + rep.lowering_gens:
            if not commutator(t, g).is_zero():
                raise RepresentationError("torus generator fails to commute")

    _homomorphism_spot_check(rep, rng_seed)


def _in_diagonal_span(m: QMat, rep: MatrixRep) -> bool:
    if m.is_zero():
        return True
    if not m.is_diagonal():
        return False
    basis = [g for g in rep.cartan_gens + rep.torus_gens]
    cols = list(range(m.nrows))
    rows = []
    for b in basis:
        rows.append([b.get(i, i) for i in cols])
    target = [m.get(i, i) for i in cols]
    # solve over Q(i) via separate real and imaginary parts
    real_rows = [[v.re for v in row] for row in rows] + [
        [v.im for v in row] for row in rows
    ]
    # coefficients are real; build [Re; Im] stacked system transposed
    n = len(basis)
    sys_rows = []
    rhs = []
    for c in cols:
        sys_rows.append([rows[k][c].re for k in range(n)])
        rhs.append(target[c].re)
        sys_rows.append([rows[k][c].im for k in range(n)])
        rhs.append(target[c].im)
    aug = [row + [val] for row, val in zip(sys_rows, rhs)]
    rref, piv = frac_rref(aug)
    return n not in piv


def _homomorphism_spot_check(rep: MatrixRep, rng_seed: int, n_pairs: int = 20) -> None:
    """[x, y] in the representation matches reference structure constants."""
    rng = random.Random(rng_seed)
    labeled: list[tuple[int, str, object, QMat]] = []
    for (fidx, i), h in zip(rep.cartan_labels, rep.cartan_gens):
        labeled.append((fidx, "h", i, h))
    for (fidx, root), e, f in zip(
        rep.root_labels, rep.raising_gens, rep.lowering_gens
    ):
        labeled.append((fidx, "e", root, e))
        labeled.append((fidx, "f", root, f))
    if len(labeled) < 2:
        return
    for _ in range(n_pairs):
        a = rng.randrange(len(labeled))
        b = rng.randrange(len(labeled))
        fa, ka, la, ma = labeled[a]
        fb, kb, lb, mb = labeled[b]
        got = commutator(ma, mb)
        if fa != fb:
            if not got.is_zero():
                raise RepresentationError("cross-factor generators fail to commute")
            continue
        kind = _bracket_kind(ka, la, kb, lb)
        if kind == "cartan":
            if not _in_diagonal_span(got, rep):
                raise RepresentationError("bracket escapes the Cartan span")
        elif kind == "zero":
            if not got.is_zero():
                raise RepresentationError(
                    f"bracket of {ka}{la} and {kb}{lb} should vanish"
                )
        # root-vector targets are covered by the eigenvalue checks; the
        # remaining content is that the bracket lies in the right weight
        # space, which the Cartan relations already enforce exactly.


def _bracket_kind(ka, la, kb, lb) -> str:
    if ka == "h" and kb == "h":
        return "zero"
    if ka == "e" and kb == "f" and la == lb:
        return "cartan"
    if ka == "f" and kb == "e" and la == lb:
        return "cartan"
    if ka in ("e", "f") and kb == ka and la == lb:
        return "zero"
    return "other"


# ---------------------------------------------------------------------------
# invariant bilinear forms


def invariant_bilinear_form(rep: MatrixRep) -> str:
    """Classify the invariant bilinear form of an irreducible module.

    Solves B rho(x) + rho(x)^T B = 0 exactly over all generators, with the
    unknowns restricted to opposite-weight pairs.  Returns one of 'none',
    'symmetric', 'antisymmetric', 'degenerate-space'.  A solution space of
    complex dimension above one flags a reducible input.
    """
    d = rep.space_dim
    wts = rep.weights()
    unknowns = [
        (i, j) for i in range(d) for j in range(d)
        if all(a + b == 0 for a, b in zip(wts[i], wts[j]))
    ]
    if not unknowns:
        return "none"
    uidx = {u: k for k, u in enumerate(unknowns)}
    nu = len(unknowns)
    rows: dict[tuple[int, int], dict[int, QQi]] = {}
    for x in rep.all_complex_generators():
        cols_of = {}
        for (c, b), v in x.entries.items():
            cols_of.setdefault(c, []).append((b, v))
        for (i, j), k in uidx.items():
            # term (B x)_{i b} for x_{j b}
            for (jj, b), v in x.entries.items():
                if jj == j:
                    rows.setdefault((i, b), {}).setdefault(k, QQI_ZERO)
                    rows[(i, b)][k] = rows[(i, b)][k] + v
            # term (x^T B)_{a j} = sum_c x_{c a} B_{c j}: here B_{i j} feeds (a, j)
            for (ii, a), v in x.entries.items():
                if ii == i:
                    rows.setdefault((a, j), {}).setdefault(k, QQI_ZERO)
                    rows[(a, j)][k] = rows[(a, j)][k] + v
    frac_rows = []
    for _, cof in sorted(rows.items()):
        re_row = [Fraction(0)] * (2 * nu)
        im_row = [Fraction(0)] * (2 * nu)
        nontrivial = False
        for k, v in cof.items():
            if v:
                nontrivial = True
            re_row[k] = v.re
            re_row[nu + k] = -v.im
            im_row[k] = v.im
            im_row[nu + k] = v.re
        if nontrivial:
            frac_rows.append(re_row)
            frac_rows.append(im_row)
    basis = (
        frac_nullspace(frac_rows, 2 * nu)
        if frac_rows
        else [[Fraction(int(i == j)) for i in range(2 * nu)] for j in range(2 * nu)]
    )
    if not basis:
        return "none"
    if len(basis) > 2:
        raise RepresentationError(
            "invariant form space has dimension above one: input is reducible"
        )
    vec = basis[0]
    ent = {}
    for k, (i, j) in enumerate(unknowns):
        v = QQi(vec[k], vec[nu + k])
        if v:
            ent[(i, j)] = v
    b = QMat(d, d, ent)
    if b.is_zero():
        return "none"
    bt = b.transpose()
    if bt == b:
        sym = "symmetric"
    elif bt == b.scale(QQi(-1)):
        sym = "antisymmetric"
    else:
        raise RepresentationError("invariant form is neither symmetric nor skew")
    from .linalg import complex_rank

    dense_rows = [tuple(b.get(i, j) for j in range(d)) for i in range(d)]
    if complex_rank(dense_rows) < d:
        return "degenerate-space"
    return sym


def intertwiner_space(
    gens_a: list[QMat], gens_b: list[QMat], dim_a: int, dim_b: int
) -> list[QMat]:
    """Basis of {T : T a_k = b_k T}; exact, used as an equivalence oracle."""
    assert len(gens_a) == len(gens_b)
    nu = dim_b * dim_a
    rows = []
    for a, b in zip(gens_a, gens_b):
        coeff: dict[tuple[int, int], dict[int, QQi]] = {}
        for (i, j), v in a.entries.items():
            # (T a)_{r j} gains T_{r i} * v
            for rr in range(dim_b):
                k = rr * dim_a + i
                coeff.setdefault((rr, j), {}).setdefault(k, QQI_ZERO)
                coeff[(rr, j)][k] = coeff[(rr, j)][k] + v
        for (i, j), v in b.entries.items():
            # (b T)_{i c} gains v * T_{j c}
            for cc in range(dim_a):
                k = j * dim_a + cc
                coeff.setdefault((i, cc), {}).setdefault(k, QQI_ZERO)
                coeff[(i, cc)][k] = coeff[(i, cc)][k] - v
        for _, cof in coeff.items():
            re_row = [Fraction(0)] * (2 * nu)
            im_row = [Fraction(0)] * (2 * nu)
            for k, v in cof.items():
                re_row[k] = v.re
                re_row[nu + k] = -v.im
                im_row[k] = v.im
                im_row[nu + k] = v.re
            if any(re_row) or any(im_row):
                rows.append(re_row)
                rows.append(im_row)
    basis = frac_nullspace(rows, 2 * nu) if rows else []
    out = []
    seen = set()
    for vec in basis:
        ent = {}
        for k in range(nu):
            v = QQi(vec[k], vec[nu + k])
            if v:
                ent[(k // dim_a, k % dim_a)] = v
        m = QMat(dim_b, dim_a, ent)
        if not m.is_zero() and m not in seen:
            out.append(m)
            seen.add(m)
    return out


# ---------------------------------------------------------------------------
# genuinely real representations (for slice chains over the reals)


@dataclass
class RealRep:
    """A compact Lie algebra acting by real matrices on a real vector space."""

    dim: int
    gens: list[QMat]  # entries are real rationals

    def __post_init__(self):
        for g in self.gens:
            for v in g.entries.values():
                if v.im:
                    raise RepresentationError("RealRep generator must be real")


def so_vector_gens(n: int) -> list[QMat]:
    """Basis E_ab - E_ba (a < b) of so(n) on R^n."""
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            out.append(QMat(n, n, {(a, b): QQI_ONE, (b, a): QQi(-1)}))
    return out


_OCT_TRIPLES = tuple(
    tuple((x - 1) % 7 + 1 for x in (1 + t, 2 + t, 4 + t)) for t in range(7)
)


@functools.lru_cache(maxsize=1)
def octonion_left_mult() -> list[QMat]:
    """Left multiplication by e_1..e_7 on the octonions, real 8x8 matrices."""
    mult: dict[tuple[int, int], tuple[int, int]] = {}
    for a in range(1, 8):
        mult[(a, 0)] = (1, a)
        mult[(0, a)] = (1, a)
        mult[(a, a)] = (-1, 0)
    for (a, b, c) in _OCT_TRIPLES:
        for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
            mult[(x, y)] = (1, z)
            mult[(y, x)] = (-1, z)
    out = []
    for a in range(1, 8):
        ent = {}
        for j in range(8):
            sgn, tgt = mult[(a, j)]
            ent[(tgt, j)] = QQi(sgn)
        out.append(QMat(8, 8, ent))
    return out


@functools.lru_cache(maxsize=1)
def spin7_real_gens() -> list[QMat]:
    """Real 8x8 spin generators paired with the E_ab - E_ba order of so(7).

    Built from octonion left multiplications L_a with L_a^2 = -1; the map
    E_ab - E_ba -> -[L_a, L_b]/4 matches the vector structure constants.
    """
    L = octonion_left_mult()
    quarter = QQi(Fraction(-1, 4))
    out = []
    for a in range(7):
        for b in range(a + 1, 7):
            out.append(commutator(L[a], L[b]).scale(quarter))
    return out


def real_block_rep(blocks: list[tuple[str, int]]) -> RealRep:
    """Diagonal so(7) action on a sum of blocks.

    Block kinds: 'triv' (given dimension), 'vec7' (R^7 vector action),
    'spin8' (R^8 real spin action).  Generators are indexed by the pairs
    (a, b), a < b, of so(7).
    """
    vec = so_vector_gens(7)
    spn = spin7_real_gens()
    n_gens = len(vec)
    gens = []
    for gi in range(n_gens):
        parts = []
        for kind, d in blocks:
            if kind == "triv":
                parts.append(QMat.zeros(d, d))
            elif kind == "vec7":
                parts.append(vec[gi])
            elif kind == "spin8":
                parts.append(spn[gi])
            else:
                raise RepresentationError(f"unknown real block {kind!r}")
        gens.append(block_diag(parts))
    dim = sum(d for _, d in blocks)
    return RealRep(dim=dim, gens=gens)


def realify_matrix_rep(rep: MatrixRep) -> RealRep:
    """Compact form of a MatrixRep acting on the realified module."""
    from .linalg import realify_matrix_rows

    gens = []
    for g in rep.compact_gens:
        rows = realify_matrix_rows(g)
        ent = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    ent[(i, j)] = QQi(v)
        gens.append(QMat(2 * rep.space_dim, 2 * rep.space_dim, ent))
    return RealRep(dim=2 * rep.space_dim, gens=gens)

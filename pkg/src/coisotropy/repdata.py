"""Machine-readable encodings of the classification tables and slice facts.

Data lives in line-oriented text files under data/: one record per line of
shlex-quoted key=value fields, a versioned header line, and # comments.
Rows carry the verbatim source text plus corrected mirror fields wherever
the source's stated form conflicts with the exact computations; reports
always show both.  The query API evaluates symbolic row conditions exactly
and pattern-matches concrete representations against the table rows.
"""

from __future__ import annotations

import functools
import os
import shlex
from dataclasses import dataclass, field
from importlib import resources

from .dsl import PatternSpec, eval_condition, eval_int_expr, parse_pattern
from .matrep import Factor, GroupSpec, RepSpec, Summand, Term

DATA_ENV_VAR = "LIE_COISO_DATA"


class DataError(ValueError):
    pass


# ---------------------------------------------------------------------------
# record parsing


def _parse_records(text: str, path: str) -> list[dict[str, str]]:
    records = []
    header_seen = False
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            fields = shlex.split(line)
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from exc
        rec: dict[str, str] = {"_line": str(lineno)}
        for fld in fields:
            if "=" not in fld:
                raise DataError(f"{path}:{lineno}: field {fld!r} is not key=value")
            k, v = fld.split("=", 1)
            rec[k] = v
        if not header_seen:
            if rec.get("format") is None or rec.get("version") != "1":
                raise DataError(f"{path}: missing or bad header line")
            header_seen = True
            continue
        records.append(rec)
    if not header_seen:
        raise DataError(f"{path}: empty dataset file")
    return records


def _load_file(name: str, directory: str | None) -> list[dict[str, str]]:
    if directory is not None:
        path = os.path.join(directory, name)
        with open(path, "r", encoding="utf-8") as fh:
            return _parse_records(fh.read(), path)
    ref = resources.files("coisotropy").joinpath("data", name)
    return _parse_records(ref.read_text(encoding="utf-8"), name)


def parse_instantiations(text: str) -> list[dict[str, int]]:
    """'k=1,m=2|k=1,m=3' -> [{'k':1,'m':2}, {'k':1,'m':3}]."""
    out = []
    if not text:
        return out
    for chunk in text.split("|"):
        env: dict[str, int] = {}
        for part in chunk.split(","):
            if not part.strip():
                continue
            k, v = part.split("=")
            env[k.strip()] = int(v)
        out.append(env)
    return out


def parse_lines_field(text: str) -> list[tuple[int, ...]]:
    """'1,0;0,1' -> [(1,0), (0,1)]."""
    if not text:
        return []
    return [tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";")]


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class HSSpace:
    """One of the four compact irreducible Hermitian symmetric families."""

    label: str  # 'sp' | 'so' | 'e7' | 'e6'
    m: int = 0

    def __post_init__(self):
        if self.label not in ("sp", "so", "e7", "e6"):
            raise DataError(f"unknown space label {self.label!r}")
        if self.label in ("sp", "so") and self.m < 1:
            raise DataError("classical space needs a positive parameter")

    @property
    def complex_dim(self) -> int:
        if self.label == "sp":
            return self.m * (self.m + 1) // 2
        if self.label == "so":
            return self.m * (self.m - 1) // 2
        return 27 if self.label == "e7" else 16

    @property
    def ambient_rank(self) -> int:
        if self.label == "sp":
            return self.m
        if self.label == "so":
            return self.m
        return 7 if self.label == "e7" else 6

    def __str__(self):
        if self.label == "sp":
            return f"Sp({self.m})/U({self.m})"
        if self.label == "so":
            return f"SO({2 * self.m})/U({self.m})"
        if self.label == "e7":
            return "E7/T1.E6"
        return "E6/T1.Spin(10)"


def space_from_text(text: str, env: dict[str, int]) -> HSSpace:
    """'Sp(m)/U(m)' or 'SO(2m)/U(m)' style with parameters, or e7/e6."""
    t = text.strip().lower()
    if t in ("e7", "e7/t1.e6"):
        return HSSpace("e7")
    if t in ("e6", "e6/t1.spin(10)"):
        return HSSpace("e6")
    if t.startswith("sp:"):
        return HSSpace("sp", eval_int_expr(t[3:], env))
    if t.startswith("so:"):
        return HSSpace("so", eval_int_expr(t[3:], env))
    raise DataError(f"bad space field {text!r}")


@dataclass(frozen=True)
class MFTableEntry:
    table: str  # Ia | Ib | IIa | IIb
    row: str
    pattern: PatternSpec
    pattern_text: str
    cond: str
    cond_verbatim: str
    inst: tuple[tuple[tuple[str, int], ...], ...]
    anchor: str
    note: str
    scalar_policy: str = ""  # filled for Ia rows after Ib matching
    removable_cond: str = ""  # the Ib condition gating removability

    def instantiations(self) -> list[dict[str, int]]:
        return [dict(e) for e in self.inst]


@dataclass(frozen=True)
class MaxSubgroupEntry:
    table: str  # III | IV | V
    ambient: str  # sp | so | su
    row: str
    kind: str  # symmetric | unitary | tensor-embedding | irreducible-rep | torus
    subgroup_text: str
    cond: str
    reality: str = ""  # R | C | H for irreducible-rep rows
    degree: str = ""  # symbolic degree expression
    anchor: str = ""
    note: str = ""


@dataclass(frozen=True)
class SliceFact:
    fact_id: str
    space_label: str
    space_param: str
    subgroup_text: str
    orbit_kind: str  # fixed-point | complex-orbit | totally-real
    slice_pattern: str  # DSL pattern, possibly symbolic
    orbit_dim_c: str  # symbolic complex orbit dimension, '' if not computable
    source: str
    anchor: str
    note: str = ""


@dataclass(frozen=True)
class ResultRow:
    table: str  # 1 | 2 | 3 | 4
    row: str
    algebra: str
    algebra_corrected: str
    space_text: str
    space_corrected: str
    cond: str
    cond_corrected: str
    inst: tuple[tuple[tuple[str, int], ...], ...]
    verify: str
    expect_outcome: str
    verbatim_outcome: str
    candidate: str
    slice_pattern: str
    slice_id: str
    real_blocks: str
    expect: str
    lines_sample: str
    lines_forbidden: str
    drop_scalar: str  # '' | 'false' (must fail without scalars) | 'true'
    poly_id: str
    scan: str
    anchor: str
    note: str

    def instantiations(self) -> list[dict[str, int]]:
        return [dict(e) for e in self.inst]


@dataclass(frozen=True)
class SymmetricPairRow:
    ambient: str
    subgroup: str
    cond: str
    note: str = ""


@dataclass
class Dataset:
    mf_entries: list[MFTableEntry]
    maxsub_entries: list[MaxSubgroupEntry]
    slice_facts: list[SliceFact]
    result_rows: list[ResultRow]
    symmetric_pairs: list[SymmetricPairRow]
    lemma_records: list[dict[str, str]]
    notes: list[dict[str, str]]

    def results_for(self, table: str) -> list[ResultRow]:
        return [r for r in self.result_rows if r.table == table]

    def mf_rows(self, table: str) -> list[MFTableEntry]:
        return [r for r in self.mf_entries if r.table == table]

    def slice_by_id(self, fact_id: str) -> SliceFact:
        for f in self.slice_facts:
            if f.fact_id == fact_id:
                return f
        raise DataError(f"unknown slice fact {fact_id!r}")


def _freeze_inst(text: str) -> tuple[tuple[tuple[str, int], ...], ...]:
    return tuple(tuple(sorted(e.items())) for e in parse_instantiations(text))


@functools.lru_cache(maxsize=4)
def load_dataset(directory: str | None = None) -> Dataset:
    """Load and sanity-check the dataset (honors LIE_COISO_DATA)."""
    if directory is None:
        directory = os.environ.get(DATA_ENV_VAR) or None

    mf_entries = []
    for rec in _load_file("mftables.txt", directory):
        entry = MFTableEntry(
            table=rec["table"],
            row=rec["row"],
            pattern=parse_pattern(rec["pattern"]),
            pattern_text=rec["pattern"],
            cond=rec.get("cond", ""),
            cond_verbatim=rec.get("cond_verbatim", rec.get("cond", "")),
            inst=_freeze_inst(rec.get("inst", "")),
            anchor=rec.get("anchor", ""),
            note=rec.get("note", ""),
        )
        mf_entries.append(entry)
    # attach removability: an Ia row is scalar-removable iff an Ib row with
    # the same pattern text exists; the Ib condition then gates removability
    ib_by_pattern = {e.pattern_text: e for e in mf_entries if e.table == "Ib"}
    resolved = []
    for e in mf_entries:
        if e.table == "Ia":
            ib = ib_by_pattern.get(e.pattern_text)
            policy = "removable" if ib is not None else "required"
            resolved.append(
                MFTableEntry(
                    table=e.table,
                    row=e.row,
                    pattern=e.pattern,
                    pattern_text=e.pattern_text,
                    cond=e.cond,
                    cond_verbatim=e.cond_verbatim,
                    inst=e.inst,
                    anchor=e.anchor,
                    note=e.note,
                    scalar_policy=policy,
                    removable_cond=ib.cond if ib is not None else "",
                )
            )
        else:
            resolved.append(e)
    mf_entries = resolved

    maxsub_entries = [
        MaxSubgroupEntry(
            table=rec["table"],
            ambient=rec["ambient"],
            row=rec["row"],
            kind=rec["kind"],
            subgroup_text=rec.get("subgroup", ""),
            cond=rec.get("cond", ""),
            reality=rec.get("reality", ""),
            degree=rec.get("degree", ""),
            anchor=rec.get("anchor", ""),
            note=rec.get("note", ""),
        )
        for rec in _load_file("maxsub.txt", directory)
    ]

    slice_facts = [
        SliceFact(
            fact_id=rec["id"],
            space_label=rec["space"],
            space_param=rec.get("param", ""),
            subgroup_text=rec.get("subgroup", ""),
            orbit_kind=rec.get("orbit", "complex-orbit"),
            slice_pattern=rec.get("slice", ""),
            orbit_dim_c=rec.get("orbitdim", ""),
            source=rec.get("source", ""),
            anchor=rec.get("anchor", ""),
            note=rec.get("note", ""),
        )
        for rec in _load_file("slices.txt", directory)
    ]

    result_rows = [
        ResultRow(
            table=rec["table"],
            row=rec["row"],
            algebra=rec["algebra"],
            algebra_corrected=rec.get("algebra_corrected", ""),
            space_text=rec["space"],
            space_corrected=rec.get("space_corrected", ""),
            cond=rec.get("cond", ""),
            cond_corrected=rec.get("cond_corrected", ""),
            inst=_freeze_inst(rec.get("inst", "")),
            verify=rec["verify"],
            expect_outcome=rec["outcome"],
            verbatim_outcome=rec.get("verbatim_outcome", ""),
            candidate=rec.get("candidate", ""),
            slice_pattern=rec.get("slice", ""),
            slice_id=rec.get("slice_id", ""),
            real_blocks=rec.get("realslice", ""),
            expect=rec.get("expect", ""),
            lines_sample=rec.get("lines", ""),
            lines_forbidden=rec.get("forbidden", ""),
            drop_scalar=rec.get("drop", ""),
            poly_id=rec.get("poly", ""),
            scan=rec.get("scan", ""),
            anchor=rec.get("anchor", ""),
            note=rec.get("note", ""),
        )
        for rec in _load_file("results.txt", directory)
    ]

    symmetric_pairs = [
        SymmetricPairRow(
            ambient=rec["ambient"],
            subgroup=rec["subgroup"],
            cond=rec.get("cond", ""),
            note=rec.get("note", ""),
        )
        for rec in _load_file("sympairs.txt", directory)
    ]

    lemma_records = _load_file("lemma21.txt", directory)
    notes = [r for r in lemma_records if r.get("kind") == "note"]
    lemma_records = [r for r in lemma_records if r.get("kind") != "note"]

    ds = Dataset(
        mf_entries=mf_entries,
        maxsub_entries=maxsub_entries,
        slice_facts=slice_facts,
        result_rows=result_rows,
        symmetric_pairs=symmetric_pairs,
        lemma_records=lemma_records,
        notes=notes,
    )
    validate_dataset(ds)
    return ds


def validate_dataset(ds: Dataset) -> None:
    """Structural spot checks: three instantiations per row must elaborate."""
    for e in ds.mf_entries:
        envs = e.instantiations()[:3]
        if not envs and e.pattern.parameters():
            raise DataError(f"table {e.table} row {e.row}: no instantiations")
        for env in envs or [{}]:
            if not eval_condition(e.cond, _with_default_charges(env)):
                raise DataError(
                    f"table {e.table} row {e.row}: instantiation {env} "
                    f"violates its own condition"
                )
            group, rep = e.pattern.instantiate(env)
            for sm in rep.summands:
                d = _summand_dim(group, sm)
                if d < 1:
                    raise DataError(
                        f"table {e.table} row {e.row}: zero-dimensional summand"
                    )
    for r in ds.result_rows:
        if r.verify in ("mf-slice", "slice-fail", "cohom-slice") and not (
            r.slice_pattern or r.slice_id or r.real_blocks
        ):
            raise DataError(f"table {r.table} row {r.row}: recipe needs slice data")
        if r.verify == "encoded-only" and not r.note and not r.anchor:
            raise DataError(f"table {r.table} row {r.row}: encoded-only needs a note")


def _with_default_charges(env: dict[str, int]) -> dict[str, int]:
    out = dict(env)
    out.setdefault("a", 1)
    out.setdefault("b", 2)
    return out


def _summand_dim(group: GroupSpec, sm: Summand) -> int:
    d = 1
    for t in sm.terms:
        if t.kind == "triv":
            continue
        fac = group.factors[t.factor - 1]
        n = fac.std_dim
        if t.kind == "std":
            d *= n
        elif t.kind == "sym2":
            d *= n * (n + 1) // 2
        elif t.kind == "alt2":
            d *= n * (n - 1) // 2
        elif t.kind == "spin":
            d *= 2 ** ((fac.n - 1) // 2) if fac.n % 2 else 2 ** (fac.n // 2 - 1)
        elif t.kind == "weight":
            from .rootsys import DominantWeight, build_root_system, weyl_dim

            d *= weyl_dim(build_root_system(fac.simple_type), DominantWeight(t.weight))
    return d


# ---------------------------------------------------------------------------
# pattern matching against the multiplicity-free tables


@dataclass
class MFLookup:
    match: MFTableEntry | None
    scalar_policy: str
    condition_evaluated: bool | None
    mf: bool | None
    parameters: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def _normalize_summand(group: GroupSpec, sm: Summand):
    """Multiset of (kind, factor-kind, factor-n) with trivial slots dropped."""
    terms = []
    for t in sm.terms:
        if t.kind == "triv":
            continue
        fac = group.factors[t.factor - 1]
        if fac.simple_type is None and t.kind in ("std", "sym2"):
            continue  # one-dimensional slot
        terms.append((t.kind, t.factor - 1))
    return terms


def _net_charges(group: GroupSpec, rep: RepSpec) -> list[list[int]]:
    """Per torus line, the net integer charge on each summand."""
    out = []
    nc = group.n_circles
    for line in group.torus_lines:
        row = []
        for sm in rep.summands:
            charges = sm.charges if sm.charges else (0,) * nc
            row.append(sum(d * c for d, c in zip(line, charges)))
        out.append(row)
    return out


def _charge_span(rows: list[list[int]], ncols: int):
    """Rationally reduced basis of the charge row span."""
    from fractions import Fraction

    from .linalg import frac_rref

    if not rows:
        return []
    rr, piv = frac_rref([[Fraction(x) for x in row] for row in rows])
    return [rr[i] for i in range(len(piv))]


def lookup_mf(group: GroupSpec, rep: RepSpec, dataset: Dataset | None = None) -> MFLookup:
    """Match a concrete representation against the classification tables.

    One summand consults the irreducible rows, two summands the reducible
    ones (up to summand reorder and global dualization, with summand-wise
    dualization as a flagged fallback); more than two summands cannot be
    indecomposably multiplicity free, so no row can match.
    """
    ds = dataset or load_dataset()
    r = len(rep.summands)
    if r > 2:
        return MFLookup(
            match=None,
            scalar_policy="",
            condition_evaluated=None,
            mf=False,
            notes=[
                "more than two irreducible summands: not multiplicity free "
                "unless the action decomposes"
            ],
        )
    tables = ["Ia"] if r == 1 else ["IIa", "IIb"]
    charge_rows = _net_charges(group, rep)
    span = _charge_span(charge_rows, r)
    for strict in (True, False):
        for table in tables:
            for entry in ds.mf_rows(table):
                got = _match_row(group, rep, entry, span, strict=strict)
                if got is not None:
                    return got
    return MFLookup(match=None, scalar_policy="", condition_evaluated=None, mf=False,
                    notes=["no table row matches"])


def _match_row(group, rep, entry, span, strict):
    pat = entry.pattern
    if len(pat.summands) != len(rep.summands):
        return None
    orders = (
        [(0,)] if len(rep.summands) == 1 else [(0, 1), (1, 0)]
    )
    for order in orders:
        for gdual in (False, True):
            env = _unify(group, rep, pat, order, gdual, summandwise=False)
            mode = "exact"
            if env is None and not strict:
                env = _unify(group, rep, pat, order, gdual, summandwise=True)
                mode = "summand-dual"
            if env is None:
                continue
            result = _evaluate_match(group, rep, entry, env, order, gdual, span)
            if result is not None:
                if mode == "summand-dual":
                    result.notes.append(
                        "matched up to dualizing one summand (charge signs adjusted)"
                    )
                return result
    return None


def _solve_rank(expr_text: str, value: int, env: dict[str, int]) -> dict[str, int] | None:
    """Extend env so expr evaluates to value; None if impossible."""
    names = [n for n in _expr_names(expr_text) if n not in env]
    if not names:
        try:
            return dict(env) if eval_int_expr(expr_text, env) == value else None
        except ValueError:
            return None
    if len(names) > 1:
        return None
    name = names[0]
    for cand in range(0, value + 3):
        trial = dict(env)
        trial[name] = cand
        try:
            if eval_int_expr(expr_text, trial) == value:
                return trial
        except ValueError:
            pass
    return None


def _unify(group, rep, pat, order, gdual, summandwise):
    """Solve the pattern parameters; None if shapes cannot match.

    State threaded through the backtracking: the parameter environment, the
    pattern-factor to concrete-factor map, and the set of pattern factors
    forced to the trivial su(1).
    """
    jobs = []  # (pattern term list, concrete term list) per summand
    for p_idx, c_idx in enumerate(order):
        p_terms, p_dual, _ = pat.summands[p_idx]
        sm = rep.summands[c_idx]
        eff_dual = sm.dual != gdual
        if not summandwise and eff_dual != p_dual:
            return None
        c_terms = _normalize_summand(group, sm)
        p_real = [(k, f - 1) for (k, f) in p_terms if k != "triv"]
        if len(p_real) < len(c_terms):
            return None
        jobs.append((p_real, c_terms))

    def match_terms(job_idx, env, fmap, virtuals):
        if job_idx == len(jobs):
            return env
        p_real, c_terms = jobs[job_idx]

        def assign(c_pos, used, env, fmap, virtuals):
            if c_pos == len(c_terms):
                # leftover pattern terms must be absorbable as su(1) slots
                env2, fmap2, virt2 = env, fmap, dict(virtuals)
                for i, (pk, pf) in enumerate(p_real):
                    if i in used:
                        continue
                    if pk not in ("std", "sym2"):
                        return None
                    pat_kind, pat_expr = pat.factors[pf]
                    if pat_kind != "su":
                        return None
                    if pf in fmap2:
                        return None
                    solved = _solve_rank(pat_expr.text, 1, env2)
                    if solved is None:
                        return None
                    env2 = solved
                    virt2[pf] = 1
                return match_terms(job_idx + 1, env2, fmap2, virt2)
            ck, cf = c_terms[c_pos]
            for i, (pk, pf) in enumerate(p_real):
                if i in used or pk != ck:
                    continue
                if pf in virtuals:
                    continue
                bound = fmap.get(pf)
                if bound is not None and bound != cf:
                    continue
                pat_kind, pat_expr = pat.factors[pf]
                fac = group.factors[cf]
                if pat_kind != fac.kind:
                    continue
                solved = _solve_rank(pat_expr.text, fac.n, env)
                if solved is None:
                    continue
                fmap2 = dict(fmap)
                fmap2[pf] = cf
                got = assign(c_pos + 1, used | {i}, solved, fmap2, virtuals)
                if got is not None:
                    return got
            return None

        return assign(0, frozenset(), env, fmap, virtuals)

    return match_terms(0, {}, {}, {})


def _expr_names(text: str) -> list[str]:
    import ast

    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError:
        return []
    return sorted({n.id for n in ast.walk(tree) if isinstance(n, ast.Name)})


def _evaluate_match(group, rep, entry, env, order, gdual, span) -> MFLookup | None:
    r = len(rep.summands)
    cond_names = set(_expr_names(entry.cond))
    needs_charges = bool(cond_names & {"a", "b"})
    notes: list[str] = []
    # the structural (parameter-only) part of the condition gates the match;
    # sentinel charges satisfy every charge-shaped clause in the tables
    sentinel = dict(env)
    sentinel["a"] = 10**6 + 1
    sentinel["b"] = 10**6 - 1
    try:
        if not eval_condition(entry.cond, sentinel):
            return None
    except ValueError:
        return None
    sgn = -1 if gdual else 1
    span_dim = len(span)
    if span_dim >= r:
        if needs_charges:
            notes.append("full scalars present; charge condition satisfiable")
        charge_env = dict(env)
        charge_env["a"] = 10**6 + 1
        charge_env["b"] = 10**6 - 1
        scalar_state = "full"
    elif span_dim == 1:
        gen = span[0]
        den = 1
        for x in gen:
            den = den * x.denominator // gcd_int(den, x.denominator)
        ints = [int(x * den) for x in gen]
        g = 0
        for x in ints:
            g = gcd_int(g, x)
        if g:
            ints = [x // g for x in ints]
        mapped = [sgn * ints[order[k]] for k in range(r)]
        charge_env = dict(env)
        charge_env["a"] = mapped[0]
        if r == 2:
            charge_env["b"] = mapped[1]
        scalar_state = "line"
    else:
        charge_env = dict(env)
        charge_env["a"] = 0
        charge_env["b"] = 0
        scalar_state = "none"

    try:
        cond_ok = eval_condition(entry.cond, _with_defaults(charge_env))
    except ValueError:
        return None

    if entry.table == "Ia":
        has_scalar = scalar_state != "none" and _summand_scalar_present(span, 0)
        removable = False
        if entry.scalar_policy == "removable":
            removable = eval_condition(entry.removable_cond, env)
            if not removable:
                notes.append("removability condition fails; scalar required")
        mf = has_scalar or removable
        return MFLookup(
            match=entry,
            scalar_policy="removable" if removable else "required",
            condition_evaluated=cond_ok,
            mf=mf,
            parameters=dict(env),
            notes=notes,
        )
    if entry.table == "IIa":
        mf = bool(cond_ok)
        if scalar_state == "none":
            mf = False
            notes.append("no scalars present")
        return MFLookup(
            match=entry,
            scalar_policy="reducible-with-condition",
            condition_evaluated=cond_ok,
            mf=mf,
            parameters=dict(env),
            notes=notes,
        )
    # IIb: both scalars are needed
    mf = scalar_state == "full" and cond_ok
    return MFLookup(
        match=entry,
        scalar_policy="required",
        condition_evaluated=cond_ok,
        mf=mf,
        parameters=dict(env),
        notes=notes + (["needs two independent scalars"] if not mf else []),
    )


def _with_defaults(env):
    out = dict(env)
    out.setdefault("a", 0)
    out.setdefault("b", 0)
    return out


def _summand_scalar_present(span, idx) -> bool:
    return any(row[idx] for row in span)


def gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# maximal subgroups and slice facts


def maximal_subgroups(
    family: str, n: int, dataset: Dataset | None = None
) -> list[dict]:
    """Instantiated maximal-subgroup rows for Sp(n), SO(n) or SU(n)."""
    ds = dataset or load_dataset()
    fam = family.lower()
    if fam not in ("sp", "so", "su"):
        raise DataError("ambient must be sp, so or su")
    out = []
    for e in ds.maxsub_entries:
        if e.ambient != fam:
            continue
        if e.kind == "irreducible-rep":
            out.append(
                {
                    "row": e.row,
                    "kind": e.kind,
                    "reality": e.reality,
                    "degree": eval_int_expr(e.degree, {"m": n, "n": n}),
                    "anchor": e.anchor,
                    "note": e.note,
                }
            )
            continue
        import re as _re

        braced = _re.findall(r"\{([^}]*)\}", e.subgroup_text)
        names: set[str] = set(_expr_names(e.cond))
        for expr in braced:
            names |= set(_expr_names(expr))
        params = sorted(p for p in names if p not in ("m", "n"))
        instances = []
        base_env = {"m": n, "n": n}
        if not params:
            if eval_condition(e.cond, base_env):
                instances.append(dict(base_env))
        elif len(params) == 1:
            p = params[0]
            for v in range(1, n + 1):
                env = dict(base_env)
                env[p] = v
                if eval_condition(e.cond, env):
                    instances.append(env)
        else:
            p, q = params[0], params[1]
            for vp in range(1, n + 1):
                for vq in range(1, n + 1):
                    env = dict(base_env)
                    env[p] = vp
                    env[q] = vq
                    if eval_condition(e.cond, env):
                        instances.append(env)
        for env in instances:
            out.append(
                {
                    "row": e.row,
                    "kind": e.kind,
                    "subgroup": _substitute(e.subgroup_text, env),
                    "parameters": {
                        k: v for k, v in env.items() if k not in ("m", "n")
                    },
                    "anchor": e.anchor,
                    "note": e.note,
                }
            )
    if not out:
        raise DataError(f"no maximal subgroup data for {family}({n})")
    return out


def _substitute(text: str, env: dict[str, int]) -> str:
    import re as _re

    def repl(m):
        expr = m.group(1)
        return str(eval_int_expr(expr, env))

    return _re.sub(r"\{([^}]*)\}", repl, text)


def slice_facts(
    space_label: str, subgroup_text: str, dataset: Dataset | None = None
) -> list[SliceFact]:
    """All encoded slice facts for a (space family, subgroup) pair."""
    ds = dataset or load_dataset()
    key = subgroup_text.replace(" ", "").lower()
    return [
        f
        for f in ds.slice_facts
        if f.space_label == space_label
        and f.subgroup_text.replace(" ", "").lower() == key
    ]

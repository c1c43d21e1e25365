import os

import pytest

from coisotropy.dsl import eval_int_expr, parse_pattern, parse_repspec
from coisotropy.matrep import GroupSpec, RepSpec, Summand, realize
from coisotropy.mforacle import mf_test
from coisotropy.repdata import (
    DataError,
    HSSpace,
    load_dataset,
    lookup_mf,
    maximal_subgroups,
    parse_instantiations,
    slice_facts,
    space_from_text,
)


@pytest.fixture(scope="module")
def ds():
    return load_dataset()


def look(ds, text):
    group, rep = parse_repspec(text)
    return lookup_mf(group, rep, ds)


def test_dataset_loads_every_file(ds):
    assert ds.mf_rows("Ia") and ds.mf_rows("Ib") and ds.mf_rows("IIa") and ds.mf_rows("IIb")
    assert len(ds.maxsub_entries) == 14
    assert ds.slice_facts and ds.result_rows and ds.symmetric_pairs


def test_hsspace_dimensions():
    assert HSSpace("sp", 3).complex_dim == 6
    assert HSSpace("so", 4).complex_dim == 6
    assert HSSpace("e7").complex_dim == 27
    assert HSSpace("e6").complex_dim == 16
    assert str(HSSpace("so", 4)) == "SO(8)/U(4)"
    assert space_from_text("sp:m", {"m": 5}).complex_dim == 15
    with pytest.raises(DataError):
        HSSpace("x7")


def test_parse_instantiations():
    assert parse_instantiations("k=1,m=2|k=1,m=3") == [
        {"k": 1, "m": 2},
        {"k": 1, "m": 3},
    ]
    assert parse_instantiations("") == []


def test_lookup_irreducible_rows(ds):
    res = look(ds, "su(6) + u1[1] on alt2(1) @ 1")
    assert res.match.table == "Ia" and res.match.row == "5"
    assert res.mf is True
    res = look(ds, "su(6) on alt2(1)")
    assert res.mf is False  # even rank: scalar required
    res = look(ds, "su(7) on alt2(1)")
    assert res.mf is True and res.scalar_policy == "removable"


def test_lookup_reducible_rows(ds):
    res = look(ds, "su(5) + u1[1,1] on std(1) @ 1,0 (+) alt2(1) @ 0,1")
    assert res.match.table == "IIa" and res.match.row == "4"
    assert res.condition_evaluated is True and res.mf is True
    res = look(ds, "su(3) + u1[1,1] on std(1) @ 1,0 (+) std(1) @ 0,1")
    assert res.match.row == "1" and res.mf is False
    res = look(ds, "su(2) + u1[1,0] + u1[0,1] on std(1) @ 1,0 (+) std(1) @ 0,1")
    assert res.match.table == "IIb" and res.mf is True


def test_lookup_three_summands(ds):
    text = (
        "su(3) + u1[1,1,0] + u1[1,0,1] + u1[0,1,1] on "
        "std(1) @ 1,0,0 (+) std(1) @ 0,1,0 (+) triv @ 0,0,1"
    )
    res = look(ds, text)
    assert res.match is None and res.mf is False
    assert any("two" in n for n in res.notes)


def test_lookup_matches_oracle_on_every_ia_row(ds):
    for entry in ds.mf_rows("Ia"):
        env = (entry.instantiations() or [{}])[0]
        group, rep = entry.pattern.instantiate(env)
        scal = GroupSpec(factors=group.factors, torus_lines=((1,),))
        rep_s = RepSpec(
            summands=tuple(
                Summand(terms=s.terms, dual=s.dual, charges=(1,))
                for s in rep.summands
            )
        )
        m = realize(scal, rep_s)
        if m.space_dim > 40:
            continue
        res = lookup_mf(scal, rep_s, ds)
        assert res.match is not None, entry.row
        assert res.mf == mf_test(m), (entry.row, env)


def test_maximal_subgroups_examples(ds):
    sp3 = maximal_subgroups("sp", 3, ds)
    kinds = {e["kind"] for e in sp3}
    assert kinds == {"unitary", "symmetric", "tensor-embedding", "irreducible-rep"}
    irr = [e for e in sp3 if e["kind"] == "irreducible-rep"][0]
    assert irr["reality"] == "H" and irr["degree"] == 6
    tens = [e for e in sp3 if e["kind"] == "tensor-embedding"]
    assert [e["parameters"] for e in tens] == [{"p": 3, "q": 1}]

    so8 = maximal_subgroups("so", 8, ds)
    assert any(e["kind"] == "unitary" and e["subgroup"] == "U(4)" for e in so8)
    assert any(e["subgroup"] == "Sp(1) (x) Sp(2)" for e in so8)
    assert any(
        e["kind"] == "irreducible-rep" and e["reality"] == "R" and e["degree"] == 8
        for e in so8
    )
    # 8 = pq with 3 <= p <= q has no solutions
    assert not any(
        e["kind"] == "tensor-embedding" and "SO" in e.get("subgroup", "")
        for e in so8
    )

    su2 = maximal_subgroups("su", 2, ds)
    assert any(e["kind"] == "symmetric" for e in su2)

    with pytest.raises(DataError):
        maximal_subgroups("g2", 2, ds)


def test_slice_facts_lookup(ds):
    facts = slice_facts("sp", "sp(k)+sp(m-k)", ds)
    assert len(facts) == 1 and "std(1) (x) std(2)" in facts[0].slice_pattern
    facts = slice_facts("e7", "t1+e6", ds)
    assert facts[0].orbit_kind == "fixed-point"
    assert slice_facts("so", "u(m)", ds)
    assert slice_facts("sp", "nothing-here", ds) == []


def test_slice_dimension_identity(ds):
    """dim slice + dim orbit = dim_C M wherever the orbit dimension is
    recorded (the classical cases and symmetric exceptional orbits)."""
    from coisotropy.repdata import _summand_dim

    checked = 0
    for fact in ds.slice_facts:
        if not fact.orbit_dim_c or not fact.slice_pattern:
            continue
        pat = parse_pattern(fact.slice_pattern)
        names = sorted(pat.parameters() | set())
        envs = []
        if not names:
            envs = [{}]
        else:
            for values in ((5, 2), (7, 3), (6, 2), (9, 4)):
                env = {n: v for n, v in zip(names, values)}
                try:
                    pat.instantiate(env)
                except Exception:
                    continue
                envs.append(env)
                if len(envs) == 2:
                    break
        for env in envs:
            group, rep = pat.instantiate(env)
            sdim = sum(_summand_dim(group, s) for s in rep.summands)
            orbit = eval_int_expr(fact.orbit_dim_c, env) if fact.orbit_dim_c else 0
            if fact.space_label in ("e7", "e6"):
                total = HSSpace(fact.space_label).complex_dim
            else:
                space_param = eval_int_expr(fact.space_param, env)
                total = HSSpace(fact.space_label, space_param).complex_dim
            assert sdim + orbit == total, fact.fact_id
            checked += 1
    assert checked >= 10


def test_result_table_totality(ds):
    for table in ("1", "2", "3", "4"):
        rows = ds.results_for(table)
        assert rows
        for row in rows:
            assert row.verify
            assert row.expect_outcome
            if row.verify in ("encoded-only", "encoded-nonpolar"):
                assert row.note or row.anchor


def test_environment_override(tmp_path, monkeypatch):
    # a dataset directory override must be honored and validated
    bad = tmp_path / "mftables.txt"
    bad.write_text("format=mftables version=1\n")
    for name in ("maxsub.txt", "slices.txt", "results.txt", "sympairs.txt", "lemma21.txt"):
        (tmp_path / name).write_text(f"format={name[:-4]} version=1\n")
    load_dataset.cache_clear()
    try:
        ds2 = load_dataset(str(tmp_path))
        assert ds2.mf_entries == []
    finally:
        load_dataset.cache_clear()


def test_corrected_rows_are_the_documented_set(ds):
    corrected = {
        (r.table, r.row)
        for r in ds.result_rows
        if r.algebra_corrected
        or r.space_corrected
        or r.cond_corrected
        or (r.verbatim_outcome and r.verbatim_outcome != r.expect_outcome)
    }
    assert corrected == {
        ("1", "sp2"),
        ("1", "so7"),
        ("1", "so8"),
        ("1", "so14"),
        ("2", "e6E2"),
        ("3", "p2"),
        ("3", "p7"),
        ("4", "q6"),
    }


def test_every_iib_row_needs_both_scalars(ds):
    """Each reducible row of the both-scalars table passes with independent
    scalars and fails whenever one of the two is dropped."""
    for entry in ds.mf_rows("IIb"):
        env = (entry.instantiations() or [{}])[0]
        group, rep = entry.pattern.instantiate(env)
        lines = ((1, 0), (0, 1))
        full_rep = RepSpec(
            summands=tuple(
                Summand(
                    terms=s.terms,
                    dual=s.dual,
                    charges=tuple(int(j == i) for j in range(2)),
                )
                for i, s in enumerate(rep.summands)
            )
        )
        full = GroupSpec(factors=group.factors, torus_lines=lines)
        m = realize(full, full_rep)
        if m.space_dim > 64:
            continue
        assert mf_test(m), (entry.row, env)
        for idx in range(2):
            single = GroupSpec(factors=group.factors, torus_lines=(lines[idx],))
            assert not mf_test(realize(single, full_rep)), (entry.row, env, idx)

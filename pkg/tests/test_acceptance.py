"""Acceptance criteria A1-A11.  Each test prints one ``A# PASS/FAIL`` line."""

import time

import pytest

from g2chev.chevalley import (
    PRINTED_H1_DIAG,
    PRINTED_H2_DIAG,
    PRINTED_W1,
    PRINTED_W2,
    PRINTED_X1,
    PRINTED_X2,
    verify_chevalley_properties,
)
from g2chev.group import as_fraction_matrix, root_element, torus_element, weyl_element
from g2chev.matrix import Matrix
from g2chev.ring import IntegersMod, Rationals, TruncatedPoly
from g2chev.replay.conditions import verify_conditions
from g2chev.replay.elimination import load_ledger, run_elimination
from g2chev.replay.matrix_units import generate_matrix_units, verify_matrix_units
from g2chev.replay.normalizer import normalizer_kernel
from g2chev.replay.prod2 import roundtrip_trials
from g2chev.replay.relations import verify_relations
from g2chev.replay.report import involution_checks
from g2chev.replay.shapes import verify_block_shapes
from g2chev.replay.templates import FREE_VARS, residue
from g2chev.replay.torus import verify_torus_image
from g2chev.rootsys import root


def report(tag: str, ok: bool, detail: str):
    print(f"\n{tag} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"{tag}: {detail}"


def test_A1_generator_fidelity():
    t0 = time.perf_counter()
    Q = Rationals()
    pairs = {
        "x_a1(1)": (root_element(root(1), 1, Q), PRINTED_X1),
        "x_a2(1)": (root_element(root(2), 1, Q), PRINTED_X2),
        "w1": (weyl_element(root(1), 1, Q), PRINTED_W1),
        "w2": (weyl_element(root(2), 1, Q), PRINTED_W2),
        "h_a1(-1)": (torus_element(root(1), -1, Q), Matrix.diag(list(PRINTED_H1_DIAG))),
        "h_a2(-1)": (torus_element(root(2), -1, Q), Matrix.diag(list(PRINTED_H2_DIAG))),
    }
    bad = []
    for name, (g, target) in pairs.items():
        M = as_fraction_matrix(g)
        if not (M == target):
            i, j = next((i, j) for i in range(14) for j in range(14) if M[i, j] != target[i, j])
            bad.append(f"{name} differs at ({i + 1},{j + 1}): built {M[i, j]}, printed {target[i, j]}")
    dt = time.perf_counter() - t0
    alt = as_fraction_matrix(weyl_element(root(1), -1, Q)) == PRINTED_W1
    detail = "; ".join(bad) if bad else "all six matrices equal"
    report("A1", not bad and dt < 1, f"{detail} ({dt:.2f}s; w_a1(-1) equals printed w1: {alt})")


def test_A2_chevalley_properties():
    t0 = time.perf_counter()
    props = verify_chevalley_properties()
    dt = time.perf_counter() - t0
    failed = [p.number for p in props if not p.passed]
    report("A2", len(props) == 6 and not failed and dt < 1,
           f"{sum(p.checked for p in props)} instances, failing properties {failed} ({dt:.2f}s)")


def test_A3_relation_suite():
    t0 = time.perf_counter()
    wanted = ("additivity", "Weyl conjugation", "torus action", "torus multiplicativity")
    bad, seen = [], 0
    for ring in (IntegersMod(5, 2), IntegersMod(7, 2), TruncatedPoly(4, 3)):
        for r in verify_relations(ring, trials=100, seed=0):
            if r.name.startswith(wanted):
                seen += 1
                if not (r.passed and r.witness["trials"] >= 100):
                    bad.append(r.name)
    dt = time.perf_counter() - t0
    report("A3", seen == 12 and not bad and dt < 10, f"{seen} relation/ring runs x 100 trials, failing {bad} ({dt:.1f}s)")


def test_A4_conditions():
    t0 = time.perf_counter()
    res = {r.name: r for r in verify_conditions()}
    dt = time.perf_counter() - t0
    con17 = [f"Con{i}" for i in range(1, 8) if not res[f"Con{i}"].passed]
    forms = [f for f in ("literal", "corrected") if res[f"Con8 ({f})"].passed]
    report("A4", not con17 and bool(forms) and dt < 1,
           f"Con1-Con7 failing {con17}; Con8 holds in form(s) {forms} ({dt:.2f}s)")


def test_A5_block_shapes():
    t0 = time.perf_counter()
    res = {r.name: r for r in verify_block_shapes()}
    dt = time.perf_counter() - t0
    dims = {w: res[f"{w}: commutant dimension"].witness["dimension"] for w in ("x1", "x2", "h_t")}
    residues = res["x1: template at residues = generator"].passed and res["x2: template at residues = generator"].passed
    report("A5", dims == {"x1": 52, "x2": 52, "h_t": 14} and residues and dt < 30,
           f"commutant dimensions {dims}, templates at residues reproduce generators: {residues} ({dt:.2f}s)")


def test_A6_elimination_replay():
    ledger = load_ledger()
    t0 = time.perf_counter()
    st2 = run_elimination(ledger, d=2)
    dt = time.perf_counter() - t0
    st3 = run_elimination(ledger, d=3)
    residues = {v: residue(v) for v in FREE_VARS}
    ok = (st2.completed and all(e.pivot != 0 for e in st2.log) and len(st2.log) == len(ledger)
          and st2.assignment == residues and st3.completed and st3.assignment == st2.assignment and dt < 600)
    where = f"aborted at {st2.failed_step} after {len(st2.log)} of {len(ledger)} steps" if st2.failed_step \
        else f"{len(st2.log)} steps, {st2.fallback_count} fallbacks"
    report("A6", ok, f"d=2 {where}; d=3 completed {st3.completed} ({dt:.1f}s)")


def test_A7_torus_image():
    t0 = time.perf_counter()
    res = verify_torus_image()
    dt = time.perf_counter() - t0
    bad = [r.name for r in res if not r.passed]
    final = res[-1].name == "torus: h_t = h_a1(1/d9)" and res[-1].passed
    report("A7", not bad and final and dt < 10, f"{len(res) - 1} deductions, failing {bad}, final h_t = h_a1(1/d9): {final} ({dt:.2f}s)")


def test_A8_prod2_roundtrip():
    t0 = time.perf_counter()
    counts = {}
    for ring in (IntegersMod(5, 2), IntegersMod(5, 3), TruncatedPoly(14, 3)):
        counts[ring.descriptor] = roundtrip_trials(ring, trials=100, seed=0)["recovered"]
    dt = time.perf_counter() - t0
    report("A8", all(c == 100 for c in counts.values()) and dt < 60, f"exact recoveries {counts} ({dt:.1f}s)")


def test_A9_matrix_units():
    t0 = time.perf_counter()
    mu = generate_matrix_units()
    res = verify_matrix_units(IntegersMod(5, 2), mu, triples=50) + verify_matrix_units(IntegersMod(7, 2), mu, triples=50)
    dt = time.perf_counter() - t0
    bad = [r.name for r in res if not r.passed]
    report("A9", len(res) == 4 and not bad and dt < 60, f"196 units and 50 triples over Z/25, Z/49, failing {bad} ({dt:.1f}s)")


def test_A10_normalizer_kernel():
    t0 = time.perf_counter()
    printed = normalizer_kernel("printed")
    derived = normalizer_kernel("derived")
    dt = time.perf_counter() - t0
    ok = (printed.unknowns == 237 and printed.kernel_dimension == 0 and printed.modular_ranks == [printed.rank] * 3
          and printed.consistent and dt < 300)
    report("A10", ok, f"printed T1,T2: rank {printed.rank}/{printed.unknowns}, modular {printed.modular_ranks}; "
                      f"derived generators: kernel dimension {derived.kernel_dimension} ({dt:.1f}s)")


def test_A11_involution_ranks():
    res = involution_checks(trials=100, seed=0)
    ranks = {r.name: r.witness.get("ranks") for r in res if r.name.startswith("involution ranks of h")}
    ok = len(ranks) == 2 and all(r.passed for r in res if r.name.startswith("involution ranks of h"))
    report("A11", ok, f"{ranks} under 100 random conjugations")

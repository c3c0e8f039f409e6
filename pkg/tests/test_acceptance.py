"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py`` (or ``python tests/test_acceptance.py``);
the lines are collected in the "acceptance criteria" section of the summary.
"""
from __future__ import annotations

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from torsionfree_lab.algebra import BUILTIN_NAMES
from torsionfree_lab.cli import main
from torsionfree_lab.constructions import star_of_ses
from torsionfree_lab.functors import ext_dim, ext_dims, extension_from_cocycle, regular
from torsionfree_lab.harness import NO_COUNTEREXAMPLE, Params, construction_roundtrips, falsify_claim
from torsionfree_lab.invariants import (auslander_bridger_check, gorenstein_dimension,
                                        orthogonal_dimension, projective_dimension,
                                        self_injective_dimension, torsionfree_dimension_upper)
from torsionfree_lab.linalg import Field, Mat, kernel_basis, rref, solve_all
from torsionfree_lab.modules import simple_modules, vector_dual
from torsionfree_lab.rng import SplitMix64
from torsionfree_lab.sampling import sample_suite
from torsionfree_lab.serialize import dumps

BOUND = 8


@pytest.fixture
def verdict(request):
    """verdict(number, title, failures, detail) records the line and fails on any failure."""
    def record(number: int, title: str, failures: list, detail: str = ""):
        status = "PASS" if not failures else "FAIL"
        line = f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        if failures:
            line += " :: " + "; ".join(str(f) for f in failures[:5])
        request.config._acceptance_lines.append(line)
        print(line)
        assert not failures, line
    return record


def _random_matrix(f: Field, rng: np.random.Generator):
    r, c = int(rng.integers(1, 7)), int(rng.integers(1, 7))
    if f.is_prime:
        rows = rng.integers(0, f.p, size=(r, c)).tolist()
    else:
        # rationals with small numerators and denominators; sparse enough to hit rank drops
        num = rng.integers(-3, 4, size=(r, c)) * (rng.random((r, c)) < 0.6)
        den = rng.integers(1, 4, size=(r, c))
        rows = [[f"{int(num[i, j])}/{int(den[i, j])}" for j in range(c)] for i in range(r)]
    return Mat.from_rows(f, rows, c)


def test_criterion_01_exact_kernel(verdict):
    failures, counted = [], 0
    for f, seed in ((Field.gf(5), 1), (Field.qq(), 2)):
        rng = np.random.default_rng(seed)
        for trial in range(1000):
            m = _random_matrix(f, rng)
            red, r, piv = rref(m)
            if rref(red)[0] != red:
                failures.append(f"{f.spec()} #{trial}: rref not idempotent")
            k = kernel_basis(m)
            if k.dim + r != m.cols:
                failures.append(f"{f.spec()} #{trial}: rank-nullity")
            if k.dim and not f.is_zero(f.matmul(m.data, k.basis.T)):
                failures.append(f"{f.spec()} #{trial}: kernel vector not annihilated")
            # a consistent right-hand side must be solved exactly
            x0 = f.array([f"{int(v)}/{int(d)}" if not f.is_prime else int(v)
                          for v, d in zip(rng.integers(-4, 5, m.cols), rng.integers(1, 4, m.cols))])
            b = f.matmul(m.data, x0.reshape(-1, 1)).ravel()
            out = solve_all(m, b)
            if out is None or not f.equal(f.matmul(m.data, out[0].reshape(-1, 1)).ravel(), b):
                failures.append(f"{f.spec()} #{trial}: solve")
            counted += 1
    verdict(1, "exact kernel soundness over GF(5) and QQ", failures, f"{counted} matrices")


EXPECTED_IDS = {"DUAL2": (0, 0), "TRUNCPOLY(3)": (0, 0), "A2": (1, 1), "NAKAYAMA(2,2)": (0, 0),
                "NG3": ("GREATER_THAN(6)", "GREATER_THAN(6)")}


def test_criterion_02_self_injective_table(alg, verdict):
    failures, table = [], {}
    for name, want in EXPECTED_IDS.items():
        bound = 6 if name == "NG3" else BOUND
        got = tuple(self_injective_dimension(alg(name), side, bound) for side in ("left", "right"))
        table[name] = tuple(g.label() for g in got)
        for g, w in zip(got, want):
            if not g.certified or (g.value if g.is_finite else g.label()) != w:
                failures.append(f"{name}: expected {w}, got {g}")
    verdict(2, "self-injective dimension table", failures, json.dumps(table))


def _run_cli(*argv):
    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def test_criterion_03_gorenstein_zero(alg, verdict):
    failures, counts = [], {}
    for name in ("DUAL2", "NAKAYAMA(2,2)"):
        code, out = _run_cli("check", "--algebra", name, "--claim", "THM_1_4", "--n", "0",
                             "--samples", "200", "--seed", "0")
        doc = json.loads(out)
        if code != 0 or doc["status"] != NO_COUNTEREXAMPLE:
            failures.append(f"{name}: exit {code}, status {doc['status']}")
        left = sum(v for k, v in doc["tallies"].items() if k.startswith("left:"))
        counts[name] = left
        if left < 200:
            failures.append(f"{name}: only {left} left samples checked")
        for key in doc["tallies"]:
            if key.split(":", 1)[1] != "gdim=0,tdim=0,orthdim=0":
                failures.append(f"{name}: sample class {key}")
        if doc["undecided"]:
            failures.append(f"{name}: {doc['undecided']} undecided samples")
    verdict(3, "G-dim = T-dim = orthogonal dim = 0 on self-injective algebras", failures,
            f"samples per algebra {counts}")


def test_criterion_04_contrapositive_ng3(alg, verdict):
    failures, seen = [], {}
    a = alg("NG3")
    for n in range(5):
        rep = falsify_claim("THM_1_4", a, Params(n, bound=BOUND, samples=20))
        if rep.exit_code != 0:
            failures.append(f"n={n}: exit {rep.exit_code}")
        if not any(s.startswith("premise fails") for s in rep.notes):
            failures.append(f"n={n}: no premise-fails note")
        ev = [e for e in rep.evidence if e["check"] == "orthogonal_dim_exceeds_n"]
        if not ev or ev[0]["observed"]["nonzero_ext_degree"] <= n:
            failures.append(f"n={n}: no sample with orthogonal dimension > n")
        else:
            seen[n] = f"{ev[0]['sample']}:Ext^{ev[0]['observed']['nonzero_ext_degree']}"
    verdict(4, "contrapositive on NG3 for n <= 4", failures, json.dumps(seen))


def test_criterion_05_exact_values_a2(alg, verdict):
    a = alg("A2")
    s1 = simple_modules(a)[0]
    failures = []
    vals = {"pd": projective_dimension(s1, BOUND), "orthdim": orthogonal_dimension(s1, BOUND),
            "gdim": gorenstein_dimension(s1, BOUND), "tdim": torsionfree_dimension_upper(s1, BOUND)}
    for k, v in vals.items():
        if not (v.is_finite and v.value == 1 and v.certified and v.exact and v.lower == 1):
            failures.append(f"{k} = {v}")
    e1 = ext_dim(s1, regular(a), 1)
    if e1 != 1:
        failures.append(f"dim Ext^1(S1, A) = {e1}")
    verdict(5, "exact values for S1 over A2", failures,
            ", ".join(f"{k}={v.label()}" for k, v in vals.items()) + f", ext1={e1}")


def test_criterion_06_auslander_bridger(alg, verdict):
    failures, total = [], 0
    for name in BUILTIN_NAMES:
        for x in sample_suite(alg(name), 100, 6):
            total += 1
            rep = auslander_bridger_check(x.module)
            if not rep.ok:
                failures.append(f"{name} {x.label}: {rep.notes}")
    s = auslander_bridger_check(simple_modules(alg("NG3"))[0])
    if s.ext2_transpose != 3 or s.ext1_transpose != 0:
        failures.append(f"NG3 simple: Ext^1 = {s.ext1_transpose}, Ext^2 = {s.ext2_transpose}")
    verdict(6, "evaluation-map four-term sequence", failures,
            f"{total} samples, NG3 simple degree-2 term dim {s.ext2_transpose}")


def test_criterion_07_cosyzygy_and_horseshoe(alg, verdict):
    failures, applicable = [], {}
    for name in BUILTIN_NAMES:
        rep = falsify_claim("PROP_2_1", alg(name), Params(1, bound=BOUND, samples=80, seed=0))
        applicable[name] = rep.tallies.get("n_torsionfree", 0)
        if rep.status != NO_COUNTEREXAMPLE or rep.undecided:
            failures.append(f"{name}: {rep.status}, undecided {rep.undecided}")
        if applicable[name] < 50:
            failures.append(f"{name}: only {applicable[name]} applicable samples")
        rt = construction_roundtrips(alg(name), Params(1, bound=BOUND, samples=50, seed=0))
        lem = rt.facts["per_construction"]["LEMMA_3_1"]
        if rt.status != NO_COUNTEREXAMPLE or lem["violations"] or not lem["checked"]:
            failures.append(f"{name}: star/transpose sequences {lem}")
    s = simple_modules(alg("DUAL2"))[0]
    out = star_of_ses(extension_from_cocycle(s, s, 1))
    dims = out.notes["transpose_dims"]
    if not (out.stars.exact and out.transposes.exact and dims[1] == 2):
        failures.append(f"DUAL2 0->S->A->S->0: transpose dims {dims}")
    verdict(7, "cosyzygy round-trip and star/transpose sequences", failures,
            f"applicable {json.dumps(applicable)}, DUAL2 transpose dims {dims}")


def test_criterion_08_finite_pd_embedding(alg, verdict):
    failures, counts = [], {}
    for name in ("DUAL2", "A2"):
        for n in (0, 1, 2):
            rep = falsify_claim("COR_3_5", alg(name), Params(n, bound=BOUND, samples=50, seed=0))
            counts[f"{name},n={n}"] = rep.tallies.get("applicable", 0)
            if rep.status != NO_COUNTEREXAMPLE or rep.undecided or rep.witnesses:
                failures.append(f"{name} n={n}: {rep.status}, undecided {rep.undecided}")
            if not rep.tallies.get("applicable"):
                failures.append(f"{name} n={n}: no applicable samples")
    verdict(8, "finite-pd embeddings certified", failures, json.dumps(counts))


def test_criterion_09_ext_duality(alg, verdict):
    failures, pairs = [], 0
    for name in BUILTIN_NAMES:
        suite = sample_suite(alg(name), 100, 6)
        rng = SplitMix64(9)
        for _ in range(100):
            x = suite[rng.next_u64() % len(suite)].module
            y = suite[rng.next_u64() % len(suite)].module
            lhs = ext_dims(x, y, 3)
            rhs = ext_dims(vector_dual(y), vector_dual(x), 3)
            pairs += 1
            if lhs != rhs:
                failures.append(f"{name} {x.name} / {y.name}: {lhs} vs {rhs}")
    verdict(9, "Ext duality through the opposite algebra, degrees 0..3", failures, f"{pairs} pairs")


def test_criterion_10_zaks_and_cor_4_9(alg, verdict):
    failures, table = [], {}
    for name in BUILTIN_NAMES:
        bound = 6 if name == "NG3" else BOUND
        dl = self_injective_dimension(alg(name), "left", bound)
        dr = self_injective_dimension(alg(name), "right", bound)
        table[name] = (dl.label(), dr.label())
        if dl.is_finite and dr.is_finite and dl.certified and dr.certified and dl.value != dr.value:
            failures.append(f"{name}: {dl} vs {dr}")
        rep = falsify_claim("ZAKS", alg(name), Params(bound=bound, samples=5))
        if rep.status == "COUNTEREXAMPLE":
            failures.append(f"{name}: ZAKS check {rep.status}")
    code, _ = _run_cli("check", "--algebra", "A2", "--claim", "COR_4_9", "--n", "1")
    if code != 0:
        failures.append(f"COR_4_9 on A2 exited {code}")
    verdict(10, "left/right self-injective agreement and COR_4_9 on A2", failures, json.dumps(table))


def test_criterion_11_determinism(verdict):
    runs = [["check", "--algebra", "A2", "--claim", "THM_1_4", "--n", "1", "--seed", "42"],
            ["check", "--algebra", "NAKAYAMA(2,2)", "--claim", "PROP_4_1", "--n", "1", "--seed", "0x9e37"],
            ["roundtrips", "--algebra", "DUAL2", "--samples", "30", "--seed", "5"]]
    failures = []
    for argv in runs:
        first = _run_cli(*argv)
        again = _run_cli(*argv)
        fresh = subprocess.run([sys.executable, "-m", "torsionfree_lab", *argv], capture_output=True,
                               text=True, timeout=300)
        if not (first == again and first[1] == fresh.stdout and first[0] == fresh.returncode):
            failures.append(" ".join(argv[:4]))
    verdict(11, "byte-identical reports for identical seeds", failures,
            f"{len(runs)} commands, in-process twice and in a fresh interpreter")


if __name__ == "__main__":
    t0 = time.time()
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print(f"elapsed {time.time() - t0:.1f}s")
    raise SystemExit(code)

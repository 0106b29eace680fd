"""Acceptance gate: one PASS/FAIL line per criterion."""
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from heiscat import engine, ideals, oracle, weyl
from heiscat.diagrams import hom_dim_restricted
from heiscat.ideals import WHOLE, ZERO, IdealDescriptor, Side
from heiscat.words import Simple, all_words, dual_word


@pytest.fixture
def report():
    def emit(number, label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {label}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return emit


def test_criterion_1_relations(report):
    start = time.perf_counter()
    rep = oracle.relations_selftest(4)
    elapsed = time.perf_counter() - start
    failed = [r["name"] for r in rep["relations"] if not r["pass"]]
    report(1, "defining relations hold exactly at level 4", rep["all_pass"] and elapsed < 60,
           f"{len(rep['relations'])} relations, {elapsed:.1f}s" + (f", failed {failed}" if failed else ""))


def test_criterion_2_heisenberg_iso(report):
    fwd, bwd = engine.heisenberg_iso()
    ok = (engine.matrix_compose(bwd, fwd) == engine.MorphismMatrix.identity(fwd.source)
          and engine.matrix_compose(fwd, bwd) == engine.MorphismMatrix.identity(fwd.target))
    report(2, "both round trips of du = ud + 1 are identities", ok)


def test_criterion_3_closure(report):
    start = time.perf_counter()
    rep = oracle.closure_selftest(3, 4)
    elapsed = time.perf_counter() - start
    ok = rep["pass"] and rep["non_closure"] == 0 and not rep["failures"] and elapsed < 600
    report(3, "restricted composition closes and matches the oracle", ok,
           f"{rep['pairs']} pairs, {len(rep['failures'])} failures, {elapsed:.1f}s")


def test_criterion_4_simples(report):
    simples = [Simple(i, j) for i in range(5) for j in range(5 - i)]
    bad = [(p, q) for p in simples for q in simples if hom_dim_restricted(p.word, q.word) != (p == q)]
    report(4, "simples are orthogonal with one-dimensional endomorphisms", not bad, f"{len(simples) ** 2} pairs")


def test_criterion_5_k0(report):
    bad = []
    for w in all_words(8):
        mult, _, _ = engine.decompose_object(w, with_matrices=False)
        if {s: n for s, n in mult.items() if n} != weyl.multiplicities(w):
            bad.append(w)
    for w in all_words(6):
        mult, fwd, bwd = engine.decompose_object(w)
        if not (engine.matrix_compose(bwd, fwd) == engine.MorphismMatrix.identity(fwd.source)
                and engine.matrix_compose(fwd, bwd) == engine.MorphismMatrix.identity(fwd.target)):
            bad.append(w)
    ops = 0
    for n in range(7):
        for w in all_words(n, n):
            letters = w.replace("u", "x")
            e = weyl.normal_order([letters])
            for k in range(7):
                ops += 1
                if weyl.apply_word(letters, {k: 1}) != e.apply({k: 1}):
                    bad.append((letters, k))
    witness = weyl.normal_order(["ddxx"]).coeffs == {(2, 2): 1, (1, 1): 4, (0, 0): 2}
    report(5, "decomposition multiplicities equal Weyl normal forms", not bad and witness,
           f"511 words, {ops} operator checks")


def test_criterion_6_ideal_lattice(report):
    L = 4
    right = ideals.enumerate_ideals(Side.RIGHT, L)
    left = ideals.enumerate_ideals(Side.LEFT, L)
    ok = right == [WHOLE] + [IdealDescriptor("RightChain", i) for i in range(1, L + 1)] + [ZERO]
    ok &= left == [WHOLE] + [IdealDescriptor("LeftChain", i) for i in range(1, L + 1)] + [ZERO]
    ok &= ideals.enumerate_ideals(Side.TWO_SIDED, L) == [WHOLE, ZERO]
    box = [Simple(a, b) for a in range(4) for b in range(4)]
    checked = 0
    for side in Side:
        for w in all_words(3):
            d = ideals.ideal_generated(side, [w])
            brute = ideals.closure(side, [w], L=3)
            for s in box:
                checked += 1
                ok &= (s in brute) == ideals.ideal_member(side, d, ideals.split(s.word))
    report(6, "ideal chains and brute-force closure agree", ok, f"{checked} membership checks")


def test_criterion_7_spectrum(report):
    rep = ideals.spc_report(3)
    ok = (rep["primes"] == ["Zero"] and rep["completely_prime"] and rep["tensor_product_property"]
          and all(s["support"] == [ideals.POINT] for s in rep["supports"]) and rep["support_of_zero"] == [])
    report(7, "one completely prime point with the tensor product property", ok, f"{rep['pairs_checked']} pairs")


def test_criterion_8_non_duo(report):
    right = ideals.ideal_generated(Side.RIGHT, ["u"])
    two = ideals.ideal_generated(Side.TWO_SIDED, ["u"])
    report(8, "right ideal of u is proper, two-sided ideal is everything", right != WHOLE and two == WHOLE,
           f"right {right}, two-sided {two}")


def test_criterion_9_remarks(report):
    ok = all(dual_word(dual_word(w)) == w for w in all_words(6))
    for w in all_words(3):
        big = ideals.split(w + dual_word(w) + w).as_dict().get(0, {})
        ok &= all(big.get(s, 0) >= n for s, n in ideals.split(w).as_dict().get(0, {}).items())
    points, opens = ideals.quasi_support_points(4)
    for n, found in opens.items():
        ok &= found == [IdealDescriptor("RightChain", m) for m in range(n + 1, 5)] + [ZERO]
    report(9, "duality, summand property and quasi-support opens", ok, f"{len(points)} meet-prime points")


REPORT_COMMANDS = [
    ["selftest", "relations", "--level", "3"],
    ["selftest", "closure", "--max-length", "2", "--level", "3"],
    ["spc", "--sample", "3"],
    ["quasi-support", "-L", "4"],
    ["ideal", "lattice", "--side", "right", "-L", "4"],
    ["decompose", "dduu"],
    ["--mode", "oracle", "--level", "2", "normalize", "t . t'"],
    ["normalize", "t' . (id:du - c . d') . t"],
]


def _reports() -> bytes:
    script = ("import sys\nfrom heiscat.cli import main\n"
              f"for argv in {REPORT_COMMANDS!r}:\n    main(['--format', 'json'] + argv)\n")
    return subprocess.run([sys.executable, "-c", script], capture_output=True, check=True).stdout


def test_criterion_10_determinism(report):
    first, second = _reports(), _reports()
    report(10, "JSON reports are byte-identical across runs", first == second and len(first) > 0,
           f"{len(first)} bytes")

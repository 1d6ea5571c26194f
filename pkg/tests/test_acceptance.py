"""Acceptance gate: every criterion at its stated volume, exact arithmetic.

Each test prints one PASS/FAIL line; all comparisons are equalities in the
rational coefficient field or in the value group (tolerance zero).  A fixed
seed makes every run identical.
"""

import io
import json
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import jsonschema
import pytest

from dvfields.suites import run_suite

SEED = 7
ROOT = Path(__file__).parent.parent


def _gate(number, label, suite, cases):
    res = run_suite(suite, seed=SEED, cases=cases)
    status = "PASS" if res.ok() else "FAIL"
    print(f"{status} criterion {number:2d}: {label} [{suite}, {res.cases} cases, {res.seconds:.2f}s]")
    assert res.ok(), f"criterion {number}: {res.failures[:3]}"


def test_criterion_01_valuation_laws():
    _gate(1, "field/valuation laws on random series pairs", "val-laws", 1000)


def test_criterion_02_leibniz():
    _gate(2, "Leibniz rule, exact", "leibniz", 500)


def test_criterion_02b_log_derivation_axiom():
    _gate(2, "log-derivation axiom on integral pairs", "logderiv", 500)


def test_criterion_03_difference_rule():
    _gate(3, "difference rule for log derivations", "diffs-identity", 200)


def test_criterion_04_newton_count():
    _gate(4, "root count from prescribed roots", "newton-count", 300)


def test_criterion_05_rolle():
    _gate(5, "derivative-root certificate in balls", "rolle", 100)


def test_criterion_06_specialization():
    _gate(6, "rank-2 specialization closed form + equivariance", "specialize2", 50)


def test_criterion_07_wres_homomorphism():
    _gate(7, "generalized residue is a ring homomorphism", "wres-hom", 300)


def test_criterion_08_vp_laws():
    _gate(8, "secondary valuation laws", "vp-laws", 300)


def test_criterion_09_neutralizer():
    _gate(9, "neutralizer contract", "neutralizer", 100)


def test_criterion_10_reduce_triple():
    _gate(10, "two-of-three generation with kernel coefficients", "reduce3", 100)


def test_criterion_11_density():
    _gate(11, "density witnesses, exact and append-only", "density", 100)


def test_criterion_12_vtopology():
    _gate(12, "multiplicative-axiom refutation for R-neighborhoods", "vtopology", 20)


def test_criterion_13_double_mutation():
    _gate(13, "double mutation readback", "double-mutation", 20)


def test_criterion_14_game():
    _gate(14, "adversary corpus refuted without soundness alarms", "game", 30)


def test_criterion_15_split_radical():
    _gate(15, "radical splitting identities over the divisible line", "split-radical", 100)


def test_criterion_16_cli_golden():
    from dvfields.cli import main
    from dvfields.ordgroup import ZZW
    from dvfields.parsing import format_series, parse_series

    schema = json.loads((ROOT / "docs" / "report-schema.json").read_text())
    golden = json.loads((Path(__file__).parent / "golden" / "cli_golden.json").read_text())
    failures = []
    for case in golden:
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(case["argv"])
        if out.getvalue() != case["stdout"] or code != case["exit"]:
            failures.append(f"byte mismatch for {case['argv']}")
            continue
        try:
            jsonschema.validate(json.loads(out.getvalue()), schema)
        except jsonschema.ValidationError as exc:
            failures.append(f"schema violation for {case['argv']}: {exc.message}")
    corpus = (Path(__file__).parent / "golden" / "corpus.txt").read_text().splitlines()
    for line in corpus:
        if not line.strip():
            continue
        x = parse_series(line, ZZW)
        printed = format_series(x)
        if format_series(parse_series(printed, ZZW)) != printed:
            failures.append(f"round-trip failed for {line!r}")
    status = "PASS" if not failures else "FAIL"
    print(f"{status} criterion 16: CLI golden corpus, schema, byte stability [{len(golden)} invocations]")
    assert not failures, failures[:3]

#!/usr/bin/env python3
"""End-to-end checks for the pfsched command line tool.

Usage: cli_test.py <pfsched-binary> <data-dir>
"""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
DATA = sys.argv[2]

failures = []


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=300)
    if proc.returncode != expect:
        raise AssertionError(
            "exit %d (wanted %d) for %s\nstderr: %s"
            % (proc.returncode, expect, " ".join(args), proc.stderr.strip())
        )
    return proc


def run_json(*args, expect=0):
    proc = run(*args, expect=expect)
    return json.loads(proc.stdout), proc


def check(name, fn):
    try:
        fn()
        print("ok       %s" % name)
    except Exception as exc:  # noqa: BLE001
        failures.append(name)
        print("FAILED   %s: %s" % (name, exc))


def data(name):
    return os.path.join(DATA, name)


def t_run_pf():
    doc, _ = run_json("run", data("two_jobs_single.json"))
    assert doc["command"] == "run"
    assert doc["objective_value"] == 5.0, doc["objective_value"]
    assert doc["ratios"]["pf_over_srpt"] == 1.25
    assert doc["schedule"]["completion"] == [2, 3]


def t_run_srpt():
    doc, _ = run_json("run", "--algorithm", "srpt", data("two_jobs_single.json"))
    assert doc["objective_value"] == 4.0
    assert doc["ratios"]["srpt_over_srpt"] == 1.0


def t_run_spt_related():
    doc, _ = run_json("run", "-a", "spt", data("structured_related.json"))
    assert doc["objective_value"] == 3.75
    assert doc["ratios"]["spt_over_opt"] == 1.0


def t_run_lp1_ratio():
    doc, _ = run_json("run", "--lp1", data("two_jobs_single.json"))
    assert doc["ratios"]["pf_over_lp1"] == 2.0


def t_unknown_algorithm():
    proc = run("run", "-a", "hindsight", data("two_jobs_single.json"), expect=1)
    assert "unknown algorithm" in proc.stderr


def t_missing_file():
    run("run", data("no_such_instance.json"), expect=1)


def t_certify_structured():
    doc, proc = run_json("certify", "--kind", "structured", data("structured_related.json"))
    assert "ALG <= 2*OPT" in proc.stderr
    assert doc["verdict"]["ok"] is True
    assert doc["verdict"]["feasible"] is True


def t_certify_monpsp():
    doc, proc = run_json(
        "certify", "--kind", "monpsp", "--kappa", "2", data("restricted_release.json")
    )
    assert "ALG <= 4*OPT" in proc.stderr
    assert doc["verdict"]["ok"] is True


def t_certify_general():
    doc, proc = run_json(
        "certify",
        "--kind", "general",
        "--kappa", "9",
        "--lambda", "2/3",
        data("packing_small.json"),
    )
    assert "ALG <= 27*OPT" in proc.stderr
    assert doc["verdict"]["ok"] is True


def t_certify_wrong_model():
    proc = run("certify", "--kind", "wrr", data("structured_related.json"), expect=2)
    assert "single machine" in proc.stderr


def t_certificate_roundtrip():
    doc, _ = run_json("certify", "--kind", "monpsp", data("related_release.json"))
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
        json.dump(doc["certificate"], f)
        path = f.name
    try:
        redoc, _ = run_json("certify", "--verify-file", path, data("related_release.json"))
        assert redoc["verdict"]["ok"] is True
        assert redoc["verdict"]["dual_objective"] == doc["verdict"]["dual_objective"]
    finally:
        os.unlink(path)


def t_lowerbound_nonmonotone():
    doc, _ = run_json("lowerbound", "--family", "nonmonotone")
    assert doc["monotone"] is False
    before, after = doc["job2_rate_drop"]
    assert before > after + 0.2, (before, after)


def t_lowerbound_migration():
    doc, _ = run_json("lowerbound", "--family", "migration", "--n", "100")
    assert abs(doc["ratio"] - doc["target"]) <= 0.01 * doc["target"]


def t_lowerbound_rr():
    doc, _ = run_json("lowerbound", "--family", "rr-simple", "--n", "50")
    assert doc["ratio"] > 1.9


def t_lp_time():
    doc, _ = run_json("lp", "--form", "time", data("two_jobs_single.json"))
    assert doc["optimum_value"] == 2.5


def t_lp_interval():
    doc, _ = run_json("lp", "--form", "interval", data("two_jobs_single.json"))
    assert doc["optimum_value"] > 0.0
    assert doc["pivots"] > 0


def t_round():
    doc, _ = run_json("round", "--samples", "5", data("two_jobs_single.json"))
    assert doc["all_within_bound"] is True
    assert len(doc["runs"]) == 5
    assert doc["runs"][0]["seed"] == 1


def t_sweep_header_only():
    proc = run("sweep", "--model", "single", "--seeds", "0")
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 1
    assert lines[0].split(",") == [
        "schema", "seed", "digest", "model", "n", "m", "algorithm", "objective",
        "reference", "reference_kind", "ratio", "cert_kind", "cert_feasible",
        "cert_guarantee", "cert_ok", "error",
    ]


def t_sweep_rows():
    proc = run(
        "sweep",
        "--model", "single",
        "--algorithms", "pf,srpt",
        "--reference", "srpt",
        "--seeds", "3",
        "--threads", "2",
    )
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 7, len(lines)
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == 16, line
        assert cells[15] == "", line
        assert float(cells[10]) >= 1.0 - 1e-12, line


def t_sweep_certified():
    proc = run(
        "sweep",
        "--model", "related",
        "--certify", "monpsp",
        "--reference", "none",
        "--max-release", "2",
        "--seeds", "3",
    )
    for line in proc.stdout.strip().splitlines()[1:]:
        cells = line.split(",")
        assert cells[11] == "monpsp" and cells[12] == "1" and cells[14] == "1", line


def t_digest_stable():
    a, _ = run_json("run", data("related_release.json"))
    b, _ = run_json("run", data("related_release.json"))
    assert a["result_digest"] == b["result_digest"]
    c, _ = run_json("certify", "--kind", "monpsp", data("related_release.json"))
    d, _ = run_json("certify", "--kind", "monpsp", data("related_release.json"))
    assert c["result_digest"] == d["result_digest"]


def main():
    tests = [
        ("run pf single", t_run_pf),
        ("run srpt single", t_run_srpt),
        ("run spt related", t_run_spt_related),
        ("run with lp1 baseline", t_run_lp1_ratio),
        ("unknown algorithm exits 1", t_unknown_algorithm),
        ("missing instance exits 1", t_missing_file),
        ("certify structured", t_certify_structured),
        ("certify monpsp", t_certify_monpsp),
        ("certify general", t_certify_general),
        ("certify wrong model exits 2", t_certify_wrong_model),
        ("certificate file roundtrip", t_certificate_roundtrip),
        ("lowerbound nonmonotone", t_lowerbound_nonmonotone),
        ("lowerbound migration", t_lowerbound_migration),
        ("lowerbound rr-simple", t_lowerbound_rr),
        ("lp time form", t_lp_time),
        ("lp interval form", t_lp_interval),
        ("round samples", t_round),
        ("sweep header", t_sweep_header_only),
        ("sweep rows", t_sweep_rows),
        ("sweep with certificates", t_sweep_certified),
        ("result digests stable", t_digest_stable),
    ]
    for name, fn in tests:
        check(name, fn)
    if failures:
        print("%d of %d checks failed" % (len(failures), len(tests)))
        return 1
    print("all %d checks passed" % len(tests))
    return 0


if __name__ == "__main__":
    sys.exit(main())

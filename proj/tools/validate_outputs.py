#!/usr/bin/env python3
"""Run every CLI subcommand and validate its JSON against schemas/.

usage: validate_outputs.py CLI_BINARY REPO_ROOT
"""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])


def schema(name):
    return json.loads((root / "schemas" / f"{name}.schema.json").read_text())


def run(args, expect_code=0):
    p = subprocess.run([cli, *args], capture_output=True, text=True, timeout=600)
    if p.returncode != expect_code:
        raise SystemExit(f"{args}: exit {p.returncode}, expected {expect_code}\n{p.stderr}")
    return p


failures = 0


def check(name, args):
    global failures
    try:
        jsonschema.validate(json.loads(run(args).stdout), schema(name))
        print(f"ok    {name:18s} {' '.join(args)}")
    except jsonschema.ValidationError as e:
        failures += 1
        print(f"FAIL  {name:18s} {' '.join(args)}: {e.message}")


def check_error(args, code, kind):
    global failures
    err = json.loads(run(args, code).stderr.strip().splitlines()[-1])
    try:
        jsonschema.validate(err, schema("error"))
        assert err["error"] == kind, err
        print(f"ok    error/{kind:12s} {' '.join(args)}")
    except (jsonschema.ValidationError, AssertionError) as e:
        failures += 1
        print(f"FAIL  error {' '.join(args)}: {e}")


check("normalize", ["normalize", "Y1*X1"])
check("normalize", ["normalize", "(X1 - 1i*Y1)*(X1 + 1i*Y1)", "--n", "2"])
check("degree", ["degree", "Lap"])
check("degree", ["degree", "X1 + T"])
check("invariance_check", ["invariance-check", "Sub(1/2)", "--samples", "3", "--deg", "2"])
check("represent", ["represent", "Y1*X1", "--lambda", "2", "--convention", "paper"])
check("represent", ["represent", "Lap", "--lambda", "-1"])
check("spectrum", ["spectrum", "Sub(0)", "--lambda", "1", "--K", "8"])
check("solvability", ["solvability", "Lap"])
check("solvability", ["solvability", "Sub(0)", "--alpha-scan", "0:6:0.5"])
check("solvability", ["solvability", "A"])
check("fock_audit", ["fock-audit", "--lambda", "1", "--max-n", "4"])
check("audit_identities", ["audit-identities"])

config = json.loads((root / "configs" / "solve_demo.json").read_text())
jsonschema.validate(config, schema("solve_demo_config"))
print("ok    solve_demo_config  configs/solve_demo.json")
with tempfile.TemporaryDirectory() as tmp:
    csv = pathlib.Path(tmp) / "lambda.csv"
    check("solve_demo", ["solve-demo", "--config", str(root / "configs" / "solve_demo.json"), "--csv", str(csv)])
    header = csv.read_text().splitlines()[0]
    if header != "lambda,weight,K,re,im":
        failures += 1
        print(f"FAIL  solve-demo csv header {header!r}")

check_error(["normalize", "X1 +"], 1, "syntax")
check_error(["normalize", "X3", "--n", "2"], 2, "domain")
check_error(["solvability", "X1 + T"], 2, "domain")
check_error(["spectrum", "Lap", "--lambda", "1", "--output", "csv", "--K", "0"], 2, "domain")
with tempfile.TemporaryDirectory() as tmp:
    tight = dict(config, solver=dict(config["solver"], cond_max=10.0, lambda_points=4))
    path = pathlib.Path(tmp) / "tight.json"
    path.write_text(json.dumps(tight))
    check_error(["solve-demo", "--config", str(path)], 3, "numerical")
run(["frobnicate"], 1)
print("ok    usage exit code")

sys.exit(1 if failures else 0)

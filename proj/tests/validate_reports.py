# Copyright (c) formbound contributors.
# SPDX-License-Identifier: Apache-2.0
"""Runs every subcommand, validates the reports against the schema and checks reruns."""

import json
import re
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

RUNS = [
    ["decompose", "--dim", "2", "--grid", "16", "--preset", "random"],
    ["decompose", "--dim", "3", "--grid", "16", "--preset", "stream", "--flavor", "inhomogeneous"],
    ["bmo", "--dim", "2", "--grid", "32", "--preset", "log_singular", "--delta", "0.25", "0.125"],
    ["bmo", "--dim", "3", "--grid", "16", "--preset", "vortex", "--bmo-flavor", "bmo"],
    ["carleson", "--dim", "3", "--grid", "32", "--preset", "lebesgue"],
    ["carleson", "--dim", "3", "--grid", "16", "--preset", "bump", "--all"],
    ["carleson", "--dim", "2", "--grid", "16", "--preset", "bump", "--all", "--flavor", "inhomogeneous"],
    ["capacity", "--dim", "3", "--grid", "16", "--tau", "0.75", "1.0"],
    ["capacity", "--dim", "2", "--grid", "32", "--set", "cube", "--side", "8", "--flavor", "inhomogeneous"],
    ["trace", "--dim", "3", "--grid", "16", "--preset", "bump"],
    ["trace", "--dim", "3", "--grid", "16", "--preset", "bump", "--corner", "4", "4", "4", "--side", "8"],
    ["formnorm", "--dim", "2", "--grid", "16", "--preset", "random", "--part", "skew"],
    ["formnorm", "--dim", "3", "--grid", "16", "--preset", "gradient", "--part", "nonlinear"],
    ["verdict", "--dim", "3", "--grid", "16", "--preset", "vortex"],
    ["verdict", "--dim", "2", "--grid", "16", "--preset", "lebesgue"],
    ["verdict", "--dim", "3", "--grid", "16", "--preset", "bump", "--flavor", "inhomogeneous"],
    ["magnetic", "--dim", "2", "--grid", "16", "--preset", "coulomb_gauge"],
    ["infinitesimal", "--dim", "3", "--grid", "32", "--preset", "stream"],
    ["verdict", "--dim", "2", "--grid", "16", "--preset", "stream", "--amplitude", "0.1", "--timing"],
]

FLOAT = re.compile(r"-?\d+\.\d+(?:e[-+]\d+)?|-?\d+e[-+]\d+")


def run(cli, args, out):
    proc = subprocess.run([cli, *args, "--out", str(out)], capture_output=True, text=True)
    if proc.returncode not in (0, 2):
        raise AssertionError(f"{args}: exit {proc.returncode}: {proc.stderr}")
    return proc.returncode, out.read_text()


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for i, args in enumerate(RUNS):
            code, text = run(cli, args, Path(tmp) / f"a{i}.json")
            report = json.loads(text)
            errors = sorted(validator.iter_errors(report), key=str)
            if errors:
                failures += 1
                print(f"FAIL schema {args}: {errors[0].message}")
                continue
            if report["exit_code"] != code:
                failures += 1
                print(f"FAIL exit code mismatch {args}")
            for token in FLOAT.findall(text):
                digits = re.sub(r"e.*$", "", token).lstrip("-").replace(".", "").lstrip("0")
                if len(digits) > 17:
                    failures += 1
                    print(f"FAIL more than 17 digits: {token}")
                    break
            if "--timing" in args:
                if report["timing"] is None:
                    failures += 1
                    print(f"FAIL timing missing {args}")
                if "0.10000000000000001" not in text:
                    failures += 1
                    print("FAIL amplitude not printed with 17 significant digits")
                continue
            _, again = run(cli, args, Path(tmp) / f"b{i}.json")
            if again != text:
                failures += 1
                print(f"FAIL rerun differs {args}")
            else:
                print(f"ok {' '.join(args)}")
        bad = subprocess.run([cli, "verdict", "--grid", "24", "--preset", "vortex"],
                             capture_output=True, text=True)
        if bad.returncode != 1 or not bad.stderr:
            failures += 1
            print("FAIL malformed config did not exit 1 with a diagnostic")
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

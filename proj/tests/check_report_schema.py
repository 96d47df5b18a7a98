# Copyright 2026 The semsna Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Validates the JSON output of every metric command against the schema.

usage: check_report_schema.py CLI SCHEMA DATA
"""

import json
import subprocess
import sys

import jsonschema

INVOCATIONS = [
    ["degree"],
    ["degree", "--direction", "in", "--max-length", "2"],
    ["degree", "--direction", "out", "--budget", "3"],
    ["closeness", "--direction", "either"],
    ["betweenness"],
    ["betweenness", "--exact", "--no-subsumption"],
    ["report", "--metric", "betweenness", "--direction", "either"],
    ["report", "--metric", "closeness", "--top", "2"],
    ["report", "--metric", "degree", "--max-length", "3"],
    ["oracle", "closeness"],
]


def main(argv):
    cli, schema_path, data = argv[1:4]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in INVOCATIONS:
        cmd = [cli] + args + ["--format", "json", data]
        proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
        label = " ".join(args)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        for e in errors[:3]:
            print(f"FAIL {label}: {e.json_path}: {e.message}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))

#!/usr/bin/env python3
# Copyright 2026 The structprop Authors
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
"""Runs every structprop subcommand with --json and validates the output
against the schemas in schemas/.

Usage: validate_cli_json.py STRUCTPROP_BINARY SCHEMA_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

FAMILIES = [
    "AllDifferent", "Cardinality", "Channel", "Cumulative", "NValue", "Stretch",
    "OneHotResource", "BottleneckExactOne", "RosteringWindow", "UnitCommitmentRamp",
    "DisjPolyhedral",
]


def load_registry(schema_dir):
  schemas = {}
  registry = Registry()
  for path in sorted(schema_dir.glob("*.schema.json")):
    doc = json.loads(path.read_text())
    schemas[path.name] = doc
    registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))
  return schemas, registry


def main():
  binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
  schemas, registry = load_registry(schema_dir)
  failures = 0
  checked = 0

  def check(schema_name, doc, what):
    nonlocal failures, checked
    checked += 1
    validator = jsonschema.Draft202012Validator(schemas[schema_name], registry=registry)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for error in errors[:3]:
      print(f"FAIL {what}: {'/'.join(map(str, error.path))}: {error.message}")
    failures += bool(errors)

  def run(*args, expect=0):
    proc = subprocess.run([binary, "--json", "--quiet", *args], capture_output=True, text=True)
    if proc.returncode != expect:
      raise SystemExit(f"{' '.join(args)} exited {proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout)

  with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp)
    for i, family in enumerate(FAMILIES):
      seed = str(40 + i)
      check("synth.schema.json",
            run("--seed", seed, "synth", "--family", family, "--out", tmp), f"synth {family}")
      stem = out / f"{family}_{seed}"
      mps = str(stem.with_suffix(".mps"))
      check("sidecar.schema.json", json.loads(stem.with_suffix(".json").read_text()),
            f"sidecar {family}")
      records = run("detect", mps, "--records-out", str(out / f"{family}.records.json"))
      check("records.schema.json", records, f"detect {family}")
      check("propagate.schema.json",
            run("propagate", mps, "--records", str(out / f"{family}.records.json"),
                "--with-rows"), f"propagate {family}")
      check("search.schema.json", run("--timing", "search", mps, "--node-limit", "20000"),
            f"search {family}")
    check("gate_report.schema.json",
          run("verify", "--family", "Cardinality", "--detector-instances", "3",
              "--soundness-instances", "3"), "verify")
    check("bench_report.schema.json",
          run("--timing", "bench", "--dir", tmp, "--time-limit", "10"), "bench")

  print(f"{checked - failures}/{checked} JSON documents match their schemas")
  return 1 if failures else 0


if __name__ == "__main__":
  sys.exit(main())

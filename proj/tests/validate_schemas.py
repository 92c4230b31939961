#!/usr/bin/env python3
"""Run crn-bound on the sample networks and validate every JSON document it emits."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def load_schemas(directory):
    schemas = {}
    for path in sorted(pathlib.Path(directory).glob("*.schema.json")):
        schema = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        schemas[path.name.split(".")[0]] = jsonschema.Draft202012Validator(schema)
    return schemas


def run(exe, *args, expect=(0,)):
    proc = subprocess.run([exe, *args], capture_output=True, text=True, timeout=600)
    if proc.returncode not in expect:
        raise RuntimeError(f"{' '.join(args)} exited {proc.returncode}: {proc.stderr}")
    return proc.stdout


def check(validators, kind, doc, label, failures):
    errors = sorted(validators[kind].iter_errors(doc), key=lambda e: list(e.path))
    for e in errors:
        failures.append(f"{label} [{kind}] /{'/'.join(map(str, e.path))}: {e.message}")
    print(f"{'ok  ' if not errors else 'FAIL'} {label} ({kind})")


def check_report(validators, report, label, failures):
    check(validators, "report", report, label, failures)
    if "permanence" in report:
        check(validators, "permanence", report["permanence"], label + " permanence", failures)


def main():
    exe, schema_dir, data_dir = sys.argv[1:4]
    validators = load_schemas(schema_dir)
    missing = {"report", "permanence", "campaign", "analysis", "summary"} - set(validators)
    if missing:
        print(f"missing schemas: {sorted(missing)}")
        return 1

    failures = []
    networks = sorted(pathlib.Path(data_dir).glob("*.crn"))
    if not networks:
        print("no sample networks found")
        return 1
    with tempfile.TemporaryDirectory() as tmp:
        for net in networks:
            name = net.stem
            doc = json.loads(run(exe, "analyze", str(net), "--format", "json"))
            check(validators, "analysis", doc, name, failures)

            out = pathlib.Path(tmp) / name
            x0 = ",".join(["1.5"] * len(doc["species"]))
            run(exe, "simulate", str(net), "--x0", x0, "--t-end", "10", "--out", str(out), "--format", "json")
            check(validators, "summary", json.loads((out / "summary.json").read_text()), name, failures)

            report = json.loads(run(exe, "certify", str(net), "--trials", "2", "--samples", "500",
                                    "--permanence-delta", "0.05", expect=(0, 4, 5, 6)))
            check_report(validators, report, name, failures)

    campaign = json.loads(run(exe, "campaign", "--random-spec", '{"N": [2, 3], "num_complexes": [2, 4]}',
                              "--count", "3", "--trials", "1", "--samples", "300", "--t-end", "5"))
    check(validators, "campaign", campaign, "campaign", failures)
    for entry in campaign["networks"]:
        check_report(validators, entry["report"], f"campaign network {entry['index']}", failures)

    for f in failures:
        print(f)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

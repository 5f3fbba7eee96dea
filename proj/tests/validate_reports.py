"""Runs the CLI with --json and validates every report against the published schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
schema = json.loads((root / "schema" / "report.schema.json").read_text())
spec = root / "examples_spec"

runs = [
    ["differentiate", "--operad", "com", "x^2"],
    ["compose", "--operad", "ass", "--f", "x*y; y", "--g", "a*b"],
    ["check-operad", "--operad", "lie", "--arity", "3"],
    ["check-dc", "--operad", "pointed", "--trials", "50"],
    ["check-lambda", "--operad", "ass", "--trials", "20", "--arity", "3"],
    ["check-algebra", "--algebra", str(spec / "cubic.toml")],
    ["tangent", "--algebra", str(spec / "dualnumbers.toml")],
    ["tangent-check", "--algebra", str(spec / "upper_triangular.toml")],
    ["derivations", "--algebra", str(spec / "dualnumbers.toml")],
    ["diff-object", "--algebra", str(spec / "lie_he.toml")],
    ["kahler", "--algebra", str(spec / "cubic.toml")],
    ["adjoint-tangent", "--algebra", str(spec / "dualnumbers.toml")],
    ["check-adjunction", "--operad", "com", "--free", "1", "--weight", "3"],
    ["check-cdc", "--operad", "com", "--trials", "30"],
    ["--no-verify", "check-algebra", "--algebra", str(spec / "nonassociative.toml")],
]

failures = 0
for args in runs:
    outs = []
    for _ in range(2):
        p = subprocess.run([cli, "--json", "--seed", "5", *args], capture_output=True, text=True)
        outs.append(p.stdout)
    try:
        jsonschema.validate(json.loads(outs[0]), schema)
        assert outs[0] == outs[1], "reports differ between identical runs"
        print("ok  ", " ".join(args))
    except Exception as e:  # noqa: BLE001
        failures += 1
        print("FAIL", " ".join(args), "-", e)
sys.exit(1 if failures else 0)

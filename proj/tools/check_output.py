#!/usr/bin/env python3
# Copyright 2026 The ay-surfaces Authors
# SPDX-License-Identifier: Apache-2.0
"""Runs the ay tool and validates what it prints or writes.

  check_output.py --ay BIN --schemas DIR [--file PATH --file-kind json|svg] -- ARGS...

stdout must be a report matching report.schema.json (or, with --raw, a
surface matching surface.schema.json).  --file checks a written file too.
"""

import argparse
import json
import pathlib
import subprocess
import sys
import xml.etree.ElementTree as ET

import jsonschema
from referencing import Registry, Resource


def registry(schema_dir):
    resources = []
    for path in sorted(schema_dir.glob("*.schema.json")):
        schema = json.loads(path.read_text())
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


def validate(doc, name, reg):
    schema = reg.get_or_retrieve(name).value.contents
    jsonschema.Draft202012Validator(schema, registry=reg).validate(doc)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ay", required=True)
    ap.add_argument("--schemas", required=True, type=pathlib.Path)
    ap.add_argument("--raw", action="store_true", help="stdout is a surface, not a report")
    ap.add_argument("--file")
    ap.add_argument("--file-kind", choices=["json", "svg"])
    ap.add_argument("--expect-code", type=int, default=0)
    ap.add_argument("args", nargs=argparse.REMAINDER)
    opt = ap.parse_args()
    args = opt.args[1:] if opt.args[:1] == ["--"] else opt.args

    reg = registry(opt.schemas)
    first = subprocess.run([opt.ay, *args], capture_output=True, text=True)
    second = subprocess.run([opt.ay, *args], capture_output=True, text=True)
    if first.returncode != opt.expect_code:
        sys.exit(f"exit code {first.returncode}, expected {opt.expect_code}\n{first.stderr}")
    if first.stdout != second.stdout:
        sys.exit("output differs between two identical runs")

    doc = json.loads(first.stdout)
    validate(doc, "surface.schema.json" if opt.raw else "report.schema.json", reg)
    if not opt.raw and doc["exit_code"] != first.returncode:
        sys.exit("exit_code field does not match the process exit code")

    if opt.file:
        path = pathlib.Path(opt.file)
        if opt.file_kind == "svg":
            root = ET.parse(path).getroot()
            if not root.tag.endswith("svg"):
                sys.exit("root element is not svg")
        else:
            validate(json.loads(path.read_text()), "surface.schema.json", reg)
    print("ok:", " ".join(args))


if __name__ == "__main__":
    main()

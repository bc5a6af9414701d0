"""Machine-readable JSON reports with a byte-stable layout.

Every CLI invocation emits one report object: the echoed command,
normalized inputs, results, and a list of verified claims with pass/fail
flags.  Serialization sorts keys and uses fixed separators so identical
inputs and seeds produce identical bytes.  A bundled JSON schema pins the
envelope; reports validate against it in the test suite.
"""

import json
from pathlib import Path

from . import __version__

TOOL_NAME = "kummerlab"

with open(Path(__file__).parent / "report_schema.json", encoding="utf-8") as _fh:
    REPORT_SCHEMA = json.load(_fh)


def claim(cid, description, passed, details=None):
    out = {"id": cid, "description": description, "passed": bool(passed)}
    if details is not None:
        out["details"] = details
    return out


def make_report(command, inputs, results, claims, seeds=None, field_extensions=None):
    return {
        "tool": {"name": TOOL_NAME, "version": __version__},
        "command": list(command),
        "inputs": inputs,
        "results": results,
        "seeds": seeds or {},
        "field_extensions": sorted(set(field_extensions or [])),
        "claims": claims,
        "passed": all(c["passed"] for c in claims),
    }


def render(report):
    return json.dumps(report, sort_keys=True, indent=2,
                      separators=(",", ": ")) + "\n"


def emit(report, out=None):
    text = render(report)
    if out in (None, "json", "-"):
        import sys
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report["passed"] else 1


def validate_report(report):
    import jsonschema
    jsonschema.validate(report, REPORT_SCHEMA)

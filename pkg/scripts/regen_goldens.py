"""Rewrite tests/golden/<name>.out (text mode) and <name>.json (JSON mode) from the current CLI."""

import contextlib
import io
import json
from pathlib import Path

from lcfield.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def run(args):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(args)
    return code, out.getvalue(), err.getvalue()


def main_():
    cases = json.loads((GOLDEN / "cases.json").read_text())
    for case in cases:
        code, out, err = run(case["args"])
        if code != case["exit"]:
            raise SystemExit(f"{case['name']}: exit {code}, expected {case['exit']}\n{err}")
        (GOLDEN / f"{case['name']}.out").write_text(out + err)
        if code == 0:
            _, jout, _ = run(case["args"] + ["--json"])
            (GOLDEN / f"{case['name']}.json").write_text(jout)
        print(f"{case['name']}: exit {code}")


if __name__ == "__main__":
    main_()

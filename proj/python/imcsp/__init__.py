"""Python access to the imcsp solvers through the JSON command interface."""

import json
import os
import tempfile

from ._imcsp import classify_label, run

__all__ = ["run", "classify_label", "CliError", "cli", "classify", "solve", "generate"]


class CliError(RuntimeError):
    def __init__(self, code, message):
        super().__init__(f"exit {code}: {message.strip()}")
        self.code = code


def cli(*args):
    """Run a command and decode its JSON output."""
    code, out, err = run([str(a) for a in args])
    if code != 0:
        raise CliError(code, err)
    return json.loads(out)


def classify(r, S):
    return cli("classify", "--r", r, "--S", ",".join(str(s) for s in S))


def generate(kind, seed=0, **params):
    args = ["gen", "--kind", kind, "--seed", seed]
    for key, value in params.items():
        args += ["--" + key.replace("_", "-"), value]
    return cli(*args)


def solve(instance, **flags):
    """Solve an instance given as a dict; flags map to command-line options."""
    fd, path = tempfile.mkstemp(suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(instance, fh)
        args = ["solve", "--input", path]
        for key, value in flags.items():
            opt = "--" + key.replace("_", "-")
            if value is True:
                args.append(opt)
            elif value is not False and value is not None:
                args += [opt, value]
        return cli(*args)
    finally:
        os.unlink(path)

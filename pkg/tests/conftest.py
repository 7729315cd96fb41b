"""Shared fixtures for the test suite."""

import contextlib
import io

import pytest

from schreier_kit import cli


@pytest.fixture
def run_cli():
    """Drive the CLI in-process; returns (exit code, stdout, stderr)."""

    def run(argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli.main(argv)
        return code, out.getvalue(), err.getvalue()

    return run

# Copyright 2026 The corpus-forge Authors
# SPDX-License-Identifier: Apache-2.0

import os
import subprocess

import pytest


def pytest_addoption(parser):
    parser.addoption("--cli", action="store", default=os.environ.get("CORPUS_FORGE_CLI", "corpus-forge"),
                     help="path to the corpus-forge binary")


@pytest.fixture(scope="session")
def cli(request):
    exe = request.config.getoption("--cli")

    def run(*args, env=None, check=None):
        full_env = dict(os.environ)
        full_env.pop("CORPUS_FORGE_WORKERS", None)
        if env:
            full_env.update(env)
        proc = subprocess.run([exe, *map(str, args)], capture_output=True, text=True, env=full_env, timeout=300)
        if check is not None:
            assert proc.returncode == check, proc.stderr
        return proc

    return run

from __future__ import annotations

import os
import subprocess
import sys
from pathlib import Path

import pytest

import maratona
from debmap.repo import PackageUniverse, load_universe, render_index, scan_repository

SRC_DIR = Path(__file__).resolve().parent.parent / "src"


@pytest.fixture(scope="session")
def maratona_metas():
    return maratona.metas()


@pytest.fixture(scope="session")
def maratona_universe(maratona_metas) -> PackageUniverse:
    # Same package order a scan would produce: sorted by name.
    return PackageUniverse(
        [maratona_metas[name] for name in sorted(maratona_metas)]
    )


@pytest.fixture(scope="session")
def maratona_repo(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("repo")
    maratona.build_repo(root)
    return root


@pytest.fixture(scope="session")
def maratona_index(maratona_repo) -> str:
    return render_index(scan_repository(maratona_repo))


@pytest.fixture(scope="session")
def maratona_index_file(maratona_index, tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("index") / "Packages"
    path.write_text(maratona_index, encoding="utf-8")
    return path


def run_cli(*args: str, cwd: Path | None = None) -> subprocess.CompletedProcess:
    """Run the installed CLI in a fresh interpreter, pipes for both streams."""
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(
        [str(SRC_DIR)] + ([env["PYTHONPATH"]] if env.get("PYTHONPATH") else [])
    )
    return subprocess.run(
        [sys.executable, "-m", "debmap", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
        env=env,
    )


@pytest.fixture()
def cli():
    return run_cli

from __future__ import annotations

import pytest

from algstat.enumeration import build_table


@pytest.fixture(scope="session")
def cond_cache(tmp_path_factory):
    """On-disk cache shared by every test that builds conditional tables,
    so each distinct condition is enumerated once per run."""
    return tmp_path_factory.mktemp("cond-tables")


@pytest.fixture(scope="session")
def table_l12():
    return build_table(12)


@pytest.fixture(scope="session")
def table_l22():
    return build_table(22)


@pytest.fixture(scope="session")
def table_l24():
    return build_table(24)

import pytest

from qdetect import build_ghsz, build_rt_analogue, save_scenario


@pytest.fixture(scope="session")
def ghsz():
    return build_ghsz()


@pytest.fixture(scope="session")
def rt():
    return build_rt_analogue()


@pytest.fixture(scope="session")
def ghsz_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("scenarios") / "ghsz.json"
    save_scenario(build_ghsz(), path)
    return str(path)

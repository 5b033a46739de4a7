import pytest

from arrwwid import catalog


@pytest.fixture(scope="session")
def quadtree():
    return catalog.builtin("quadtree").ruleset


@pytest.fixture(scope="session")
def daun():
    return catalog.builtin("daun").ruleset


@pytest.fixture(scope="session")
def hilbert():
    return catalog.builtin("hilbert").ruleset


@pytest.fixture(scope="session")
def dekking():
    return catalog.builtin("dekking").ruleset


@pytest.fixture(scope="session")
def kochel():
    return catalog.builtin("kochel").ruleset


@pytest.fixture(scope="session")
def zorder():
    return catalog.builtin("zorder").ruleset


@pytest.fixture(scope="session")
def peano():
    return catalog.builtin("peano").ruleset


@pytest.fixture(scope="session")
def coil():
    return catalog.builtin("coil").ruleset


@pytest.fixture(scope="session")
def ar2w2():
    return catalog.builtin("ar2w2").ruleset


@pytest.fixture(scope="session")
def lifted_daun():
    return catalog.builtin("lifted-daun").ruleset


@pytest.fixture(scope="session")
def cube():
    return catalog.builtin("cube").ruleset


@pytest.fixture(scope="session")
def coil3d():
    return catalog.builtin("coil3d").ruleset


@pytest.fixture(scope="session")
def zorder3d():
    return catalog.builtin("zorder3d").ruleset

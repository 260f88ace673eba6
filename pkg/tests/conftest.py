import pytest

from ordgroupoid import corpus


@pytest.fixture(scope="session")
def all_semigroups():
    return corpus.corpus()


@pytest.fixture(scope="session")
def lc_semigroups(all_semigroups):
    from ordgroupoid import semigroups

    return {
        name: S
        for name, S in all_semigroups.items()
        if semigroups.classify(S).LC
    }


@pytest.fixture(scope="session")
def b2(all_semigroups):
    return all_semigroups["b2"]

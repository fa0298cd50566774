import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fbas_centrality import Fbas, load_bundled

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def slice_maps(draw, min_nodes=1, max_nodes=8, max_slices=3):
    """Random ``{node: [set, ...]}`` with every node in each of its slices."""
    n = draw(st.integers(min_nodes, max_nodes))
    names = [f"v{k:02d}" for k in range(n)]
    out = {}
    for i, v in enumerate(names):
        masks = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=max_slices))
        out[v] = [{names[j] for j in range(n) if (m | 1 << i) >> j & 1} for m in masks]
    return out


@st.composite
def fbases(draw, min_nodes=1, max_nodes=8, max_slices=3):
    return Fbas.from_mapping(draw(slice_maps(min_nodes, max_nodes, max_slices)))


@pytest.fixture(scope="session")
def hub():
    return load_bundled("hub")


@pytest.fixture(scope="session")
def hub_split():
    return load_bundled("hub_split")


@pytest.fixture(scope="session")
def star():
    return load_bundled("star")


@pytest.fixture(scope="session")
def star_tight():
    return load_bundled("star_tight")


# one summary line per acceptance criterion

_VERDICTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, label = marker.args
        _VERDICTS.append((number, label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, label, outcome in _VERDICTS:
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{tag}  [{number}] {label}")
    failed = sum(1 for *_, o in _VERDICTS if o != "passed")
    terminalreporter.write_line(f"{len(_VERDICTS) - failed} passed, {failed} failed")

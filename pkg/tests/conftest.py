import pytest

from homstab.complex import SimplicialComplex

# minimal 6-vertex triangulation of the real projective plane
RP2_TRIANGLES = [
    (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
    (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5),
]

_acceptance_results = []


@pytest.fixture
def circle():
    return SimplicialComplex(3, ((0, 1), (0, 2), (1, 2)))


@pytest.fixture
def filled_triangle():
    return SimplicialComplex.closure([(0, 1, 2)])


@pytest.fixture
def rp2():
    return SimplicialComplex.closure(RP2_TRIANGLES)


@pytest.fixture
def torus():
    # 3x3 grid with opposite sides identified
    def v(i, j):
        return (i % 3) * 3 + (j % 3)
    tris = []
    for i in range(3):
        for j in range(3):
            tris.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            tris.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return SimplicialComplex.closure(tris)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        name = marker.args[0] if marker.args else item.name
        _acceptance_results.append((name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{tag}] {name}")

import itertools

from hypothesis import strategies as st

from topo_pools import Complex


def size_vectors(max_total, min_pools=2):
    """Every ordered size vector with at least ``min_pools`` pools and at most ``max_total`` miners."""
    out = []
    for total in range(min_pools, max_total + 1):
        for q in range(min_pools, total + 1):
            for cut in itertools.combinations(range(1, total), q - 1):
                bounds = (0,) + cut + (total,)
                out.append(tuple(b - a for a, b in zip(bounds, bounds[1:])))
    return out


@st.composite
def small_complexes(draw, max_vertex=7, max_facets=5):
    verts = st.integers(0, max_vertex)
    facets = draw(st.lists(st.frozensets(verts, min_size=1, max_size=4), min_size=1, max_size=max_facets))
    return Complex(facets)


pool_sizes = st.lists(st.integers(1, 4), min_size=2, max_size=4).map(tuple)


# one summary line per acceptance criterion, printed after the run
_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1].split("[")[0]
        prev = _criteria.get(name, "PASS")
        _criteria[name] = "FAIL" if report.outcome != "passed" or prev == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(_criteria.items()):
        terminalreporter.write_line(f"{verdict}  {name}")

import os

from hypothesis import HealthCheck, settings, strategies as st

from tuttearr.core import Arrangement, Hyperplane

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

FAMILIES = (
    "braid", "coxeter_b", "coxeter_d", "threshold", "shi",
    "linial", "semiorder", "catalan", "generic_deformation",
)


@st.composite
def hyperplanes(draw, n, lo=-2, hi=2):
    normal = draw(st.lists(st.integers(lo, hi), min_size=n, max_size=n).filter(any))
    offset = draw(st.integers(lo, hi))
    return Hyperplane(tuple(normal), offset)


@st.composite
def arrangements(draw, max_n=4, max_m=8, central=False):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    hs = draw(st.lists(hyperplanes(n), min_size=m, max_size=m))
    if central:
        hs = [Hyperplane(h.normal, 0) for h in hs]
    return Arrangement(n, tuple(hs))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])

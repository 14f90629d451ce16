import hypothesis.strategies as st
from hypothesis import settings

from cospankit.cospan import Cospan
from cospankit.finset import canonical_set, make_fn

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def finsets(draw, prefix="x", max_size=4, min_size=0):
    return canonical_set(draw(st.integers(min_size, max_size)), prefix)


@st.composite
def functions(draw, dom, cod):
    if len(dom) and not len(cod):
        raise ValueError("no such function")
    return make_fn(dom, cod, {x: draw(st.sampled_from(cod.elements)) for x in dom})


@st.composite
def functions_between(draw, max_size=4, dprefix="a", cprefix="b"):
    A = draw(finsets(dprefix, max_size))
    B = draw(finsets(cprefix, max_size, min_size=1 if len(A) else 0))
    return draw(functions(A, B))


@st.composite
def cospans(draw, A=None, B=None, max_size=3):
    A = A if A is not None else draw(finsets("a", max_size))
    B = B if B is not None else draw(finsets("b", max_size))
    X = draw(finsets("x", max_size, min_size=1 if len(A) + len(B) else 0))
    return Cospan(A, B, X, draw(functions(A, X)), draw(functions(B, X)))


@st.composite
def spans(draw, max_size=4):
    """``f: A → B``, ``g: A → C``."""
    A = draw(finsets("a", max_size))
    lo = 1 if len(A) else 0
    B, C = draw(finsets("b", max_size, lo)), draw(finsets("c", max_size, lo))
    return draw(functions(A, B)), draw(functions(A, C))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

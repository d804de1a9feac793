import os

from hypothesis import HealthCheck, settings, strategies as st

from nclaurent import freegroup as fg
from nclaurent.ncpoly import NCPoly

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

syllables = st.tuples(st.sampled_from(fg.GENERATORS), st.integers(-3, 3))
raw_words = st.lists(syllables, max_size=6)
words = raw_words.map(fg.reduce)


@st.composite
def polys(draw, max_terms=4, coeffs=st.integers(-3, 3)):
    terms = draw(st.lists(st.tuples(words, coeffs), max_size=max_terms))
    out = {}
    for w, c in terms:
        out[w] = out.get(w, 0) + c
    return NCPoly(out)


positive_polys = polys(coeffs=st.integers(1, 3))

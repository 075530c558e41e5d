"""Hypothesis strategies built on the seeded generators."""

from hypothesis import strategies as st

from decexc.generate import TermGen, term_spec
from decexc.syntax import ZERO

import random

SPEC2 = term_spec(2)


@st.composite
def decorated_terms(draw, spec=SPEC2, max_depth=5):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    gen = TermGen(spec, rng)
    src = draw(st.sampled_from(gen.types + [ZERO]))
    return gen.term(src, draw(st.integers(0, max_depth)))

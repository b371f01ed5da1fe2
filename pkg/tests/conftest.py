"""Shared strategies and frame generators for the test suite."""

from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from deontic import (
    And, Atom, BOTTOM, FrameProperty, Iff, Implies, NeighbourhoodModel, Not,
    Obl, Or, PermS, PermW, TOP, check_property, supplementation_closure,
)


def formulas(atom_names: str = "abc", max_leaves: int = 25) -> st.SearchStrategy:
    base = st.one_of(
        st.builds(Atom, st.sampled_from(list(atom_names))),
        st.just(TOP),
        st.just(BOTTOM),
    )
    return st.recursive(
        base,
        lambda sub: st.one_of(
            st.builds(Not, sub),
            st.builds(Obl, sub),
            st.builds(PermS, sub),
            st.builds(PermW, sub),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub),
            st.builds(Iff, sub, sub),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def models(draw, max_worlds: int = 4, atom_names: str = "abc", max_sets: int = 3):
    n = draw(st.integers(1, max_worlds))
    worlds = tuple(f"w{i + 1}" for i in range(n))
    world_sets = st.frozensets(st.sampled_from(worlds), max_size=n)
    neighbourhood = st.frozensets(world_sets, max_size=max_sets)
    n_obl = {w: draw(neighbourhood) for w in worlds}
    n_perm = {w: draw(neighbourhood) for w in worlds}
    valuation = {a: draw(world_sets) for a in atom_names}
    return NeighbourhoodModel(worlds, n_obl, n_perm, valuation)


# ---------------------------------------------------------------------------
# Random frames satisfying a frame condition, by repair

def random_frame(rng: random.Random, max_worlds: int = 4, max_sets: int = 3) -> NeighbourhoodModel:
    n = rng.randint(1, max_worlds)
    worlds = tuple(f"w{i + 1}" for i in range(n))

    def rand_set():
        return frozenset(w for w in worlds if rng.random() < 0.5)

    def rand_col():
        return frozenset(rand_set() for _ in range(rng.randint(0, max_sets)))

    return NeighbourhoodModel(
        worlds, {w: rand_col() for w in worlds}, {w: rand_col() for w in worlds}, {}
    )


def _repair_once(m: NeighbourhoodModel, prop: FrameProperty) -> NeighbourhoodModel | None:
    """One repair step toward satisfying ``prop``; None when already satisfied."""
    wit = check_property(m, prop)
    if wit is None:
        return None
    n_obl = {w: set(col) for w, col in m.n_obl.items()}
    n_perm = {w: set(col) for w, col in m.n_perm.items()}
    w = wit.world
    if prop in (FrameProperty.PS_COHERENT, FrameProperty.PW_COHERENT):
        # drop the offending obligation set; keeps permission conditions intact
        n_obl[w].discard(frozenset(m.worlds) - wit.x)
        if prop is FrameProperty.PW_COHERENT:
            n_obl[w].discard(wit.x)
    elif prop is FrameProperty.O_SUPPLEMENTED:
        n_obl[w].add(wit.x)
        n_obl[w].add(wit.y)
    elif prop is FrameProperty.P_SUPPLEMENTED:
        n_perm[w].add(wit.x)
        n_perm[w].add(wit.y)
    else:
        n_perm[w].add(wit.x)
        if prop in (FrameProperty.AFCP_P, FrameProperty.IFCP_P) and wit.y is not None:
            n_perm[w].add(wit.y)
    return NeighbourhoodModel(
        m.worlds,
        {w_: frozenset(col) for w_, col in n_obl.items()},
        {w_: frozenset(col) for w_, col in n_perm.items()},
        dict(m.valuation),
    )


def satisfying_frame(
    rng: random.Random,
    props: frozenset[FrameProperty] | set[FrameProperty],
    max_worlds: int = 4,
) -> NeighbourhoodModel:
    """A random frame repaired until every requested condition holds."""
    props = set(props)
    while True:
        m = random_frame(rng, max_worlds)
        for p in props & {FrameProperty.O_SUPPLEMENTED}:
            m = supplementation_closure(m, "O")
        for p in props & {FrameProperty.P_SUPPLEMENTED}:
            m = supplementation_closure(m, "Ps")
        for _ in range(60):
            progress = False
            for p in props:
                repaired = _repair_once(m, p)
                if repaired is not None:
                    m = repaired
                    progress = True
            if not progress:
                return m
        # did not converge; resample


@pytest.fixture
def rng():
    return random.Random(20240811)

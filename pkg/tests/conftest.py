"""Shared battery of graphs and profiles used across the suite."""

from __future__ import annotations

import pytest

import stograph as sg


@pytest.fixture(scope="session")
def ray_profile():
    return sg.build_spherically_symmetric(0, 24)


@pytest.fixture(scope="session")
def square_profile():
    return sg.build_spherically_symmetric(2, 24)


@pytest.fixture(scope="session")
def cubic_profile():
    return sg.build_spherically_symmetric(3, 32)


@pytest.fixture(scope="session")
def exp2_profile():
    return sg.build_spherically_symmetric("exp", 20)


@pytest.fixture(scope="session")
def factorial_profile():
    return sg.build_spherically_symmetric("factorial", 18)


@pytest.fixture(scope="session")
def kary2_profile():
    return sg.build_kary_tree(2, 22)


@pytest.fixture(scope="session")
def kary3_profile():
    return sg.build_kary_tree(3, 16)


@pytest.fixture(scope="session")
def path_window():
    return sg.build_path(60)


@pytest.fixture(scope="session")
def pendant_window():
    return sg.build_pendant_tree(lambda n: n, 40)


@pytest.fixture(scope="session")
def glued_quotient(kary2_profile, cubic_profile):
    tree_q = sg.radial_quotient_window(kary2_profile, 14)
    gs_q = sg.radial_quotient_window(cubic_profile, 14)
    return sg.glue_at_edge(tree_q, gs_q, 0, 0, 1.0)

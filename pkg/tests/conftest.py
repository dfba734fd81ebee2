import json

import pytest

from graphprod import corpus, parse_presentation


@pytest.fixture(scope="session")
def path_racg():
    return corpus.build(corpus.PATH_RACG)


@pytest.fixture(scope="session")
def star_racg():
    return corpus.build(corpus.STAR_RACG)


@pytest.fixture(scope="session")
def free_zz():
    return corpus.build(corpus.FREE_ZZ)


@pytest.fixture(scope="session")
def edge_zz():
    return corpus.build(corpus.EDGE_ZZ)


@pytest.fixture(scope="session")
def triangle_mixed():
    return corpus.build(corpus.TRIANGLE_MIXED)


@pytest.fixture(scope="session")
def single_z():
    return parse_presentation(json.dumps({"vertices": [{"name": "x", "group": "Z"}], "edges": []}))


@pytest.fixture(scope="session")
def all_presentations(path_racg, star_racg, free_zz, edge_zz, triangle_mixed):
    return {
        "path-racg": path_racg,
        "star-racg": star_racg,
        "free-zz": free_zz,
        "edge-zz": edge_zz,
        "triangle-mixed": triangle_mixed,
    }

"""Shared fixtures: the expensive catalogs and derivations are built once
per session and reused across test modules."""

from __future__ import annotations

import random

import pytest

from starcrit.constructions import critical_catalog, unique_c4_critical
from starcrit.generate import EnumSpec, enumerate_cycle_free
from starcrit.graphs import Graph


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(n, adj)


@pytest.fixture(scope="session")
def c5free_order11():
    catalog, record = enumerate_cycle_free(EnumSpec(11, 5, 3))
    assert record.completed
    return catalog


@pytest.fixture(scope="session")
def c5free_order12():
    catalog, record = enumerate_cycle_free(EnumSpec(12, 5, 3))
    assert record.completed
    return catalog


@pytest.fixture(scope="session")
def c6free_order15():
    catalog, record = enumerate_cycle_free(EnumSpec(15, 6, 3))
    assert record.completed
    return catalog


@pytest.fixture(scope="session")
def c4_critical():
    return unique_c4_critical()


@pytest.fixture(scope="session")
def c4_catalog():
    catalog, record = enumerate_cycle_free(EnumSpec(13, 4, 4))
    assert record.completed
    return catalog


@pytest.fixture(scope="session")
def critical_catalogs():
    return {n: critical_catalog(n) for n in range(5, 10)}

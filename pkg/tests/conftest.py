# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

from __future__ import annotations

import pytest

from qclaw import configure_logging, make_rng, reset_defaults
from qclaw.oracle import FunctionInstance, GraphInstance


@pytest.fixture(autouse=True)
def _reset_config():
    """
    Every test starts from the builtin defaults and a fresh logging setup.
    """
    reset_defaults()
    configure_logging()
    yield
    reset_defaults()


@pytest.fixture(name="rng")
def _rng():
    return make_rng(1234)


@pytest.fixture(name="triangle_graph")
def _triangle_graph():
    """
    A 4-cycle 1-2-3-4 plus the chord (1, 3): triangles 123 and 134.
    """
    return GraphInstance.of(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])


@pytest.fixture(name="small_claw_pair")
def _small_claw_pair():
    return FunctionInstance.of([5, 3, 9, 1]), FunctionInstance.of([7, 9, 2, 8])

# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Comparison-model quantum search for claws, collisions and triangles,
simulated with exact query accounting.
"""

from __future__ import annotations

from qclaw import (
    adversary,
    amplify,
    claw,
    oracle,
    processors,
    reports,
    testing,
    triangle,
    typing,
)
from qclaw._config import (
    configure,
    configure_logging,
    configure_once,
    get_config,
    get_logger,
    is_configured,
    make_rng,
    reset_defaults,
    schedule_constants,
)
from qclaw.adversary import FamilyKind, enumerate_family, relation_params
from qclaw.claw import (
    both_ordered_claw,
    classical_claw,
    classical_sort_ed,
    collision_k_repeated,
    collision_two_to_one,
    element_distinctness,
    generic_claw_finder,
    ordered_claw,
    ordered_collision,
)
from qclaw.exceptions import (
    ContractError,
    DegenerateError,
    DomainError,
    InstanceFormatError,
    QClawError,
    ResourceError,
)
from qclaw.oracle import (
    ClawPair,
    ComparisonOracle,
    FunctionInstance,
    GraphInstance,
    QueryLedger,
    load_instance,
)
from qclaw.reports import RunReport, Verdict
from qclaw.triangle import TriangleResult, find_triangle, grover_all_triples


__title__ = "qclaw"

__license__ = "MIT"


__all__ = [
    "ClawPair",
    "ComparisonOracle",
    "ContractError",
    "DegenerateError",
    "DomainError",
    "FamilyKind",
    "FunctionInstance",
    "GraphInstance",
    "InstanceFormatError",
    "QClawError",
    "QueryLedger",
    "ResourceError",
    "RunReport",
    "TriangleResult",
    "Verdict",
    "adversary",
    "amplify",
    "both_ordered_claw",
    "claw",
    "classical_claw",
    "classical_sort_ed",
    "collision_k_repeated",
    "collision_two_to_one",
    "configure",
    "configure_logging",
    "configure_once",
    "element_distinctness",
    "enumerate_family",
    "find_triangle",
    "generic_claw_finder",
    "get_config",
    "get_logger",
    "grover_all_triples",
    "is_configured",
    "load_instance",
    "make_rng",
    "oracle",
    "ordered_claw",
    "ordered_collision",
    "processors",
    "relation_params",
    "reports",
    "reset_defaults",
    "schedule_constants",
    "testing",
    "triangle",
    "typing",
]


configure_logging()


def __getattr__(name: str) -> str:
    if name != "__version__":
        msg = f"module {__name__} has no attribute {name}"
        raise AttributeError(msg)

    from importlib.metadata import version

    return version("qclaw")

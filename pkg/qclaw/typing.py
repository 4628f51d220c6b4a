# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Type information used throughout *qclaw*.
"""

from __future__ import annotations

from typing import Any, Callable, Literal, Optional, Protocol, runtime_checkable

import numpy as np


Rng = np.random.Generator
"""
The injected source of randomness.  Every run owns its own stream.
"""

Mode = Literal["sampled", "analytic"]
"""
``sampled`` draws outcomes with true randomness and meters a real ledger;
``analytic`` evaluates exact expected costs from white-box instance knowledge.
"""

Measure = Callable[[bool, int], Optional[Any]]
"""
Called after every measurement of an amplified search with the drawn success
flag and the iteration count ``j``.  Returns a *verified* witness or `None`.
"""

Charge = Callable[[int], None]
"""
Charges ``j`` superposed applications of a subroutine to the run's ledger.
"""


@runtime_checkable
class CostFunction(Protocol):
    """
    **Protocol:** the cost of one application of an amplified procedure.
    """

    def __call__(self) -> float: ...


MODES: tuple[Mode, ...] = ("sampled", "analytic")

# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

"""
Exceptions factored out to avoid import loops.

A search that exhausts its cutoff is *not* an error: it is reported as the
`qclaw.reports.Verdict.NOT_FOUND` outcome.
"""

from __future__ import annotations


class QClawError(Exception):
    """
    Base class for every error raised by *qclaw*.
    """


class DomainError(QClawError, ValueError):
    """
    A precondition on an argument was violated: an index outside ``[N]``, an
    odd size where an even one is required, an ``ℓ`` that is too large, ...
    """


class InstanceFormatError(DomainError):
    """
    An instance file does not describe a valid function or graph.
    """


class ResourceError(QClawError):
    """
    The request exceeds what the explicit simulators are willing to allocate.
    """


class ContractError(QClawError):
    """
    The caller asked for something whose contract is non-termination, e.g. an
    amplified search on an input without a witness and without a cutoff.
    """


class DegenerateError(QClawError, ArithmeticError):
    """
    A derived quantity is undefined: an empty adversary relation or a zero
    entry in a bound.
    """

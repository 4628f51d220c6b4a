# SPDX-License-Identifier: MIT
# This file is licensed under the terms of the MIT License.  See the LICENSE
# file in the root of this repository for complete details.

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

import qclaw

from qclaw import (
    configure,
    configure_once,
    get_config,
    is_configured,
    make_rng,
    reset_defaults,
    schedule_constants,
)
from qclaw.exceptions import DomainError


class TestConfigure:
    def test_defaults(self):
        assert not is_configured()
        assert Fraction(8, 7) == get_config()["growth_factor"]
        assert 3 == get_config()["cutoff_multiplier"]
        assert "PCG64" == get_config()["prng"]

    def test_partial(self):
        """
        Arguments left at None keep their current value.
        """
        configure(cutoff_multiplier=5)
        configure(base_case_size=8)

        assert is_configured()
        assert 5 == get_config()["cutoff_multiplier"]
        assert 8 == get_config()["base_case_size"]

    def test_float_growth_factor(self):
        configure(growth_factor=1.25)

        assert Fraction(5, 4) == get_config()["growth_factor"]

    @pytest.mark.parametrize(
        "kw",
        [
            {"growth_factor": 1},
            {"growth_factor": Fraction(4, 3)},
            {"growth_factor": 2.0},
            {"cutoff_multiplier": 0},
            {"statevector_limit": -1},
            {"k_repeat_attempts": 0},
            {"prng": "MT19937"},
        ],
    )
    def test_invalid(self, kw):
        with pytest.raises(DomainError):
            configure(**kw)

        assert not is_configured()

    def test_reset(self):
        configure(cutoff_multiplier=9, prng="Philox")
        reset_defaults()

        assert not is_configured()
        assert 3 == get_config()["cutoff_multiplier"]
        assert "PCG64" == get_config()["prng"]

    def test_get_config_is_a_copy(self):
        get_config()["cutoff_multiplier"] = 100

        assert 3 == get_config()["cutoff_multiplier"]


class TestConfigureOnce:
    def test_first_time(self):
        configure_once(cutoff_multiplier=4)

        assert 4 == get_config()["cutoff_multiplier"]

    def test_warns(self):
        configure(cutoff_multiplier=4)

        with pytest.warns(RuntimeWarning, match="Repeated configuration"):
            configure_once(cutoff_multiplier=6)

        assert 4 == get_config()["cutoff_multiplier"]


class TestScheduleConstants:
    def test_serializable(self):
        assert {
            "growth_factor": "8/7",
            "cutoff_multiplier": 3,
            "base_case_size": 16,
            "k_repeat_factor": 10,
            "k_repeat_attempts": 3,
            "prng": "PCG64",
        } == schedule_constants()


class TestMakeRng:
    def test_reproducible(self):
        assert make_rng(3, 16, 0).random() == make_rng(3, 16, 0).random()

    def test_keys_separate_streams(self):
        draws = {make_rng(3, 16, trial).integers(0, 2**62) for trial in range(8)}

        assert 8 == len(draws)

    def test_bit_generator(self):
        configure(prng="Philox")

        assert isinstance(make_rng(0).bit_generator, np.random.Philox)


class TestMetadata:
    def test_version(self, monkeypatch):
        monkeypatch.setattr("importlib.metadata.version", lambda name: "1.2.3")

        assert "1.2.3" == qclaw.__version__

    def test_unknown_attribute(self):
        with pytest.raises(AttributeError):
            qclaw.__nope__  # noqa: B018

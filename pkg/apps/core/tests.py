"""
Tests for Core app - domain errors, engine settings, command base and config endpoint
"""
from fractions import Fraction
from io import StringIO

import pytest
from django.core.management import CommandError, call_command
from django.urls import reverse
from rest_framework import status

from apps.core.conf import EngineSettings, get_engine_settings
from apps.core.exceptions import (
    EXIT_INCOMPLETE,
    HypsysError,
    InvalidSizeError,
    MustReduceError,
    OutOfRangeError,
    ReducibleCaseError,
)


# ============= Exception Tests =============

@pytest.mark.unit
class TestExceptions:
    """Test the error hierarchy"""

    def test_default_message(self):
        """Test errors fall back to their default message"""
        assert str(OutOfRangeError()) == "argument outside the proven range"
        assert str(InvalidSizeError("n = 2")) == "n = 2"

    def test_value_errors(self):
        """Test argument errors are also ValueErrors"""
        assert isinstance(InvalidSizeError(), ValueError)
        assert not isinstance(MustReduceError(4, 1), ValueError)

    def test_exit_codes_are_distinct_from_incomplete(self):
        """Test no error shares the incomplete status"""
        codes = {cls.exit_code for cls in HypsysError.__subclasses__()}
        assert EXIT_INCOMPLETE not in codes
        assert HypsysError.exit_code == 2

    def test_reduction_context(self):
        """Test reduction errors carry the smaller pair"""
        error = MustReduceError(4, 1)
        assert (error.n_prime, error.k_prime) == (4, 1)
        assert error.context == {'n_prime': 4, 'k_prime': 1}
        assert "(n', k') = (4, 1)" in str(error)
        reducible = ReducibleCaseError(6, 1)
        assert reducible.l_prime == 1
        assert reducible.exit_code == 10


# ============= Engine Settings Tests =============

@pytest.mark.unit
class TestEngineSettings:
    """Test the HYPSYS settings block"""

    def test_defaults(self, settings):
        """Test values when the block is empty"""
        settings.HYPSYS = {}
        engine = get_engine_settings()
        assert engine == EngineSettings()
        assert engine.dedup_width == Fraction(1, 10 ** 30)

    def test_from_settings(self, settings):
        """Test values read from settings"""
        settings.HYPSYS = {'PRECISION_BITS': '256', 'THREADS': 4, 'DISPLAY_WIDTH': '1e-6'}
        engine = get_engine_settings()
        assert engine.precision_bits == 256
        assert engine.threads == 4
        assert engine.display_width == Fraction(1, 10 ** 6)

    def test_overrides(self, settings):
        """Test non-None overrides win"""
        settings.HYPSYS = {'THREADS': 4}
        engine = get_engine_settings(threads=None, max_depth=12, dedup_width='0.001')
        assert engine.threads == 4
        assert engine.max_depth == 12
        assert engine.dedup_width == Fraction(1, 1000)

    def test_as_dict(self):
        """Test widths render as exact strings"""
        payload = EngineSettings().as_dict()
        assert payload['display_width'] == '1/1000000000000'
        assert payload['max_depth'] is None


# ============= Command Base Tests =============

@pytest.mark.integration
class TestHypsysCommand:
    """Test the shared command behavior"""

    def test_header(self):
        """Test the timestamped first line"""
        out = StringIO()
        call_command('diagram', '--n', '4', stdout=out)
        assert out.getvalue().startswith('# hypsys diagram ')

    def test_no_header(self):
        """Test --no-header and json suppress the header"""
        out = StringIO()
        call_command('diagram', '--n', '4', '--no-header', stdout=out)
        assert not out.getvalue().startswith('#')
        out = StringIO()
        call_command('diagram', '--n', '4', '--format', 'json', stdout=out)
        assert out.getvalue().startswith('{')

    def test_error_exit_code(self):
        """Test domain errors become command errors with their status"""
        with pytest.raises(CommandError) as excinfo:
            call_command('diagram', '--n', '1', stdout=StringIO())
        assert excinfo.value.returncode == InvalidSizeError.exit_code
        assert 'n >= 2' in str(excinfo.value)

    def test_unknown_format(self):
        """Test the format choices"""
        with pytest.raises(CommandError):
            call_command('diagram', '--n', '4', '--format', 'xml', stdout=StringIO())


# ============= API Tests =============

@pytest.mark.api
@pytest.mark.django_db
class TestEngineConfigAPI:
    """Test the config endpoint"""

    def test_requires_authentication(self, api_client):
        """Test anonymous access is refused"""
        response = api_client.get(reverse('engine-config'))
        assert response.status_code == status.HTTP_403_FORBIDDEN

    def test_config(self, authenticated_client, settings):
        """Test the resolved settings"""
        settings.HYPSYS = {'PRECISION_BITS': 512}
        response = authenticated_client.get(reverse('engine-config'))
        assert response.status_code == status.HTTP_200_OK
        assert response.data['precision_bits'] == 512
        assert response.data['threads'] == 1

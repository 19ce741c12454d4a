"""
Pytest configuration and shared fixtures for all tests
"""
import random

import factory
import pytest
from django.contrib.auth.models import User
from factory.django import DjangoModelFactory
from faker import Faker
from rest_framework.test import APIClient

from apps.permutations.diagram import build_diagram
from apps.spectrum.census import genus, stratum
from apps.spectrum.models import SpectrumEntry, SpectrumRun

fake = Faker()


# ============= Factories =============

class UserFactory(DjangoModelFactory):
    class Meta:
        model = User

    username = factory.Sequence(lambda n: f"user{n}")
    email = factory.LazyAttribute(lambda obj: f"{obj.username}@example.com")
    first_name = factory.Faker('first_name')
    last_name = factory.Faker('last_name')
    is_active = True
    is_staff = False
    is_superuser = False

    @factory.post_generation
    def password(self, create, extracted, **kwargs):
        if not create:
            return
        if extracted:
            self.set_password(extracted)
        else:
            self.set_password('testpass123')


class SpectrumRunFactory(DjangoModelFactory):
    class Meta:
        model = SpectrumRun

    n = 6
    genus = factory.LazyAttribute(lambda obj: genus(obj.n))
    stratum = factory.LazyAttribute(lambda obj: stratum(obj.n))
    bound = '2'
    max_depth = factory.LazyAttribute(lambda obj: 6 * (obj.n - 1))
    complete = True
    nodes = factory.Faker('random_int', min=100, max=10000)
    pruned = factory.Faker('random_int', min=10, max=100)
    emitted = factory.Faker('random_int', min=1, max=10)
    elapsed = factory.Faker('pyfloat', positive=True, max_value=60)


class SpectrumEntryFactory(DjangoModelFactory):
    class Meta:
        model = SpectrumEntry

    run = factory.SubFactory(SpectrumRunFactory)
    rank = factory.Sequence(lambda n: n + 1)
    coefficients = [1, -1, -2, -1, -2, -1, 1]
    root = '1.55603019132268'
    root_lo = '155603019132267/100000000000000'
    root_hi = '155603019132269/100000000000000'
    log_root = '0.44213578766128'
    k = 2
    word = 'b^3 t'
    digest = factory.Faker('hexify', text='^' * 20)


# ============= Fixtures =============

@pytest.fixture
def api_client():
    """DRF API client for testing endpoints"""
    return APIClient()


@pytest.fixture
def regular_user(db):
    """Create a regular user"""
    user = UserFactory(username='testuser', email='test@example.com')
    user.set_password('testpass123')
    user.save()
    return user


@pytest.fixture
def authenticated_client(api_client, regular_user):
    """API client authenticated as regular user"""
    api_client.force_authenticate(user=regular_user)
    return api_client


@pytest.fixture
def spectrum_run(db):
    """A stored n = 6 run with two entries"""
    run = SpectrumRunFactory(n=6)
    SpectrumEntryFactory(run=run, rank=1)
    SpectrumEntryFactory(run=run, rank=2, root='1.78164359860800', k=2, word='b t^2 b t')
    return run


@pytest.fixture
def diagram4():
    return build_diagram(4)


@pytest.fixture
def diagram6():
    return build_diagram(6)


@pytest.fixture
def diagram7():
    return build_diagram(7)


@pytest.fixture
def rng():
    """Seeded generator, so random samples are reproducible"""
    return random.Random(20240517)

import pytest

from HanoiBench.BenchSettings import BenchSettings
from HanoiBench.BenchLog import BenchLog

# =========================== fixtures ========================================

@pytest.fixture(params=[BenchSettings, BenchLog])
def singleton_class(request):
    return request.param

# =========================== tests ===========================================

def test_instantiate(bench, singleton_class):
    bench()
    instance_1 = singleton_class()
    instance_2 = singleton_class()
    assert id(instance_1) == id(instance_2)


def test_destroy(bench, singleton_class):
    bench()
    instance_1 = singleton_class()
    instance_1_id = id(instance_1)
    instance_1.destroy()
    instance_2 = singleton_class()
    assert instance_1_id != id(instance_2)


def test_fail_if_not_init(singleton_class):
    with pytest.raises(EnvironmentError):
        singleton_class(failIfNotInit=True)

import pytest

from appCore.exceptions import ConfigurationError
from appSpin.params import DmrgConfig
from appSpin.params import QuenchSpec
from appSpin.params import XXZParams
from tests.factories import QuenchSpecFactory
from tests.factories import XXZParamsFactory


@pytest.mark.parametrize(
    "build",
    [
        lambda: XXZParams(1),
        lambda: DmrgConfig(truncation_cutoff=0.0),
        lambda: DmrgConfig(max_bond=0),
        lambda: QuenchSpec(XXZParams(4), XXZParams(6)),
        lambda: QuenchSpec(XXZParams(4), XXZParams(4), dt=0.0),
        lambda: QuenchSpec(XXZParams(4), XXZParams(4), n_steps=-1),
    ],
)
def test_invalid_parameters(build):
    with pytest.raises(ConfigurationError):
        build()


def test_quench_spec_dict():
    spec = QuenchSpecFactory()
    assert spec.t_max == pytest.approx(1.0)
    assert spec.to_dict()["quench"] == {"length": 6, "jz": 1.2, "hz": 0.5}
    assert XXZParamsFactory().to_dict() == {"length": 6, "jz": 1.0, "hz": 0.0}

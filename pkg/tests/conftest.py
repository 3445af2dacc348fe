import pytest

from dakit import Substrate, TransistorModel


@pytest.fixture
def gan():
    # packaged GaN-like device: 1.79 pF input, drain capacitance a sixth of it
    return TransistorModel(
        name="GAN-1",
        gm=0.05,
        cgs=1.79e-12,
        cds=1.79e-12 / 6.0,
        reference="packaged GaN",
    )


@pytest.fixture
def fr4():
    return Substrate(er=4.4, h_mm=1.6, t_mm=0.035)

import pytest

from hexdrop import CellGeometry, CellShape, load_preset

# side lengths chosen inside each preset's fitted radius range
PRESET_CASES = [
    ("suburban-macro", 1000.0),
    ("urban-macro", 1000.0),
    ("urban-micro-nlos", 250.0),
    ("urban-micro-los", 250.0),
]

ALL_SHAPES = [CellShape.TRIANGLE60, CellShape.RHOMBUS120, CellShape.HEXAGON]


@pytest.fixture
def unit_hexagon():
    return CellGeometry(CellShape.HEXAGON, 1.0)


def preset_model(name, side):
    return load_preset(name).density_model(side)

import math

import pytest

from acutetri import jsonio


def test_floats_round_trip_exactly():
    xs = [math.pi, 1 / 3, 2 ** 0.5, 1e-17, 5 * math.pi / 12, 1.0]
    back = jsonio.loads(jsonio.dumps({"x": xs}))["x"]
    assert back == xs


def test_seventeen_significant_digits():
    assert jsonio.dumps(0.1, indent=None) == "0.10000000000000001"


def test_keys_sorted_and_tuples_listed():
    assert jsonio.dumps({"b": (1, 2), "a": 1}, indent=None) == '{"a": 1, "b": [1, 2]}'


def test_to_json_objects_serialized():
    class Thing:
        def to_json(self):
            return {"v": 0.5}

    assert jsonio.dumps([Thing()], indent=None) == '[{"v": 0.5}]'


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        jsonio.dumps(float("nan"))

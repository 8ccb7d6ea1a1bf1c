import json

import numpy as np
import numpy.testing as npt
import pytest

from multiwav import data
from multiwav.errors import InvalidSignalError, ParseError
from multiwav.filters import build_haar_schauder_bank
from multiwav.io import (
    atomic_write,
    dumps,
    format_float,
    pyramid_from_dict,
    pyramid_to_dict,
    read_pyramid,
    read_signal_csv,
    write_pyramid,
    write_signal_csv,
)
from multiwav.transform import MultiSignal, decompose, synthesize


def test_format_float_round_trips():
    rng = np.random.default_rng(1)
    for x in np.concatenate([rng.standard_normal(200) * 10.0 ** rng.integers(-300, 300, 200), [1.0, -0.0]]):
        assert float(format_float(x)) == x
    assert format_float(-0.0) == "0.0"
    assert format_float(2.0) == "2.0"
    with pytest.raises(ValueError):
        format_float(np.nan)


def test_dumps_is_ordered_and_stable():
    doc = {"b": 1, "a": [0.1, 2], "m": np.array([[1.0, 0.5]])}
    text = dumps(doc)
    assert text.index('"b"') < text.index('"a"')
    assert "0.10000000000000001" in text
    assert json.loads(text) == {"b": 1, "a": [0.1, 2], "m": [[1.0, 0.5]]}
    assert dumps(doc) == text


def test_signal_csv_round_trip(tmp_path):
    t = np.linspace(0, 2, 21)
    values = np.vstack([np.sin(t), np.cos(t)])
    path = write_signal_csv(tmp_path / "s.csv", t, values)
    assert path.read_text().splitlines()[0] == "t,ch0,ch1"
    sig = read_signal_csv(path)
    assert (sig.r, sig.n, sig.t0, sig.t1) == (2, 21, 0.0, 2.0)
    npt.assert_array_equal(sig.samples, values)


@pytest.mark.parametrize("body, line", [
    ("t,ch0\n0,1\n1,2,3\n", 3),
    ("t,ch0\n0,1\n1,abc\n", 3),
    ("t,ch0\n0,1\n1,2\n5,3\n", 4),
    ("t,ch0\n0,1\n1,\"2,5\"\n", 3),
])
def test_csv_errors_carry_line_numbers(tmp_path, body, line):
    p = tmp_path / "bad.csv"
    p.write_text(body)
    with pytest.raises(ParseError) as err:
        read_signal_csv(p)
    assert err.value.position == line
    assert f":{line}:" in str(err.value)


def test_csv_header_and_size_checks(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("time,ch0\n0,1\n1,2\n")
    with pytest.raises(ParseError):
        read_signal_csv(p)
    p.write_text("t,ch0\n0,1\n")
    with pytest.raises(InvalidSignalError):
        read_signal_csv(p)
    with pytest.raises(ParseError):
        read_signal_csv(tmp_path / "missing.csv")


def test_pyramid_round_trip(tmp_path, sin50):
    pyr = decompose(sin50, build_haar_schauder_bank(), 2)
    path = write_pyramid(tmp_path / "p.json", pyr)
    back = read_pyramid(path)
    assert (back.coarse_level, back.finest_level, back.r) == (pyr.coarse_level, pyr.finest_level, 1)
    assert back.provenance == pyr.provenance
    t = np.linspace(0, 2 * np.pi, 333)
    npt.assert_array_equal(synthesize(back, t), synthesize(pyr, t))
    doc = pyramid_to_dict(pyr)
    assert list(doc) == ["format", "version", "channels", "domain", "coarse_level", "finest_level",
                         "approximation", "details", "provenance"]
    assert doc["approximation"]["k_max"] - doc["approximation"]["k_min"] + 1 == len(doc["approximation"]["coefficients"])


def test_pyramid_json_is_byte_identical(tmp_path, sin50):
    a = write_pyramid(tmp_path / "a.json", decompose(sin50, None, 2)).read_bytes()
    b = write_pyramid(tmp_path / "b.json", decompose(sin50, None, 2)).read_bytes()
    assert a == b


def test_malformed_pyramids(tmp_path, sin50):
    doc = pyramid_to_dict(decompose(sin50, None, 1))
    bad = dict(doc, format="other")
    with pytest.raises(ParseError):
        pyramid_from_dict(bad)
    bad = dict(doc, approximation=dict(doc["approximation"], k_max=999))
    with pytest.raises(ParseError):
        pyramid_from_dict(bad)
    bad = {k: v for k, v in doc.items() if k != "details"}
    with pytest.raises(ParseError):
        pyramid_from_dict(bad)
    p = tmp_path / "broken.json"
    p.write_text("{\n  \"format\": \n")
    with pytest.raises(ParseError):
        read_pyramid(p)


def test_atomic_write_leaves_no_partial_file(tmp_path):
    target = tmp_path / "out.txt"
    atomic_write(target, "first\n")

    with pytest.raises(TypeError):
        atomic_write(target, object())
    assert target.read_text() == "first\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]


def test_bundled_ecg_matches_generator():
    sig = data.load_ecg()
    gen = data.synthetic_ecg()
    assert (sig.n, sig.t0, sig.t1) == (1281, 0.0, 10.0)
    npt.assert_array_equal(sig.samples, gen.samples)


def test_ecg_generator_is_seeded():
    a, b = data.synthetic_ecg(seed=4), data.synthetic_ecg(seed=4)
    npt.assert_array_equal(a.samples, b.samples)
    assert not np.array_equal(a.samples, data.synthetic_ecg(seed=5).samples)
    assert isinstance(a, MultiSignal)

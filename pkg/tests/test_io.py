import json
import os

import numpy as np
import pytest

from conftest import CATALOG
from mtcgauge import catalog, io
from mtcgauge.errors import InvariantError, SchemaError, TheorySyntaxError
from mtcgauge.gauging import gauged_modular_data

DATA = os.path.join(os.path.dirname(__file__), "data")


def _same(a, b):
    return (a.name == b.name and a.labels == b.labels and a.dual == b.dual
            and np.array_equal(a.s_unnorm, b.s_unnorm) and np.array_equal(a.twists, b.twists))


def test_golden_trivial():
    with open(os.path.join(DATA, "trivial.json"), encoding="utf-8") as fh:
        golden = fh.read()
    assert io.serialize(catalog.named_entry("trivial")) == golden
    md = io.parse(golden)
    assert md.rank == 1


@pytest.mark.parametrize("key", CATALOG)
def test_round_trip_catalog(key):
    md = catalog.named_entry(key)
    text = io.serialize(md)
    back = io.parse(text)
    assert _same(md, back)
    assert io.serialize(back) == text


@pytest.mark.parametrize("key", [k for k in CATALOG if catalog.named_entry(k).rank <= 5])
def test_round_trip_gauged(key):
    g = gauged_modular_data(catalog.named_entry(key))
    assert _same(g, io.parse(io.serialize(g)))


def test_gauged_trivial_file_matches_toric_code(tmp_path):
    path = tmp_path / "g.json"
    io.dump(gauged_modular_data(catalog.named_entry("trivial")), path)
    g = io.load(path)
    tc = catalog.named_entry("toric_code_expected")
    assert np.array_equal(g.s_unnorm, tc.s_unnorm)
    assert np.array_equal(g.twists, tc.twists)


def test_sqrt_twists_survive(semion):
    md = semion.replace(sqrt_twists=[1, -np.exp(1j * np.pi / 4)])
    assert np.array_equal(io.parse(io.serialize(md)).sqrt_twists, md.sqrt_twists)


def _doc(md):
    return json.loads(io.serialize(md))


def test_syntax_error_has_line(fib):
    text = io.serialize(fib).replace('"rank": 2,', '"rank": 2')
    with pytest.raises(TheorySyntaxError) as err:
        io.parse(text)
    assert err.value.location.startswith("line ")


def test_schema_error_has_path(fib):
    doc = _doc(fib)
    doc["s_unnormalized"][1][0]["re"] = "x"
    with pytest.raises(SchemaError) as err:
        io.parse(json.dumps(doc))
    assert err.value.location == "s_unnormalized[1][0].re"
    doc = _doc(fib)
    doc["twists"].pop()
    with pytest.raises(SchemaError) as err:
        io.parse(json.dumps(doc))
    assert err.value.location == "twists"


def test_dual_not_involution(ising):
    doc = _doc(ising)
    doc["dual"] = [0, 2, 2]
    with pytest.raises(InvariantError) as err:
        io.parse(json.dumps(doc))
    assert err.value.location == "dual"


def test_invariant_error_names_field(fib):
    doc = _doc(fib)
    doc["twists"][1] = {"re": 2.0, "im": 0.0}
    with pytest.raises(InvariantError) as err:
        io.parse(json.dumps(doc))
    assert err.value.location == "twists"
    doc = _doc(fib)
    doc["s_unnormalized"][0][1]["re"] = 1.7
    with pytest.raises(InvariantError) as err:
        io.parse(json.dumps(doc))
    assert err.value.location == "s_unnormalized"

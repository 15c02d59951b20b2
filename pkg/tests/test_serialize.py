import json

import pytest

from bihomsd.errors import SchemaError
from bihomsd.fields import QQ, PrimeField
from bihomsd.model import (
    DialgebraInstance,
    DifferentialInstance,
    GradedMap,
    ParityMap,
    ProductTensor,
    SuperalgebraInstance,
    SuperSpace,
)
from bihomsd.linalg import Matrix
from bihomsd.serialize import digest, dumps, from_dict, load, save, to_dict


def sample_dialgebra(field=QQ):
    space = SuperSpace(2, (0, 1))
    c = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    t = ProductTensor(space, field, c)
    return DialgebraInstance(
        space,
        t,
        ProductTensor.zero(space, field),
        GradedMap.identity(space, field),
        GradedMap(space, field, [[2, 0], [0, 2]]),
    )


def test_roundtrip_dialgebra(tmp_path):
    inst = sample_dialgebra()
    path = tmp_path / "inst.json"
    save(inst, path)
    assert load(path) == inst


def test_roundtrip_fp(tmp_path):
    inst = sample_dialgebra(PrimeField(5))
    path = tmp_path / "inst.json"
    save(inst, path)
    assert load(path) == inst


def test_roundtrip_superalgebra():
    space = SuperSpace(1, (0,))
    inst = SuperalgebraInstance(
        space,
        ProductTensor(space, QQ, [[[1]]]),
        GradedMap.identity(space, QQ),
        GradedMap.identity(space, QQ),
    )
    assert from_dict(to_dict(inst)) == inst


def test_roundtrip_differential():
    space = SuperSpace(2, (0, 1))
    base = SuperalgebraInstance(
        space,
        ProductTensor.zero(space, QQ),
        GradedMap.identity(space, QQ),
        GradedMap.identity(space, QQ),
    )
    d = ParityMap(space, 1, Matrix(QQ, [[0, 0], [1, 0]]))
    inst = DifferentialInstance(base, d)
    assert from_dict(to_dict(inst)) == inst


def test_rational_strings():
    obj = to_dict(sample_dialgebra())
    obj["alpha"][0][0] = "3/2"
    inst = from_dict(obj)
    assert QQ.fmt(inst.alpha.m.entry(0, 0)) == "3/2"


def test_bad_parity_entry():
    obj = to_dict(sample_dialgebra())
    obj["parity"] = [0, 2]
    with pytest.raises(SchemaError) as err:
        from_dict(obj)
    assert "parity" in str(err.value)


def test_wrong_tensor_shape():
    obj = to_dict(sample_dialgebra())
    obj["left"] = obj["left"][:1]
    with pytest.raises(SchemaError) as err:
        from_dict(obj)
    assert "left" in str(err.value)
    assert "2" in str(err.value)


def test_unknown_field_rejected():
    obj = to_dict(sample_dialgebra())
    obj["extra"] = 1
    with pytest.raises(SchemaError) as err:
        from_dict(obj)
    assert "extra" in str(err.value)


def test_float_literal_rejected():
    obj = to_dict(sample_dialgebra())
    obj["alpha"][0][0] = 1.5
    with pytest.raises(SchemaError):
        from_dict(obj)


def test_missing_p():
    obj = to_dict(sample_dialgebra())
    obj["field"] = "Fp"
    with pytest.raises(SchemaError) as err:
        from_dict(obj)
    assert "p" in str(err.value)


def test_non_prime_modulus():
    obj = to_dict(sample_dialgebra(PrimeField(5)))
    obj["p"] = 6
    with pytest.raises(SchemaError):
        from_dict(obj)


def test_project_graded_zeroes_bad_entries():
    obj = to_dict(sample_dialgebra())
    obj["left"][0][0][1] = "7"  # parity 0+0 != 1
    strict = from_dict(obj)
    assert strict.left.c[0][0][1] == QQ.of(7)
    projected = from_dict(obj, project_graded=True)
    assert projected.left.c[0][0][1] == QQ.zero


def test_bad_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        load(path)


def test_digest_stable():
    a = sample_dialgebra()
    b = sample_dialgebra()
    assert digest(a) == digest(b)
    assert json.loads(dumps(a)) == to_dict(a)

import json

import pytest
from hypothesis import given

from conftest import triangular_maps
from triperm import fastforward as ff
from triperm import zflow
from triperm.documents import emit_map, load_document, parse_map
from triperm.errors import UsageError
from triperm.trigroup import conjugate_to_delta, delta_map


def test_delta_bytes():
    text = emit_map(delta_map(2, 2))
    assert text == (
        '{"version":1,"type":"triangular","p":2,"n":2,'
        '"components":[{"arity":0,"terms":[[[],1]]},{"arity":1,"terms":[[[1],1]]}]}\n'
    )
    assert emit_map(parse_map(text)) == text


@given(triangular_maps())
def test_triangular_round_trip(s):
    text = emit_map(s)
    assert parse_map(text) == s
    assert emit_map(parse_map(text)) == text


@pytest.mark.parametrize(
    "obj",
    [
        ff.sparse_generate(3, 3, 2, seed=1, wrap=True),
        ff.from_triangular(delta_map(2, 3)),
        zflow.build_flow(delta_map(3, 2)),
        zflow.level_flow(delta_map(3, 2), 1),
        conjugate_to_delta(delta_map(5, 2)),
    ],
    ids=["sparse", "from_triangular", "flow", "levelflow", "certificate"],
)
def test_other_kinds(obj):
    text = emit_map(obj)
    assert parse_map(text) == obj
    assert emit_map(parse_map(text)) == text


def test_malformed_json_position():
    with pytest.raises(UsageError, match="line 2, column"):
        load_document('{"version": 1,\n "type": }')


def test_version_checks():
    with pytest.raises(UsageError, match="no 'version'"):
        load_document('{"type":"triangular"}')
    with pytest.raises(UsageError, match="unsupported document version"):
        load_document('{"version":2,"type":"triangular"}')
    with pytest.raises(UsageError, match="unknown document type"):
        load_document('{"version":1,"type":"matrix"}')


def test_unreduced_exponent_hint():
    doc = json.loads(emit_map(delta_map(2, 2)))
    doc["components"][1]["terms"] = [[[2], 1]]
    with pytest.raises(UsageError, match="reduce"):
        parse_map(json.dumps(doc))

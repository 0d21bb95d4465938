import random
import struct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sume.orb import wire
from genvalues import random_value


def test_i4_canonical_bytes():
    v = wire.i4(2)
    data = wire.encode_value(v)
    assert data == bytes([0x03, 0x00, 0x00, 0x00, 0x02])
    assert wire.decode_value(data) == v


def test_void_single_byte():
    data = wire.encode_value(wire.void())
    assert data == b"\x00"
    assert wire.decode_value(data) == wire.void()


def test_string_layout():
    data = wire.encode_value(wire.string("hi"))
    assert data == b"\x07\x00\x00\x00\x02hi"


def test_objref_layout():
    data = wire.encode_value(wire.objref(5, "App"))
    assert data == b"\x08" + struct.pack(">Q", 5) + b"\x00\x00\x00\x03App"


def test_array_layout():
    data = wire.encode_value(wire.array(wire.I4, [wire.i4(1), wire.i4(2)]))
    assert data == b"\x09\x03\x00\x00\x00\x02" + struct.pack(">i", 1) + struct.pack(">i", 2)


def test_negative_zero_distinct():
    assert wire.r8(0.0) != wire.r8(-0.0)
    assert wire.decode_value(wire.encode_value(wire.r8(-0.0))) == wire.r8(-0.0)


def test_nan_round_trip_bit_exact():
    v = wire.r8(float("nan"))
    assert wire.decode_value(wire.encode_value(v)) == v


def test_mixed_array_rejected():
    with pytest.raises(ValueError):
        wire.array(wire.I4, [wire.i4(1), wire.string("x")])


def test_objref_zero_id_rejected():
    with pytest.raises(ValueError):
        wire.objref(0, "App")


def test_i4_range_checked():
    with pytest.raises(ValueError):
        wire.i4(1 << 31)
    with pytest.raises(ValueError):
        wire.i2(40000)


@pytest.mark.parametrize(
    "data",
    [
        b"",
        b"\x03\x00\x00",                # truncated i4
        b"\x0b",                         # invalid tag
        b"\x07\x00\x00\x00\x05ab",      # truncated string
        b"\x07\x00\x00\x00\x02\xff\xfe",  # invalid utf-8
        b"\x09\x63\x00\x00\x00\x01",    # invalid element tag
        b"\x03\x00\x00\x00\x02\x00",    # trailing byte
        b"\x08" + b"\x00" * 8 + b"\x00\x00\x00\x00",  # zero objref id
    ],
)
def test_malformed_value_bytes(data):
    with pytest.raises(wire.ProtocolError):
        wire.decode_value(data)


@pytest.mark.parametrize("seed", range(60))
def test_random_trees_round_trip(seed):
    rng = random.Random(seed)
    for _ in range(25):
        v = random_value(rng)
        assert wire.decode_value(wire.encode_value(v)) == v


# hypothesis strategy mirroring the wire type system
_scalars = st.one_of(
    st.just(wire.void()),
    st.just(wire.null()),
    st.booleans().map(wire.boolean),
    st.integers(-(1 << 15), (1 << 15) - 1).map(wire.i2),
    st.integers(-(1 << 31), (1 << 31) - 1).map(wire.i4),
    st.integers(-(1 << 63), (1 << 63) - 1).map(wire.i8),
    st.floats(width=32).map(wire.r4),
    st.floats().map(wire.r8),
    st.text(max_size=20).map(wire.string),
    st.tuples(st.integers(1, (1 << 64) - 1), st.text(min_size=1, max_size=10)).map(
        lambda t: wire.objref(*t)
    ),
)


def _arrays_of(elem_strategy, elem_tag):
    return st.lists(elem_strategy, max_size=4).map(lambda xs: wire.array(elem_tag, xs))


_values = st.one_of(
    _scalars,
    _arrays_of(st.integers(-(1 << 31), (1 << 31) - 1).map(wire.i4), wire.I4),
    _arrays_of(st.text(max_size=8).map(wire.string), wire.STRING),
    _arrays_of(
        _arrays_of(st.floats().map(wire.r8), wire.R8),
        wire.ARRAY,
    ),
)


@given(_values)
def test_property_round_trip(v):
    assert wire.decode_value(wire.encode_value(v)) == v


# --- framing ---


def test_frame_round_trip():
    f = wire.Frame(wire.MSG_INVOKE, 7, b"payload")
    data = wire.encode_frame(f)
    assert data[:4] == struct.pack(">I", len(data) - 4)
    assert wire.decode_body(data[4:]) == f


def test_frame_body_too_short():
    with pytest.raises(wire.ProtocolError):
        wire.decode_body(b"\x01\x00")


def test_invoke_body_round_trip():
    args = [wire.i4(2), wire.string("x")]
    body = wire.build_invoke(9, 4, args)
    assert wire.parse_invoke(body) == (9, 4, args)


def test_fault_body_round_trip():
    body = wire.build_fault(wire.E_APP_FAULT, "file not found: missing.deck", "open")
    fault = wire.parse_fault(body)
    assert fault.code == wire.E_APP_FAULT
    assert fault.message == "file not found: missing.deck"
    assert fault.detail == "open"
    assert fault.code_name == "E_APP_FAULT"


def test_hello_round_trip():
    assert wire.parse_hello(wire.build_hello(1, "secret")) == (1, "secret")
    assert wire.parse_hello(wire.build_hello()) == (1, "")

import io

from hypothesis import given, settings
from hypothesis import strategies as st

from henonseq import GeneratorConfig, generate, vernam
from henonseq.cipher import vernam_stream, xor_keystream

CFG = GeneratorConfig(P=13)


def test_hand_xor():
    key = bytes([0b01100110])
    assert xor_keystream(bytes([0xAA]), key) == bytes([0xCC])


def test_zero_plaintext_reveals_keystream():
    assert vernam(bytes(16), CFG) == generate(CFG, 128).data


def test_empty():
    assert vernam(b"", CFG) == b""


@settings(max_examples=50, deadline=None)
@given(st.binary(max_size=300))
def test_involution(data):
    ct = vernam(data, CFG)
    assert len(ct) == len(data)
    assert vernam(ct, CFG) == data


def test_stream_matches_one_shot():
    data = bytes(range(256)) * 5
    out = io.BytesIO()
    n = vernam_stream(io.BytesIO(data), out, CFG, chunk=100)
    assert n == len(data)
    assert out.getvalue() == vernam(data, CFG)

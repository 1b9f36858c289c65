import pytest

from unifront.metrics import g2p_wer, pwpp_f1, ser


def test_ser():
    assert ser(["a b", "c"], ["a b", "c"]) == 0.0
    assert ser(["x", "y"], ["a", "b"]) == 1.0
    assert ser(["a b", "c"], ["a b", "d"]) == 0.5
    assert ser(["a", "b", "c", "d"], ["a", "b", "c", "x"]) == 0.25
    # Exact string comparison, spacing included.
    assert ser(["a  b"], ["a b"]) == 1.0
    with pytest.raises(ValueError):
        ser(["a"], [])


def test_wer():
    gold = [("HH", "EH", "L", "OW")] * 10
    assert g2p_wer(gold, gold) == 0.0
    pred = [("HH", "AH", "L", "OW")] * 2 + gold[2:]
    assert g2p_wer(pred, gold) == pytest.approx(0.2)
    assert g2p_wer([["A"]], [("A",)]) == 0.0
    with pytest.raises(ValueError):
        g2p_wer([("A",)], [])


def test_f1():
    assert pwpp_f1([0, 1, 1, 0], [0, 0, 1, 1], 1) == pytest.approx(0.5)
    assert pwpp_f1([3, 0], [3, 0], 3) == 1.0
    assert pwpp_f1([0, 0], [3, 0], 3) == 0.0

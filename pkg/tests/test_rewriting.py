import json

import pytest

from qpoisson.coeff import ONE, qpow, sym
from qpoisson.errors import ReductionLimitError
from qpoisson.rewriting import RelationSet, Rule, nc, nc_add, nc_equal, nc_mul, nc_text
from qpoisson.symplectic import manin_relations, two_parameter_relations


def plane():
    # b a -> q a b models the quantum plane on two letters
    return RelationSet("plane", [Rule("ba", nc((qpow(1), "ab")))], alphabet="ab")


def test_word_algebra():
    u = nc((1, "a"), (2, "b"))
    assert nc_mul(u, u) == nc((1, "aa"), (2, "ab"), (2, "ba"), (4, "bb"))
    assert nc_add(u, nc((-1, "a"))) == nc((2, "b"))
    assert nc_text({}) == "0"
    assert nc_equal(nc((0, "a")), {})


def test_plane_normal_order():
    R = plane()
    assert R.reduce(nc((1, "bba"))) == nc((qpow(2), "abb"))
    assert R.reduce(nc((1, "bab"))) == nc((qpow(1), "abb"))


def test_termination_check():
    bad = RelationSet("bad", [Rule("ab", nc((1, "ba")))], alphabet="ab")
    ok, why = bad.check_termination()
    assert not ok and why == [("ab", "ba")]
    with pytest.raises(ReductionLimitError):
        bad.reduce(nc((1, "ab")))


def test_step_limit():
    R = plane()
    with pytest.raises(ReductionLimitError):
        R.reduce(nc((1, "bbbbaaaa")), step_limit=3)


def test_duplicate_rule_rejected():
    with pytest.raises(ValueError):
        RelationSet("dup", [Rule("ba", {}), Rule("ba", {})])


def test_confluence():
    assert manin_relations(qpow(1), "m").check_confluence(5)[0]
    assert two_parameter_relations(qpow(1), sym("s"), "t").check_confluence(5)[0]
    # swapping the ratio in the cb rule breaks confluence
    broken = two_parameter_relations(qpow(1), sym("s"), "broken")
    broken.rules[4] = Rule("cb", nc((sym("s") / qpow(1), "bc")))
    broken = RelationSet(broken.name, broken.rules)
    ok, word = broken.check_confluence(4)
    assert not ok and word is not None


def test_json_round_trip(tmp_path):
    R = manin_relations(qpow(1), "m", determinant=True)
    data = R.to_json()
    back = RelationSet.from_json(json.dumps(data))
    assert back.to_json() == data
    path = tmp_path / "rules.json"
    path.write_text(json.dumps(data))
    again = RelationSet.load(path)
    w = nc((1, "dcba"))
    assert nc_equal(again.reduce(w), R.reduce(w))


def test_json_list_form():
    R = RelationSet.from_json([{"lhs": "ba", "rhs": [{"coeff": "q", "word": "ab"}]}])
    assert R.reduce(nc((1, "ba"))) == nc((qpow(1), "ab"))

"""Smoke test for the level2 extension module.

Build first:  pip install --no-build-isolation -e crates/py
Run:          python python/smoke_test.py   (or pytest python/)
"""

import level2


def test_genword_round_trip():
    w = level2.GenWord("R * Ybar(1,4)^-1 * T(1,2,3,4)^2")
    assert str(w) == "R * Ybar(1,4)^-1 * T(1,2,3,4)^2"
    assert len(w) == 4
    assert len(w * w.inverse()) == 8


def test_engine_basics():
    e = level2.Engine(4)
    assert e.genus == 4
    assert e.is_identity("a1 a1 a2 a2 a3 a3 a4 a4")
    assert not e.is_identity("a1 a2")
    assert e.is_level2("R")
    assert not e.is_level2("T(1,2)")
    assert e.is_level2("T(1,2)^2")
    mod2, _ = e.action("R")
    assert mod2 == [[int(r == c) for r in range(4)] for c in range(4)]
    assert len(e.images("Y(1;2)")) == 4


def test_equality():
    e = level2.Engine(4)
    verdict, witness = e.equal("R * R", "1")
    assert verdict == "equal", witness
    verdict, _ = e.equal("T(1,2)", "T(2,3)")
    assert verdict == "not_equal"
    verdict, _ = e.equal("Y(1;2) * Y(1;2)", "Y(1;2)", budget=0)
    assert verdict in ("not_equal", "undecided")


def test_verify_report():
    report = level2.verify([4], statement="L2*")
    s = report["summary"]
    assert s["gate_passed"] and s["falsified"] == 0 and s["undecided"] == 0
    assert s["verified"] == len(report["certificates"]) > 0
    mutants = level2.verify([4], statement="L2*", mutants=True)
    assert mutants["summary"]["verified"] == 0


def test_invariants():
    assert level2.count(5) == (20, 20)
    assert len(level2.involution_set(4)) == 10
    size, rank, invertible = level2.minimality(4)
    assert (size, rank, invertible) == (10, 10, True)
    assert level2.isometry_orders(4) == (48, 48)
    ok, failing = level2.validate_generators(level2.Engine(5))
    assert ok and not failing
    ids = [s["id"] for s in level2.catalog(4, statement="L2.short")]
    assert ids == ["L2.short"]


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")

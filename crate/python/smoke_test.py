"""Smoke test for the `loewy` extension module.

    maturin develop -m crates/python/Cargo.toml   # or: maturin build + pip install
    python python/smoke_test.py
"""

import json

import loewy


def main():
    assert loewy.partitions(4) == [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]]
    assert loewy.pi_p("1,1,1,1", 2) == 2
    assert loewy.pi_p([2, 1, 1], 2) == 1
    assert loewy.jm("2,2,1", 2) == (2, 1)

    assert loewy.phi_product("2,1", "2,1") == {"2,1": 1, "1,1,1": 1}
    assert loewy.phi_product([1, 1, 1, 1], [1, 1, 1, 1]) == {"1,1,1,1": 24}

    ring = loewy.CharRing(4)
    assert ring.dim == 5
    assert ring.basis()[0] == "4"
    assert ring.product("4", "2,2") == {"2,2": 1}
    x = {"3,1": 1, "2,2": -1}
    assert ring.multiply(x, {"4": 1}) == x

    alg = loewy.FpAlgebra(6, 2)
    assert alg.layer_dims() == [11, 7, 3, 1, 0]
    assert alg.loewy_length() == 4
    assert alg.layers()[3] == ["1,1,1,1,1,1"]
    assert loewy.FpAlgebra(2, 2).product("1,1", "1,1") == {}

    report = json.loads(loewy.verify(4, 2))
    assert report["layers"][1]["dim"] == 3
    assert all(v is not False for v in report["checks"].values())

    reports = json.loads(loewy.sweep(5, [2, 3], oracles=False))
    assert len(reports) == 10
    assert all(r["loewy_length"] == r["n"] // r["p"] + 1 for r in reports)

    for bad in (lambda: loewy.FpAlgebra(4, 4), lambda: loewy.phi_product("2,1", "2,2")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("smoke test ok")


if __name__ == "__main__":
    main()

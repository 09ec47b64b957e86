"""Smoke test for the kbh_py extension module.

Build and install with `pip install --no-build-isolation -e crates/py`, then
run `python3 python/smoke_test.py`.
"""

import json
import pathlib
import sys

import kbh_py

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def main() -> int:
    knot = kbh_py.Tangle.load(str(FIXTURES / "8_17.tangle"))
    text, coeffs = kbh_py.alexander(knot)
    assert text == "-t^-3 + 4*t^-2 - 8*t^-1 + 11 - 8*t + 4*t^2 - t^3", text
    assert coeffs[0] == "11"

    trefoil = kbh_py.Tangle.load(str(FIXTURES / "trefoil.tangle"))
    z = kbh_py.zeta(trefoil, 4)
    assert z.abelianized_wheels() == {("1", "1"): "1", ("1", "1", "1", "1"): "-5/12"}
    assert kbh_py.MmaElement.from_json(z.to_json()) == z

    rho = kbh_py.MmaElement.generator("+", "u", "x", 3)
    inverse = kbh_py.MmaElement.generator("-", "v", "y", 3)
    unit = kbh_py.MmaElement.unit_t("w", 3).merge(kbh_py.MmaElement.unit_h("z", 3))
    assert rho.merge(inverse).tm("u", "v", "w").hm("x", "y", "z") == unit
    assert rho.tha("u", "x") == rho

    b = kbh_py.beta(trefoil)
    assert kbh_py.BetaElement.from_json(b.to_json()) == b
    g = kbh_py.BetaElement.generator("+", "u", "x")
    assert g.tha("u", "x").unit_equiv(g)
    assert json.loads(g.to_json())["A"]["u"]["x"] == "-1 + t_u"

    try:
        kbh_py.alexander(kbh_py.Tangle.load(str(FIXTURES / "borromean.tangle")))
    except ValueError as e:
        assert "3 strands" in str(e)
    else:
        raise AssertionError("a link is not a knot")

    results = kbh_py.selftest(degree=3, seed=5, cases=2)
    failed = [name for name, ok in results if not ok]
    assert not failed, failed
    print(f"ok: {len(results)} selftest identities, alexander(8_17) = {text}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

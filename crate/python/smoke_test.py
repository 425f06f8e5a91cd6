"""Smoke test for the ccsym_py extension module.

Build first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import cmath
import math

import ccsym_py as cc


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    dual = cc.Algebra("gens=eps;degree=2;scalars=exact")
    assert dual.gens == ["eps"] and dual.dim == 2

    f = cc.Series("(1-eps*x^-1)", dual, 8)
    g = cc.Series("(1-x)", dual, 8)
    sym = cc.cc_symbol(f, g)
    assert str(sym) == "1+eps", sym
    assert (cc.cc_symbol(f, g * f).components()
            == {"1": 1 + 0j, "eps": 1 + 0j}), "bimultiplicativity against <f,f> = 1"

    fac = cc.Series("x^-2*(1-eps*x^-1)*(1-x)", dual, 8).factorize()
    assert fac["nu"] == -2 and str(fac["factors"][-1]) == "eps"

    t = cc.Series("x^2*(1-x)")
    assert t.valuation() == 2
    assert cc.tame_symbol(cc.Series("x"), cc.Series("x")) == -1

    fx = cc.RationalFunction("x+eps", dual)
    gx = cc.RationalFunction("1-x", dual)
    assert set(fx.support()) == {"0", "inf"}
    assert str(cc.local_symbol(fx, gx, "0", 8)) == "1-eps"

    circle = cc.Path("circle(0,1/2)")
    assert circle.is_closed()
    winding = cc.iterated_integral([cc.RationalFunction("x")], circle, 256)
    assert close(winding.components()["1"], 2j * math.pi, 1e-10)
    words = cc.transport([cc.RationalFunction("x"), cc.RationalFunction("x-2")], circle, 2, 256)
    assert set(words) == {"", "0", "1", "0,0", "0,1", "1,0", "1,1"}
    assert close(words["0,0"].components()["1"], (2j * math.pi) ** 2 / 2, 1e-9)

    report = cc.verify_powers_of_dlog_x(3, 0.5, 512)
    assert report["pass"] and report["check_id"] == "lemma.3.2"
    expect = (2j * math.pi) ** 3 / 6
    assert close(complex(*report["lhs"]["1"]), expect, 1e-9 * abs(expect))

    report = cc.verify_main_theorem(fx, gx, "0", "-1/2", 0.25, 8, 1024)
    assert report["pass"], report
    assert close(complex(*report["lhs"]["1"]), 1.5, 1e-6)
    assert close(complex(*report["lhs"]["eps"]), -1.5, 1e-6)

    assert cc.verify_weil(fx, cc.RationalFunction("x-1", dual), 8)["pass"]
    assert cc.verify_bilinear(cc.RationalFunction("x"), cc.RationalFunction("1-x"), "-2")["pass"]
    assert all(r["pass"] for r in cc.verify_identities(512))

    try:
        cc.Series("(1-", dual)
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")

    print("smoke test passed:", sym, cmath.isclose(words["0"].components()["1"], 2j * math.pi))


if __name__ == "__main__":
    main()

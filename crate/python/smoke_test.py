"""Smoke test for the copperscope extension module.

Build and run from the repository root:

    cargo build --release -p copperscope-py --features extension-module
    cp target/release/libcopperscope.so python/copperscope.so
    python3 python/smoke_test.py
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import copperscope as cs  # noqa: E402


def check(cond, msg):
    if not cond:
        raise AssertionError(msg)
    print("ok", msg)


def main():
    r = cs.solve([0, 1], 4, 1)
    check(r["roots"] == [0], "x = 0 mod 4 has root 0")

    # planted root of a cubic modulo a 64-bit number
    n = (1 << 63) + 12345
    root = 1234
    c1, c2 = 987654321, 55555
    c0 = -(root**3 + c2 * root**2 + c1 * root) % n
    r = cs.solve([c0, c1, c2, 1], n, 3000)
    check(root in r["roots"], f"planted root recovered at m = {r['m']}")
    check(all((x**3 + c2 * x * x + c1 * x + c0) % n == 0 for x in r["roots"]), "every root satisfies f = 0 mod N")

    try:
        cs.solve([3, 0, 0, 1], 1000003, 1000003, m=2)
    except cs.BoundNotCertified as e:
        check(e.args[1] < 100, f"oversized radius not certified (certified_x = {e.args[1]})")
    else:
        raise AssertionError("expected BoundNotCertified")

    try:
        cs.solve([1, 2], 10, 1)
    except ValueError:
        check(True, "non-monic input rejected")

    check(cs.capacity(1000000007, 3, "1/3")["verdict"] == "Boundary", "capacity at N^(1/3) is the boundary")
    check(cs.capacity(1000000007, 3, "1/3+1/100")["verdict"] == "NotExists", "capacity beyond N^(1/3)")
    check(cs.capacity(2**100, 3, Fraction(103, 300), arch="interval")["verdict"] == "Boundary", "interval boundary at N = 2^100")

    q0 = cs.solve_q0(1e-9)
    check(abs(q0 - 3.80572) < 1e-4, f"q0 = {q0:.6f}")
    check(cs.construction_sup_norm(1, "0.5") == Fraction(5, 48), "sup norm for t = 1, r = 1/2")
    check(cs.construction_sup_norm(191, 100) < 1, "construction bounded at t = 191, r = 100")
    check(cs.explicit_construction(1) == [0, 0, 1, 1], "b_3(x+1) = b_2 + b_3")

    check(cs.is_integer_valued([0, Fraction(1, 2), Fraction(1, 2)]), "x(x+1)/2 is integer-valued")
    check(not cs.is_integer_valued(["0", "1/2"]), "x/2 is not")
    check(cs.to_binomial_basis([0, 0, 1]) == [0, 1, 2], "x^2 = b_1 + 2 b_2")

    mk = cs.minkowski_degree_bound(100, 3)
    check(mk["m"] == 453, f"minkowski degree for r = 100: {mk['m']}")

    check(abs(cs.prime_product(10) - 1.969131) < 1e-6, "prime product up to 10")
    a = cs.analyze_negative(2 * 1000000007, 3, "1/10", 319)
    check(a["verdict"] == "small_factor_found" and a["small_factor"] == 2, "even modulus has factor 2")

    rows, t = cs.lll_reduce([[201, 37], [1648, 297]])
    check(rows[0][0] ** 2 + rows[0][1] ** 2 <= 201**2 + 37**2, f"LLL first row {rows[0]}")
    check(abs(t[0][0] * t[1][1] - t[0][1] * t[1][0]) == 1, "transform is unimodular")

    d = cs.demo_stereotyped_rsa(bits=64, seed=3)
    check(d["success"] and d["planted"] in d["recovered"], "stereotyped RSA demo recovers the message tail")
    check(cs.demo_stereotyped_rsa(bits=64, seed=3) == d, "demo is reproducible")

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
